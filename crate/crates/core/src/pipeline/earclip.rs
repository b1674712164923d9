//! Ear-clipping triangulation of a polygon with holes. Holes are first
//! spliced into the boundary through bridge edges, giving one weakly simple
//! polygon in which bridge endpoints appear twice.

use crate::error::{Error, Result};
use crate::geometry::{orient, point_in_closed_triangle, polygon_signed_area2, Point, EPS};
use crate::graph::Vertex;

/// Triangulates the polygon `boundary` minus `holes`, all given as cycles of
/// indices into `points`. Triangles are returned counterclockwise.
pub fn triangulate(points: &[Point], boundary: &[Vertex], holes: &[Vec<Vertex>]) -> Result<Vec<[Vertex; 3]>> {
    let mut outer = oriented(points, boundary, true);
    let mut hs: Vec<Vec<Vertex>> = holes.iter().map(|h| oriented(points, h, false)).collect();
    // rightmost holes first so earlier bridges never block later ones
    hs.sort_by(|a, b| {
        let xa = a.iter().map(|&v| points[v].x).fold(f64::MIN, f64::max);
        let xb = b.iter().map(|&v| points[v].x).fold(f64::MIN, f64::max);
        xb.total_cmp(&xa)
    });
    for h in &hs {
        outer = bridge(points, &outer, h)?;
    }
    clip(points, outer)
}

fn oriented(points: &[Point], cyc: &[Vertex], ccw: bool) -> Vec<Vertex> {
    let pts: Vec<Point> = cyc.iter().map(|&v| points[v]).collect();
    let mut c = cyc.to_vec();
    if (polygon_signed_area2(&pts) > 0.0) != ccw {
        c.reverse();
    }
    c
}

/// Splices the clockwise `hole` into the counterclockwise `outer`.
fn bridge(points: &[Point], outer: &[Vertex], hole: &[Vertex]) -> Result<Vec<Vertex>> {
    let (hi, &m) = hole
        .iter()
        .enumerate()
        .max_by(|a, b| points[*a.1].x.total_cmp(&points[*b.1].x))
        .unwrap();
    let mp = points[m];
    // nearest hit of the ray from m towards +x
    let n = outer.len();
    let mut best: Option<(f64, usize)> = None;
    for i in 0..n {
        let (a, b) = (points[outer[i]], points[outer[(i + 1) % n]]);
        if (a.y - mp.y) * (b.y - mp.y) > 0.0 || a.y == b.y {
            continue;
        }
        let t = (mp.y - a.y) / (b.y - a.y);
        let x = a.x + t * (b.x - a.x);
        if x > mp.x && best.is_none_or(|(bx, _)| x < bx) {
            best = Some((x, i));
        }
    }
    let (hit_x, i) = best.ok_or_else(|| Error::Degenerate("hole outside the boundary".to_string()))?;
    let hit = Point::new(hit_x, mp.y);
    let (ia, ib) = (i, (i + 1) % n);
    let mut pick = if points[outer[ia]].x > points[outer[ib]].x { ia } else { ib };
    // a reflex vertex inside (m, hit, pick) would block the bridge; take the
    // one closest in angle to the ray instead
    let pp = points[outer[pick]];
    let mut best_angle = f64::INFINITY;
    for j in 0..n {
        let q = points[outer[j]];
        if j == pick || q == pp {
            continue;
        }
        let prev = points[outer[(j + n - 1) % n]];
        let next = points[outer[(j + 1) % n]];
        let reflex = orient(prev, q, next) <= 0.0;
        let (tri_a, tri_b, tri_c) = if orient(mp, hit, pp) > 0.0 { (mp, hit, pp) } else { (mp, pp, hit) };
        if reflex && q.x > mp.x && point_in_closed_triangle(q, tri_a, tri_b, tri_c) {
            let ang = ((q.y - mp.y).abs()).atan2(q.x - mp.x);
            if ang < best_angle - EPS
                || (ang < best_angle + EPS && q.dist(mp) < points[outer[pick]].dist(mp))
            {
                best_angle = ang;
                pick = j;
            }
        }
    }
    // a vertex repeated by an earlier bridge: use the copy whose interior
    // wedge sees m
    let v = outer[pick];
    if let Some(j) = (0..n).find(|&j| outer[j] == v && in_cone(points, outer, j, mp)) {
        pick = j;
    }
    let mut out = Vec::with_capacity(outer.len() + hole.len() + 2);
    out.extend_from_slice(&outer[..=pick]);
    for k in 0..=hole.len() {
        out.push(hole[(hi + k) % hole.len()]);
    }
    out.push(outer[pick]);
    out.extend_from_slice(&outer[pick + 1..]);
    Ok(out)
}

fn in_cone(points: &[Point], poly: &[Vertex], j: usize, p: Point) -> bool {
    let n = poly.len();
    let (a, b, c) = (points[poly[(j + n - 1) % n]], points[poly[j]], points[poly[(j + 1) % n]]);
    if orient(a, b, c) > 0.0 {
        orient(a, b, p) > 0.0 && orient(b, c, p) > 0.0
    } else {
        !(orient(a, b, p) <= 0.0 && orient(b, c, p) <= 0.0)
    }
}

fn clip(points: &[Point], mut poly: Vec<Vertex>) -> Result<Vec<[Vertex; 3]>> {
    let mut tris = Vec::new();
    while poly.len() > 3 {
        let n = poly.len();
        let ear = (0..n).find(|&i| is_ear(points, &poly, i)).ok_or_else(|| {
            Error::Degenerate(format!("ear clipping stuck with {n} vertices left"))
        })?;
        tris.push([poly[(ear + n - 1) % n], poly[ear], poly[(ear + 1) % n]]);
        poly.remove(ear);
    }
    if orient(points[poly[0]], points[poly[1]], points[poly[2]]) <= EPS {
        return Err(Error::Degenerate("last triangle is degenerate".to_string()));
    }
    tris.push([poly[0], poly[1], poly[2]]);
    Ok(tris)
}

fn is_ear(points: &[Point], poly: &[Vertex], i: usize) -> bool {
    let n = poly.len();
    let (ia, ib, ic) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
    let (a, b, c) = (points[ia], points[ib], points[ic]);
    if orient(a, b, c) <= EPS {
        return false;
    }
    poly.iter()
        .filter(|&&v| v != ia && v != ib && v != ic)
        .all(|&v| !point_in_closed_triangle(points[v], a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_annulus() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 4.0),
            Point::new(0.0, 4.0),
            Point::new(1.0, 1.0),
            Point::new(3.0, 1.0),
            Point::new(3.0, 3.0),
            Point::new(1.0, 3.0),
        ];
        let tris = triangulate(&pts, &[0, 1, 2, 3], &[vec![4, 5, 6, 7]]).unwrap();
        assert_eq!(tris.len(), 8);
        let area: f64 = tris
            .iter()
            .map(|t| orient(pts[t[0]], pts[t[1]], pts[t[2]]) / 2.0)
            .sum();
        assert!((area - 12.0).abs() < 1e-9);
    }
}
