//! Triangulated polygons (possibly with holes and interior points).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{parse_err, Result};
use crate::format::{fmt_f64, ContentLines};
use crate::geometry::{
    point_in_polygon, point_strictly_in_triangle, polygon_is_simple, polygon_signed_area2,
    segments_properly_cross, triangle_area, Point, EPS,
};
use crate::graph::{parse_usizes, Vertex};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Triangulation {
    pub points: Vec<Point>,
    pub triangles: Vec<[Vertex; 3]>,
    pub boundary: Vec<Vertex>,
    pub holes: Vec<Vec<Vertex>>,
}

impl Triangulation {
    /// Points on neither the boundary nor a hole.
    pub fn interior_points(&self) -> Vec<Vertex> {
        let on: BTreeSet<Vertex> = self
            .boundary
            .iter()
            .chain(self.holes.iter().flatten())
            .copied()
            .collect();
        (0..self.points.len()).filter(|v| !on.contains(v)).collect()
    }

    /// Distinct undirected edges of all triangles, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let set: BTreeSet<(Vertex, Vertex)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.into_iter().collect()
    }

    /// Renumbers points so the boundary comes first (in cycle order), then
    /// hole vertices, then interior points in their previous order.
    pub fn normalized(&self) -> Triangulation {
        let mut order: Vec<Vertex> = self.boundary.clone();
        for h in &self.holes {
            order.extend(h);
        }
        order.extend(self.interior_points());
        let mut map = vec![usize::MAX; self.points.len()];
        for (i, &v) in order.iter().enumerate() {
            map[v] = i;
        }
        Triangulation {
            points: order.iter().map(|&v| self.points[v]).collect(),
            triangles: self
                .triangles
                .iter()
                .map(|t| [map[t[0]], map[t[1]], map[t[2]]])
                .collect(),
            boundary: self.boundary.iter().map(|&v| map[v]).collect(),
            holes: self
                .holes
                .iter()
                .map(|h| h.iter().map(|&v| map[v]).collect())
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("points {}\n", self.points.len());
        for p in &self.points {
            let _ = writeln!(out, "{} {}", fmt_f64(p.x), fmt_f64(p.y));
        }
        let _ = writeln!(out, "triangles {}", self.triangles.len());
        for t in &self.triangles {
            let _ = writeln!(out, "{} {} {}", t[0], t[1], t[2]);
        }
        out.push_str("boundary");
        for v in &self.boundary {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
        for h in &self.holes {
            out.push_str("hole");
            for v in h {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut lines = ContentLines::new(text);
        let mut t = Triangulation::default();
        let count = |line: usize, toks: &[&str], key: &str| -> Result<usize> {
            if toks.len() != 2 || toks[0] != key {
                return Err(parse_err(line, format!("expected `{key} <count>`")));
            }
            Ok(parse_usizes(line, &toks[1..])?[0])
        };
        let (line, toks) = lines.next().ok_or_else(|| parse_err(0, "empty triangulation"))?;
        let k = count(line, &toks, "points")?;
        for _ in 0..k {
            let (line, toks) = lines.next().ok_or_else(|| parse_err(line, "missing point"))?;
            if toks.len() != 2 {
                return Err(parse_err(line, "point line must be `x y`"));
            }
            let xy: Vec<f64> = toks
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| parse_err(line, format!("bad number `{s}`"))))
                .collect::<Result<_>>()?;
            if !xy.iter().all(|x| x.is_finite()) {
                return Err(parse_err(line, "coordinates must be finite"));
            }
            t.points.push(Point::new(xy[0], xy[1]));
        }
        let (line, toks) = lines.next().ok_or_else(|| parse_err(line, "missing triangles"))?;
        let m = count(line, &toks, "triangles")?;
        for _ in 0..m {
            let (line, toks) = lines.next().ok_or_else(|| parse_err(line, "missing triangle"))?;
            let v = parse_usizes(line, &toks)?;
            if v.len() != 3 || v.iter().any(|&x| x >= k) {
                return Err(parse_err(line, "triangle must be three valid point ids"));
            }
            t.triangles.push([v[0], v[1], v[2]]);
        }
        for (line, toks) in lines {
            let ids = parse_usizes(line, &toks[1..])?;
            if ids.iter().any(|&x| x >= k) {
                return Err(parse_err(line, "cycle references an unknown point"));
            }
            match toks[0] {
                "boundary" if t.boundary.is_empty() => t.boundary = ids,
                "hole" => t.holes.push(ids),
                other => return Err(parse_err(line, format!("unexpected `{other}`"))),
            }
        }
        if t.boundary.is_empty() {
            return Err(parse_err(0, "missing boundary"));
        }
        Ok(t)
    }
}

/// Geometric validity: non-degenerate triangles, no properly crossing
/// segments, no point strictly inside a triangle, simple and correctly
/// nested boundary and hole cycles, and triangle areas adding up to the
/// polygon area.
pub fn verify_planar_triangulation(t: &Triangulation) -> bool {
    violations(t).is_empty()
}

/// Every violated condition, described; empty for a valid triangulation.
pub fn violations(t: &Triangulation) -> Vec<String> {
    let mut out = Vec::new();
    let n = t.points.len();
    let pts = &t.points;
    if t.points.iter().any(|p| !p.is_finite()) {
        out.push("non-finite coordinate".to_string());
        return out;
    }
    let cycles: Vec<&Vec<Vertex>> = std::iter::once(&t.boundary).chain(&t.holes).collect();
    for c in &cycles {
        if c.len() < 3 || c.iter().any(|&v| v >= n) {
            out.push(format!("cycle {c:?} is too short or out of range"));
            return out;
        }
        let poly: Vec<Point> = c.iter().map(|&v| pts[v]).collect();
        if !polygon_is_simple(&poly) {
            out.push(format!("cycle {c:?} is not simple"));
        }
    }
    let mut seen = BTreeSet::new();
    for c in &cycles {
        for &v in c.iter() {
            if !seen.insert(v) {
                out.push(format!("vertex {v} appears on two cycles or twice on one"));
            }
        }
    }
    let outer: Vec<Point> = t.boundary.iter().map(|&v| pts[v]).collect();
    for h in &t.holes {
        for &v in h {
            if !point_in_polygon(pts[v], &outer) {
                out.push(format!("hole vertex {v} lies outside the boundary"));
            }
        }
    }
    for (i, a) in t.holes.iter().enumerate() {
        for b in &t.holes[i + 1..] {
            let poly: Vec<Point> = b.iter().map(|&v| pts[v]).collect();
            if a.iter().any(|&v| point_in_polygon(pts[v], &poly)) {
                out.push("holes are nested".to_string());
            }
        }
    }
    for tri in &t.triangles {
        if tri.iter().any(|&v| v >= n) || tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            out.push(format!("triangle {tri:?} is malformed"));
            return out;
        }
        if triangle_area(pts[tri[0]], pts[tri[1]], pts[tri[2]]) <= EPS {
            out.push(format!("triangle {tri:?} is degenerate"));
        }
    }
    // segments: triangle edges plus cycle edges
    let mut segs: BTreeSet<(Vertex, Vertex)> = t.edges().into_iter().collect();
    for c in &cycles {
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            segs.insert((a.min(b), a.max(b)));
        }
    }
    let segs: Vec<_> = segs.into_iter().collect();
    for i in 0..segs.len() {
        let (a, b) = segs[i];
        for &(c, d) in &segs[i + 1..] {
            if segments_properly_cross(pts[a], pts[b], pts[c], pts[d]) {
                out.push(format!("segments {a}-{b} and {c}-{d} cross"));
            }
        }
    }
    let used: BTreeSet<Vertex> = t.triangles.iter().flatten().copied().collect();
    for tri in &t.triangles {
        for &v in &used {
            if !tri.contains(&v)
                && point_strictly_in_triangle(pts[v], pts[tri[0]], pts[tri[1]], pts[tri[2]])
            {
                out.push(format!("point {v} lies inside triangle {tri:?}"));
            }
        }
    }
    // each triangle edge is used by two triangles unless it is a cycle edge
    let mut uses: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for tri in &t.triangles {
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
            *uses.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut cycle_edges = BTreeSet::new();
    for c in &cycles {
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            cycle_edges.insert((a.min(b), a.max(b)));
        }
    }
    for (&e, &k) in &uses {
        let want = if cycle_edges.contains(&e) { 1 } else { 2 };
        if k != want {
            out.push(format!("edge {e:?} used by {k} triangles, expected {want}"));
        }
    }
    for e in &cycle_edges {
        if !uses.contains_key(e) {
            out.push(format!("cycle edge {e:?} belongs to no triangle"));
        }
    }
    let area = |c: &Vec<Vertex>| {
        let poly: Vec<Point> = c.iter().map(|&v| pts[v]).collect();
        polygon_signed_area2(&poly).abs() / 2.0
    };
    let region = area(&t.boundary) - t.holes.iter().map(area).sum::<f64>();
    let covered: f64 = t
        .triangles
        .iter()
        .map(|tri| triangle_area(pts[tri[0]], pts[tri[1]], pts[tri[2]]))
        .sum();
    if (region - covered).abs() > 1e-7 * region.abs().max(1.0) {
        out.push(format!("triangles cover area {covered}, polygon area is {region}"));
    }
    out
}
