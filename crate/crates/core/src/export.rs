//! SVG drawings in a unit viewbox and DOT graph export.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::embed::{barycentric, straight_line_draw, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{Graph, Vertex};
use crate::triangulation::Triangulation;

const MARGIN: f64 = 0.05;

fn c2(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Maps points into `[MARGIN, 1 - MARGIN]²` keeping the aspect ratio, with
/// y pointing up.
fn fit(points: &[Point]) -> Vec<Point> {
    if points.is_empty() {
        return Vec::new();
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let s = if span > 0.0 { (1.0 - 2.0 * MARGIN) / span } else { 1.0 };
    points
        .iter()
        .map(|p| Point::new(MARGIN + (p.x - lo.x) * s, 1.0 - MARGIN - (p.y - lo.y) * s))
        .collect()
}

fn header() -> String {
    "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"512\" height=\"512\">\n"
        .to_string()
}

fn polygon(out: &mut String, pts: &[Point], cycle: &[Vertex], style: &str) {
    let coords: Vec<String> = cycle
        .iter()
        .map(|&v| format!("{},{}", c2(pts[v].x), c2(pts[v].y)))
        .collect();
    let _ = writeln!(out, "<polygon points=\"{}\" {style}/>", coords.join(" "));
}

/// Straight-line drawing of `edges` over `points`.
pub fn segments_svg(points: &[Point], edges: &[(Vertex, Vertex)]) -> String {
    let pts = fit(points);
    let mut out = header();
    for &(u, v) in edges {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"0.004\"/>",
            c2(pts[u].x),
            c2(pts[u].y),
            c2(pts[v].x),
            c2(pts[v].y)
        );
    }
    for p in &pts {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"0.008\" fill=\"black\"/>",
            c2(p.x),
            c2(p.y)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Triangles shaded, holes white, boundary and hole outlines drawn.
pub fn triangulation_svg(t: &Triangulation) -> String {
    let pts = fit(&t.points);
    let mut out = header();
    for tri in &t.triangles {
        polygon(
            &mut out,
            &pts,
            tri,
            "fill=\"#dde8f4\" stroke=\"#4a6a8a\" stroke-width=\"0.003\"",
        );
    }
    polygon(
        &mut out,
        &pts,
        &t.boundary,
        "fill=\"none\" stroke=\"black\" stroke-width=\"0.006\"",
    );
    for h in &t.holes {
        polygon(
            &mut out,
            &pts,
            h,
            "fill=\"white\" stroke=\"black\" stroke-width=\"0.006\"",
        );
    }
    for p in &pts {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"0.006\" fill=\"black\"/>",
            c2(p.x),
            c2(p.y)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Convex straight-line drawing of an embedded graph.
///
/// Graphs that are not 3-connected get a barycentric drawing with only the
/// outer vertices of degree at least 3 pinned, so subdivided edges come out
/// straight. Such drawings may overlap.
pub fn embedding_svg(e: &PlaneEmbedding) -> Result<String> {
    let pos = match straight_line_draw(e) {
        Ok(p) => p,
        Err(Error::NotThreeConnected) | Err(Error::Precondition(_)) => loose_drawing(e)?,
        Err(err) => return Err(err),
    };
    Ok(segments_svg(&pos, e.graph().edges()))
}

fn loose_drawing(e: &PlaneEmbedding) -> Result<Vec<Point>> {
    let g = e.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let deg = g.degree_profile();
    let mut outer: Vec<Vertex> = Vec::new();
    for &v in &e.face(e.outer_face()).vertices {
        if !outer.contains(&v) {
            outer.push(v);
        }
    }
    let corners: Vec<Vertex> = outer.iter().copied().filter(|&v| deg[v] >= 3).collect();
    let corners = if corners.len() >= 3 { corners } else { outer };
    let k = corners.len();
    let pinned: HashMap<Vertex, Point> = corners
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let a = std::f64::consts::FRAC_PI_2 - std::f64::consts::TAU * i as f64 / k as f64;
            (v, Point::new(a.cos(), a.sin()))
        })
        .collect();
    Ok(barycentric(&g.simple_adjacency(), &pinned))
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn dot_lists_every_edge() {
        let d = to_dot(&named::complete(4));
        assert_eq!(d.matches(" -- ").count(), 6);
        assert!(d.starts_with("graph G {"));
    }

    #[test]
    fn svg_coordinates_stay_in_the_unit_box() {
        let pts = [Point::new(-3.0, 2.0), Point::new(5.0, 2.5), Point::new(0.0, -1.0)];
        let s = segments_svg(&pts, &[(0, 1), (1, 2)]);
        let parts: Vec<&str> = s.split('"').collect();
        let mut seen = 0;
        for w in parts.windows(2) {
            let attr = w[0].trim_end_matches('=').rsplit(' ').next().unwrap();
            if ["x1", "y1", "x2", "y2", "cx", "cy"].contains(&attr) {
                let x: f64 = w[1].parse().unwrap();
                assert!((0.0..=1.0).contains(&x), "{attr}={}", w[1]);
                assert_eq!(w[1].split('.').nth(1).unwrap().len(), 2);
                seen += 1;
            }
        }
        assert_eq!(seen, 2 * 4 + 3 * 2);
    }
}
