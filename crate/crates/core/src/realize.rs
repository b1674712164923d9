//! Turning a primal plane graph with a chosen point at infinity into a
//! drawn, verified triangulation.

use std::collections::{BTreeSet, HashMap};

use crate::embed::draw::barycentric;
use crate::embed::{FaceId, PlaneEmbedding};
use crate::geometry::Point;
use crate::graph::Vertex;
use crate::triangulation::{violations, Triangulation};

/// Radius of the convex polygon the boundary is pinned to.
pub const DRAW_RADIUS: f64 = 1000.0;

/// Deletes `v_inf` from the plane graph `p`, keeps `holes` as holes, and
/// draws the rest with the boundary (the link of `v_inf`) on a convex
/// polygon. Each hole gets a temporary center vertex so the drawn graph is a
/// triangulated disk. Fails with a description when the structure is not a
/// polygon triangulation or the drawing does not verify.
pub fn realize_from_primal(
    p: &PlaneEmbedding,
    v_inf: Vertex,
    holes: &[FaceId],
) -> Result<Triangulation, String> {
    let g = p.graph();
    let n = g.vertex_count();
    if !g.is_simple() {
        return Err("primal graph has a loop or parallel edges".to_string());
    }
    let hole_set: BTreeSet<FaceId> = holes.iter().copied().collect();
    let around: BTreeSet<FaceId> = p.faces_around(v_inf).into_iter().collect();
    if let Some(&f) = around.iter().find(|f| hole_set.contains(f)) {
        return Err(format!("candidate {v_inf} lies on hole face {f}"));
    }
    if around.iter().any(|&f| p.face(f).len() != 3) {
        return Err(format!("a face around candidate {v_inf} is not a triangle"));
    }
    let link: Vec<Vertex> = p.rotation(v_inf).iter().map(|&d| p.head(d)).collect();
    if link.len() < 3 || link.iter().collect::<BTreeSet<_>>().len() != link.len() {
        return Err(format!("link of candidate {v_inf} is not a simple cycle"));
    }

    let mut on_cycle: BTreeSet<Vertex> = link.iter().copied().collect();
    let mut hole_cycles = Vec::new();
    for &h in holes {
        let cyc = &p.face(h).vertices;
        let distinct: BTreeSet<Vertex> = cyc.iter().copied().collect();
        if cyc.len() < 3 || distinct.len() != cyc.len() {
            return Err(format!("hole face {h} is not a simple cycle of length >= 3"));
        }
        if !on_cycle.is_disjoint(&distinct) {
            return Err(format!("hole face {h} touches the boundary or another hole"));
        }
        on_cycle.extend(distinct);
        hole_cycles.push(cyc.clone());
    }
    let mut triangles = Vec::new();
    for f in p.faces() {
        if around.contains(&f.id) || hole_set.contains(&f.id) {
            continue;
        }
        if f.len() != 3 {
            return Err(format!("face {} has length {}", f.id, f.len()));
        }
        triangles.push([f.vertices[0], f.vertices[1], f.vertices[2]]);
    }

    // drawing graph: primal minus v_inf, plus one center per hole
    let mut adj = vec![Vec::new(); n + hole_cycles.len()];
    for &(a, b) in g.edges() {
        if a != v_inf && b != v_inf {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for (i, cyc) in hole_cycles.iter().enumerate() {
        for &v in cyc {
            adj[n + i].push(v);
            adj[v].push(n + i);
        }
    }
    let mut pinned = HashMap::new();
    pinned.insert(v_inf, Point::default());
    let l = link.len();
    for (i, &v) in link.iter().enumerate() {
        let a = 2.0 * std::f64::consts::PI * i as f64 / l as f64;
        pinned.insert(v, Point::new(DRAW_RADIUS * a.cos(), DRAW_RADIUS * a.sin()));
    }
    let pos = barycentric(&adj, &pinned);

    let renum = |v: Vertex| if v > v_inf { v - 1 } else { v };
    let t = Triangulation {
        points: (0..n).filter(|&v| v != v_inf).map(|v| pos[v]).collect(),
        triangles: triangles
            .iter()
            .map(|t| [renum(t[0]), renum(t[1]), renum(t[2])])
            .collect(),
        boundary: link.iter().map(|&v| renum(v)).collect(),
        holes: hole_cycles
            .iter()
            .map(|c| c.iter().map(|&v| renum(v)).collect())
            .collect(),
    }
    .normalized();
    let bad = violations(&t);
    if !bad.is_empty() {
        return Err(format!("drawing failed verification: {}", bad.join("; ")));
    }
    Ok(t)
}
