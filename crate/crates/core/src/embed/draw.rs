//! Barycentric straight-line drawings of 3-connected plane graphs.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::embed::embedding::{FaceId, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{segments_properly_cross, Point};
use crate::graph::Vertex;

/// Draws `e` with its outer face on a regular polygon of radius 1.
pub fn straight_line_draw(e: &PlaneEmbedding) -> Result<Vec<Point>> {
    draw_with_outer(e, e.outer_face(), 1.0)
}

/// Tutte drawing with the boundary of `outer` placed clockwise on a regular
/// polygon of the given radius and every other vertex at the average of its
/// neighbors. The graph must be simple and 3-connected.
pub fn draw_with_outer(e: &PlaneEmbedding, outer: FaceId, radius: f64) -> Result<Vec<Point>> {
    let g = e.graph();
    if !g.is_simple() {
        return Err(Error::Precondition("drawing needs a simple graph".to_string()));
    }
    if g.vertex_connectivity_at_most_3() < 3 {
        return Err(Error::NotThreeConnected);
    }
    let fixed = &e.face(outer).vertices;
    let mut pinned = HashMap::new();
    let k = fixed.len();
    for (i, &v) in fixed.iter().enumerate() {
        // the outer walk runs clockwise, so angles decrease
        let a = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * i as f64 / k as f64;
        pinned.insert(v, Point::new(radius * a.cos(), radius * a.sin()));
    }
    Ok(barycentric(&g.simple_adjacency(), &pinned))
}

/// Solves the barycentric system for the free vertices.
pub fn barycentric(adj: &[Vec<Vertex>], pinned: &HashMap<Vertex, Point>) -> Vec<Point> {
    let n = adj.len();
    let free: Vec<Vertex> = (0..n).filter(|v| !pinned.contains_key(v)).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        index[v] = i;
    }
    let f = free.len();
    let mut pos: Vec<Point> = (0..n)
        .map(|v| pinned.get(&v).copied().unwrap_or_default())
        .collect();
    if f == 0 {
        return pos;
    }
    let mut a = DMatrix::<f64>::zeros(f, f);
    let mut b = DMatrix::<f64>::zeros(f, 2);
    for (i, &v) in free.iter().enumerate() {
        a[(i, i)] = adj[v].len() as f64;
        for &w in &adj[v] {
            match pinned.get(&w) {
                Some(p) => {
                    b[(i, 0)] += p.x;
                    b[(i, 1)] += p.y;
                }
                None => a[(i, index[w])] -= 1.0,
            }
        }
    }
    let lu = a.lu();
    let sol = lu.solve(&b).expect("barycentric system of a connected graph is regular");
    for (i, &v) in free.iter().enumerate() {
        pos[v] = Point::new(sol[(i, 0)], sol[(i, 1)]);
    }
    pos
}

/// Number of properly crossing edge pairs, by brute force.
pub fn count_crossings(edges: &[(Vertex, Vertex)], pos: &[Point]) -> usize {
    let mut count = 0;
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for &(c, d) in &edges[i + 1..] {
            if segments_properly_cross(pos[a], pos[b], pos[c], pos[d]) {
                count += 1;
            }
        }
    }
    count
}

/// Clockwise dart orders read off a drawing by angular sort.
pub fn rotation_from_drawing(e: &PlaneEmbedding, pos: &[Point]) -> Vec<Vec<usize>> {
    (0..e.vertex_count())
        .map(|v| {
            let mut darts = e.rotation(v).to_vec();
            darts.sort_by(|&x, &y| {
                let dx = pos[e.head(x)] - pos[v];
                let dy = pos[e.head(y)] - pos[v];
                // decreasing angle is clockwise
                dy.y.atan2(dy.x).total_cmp(&dx.y.atan2(dx.x))
            });
            darts
        })
        .collect()
}

/// True when two rotation systems agree up to the cyclic start at each vertex.
pub fn same_cyclic_orders(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.len() == y.len()
                && (x.is_empty() || {
                    let s = y.iter().position(|&d| d == x[0]);
                    s.is_some_and(|s| (0..x.len()).all(|i| x[i] == y[(s + i) % y.len()]))
                })
        })
}
