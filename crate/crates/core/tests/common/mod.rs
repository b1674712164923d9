//! Independent oracles and instance builders shared by the integration
//! tests. Nothing here calls the predicates it is used to check.

#![allow(dead_code)]

use std::collections::VecDeque;

use tridual::geometry::Point;
use tridual::graph::Graph;
use tridual::pipeline::{generate, GeneratorConfig};
use tridual::sat::{Formula, Literal};
use tridual::Triangulation;

/// Adjacency lists built straight from the edge list.
pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn connected_without(adj: &[Vec<usize>], removed: &[usize]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|v| !removed.contains(v)) else {
        return true;
    };
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n - removed.len()
}

/// `min(3, κ(g))` by removing every vertex set of size at most 2.
pub fn brute_connectivity(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = adj.len();
    if !connected_without(&adj, &[]) {
        return 0;
    }
    for a in 0..n {
        if n > 2 && !connected_without(&adj, &[a]) {
            return 1;
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if n > 3 && !connected_without(&adj, &[a, b]) {
                return 2;
            }
        }
    }
    3.min(n.saturating_sub(1))
}

pub fn brute_is_simple(g: &Graph) -> bool {
    let mut seen = std::collections::HashSet::new();
    g.edges()
        .iter()
        .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
}

/// Bridges by deleting each edge and testing connectivity.
pub fn brute_bridges(g: &Graph) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&e| {
            let mut h = Graph::new(g.vertex_count());
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                if i != e {
                    h.add_edge(u, v);
                }
            }
            !connected_without(&adjacency(&h), &[])
        })
        .collect()
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Proper crossing of two segments with four distinct endpoints, with a
/// relative tolerance on the orientation tests.
pub fn proper_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let scale = [a, b, c, d]
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max);
    let tol = 1e-12 * scale * scale;
    let s = |x: f64| {
        if x > tol {
            1
        } else if x < -tol {
            -1
        } else {
            0
        }
    };
    let (o1, o2) = (s(orient(a, b, c)), s(orient(a, b, d)));
    let (o3, o4) = (s(orient(c, d, a)), s(orient(c, d, b)));
    o1 * o2 < 0 && o3 * o4 < 0
}

pub fn crossing_pairs(points: &[Point], edges: &[(usize, usize)]) -> usize {
    let mut n = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if proper_cross(points[a], points[b], points[c], points[d]) {
                n += 1;
            }
        }
    }
    n
}

fn area2(poly: &[Point]) -> f64 {
    (0..poly.len())
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            p.x * q.y - p.y * q.x
        })
        .sum()
}

/// Geometric problems with a triangulation: degenerate triangles, crossing
/// edges, points inside triangles, or triangle area not matching the
/// polygon area minus the hole areas.
pub fn triangulation_problems(t: &Triangulation) -> Vec<String> {
    let mut out = Vec::new();
    let p = &t.points;
    let mut edges = Vec::new();
    let mut total = 0.0;
    for tri in &t.triangles {
        let a = orient(p[tri[0]], p[tri[1]], p[tri[2]]).abs();
        if a <= 1e-14 {
            out.push(format!("degenerate triangle {tri:?}"));
        }
        total += a;
        for k in 0..3 {
            let (u, v) = (tri[k], tri[(k + 1) % 3]);
            edges.push((u.min(v), u.max(v)));
        }
        for (w, &q) in p.iter().enumerate() {
            if tri.contains(&w) {
                continue;
            }
            let [x, y, z] = tri.map(|i| p[i]);
            let o = [orient(x, y, q), orient(y, z, q), orient(z, x, q)];
            if o.iter().all(|&s| s > 1e-12) || o.iter().all(|&s| s < -1e-12) {
                out.push(format!("point {w} inside triangle {tri:?}"));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let c = crossing_pairs(p, &edges);
    if c > 0 {
        out.push(format!("{c} crossing edge pairs"));
    }
    let cyc = |c: &[usize]| c.iter().map(|&i| p[i]).collect::<Vec<_>>();
    let want = area2(&cyc(&t.boundary)).abs()
        - t.holes.iter().map(|h| area2(&cyc(h)).abs()).sum::<f64>();
    if (total - want).abs() > 1e-9 * want.abs().max(1.0) {
        out.push(format!("triangle area {total} differs from region area {want}"));
    }
    out
}

/// Generator configurations for the hole-free corpus.
pub fn hole_free_config(i: u64) -> GeneratorConfig {
    GeneratorConfig {
        boundary: 3 + (i as usize * 7) % 38,
        holes: 0,
        hole_size: 3,
        interior_points: (i as usize * 3) % 11,
        seed: 1000 + i,
    }
}

pub fn holey_config(i: u64) -> GeneratorConfig {
    GeneratorConfig {
        boundary: 8 + (i as usize * 5) % 20,
        holes: 1 + (i as usize) % 3,
        hole_size: 3 + (i as usize) % 3,
        interior_points: (i as usize) % 4,
        seed: 5000 + i,
    }
}

pub fn instance(cfg: &GeneratorConfig) -> Triangulation {
    generate(cfg).unwrap_or_else(|e| panic!("{cfg:?}: {e}"))
}

/// Deletes edge `e`.
pub fn delete_edge(g: &Graph, e: usize) -> Graph {
    let mut h = Graph::new(g.vertex_count());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if i != e {
            h.add_edge(u, v);
        }
    }
    h
}

/// Replaces vertex `v` of a cubic graph by `K3,3` minus one vertex, with
/// the three degree-2 vertices of the gadget taking over `v`'s edges.
/// Contracting the rest of the graph to one vertex recovers `K3,3`, so the
/// result is never planar.
pub fn splice_k33(g: &Graph, v: usize) -> Graph {
    let n = g.vertex_count();
    let mut h = Graph::new(n + 5);
    let (u0, w0) = (n, n + 3);
    let us = [u0, u0 + 1, u0 + 2];
    let ws = [w0, w0 + 1];
    let mut port = 0;
    for &(a, b) in g.edges() {
        match (a == v, b == v) {
            (false, false) => {
                h.add_edge(a, b);
            }
            (true, false) | (false, true) => {
                let other = if a == v { b } else { a };
                h.add_edge(other, us[port]);
                port += 1;
            }
            (true, true) => unreachable!("loop"),
        }
    }
    assert_eq!(port, 3, "vertex {v} is not of degree 3");
    for &u in &us {
        for &w in &ws {
            h.add_edge(u, w);
        }
    }
    // `v` is left isolated; drop it by relabelling.
    relabel_without(&h, v)
}

fn relabel_without(g: &Graph, gone: usize) -> Graph {
    let map = |x: usize| if x > gone { x - 1 } else { x };
    let mut h = Graph::new(g.vertex_count() - 1);
    for &(a, b) in g.edges() {
        assert!(a != gone && b != gone);
        h.add_edge(map(a), map(b));
    }
    h
}

/// Disjoint union of `a` and `b` with edge `ea` of `a` and edge `eb` of `b`
/// replaced by two edges across, which makes the endpoints of `ea` a
/// 2-vertex cut.
pub fn two_cut_join(a: &Graph, ea: usize, b: &Graph, eb: usize) -> Graph {
    let off = a.vertex_count();
    let mut h = Graph::new(off + b.vertex_count());
    for (i, &(u, v)) in a.edges().iter().enumerate() {
        if i != ea {
            h.add_edge(u, v);
        }
    }
    for (i, &(u, v)) in b.edges().iter().enumerate() {
        if i != eb {
            h.add_edge(off + u, off + v);
        }
    }
    let (p, q) = a.endpoints(ea);
    let (r, s) = b.endpoints(eb);
    h.add_edge(p, off + r);
    h.add_edge(q, off + s);
    h
}

/// Every formula over `x1..x3` with one or two distinct clauses, each
/// clause a multiset of three literals.
pub fn small_formula_corpus() -> Vec<Formula> {
    let lits: Vec<Literal> = (0..3)
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .collect();
    let mut clauses = Vec::new();
    for a in 0..6 {
        for b in a..6 {
            for c in b..6 {
                clauses.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..clauses.len() {
        out.push(Formula::new(3, vec![clauses[i]]).unwrap());
        for j in i + 1..clauses.len() {
            out.push(Formula::new(3, vec![clauses[i], clauses[j]]).unwrap());
        }
    }
    out
}

/// Euler characteristic `V - E + F` of an embedding, computed from counts.
pub fn euler(e: &tridual::embed::PlaneEmbedding) -> i64 {
    e.vertex_count() as i64 - e.graph().edge_count() as i64 + e.face_count() as i64
}
