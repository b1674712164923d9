//! Graph isomorphism: canonical codes for plane embeddings and a
//! backtracking matcher for small abstract multigraphs.

use std::collections::VecDeque;

use crate::embed::{planarity_test, twin, Dart, PlaneEmbedding};
use crate::graph::{Graph, Vertex};

/// Canonical code of a connected plane embedding, invariant under
/// relabelling and mirroring. Equal codes mean the embedded graphs are
/// isomorphic as maps on the sphere.
pub fn plane_code(e: &PlaneEmbedding) -> Vec<usize> {
    let darts = 2 * e.graph().edge_count();
    let mut best: Option<Vec<usize>> = None;
    for d0 in 0..darts {
        for mirrored in [false, true] {
            let code = traverse(e, d0, mirrored);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

fn traverse(e: &PlaneEmbedding, d0: Dart, mirrored: bool) -> Vec<usize> {
    let n = e.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    label[e.tail(d0)] = 0;
    queue.push_back(d0);
    let mut next = 1;
    let mut code = Vec::with_capacity(2 * e.graph().edge_count() + n);
    while let Some(entry) = queue.pop_front() {
        let v = e.tail(entry);
        let rot = e.rotation(v);
        let start = rot.iter().position(|&d| d == entry).unwrap();
        let k = rot.len();
        for i in 0..k {
            let idx = if mirrored { (start + k - i) % k } else { (start + i) % k };
            let d = rot[idx];
            let w = e.head(d);
            if label[w] == usize::MAX {
                label[w] = next;
                next += 1;
                queue.push_back(twin(d));
            }
            code.push(label[w]);
        }
        code.push(usize::MAX);
    }
    code
}

/// Isomorphism of connected planar graphs that are 3-connected, through
/// their unique embeddings. Returns `None` when either graph cannot be
/// embedded.
pub fn planar_isomorphic(a: &Graph, b: &Graph) -> Option<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Some(false);
    }
    let ea = planarity_test(a).ok()?;
    let eb = planarity_test(b).ok()?;
    Some(plane_code(&ea) == plane_code(&eb))
}

/// Exhaustive isomorphism test for multigraphs, pruned by degrees and edge
/// multiplicities. Intended for graphs with a few dozen vertices.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (ma, mb) = (multiplicity(a), multiplicity(b));
    let (da, db) = (a.degree_profile(), b.degree_profile());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // assign vertices of `a` in BFS order so constraints bite early
    let order = bfs_order(a);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, &ma, &mb, &da, &db, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    i: usize,
    order: &[Vertex],
    ma: &[Vec<usize>],
    mb: &[Vec<usize>],
    da: &[usize],
    db: &[usize],
    map: &mut [Vertex],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for w in 0..map.len() {
        if used[w] || da[v] != db[w] || ma[v][v] != mb[w][w] {
            continue;
        }
        let consistent = order[..i].iter().all(|&u| ma[v][u] == mb[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(i + 1, order, ma, mb, da, db, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

fn multiplicity(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] += 1;
        if u != v {
            m[v][u] += 1;
        }
    }
    m
}

fn bfs_order(g: &Graph) -> Vec<Vertex> {
    let adj = g.simple_adjacency();
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edges(g.vertex_count(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v])))
            .unwrap()
    }

    #[test]
    fn relabelled_graphs_match() {
        let cube = named::cube();
        let perm = [3, 7, 1, 0, 6, 2, 5, 4];
        let c2 = relabel(&cube, &perm);
        assert!(isomorphic(&cube, &c2));
        assert_eq!(planar_isomorphic(&cube, &c2), Some(true));
    }

    #[test]
    fn distinct_graphs_differ() {
        assert!(!isomorphic(&named::prism(), &named::complete_bipartite(3, 3)));
        assert!(!isomorphic(&named::cycle(6), &named::path(6)));
        let a = Graph::from_edges(2, [(0, 1), (0, 1)]).unwrap();
        let b = Graph::from_edges(2, [(0, 1), (0, 0)]).unwrap();
        assert!(!isomorphic(&a, &b));
        assert_eq!(planar_isomorphic(&named::prism(), &named::complete_bipartite(3, 3)), None);
        assert_eq!(planar_isomorphic(&named::prism(), &named::cube()), Some(false));
    }

    #[test]
    fn cube_dual_is_octahedron() {
        let e = planarity_test(&named::cube()).unwrap();
        let d = e.dualize();
        assert!(isomorphic(&d.dual, &named::octahedron()));
        assert_eq!(plane_code(&d.embedding), plane_code(&planarity_test(&named::octahedron()).unwrap()));
    }
}
