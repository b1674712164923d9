//! Undirected multigraphs with the degree, connectivity and bridge queries
//! shared by every recognizer.
//!
//! Vertices are the integers `0..n`. Edges keep their insertion order (edge
//! ids are positions in that order) and are stored with the smaller endpoint
//! first. Equality compares vertex counts and edge multisets.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::format::ContentLines;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    /// Adds an edge and returns its id. Panics on an out-of-range endpoint.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> EdgeId {
        self.try_add_edge(u, v).expect("edge endpoint out of range")
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::InvalidVertex { vertex: w, n: self.n });
            }
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(self.edges.len() - 1)
    }

    pub fn sorted_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Incident `(neighbor, edge)` pairs per vertex, sorted. A self-loop
    /// contributes two entries at its vertex.
    pub fn incidence(&self) -> Vec<Vec<(Vertex, EdgeId)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((v, e));
            inc[v].push((u, e));
        }
        for list in &mut inc {
            list.sort_unstable();
        }
        inc
    }

    /// Sorted, deduplicated neighbor lists with self-loops dropped.
    pub fn simple_adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// The simple graph underlying this one: parallel edges collapsed and
    /// self-loops removed, edges in sorted order.
    pub fn simplified(&self) -> Graph {
        let mut edges: Vec<_> = self.edges.iter().copied().filter(|(u, v)| u != v).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph { n: self.n, edges }
    }

    pub fn is_simple(&self) -> bool {
        let mut e = self.sorted_edges();
        let len = e.len();
        e.dedup();
        e.len() == len && self.edges.iter().all(|(u, v)| u != v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.contains(&key)
    }

    /// Degree of each vertex; parallel edges count with multiplicity and a
    /// self-loop counts twice.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.degree_profile().iter().all(|&d| d == k)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_count_without(&[]) == 1
    }

    /// Connected component label per vertex, labels assigned in order of the
    /// smallest vertex in each component.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.simple_adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    fn component_count_without(&self, removed: &[Vertex]) -> usize {
        let adj = self.simple_adjacency();
        count_components(&adj, removed)
    }

    /// `min(3, κ(g))` for the simple graph underlying `g`. Complete graphs on
    /// `n` vertices report `n - 1`.
    pub fn vertex_connectivity_at_most_3(&self) -> usize {
        let adj = self.simplified().simple_adjacency();
        let n = self.n;
        if n <= 1 || count_components(&adj, &[]) != 1 {
            return 0;
        }
        let complete = adj.iter().all(|a| a.len() == n - 1);
        if complete {
            return (n - 1).min(3);
        }
        for a in 0..n {
            if count_components(&adj, &[a]) > 1 {
                return 1;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if count_components(&adj, &[a, b]) > 1 {
                    return 2;
                }
            }
        }
        3
    }

    /// Edges whose removal disconnects the graph, in increasing id order.
    pub fn find_bridges(&self) -> Result<Vec<EdgeId>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let inc = self.incidence();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut bridges = Vec::new();
        let mut timer = 0;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent edge, next incidence index)
            let mut stack: Vec<(Vertex, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (u, parent_edge) = (top.0, top.1);
                if top.2 < inc[u].len() {
                    let (w, e) = inc[u][top.2];
                    top.2 += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            bridges.push(e);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        Ok(bridges)
    }

    /// Subgraph induced by `keep`, vertices renumbered in the order given.
    /// Returns the subgraph and, per kept vertex, its original id.
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let mut sub = Graph::new(keep.len());
        for &(u, v) in &self.edges {
            if map[u] != usize::MAX && map[v] != usize::MAX {
                sub.add_edge(map[u], map[v]);
            }
        }
        (sub, keep.to_vec())
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = ContentLines::new(text);
        let g = Self::parse_from(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(parse_err(line, "unexpected trailing content"));
        }
        Ok(g)
    }

    /// Reads the `n m` header and `m` edge lines, leaving the rest of the
    /// stream untouched.
    pub(crate) fn parse_from(lines: &mut ContentLines<'_>) -> Result<Graph> {
        let (line, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let nums = parse_usizes(line, &header)?;
        if nums.len() != 2 {
            return Err(parse_err(line, "header must be `n m`"));
        }
        let (n, m) = (nums[0], nums[1]);
        let mut g = Graph::new(n);
        for _ in 0..m {
            let (line, toks) = lines
                .next()
                .ok_or_else(|| parse_err(line, format!("expected {m} edge lines")))?;
            let uv = parse_usizes(line, &toks)?;
            if uv.len() != 2 {
                return Err(parse_err(line, "edge line must be `u v`"));
            }
            g.try_add_edge(uv[0], uv[1])
                .map_err(|e| parse_err(line, e.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

pub(crate) fn parse_usizes(line: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected a non-negative integer, got `{t}`")))
        })
        .collect()
}

fn count_components(adj: &[Vec<Vertex>], removed: &[Vertex]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Two triangles `0 1 2` and `3 4 5` joined by the rungs `i -- i+3`.
    pub fn prism() -> Graph {
        Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    pub fn cube() -> Graph {
        let mut g = Graph::new(8);
        for u in 0..8usize {
            for bit in [1, 2, 4] {
                let v = u ^ bit;
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn octahedron() -> Graph {
        let mut g = Graph::new(6);
        for u in 0..6usize {
            for v in u + 1..6 {
                if u / 2 != v / 2 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn degree_examples() {
        assert!(complete(4).degree_profile().iter().all(|&d| d == 3));
        assert_eq!(path(3).degree_profile(), vec![1, 2, 1]);
        let multi = Graph::from_edges(2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(multi.degree_profile(), vec![3, 3]);
        let looped = Graph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(looped.degree_profile(), vec![2]);
    }

    #[test]
    fn regularity() {
        assert!(complete(4).is_k_regular(3));
        assert!(!path(3).is_k_regular(3));
        let p = prism();
        assert_eq!((p.vertex_count(), p.edge_count()), (6, 9));
        assert!(p.is_k_regular(3));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(complete(4).vertex_connectivity_at_most_3(), 3);
        assert_eq!(cycle(5).vertex_connectivity_at_most_3(), 2);
        assert_eq!(path(3).vertex_connectivity_at_most_3(), 1);
        assert_eq!(complete(3).vertex_connectivity_at_most_3(), 2);
        assert_eq!(complete(6).vertex_connectivity_at_most_3(), 3);
        assert_eq!(Graph::new(2).vertex_connectivity_at_most_3(), 0);
        // parallel edges do not raise connectivity
        let multi = Graph::from_edges(3, [(0, 1), (0, 1), (1, 2), (1, 2)]).unwrap();
        assert_eq!(multi.vertex_connectivity_at_most_3(), 1);
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(path(5).find_bridges().unwrap(), vec![0, 1, 2, 3]);
        assert!(cycle(6).find_bridges().unwrap().is_empty());
        let g = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(g.find_bridges().unwrap(), vec![6]);
        let parallel = Graph::from_edges(2, [(0, 1), (0, 1)]).unwrap();
        assert!(parallel.find_bridges().unwrap().is_empty());
        assert!(matches!(
            Graph::new(2).find_bridges(),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn equality_ignores_order_and_orientation() {
        let a = Graph::from_edges(3, [(0, 1), (2, 1)]).unwrap();
        let b = Graph::from_edges(3, [(1, 2), (1, 0)]).unwrap();
        assert_eq!(a, b);
        let c = Graph::from_edges(3, [(1, 2), (1, 0), (1, 0)]).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let text = "# a comment\n4 3\n0 1\n\n1 2 # trailing\n2 3\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g, path(4));
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(Graph::parse("2 1\n0 5\n").is_err());
        assert!(Graph::parse("2 2\n0 1\n").is_err());
        assert!(Graph::parse("x 1\n").is_err());
    }
}
