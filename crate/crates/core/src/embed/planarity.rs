//! Left-right planarity test producing a rotation system.
//!
//! Follows the formulation of Brandes ("The left-right planarity test"): a
//! DFS orientation, a conflict-pair test over return edges, and a final
//! embedding phase driven by the resolved edge sides. Parallel edges and
//! self-loops are removed before the test and reinserted next to a sibling.

use crate::embed::embedding::{dart_from, twin, Dart, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// Embeds a connected planar graph, or reports [`Error::NonPlanar`].
pub fn planarity_test(g: &Graph) -> Result<PlaneEmbedding> {
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        return Err(Error::Precondition(
            "embedding needs at least one edge".to_string(),
        ));
    }
    let simple = g.simplified();
    let rotation = if simple.edge_count() == 0 {
        vec![Vec::new(); g.vertex_count()]
    } else {
        let nbr_order = LrState::new(&simple).run().ok_or(Error::NonPlanar)?;
        // neighbor orders -> darts of the original graph, first parallel copy
        let mut first_edge = std::collections::HashMap::new();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if a != b {
                first_edge.entry((a, b)).or_insert(e);
            }
        }
        nbr_order
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                nbrs.iter()
                    .map(|&w| dart_from(g, first_edge[&(v.min(w), v.max(w))], v))
                    .collect()
            })
            .collect()
    };
    let rotation = insert_extra_edges(g, rotation);
    PlaneEmbedding::new(g.clone(), rotation)
}

/// True when every connected component of `g` is planar.
pub fn is_planar(g: &Graph) -> bool {
    let labels = g.components();
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    (0..count).all(|c| {
        let keep: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| labels[v] == c).collect();
        let (sub, _) = g.induced(&keep);
        let sub = sub.simplified();
        sub.edge_count() == 0 || LrState::new(&sub).run().is_some()
    })
}

/// Adds parallel copies right beside the first copy and self-loops as
/// consecutive dart pairs, each creating one new face.
fn insert_extra_edges(g: &Graph, mut rotation: Vec<Vec<Dart>>) -> Vec<Vec<Dart>> {
    let mut first_edge = std::collections::HashMap::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            rotation[a].push(2 * e);
            rotation[a].push(2 * e + 1);
            continue;
        }
        match first_edge.get(&(a, b)) {
            None => {
                first_edge.insert((a, b), e);
            }
            Some(&f) => {
                // after the sibling at a, before the sibling's twin at b
                let da = 2 * f;
                let ia = rotation[a].iter().position(|&d| d == da).unwrap();
                rotation[a].insert(ia + 1, 2 * e);
                let ib = rotation[b].iter().position(|&d| d == twin(da)).unwrap();
                rotation[b].insert(ib, 2 * e + 1);
            }
        }
    }
    rotation
}

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    g: &'a Graph,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    height: Vec<Option<usize>>,
    roots: Vec<Vertex>,
    // per undirected edge, filled as it gets oriented
    oriented: Vec<Option<(Vertex, Vertex)>>,
    out: Vec<Vec<EdgeId>>,
    parent_edge: Vec<Option<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    ordered: Vec<Vec<EdgeId>>,
    refs: Vec<Option<EdgeId>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<Option<usize>>,
    lowpt_edge: Vec<EdgeId>,
    next_pair_id: usize,
}

impl<'a> LrState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        LrState {
            g,
            adj: g.incidence(),
            height: vec![None; n],
            roots: Vec::new(),
            oriented: vec![None; m],
            out: vec![Vec::new(); n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            ordered: vec![Vec::new(); n],
            refs: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![None; m],
            lowpt_edge: vec![0; m],
            next_pair_id: 0,
        }
    }

    fn target(&self, e: EdgeId) -> Vertex {
        self.oriented[e].expect("edge oriented").1
    }

    fn source(&self, e: EdgeId) -> Vertex {
        self.oriented[e].expect("edge oriented").0
    }

    /// Clockwise neighbor order per vertex, or `None` when non-planar.
    fn run(mut self) -> Option<Vec<Vec<Vertex>>> {
        let n = self.g.vertex_count();
        let m = self.g.edge_count();
        if n > 2 && m > 3 * n - 6 {
            return None;
        }
        for v in 0..n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let mut list = self.out[v].clone();
            list.sort_by_key(|&e| self.nesting_depth[e]);
            self.ordered[v] = list;
        }
        for r in self.roots.clone() {
            if !self.test(r) {
                return None;
            }
        }
        for e in 0..m {
            self.nesting_depth[e] *= self.sign(e);
        }
        // clockwise lists, anchored at a movable "first" neighbor
        let mut emb = EmbeddingBuilder::new(n);
        for v in 0..n {
            let mut list = self.out[v].clone();
            list.sort_by_key(|&e| self.nesting_depth[e]);
            self.ordered[v] = list;
            for &e in &self.ordered[v] {
                emb.push_cw(v, self.target(e));
            }
        }
        let mut left_ref = vec![0; n];
        let mut right_ref = vec![0; n];
        for r in self.roots.clone() {
            self.embed(r, &mut emb, &mut left_ref, &mut right_ref);
        }
        Some(emb.finish())
    }

    fn orient(&mut self, root: Vertex) {
        // explicit stack of (vertex, next adjacency index)
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < self.adj[v].len() {
                let (w, e) = self.adj[v][*idx];
                *idx += 1;
                if self.oriented[e].is_some() {
                    continue;
                }
                self.oriented[e] = Some((v, w));
                self.out[v].push(e);
                let hv = self.height[v].unwrap();
                self.lowpt[e] = hv;
                self.lowpt2[e] = hv;
                match self.height[w] {
                    None => {
                        self.parent_edge[w] = Some(e);
                        self.height[w] = Some(hv + 1);
                        stack.push((w, 0));
                        // finish_edge runs once w is exhausted
                    }
                    Some(hw) => {
                        self.lowpt[e] = hw;
                        self.finish_edge(v, e);
                    }
                }
            } else {
                stack.pop();
                if let Some(pe) = self.parent_edge[v] {
                    let parent = self.source(pe);
                    if stack.last().map(|t| t.0) == Some(parent) {
                        self.finish_edge(parent, pe);
                    }
                }
            }
        }
    }

    /// Nesting depth of `e = (v, w)` and the lowpoint update of v's parent
    /// edge, run after `e` has been fully explored.
    fn finish_edge(&mut self, v: Vertex, e: EdgeId) {
        let hv = self.height[v].unwrap();
        self.nesting_depth[e] = 2 * self.lowpt[e] as i64;
        if self.lowpt2[e] < hv {
            self.nesting_depth[e] += 1;
        }
        if let Some(pe) = self.parent_edge[v] {
            if self.lowpt[e] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                self.lowpt[pe] = self.lowpt[e];
            } else if self.lowpt[e] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn new_pair(&mut self) -> ConflictPair {
        self.next_pair_id += 1;
        ConflictPair {
            id: self.next_pair_id,
            ..Default::default()
        }
    }

    fn conflicting(&self, i: &Interval, b: EdgeId) -> bool {
        !i.empty() && self.lowpt[i.high.unwrap()] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, root: Vertex) -> bool {
        // frames: (vertex, next index into ordered[v])
        let mut frames = vec![(root, 0usize)];
        while let Some(&(v, idx)) = frames.last() {
            if idx < self.ordered[v].len() {
                let ei = self.ordered[v][idx];
                let w = self.target(ei);
                self.stack_bottom[ei] = self.top_id();
                if self.parent_edge[w] == Some(ei) {
                    frames.push((w, 0));
                    continue;
                }
                self.lowpt_edge[ei] = ei;
                let mut p = self.new_pair();
                p.right = Interval {
                    low: Some(ei),
                    high: Some(ei),
                };
                self.stack.push(p);
                if !self.integrate(v, idx) {
                    return false;
                }
                frames.last_mut().unwrap().1 += 1;
            } else {
                frames.pop();
                if let Some(e) = self.parent_edge[v] {
                    self.remove_back_edges(e);
                }
                // resume the parent after its tree edge into v
                if let Some(&(u, uidx)) = frames.last() {
                    if !self.integrate(u, uidx) {
                        return false;
                    }
                    frames.last_mut().unwrap().1 += 1;
                }
            }
        }
        true
    }

    /// Return-edge integration for the `idx`-th outgoing edge of `v`.
    fn integrate(&mut self, v: Vertex, idx: usize) -> bool {
        let ei = self.ordered[v][idx];
        let hv = self.height[v].unwrap();
        if self.lowpt[ei] < hv {
            let e = self.parent_edge[v].expect("non-root has a parent edge");
            if idx == 0 {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = self.new_pair();
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            if self.lowpt[q.right.low.unwrap()] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[q.right.low.unwrap()] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.refs[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else {
                self.refs[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.source(e);
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.target(h) != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.refs[low] = p.right.low;
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.target(h) != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.refs[low] = p.left.low;
                    self.side[low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edge implies a pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: EdgeId) -> i64 {
        // resolve the reference chain iteratively
        let mut chain = vec![e];
        while let Some(r) = self.refs[*chain.last().unwrap()] {
            chain.push(r);
        }
        let mut acc = self.side[*chain.last().unwrap()];
        for &c in chain.iter().rev().skip(1) {
            acc *= self.side[c];
            self.side[c] = acc;
            self.refs[c] = None;
        }
        self.side[e]
    }

    fn embed(
        &mut self,
        root: Vertex,
        emb: &mut EmbeddingBuilder,
        left_ref: &mut [Vertex],
        right_ref: &mut [Vertex],
    ) {
        let mut frames = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut idx)) = frames.last_mut() {
            if *idx >= self.ordered[v].len() {
                frames.pop();
                continue;
            }
            let ei = self.ordered[v][*idx];
            *idx += 1;
            let w = self.target(ei);
            if self.parent_edge[w] == Some(ei) {
                emb.add_first(w, v);
                left_ref[v] = w;
                right_ref[v] = w;
                frames.push((w, 0));
            } else if self.side[ei] == 1 {
                emb.add_cw_after(w, v, right_ref[w]);
            } else {
                emb.add_ccw_before(w, v, left_ref[w]);
                left_ref[w] = v;
            }
        }
    }
}

/// Clockwise neighbor lists with a distinguished first neighbor.
struct EmbeddingBuilder {
    cw: Vec<Vec<Vertex>>,
    first: Vec<Option<Vertex>>,
}

impl EmbeddingBuilder {
    fn new(n: usize) -> Self {
        EmbeddingBuilder {
            cw: vec![Vec::new(); n],
            first: vec![None; n],
        }
    }

    fn push_cw(&mut self, v: Vertex, w: Vertex) {
        self.cw[v].push(w);
        if self.first[v].is_none() {
            self.first[v] = Some(w);
        }
    }

    fn index(&self, v: Vertex, w: Vertex) -> usize {
        self.cw[v].iter().position(|&x| x == w).expect("reference neighbor present")
    }

    fn add_cw_after(&mut self, v: Vertex, w: Vertex, reference: Vertex) {
        let i = self.index(v, reference);
        self.cw[v].insert(i + 1, w);
    }

    fn add_ccw_before(&mut self, v: Vertex, w: Vertex, reference: Vertex) {
        let i = self.index(v, reference);
        self.cw[v].insert(i, w);
        if self.first[v] == Some(reference) {
            self.first[v] = Some(w);
        }
    }

    fn add_first(&mut self, v: Vertex, w: Vertex) {
        match self.first[v] {
            None => {
                self.cw[v].push(w);
                self.first[v] = Some(w);
            }
            Some(f) => self.add_ccw_before(v, w, f),
        }
    }

    fn finish(self) -> Vec<Vec<Vertex>> {
        self.cw
    }
}
