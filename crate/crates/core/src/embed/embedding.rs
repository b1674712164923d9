//! Rotation systems, face tracing and dualization.
//!
//! Edge `e = (u, v)` (with `u <= v` as stored in [`Graph`]) owns two darts:
//! `2e` runs `u -> v` and `2e + 1` runs `v -> u`. The rotation at a vertex
//! lists its outgoing darts in clockwise order. The face successor of dart
//! `d` is the dart following `twin(d)` in the rotation at the head of `d`, so
//! in a drawing whose rotations are clockwise every bounded face is traced
//! counterclockwise and lies to the left of its darts.

use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::format::ContentLines;
use crate::graph::{parse_usizes, EdgeId, Graph, Vertex};

pub type Dart = usize;
pub type FaceId = usize;

pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

pub fn dart_edge(d: Dart) -> EdgeId {
    d / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts in walking order, starting at the canonical position.
    pub darts: Vec<Dart>,
    /// Tail vertex of each dart, i.e. the boundary as a vertex cycle.
    pub vertices: Vec<Vertex>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// `(vertex, edge)` steps of the boundary walk.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.vertices
            .iter()
            .zip(&self.darts)
            .map(|(&v, &d)| (v, dart_edge(d)))
    }
}

#[derive(Clone, Debug)]
pub struct PlaneEmbedding {
    graph: Graph,
    rotation: Vec<Vec<Dart>>,
    /// Index of each dart inside the rotation of its tail.
    pos: Vec<usize>,
    faces: Vec<Face>,
    face_of_dart: Vec<FaceId>,
    outer: FaceId,
}

impl PlaneEmbedding {
    /// Builds an embedding from clockwise dart orders. The graph must be
    /// connected with at least one edge, every dart must appear exactly once
    /// at its tail, and the traced faces must satisfy Euler's formula.
    pub fn new(graph: Graph, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        if rotation.len() != n {
            return Err(Error::InconsistentRotation(format!(
                "{} rotation lists for {n} vertices",
                rotation.len()
            )));
        }
        if m == 0 || !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut pos = vec![usize::MAX; 2 * m];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= 2 * m {
                    return Err(Error::InconsistentRotation(format!(
                        "dart {d} at vertex {v} does not exist"
                    )));
                }
                if dart_tail(&graph, d) != v {
                    return Err(Error::InconsistentRotation(format!(
                        "dart {d} listed at vertex {v} but leaves vertex {}",
                        dart_tail(&graph, d)
                    )));
                }
                if pos[d] != usize::MAX {
                    return Err(Error::InconsistentRotation(format!(
                        "dart {d} listed twice"
                    )));
                }
                pos[d] = i;
            }
        }
        if let Some(d) = pos.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InconsistentRotation(format!(
                "edge {} is missing an end at vertex {}",
                dart_edge(d),
                dart_tail(&graph, d)
            )));
        }

        let mut emb = PlaneEmbedding {
            graph,
            rotation,
            pos,
            faces: Vec::new(),
            face_of_dart: Vec::new(),
            outer: 0,
        };
        emb.trace_faces();
        let f = emb.faces.len();
        if n + f != m + 2 {
            return Err(Error::InconsistentRotation(format!(
                "Euler check failed: V - E + F = {n} - {m} + {f}"
            )));
        }
        emb.outer = emb.default_outer();
        Ok(emb)
    }

    fn trace_faces(&mut self) {
        let m2 = 2 * self.graph.edge_count();
        let mut seen = vec![false; m2];
        let mut cycles = Vec::new();
        for start in 0..m2 {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.next_in_face(d);
            }
            cycles.push(self.canonical_cycle(cycle));
        }
        cycles.sort();
        self.face_of_dart = vec![0; m2];
        self.faces = cycles
            .into_iter()
            .enumerate()
            .map(|(id, (vertices, darts))| {
                for &d in &darts {
                    self.face_of_dart[d] = id;
                }
                Face { id, darts, vertices }
            })
            .collect();
    }

    /// Rotates a dart cycle so that its vertex sequence (then dart sequence)
    /// is lexicographically smallest.
    fn canonical_cycle(&self, cycle: Vec<Dart>) -> (Vec<Vertex>, Vec<Dart>) {
        let len = cycle.len();
        let verts: Vec<Vertex> = cycle.iter().map(|&d| self.tail(d)).collect();
        let key = |s: usize| {
            (
                (0..len).map(|i| verts[(s + i) % len]).collect::<Vec<_>>(),
                (0..len).map(|i| cycle[(s + i) % len]).collect::<Vec<_>>(),
            )
        };
        (0..len).map(key).min().expect("face walks are non-empty")
    }

    fn default_outer(&self) -> FaceId {
        let best = self.faces.iter().map(Face::len).max().unwrap_or(0);
        self.faces
            .iter()
            .position(|f| f.len() == best)
            .unwrap_or(0)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        dart_tail(&self.graph, d)
    }

    pub fn head(&self, d: Dart) -> Vertex {
        dart_tail(&self.graph, twin(d))
    }

    /// Clockwise successor of `d` around its tail.
    pub fn rotate_cw(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.pos[d] + 1) % rot.len()]
    }

    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.rotate_cw(twin(d))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face traced by `d`; the face on its left in a clockwise drawing.
    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        self.face_of_dart[d]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn set_outer_face(&mut self, f: FaceId) -> Result<()> {
        if f >= self.faces.len() {
            return Err(Error::Precondition(format!(
                "face {f} does not exist ({} faces)",
                self.faces.len()
            )));
        }
        self.outer = f;
        Ok(())
    }

    pub fn with_outer_face(mut self, f: FaceId) -> Result<Self> {
        self.set_outer_face(f)?;
        Ok(self)
    }

    /// Faces around `v` in clockwise order of the darts leaving `v`.
    pub fn faces_around(&self, v: Vertex) -> Vec<FaceId> {
        self.rotation[v].iter().map(|&d| self.face_of_dart[d]).collect()
    }

    /// Faces whose canonical vertex cycle equals `cycle` up to rotation, or
    /// up to rotation of its reversal when no oriented match exists.
    pub fn find_face_by_boundary(&self, cycle: &[Vertex]) -> Option<FaceId> {
        let fwd = min_rotation(cycle);
        if let Some(f) = self.faces.iter().find(|f| f.vertices == fwd) {
            return Some(f.id);
        }
        let mut rev = cycle.to_vec();
        rev.reverse();
        let rev = min_rotation(&rev);
        self.faces.iter().find(|f| f.vertices == rev).map(|f| f.id)
    }

    pub fn euler_holds(&self) -> bool {
        self.graph.vertex_count() + self.faces.len() == self.graph.edge_count() + 2
    }

    pub fn dualize(&self) -> DualMap {
        let faces = self.faces.len();
        let mut dual = Graph::new(faces);
        for e in 0..self.graph.edge_count() {
            dual.add_edge(self.face_of_dart[2 * e], self.face_of_dart[2 * e + 1]);
        }
        // dual dart crossing primal dart d, leaving the face of d
        let cross = |d: Dart| -> Dart {
            let e = dart_edge(d);
            let (a, _) = dual.endpoints(e);
            let (fd, ft) = (self.face_of_dart[d], self.face_of_dart[twin(d)]);
            if fd == ft {
                d
            } else if fd == a {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let rotation: Vec<Vec<Dart>> = self
            .faces
            .iter()
            .map(|f| f.darts.iter().rev().map(|&d| cross(d)).collect())
            .collect();
        let embedding = PlaneEmbedding::new(dual.clone(), rotation)
            .expect("the dual of a valid embedding is a valid embedding");
        DualMap {
            dual,
            embedding,
            primal_outer_face: self.outer,
        }
    }

    /// Embedding text: the graph, one `v: e1 e2 ...` line per vertex listing
    /// incident edge ids clockwise, then `outer <face-id>`.
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        for (v, rot) in self.rotation.iter().enumerate() {
            let _ = write!(out, "{v}:");
            for &d in rot {
                let _ = write!(out, " {}", dart_edge(d));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "outer {}", self.outer);
        out
    }

    /// Parses the embedding format. A trailing `tags` section is accepted and
    /// ignored; use [`PlaneEmbedding::parse_from`] to read it.
    pub fn parse(text: &str) -> Result<PlaneEmbedding> {
        let mut lines = ContentLines::new(text);
        let emb = Self::parse_from(&mut lines)?;
        match lines.next() {
            None => Ok(emb),
            Some((_, toks)) if toks == ["tags"] => Ok(emb),
            Some((line, _)) => Err(parse_err(line, "unexpected trailing content")),
        }
    }

    pub(crate) fn parse_from(lines: &mut ContentLines<'_>) -> Result<PlaneEmbedding> {
        let graph = Graph::parse_from(lines)?;
        Self::parse_rotations(graph, lines)
    }

    /// Reads `v: e1 e2 ...` rotation lines and an optional `outer` line for
    /// an already parsed graph. Stops at the first line of another kind.
    pub(crate) fn parse_rotations(
        graph: Graph,
        lines: &mut ContentLines<'_>,
    ) -> Result<PlaneEmbedding> {
        let n = graph.vertex_count();
        let mut ends: Vec<Option<Vec<EdgeId>>> = vec![None; n];
        let mut outer = None;
        let mut last_line = 0;
        while let Some((line, toks)) = lines.peek() {
            if toks[0] != "outer" && !toks[0].contains(':') && toks.get(1) != Some(&":") {
                break;
            }
            lines.next();
            last_line = line;
            if toks[0] == "outer" {
                let nums = parse_usizes(line, &toks[1..])?;
                if nums.len() != 1 {
                    return Err(parse_err(line, "expected `outer <face-id>`"));
                }
                outer = Some((line, nums[0]));
                continue;
            }
            let joined = toks.join(" ");
            let (head, rest) = joined
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected `v: e1 e2 ...`"))?;
            let v = head
                .trim()
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("bad vertex `{}`", head.trim())))?;
            if v >= n {
                return Err(parse_err(line, format!("vertex {v} out of range")));
            }
            if ends[v].is_some() {
                return Err(parse_err(line, format!("rotation for vertex {v} given twice")));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let list = parse_usizes(line, &toks)?;
            if let Some(&e) = list.iter().find(|&&e| e >= graph.edge_count()) {
                return Err(parse_err(line, format!("edge {e} out of range")));
            }
            ends[v] = Some(list);
        }
        let mut rotation = Vec::with_capacity(n);
        let mut loop_seen = vec![false; graph.edge_count()];
        for (v, list) in ends.into_iter().enumerate() {
            let list = list.ok_or_else(|| {
                parse_err(last_line, format!("missing rotation for vertex {v}"))
            })?;
            let mut rot = Vec::with_capacity(list.len());
            for e in list {
                let (a, b) = graph.endpoints(e);
                let d = if a == b {
                    let second = loop_seen[e];
                    loop_seen[e] = true;
                    2 * e + usize::from(second)
                } else if v == a {
                    2 * e
                } else if v == b {
                    2 * e + 1
                } else {
                    return Err(parse_err(
                        last_line,
                        format!("edge {e} listed at vertex {v} which it does not touch"),
                    ));
                };
                rot.push(d);
            }
            rotation.push(rot);
        }
        let mut emb = PlaneEmbedding::new(graph, rotation)?;
        if let Some((line, f)) = outer {
            emb.set_outer_face(f)
                .map_err(|e| parse_err(line, e.to_string()))?;
        }
        Ok(emb)
    }
}

pub fn dart_tail(g: &Graph, d: Dart) -> Vertex {
    let (a, b) = g.endpoints(dart_edge(d));
    if d.is_multiple_of(2) {
        a
    } else {
        b
    }
}

/// Dart of edge `e` leaving `v` (the even dart for self-loops).
pub fn dart_from(g: &Graph, e: EdgeId, v: Vertex) -> Dart {
    if g.endpoints(e).0 == v {
        2 * e
    } else {
        2 * e + 1
    }
}

pub fn min_rotation(cycle: &[Vertex]) -> Vec<Vertex> {
    let len = cycle.len();
    (0..len)
        .map(|s| (0..len).map(|i| cycle[(s + i) % len]).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Primal/dual correspondence. Dual vertex `f` is primal face `f` and dual
/// edge `e` crosses primal edge `e`, so both bijections are the identity on
/// ids.
#[derive(Clone, Debug)]
pub struct DualMap {
    pub dual: Graph,
    pub embedding: PlaneEmbedding,
    pub primal_outer_face: FaceId,
}

impl DualMap {
    pub fn face_of_dual_vertex(&self, v: Vertex) -> FaceId {
        v
    }

    pub fn edge_of_dual_edge(&self, e: EdgeId) -> EdgeId {
        e
    }
}
