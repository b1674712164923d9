//! Exhaustive search over total hole assignments.

use crate::decision::Decision;
use crate::embed::{FaceId, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::known_holes::{hole_edge_counts, recognize_known_holes, validate_assignment, HoleAssignment};
use crate::sat::reduction::{GadgetGraph, GadgetRole};

pub const DEFAULT_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub assignment: HoleAssignment,
    pub decision: Decision,
    /// Position of the assignment in enumeration order.
    pub counter: u64,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    /// Number of degree-2 vertices.
    pub k: usize,
    pub hit: Option<SearchHit>,
    /// Assignments that passed the face-count check and went to the
    /// recognizer.
    pub recognizer_calls: usize,
}

/// Tries total assignments of the degree-2 vertices in binary-counter order
/// and returns the first one the known-holes recognizer accepts.
///
/// Bit `i` of the counter places the `i`-th degree-2 vertex (by id) into
/// the higher-numbered of its two faces. Subtrees in which some face ends up
/// with one or two hole edges are skipped, which leaves the enumeration
/// order of the remaining assignments unchanged.
pub fn exhaustive_assignment_search(emb: &PlaneEmbedding, cap: usize) -> Result<SearchReport> {
    let deg = emb.graph().degree_profile();
    let vs: Vec<Vertex> = (0..deg.len()).filter(|&v| deg[v] == 2).collect();
    let k = vs.len();
    if k > cap {
        return Err(Error::CapExceeded { k, cap });
    }
    let sides: Vec<[FaceId; 2]> = vs
        .iter()
        .map(|&v| {
            let mut fs = emb.faces_around(v);
            fs.sort_unstable();
            [fs[0], *fs.last().unwrap()]
        })
        .collect();
    let mut count = vec![0usize; emb.face_count()];
    for (f, c) in hole_edge_counts(emb, &HoleAssignment::new()) {
        count[f] = c;
    }
    let mut open = vec![0usize; emb.face_count()];
    for s in &sides {
        open[s[0]] += 1;
        if s[1] != s[0] {
            open[s[1]] += 1;
        }
    }
    let mut st = State {
        emb,
        vs: &vs,
        sides: &sides,
        count,
        open,
        bits: vec![0; k],
        calls: 0,
    };
    let hit = st.descend(k);
    Ok(SearchReport {
        k,
        hit,
        recognizer_calls: st.calls,
    })
}

struct State<'a> {
    emb: &'a PlaneEmbedding,
    vs: &'a [Vertex],
    sides: &'a [[FaceId; 2]],
    count: Vec<usize>,
    open: Vec<usize>,
    bits: Vec<u8>,
    calls: usize,
}

impl State<'_> {
    /// Decides vertices `i-1, ..., 0`; the most significant bit goes first
    /// so the counter increases.
    fn descend(&mut self, i: usize) -> Option<SearchHit> {
        if i == 0 {
            return self.leaf();
        }
        let j = i - 1;
        let [a, b] = self.sides[j];
        for bit in 0..2u8 {
            if bit == 1 && a == b {
                break;
            }
            let f = self.sides[j][bit as usize];
            self.bits[j] = bit;
            self.count[f] += 1;
            self.open[a] -= 1;
            if b != a {
                self.open[b] -= 1;
            }
            let dead = [a, b]
                .iter()
                .any(|&g| self.open[g] == 0 && (1..3).contains(&self.count[g]));
            let found = if dead { None } else { self.descend(j) };
            self.count[f] -= 1;
            self.open[a] += 1;
            if b != a {
                self.open[b] += 1;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn leaf(&mut self) -> Option<SearchHit> {
        let mut h = HoleAssignment::new();
        let mut counter = 0u64;
        for (i, &v) in self.vs.iter().enumerate() {
            h.insert(v, self.sides[i][self.bits[i] as usize]);
            counter |= u64::from(self.bits[i]) << i;
        }
        self.calls += 1;
        let decision = recognize_known_holes(self.emb, &h);
        decision.is_yes().then_some(SearchHit {
            assignment: h,
            decision,
            counter,
        })
    }
}

/// Reads the truth assignment off an assignment of a gadget graph: a
/// variable is false iff its face has at least three hole edges. Variables
/// without a face are set true.
pub fn assignment_to_truth(gg: &GadgetGraph, h: &HoleAssignment) -> Result<Vec<bool>> {
    let bad = validate_assignment(&gg.gstar, h);
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "assignment is not valid: {}",
            bad.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
        )));
    }
    let counts = hole_edge_counts(&gg.gstar, h);
    Ok((0..gg.variables)
        .map(|k| {
            let face = gg
                .tags
                .iter()
                .position(|&t| t == GadgetRole::Variable(k));
            face.is_none_or(|f| counts.get(&f).copied().unwrap_or(0) < 3)
        })
        .collect())
}
