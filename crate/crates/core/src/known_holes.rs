//! Recognition of duals of polygons with holes when the hole side of every
//! degree-2 vertex is given.
//!
//! Removing a hole face from the dual of a triangulation merges the faces
//! of its vertices into one face of `G*`, and each triangle with a hole edge
//! drops to degree 2. Reconstruction reverses this: every face that receives
//! assigned vertices gets a new center vertex joined to them, which restores
//! a 3-regular dual whose own dual is the triangulation graph with the holes
//! as faces. That graph is then checked, a point at infinity is chosen and
//! the result is drawn.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use crate::decision::{Decision, Reason};
use crate::embed::{planarity_test, twin, Dart, FaceId, PlaneEmbedding};
use crate::error::{parse_err, Error, Result};
use crate::format::ContentLines;
use crate::graph::{parse_usizes, EdgeId, Graph, Vertex};
use crate::realize::realize_from_primal;
use crate::triangulation::Triangulation;

/// Hole side chosen for each low-degree vertex of `G*`, by face id of a
/// fixed embedding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HoleAssignment {
    map: BTreeMap<Vertex, FaceId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Empty,
    Partial,
    Total,
}

impl HoleAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Vertex, f: FaceId) {
        self.map.insert(v, f);
    }

    pub fn get(&self, v: Vertex) -> Option<FaceId> {
        self.map.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, FaceId)> + '_ {
        self.map.iter().map(|(&v, &f)| (v, f))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Coverage of the degree-2 vertices of `emb`.
    pub fn coverage(&self, emb: &PlaneEmbedding) -> Coverage {
        let deg = emb.graph().degree_profile();
        let two: Vec<Vertex> = (0..deg.len()).filter(|&v| deg[v] == 2).collect();
        let hit = two.iter().filter(|v| self.map.contains_key(v)).count();
        if hit == two.len() {
            Coverage::Total
        } else if hit == 0 {
            Coverage::Empty
        } else {
            Coverage::Partial
        }
    }

    /// One line per vertex: `u : v1 v2 ... vk` with the face written as its
    /// canonical boundary cycle.
    pub fn to_text(&self, emb: &PlaneEmbedding) -> String {
        let mut out = String::new();
        for (&v, &f) in &self.map {
            let _ = write!(out, "{v} :");
            for w in &emb.face(f).vertices {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, emb: &PlaneEmbedding) -> Result<HoleAssignment> {
        let mut h = HoleAssignment::new();
        for (line, toks) in ContentLines::new(text) {
            let joined = toks.join(" ");
            let (head, rest) = joined
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected `vertex : v1 v2 ... vk`"))?;
            let v = parse_usizes(line, &[head.trim()])?[0];
            let cyc = parse_usizes(line, &rest.split_whitespace().collect::<Vec<_>>())?;
            let f = emb
                .find_face_by_boundary(&cyc)
                .ok_or_else(|| parse_err(line, format!("no face with boundary {cyc:?}")))?;
            if h.map.insert(v, f).is_some() {
                return Err(parse_err(line, format!("vertex {v} assigned twice")));
            }
        }
        Ok(h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Unassigned { vertex: Vertex },
    NotLowDegree { vertex: Vertex, degree: usize },
    NotIncident { vertex: Vertex, face: FaceId },
    FaceCount { face: FaceId, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unassigned { vertex } => write!(f, "degree-2 vertex {vertex} is unassigned"),
            Violation::NotLowDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} and cannot be assigned")
            }
            Violation::NotIncident { vertex, face } => {
                write!(f, "vertex {vertex} is not on face {face}")
            }
            Violation::FaceCount { face, count } => {
                write!(f, "face {face} with {count} < 3 assigned")
            }
        }
    }
}

/// Hole edges each face receives: one per assigned degree-2 vertex and two
/// per degree-1 vertex (whose only face is implicitly its hole side).
pub fn hole_edge_counts(emb: &PlaneEmbedding, h: &HoleAssignment) -> BTreeMap<FaceId, usize> {
    let deg = emb.graph().degree_profile();
    let mut count = BTreeMap::new();
    for (v, f) in h.iter() {
        if deg.get(v) == Some(&2) {
            *count.entry(f).or_insert(0) += 1;
        }
    }
    for v in 0..deg.len() {
        if deg[v] == 1 {
            *count.entry(emb.face_of_dart(emb.rotation(v)[0])).or_insert(0) += 2;
        }
    }
    count
}

/// Checks that the assignment is total, only names incident faces, and
/// gives every face zero or at least three hole edges.
pub fn validate_assignment(emb: &PlaneEmbedding, h: &HoleAssignment) -> Vec<Violation> {
    let mut out = Vec::new();
    let deg = emb.graph().degree_profile();
    for (v, f) in h.iter() {
        if v >= deg.len() || deg[v] > 2 {
            out.push(Violation::NotLowDegree {
                vertex: v,
                degree: deg.get(v).copied().unwrap_or(0),
            });
        } else if f >= emb.face_count() || !emb.faces_around(v).contains(&f) {
            out.push(Violation::NotIncident { vertex: v, face: f });
        }
    }
    for v in 0..deg.len() {
        if deg[v] == 2 && h.get(v).is_none() {
            out.push(Violation::Unassigned { vertex: v });
        }
    }
    if out.is_empty() {
        for (f, c) in hole_edge_counts(emb, h) {
            if c < 3 {
                out.push(Violation::FaceCount { face: f, count: c });
            }
        }
    }
    out
}

/// True when some vertex has degree at most 2, the signal that holes exist.
pub fn holes_necessity_check(gstar: &Graph) -> bool {
    gstar.degree_profile().iter().any(|&d| d <= 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub edge: EdgeId,
    /// Index into [`CutTree::components`] of the side split off.
    pub child: usize,
    pub parent: usize,
    /// Face of `G*` containing the cut edge (both of its sides).
    pub containing_face: FaceId,
}

/// Decomposition of `G*` along its one-edge cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTree {
    /// Vertex sets of the bridge-free parts, in processing order; the part
    /// holding vertex 0 comes last.
    pub components: Vec<Vec<Vertex>>,
    pub cuts: Vec<Cut>,
}

/// Splits `G*` at its bridges, repeatedly taking the smallest-id bridge that
/// cuts off a part with no other remaining bridge.
pub fn decompose_one_edge_cuts(emb: &PlaneEmbedding) -> Result<CutTree> {
    let g = emb.graph();
    let bridges = g.find_bridges()?;
    let bridge_set: BTreeSet<EdgeId> = bridges.iter().copied().collect();
    let mut rest = Graph::new(g.vertex_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !bridge_set.contains(&e) {
            rest.add_edge(u, v);
        }
    }
    let label = rest.components();
    let parts = label.iter().copied().max().map_or(0, |m| m + 1);
    let root = label[0];
    let mut remaining: BTreeSet<EdgeId> = bridge_set;
    let mut bridge_degree = vec![0usize; parts];
    for &e in &remaining {
        let (u, v) = g.endpoints(e);
        bridge_degree[label[u]] += 1;
        bridge_degree[label[v]] += 1;
    }
    let mut order = Vec::new();
    let mut raw_cuts = Vec::new();
    while !remaining.is_empty() {
        let (e, child, parent) = remaining
            .iter()
            .find_map(|&e| {
                let (u, v) = g.endpoints(e);
                let (a, b) = (label[u], label[v]);
                if a != root && bridge_degree[a] == 1 {
                    Some((e, a, b))
                } else if b != root && bridge_degree[b] == 1 {
                    Some((e, b, a))
                } else {
                    None
                }
            })
            .expect("a tree with an edge has a non-root leaf");
        remaining.remove(&e);
        bridge_degree[child] -= 1;
        bridge_degree[parent] -= 1;
        order.push(child);
        raw_cuts.push((e, child, parent));
    }
    order.push(root);
    let mut index = vec![0; parts];
    for (i, &c) in order.iter().enumerate() {
        index[c] = i;
    }
    let mut components = vec![Vec::new(); order.len()];
    for (v, &c) in label.iter().enumerate() {
        components[index[c]].push(v);
    }
    let cuts = raw_cuts
        .into_iter()
        .map(|(e, child, parent)| Cut {
            edge: e,
            child: index[child],
            parent: index[parent],
            containing_face: emb.face_of_dart(2 * e),
        })
        .collect();
    Ok(CutTree { components, cuts })
}

/// Embeds a bare graph for the known-holes recognizer, preferring as outer
/// face the first longest face whose vertices all have degree 3.
pub fn embed_dual(gstar: &Graph) -> Result<PlaneEmbedding> {
    let mut emb = planarity_test(gstar)?;
    let deg = gstar.degree_profile();
    let best = emb
        .faces()
        .iter()
        .filter(|f| f.vertices.iter().all(|&v| deg[v] == 3))
        .max_by_key(|f| (f.len(), std::cmp::Reverse(f.id)))
        .map(|f| f.id);
    if let Some(f) = best {
        emb.set_outer_face(f)?;
    }
    Ok(emb)
}

/// Options for [`recognize_known_holes_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct KnownHolesOptions {
    pub require_empty_interior: bool,
}

pub fn recognize_known_holes(emb: &PlaneEmbedding, h: &HoleAssignment) -> Decision {
    recognize_known_holes_with(emb, h, KnownHolesOptions::default())
}

pub fn recognize_known_holes_with(
    emb: &PlaneEmbedding,
    h: &HoleAssignment,
    opts: KnownHolesOptions,
) -> Decision {
    match screen(emb, h) {
        Err(r) => Decision::no(r),
        Ok(choices) => reconstruct_and_realize(emb, &choices, opts),
    }
}

/// Hole-side sectors. A sector is named by the dart it follows clockwise.
struct SectorChoices {
    /// (vertex, hole face, candidate sectors) per assigned vertex.
    options: Vec<(Vertex, FaceId, Vec<Dart>)>,
}

/// Combinatorial checks done before any reconstruction.
fn screen(emb: &PlaneEmbedding, h: &HoleAssignment) -> std::result::Result<SectorChoices, Reason> {
    let g = emb.graph();
    let deg = g.degree_profile();
    if let Some(v) = (0..deg.len()).find(|&v| deg[v] == 0 || deg[v] > 3) {
        return Err(Reason::BadDegree {
            vertex: v,
            degree: deg[v],
        });
    }
    if g.vertex_count() < 2 {
        return Err(Reason::TooSmall);
    }
    let violations = validate_assignment(emb, h);
    if !violations.is_empty() {
        return Err(Reason::InvalidAssignment(
            violations.iter().map(ToString::to_string).collect(),
        ));
    }
    let outer = emb.face(emb.outer_face());
    if let Some(&v) = outer.vertices.iter().find(|&&v| deg[v] <= 2) {
        return Err(Reason::LowDegreeOnOuterFace { vertex: v });
    }
    let counts = hole_edge_counts(emb, h);
    let tree = decompose_one_edge_cuts(emb).map_err(|_| Reason::NotConnected)?;
    for cut in &tree.cuts {
        if counts.get(&cut.containing_face).copied().unwrap_or(0) < 3 {
            return Err(Reason::CutOutsideHole { edge: cut.edge });
        }
    }
    let mut options = Vec::new();
    for v in 0..deg.len() {
        match deg[v] {
            1 => {
                let d = emb.rotation(v)[0];
                options.push((v, emb.face_of_dart(d), vec![d]));
            }
            2 => {
                let f = h.get(v).expect("validated total");
                let rot = emb.rotation(v);
                // the sector after rot[i] belongs to the face of the next dart
                let sectors: Vec<Dart> = (0..2)
                    .filter(|&i| emb.face_of_dart(rot[1 - i]) == f)
                    .map(|i| rot[i])
                    .collect();
                options.push((v, f, sectors));
            }
            _ => {}
        }
    }
    Ok(SectorChoices { options })
}

/// At most this many ambiguous sector combinations are tried.
const MAX_SECTOR_COMBINATIONS: usize = 256;

fn reconstruct_and_realize(
    emb: &PlaneEmbedding,
    choices: &SectorChoices,
    opts: KnownHolesOptions,
) -> Decision {
    let ambiguous: Vec<usize> = choices
        .options
        .iter()
        .enumerate()
        .filter(|(_, o)| o.2.len() > 1)
        .map(|(i, _)| i)
        .collect();
    let combos = 1usize.checked_shl(ambiguous.len() as u32).unwrap_or(usize::MAX);
    if combos > MAX_SECTOR_COMBINATIONS {
        return Decision::no(Reason::Reconstruction(format!(
            "{} vertices have both sides in their hole face",
            ambiguous.len()
        )));
    }
    let mut last = Reason::Reconstruction("no reconstruction attempted".to_string());
    for mask in 0..combos {
        let picks: Vec<(Vertex, FaceId, Dart)> = choices
            .options
            .iter()
            .enumerate()
            .map(|(i, (v, f, sectors))| {
                let k = ambiguous.iter().position(|&a| a == i).map_or(0, |bit| (mask >> bit) & 1);
                (*v, *f, sectors[k])
            })
            .collect();
        match attempt(emb, &picks, opts) {
            Ok(d) => return d,
            Err(r) => last = r,
        }
    }
    Decision::no(last)
}

/// The primal plane graph rebuilt from `G*` and chosen hole sectors.
pub struct Reconstruction {
    pub primal: PlaneEmbedding,
    /// Primal faces that are holes.
    pub holes: Vec<FaceId>,
    /// Primal vertex standing for the outer face of `G*`.
    pub outer_vertex: Vertex,
    /// Primal face of each `G*` vertex.
    pub face_of: Vec<FaceId>,
}

/// Inserts a center per hole face, joined to its assigned vertices inside
/// the chosen sectors, and dualizes the result.
fn reconstruct(
    emb: &PlaneEmbedding,
    picks: &[(Vertex, FaceId, Dart)],
) -> std::result::Result<Reconstruction, Reason> {
    let g = emb.graph();
    let n = g.vertex_count();
    let m = g.edge_count();
    let hole_faces: BTreeSet<FaceId> = picks.iter().map(|p| p.1).collect();
    let center: BTreeMap<FaceId, Vertex> = hole_faces
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, n + i))
        .collect();
    let mut aug = Graph::new(n + hole_faces.len());
    for &(u, v) in g.edges() {
        aug.add_edge(u, v);
    }
    let mut rotation: Vec<Vec<Dart>> = emb.rotations().to_vec();
    rotation.resize(n + hole_faces.len(), Vec::new());
    // spokes per (vertex, sector dart), two for degree-1 vertices
    let mut spokes_at: BTreeMap<(Vertex, Dart), Vec<Dart>> = BTreeMap::new();
    for &(v, f, after) in picks {
        let c = center[&f];
        let copies = if g.degree_profile()[v] == 1 { 2 } else { 1 };
        let mut darts = Vec::new();
        for _ in 0..copies {
            let e = aug.add_edge(v, c);
            darts.push(2 * e);
        }
        let pos = rotation[v].iter().position(|&d| d == after).unwrap();
        for (k, &d) in darts.iter().enumerate() {
            rotation[v].insert(pos + 1 + k, d);
        }
        spokes_at.insert((v, after), darts);
    }
    // center rotation: spokes in reverse order of the face walk
    for (&f, &c) in &center {
        let walk = &emb.face(f).darts;
        let len = walk.len();
        let mut order = Vec::new();
        for i in 0..len {
            let incoming = walk[(i + len - 1) % len];
            let v = emb.tail(walk[i]);
            if let Some(ds) = spokes_at.get(&(v, twin(incoming))) {
                order.extend(ds.iter().map(|&d| twin(d)));
            }
        }
        order.reverse();
        rotation[c] = order;
    }
    debug_assert!(aug.edge_count() >= m);
    let d = PlaneEmbedding::new(aug, rotation)
        .map_err(|e| Reason::Reconstruction(format!("augmented dual is not plane: {e}")))?;
    let outer_dart = emb.face(emb.outer_face()).darts[0];
    let outer_vertex = d.face_of_dart(outer_dart);
    let primal = d.dualize().embedding;
    let holes = center
        .values()
        .map(|&c| face_around(&primal, &d, c))
        .collect();
    if !primal.graph().is_simple() {
        return Err(Reason::Reconstruction(
            "reconstructed triangulation graph has a loop or parallel edges".to_string(),
        ));
    }
    let face_of = (0..n).map(|u| face_around(&primal, &d, u)).collect();
    Ok(Reconstruction {
        primal,
        holes,
        outer_vertex,
        face_of,
    })
}

/// Face of `dual` made of the edges crossing the edges at `v` in `primal`
/// (edge ids are shared between the two).
fn face_around(dual: &PlaneEmbedding, primal: &PlaneEmbedding, v: Vertex) -> FaceId {
    let at_v: BTreeSet<EdgeId> = primal.rotation(v).iter().map(|&d| d / 2).collect();
    let e = *at_v.iter().next().expect("vertex has an edge");
    [2 * e, 2 * e + 1]
        .into_iter()
        .map(|x| dual.face_of_dart(x))
        .find(|&f| dual.face(f).darts.iter().all(|x| at_v.contains(&(x / 2))))
        .expect("dual face around a vertex")
}

fn attempt(
    emb: &PlaneEmbedding,
    picks: &[(Vertex, FaceId, Dart)],
    opts: KnownHolesOptions,
) -> std::result::Result<Decision, Reason> {
    let rec = reconstruct(emb, picks)?;
    let p = &rec.primal;
    let hole_vertices: BTreeSet<Vertex> = rec
        .holes
        .iter()
        .flat_map(|&f| p.face(f).vertices.iter().copied())
        .collect();
    for &f in &rec.holes {
        let cyc = &p.face(f).vertices;
        if cyc.iter().collect::<BTreeSet<_>>().len() != cyc.len() {
            return Err(Reason::Reconstruction(format!("hole {f} is not a simple cycle")));
        }
    }
    // outer triangle: the lowest-id triangle at the outer-face vertex
    let outer_triangle = p
        .faces_around(rec.outer_vertex)
        .into_iter()
        .filter(|f| !rec.holes.contains(f))
        .min()
        .ok_or_else(|| Reason::Reconstruction("outer vertex lies only on holes".to_string()))?;
    let mut candidates = p.face(outer_triangle).vertices.clone();
    candidates.sort_unstable();

    let mut failures = Vec::new();
    let mut witness: Option<Triangulation> = None;
    if !opts.require_empty_interior {
        for &v in &candidates {
            if hole_vertices.contains(&v) {
                failures.push(format!("{v}: hole vertex"));
                continue;
            }
            match realize_from_primal(p, v, &rec.holes) {
                Ok(t) => {
                    witness = Some(t);
                    break;
                }
                Err(e) => failures.push(format!("{v}: {e}")),
            }
        }
        if witness.is_none() {
            return Err(Reason::NoValidInfinity(failures.join("; ")));
        }
    }
    let needs_points = witness.as_ref().is_none_or(|t| !t.interior_points().is_empty());
    if needs_points {
        // a point at infinity adjacent to every other non-hole vertex leaves
        // no interior points
        let adj = p.graph().simple_adjacency();
        let non_hole: Vec<Vertex> = (0..p.vertex_count())
            .filter(|v| !hole_vertices.contains(v))
            .collect();
        for &v in &non_hole {
            let all = non_hole.iter().all(|&w| w == v || adj[v].binary_search(&w).is_ok());
            let touches_hole = adj[v].iter().any(|w| hole_vertices.contains(w));
            if !all || touches_hole {
                continue;
            }
            if let Ok(t) = realize_from_primal(p, v, &rec.holes) {
                witness = Some(t);
                break;
            }
        }
    }
    match witness {
        Some(t) => {
            let interior = !t.interior_points().is_empty();
            if interior && opts.require_empty_interior {
                return Err(Reason::InteriorPointsRequired);
            }
            Ok(Decision::yes(t, interior))
        }
        None => Err(Reason::InteriorPointsRequired),
    }
}

/// Reconstruction without drawing, for callers that need the primal
/// structure (the geometric check).
pub fn reconstruct_primal(emb: &PlaneEmbedding, h: &HoleAssignment) -> Result<Reconstruction> {
    let choices = screen(emb, h).map_err(|r| Error::Precondition(r.to_string()))?;
    let picks: Vec<(Vertex, FaceId, Dart)> = choices
        .options
        .iter()
        .map(|(v, f, s)| (*v, *f, s[0]))
        .collect();
    reconstruct(emb, &picks).map_err(|r| Error::Precondition(r.to_string()))
}
