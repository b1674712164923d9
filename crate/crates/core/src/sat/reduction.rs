//! From planar 3-CNF formulas to gadget graphs.
//!
//! A formula first becomes a plane multigraph `H` whose nodes are variables,
//! clauses, splitters, absorbers and fillers and whose links carry ports.
//! `H` is then triangulated by stellating each face through a ring of filler
//! nodes, and the gadget graph is the dual of that triangulation with every
//! port inserted as a degree-2 vertex on the edge shared by the two faces of
//! its link. Several ports on one link sit in series on the same edge.
//!
//! A port belongs to its consumer exactly when its producer is not a hole.
//! Variable, splitter and absorber faces have three ports or more, clause
//! faces two forced ports plus their literals, and fillers at most two, so
//! a valid assignment makes each clause a hole iff one of its literals holds.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use crate::embed::embedding::dart_from;
use crate::embed::{dart_edge, is_planar, planarity_test, Dart, FaceId, PlaneEmbedding};
use crate::error::{parse_err, Error, Result};
use crate::format::ContentLines;
use crate::graph::{parse_usizes, EdgeId, Graph, Vertex};
use crate::known_holes::HoleAssignment;
use crate::sat::formula::{Formula, Literal};

/// Cyclic neighbor order of every vertex of a formula's incidence graph.
#[derive(Clone, Debug)]
pub struct IncidenceEmbedding {
    pub graph: Graph,
    pub order: Vec<Vec<Vertex>>,
}

/// Embeds the variable–clause incidence graph component by component, or
/// fails with [`Error::NonPlanar`].
pub fn check_planar_formula(f: &Formula) -> Result<IncidenceEmbedding> {
    let graph = f.incidence_graph();
    let n = graph.vertex_count();
    let labels = graph.components();
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut order = vec![Vec::new(); n];
    for c in 0..count {
        let keep: Vec<Vertex> = (0..n).filter(|&v| labels[v] == c).collect();
        let (sub, map) = graph.induced(&keep);
        if sub.edge_count() == 0 {
            continue;
        }
        let emb = planarity_test(&sub)?;
        for (i, &v) in map.iter().enumerate() {
            order[v] = emb.rotation(i).iter().map(|&d| map[emb.head(d)]).collect();
        }
    }
    Ok(IncidenceEmbedding { graph, order })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetRole {
    Variable(usize),
    Clause(usize),
    Splitter { variable: usize },
    Absorber,
    Filler,
}

impl fmt::Display for GadgetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetRole::Variable(k) => write!(f, "variable {}", k + 1),
            GadgetRole::Clause(i) => write!(f, "clause {}", i + 1),
            GadgetRole::Splitter { variable } => write!(f, "splitter {}", variable + 1),
            GadgetRole::Absorber => write!(f, "absorber"),
            GadgetRole::Filler => write!(f, "filler"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortRole {
    /// Variable face into a splitter.
    VariableOutput,
    /// Splitter into a splitter.
    NegatedCopy,
    /// Literal port into a clause, from a variable or a splitter.
    ClauseInput { clause: usize, literal: Literal },
    /// Forced clause port from the clause's filler.
    BuiltIn,
    /// Unused output into an absorber.
    Absorbed,
    /// Forced absorber port from a filler.
    Forced,
}

impl fmt::Display for PortRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortRole::VariableOutput => write!(f, "variable_output"),
            PortRole::NegatedCopy => write!(f, "negated_copy"),
            PortRole::ClauseInput { clause, literal } => {
                write!(f, "clause_input {} {}", clause + 1, literal.to_dimacs())
            }
            PortRole::BuiltIn => write!(f, "built_in"),
            PortRole::Absorbed => write!(f, "absorbed"),
            PortRole::Forced => write!(f, "forced"),
        }
    }
}

/// Where unused outputs of variables and splitters go.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AbsorberPolicy {
    /// Add them in series to a literal port of the same producer when it has
    /// one; otherwise into an absorber.
    #[default]
    Fold,
    /// Always into an absorber.
    Attach,
}

/// An edge of `H` with the ports it carries, in series order. Links without
/// ports only keep `H` connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub producer: Vertex,
    pub consumer: Vertex,
    pub ports: Vec<PortRole>,
}

/// The plane multigraph `H` after degree normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedGraph {
    pub variables: usize,
    pub clauses: usize,
    pub nodes: Vec<GadgetRole>,
    /// Link `i` is edge `i` of [`NormalizedGraph::graph`].
    pub links: Vec<Link>,
}

impl NormalizedGraph {
    /// Underlying simple graph, one edge per link.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.nodes.len());
        for l in &self.links {
            g.add_edge(l.producer, l.consumer);
        }
        g
    }

    /// Ports at node `v`, counting every series port.
    pub fn degree(&self, v: Vertex) -> usize {
        self.links
            .iter()
            .filter(|l| l.producer == v || l.consumer == v)
            .map(|l| l.ports.len())
            .sum()
    }

    pub fn port_count(&self) -> usize {
        self.links.iter().map(|l| l.ports.len()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Demand {
    clause: usize,
    literal: Literal,
}

#[derive(Clone, Debug)]
enum Route {
    Direct(Demand),
    Split(Plan),
}

#[derive(Clone, Debug)]
struct Plan {
    outputs: Vec<Route>,
    spares: usize,
}

/// Charge for spare outputs that need an absorber, about the forced ports
/// an absorber costs.
const ABSORBER_CHARGE: usize = 3;

type Memo = HashMap<(bool, Vec<Demand>), (usize, Plan)>;

/// Cheapest routing of `ds` through a producer with `slots` outputs whose
/// outputs are active iff the variable equals `carries`. The root may group
/// its cyclic demand list freely; a splitter splits its group in two.
fn best_plan(
    carries: bool,
    slots: usize,
    ds: &[Demand],
    root: bool,
    policy: AbsorberPolicy,
    memo: &mut Memo,
) -> (usize, Plan) {
    if !root {
        if let Some(hit) = memo.get(&(carries, ds.to_vec())) {
            return hit.clone();
        }
    }
    let mut best: Option<(usize, Plan)> = None;
    let rotations = if root { ds.len() } else { 1 };
    for r in 0..rotations {
        let rotated: Vec<Demand> = ds[r..].iter().chain(&ds[..r]).copied().collect();
        let counts: Vec<usize> = if root {
            (1..=slots.min(ds.len())).collect()
        } else {
            vec![ds.len().min(slots)]
        };
        for g in counts {
            for cuts in compositions(rotated.len(), g) {
                let mut cost = slots;
                let mut outputs = Vec::with_capacity(g);
                for w in cuts.windows(2) {
                    let part = &rotated[w[0]..w[1]];
                    if part.len() == 1 && part[0].literal.negated != carries {
                        outputs.push(Route::Direct(part[0]));
                    } else {
                        let (c, p) = best_plan(!carries, 2, part, false, policy, memo);
                        cost += c;
                        outputs.push(Route::Split(p));
                    }
                }
                let spares = slots - g;
                let direct = outputs.iter().any(|o| matches!(o, Route::Direct(_)));
                if spares > 0 && (policy == AbsorberPolicy::Attach || !direct) {
                    cost += ABSORBER_CHARGE;
                }
                if best.as_ref().is_none_or(|b| cost < b.0) {
                    best = Some((cost, Plan { outputs, spares }));
                }
            }
        }
    }
    let best = best.expect("a nonempty demand list has a routing");
    if !root {
        memo.insert((carries, ds.to_vec()), best.clone());
    }
    best
}

/// Cut positions `0 = c0 < c1 < ... < cg = n` splitting `n` items into `g`
/// nonempty consecutive parts.
fn compositions(n: usize, g: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in start + 1..=n - (left - 1) {
            cur.push(c);
            rec(c, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if g >= 1 && g <= n {
        rec(0, n, g, &mut vec![0], &mut out);
    }
    out
}

/// Concatenations of `blocks` with each block in every internal order.
fn block_orders(blocks: &[Vec<Demand>]) -> Vec<Vec<Demand>> {
    fn perms(items: &[Demand]) -> Vec<Vec<Demand>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let mut out = vec![Vec::new()];
    for b in blocks {
        let ps = perms(b);
        out = out
            .iter()
            .flat_map(|prefix| {
                ps.iter().map(move |p| {
                    let mut v: Vec<Demand> = prefix.clone();
                    v.extend(p);
                    v
                })
            })
            .collect();
    }
    out
}

struct Stub {
    producer: Vertex,
    count: usize,
    variable: usize,
    carries: bool,
}

#[derive(Default)]
struct Builder {
    nodes: Vec<GadgetRole>,
    links: Vec<Link>,
    index: BTreeMap<(Vertex, Vertex), usize>,
    stubs: Vec<Stub>,
}

impl Builder {
    fn node(&mut self, role: GadgetRole) -> Vertex {
        self.nodes.push(role);
        self.nodes.len() - 1
    }

    fn port(&mut self, producer: Vertex, consumer: Vertex, role: PortRole) {
        let i = *self.index.entry((producer, consumer)).or_insert_with(|| {
            self.links.push(Link {
                producer,
                consumer,
                ports: Vec::new(),
            });
            self.links.len() - 1
        });
        self.links[i].ports.push(role);
    }

    fn emit(
        &mut self,
        node: Vertex,
        variable: usize,
        carries: bool,
        plan: &Plan,
        policy: AbsorberPolicy,
        clause_node: &[Vertex],
    ) {
        let mut first_direct = None;
        for out in &plan.outputs {
            match out {
                Route::Direct(d) => {
                    let role = PortRole::ClauseInput {
                        clause: d.clause,
                        literal: d.literal,
                    };
                    self.port(node, clause_node[d.clause], role);
                    first_direct.get_or_insert(*d);
                }
                Route::Split(p) => {
                    let s = self.node(GadgetRole::Splitter { variable });
                    let role = match self.nodes[node] {
                        GadgetRole::Variable(_) => PortRole::VariableOutput,
                        _ => PortRole::NegatedCopy,
                    };
                    self.port(node, s, role);
                    self.emit(s, variable, !carries, p, policy, clause_node);
                }
            }
        }
        if plan.spares == 0 {
            return;
        }
        match (policy, first_direct) {
            (AbsorberPolicy::Fold, Some(d)) => {
                for _ in 0..plan.spares {
                    let role = PortRole::ClauseInput {
                        clause: d.clause,
                        literal: d.literal,
                    };
                    self.port(node, clause_node[d.clause], role);
                }
            }
            _ => self.stubs.push(Stub {
                producer: node,
                count: plan.spares,
                variable,
                carries,
            }),
        }
    }

    fn simple_graph(&self, extra: &[(Vertex, Vertex)], extra_nodes: usize) -> Graph {
        let mut g = Graph::new(self.nodes.len() + extra_nodes);
        for l in &self.links {
            g.add_edge(l.producer, l.consumer);
        }
        for &(a, b) in extra {
            g.add_edge(a, b);
        }
        g
    }
}

/// Builds `H`: every variable and splitter node gets exactly three ports,
/// every clause one port per distinct literal (plus folded spares) and two
/// forced ports from its filler. Occurrences are routed in the cyclic order
/// of the incidence embedding; a splitter negates, so the number of
/// splitters between a variable and a literal port is odd iff the literal is
/// negated. Variables that occur nowhere get no node.
pub fn normalize_degrees(
    f: &Formula,
    inc: &IncidenceEmbedding,
    policy: AbsorberPolicy,
) -> Result<NormalizedGraph> {
    let n = f.variables;
    if inc.order.len() != n + f.clauses.len() {
        return Err(Error::Precondition(
            "incidence embedding does not match the formula".to_string(),
        ));
    }
    let mut b = Builder::default();
    let used = f.used_variables();
    let var_node: Vec<Option<Vertex>> = (0..n)
        .map(|k| used[k].then(|| b.node(GadgetRole::Variable(k))))
        .collect();
    let clause_node: Vec<Vertex> = (0..f.clauses.len())
        .map(|i| b.node(GadgetRole::Clause(i)))
        .collect();

    let mut memo = Memo::new();
    for k in 0..n {
        let Some(v) = var_node[k] else { continue };
        // a literal repeated within one clause needs only one active port;
        // occurrences in one clause may be routed in any order
        let blocks: Vec<Vec<Demand>> = inc.order[k]
            .iter()
            .map(|&c| {
                let i = c - n;
                let mut ds: Vec<Demand> = f.clauses[i]
                    .iter()
                    .filter(|l| l.var == k)
                    .map(|&literal| Demand { clause: i, literal })
                    .collect();
                ds.sort_by_key(|d| d.literal.negated);
                ds.dedup();
                ds
            })
            .collect();
        let mut best: Option<(usize, Plan)> = None;
        for demands in block_orders(&blocks) {
            let (cost, plan) = best_plan(true, 3, &demands, true, policy, &mut memo);
            if best.as_ref().is_none_or(|b| cost < b.0) {
                best = Some((cost, plan));
            }
        }
        let (_, plan) = best.expect("a used variable has an occurrence");
        b.emit(v, k, true, &plan, policy, &clause_node);
    }

    for &c in &clause_node {
        let filler = b.node(GadgetRole::Filler);
        b.port(filler, c, PortRole::BuiltIn);
        b.port(filler, c, PortRole::BuiltIn);
    }

    // share absorbers while the result stays planar
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..b.stubs.len() {
        let mut placed = false;
        for gi in 0..groups.len() {
            let mut trial = groups.clone();
            trial[gi].push(j);
            if absorbers_planar(&b, &trial) {
                groups = trial;
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![j]);
        }
    }
    for group in &groups {
        let a = b.node(GadgetRole::Absorber);
        // ports guaranteed to arrive whatever the variables are
        let mut per_var: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for &j in group {
            let s = &b.stubs[j];
            let e = per_var.entry(s.variable).or_default();
            if s.carries {
                e.0 += s.count;
            } else {
                e.1 += s.count;
            }
        }
        let guaranteed: usize = per_var.values().map(|&(t, f)| t.min(f)).sum();
        let stubs: Vec<(Vertex, usize)> = group
            .iter()
            .map(|&j| (b.stubs[j].producer, b.stubs[j].count))
            .collect();
        for (p, count) in stubs {
            for _ in 0..count {
                b.port(p, a, PortRole::Absorbed);
            }
        }
        let mut forced = 3usize.saturating_sub(guaranteed);
        while forced > 0 {
            let filler = b.node(GadgetRole::Filler);
            for _ in 0..forced.min(2) {
                b.port(filler, a, PortRole::Forced);
            }
            forced -= forced.min(2);
        }
    }

    // chain the components through filler nodes
    let g = b.simple_graph(&[], 0);
    let labels = g.components();
    let mut reps: Vec<Vertex> = Vec::new();
    let mut seen = BTreeMap::new();
    for v in 0..g.vertex_count() {
        if b.nodes[v] == GadgetRole::Filler {
            seen.entry(labels[v]).or_insert_with(|| {
                reps.push(v);
            });
        }
    }
    for w in reps.windows(2) {
        b.links.push(Link {
            producer: w[0],
            consumer: w[1],
            ports: Vec::new(),
        });
    }

    let h = NormalizedGraph {
        variables: n,
        clauses: f.clauses.len(),
        nodes: b.nodes,
        links: b.links,
    };
    if !h.graph().is_connected() {
        return Err(Error::Precondition("normalized graph is disconnected".to_string()));
    }
    Ok(h)
}

fn absorbers_planar(b: &Builder, groups: &[Vec<usize>]) -> bool {
    let base = b.nodes.len();
    let mut extra = Vec::new();
    for (gi, group) in groups.iter().enumerate() {
        for &j in group {
            extra.push((b.stubs[j].producer, base + gi));
        }
    }
    is_planar(&b.simple_graph(&extra, groups.len()))
}

/// A degree-2 vertex of the gadget graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub vertex: Vertex,
    pub producer: FaceId,
    pub consumer: FaceId,
    pub role: PortRole,
}

#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub variables: usize,
    pub clauses: usize,
    pub gstar: PlaneEmbedding,
    /// Role of every face.
    pub tags: Vec<GadgetRole>,
    pub ports: Vec<Port>,
}

/// Triangulates `H` and dualizes. Each face of `H` with boundary walk
/// `w_0 .. w_{L-1}` receives filler nodes `r_0 .. r_{L-1}` and a center,
/// `r_i` joined to `w_i`, `w_{i+1}`, `r_{i+1}` and the center. The center of
/// the longest face becomes the outer face of the gadget graph.
pub fn build_gadget_graph(h: &NormalizedGraph) -> Result<GadgetGraph> {
    let m = h.links.len();
    let gh = h.graph();
    if !gh.is_simple() {
        return Err(Error::Precondition("links must join distinct node pairs".to_string()));
    }
    let emb = planarity_test(&gh)?;
    let outer = emb
        .faces()
        .iter()
        .max_by_key(|f| (f.len(), Reverse(f.id)))
        .map(|f| f.id)
        .expect("an embedding has a face");
    let mut hp = gh.clone();
    let mut center = 0;
    for f in emb.faces() {
        let l = f.len();
        if l < 3 {
            return Err(Error::Precondition("normalized graph has a face of length 2".to_string()));
        }
        let ring: Vec<Vertex> = (0..l).map(|_| hp.add_vertex()).collect();
        let c = hp.add_vertex();
        if f.id == outer {
            center = c;
        }
        for i in 0..l {
            let next = (i + 1) % l;
            hp.add_edge(ring[i], f.vertices[i]);
            hp.add_edge(ring[i], f.vertices[next]);
            hp.add_edge(ring[i], ring[next]);
            hp.add_edge(c, ring[i]);
        }
    }
    let tri = planarity_test(&hp)?;
    let cubic = tri.dualize().embedding;

    // face of the cubic dual around each node of the triangulation
    let by_edges: BTreeMap<Vec<EdgeId>, FaceId> = cubic
        .faces()
        .iter()
        .map(|f| {
            let mut es: Vec<EdgeId> = f.darts.iter().map(|&d| dart_edge(d)).collect();
            es.sort_unstable();
            (es, f.id)
        })
        .collect();
    let cubic_face: Vec<FaceId> = hp
        .incidence()
        .iter()
        .map(|inc| {
            let mut es: Vec<EdgeId> = inc.iter().map(|&(_, e)| e).collect();
            es.sort_unstable();
            by_edges[&es]
        })
        .collect();

    // subdivide the dual edges crossing links
    let cg = cubic.graph();
    let mut g = Graph::new(cg.vertex_count());
    let mut from_first = vec![0; cg.edge_count()];
    let mut from_second = vec![0; cg.edge_count()];
    let mut chain: Vec<Vec<Vertex>> = vec![Vec::new(); cg.edge_count()];
    let mut port_rot: Vec<(Vertex, [Dart; 2])> = Vec::new();
    for e in 0..cg.edge_count() {
        let (a, b) = cg.endpoints(e);
        let k = if e < m { h.links[e].ports.len() } else { 0 };
        let ps: Vec<Vertex> = (0..k).map(|_| g.add_vertex()).collect();
        let mut stops = vec![a];
        stops.extend(&ps);
        stops.push(b);
        let ids: Vec<EdgeId> = stops.windows(2).map(|w| g.add_edge(w[0], w[1])).collect();
        from_first[e] = dart_from(&g, ids[0], a);
        from_second[e] = dart_from(&g, ids[k], b);
        for (i, &p) in ps.iter().enumerate() {
            port_rot.push((p, [dart_from(&g, ids[i], p), dart_from(&g, ids[i + 1], p)]));
        }
        chain[e] = ps;
    }
    let map_dart = |d: Dart| {
        if d.is_multiple_of(2) {
            from_first[d / 2]
        } else {
            from_second[d / 2]
        }
    };
    let mut rotation: Vec<Vec<Dart>> = (0..cg.vertex_count())
        .map(|v| cubic.rotation(v).iter().map(|&d| map_dart(d)).collect())
        .collect();
    rotation.resize(g.vertex_count(), Vec::new());
    for (p, r) in port_rot {
        rotation[p] = r.to_vec();
    }
    let gstar = PlaneEmbedding::new(g, rotation)?;
    let face_of: Vec<FaceId> = cubic_face
        .iter()
        .map(|&cf| gstar.face_of_dart(map_dart(cubic.face(cf).darts[0])))
        .collect();
    let gstar = gstar.with_outer_face(face_of[center])?;

    let mut tags = vec![GadgetRole::Filler; gstar.face_count()];
    for (v, &role) in h.nodes.iter().enumerate() {
        tags[face_of[v]] = role;
    }
    let mut ports = Vec::new();
    for (e, link) in h.links.iter().enumerate() {
        for (i, &role) in link.ports.iter().enumerate() {
            ports.push(Port {
                vertex: chain[e][i],
                producer: face_of[link.producer],
                consumer: face_of[link.consumer],
                role,
            });
        }
    }
    ports.sort_by_key(|p| p.vertex);
    Ok(GadgetGraph {
        variables: h.variables,
        clauses: h.clauses,
        gstar,
        tags,
        ports,
    })
}

/// Incidence check, normalization and gadget construction in one call.
pub fn reduce(f: &Formula, policy: AbsorberPolicy) -> Result<GadgetGraph> {
    let inc = check_planar_formula(f)?;
    let h = normalize_degrees(f, &inc, policy)?;
    build_gadget_graph(&h)
}

impl GadgetGraph {
    pub fn variable_face(&self, k: usize) -> Option<FaceId> {
        self.tags.iter().position(|&t| t == GadgetRole::Variable(k))
    }

    pub fn clause_face(&self, i: usize) -> Option<FaceId> {
        self.tags.iter().position(|&t| t == GadgetRole::Clause(i))
    }

    /// Number of degree-2 vertices.
    pub fn k(&self) -> usize {
        self.ports.len()
    }

    /// Degree-2 vertices on the boundary of face `f`.
    pub fn ports_on(&self, f: FaceId) -> usize {
        let deg = self.gstar.graph().degree_profile();
        let mut vs: Vec<Vertex> = self
            .gstar
            .face(f)
            .vertices
            .iter()
            .copied()
            .filter(|&v| deg[v] == 2)
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len()
    }

    /// The assignment a truth assignment induces: a port goes to its
    /// consumer iff its producer is not a hole. A variable face is a hole
    /// iff the variable is false, a splitter iff its source is not.
    pub fn assignment_for(&self, truth: &[bool]) -> HoleAssignment {
        let mut source: BTreeMap<FaceId, FaceId> = BTreeMap::new();
        for p in &self.ports {
            if matches!(p.role, PortRole::VariableOutput | PortRole::NegatedCopy) {
                source.insert(p.consumer, p.producer);
            }
        }
        let mut emits: BTreeMap<FaceId, bool> = BTreeMap::new();
        fn resolve(
            f: FaceId,
            tags: &[GadgetRole],
            truth: &[bool],
            source: &BTreeMap<FaceId, FaceId>,
            memo: &mut BTreeMap<FaceId, bool>,
        ) -> bool {
            if let Some(&e) = memo.get(&f) {
                return e;
            }
            let e = match tags[f] {
                GadgetRole::Variable(k) => truth[k],
                GadgetRole::Splitter { .. } => !resolve(source[&f], tags, truth, source, memo),
                GadgetRole::Filler => true,
                GadgetRole::Clause(_) | GadgetRole::Absorber => false,
            };
            memo.insert(f, e);
            e
        }
        let mut h = HoleAssignment::new();
        for p in &self.ports {
            let side = if resolve(p.producer, &self.tags, truth, &source, &mut emits) {
                p.consumer
            } else {
                p.producer
            };
            h.insert(p.vertex, side);
        }
        h
    }

    /// Embedding text followed by a `tags` section: `variables N`,
    /// `clauses M`, one `face <id> <role>` line per face and one
    /// `port <vertex> <producer> <consumer> <role>` line per port.
    /// Variables and clauses are numbered from 1.
    pub fn to_text(&self) -> String {
        let mut out = self.gstar.to_text();
        out.push_str("tags\n");
        let _ = writeln!(out, "variables {}", self.variables);
        let _ = writeln!(out, "clauses {}", self.clauses);
        for (f, t) in self.tags.iter().enumerate() {
            let _ = writeln!(out, "face {f} {t}");
        }
        for p in &self.ports {
            let _ = writeln!(out, "port {} {} {} {}", p.vertex, p.producer, p.consumer, p.role);
        }
        out
    }

    pub fn parse(text: &str) -> Result<GadgetGraph> {
        let mut lines = ContentLines::new(text);
        let gstar = PlaneEmbedding::parse_from(&mut lines)?;
        match lines.next() {
            Some((_, t)) if t == ["tags"] => {}
            Some((line, _)) => return Err(parse_err(line, "expected `tags`")),
            None => return Err(parse_err(0, "missing `tags` section")),
        }
        let mut variables = None;
        let mut clauses = None;
        let mut tags = vec![GadgetRole::Filler; gstar.face_count()];
        let mut ports = Vec::new();
        for (line, toks) in lines {
            let num = |i: usize| -> Result<usize> {
                toks.get(i)
                    .ok_or_else(|| parse_err(line, "missing field"))
                    .and_then(|t| Ok(parse_usizes(line, &[t])?[0]))
            };
            let one_based = |i: usize| -> Result<usize> {
                num(i)?
                    .checked_sub(1)
                    .ok_or_else(|| parse_err(line, "indices start at 1"))
            };
            match toks[0] {
                "variables" => variables = Some(num(1)?),
                "clauses" => clauses = Some(num(1)?),
                "face" => {
                    let f = num(1)?;
                    if f >= tags.len() {
                        return Err(parse_err(line, format!("face {f} out of range")));
                    }
                    tags[f] = match toks.get(2).copied() {
                        Some("variable") => GadgetRole::Variable(one_based(3)?),
                        Some("clause") => GadgetRole::Clause(one_based(3)?),
                        Some("splitter") => GadgetRole::Splitter {
                            variable: one_based(3)?,
                        },
                        Some("absorber") => GadgetRole::Absorber,
                        Some("filler") => GadgetRole::Filler,
                        _ => return Err(parse_err(line, "unknown face role")),
                    };
                }
                "port" => {
                    let role = match toks.get(4).copied() {
                        Some("variable_output") => PortRole::VariableOutput,
                        Some("negated_copy") => PortRole::NegatedCopy,
                        Some("built_in") => PortRole::BuiltIn,
                        Some("absorbed") => PortRole::Absorbed,
                        Some("forced") => PortRole::Forced,
                        Some("clause_input") => {
                            let lit: i64 = toks
                                .get(6)
                                .and_then(|t| t.parse().ok())
                                .filter(|&x: &i64| x != 0)
                                .ok_or_else(|| parse_err(line, "bad literal"))?;
                            PortRole::ClauseInput {
                                clause: one_based(5)?,
                                literal: Literal {
                                    var: lit.unsigned_abs() as usize - 1,
                                    negated: lit < 0,
                                },
                            }
                        }
                        _ => return Err(parse_err(line, "unknown port role")),
                    };
                    ports.push(Port {
                        vertex: num(1)?,
                        producer: num(2)?,
                        consumer: num(3)?,
                        role,
                    });
                }
                other => return Err(parse_err(line, format!("unexpected `{other}`"))),
            }
        }
        Ok(GadgetGraph {
            variables: variables.ok_or_else(|| parse_err(0, "missing `variables`"))?,
            clauses: clauses.ok_or_else(|| parse_err(0, "missing `clauses`"))?,
            gstar,
            tags,
            ports,
        })
    }
}
