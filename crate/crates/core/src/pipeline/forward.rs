//! From a triangulated polygon to its dual: the oracle the recognizers are
//! tested against.

use std::collections::BTreeSet;

use crate::embed::{twin, Dart, FaceId, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::geometry::{centroid, circumcenter, polygon_signed_area2, Point};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::known_holes::HoleAssignment;
use crate::triangulation::{violations, Triangulation};

/// Triangulation graph plus a vertex at infinity joined to the boundary.
#[derive(Clone, Debug)]
pub struct TriangulationGraph {
    pub graph: Graph,
    pub infinity: Vertex,
    /// Boundary in counterclockwise order.
    pub boundary: Vec<Vertex>,
}

pub fn triangulation_to_graph(t: &Triangulation) -> Result<TriangulationGraph> {
    let bad = violations(t);
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "not a valid triangulation: {}",
            bad.join("; ")
        )));
    }
    let k = t.points.len();
    let mut boundary = t.boundary.clone();
    let pts: Vec<Point> = boundary.iter().map(|&v| t.points[v]).collect();
    if polygon_signed_area2(&pts) < 0.0 {
        boundary.reverse();
    }
    let mut graph = Graph::new(k + 1);
    for (u, v) in t.edges() {
        graph.add_edge(u, v);
    }
    for &b in &boundary {
        graph.add_edge(b, k);
    }
    Ok(TriangulationGraph {
        graph,
        infinity: k,
        boundary,
    })
}

/// Plane embedding of the triangulation graph read off the coordinates, with
/// the vertex at infinity outside the boundary.
pub fn primal_embedding(t: &Triangulation, tg: &TriangulationGraph) -> Result<PlaneEmbedding> {
    let g = &tg.graph;
    let k = tg.infinity;
    let mut out: Vec<Vec<(Dart, Vertex)>> = vec![Vec::new(); k + 1];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        out[u].push((2 * e, v));
        out[v].push((2 * e + 1, u));
    }
    let nb = tg.boundary.len();
    let mut prev = vec![usize::MAX; k];
    for i in 0..nb {
        prev[tg.boundary[(i + 1) % nb]] = tg.boundary[i];
    }
    let mut rotation = vec![Vec::new(); k + 1];
    for v in 0..k {
        let p = t.points[v];
        let mut finite: Vec<(f64, Dart, Vertex)> = out[v]
            .iter()
            .filter(|&&(_, w)| w != k)
            .map(|&(d, w)| {
                let q = t.points[w] - p;
                (q.y.atan2(q.x), d, w)
            })
            .collect();
        // clockwise: decreasing angle
        finite.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut rot: Vec<Dart> = finite.iter().map(|x| x.1).collect();
        if prev[v] != usize::MAX {
            // the exterior lies clockwise between the next and the previous
            // boundary vertex
            let at = finite.iter().position(|x| x.2 == prev[v]).unwrap();
            let inf = out[v].iter().find(|x| x.1 == k).unwrap().0;
            rot.insert(at, inf);
        }
        rotation[v] = rot;
    }
    rotation[k] = tg
        .boundary
        .iter()
        .map(|&b| out[k].iter().find(|x| x.1 == b).unwrap().0)
        .collect();
    PlaneEmbedding::new(g.clone(), rotation)
}

/// Everything the forward direction produces.
#[derive(Clone, Debug)]
pub struct ForwardDual {
    pub primal: PlaneEmbedding,
    pub infinity: Vertex,
    /// `G*` with its outer face set to the face of the vertex at infinity.
    pub gstar: PlaneEmbedding,
    /// Per `G*` vertex, the index of its triangle in the triangulation, or
    /// `None` for triangles with the vertex at infinity.
    pub triangle_of: Vec<Option<usize>>,
    /// Primal face of each `G*` vertex.
    pub primal_face_of: Vec<FaceId>,
    /// Ground-truth hole side of every degree-2 vertex.
    pub assignment: HoleAssignment,
}

impl ForwardDual {
    /// Vertex positions for the geometric check: circumcenters (or
    /// centroids) of finite triangles, `None` for infinity triangles.
    pub fn centers(&self, t: &Triangulation, use_centroid: bool) -> Vec<Option<Point>> {
        self.triangle_of
            .iter()
            .map(|o| {
                o.and_then(|i| {
                    let [a, b, c] = t.triangles[i].map(|v| t.points[v]);
                    if use_centroid {
                        Some(centroid(a, b, c))
                    } else {
                        circumcenter(a, b, c)
                    }
                })
            })
            .collect()
    }
}

pub fn graph_to_dual(t: &Triangulation) -> Result<ForwardDual> {
    let tg = triangulation_to_graph(t)?;
    let primal = primal_embedding(t, &tg)?;
    let k = tg.infinity;
    let dual = primal.dualize();
    let d = &dual.embedding;

    let hole_sets: Vec<BTreeSet<Vertex>> =
        t.holes.iter().map(|h| h.iter().copied().collect()).collect();
    let tri_index: std::collections::BTreeMap<BTreeSet<Vertex>, usize> = t
        .triangles
        .iter()
        .enumerate()
        .map(|(i, tr)| (tr.iter().copied().collect(), i))
        .collect();
    let mut is_hole = vec![false; primal.face_count()];
    let mut triangle_of_face = vec![None; primal.face_count()];
    for f in primal.faces() {
        let set: BTreeSet<Vertex> = f.vertices.iter().copied().collect();
        if f.vertices.contains(&k) {
            continue;
        }
        if hole_sets.iter().any(|h| *h == set && f.len() == h.len()) {
            is_hole[f.id] = true;
        } else {
            let i = tri_index.get(&set).copied().ok_or_else(|| {
                Error::Degenerate(format!("primal face {:?} is not a triangle", f.vertices))
            })?;
            triangle_of_face[f.id] = Some(i);
        }
    }
    let keep: Vec<bool> = (0..d.vertex_count()).map(|v| !is_hole[v]).collect();
    let (gstar, vmap, emap) = delete_vertices(d, &keep)?;
    let new_dart = |x: Dart| emap[x / 2].map(|e| 2 * e + (x & 1));

    // outer face: the face of G* made of the edges crossing edges at infinity
    let inf_edges: BTreeSet<EdgeId> = primal
        .rotation(k)
        .iter()
        .filter_map(|&x| emap[x / 2])
        .collect();
    let outer = gstar
        .faces()
        .iter()
        .find(|f| {
            f.darts.len() == inf_edges.len()
                && f.darts.iter().all(|&x| inf_edges.contains(&(x / 2)))
        })
        .map(|f| f.id)
        .ok_or_else(|| Error::Degenerate("no face for the vertex at infinity".to_string()))?;
    let gstar = gstar.with_outer_face(outer)?;

    let mut assignment = HoleAssignment::new();
    for h in (0..d.vertex_count()).filter(|&h| is_hole[h]) {
        for &x in d.rotation(h) {
            let u = d.head(x);
            let rot = d.rotation(u);
            if rot.iter().filter(|&&y| d.head(y) == h).count() != 1 {
                continue;
            }
            // the hole sector sits where the dart to the hole was
            let i = rot.iter().position(|&y| y == twin(x)).unwrap();
            let after = rot[(i + 1) % rot.len()];
            let nd = new_dart(after).expect("neighbor edge survives");
            let nu = vmap[u].unwrap();
            if gstar.rotation(nu).len() == 2 {
                assignment.insert(nu, gstar.face_of_dart(nd));
            }
        }
    }
    let mut triangle_of = vec![None; gstar.vertex_count()];
    let mut primal_face_of = vec![0; gstar.vertex_count()];
    for (v, m) in vmap.iter().enumerate() {
        if let Some(nv) = *m {
            triangle_of[nv] = triangle_of_face[v];
            primal_face_of[nv] = v;
        }
    }
    Ok(ForwardDual {
        primal,
        infinity: k,
        gstar,
        triangle_of,
        primal_face_of,
        assignment,
    })
}

type VertexMap = Vec<Option<Vertex>>;
type EdgeMap = Vec<Option<EdgeId>>;

/// Restricts an embedding to the kept vertices, preserving the cyclic
/// order of the surviving darts.
pub fn delete_vertices(
    e: &PlaneEmbedding,
    keep: &[bool],
) -> Result<(PlaneEmbedding, VertexMap, EdgeMap)> {
    let g = e.graph();
    let mut vmap = vec![None; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        if keep[v] {
            vmap[v] = Some(next);
            next += 1;
        }
    }
    let mut sub = Graph::new(next);
    let mut emap = vec![None; g.edge_count()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if let (Some(a), Some(b)) = (vmap[u], vmap[v]) {
            emap[i] = Some(sub.add_edge(a, b));
        }
    }
    let mut rotation = vec![Vec::new(); next];
    for v in 0..g.vertex_count() {
        if let Some(nv) = vmap[v] {
            rotation[nv] = e
                .rotation(v)
                .iter()
                .filter_map(|&d| emap[d / 2].map(|ne| 2 * ne + (d & 1)))
                .collect();
        }
    }
    Ok((PlaneEmbedding::new(sub, rotation)?, vmap, emap))
}
