//! Geometric necessary condition: given a representative point for every
//! finite triangle, solve for vertex positions and test the result.
//!
//! Triangles that contain the point at infinity carry no coordinates; the
//! face of `G*` bounded by exactly those vertices is taken as the outer
//! face. The combinatorial structure comes from topological recognition.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::decision::Reason;
use crate::embed::{FaceId, PlaneEmbedding};
use crate::error::{parse_err, Error, Result};
use crate::format::{fmt_f64, ContentLines};
use crate::geometry::{Point, EPS};
use crate::graph::{parse_usizes, Graph, Vertex};
use crate::known_holes::{
    embed_dual, reconstruct_primal, recognize_known_holes, HoleAssignment,
};
use crate::linalg::{solve_feasibility, Equation, Outcome, Solution};
use crate::no_holes::characterize;
use crate::triangulation::{violations, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Circumcenter,
    Centroid,
    Incenter,
    Orthocenter,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Circumcenter => "circumcenter",
            Model::Centroid => "centroid",
            Model::Incenter => "incenter",
            Model::Orthocenter => "orthocenter",
        }
    }

    pub fn from_name(s: &str) -> Option<Model> {
        [
            Model::Circumcenter,
            Model::Centroid,
            Model::Incenter,
            Model::Orthocenter,
        ]
        .into_iter()
        .find(|m| m.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct GeometricDual {
    pub gstar: Graph,
    /// Rotation system of `gstar`, needed when the graph has several
    /// embeddings (holes); computed when absent.
    pub embedding: Option<PlaneEmbedding>,
    /// `None` marks a triangle containing the point at infinity.
    pub coords: Vec<Option<Point>>,
    pub model: Model,
    /// Optional hole sides, each as `(vertex, face boundary cycle)`.
    pub assignment: Option<Vec<(Vertex, Vec<Vertex>)>>,
}

impl GeometricDual {
    pub fn parse(text: &str) -> Result<GeometricDual> {
        let mut lines = ContentLines::new(text);
        let gstar = Graph::parse_from(&mut lines)?;
        let embedding = match lines.peek() {
            Some((_, toks)) if toks[0].contains(':') || toks.get(1) == Some(&":") => {
                Some(PlaneEmbedding::parse_rotations(gstar.clone(), &mut lines)?)
            }
            _ => None,
        };
        let n = gstar.vertex_count();
        let mut coords = vec![None; n];
        let mut model = None;
        let mut assignment = None;
        while let Some((line, toks)) = lines.next() {
            match toks[0] {
                "coord" if toks.len() == 4 => {
                    let v = parse_usizes(line, &toks[1..2])?[0];
                    if v >= n {
                        return Err(Error::InvalidVertex { vertex: v, n });
                    }
                    let x: f64 = toks[2].parse().map_err(|_| parse_err(line, "bad x"))?;
                    let y: f64 = toks[3].parse().map_err(|_| parse_err(line, "bad y"))?;
                    if !x.is_finite() || !y.is_finite() {
                        return Err(parse_err(line, "coordinates must be finite"));
                    }
                    coords[v] = Some(Point::new(x, y));
                }
                "model" if toks.len() == 2 => {
                    model = Some(
                        Model::from_name(toks[1])
                            .ok_or_else(|| parse_err(line, format!("unknown model `{}`", toks[1])))?,
                    );
                }
                "assignment" if toks.len() == 1 => {
                    let mut list = Vec::new();
                    while let Some((line, toks)) = lines.peek() {
                        if !toks.contains(&":") && !toks.iter().any(|t| t.contains(':')) {
                            break;
                        }
                        lines.next();
                        let joined = toks.join(" ");
                        let (head, rest) = joined.split_once(':').unwrap();
                        let v = parse_usizes(line, &[head.trim()])?[0];
                        let cyc =
                            parse_usizes(line, &rest.split_whitespace().collect::<Vec<_>>())?;
                        list.push((v, cyc));
                    }
                    assignment = Some(list);
                }
                _ => return Err(parse_err(line, format!("unexpected line `{}`", toks.join(" ")))),
            }
        }
        let model = model.ok_or_else(|| parse_err(0, "missing `model` line"))?;
        Ok(GeometricDual {
            gstar,
            embedding,
            coords,
            model,
            assignment,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = match &self.embedding {
            Some(e) => e.to_text(),
            None => self.gstar.to_text(),
        };
        for (v, c) in self.coords.iter().enumerate() {
            if let Some(p) = c {
                let _ = writeln!(out, "coord {v} {} {}", fmt_f64(p.x), fmt_f64(p.y));
            }
        }
        let _ = writeln!(out, "model {}", self.model.name());
        if let Some(list) = &self.assignment {
            out.push_str("assignment\n");
            for (v, cyc) in list {
                let _ = write!(out, "{v} :");
                for w in cyc {
                    let _ = write!(out, " {w}");
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Primal structure recovered from `G*`. Primal edge `e` crosses `G*` edge
/// `e` for every `e < gstar.edge_count()`; higher ids are hole edges.
#[derive(Clone, Debug)]
pub struct Structure {
    pub primal: PlaneEmbedding,
    pub infinity: Vertex,
    pub holes: Vec<FaceId>,
    /// Primal face of each `G*` vertex.
    pub face_of: Vec<FaceId>,
    /// Hole sides used, against the oriented embedding of `G*`.
    pub assignment: HoleAssignment,
    pub embedding: PlaneEmbedding,
}

/// Finds the embedding of `G*` whose orientation agrees with the
/// coordinates at most vertices.
fn orient_with_coords(emb: PlaneEmbedding, coords: &[Option<Point>]) -> Result<PlaneEmbedding> {
    let mut vote = 0i64;
    for v in 0..emb.vertex_count() {
        let rot = emb.rotation(v);
        if rot.len() < 3 {
            continue;
        }
        let Some(c) = coords[v] else { continue };
        let nbr: Option<Vec<Point>> = rot.iter().map(|&d| coords[emb.head(d)]).collect();
        let Some(nbr) = nbr else { continue };
        let ang: Vec<f64> = nbr.iter().map(|p| (p.y - c.y).atan2(p.x - c.x)).collect();
        // clockwise order means the angles decrease cyclically, i.e. there is
        // exactly one ascent
        let ascents = (0..ang.len())
            .filter(|&i| ang[(i + 1) % ang.len()] > ang[i])
            .count();
        let descents = (0..ang.len())
            .filter(|&i| ang[(i + 1) % ang.len()] < ang[i])
            .count();
        if ascents == 1 {
            vote += 1;
        } else if descents == 1 {
            vote -= 1;
        }
    }
    if vote >= 0 {
        return Ok(emb);
    }
    let rotation = emb
        .rotations()
        .iter()
        .map(|r| r.iter().rev().copied().collect())
        .collect();
    PlaneEmbedding::new(emb.graph().clone(), rotation)
}

/// Hole side of each degree-2 vertex read from the coordinates: the sector
/// whose angle at the vertex exceeds a half turn.
pub fn infer_assignment(emb: &PlaneEmbedding, coords: &[Option<Point>]) -> Result<HoleAssignment> {
    let mut h = HoleAssignment::new();
    for v in 0..emb.vertex_count() {
        let rot = emb.rotation(v);
        if rot.len() != 2 {
            continue;
        }
        let (a, b) = (rot[0], rot[1]);
        let pts = (coords[v], coords[emb.head(a)], coords[emb.head(b)]);
        let (Some(c), Some(p), Some(q)) = pts else {
            return Err(Error::Precondition(format!(
                "hole side of vertex {v} needs coordinates at it and its neighbors"
            )));
        };
        let ta = (p.y - c.y).atan2(p.x - c.x);
        let tb = (q.y - c.y).atan2(q.x - c.x);
        // clockwise sweep from a to b
        let sweep = (ta - tb).rem_euclid(std::f64::consts::TAU);
        let f = if sweep > std::f64::consts::PI {
            emb.face_of_dart(b)
        } else {
            emb.face_of_dart(a)
        };
        h.insert(v, f);
    }
    Ok(h)
}

/// Runs topological recognition of `G*` and returns the primal structure.
pub fn recover_structure(gd: &GeometricDual) -> std::result::Result<Structure, GeometricFailure> {
    let g = &gd.gstar;
    if gd.coords.len() != g.vertex_count() {
        return Err(GeometricFailure::Input(Error::Precondition(
            "one coordinate slot per vertex expected".to_string(),
        )));
    }
    let hole_free = g.degree_profile().iter().all(|&d| d == 3);
    let emb = if hole_free {
        let e = characterize(g).map_err(GeometricFailure::Topological)?;
        gd.embedding.clone().unwrap_or(e)
    } else if let Some(e) = &gd.embedding {
        if e.graph() != g {
            return Err(GeometricFailure::Input(Error::Precondition(
                "embedding does not match the graph".to_string(),
            )));
        }
        e.clone()
    } else {
        embed_dual(g).map_err(|_| GeometricFailure::Topological(Reason::NotPlanar))?
    };
    let mut emb = orient_with_coords(emb, &gd.coords).map_err(GeometricFailure::Input)?;
    let inf: BTreeSet<Vertex> = (0..g.vertex_count())
        .filter(|&v| gd.coords[v].is_none())
        .collect();
    if inf.is_empty() {
        return Err(GeometricFailure::Input(Error::Precondition(
            "no vertex without coordinates marks the point at infinity".to_string(),
        )));
    }
    let outer = emb
        .faces()
        .iter()
        .find(|f| f.vertices.iter().copied().collect::<BTreeSet<_>>() == inf && f.len() == inf.len())
        .map(|f| f.id)
        .ok_or_else(|| {
            GeometricFailure::Input(Error::Precondition(
                "vertices without coordinates do not bound a face".to_string(),
            ))
        })?;
    emb.set_outer_face(outer).map_err(GeometricFailure::Input)?;
    let assignment = match &gd.assignment {
        Some(list) => {
            let mut h = HoleAssignment::new();
            for (v, cyc) in list {
                let f = emb.find_face_by_boundary(cyc).ok_or_else(|| {
                    GeometricFailure::Input(Error::Precondition(format!(
                        "no face with boundary {cyc:?}"
                    )))
                })?;
                h.insert(*v, f);
            }
            h
        }
        None => infer_assignment(&emb, &gd.coords).map_err(GeometricFailure::Input)?,
    };
    let decision = recognize_known_holes(&emb, &assignment);
    if let Some(r) = decision.reason() {
        return Err(GeometricFailure::Topological(r.clone()));
    }
    let rec = reconstruct_primal(&emb, &assignment).map_err(GeometricFailure::Input)?;
    Ok(Structure {
        primal: rec.primal,
        infinity: rec.outer_vertex,
        holes: rec.holes,
        face_of: rec.face_of,
        assignment,
        embedding: emb,
    })
}

#[derive(Debug)]
pub enum GeometricFailure {
    Topological(Reason),
    Input(Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Orthogonality,
    MidpointCollinearity,
    CentroidSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    /// Two unknowns (x then y) per entry, holding the primal vertex.
    pub vertex_of: Vec<Vertex>,
    pub equations: Vec<Equation>,
    pub kinds: Vec<ConstraintKind>,
}

impl LinearProgram {
    pub fn unknowns(&self) -> usize {
        2 * self.vertex_of.len()
    }

    /// Largest absolute residual of the unscaled equations at `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.equations
            .iter()
            .map(|e| (e.coeffs.iter().map(|&(i, v)| v * x[i]).sum::<f64>() - e.rhs).abs())
            .fold(0.0, f64::max)
    }

    /// Unknown vector for the given primal vertex positions.
    pub fn pack(&self, pos: &[Point]) -> Vec<f64> {
        self.vertex_of
            .iter()
            .flat_map(|&v| [pos[v].x, pos[v].y])
            .collect()
    }
}

fn unknown_index(s: &Structure) -> (Vec<Vertex>, Vec<usize>) {
    let n = s.primal.vertex_count();
    let vertex_of: Vec<Vertex> = (0..n).filter(|&v| v != s.infinity).collect();
    let mut index = vec![usize::MAX; n];
    for (k, &v) in vertex_of.iter().enumerate() {
        index[v] = k;
    }
    (vertex_of, index)
}

/// Each dual edge between finite triangles makes its primal edge
/// perpendicular to it, with the primal midpoint on its line.
pub fn build_circumcenter_lp(gd: &GeometricDual, s: &Structure) -> Result<LinearProgram> {
    let (vertex_of, idx) = unknown_index(s);
    let mut equations = Vec::new();
    let mut kinds = Vec::new();
    for (e, &(i, j)) in gd.gstar.edges().iter().enumerate() {
        let (Some(ci), Some(cj)) = (gd.coords[i], gd.coords[j]) else {
            continue;
        };
        let d = cj - ci;
        if d.norm() <= EPS {
            return Err(Error::Degenerate(format!(
                "dual edge {i}-{j} joins coincident points"
            )));
        }
        let (a, b) = s.primal.graph().endpoints(e);
        let (ax, ay, bx, by) = (2 * idx[a], 2 * idx[a] + 1, 2 * idx[b], 2 * idx[b] + 1);
        equations.push(Equation {
            coeffs: vec![(bx, d.x), (by, d.y), (ax, -d.x), (ay, -d.y)],
            rhs: 0.0,
        });
        kinds.push(ConstraintKind::Orthogonality);
        equations.push(Equation {
            coeffs: vec![
                (ay, d.x / 2.0),
                (by, d.x / 2.0),
                (ax, -d.y / 2.0),
                (bx, -d.y / 2.0),
            ],
            rhs: d.x * ci.y - d.y * ci.x,
        });
        kinds.push(ConstraintKind::MidpointCollinearity);
    }
    Ok(LinearProgram {
        vertex_of,
        equations,
        kinds,
    })
}

/// Each finite triangle `(a, b, d)` with centroid `g` gives `a + b + d = 3g`.
pub fn build_centroid_lp(gd: &GeometricDual, s: &Structure) -> Result<LinearProgram> {
    let (vertex_of, idx) = unknown_index(s);
    let mut equations = Vec::new();
    let mut kinds = Vec::new();
    for (u, c) in gd.coords.iter().enumerate() {
        let Some(g) = c else { continue };
        let tri = &s.primal.face(s.face_of[u]).vertices;
        if tri.len() != 3 || tri.contains(&s.infinity) {
            return Err(Error::Degenerate(format!(
                "vertex {u} with coordinates is not a finite triangle"
            )));
        }
        for axis in 0..2 {
            equations.push(Equation {
                coeffs: tri.iter().map(|&v| (2 * idx[v] + axis, 1.0)).collect(),
                rhs: 3.0 * if axis == 0 { g.x } else { g.y },
            });
            kinds.push(ConstraintKind::CentroidSum);
        }
    }
    Ok(LinearProgram {
        vertex_of,
        equations,
        kinds,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeometricStatus {
    RejectTopological(Reason),
    RejectInfeasible,
    CandidatePlanar,
    CandidateNonplanar,
}

impl GeometricStatus {
    pub fn name(&self) -> &'static str {
        match self {
            GeometricStatus::RejectTopological(_) => "reject_topological",
            GeometricStatus::RejectInfeasible => "reject_infeasible",
            GeometricStatus::CandidatePlanar => "candidate_planar",
            GeometricStatus::CandidateNonplanar => "candidate_nonplanar",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeometricVerdict {
    pub status: GeometricStatus,
    /// Present exactly when the system was feasible.
    pub candidate: Option<Triangulation>,
    pub solution: Option<Solution>,
    pub lp: Option<LinearProgram>,
    /// Verification failures of a nonplanar candidate.
    pub problems: Vec<String>,
}

impl GeometricVerdict {
    /// Only a rejection is conclusive; candidates are not proofs.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self.status,
            GeometricStatus::RejectInfeasible | GeometricStatus::RejectTopological(_)
        )
    }
}

/// Recognizes `G*` topologically, solves the model's system (minimum norm,
/// in a frame centered on the mean of the data points) and verifies the
/// candidate drawing.
pub fn geometric_check(gd: &GeometricDual) -> Result<GeometricVerdict> {
    if matches!(gd.model, Model::Incenter | Model::Orthocenter) {
        return Err(Error::UnsupportedModel(gd.model.name().to_string()));
    }
    let s = match recover_structure(gd) {
        Ok(s) => s,
        Err(GeometricFailure::Topological(r)) => {
            return Ok(GeometricVerdict {
                status: GeometricStatus::RejectTopological(r),
                candidate: None,
                solution: None,
                lp: None,
                problems: Vec::new(),
            })
        }
        Err(GeometricFailure::Input(e)) => return Err(e),
    };
    let known: Vec<Point> = gd.coords.iter().flatten().copied().collect();
    let center = known.iter().fold(Point::default(), |acc, &p| acc + p) * (1.0 / known.len().max(1) as f64);
    let shifted = GeometricDual {
        coords: gd.coords.iter().map(|c| c.map(|p| p - center)).collect(),
        ..gd.clone()
    };
    let lp = match gd.model {
        Model::Circumcenter => build_circumcenter_lp(&shifted, &s)?,
        _ => build_centroid_lp(&shifted, &s)?,
    };
    let sol = solve_feasibility(&lp.equations, lp.unknowns());
    let x = match &sol.outcome {
        Outcome::Infeasible { .. } => {
            return Ok(GeometricVerdict {
                status: GeometricStatus::RejectInfeasible,
                candidate: None,
                solution: Some(sol),
                lp: Some(lp),
                problems: Vec::new(),
            })
        }
        Outcome::Feasible { x } => x.clone(),
    };
    let candidate = candidate_from(&s, &lp, &x, center);
    let problems = violations(&candidate);
    let status = if problems.is_empty() {
        GeometricStatus::CandidatePlanar
    } else {
        GeometricStatus::CandidateNonplanar
    };
    Ok(GeometricVerdict {
        status,
        candidate: Some(candidate),
        solution: Some(sol),
        lp: Some(lp),
        problems,
    })
}

fn candidate_from(s: &Structure, lp: &LinearProgram, x: &[f64], shift: Point) -> Triangulation {
    let p = &s.primal;
    let (_, idx) = unknown_index(s);
    let points = lp
        .vertex_of
        .iter()
        .enumerate()
        .map(|(k, _)| Point::new(x[2 * k], x[2 * k + 1]) + shift)
        .collect();
    let hole_set: BTreeSet<FaceId> = s.holes.iter().copied().collect();
    let triangles = p
        .faces()
        .iter()
        .filter(|f| !hole_set.contains(&f.id) && !f.vertices.contains(&s.infinity))
        .map(|f| [idx[f.vertices[0]], idx[f.vertices[1]], idx[f.vertices[2]]])
        .collect();
    let boundary = p.rotation(s.infinity).iter().map(|&d| idx[p.head(d)]).collect();
    let holes = s
        .holes
        .iter()
        .map(|&h| p.face(h).vertices.iter().map(|&v| idx[v]).collect())
        .collect();
    Triangulation {
        points,
        triangles,
        boundary,
        holes,
    }
}
