//! Recognition of duals of hole-free polygon triangulations.
//!
//! A graph is such a dual exactly when it is planar, 3-regular and
//! 3-connected. Interior points can be avoided exactly when, for some face
//! taken as the face of the point at infinity, the vertices off that face
//! induce a tree.

use crate::decision::{Decision, Reason};
use crate::embed::{planarity_test, FaceId, PlaneEmbedding};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::realize::realize_from_primal;
use crate::triangulation::Triangulation;

/// Checks the structural characterization and returns the embedding of the
/// accepted graph, or the first failed property.
pub fn characterize(gstar: &Graph) -> std::result::Result<PlaneEmbedding, Reason> {
    if gstar.vertex_count() < 4 {
        return Err(Reason::TooSmall);
    }
    if !gstar.is_simple() {
        return Err(Reason::NotSimple);
    }
    if !gstar.is_k_regular(3) {
        return Err(Reason::NotThreeRegular);
    }
    if gstar.vertex_connectivity_at_most_3() < 3 {
        return Err(Reason::NotThreeConnected);
    }
    planarity_test(gstar).map_err(|_| Reason::NotPlanar)
}

/// Vertices not on face `outer` induce a tree.
pub fn interior_tree_check(e: &PlaneEmbedding, outer: FaceId) -> bool {
    let on_face = &e.face(outer).vertices;
    let keep: Vec<Vertex> = (0..e.vertex_count())
        .filter(|v| !on_face.contains(v))
        .collect();
    let (sub, _) = e.graph().induced(&keep);
    sub.is_tree()
}

/// First face whose removal leaves a tree, if any.
pub fn tree_face(e: &PlaneEmbedding) -> Option<FaceId> {
    (0..e.face_count()).find(|&f| interior_tree_check(e, f))
}

/// Decides the hole-free problem and reports the strongest answer: yes
/// without interior points, yes with interior points required, or no.
pub fn recognize_tdrs_no_holes(gstar: &Graph) -> Decision {
    recognize_no_holes(gstar, false)
}

/// As [`recognize_tdrs_no_holes`]; with `require_empty_interior` a graph
/// that needs interior points is rejected.
pub fn recognize_no_holes(gstar: &Graph, require_empty_interior: bool) -> Decision {
    let emb = match characterize(gstar) {
        Ok(e) => e,
        Err(r) => return Decision::no(r),
    };
    let tree = tree_face(&emb);
    if tree.is_none() && require_empty_interior {
        return Decision::no(Reason::InteriorNotTree);
    }
    let face = tree.unwrap_or(emb.outer_face());
    match realize_with_face(&emb, face) {
        Ok(t) => Decision::yes(t, tree.is_none()),
        Err(e) => Decision::no(Reason::Reconstruction(e.to_string())),
    }
}

/// Realizes an accepted graph using its default outer face as the face of
/// the point at infinity.
pub fn realize_no_holes(gstar: &Graph) -> Result<Triangulation> {
    let emb = characterize(gstar)
        .map_err(|r| Error::Precondition(format!("input is not a hole-free dual: {r}")))?;
    realize_with_face(&emb, emb.outer_face())
}

/// Dualizes, takes the primal vertex of face `face` as the point at
/// infinity, draws and deletes it.
pub fn realize_with_face(emb: &PlaneEmbedding, face: FaceId) -> Result<Triangulation> {
    let dual = emb.dualize();
    // primal vertex `face` is dual vertex `face`
    realize_from_primal(&dual.embedding, face, &[]).map_err(Error::Degenerate)
}
