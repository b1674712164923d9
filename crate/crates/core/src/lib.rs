//! Recognition of duals of polygon triangulations.
//!
//! Given a graph `G*`, decide whether it is the dual graph of a
//! triangulation of a simple polygon (optionally with holes and interior
//! points) and build such a triangulation when it is.

pub mod decision;
pub mod embed;
pub mod error;
pub mod export;
pub mod format;
pub mod geometric;
pub mod geometry;
pub mod graph;
pub mod iso;
pub mod known_holes;
pub mod linalg;
pub mod no_holes;
pub mod pipeline;
pub mod realize;
pub mod sat;
pub mod triangulation;

pub use decision::{Decision, Reason, Verdict};
pub use error::{Error, Result};
pub use graph::Graph;
pub use triangulation::{verify_planar_triangulation, Triangulation};
