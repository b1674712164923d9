//! Planar 3-SAT gadget graphs and the unknown-holes search.

pub mod formula;
pub mod reduction;
pub mod search;

pub use formula::{Formula, Literal};
pub use reduction::{
    build_gadget_graph, check_planar_formula, normalize_degrees, reduce, AbsorberPolicy,
    GadgetGraph, GadgetRole, IncidenceEmbedding, Link, NormalizedGraph, Port, PortRole,
};
pub use search::{
    assignment_to_truth, exhaustive_assignment_search, SearchHit, SearchReport, DEFAULT_CAP,
};
