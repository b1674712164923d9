//! Forward direction and instance generation.

pub mod earclip;
pub mod forward;
pub mod generate;

pub use forward::{graph_to_dual, triangulation_to_graph, ForwardDual, TriangulationGraph};
pub use generate::{generate, GeneratorConfig};
