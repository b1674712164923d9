//! Combinatorial embeddings, planarity, duals and straight-line drawings.

pub mod draw;
pub mod embedding;
pub mod planarity;

pub use draw::{barycentric, count_crossings, draw_with_outer, straight_line_draw};
pub use embedding::{dart_edge, twin, Dart, DualMap, Face, FaceId, PlaneEmbedding};
pub use planarity::{is_planar, planarity_test};
