//! Knowledge-base engine for autism screening knowledge: an ontology-validated
//! triple store with a small query language, record ingest and fusion, screening
//! scales, expert recommendation, question answering and quality evaluation.

pub mod ingest;
pub mod kb;
pub mod ontology;
pub mod qa;
pub mod quality;
pub mod query;
mod read;
pub mod recommend;
pub mod scalar;
pub mod screening;
pub mod store;
pub mod vocab;

pub use kb::{KbError, KnowledgeBase};
pub use scalar::Real;

pub type WilsonF64 = quality::WilsonInterval<f64>;
pub type LatLngF64 = recommend::LatLng<f64>;
