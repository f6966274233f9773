//! Defective Ramsey numbers and defective cocolorings in restricted graph
//! classes, computed by isomorph-free generation of sub-extremal graphs.

pub mod canon;
pub mod checkpoint;
pub mod classes;
pub mod cocolor;
pub mod defect;
pub mod error;
pub mod generator;
pub mod graph;
pub mod known;

pub use canon::{canonical_form, canonical_key, CanonicalKey};
pub use classes::GraphClass;
pub use cocolor::{compute_c, find_cocoloring, CocolorParams, Cocoloring};
pub use defect::DefectParams;
pub use error::{Error, Result};
pub use generator::{
    extend_level, formula_oracle, run_ramsey, run_seeded, triangle_chain, Generator, LevelSet,
    Outcome, RamseyResult, RunLimits, SearchParams,
};
pub use graph::{Graph, VertexSet, MAX_ORDER};
