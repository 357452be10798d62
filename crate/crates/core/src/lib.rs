//! Exact computation of graph cohomology invariants for simple graphs with a
//! rational plane moment map in general position.

pub mod cohomology;
pub mod error;
pub mod exact;
pub mod graph;
pub mod profile;
pub mod structure;
pub mod verify;

pub use cohomology::{CohomElement, GeneratorSet};
pub use error::{Error, Result};
pub use exact::{rat, BivarPoly, Rat, RatMatrix};
pub use graph::{EmbeddedGraph, Edge, Point};
pub use profile::{char_profile, CharProfile};
pub use structure::CutResult;
pub use verify::{VerifyReport, Verdict};
