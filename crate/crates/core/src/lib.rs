//! Finite-dimensional associative algebras over exact rationals: bimodules,
//! balanced tensor products, double-centralizer bimodules, derivation spaces
//! and first Hochschild cohomology, and the push-out of a derivation along an
//! ideal embedding.
//!
//! Everything is computed exactly; identities are checked with zero
//! tolerance, so the library doubles as a theorem checker for the
//! constructions it implements.

// index-style loops read better than iterator chains in the matrix code
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bimodule;
pub mod centralizer;
pub mod corpus;
pub mod derivation;
pub mod docs;
pub mod duality;
pub mod error;
pub mod hom;
pub mod linalg;
pub mod tensor;
pub mod verify;

pub use algebra::{Algebra, Envelope};
pub use bimodule::Bimodule;
pub use centralizer::{CentralizerModule, CentralizerPair};
pub use derivation::Derivation;
pub use error::{Error, Result, Side};
pub use linalg::{LinMap, Scalar, Subspace};
