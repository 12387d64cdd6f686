//! Exact rational dense linear algebra: scalars, matrices, and canonical
//! subspaces. The substrate every other module computes with.

mod linmap;
mod scalar;
mod subspace;

pub use linmap::{map_of_vec, vec_of_map, Echelon, LinMap};
pub use scalar::{ParseScalarError, Scalar};
pub use subspace::{AffineSolution, Quotient, Subspace};
