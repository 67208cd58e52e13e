//! Exact computer algebra for Lie affgebras: affine spaces carrying a
//! bi-affine Lie bracket, modelled as `a(g; kappa, lambda, s)` over a Lie
//! algebra `g` given by structure constants.
//!
//! All arithmetic is exact, over the rationals or a prime field of odd
//! characteristic, so every axiom check is a decisive finite computation.

pub mod affgebra;
pub mod catalog;
pub mod cocycle;
pub mod error;
pub mod field;
pub mod format;
pub mod hull;
pub mod isomorphism;
pub mod liealg;
pub mod linalg;

pub use affgebra::{AffineBracket, LieAffgebra};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use liealg::LieAlgebra;
pub use linalg::{LinearMap, Matrix, Subspace, Vector};
