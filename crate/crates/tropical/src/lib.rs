//! Exact max-plus (tropical) geometry.
//!
//! Scalars are rationals extended by a bottom element, polynomials are finite
//! max-plus sums of monomials. On top of that sit dual subdivisions, plane
//! corner loci, additivity analysis of curves and synthesis of ideals made of
//! simple polynomials.

pub mod additive;
pub mod curve;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod synth;

pub use error::{Error, Result};
pub use poly::{Evaluation, Ideal, Monomial, TropPolynomial};
pub use scalar::{Rat, TropScalar};
