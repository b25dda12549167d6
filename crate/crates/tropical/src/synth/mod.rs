//! Simple generators for additive curves.

pub mod affine;
pub mod params;
pub mod plane;
pub mod space;
pub mod tilde;
pub mod verify;
pub mod zero;

pub use affine::synthesize_affine_subspace;
pub use params::{choose_params, SynthesisParams, DEFAULT_CGAP};
pub use plane::synthesize_plane;
pub use space::{cut_polynomials, synthesize_curve, synthesize_space_curve, CutPolynomial};
pub use tilde::{synthesize_tilde_u, synthesize_tilde_u_red, CoefficientSolution};
pub use verify::{
    off_curve_samples, verify_ideal, VerificationReport, VerifyOptions, Witness, WitnessKind,
};
pub use zero::{curve_outside_locus, piece_in_zero_set};
