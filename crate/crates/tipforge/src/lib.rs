//! Matrix-stability toolkit built around diagonal forcing: multiply the
//! diagonal of a square matrix by a scalar and ask for the exact value at
//! which the maximal eigenvalue reaches zero.
//!
//! The toolkit computes that tipping point along two independent routes and
//! cross-checks them:
//!
//! * the **coefficient-root route**: the characteristic polynomial of the
//!   forced matrix has coefficients that are polynomials in the forcing
//!   variable; the largest real root across those coefficients is the
//!   tipping candidate ([`sigma::omega`], [`sigma::stabilize`]);
//! * the **scaling route**: divide each row by the magnitude of its diagonal
//!   entry, add the identity, and read the maximal eigenvalue of the
//!   resulting hollow matrix ([`sigma::scaling_route`]).
//!
//! On top of the numeric pipeline sits an exact combinatorial layer that
//! expands each coefficient into signed permutation terms, counts the
//! destabilising ("tipping") cycles, and tallies per-position weight
//! matrices ([`census`]). Those weight matrices in turn define a monic
//! matrix polynomial whose block companion spectrum is an intrinsic
//! signature of the sign pattern alone ([`signature`]), and all patterns of
//! a given order can be exhaustively classified by that signature
//! ([`signature::census`]).
//!
//! Everything is pure and deterministic: values are immutable after
//! construction, safe to share across threads, and identical inputs produce
//! identical outputs. See the crate examples for a tour, one per
//! capability:
//!
//! ```bash
//! cargo run --example sigma_tipping_point
//! cargo run --example degenerate_three_cycle
//! cargo run --example tipping_tables
//! cargo run --example weighted_cycle_matrices
//! cargo run --example spectral_signatures
//! cargo run --example pattern_census
//! ```

pub mod census;
pub mod eig;
pub mod error;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod sigma;
pub mod signature;
pub mod tol;

pub use census::{
    canonical_pattern, coefficient_terms, sensitivity_table, sigma_sensitivity_table,
    weight_matrices, CycleTerm, Grouping, SensitivityCell, SignPattern,
};
pub use eig::{eigenvalues, ComplexSpectrum, ComplexValue};
pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use poly::{RealPoly, SigmaCharPoly};
pub use sigma::{
    charpoly, dominant_cycles, omega, scaling_route, sigma_charpoly, sign_profile, stabilize,
    verify_r0_equivalence, OmegaSet, SigmaReport, Verdict,
};
pub use signature::{
    block_companion, census as pattern_census, matrix_polynomial, spectral_signature,
    CensusResult, MatrixPolynomial, SignatureMode, SpectralSignature,
};
pub use tol::Tolerances;
