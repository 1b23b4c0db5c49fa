//! Closed-form exponential map from the Lie algebra `sp(4,R)` onto the
//! symplectic group `Sp(4,R)`.
//!
//! A group element is `M = exp(m)` with `m = Ω L`, where `L` is the symmetric
//! block matrix `[[a, b], [bᵀ, c]]` built from two symmetric 2×2 blocks `a`,
//! `c` and one general 2×2 block `b`, and `Ω = diag(J, J)` is the symplectic
//! form. Instead of summing the exponential series, the crate evaluates the
//! spectral closed form of the even/odd series coefficients of `S = m²` and
//! assembles `M` from them. A brute-force scaling-and-squaring exponential
//! ([`oracle::exp_series`]) is kept alongside as an independent cross-check.
//!
//! Phase-space ordering is `(q1, p1, q2, p2)` everywhere; matrices are
//! row-major.
//!
//! The [`squeeze`] module specializes the map to the two-mode squeeze
//! generator: the classical squeeze matrix `M_s(r, φ)`, the reference
//! correlation matrix of the two-mode squeezed vacuum, and circular
//! phase-space trajectories to visualize the squeezing action.

pub mod expmap;
pub mod mat;
pub mod oracle;
pub mod squeeze;

pub use expmap::{
    blocks_abcd, coeffs_closed, coeffs_recursive, compute_s, entire_c, entire_s, exp_sp4,
    exp_sp4_ac_zero, exp_sp4_b_zero, series_coeffs, Generator, GeneratorError, SeriesCoeffs,
    SpectralData,
};
pub use mat::{j2, omega4, Mat2, Mat4};
pub use oracle::{
    exp_series, fuzz_expmap, fuzz_generator, symplectic_residual, ExpOracleConfig, FuzzReport,
    OracleError,
};
pub use squeeze::{
    circular_trajectory, correlation_matrix, factor_two_check, squeeze_b, squeeze_matrix,
    transform_trajectory, SqueezeError, SqueezeParams, Trajectory, TrajectorySample,
};
