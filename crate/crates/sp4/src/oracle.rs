//! Brute-force cross-checks for the closed-form exponential: a
//! scaling-and-squaring Taylor exponential, the symplectic residual, and a
//! seeded fuzz driver comparing both routes over random generators.

use crate::expmap::{exp_sp4, symplectic_defect, Generator};
use crate::mat::{Mat2, Mat4};
use std::fmt;
use thiserror::Error;

/// Tuning knobs for [`exp_series`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpOracleConfig {
    /// Entrywise norm above which the argument is halved before summation.
    pub squaring_threshold: f64,
    /// Hard cap on Taylor terms; summation also stops once a term drops
    /// below machine epsilon relative to the running sum.
    pub max_terms: u32,
    /// Deviation tolerance carried along for report consumers.
    pub tol: f64,
}

impl ExpOracleConfig {
    pub fn new(squaring_threshold: f64, max_terms: u32, tol: f64) -> Self {
        assert!(squaring_threshold > 0.0, "squaring threshold must be > 0");
        assert!(max_terms >= 20, "need at least 20 Taylor terms");
        assert!(tol > 0.0, "tolerance must be > 0");
        ExpOracleConfig {
            squaring_threshold,
            max_terms,
            tol,
        }
    }
}

impl Default for ExpOracleConfig {
    fn default() -> Self {
        ExpOracleConfig {
            squaring_threshold: 0.5,
            max_terms: 30,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// Matrix exponential by scaling and squaring: pick `k` so the halved
/// argument `m / 2ᵏ` drops under the threshold, Taylor-sum it, then square
/// `k` times.
pub fn exp_series(m: &Mat4, cfg: &ExpOracleConfig) -> Result<Mat4, OracleError> {
    if !m.is_finite() {
        return Err(OracleError::NonFinite);
    }
    let norm = m.norm_inf();
    let squarings = if norm > cfg.squaring_threshold {
        (norm / cfg.squaring_threshold).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m.scale(0.5_f64.powi(squarings));

    let mut sum = Mat4::identity();
    let mut term = Mat4::identity();
    for n in 1..=cfg.max_terms {
        term = (term * scaled).scale(1.0 / n as f64);
        sum = sum + term;
        if term.max_abs() <= f64::EPSILON * sum.max_abs() {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = result * result;
    }
    Ok(result)
}

/// `‖MΩMᵀ - Ω‖∞` (entrywise); zero exactly when `M` is symplectic.
pub fn symplectic_residual(m: &Mat4) -> f64 {
    symplectic_defect(m)
}

/// Outcome of a fuzz batch. Serializes through `Display` as a flat
/// key-value block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: u32,
    pub norm_cap: f64,
    /// Largest entrywise deviation between the closed form and the series
    /// exponential across the batch.
    pub max_dev: f64,
    /// Largest symplectic residual of the closed-form results.
    pub max_residual: f64,
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "count = {}", self.count)?;
        writeln!(f, "max_dev = {:e}", self.max_dev)?;
        write!(f, "max_residual = {:e}", self.max_residual)
    }
}

/// SplitMix64 (the mixer from Steele, Lea & Flood's "Fast splittable
/// pseudorandom number generators"). Chosen because it is tiny and gives
/// bit-identical streams on every platform; draw `i` of a fuzz batch uses
/// the stream seeded with `seed + i`, so batches can be partitioned at will.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in [-1, 1).
    fn next_signed_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64) * (2.0 / 9_007_199_254_740_992.0) - 1.0
    }
}

/// Draw index `i` of a fuzz batch: ten uniform entries in [-1, 1) filling
/// `(a, b, c)`, rescaled so the algebra element has ∞-norm `norm_cap`
/// exactly. Each index has its own stream, so a batch can be re-created or
/// partitioned draw by draw.
pub fn fuzz_generator(seed: u64, index: u32, norm_cap: f64) -> Generator {
    let mut rng = SplitMix64::new(seed.wrapping_add(index as u64));
    let mut u = [0.0_f64; 10];
    for x in u.iter_mut() {
        *x = rng.next_signed_unit();
    }
    let g = Generator::new(
        Mat2([[u[0], u[1]], [u[1], u[2]]]),
        Mat2([[u[3], u[4]], [u[5], u[6]]]),
        Mat2([[u[7], u[8]], [u[8], u[9]]]),
    )
    .expect("construction is symmetric");
    let norm = g.lie_matrix().norm_inf();
    if norm == 0.0 {
        g
    } else {
        g.scale(norm_cap / norm)
    }
}

/// Compares `exp_sp4` against [`exp_series`] on `count` seeded random
/// generators with `‖m‖∞ = norm_cap` and reports the worst entrywise
/// deviation and worst symplectic residual. Pure in `(seed, count,
/// norm_cap)`.
pub fn fuzz_expmap(seed: u64, count: u32, norm_cap: f64) -> FuzzReport {
    assert!(count >= 1, "need at least one draw");
    assert!(
        norm_cap.is_finite() && norm_cap >= 0.0,
        "norm cap must be finite and non-negative"
    );
    let cfg = ExpOracleConfig::default();
    let mut max_dev = 0.0_f64;
    let mut max_residual = 0.0_f64;
    for i in 0..count {
        let g = fuzz_generator(seed, i, norm_cap);
        let closed = exp_sp4(&g);
        let series = exp_series(&g.lie_matrix(), &cfg).expect("draws are finite");
        max_dev = max_dev.max(closed.max_abs_diff(&series));
        max_residual = max_residual.max(symplectic_residual(&closed));
    }
    FuzzReport {
        seed,
        count,
        norm_cap,
        max_dev,
        max_residual,
    }
}
