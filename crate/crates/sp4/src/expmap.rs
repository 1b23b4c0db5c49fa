//! Closed-form evaluation of `exp(m)` for `m = Ω L` in `sp(4,R)`.
//!
//! The square `S = m²` keeps a rigid block shape
//! `[[α₁·1, Jd], [-Jdᵀ, γ₁·1]]` with `d = aJb + bJc`, and so do all of its
//! powers: `Sⁿ = [[αₙ·1, βₙ Jd], [-βₙ Jdᵀ, γₙ·1]]`. The coefficient triple
//! `(αₙ, βₙ, γₙ)` evolves under a fixed 3×3 linear map, which diagonalizes
//! through the eigenvalues `λ±` of its upper 2×2 block. Splitting the
//! exponential series into even and odd powers of `m` then collapses the two
//! sums into six scalars built from `cosh √λ±` and `sinh √λ± / √λ±`, and
//! `exp(m) = E + m·O` where `E` and `O` carry the even/odd scalars in the
//! same block pattern.
//!
//! `cosh √λ` and `sinh √λ / √λ` are read as the entire functions
//! `c(λ) = Σ λⁿ/(2n)!` and `s(λ) = Σ λⁿ/(2n+1)!`, so negative and zero `λ`
//! need no special treatment. Three regimes are handled when forming the six
//! scalars:
//!
//! * distinct real `λ±`: direct evaluation of the divided differences;
//! * nearly equal `λ±` (gap below [`CONFLUENT_DELTA`] relative): confluent
//!   limit through the derivative series `c₁ = c'`, `s₁ = s'`;
//! * complex-conjugate `λ±`: direct partial summation of the coefficient
//!   recursion, which never references the eigenvalues.

use crate::mat::{j2, omega4, Mat2, Mat4};
use std::ops::Neg;
use thiserror::Error;

/// Relative eigenvalue gap below which the confluent (equal-eigenvalue)
/// formulas take over from the divided differences.
pub const CONFLUENT_DELTA: f64 = 1e-8;

/// Window `|λ| ≤ ε` inside which the entire functions are summed as truncated
/// power series instead of going through `sqrt`.
const ENTIRE_SERIES_WINDOW: f64 = 1e-4;

/// Term cap for the direct partial-sum fallback (complex eigenvalue pairs).
const PARTIAL_SUM_MAX_TERMS: u32 = 40;

/// Error raised by strict [`Generator`] construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    /// The named block was not exactly symmetric.
    #[error("generator block `{0}` must be symmetric (use new_lenient to symmetrize)")]
    AsymmetricBlock(&'static str),
}

/// Lie-algebra datum `(a, b, c)`: the blocks of the symmetric matrix
/// `L = [[a, b], [bᵀ, c]]`, with `a` and `c` symmetric and `b` arbitrary.
///
/// Fields are private so that the symmetry invariant cannot be broken after
/// construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Generator {
    a: Mat2,
    b: Mat2,
    c: Mat2,
}

impl Generator {
    /// Strict constructor: rejects `a` or `c` that are not exactly symmetric.
    pub fn new(a: Mat2, b: Mat2, c: Mat2) -> Result<Self, GeneratorError> {
        if !a.is_symmetric() {
            return Err(GeneratorError::AsymmetricBlock("a"));
        }
        if !c.is_symmetric() {
            return Err(GeneratorError::AsymmetricBlock("c"));
        }
        Ok(Generator { a, b, c })
    }

    /// Lenient constructor: replaces `a` and `c` by `(x + xᵀ)/2`.
    pub fn new_lenient(a: Mat2, b: Mat2, c: Mat2) -> Self {
        Generator {
            a: a.symmetrized(),
            b,
            c: c.symmetrized(),
        }
    }

    pub fn zero() -> Self {
        Generator {
            a: Mat2::zero(),
            b: Mat2::zero(),
            c: Mat2::zero(),
        }
    }

    pub fn a(&self) -> Mat2 {
        self.a
    }

    pub fn b(&self) -> Mat2 {
        self.b
    }

    pub fn c(&self) -> Mat2 {
        self.c
    }

    /// Scales all three blocks; `lie_matrix` scales by the same factor.
    pub fn scale(&self, s: f64) -> Self {
        Generator {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
        }
    }

    /// The algebra element `m = Ω L = [[Ja, Jb], [Jbᵀ, Jc]]`.
    pub fn lie_matrix(&self) -> Mat4 {
        let j = j2();
        Mat4::from_blocks(j * self.a, j * self.b, j * self.b.transpose(), j * self.c)
    }
}

impl Neg for Generator {
    type Output = Generator;
    fn neg(self) -> Generator {
        self.scale(-1.0)
    }
}

/// Spectral quantities of `S = m²`.
///
/// `beta1` is `1` by definition. When `discriminant < 0` the eigenvalues form
/// a complex-conjugate pair `λ± = re ± i·im`; in that case `complex_pair` is
/// set and `(lambda_plus, lambda_minus)` hold `(re, +|im|)` instead of two
/// real eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralData {
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub d: Mat2,
    pub det_d: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub discriminant: f64,
    pub complex_pair: bool,
}

/// The six scalars multiplying the block pattern in the even/odd halves of
/// the exponential series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesCoeffs {
    pub alpha_even: f64,
    pub beta_even: f64,
    pub gamma_even: f64,
    pub alpha_odd: f64,
    pub beta_odd: f64,
    pub gamma_odd: f64,
}

/// Builds `S = m²` in closed block form together with its spectral data.
///
/// The blocks are `-(det a + det b)·1`, `Jd`, `-Jdᵀ`, `-(det b + det c)·1`
/// with `d = aJb + bJc`; the eigenvalues solve
/// `λ² - (α₁+γ₁)λ + (α₁γ₁ - det d) = 0`. `lambda_plus` always takes the `+`
/// branch of the root.
pub fn compute_s(g: &Generator) -> (Mat4, SpectralData) {
    let j = j2();
    let d = g.a * j * g.b + g.b * j * g.c;
    let det_d = d.det();
    let alpha1 = -(g.a.det() + g.b.det());
    let gamma1 = -(g.c.det() + g.b.det());

    let s = Mat4::from_blocks(
        Mat2::identity().scale(alpha1),
        j * d,
        -(j * d.transpose()),
        Mat2::identity().scale(gamma1),
    );

    let trace = alpha1 + gamma1;
    let discriminant = (alpha1 - gamma1) * (alpha1 - gamma1) + 4.0 * det_d;
    let (lambda_plus, lambda_minus, complex_pair) = if discriminant >= 0.0 {
        let root = discriminant.sqrt();
        (0.5 * (trace + root), 0.5 * (trace - root), false)
    } else {
        // Complex pair stored as (real part, +|imaginary part|).
        (0.5 * trace, 0.5 * (-discriminant).sqrt(), true)
    };

    (
        s,
        SpectralData {
            alpha1,
            beta1: 1.0,
            gamma1,
            d,
            det_d,
            lambda_plus,
            lambda_minus,
            discriminant,
            complex_pair,
        },
    )
}

/// Advances `(α, β, γ)` one step: the linear map generating the coefficients
/// of successive powers of `S`.
fn advance_coeffs(sd: &SpectralData, alpha: f64, beta: f64, gamma: f64) -> (f64, f64, f64) {
    (
        sd.alpha1 * alpha + sd.beta1 * sd.det_d * beta,
        sd.beta1 * alpha + sd.gamma1 * beta,
        sd.beta1 * sd.det_d * beta + sd.gamma1 * gamma,
    )
}

/// `(αₙ, βₙ, γₙ)` by iterating the coefficient recursion `n - 1` times from
/// `(α₁, 1, γ₁)`.
///
/// Panics if `n == 0`; the coefficients start at `n = 1`.
pub fn coeffs_recursive(sd: &SpectralData, n: u32) -> (f64, f64, f64) {
    assert!(n >= 1, "coefficient index starts at n = 1");
    let (mut alpha, mut beta, mut gamma) = (sd.alpha1, sd.beta1, sd.gamma1);
    for _ in 1..n {
        (alpha, beta, gamma) = advance_coeffs(sd, alpha, beta, gamma);
    }
    (alpha, beta, gamma)
}

/// `(αₙ, βₙ, γₙ)` in spectral closed form:
/// `αₙ = [(λ₊-γ₁)λ₊ⁿ - (λ₋-γ₁)λ₋ⁿ]/(λ₊-λ₋)`, `βₙ = (λ₊ⁿ-λ₋ⁿ)/(λ₊-λ₋)`,
/// `γₙ = [(λ₊-γ₁)λ₋ⁿ - (λ₋-γ₁)λ₊ⁿ]/(λ₊-λ₋)`.
///
/// Within [`CONFLUENT_DELTA`] of a double eigenvalue the divided differences
/// degenerate to `βₙ = nλⁿ⁻¹`, `αₙ/γₙ = λⁿ ± (λ-γ₁)nλⁿ⁻¹`. For a complex
/// pair the same expressions are evaluated through real and imaginary parts
/// of `λ₊ⁿ`, which keeps everything in real arithmetic.
///
/// Panics if `n == 0`.
pub fn coeffs_closed(sd: &SpectralData, n: u32) -> (f64, f64, f64) {
    assert!(n >= 1, "coefficient index starts at n = 1");
    let n_i = n as i32;

    if sd.complex_pair {
        let (re, im) = (sd.lambda_plus, sd.lambda_minus);
        if 2.0 * im < CONFLUENT_DELTA * re.hypot(im).max(1.0) {
            return confluent_power_coeffs(re, sd.gamma1, n_i);
        }
        // λ₊ⁿ by iterated complex multiplication.
        let (mut pr, mut pi) = (1.0_f64, 0.0_f64);
        for _ in 0..n {
            let next_r = pr * re - pi * im;
            pi = pr * im + pi * re;
            pr = next_r;
        }
        let ratio = pi / im; // Im(λ₊ⁿ) / Im(λ₊), real by conjugate symmetry
        let shift = re - sd.gamma1;
        return (pr + shift * ratio, ratio, pr - shift * ratio);
    }

    let (lp, lm) = (sd.lambda_plus, sd.lambda_minus);
    let gap = lp - lm;
    if gap.abs() < CONFLUENT_DELTA * lp.abs().max(1.0) {
        return confluent_power_coeffs(0.5 * (lp + lm), sd.gamma1, n_i);
    }
    let (wp, wm) = (lp - sd.gamma1, lm - sd.gamma1);
    let (pp, pm) = (lp.powi(n_i), lm.powi(n_i));
    (
        (wp * pp - wm * pm) / gap,
        (pp - pm) / gap,
        (wp * pm - wm * pp) / gap,
    )
}

fn confluent_power_coeffs(lambda: f64, gamma1: f64, n: i32) -> (f64, f64, f64) {
    let beta = n as f64 * lambda.powi(n - 1);
    let base = lambda.powi(n);
    let shift = lambda - gamma1;
    (base + shift * beta, beta, base - shift * beta)
}

/// `c(λ) = Σ λⁿ/(2n)!`, i.e. `cosh √λ` for `λ > 0` and `cos √(-λ)` for
/// `λ < 0`; summed as a series near zero.
pub fn entire_c(lambda: f64) -> f64 {
    if lambda > ENTIRE_SERIES_WINDOW {
        lambda.sqrt().cosh()
    } else if lambda < -ENTIRE_SERIES_WINDOW {
        (-lambda).sqrt().cos()
    } else {
        let mut sum = 1.0;
        let mut term = 1.0;
        for n in 1..=10u32 {
            term *= lambda / ((2 * n - 1) as f64 * (2 * n) as f64);
            sum += term;
        }
        sum
    }
}

/// `s(λ) = Σ λⁿ/(2n+1)!`, i.e. `sinh √λ / √λ` for `λ > 0` and
/// `sin √(-λ) / √(-λ)` for `λ < 0`; summed as a series near zero.
pub fn entire_s(lambda: f64) -> f64 {
    if lambda > ENTIRE_SERIES_WINDOW {
        let w = lambda.sqrt();
        w.sinh() / w
    } else if lambda < -ENTIRE_SERIES_WINDOW {
        let w = (-lambda).sqrt();
        w.sin() / w
    } else {
        let mut sum = 1.0;
        let mut term = 1.0;
        for n in 1..=10u32 {
            term *= lambda / ((2 * n) as f64 * (2 * n + 1) as f64);
            sum += term;
        }
        sum
    }
}

/// `c'(λ) = Σ n λⁿ⁻¹/(2n)!`; equals `s(λ)/2` identically.
fn entire_c1(lambda: f64) -> f64 {
    0.5 * entire_s(lambda)
}

/// `s'(λ) = Σ n λⁿ⁻¹/(2n+1)! = (c(λ) - s(λ)) / (2λ)`, with the series used
/// near zero where the quotient cancels.
fn entire_s1(lambda: f64) -> f64 {
    if lambda.abs() > ENTIRE_SERIES_WINDOW {
        (entire_c(lambda) - entire_s(lambda)) / (2.0 * lambda)
    } else {
        let mut sum = 0.0;
        // n λⁿ⁻¹ / (2n+1)! for n = 1..
        let mut power = 1.0;
        let mut factorial = 6.0; // (2n+1)! at n = 1
        for n in 1..=10u32 {
            sum += n as f64 * power / factorial;
            power *= lambda;
            factorial *= (2 * n + 2) as f64 * (2 * n + 3) as f64;
        }
        sum
    }
}

/// The six even/odd series coefficients of the exponential.
///
/// Distinct real eigenvalues evaluate the divided differences of `c` and `s`
/// directly; a nearly-degenerate pair uses the confluent derivative forms;
/// a complex pair falls back to partial sums of the coefficient recursion.
/// When `S` is exactly zero all six series are empty and the result is
/// `(1, 0, 1, 1, 0, 1)`.
pub fn series_coeffs(sd: &SpectralData) -> SeriesCoeffs {
    if sd.alpha1 == 0.0 && sd.gamma1 == 0.0 && sd.d == Mat2::zero() {
        return SeriesCoeffs {
            alpha_even: 1.0,
            beta_even: 0.0,
            gamma_even: 1.0,
            alpha_odd: 1.0,
            beta_odd: 0.0,
            gamma_odd: 1.0,
        };
    }

    if sd.complex_pair {
        return series_coeffs_partial_sums(sd);
    }

    let (lp, lm) = (sd.lambda_plus, sd.lambda_minus);
    let gap = lp - lm;
    if gap.abs() < CONFLUENT_DELTA * lp.abs().max(1.0) {
        let lambda = 0.5 * (lp + lm);
        let (c, s) = (entire_c(lambda), entire_s(lambda));
        let (c1, s1) = (entire_c1(lambda), entire_s1(lambda));
        let shift = lambda - sd.gamma1;
        return SeriesCoeffs {
            alpha_even: c + shift * c1,
            beta_even: c1,
            gamma_even: c - shift * c1,
            alpha_odd: s + shift * s1,
            beta_odd: s1,
            gamma_odd: s - shift * s1,
        };
    }

    let (cp, cm) = (entire_c(lp), entire_c(lm));
    let (sp, sm) = (entire_s(lp), entire_s(lm));
    let (wp, wm) = (lp - sd.gamma1, lm - sd.gamma1);
    SeriesCoeffs {
        alpha_even: (wp * cp - wm * cm) / gap,
        beta_even: (cp - cm) / gap,
        gamma_even: (wp * cm - wm * cp) / gap,
        alpha_odd: (wp * sp - wm * sm) / gap,
        beta_odd: (sp - sm) / gap,
        gamma_odd: (wp * sm - wm * sp) / gap,
    }
}

/// Sums `1 + Σ αₙ/(2n)!` and the five companions directly through the
/// coefficient recursion. Needs no eigenvalues, so it covers the
/// complex-pair case in real arithmetic.
fn series_coeffs_partial_sums(sd: &SpectralData) -> SeriesCoeffs {
    let (mut alpha, mut beta, mut gamma) = (sd.alpha1, sd.beta1, sd.gamma1);
    let mut even = [1.0_f64, 0.0, 1.0];
    let mut odd = [1.0_f64, 0.0, 1.0];
    let mut fact_even = 1.0_f64; // (2n)!
    let mut fact_odd = 1.0_f64; // (2n+1)!
    for n in 1..=PARTIAL_SUM_MAX_TERMS {
        let nf = n as f64;
        fact_even *= (2.0 * nf - 1.0) * (2.0 * nf);
        fact_odd *= 2.0 * nf * (2.0 * nf + 1.0);
        let terms = [
            alpha / fact_even,
            beta / fact_even,
            gamma / fact_even,
            alpha / fact_odd,
            beta / fact_odd,
            gamma / fact_odd,
        ];
        for (i, t) in terms.iter().enumerate() {
            if i < 3 {
                even[i] += t;
            } else {
                odd[i - 3] += t;
            }
        }
        let scale = even
            .iter()
            .chain(odd.iter())
            .fold(1.0_f64, |m, x| m.max(x.abs()));
        if terms.iter().all(|t| t.abs() <= 1e-16 * scale) {
            break;
        }
        (alpha, beta, gamma) = advance_coeffs(sd, alpha, beta, gamma);
    }
    SeriesCoeffs {
        alpha_even: even[0],
        beta_even: even[1],
        gamma_even: even[2],
        alpha_odd: odd[0],
        beta_odd: odd[1],
        gamma_odd: odd[2],
    }
}

/// The group element `exp(m) = E + m·O`, with `E` and `O` the block matrices
/// carrying the even and odd series coefficients.
pub fn exp_sp4(g: &Generator) -> Mat4 {
    let (_, sd) = compute_s(g);
    let k = series_coeffs(&sd);
    let j = j2();
    let jd = j * sd.d;
    let jdt = j * sd.d.transpose();
    let even = Mat4::from_blocks(
        Mat2::identity().scale(k.alpha_even),
        jd.scale(k.beta_even),
        -jdt.scale(k.beta_even),
        Mat2::identity().scale(k.gamma_even),
    );
    let odd = Mat4::from_blocks(
        Mat2::identity().scale(k.alpha_odd),
        jd.scale(k.beta_odd),
        -jdt.scale(k.beta_odd),
        Mat2::identity().scale(k.gamma_odd),
    );
    even + g.lie_matrix() * odd
}

/// The four 2×2 blocks of `exp(m)` written directly in terms of `(a, b, c)`:
///
/// ```text
/// A = αᵉ·1 + (αᵒ - βᵒ det b)·Ja + βᵒ·JbJcJbᵀ
/// B = (γᵒ - βᵒ det a)·Jb + βᵉ·(JaJb + JbJc) + βᵒ·JaJbJc
/// C = (αᵒ - βᵒ det c)·Jbᵀ + βᵉ·(JbᵀJa + JcJbᵀ) + βᵒ·JcJbᵀJa
/// D = γᵉ·1 + (γᵒ - βᵒ det b)·Jc + βᵒ·JbᵀJaJb
/// ```
pub fn blocks_abcd(g: &Generator) -> (Mat2, Mat2, Mat2, Mat2) {
    let (_, sd) = compute_s(g);
    let k = series_coeffs(&sd);
    let j = j2();
    let (ja, jb, jc) = (j * g.a, j * g.b, j * g.c);
    let jbt = j * g.b.transpose();
    let (det_a, det_b, det_c) = (g.a.det(), g.b.det(), g.c.det());

    let a_block = Mat2::identity().scale(k.alpha_even)
        + ja.scale(k.alpha_odd - k.beta_odd * det_b)
        + (jb * jc * jbt).scale(k.beta_odd);
    let b_block = jb.scale(k.gamma_odd - k.beta_odd * det_a)
        + (ja * jb + jb * jc).scale(k.beta_even)
        + (ja * jb * jc).scale(k.beta_odd);
    let c_block = jbt.scale(k.alpha_odd - k.beta_odd * det_c)
        + (jbt * ja + jc * jbt).scale(k.beta_even)
        + (jc * jbt * ja).scale(k.beta_odd);
    let d_block = Mat2::identity().scale(k.gamma_even)
        + jc.scale(k.gamma_odd - k.beta_odd * det_b)
        + (jbt * ja * jb).scale(k.beta_odd);

    (a_block, b_block, c_block, d_block)
}

/// `exp(m)` for `b = 0`: block-diagonal with the two `Sp(2,R)` factors
/// `c(-det a)·1 + s(-det a)·Ja` and `c(-det c)·1 + s(-det c)·Jc`.
///
/// Panics if `a` or `c` is not symmetric.
pub fn exp_sp4_b_zero(a: Mat2, c: Mat2) -> Mat4 {
    assert!(
        a.is_symmetric() && c.is_symmetric(),
        "a and c must be symmetric"
    );
    let j = j2();
    let block = |x: Mat2| -> Mat2 {
        let lambda = -x.det();
        Mat2::identity().scale(entire_c(lambda)) + (j * x).scale(entire_s(lambda))
    };
    Mat4::from_blocks(block(a), Mat2::zero(), Mat2::zero(), block(c))
}

/// `exp(m)` for `a = c = 0`:
/// `[[c(-det b)·1, s(-det b)·Jb], [s(-det b)·Jbᵀ, c(-det b)·1]]`.
pub fn exp_sp4_ac_zero(b: Mat2) -> Mat4 {
    let lambda = -b.det();
    let j = j2();
    let diag = Mat2::identity().scale(entire_c(lambda));
    let s = entire_s(lambda);
    Mat4::from_blocks(diag, (j * b).scale(s), (j * b.transpose()).scale(s), diag)
}

/// Entrywise ∞-norm of `MΩMᵀ - Ω`; zero exactly on `Sp(4,R)`.
///
/// Shared by the oracle module; lives here so the expmap tests can use it
/// without a cycle.
pub(crate) fn symplectic_defect(m: &Mat4) -> f64 {
    let omega = omega4();
    (*m * omega * m.transpose()).max_abs_diff(&omega)
}
