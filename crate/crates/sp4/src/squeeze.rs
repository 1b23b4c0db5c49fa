//! Two-mode squeezing as a classical canonical transformation.
//!
//! The squeeze amplitude `ζ = r·e^{2iφ}` together with the oscillator length
//! scales `l₁`, `l₂` and the action unit `ħ` fixes a pure-coupling generator
//! block `b`; exponentiating `(0, b, 0)` produces the squeeze matrix
//! `M_s(r, φ)`. The module also carries the reference correlation matrix of
//! the two-mode squeezed vacuum for the factor-two comparison, and circular
//! phase-space trajectories for visualizing the squeezing action.

use crate::mat::{Mat2, Mat4};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SqueezeError {
    #[error("squeeze magnitude r must be non-negative, got {0}")]
    NegativeMagnitude(f64),
    #[error("scale `{name}` must be strictly positive, got {value}")]
    NonPositiveScale { name: &'static str, value: f64 },
}

/// Parameters of the squeeze transformation: magnitude `r ≥ 0`, angle `φ`
/// (entering only through `2φ`), oscillator lengths `l_j = √(ħ/(m_j ω_j))`
/// and the action unit `ħ`. All units are the caller's responsibility.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParams {
    pub r: f64,
    pub phi: f64,
    pub l1: f64,
    pub l2: f64,
    pub hbar: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, phi: f64, l1: f64, l2: f64, hbar: f64) -> Result<Self, SqueezeError> {
        if r.is_nan() || r < 0.0 {
            return Err(SqueezeError::NegativeMagnitude(r));
        }
        for (name, value) in [("l1", l1), ("l2", l2), ("hbar", hbar)] {
            if value.is_nan() || value <= 0.0 {
                return Err(SqueezeError::NonPositiveScale { name, value });
            }
        }
        Ok(SqueezeParams {
            r,
            phi,
            l1,
            l2,
            hbar,
        })
    }

    /// Unit scales `l₁ = l₂ = ħ = 1`.
    pub fn isotropic(r: f64, phi: f64) -> Result<Self, SqueezeError> {
        Self::new(r, phi, 1.0, 1.0, 1.0)
    }

    /// Real part of `ζ`: `r·cos 2φ`.
    pub fn zeta_x(&self) -> f64 {
        self.r * (2.0 * self.phi).cos()
    }

    /// Imaginary part of `ζ`: `r·sin 2φ`.
    pub fn zeta_y(&self) -> f64 {
        self.r * (2.0 * self.phi).sin()
    }
}

/// The coupling block of the squeeze generator:
/// `[[ħζy/(l₁l₂), -l₂ζx/l₁], [-l₁ζx/l₂, -l₁l₂ζy/ħ]]`, with `det b = -r²`.
pub fn squeeze_b(p: &SqueezeParams) -> Mat2 {
    let (zx, zy) = (p.zeta_x(), p.zeta_y());
    Mat2([
        [p.hbar * zy / (p.l1 * p.l2), -p.l2 * zx / p.l1],
        [-p.l1 * zx / p.l2, -p.l1 * p.l2 * zy / p.hbar],
    ])
}

/// The squeeze matrix `M_s(r, φ)` in explicit form: `cosh r` on the
/// diagonal, `sinh r` couplings between the modes weighted by `cos 2φ`,
/// `sin 2φ` and the scale ratios.
///
/// Agrees with `exp_sp4_ac_zero(squeeze_b(p))` entrywise; this constructor
/// is the frozen reference, the exponential route is the cross-check.
pub fn squeeze_matrix(p: &SqueezeParams) -> Mat4 {
    let (ch, sh) = (p.r.cosh(), p.r.sinh());
    let (c2, s2) = ((2.0 * p.phi).cos(), (2.0 * p.phi).sin());
    let (l1, l2, hbar) = (p.l1, p.l2, p.hbar);
    Mat4([
        [ch, 0.0, -sh * c2 * l1 / l2, -sh * s2 * l1 * l2 / hbar],
        [0.0, ch, -sh * s2 * hbar / (l1 * l2), sh * c2 * l2 / l1],
        [-sh * c2 * l2 / l1, -sh * s2 * l1 * l2 / hbar, ch, 0.0],
        [-sh * s2 * hbar / (l1 * l2), sh * c2 * l1 / l2, 0.0, ch],
    ])
}

/// Correlation matrix of the two-mode squeezed vacuum,
/// `(1/4)·[[cosh 2r, 0, sinh 2r, 0], …]`.
///
/// All four diagonal entries are `cosh 2r`; the (4,4) entry follows the same
/// pattern as the other three, which the symmetry of the second moments and
/// the factor-two comparison both require.
pub fn correlation_matrix(r: f64) -> Mat4 {
    assert!(r >= 0.0, "squeeze magnitude must be non-negative");
    let (c2, s2) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    Mat4([
        [c2, 0.0, s2, 0.0],
        [0.0, c2, 0.0, -s2],
        [s2, 0.0, c2, 0.0],
        [0.0, -s2, 0.0, c2],
    ])
    .scale(0.25)
}

/// `‖4·V(r) - M_s(2r, π/2)‖∞` at unit scales: the squeeze matrix needs twice
/// the magnitude to reproduce the correlation-matrix entries.
pub fn factor_two_check(r: f64) -> f64 {
    let reference = correlation_matrix(r).scale(4.0);
    let p = SqueezeParams::isotropic(2.0 * r, std::f64::consts::FRAC_PI_2)
        .expect("magnitude is non-negative");
    reference.max_abs_diff(&squeeze_matrix(&p))
}

/// One phase-space point `(q1, p1, q2, p2)` at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub q1: f64,
    pub p1: f64,
    pub q2: f64,
    pub p2: f64,
}

/// A sampled phase-space path with strictly increasing `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
}

/// Samples the free evolution `q_j(t) = cos t·q_j + sin t·p_j`,
/// `p_j(t) = -sin t·q_j + cos t·p_j` on a uniform endpoint-inclusive grid of
/// `steps` points over `[t0, t1]`.
///
/// Panics unless `steps ≥ 2` and `t1 > t0`.
pub fn circular_trajectory(
    q: (f64, f64),
    p: (f64, f64),
    t0: f64,
    t1: f64,
    steps: usize,
) -> Trajectory {
    assert!(steps >= 2, "need at least two samples");
    assert!(t1 > t0, "time range must be increasing");
    let dt = (t1 - t0) / (steps - 1) as f64;
    let samples = (0..steps)
        .map(|i| {
            let t = t0 + i as f64 * dt;
            let (ct, st) = (t.cos(), t.sin());
            TrajectorySample {
                t,
                q1: ct * q.0 + st * p.0,
                p1: -st * q.0 + ct * p.0,
                q2: ct * q.1 + st * p.1,
                p2: -st * q.1 + ct * p.1,
            }
        })
        .collect();
    Trajectory { samples }
}

/// Applies `M` to every sample's phase-space vector, keeping `t`.
pub fn transform_trajectory(traj: &Trajectory, m: &Mat4) -> Trajectory {
    let samples = traj
        .samples
        .iter()
        .map(|s| {
            let v = [s.q1, s.p1, s.q2, s.p2];
            let mut out = [0.0_f64; 4];
            for (i, row) in m.0.iter().enumerate() {
                out[i] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
            }
            TrajectorySample {
                t: s.t,
                q1: out[0],
                p1: out[1],
                q2: out[2],
                p2: out[3],
            }
        })
        .collect();
    Trajectory { samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expmap::{exp_sp4, exp_sp4_ac_zero, Generator};
    use crate::mat::omega4;
    use crate::oracle::symplectic_residual;
    use proptest::prelude::*;

    const COSH_06: f64 = 1.1854652182422676;
    const SINH_06: f64 = 0.6366535821482412;

    #[test]
    fn params_validation() {
        assert!(SqueezeParams::new(-0.1, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(SqueezeParams::new(0.1, 0.0, 0.0, 1.0, 1.0).is_err());
        assert!(SqueezeParams::new(0.1, 0.0, 1.0, -2.0, 1.0).is_err());
        assert!(SqueezeParams::new(0.1, 0.0, 1.0, 1.0, 0.0).is_err());
        assert!(SqueezeParams::new(f64::NAN, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(SqueezeParams::isotropic(0.0, 1.3).is_ok());
    }

    #[test]
    fn zeta_components_square_to_r() {
        for (r, phi) in [(0.0, 0.0), (0.3, 0.7), (2.0, -1.9), (5.0, 12.0)] {
            let p = SqueezeParams::isotropic(r, phi).unwrap();
            let sum = p.zeta_x().powi(2) + p.zeta_y().powi(2);
            assert!((sum - r * r).abs() <= 1e-14 * (r * r).max(1.0));
        }
    }

    #[test]
    fn squeeze_b_values() {
        let zero = SqueezeParams::isotropic(0.0, 0.4).unwrap();
        assert_eq!(squeeze_b(&zero), Mat2::zero());

        let p = SqueezeParams::isotropic(1.0, 0.0).unwrap();
        assert!(squeeze_b(&p).max_abs_diff(&Mat2([[0.0, -1.0], [-1.0, 0.0]])) <= 1e-15);
    }

    #[test]
    fn squeeze_b_determinant() {
        for (r, phi, l1, l2, hbar) in [
            (0.3, 0.2, 1.0, 1.0, 1.0),
            (1.7, -0.9, 0.5, 2.0, 1.0),
            (4.0, 2.4, 3.0, 0.1, 7.0),
        ] {
            let p = SqueezeParams::new(r, phi, l1, l2, hbar).unwrap();
            assert!((squeeze_b(&p).det() + r * r).abs() <= 1e-13 * (r * r).max(1.0));
        }
    }

    #[test]
    fn squeeze_matrix_at_zero_is_identity() {
        let p = SqueezeParams::isotropic(0.0, 0.9).unwrap();
        assert_eq!(squeeze_matrix(&p), Mat4::identity());
    }

    #[test]
    fn squeeze_matrix_phi_half_pi() {
        let r: f64 = 0.6;
        let p = SqueezeParams::isotropic(r, std::f64::consts::FRAC_PI_2).unwrap();
        let m = squeeze_matrix(&p);
        let expected = Mat4([
            [COSH_06, 0.0, SINH_06, 0.0],
            [0.0, COSH_06, 0.0, -SINH_06],
            [SINH_06, 0.0, COSH_06, 0.0],
            [0.0, -SINH_06, 0.0, COSH_06],
        ]);
        assert!(m.max_abs_diff(&expected) <= 1e-15);
    }

    #[test]
    fn squeeze_matrix_is_symplectic() {
        for (r, phi, l1, l2, hbar) in [
            (0.6, 0.0, 1.0, 1.0, 1.0),
            (1.2, 0.7, 0.5, 2.0, 1.0),
            (3.0, -2.1, 2.0, 0.3, 5.0),
        ] {
            let p = SqueezeParams::new(r, phi, l1, l2, hbar).unwrap();
            assert!(symplectic_residual(&squeeze_matrix(&p)) <= 1e-11);
        }
    }

    #[test]
    fn squeeze_matrix_matches_exponential_routes() {
        for (r, phi, l1, l2, hbar) in [
            (0.0, 0.3, 1.0, 1.0, 1.0),
            (0.6, 0.0, 1.0, 1.0, 1.0),
            (1.0, 0.39, 0.5, 2.0, 1.0),
            (2.5, 1.2, 1.0, 1.0, 3.0),
            (5.0, -0.8, 0.1, 10.0, 2.0),
        ] {
            let p = SqueezeParams::new(r, phi, l1, l2, hbar).unwrap();
            let reference = squeeze_matrix(&p);
            let b = squeeze_b(&p);
            assert!(reference.max_abs_diff(&exp_sp4_ac_zero(b)) <= 1e-12);
            let g = Generator::new(Mat2::zero(), b, Mat2::zero()).unwrap();
            assert!(reference.max_abs_diff(&exp_sp4(&g)) <= 1e-12);
        }
    }

    #[test]
    fn correlation_matrix_values() {
        assert_eq!(correlation_matrix(0.0), Mat4::identity().scale(0.25));
        let v = correlation_matrix(0.3);
        assert!((v.0[0][0] - 0.2963663045605669).abs() <= 1e-15);
        assert_eq!(v.transpose(), v);
        // All four diagonal entries share cosh 2r.
        assert_eq!(v.0[3][3], v.0[0][0]);
    }

    #[test]
    fn factor_two_residuals() {
        assert_eq!(factor_two_check(0.0), 0.0);
        assert!(factor_two_check(0.3) <= 1e-12);
        assert!(factor_two_check(2.0) <= 1e-10);
        assert!(factor_two_check(5.0) <= 1e-10);
    }

    #[test]
    fn hbar_cancels_at_fixed_frequency() {
        // With l_j = √(ħ/(m_j ω_j)) and m_j ω_j fixed, ħ drops out.
        let reference = {
            let p = SqueezeParams::new(0.6, 0.9, 1.0, 1.0, 1.0).unwrap();
            squeeze_matrix(&p)
        };
        for hbar in [0.1_f64, 10.0] {
            let l = hbar.sqrt();
            let p = SqueezeParams::new(0.6, 0.9, l, l, hbar).unwrap();
            assert!(squeeze_matrix(&p).max_abs_diff(&reference) <= 1e-12);
        }
    }

    #[test]
    fn circular_trajectory_grid_and_values() {
        let traj = circular_trajectory((1.0, 0.0), (0.0, 0.0), 0.0, 1.0, 2);
        assert_eq!(traj.samples.len(), 2);
        let first = traj.samples[0];
        assert_eq!(
            (first.q1, first.p1, first.q2, first.p2),
            (1.0, 0.0, 0.0, 0.0)
        );

        // t = π/2 with q = p = (1, 1) lands on (1, -1, 1, -1).
        let traj = circular_trajectory((1.0, 1.0), (1.0, 1.0), 0.0, std::f64::consts::PI, 3);
        let mid = traj.samples[1];
        assert!((mid.q1 - 1.0).abs() <= 1e-15);
        assert!((mid.p1 + 1.0).abs() <= 1e-15);
        assert!((mid.q2 - 1.0).abs() <= 1e-15);
        assert!((mid.p2 + 1.0).abs() <= 1e-15);
    }

    #[test]
    #[should_panic(expected = "at least two samples")]
    fn circular_trajectory_rejects_single_step() {
        circular_trajectory((1.0, 0.0), (0.0, 0.0), 0.0, 1.0, 1);
    }

    #[test]
    fn rotation_preserves_radius() {
        let traj = circular_trajectory((0.8, -0.2), (0.5, 0.9), 0.0, 7.0, 113);
        let r1 = 0.8_f64.powi(2) + 0.5_f64.powi(2);
        for s in &traj.samples {
            assert!((s.q1 * s.q1 + s.p1 * s.p1 - r1).abs() <= 1e-13);
        }
    }

    #[test]
    fn identity_transform_is_noop() {
        let traj = circular_trajectory((1.0, 0.0), (0.0, 1.0), 0.0, 6.0, 50);
        assert_eq!(transform_trajectory(&traj, &Mat4::identity()), traj);
        let p = SqueezeParams::isotropic(0.0, 0.7).unwrap();
        assert_eq!(transform_trajectory(&traj, &squeeze_matrix(&p)), traj);
    }

    #[test]
    fn squeezed_circle_radius_with_resting_mode2() {
        // Mode 2 at rest decouples: the transformed mode-1 radius is
        // cosh(r) times the input radius at every sample.
        let r: f64 = 0.6;
        let p = SqueezeParams::isotropic(r, 0.0).unwrap();
        let circle =
            circular_trajectory((1.0, 0.0), (0.0, 0.0), 0.0, 2.0 * std::f64::consts::PI, 128);
        let squeezed = transform_trajectory(&circle, &squeeze_matrix(&p));
        let max_radius = squeezed
            .samples
            .iter()
            .map(|s| (s.q1 * s.q1 + s.p1 * s.p1).sqrt())
            .fold(0.0_f64, f64::max);
        assert!((max_radius - COSH_06).abs() <= 1e-10);
    }

    proptest! {
        #[test]
        fn one_parameter_subgroup(r1 in 0.0_f64..2.5, r2 in 0.0_f64..2.5, phi in -3.2_f64..3.2) {
            let m1 = squeeze_matrix(&SqueezeParams::isotropic(r1, phi).unwrap());
            let m2 = squeeze_matrix(&SqueezeParams::isotropic(r2, phi).unwrap());
            let sum = squeeze_matrix(&SqueezeParams::isotropic(r1 + r2, phi).unwrap());
            prop_assert!((m1 * m2).max_abs_diff(&sum) <= 1e-10);
        }

        #[test]
        fn transform_preserves_symplectic_form(
            r in 0.0_f64..3.0,
            phi in -3.2_f64..3.2,
            q in proptest::array::uniform2(-2.0_f64..2.0),
            p in proptest::array::uniform2(-2.0_f64..2.0),
        ) {
            let m = squeeze_matrix(&SqueezeParams::isotropic(r, phi).unwrap());
            let traj = circular_trajectory((q[0], q[1]), (p[0], p[1]), 0.0, 3.0, 7);
            let out = transform_trajectory(&traj, &m);
            let omega = omega4();
            let pairing = |u: &TrajectorySample, v: &TrajectorySample| -> f64 {
                let a = [u.q1, u.p1, u.q2, u.p2];
                let b = [v.q1, v.p1, v.q2, v.p2];
                let mut acc = 0.0;
                for (ai, row) in a.iter().zip(omega.0.iter()) {
                    for (oij, bj) in row.iter().zip(b.iter()) {
                        acc += ai * oij * bj;
                    }
                }
                acc
            };
            let before = pairing(&traj.samples[0], &traj.samples[3]);
            let after = pairing(&out.samples[0], &out.samples[3]);
            prop_assert!((before - after).abs() <= 1e-10);
        }
    }
}
