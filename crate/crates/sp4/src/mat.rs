//! Fixed-size 2×2 and 4×4 real matrices plus the structure matrices `J` and
//! `Ω = diag(J, J)`.
//!
//! Plain value types over row-major `f64` arrays. Comparisons are meant to be
//! done entrywise; [`Mat2::max_abs_diff`] / [`Mat4::max_abs_diff`] return the
//! entrywise ∞-norm of the difference and every tolerance in this crate is
//! expressed against that norm.

use std::ops::{Add, Mul, Neg, Sub};

/// A 2×2 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat2(pub [[f64; 2]; 2]);

/// A 4×4 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat4(pub [[f64; 4]; 4]);

/// The single-mode symplectic unit `J = [[0, 1], [-1, 0]]`.
pub fn j2() -> Mat2 {
    Mat2([[0.0, 1.0], [-1.0, 0.0]])
}

/// The two-mode symplectic form `Ω = diag(J, J)` in `(q1, p1, q2, p2)` ordering.
pub fn omega4() -> Mat4 {
    Mat4::from_blocks(j2(), Mat2::zero(), Mat2::zero(), j2())
}

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[0.0; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[1.0, 0.0], [0.0, 1.0]])
    }

    /// Determinant `ad - bc`.
    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn transpose(&self) -> Self {
        Mat2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        out
    }

    /// Whether the matrix equals its transpose exactly.
    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    /// Exact symmetrization `(X + Xᵀ) / 2`.
    pub fn symmetrized(&self) -> Self {
        let off = 0.5 * (self.0[0][1] + self.0[1][0]);
        Mat2([[self.0[0][0], off], [off, self.0[1][1]]])
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Entrywise ∞-norm of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[0.0; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = 1.0;
        }
        m
    }

    /// Assembles `[[ul, ur], [ll, lr]]` from 2×2 blocks.
    pub fn from_blocks(ul: Mat2, ur: Mat2, ll: Mat2, lr: Mat2) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = ul.0[i][j];
                m.0[i][j + 2] = ur.0[i][j];
                m.0[i + 2][j] = ll.0[i][j];
                m.0[i + 2][j + 2] = lr.0[i][j];
            }
        }
        m
    }

    /// Extracts the 2×2 block with block indices `bi, bj ∈ {0, 1}`.
    pub fn block(&self, bi: usize, bj: usize) -> Mat2 {
        assert!(bi < 2 && bj < 2, "block index out of range");
        let mut b = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                b.0[i][j] = self.0[2 * bi + i][2 * bj + j];
            }
        }
        b
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        out
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let minor = |r: usize, c: usize| -> f64 {
            let mut sub = [[0.0; 3]; 3];
            let (mut si, mut sj);
            si = 0;
            for i in 0..4 {
                if i == r {
                    continue;
                }
                sj = 0;
                for j in 0..4 {
                    if j == c {
                        continue;
                    }
                    sub[si][sj] = self.0[i][j];
                    sj += 1;
                }
                si += 1;
            }
            sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
                - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
                + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0])
        };
        let mut det = 0.0;
        let mut sign = 1.0;
        for c in 0..4 {
            det += sign * self.0[0][c] * minor(0, c);
            sign = -sign;
        }
        det
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Operator ∞-norm: maximum absolute row sum. This is the norm used for
    /// matrix-size bounds (scaling decisions, norm caps); entrywise
    /// comparisons go through [`Mat4::max_abs_diff`].
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum())
            .fold(0.0_f64, f64::max)
    }

    /// Entrywise ∞-norm of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

macro_rules! impl_mat_ops {
    ($ty:ty, $n:literal) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                let mut out = self;
                for i in 0..$n {
                    for j in 0..$n {
                        out.0[i][j] += rhs.0[i][j];
                    }
                }
                out
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                let mut out = self;
                for i in 0..$n {
                    for j in 0..$n {
                        out.0[i][j] -= rhs.0[i][j];
                    }
                }
                out
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.scale(-1.0)
            }
        }

        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                let mut out = <$ty>::zero();
                for i in 0..$n {
                    for j in 0..$n {
                        let mut acc = 0.0;
                        for k in 0..$n {
                            acc += self.0[i][k] * rhs.0[k][j];
                        }
                        out.0[i][j] = acc;
                    }
                }
                out
            }
        }
    };
}

impl_mat_ops!(Mat2, 2);
impl_mat_ops!(Mat4, 4);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn j2_structure() {
        assert_eq!(j2(), Mat2([[0.0, 1.0], [-1.0, 0.0]]));
        // J² = -1 and Jᵀ = -J hold exactly.
        assert_eq!(j2() * j2(), -Mat2::identity());
        assert_eq!(j2().transpose(), -j2());
        assert_eq!(j2().det(), 1.0);
    }

    #[test]
    fn omega4_structure() {
        let omega = omega4();
        assert_eq!(omega.block(0, 0), j2());
        assert_eq!(omega.block(1, 1), j2());
        assert_eq!(omega.block(0, 1), Mat2::zero());
        assert_eq!(omega.block(1, 0), Mat2::zero());
        assert_eq!(omega * omega, -Mat4::identity());
        assert_eq!(omega.transpose() * omega, Mat4::identity());
    }

    #[test]
    fn det2_values() {
        assert_eq!(Mat2::identity().det(), 1.0);
        assert_eq!(Mat2([[2.0, 3.0], [1.0, 4.0]]).det(), 5.0);
    }

    #[test]
    fn det4_values() {
        assert_eq!(Mat4::identity().det(), 1.0);
        assert_eq!(omega4().det(), 1.0);
        let mut diag = Mat4::identity();
        diag.0[0][0] = 2.0;
        diag.0[2][2] = -3.0;
        assert_eq!(diag.det(), -6.0);
    }

    #[test]
    fn add_and_identity_mul() {
        let x = Mat2([[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(Mat2::identity() + x, Mat2([[2.0, 2.0], [3.0, 5.0]]));
        let mut y = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                y.0[i][j] = (4 * i + j) as f64;
            }
        }
        assert_eq!(Mat4::identity() * y, y);
        assert_eq!(y.max_abs_diff(&y), 0.0);
    }

    #[test]
    fn block_roundtrip() {
        let a = Mat2([[1.0, 2.0], [3.0, 4.0]]);
        let b = Mat2([[5.0, 6.0], [7.0, 8.0]]);
        let c = Mat2([[9.0, 10.0], [11.0, 12.0]]);
        let d = Mat2([[13.0, 14.0], [15.0, 16.0]]);
        let m = Mat4::from_blocks(a, b, c, d);
        assert_eq!(m.block(0, 0), a);
        assert_eq!(m.block(0, 1), b);
        assert_eq!(m.block(1, 0), c);
        assert_eq!(m.block(1, 1), d);
    }

    fn bounded() -> impl Strategy<Value = f64> {
        -10.0_f64..10.0_f64
    }

    fn mat4_strategy() -> impl Strategy<Value = Mat4> {
        proptest::array::uniform4(proptest::array::uniform4(bounded())).prop_map(Mat4)
    }

    proptest! {
        #[test]
        fn transpose_involution(m in mat4_strategy()) {
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn matmul_associative(a in mat4_strategy(), b in mat4_strategy(), c in mat4_strategy()) {
            let lhs = (a * b) * c;
            let rhs = a * (b * c);
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13 * scale);
        }

        #[test]
        fn transpose_of_product(a in mat4_strategy(), b in mat4_strategy()) {
            prop_assert_eq!((a * b).transpose(), b.transpose() * a.transpose());
        }
    }
}
