//! The exceptional Jordan algebra `H₃(𝕆)` and 2×2 octonionic Hermitian matrices.
//!
//! A Jordan matrix is laid out as
//!
//! ```text
//! ⎡ p  ā  c ⎤
//! ⎢ a  m  b̄ ⎥
//! ⎣ c̄  b  n ⎦
//! ```
//!
//! and vectorizes to 27 real coordinates in the order
//! `(p, m, n, a₀..a₇, b₀..b₇, c₀..c₇)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cubic;
use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::transform::{complex_check, HermitianMatrix, NestedMap3, OctMatrix, OctMatrix2, OctMatrix3};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct JordanMatrix {
    /// `[p, m, n]`
    pub diag: [f64; 3],
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
}

impl JordanMatrix {
    pub fn new(diag: [f64; 3], a: Octonion, b: Octonion, c: Octonion) -> Self {
        JordanMatrix { diag, a, b, c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::diagonal(1.0, 1.0, 1.0)
    }

    pub fn diagonal(p: f64, m: f64, n: f64) -> Self {
        JordanMatrix {
            diag: [p, m, n],
            ..Default::default()
        }
    }

    /// Diagonal matrix unit `E_kk`.
    pub fn unit_diag(k: usize) -> Self {
        let mut d = [0.0; 3];
        d[k] = 1.0;
        Self::diagonal(d[0], d[1], d[2])
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn vectorize(&self) -> [f64; 27] {
        let mut v = [0.0; 27];
        v[..3].copy_from_slice(&self.diag);
        v[3..11].copy_from_slice(&self.a.0);
        v[11..19].copy_from_slice(&self.b.0);
        v[19..27].copy_from_slice(&self.c.0);
        v
    }

    pub fn devectorize(v: &[f64; 27]) -> Self {
        let oct = |s: &[f64]| {
            let mut c = [0.0; 8];
            c.copy_from_slice(s);
            Octonion(c)
        };
        JordanMatrix {
            diag: [v[0], v[1], v[2]],
            a: oct(&v[3..11]),
            b: oct(&v[11..19]),
            c: oct(&v[19..27]),
        }
    }

    /// The Jordan matrix whose `j`-th coordinate is 1 and all others 0.
    pub fn basis(j: usize) -> Self {
        let mut v = [0.0; 27];
        v[j] = 1.0;
        Self::devectorize(&v)
    }

    pub fn scale(&self, s: f64) -> Self {
        JordanMatrix {
            diag: [self.diag[0] * s, self.diag[1] * s, self.diag[2] * s],
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
        }
    }

    /// `sqrt(tr(X∘X))`, the Frobenius norm of the full octonionic matrix.
    pub fn norm(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|v| v * v).sum();
        (d + 2.0 * (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr())).sqrt()
    }

    /// Largest coordinate difference, measured per entry (octonion norm for
    /// off-diagonal slots).
    pub fn max_diff(&self, other: &JordanMatrix) -> f64 {
        let mut d = 0.0_f64;
        for k in 0..3 {
            d = d.max((self.diag[k] - other.diag[k]).abs());
        }
        d.max((self.a - other.a).norm())
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.max_diff(&JordanMatrix::zero())
    }

    /// Splits off the upper-left 2×2 block, the spinor column `θ = (c, b̄)`
    /// and the trailing diagonal entry.
    pub fn split_block(&self) -> (Hermitian2, [Octonion; 2], f64) {
        (
            Hermitian2::new([self.diag[0], self.diag[1]], self.a),
            [self.c, self.b.conj()],
            self.diag[2],
        )
    }

    /// Inverse of [`JordanMatrix::split_block`].
    pub fn from_block(x: &Hermitian2, theta: &[Octonion; 2], n: f64) -> Self {
        JordanMatrix {
            diag: [x.diag[0], x.diag[1], n],
            a: x.off,
            b: theta[1].conj(),
            c: theta[0],
        }
    }

    /// `½(XY + YX)`, from the raw octonionic matrix products.
    pub fn jordan(&self, other: &JordanMatrix) -> JordanMatrix {
        let (x, y) = (self.to_oct(), other.to_oct());
        JordanMatrix::from_oct(&((x * y) + (y * x)).scale(0.5))
    }

    /// `X² = X∘X`.
    pub fn square(&self) -> JordanMatrix {
        self.jordan(self)
    }

    /// `X³ = X²∘X`.
    pub fn cube(&self) -> JordanMatrix {
        self.square().jordan(self)
    }

    /// Freudenthal product
    /// `X∘Y − ½(X tr Y + Y tr X) − ½(tr(X∘Y) − tr X tr Y) I`.
    pub fn freudenthal(&self, other: &JordanMatrix) -> JordanMatrix {
        let xy = self.jordan(other);
        let (tx, ty) = (self.trace(), other.trace());
        let shift = 0.5 * (xy.trace() - tx * ty);
        xy - (self.scale(ty) + other.scale(tx)).scale(0.5) - JordanMatrix::identity().scale(shift)
    }

    /// Triple product `(X * Y) ∘ Z`.
    pub fn triple(&self, y: &JordanMatrix, z: &JordanMatrix) -> JordanMatrix {
        self.freudenthal(y).jordan(z)
    }

    /// `⅓ tr [X, X, X]`.
    pub fn det(&self) -> f64 {
        self.triple(self, self).trace() / 3.0
    }

    /// `σ(X) = tr(X * X)`.
    pub fn sigma(&self) -> f64 {
        self.freudenthal(self).trace()
    }

    /// `σ(X) = ½((tr X)² − tr(X²))`.
    pub fn sigma_from_traces(&self) -> f64 {
        let t = self.trace();
        0.5 * (t * t - self.square().trace())
    }

    /// `(tr X, σ(X), det X)`, the coefficients of the characteristic cubic.
    pub fn invariants(&self) -> (f64, f64, f64) {
        (self.trace(), self.sigma(), self.det())
    }

    /// `X³ − (tr X) X² + σ(X) X − (det X) I`.
    pub fn char_residual(&self) -> JordanMatrix {
        let (t, s, d) = self.invariants();
        let x2 = self.square();
        let x3 = x2.jordan(self);
        x3 - x2.scale(t) + self.scale(s) - JordanMatrix::identity().scale(d)
    }

    /// Roots of the characteristic cubic, in decreasing order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let (t, s, d) = self.invariants();
        cubic::characteristic_roots(t, s, d)
    }

    /// Discriminant of the characteristic cubic; nonnegative up to roundoff
    /// since all roots are real.
    pub fn discriminant(&self) -> f64 {
        let (t, s, d) = self.invariants();
        cubic::discriminant(t, s, d)
    }
}

impl HermitianMatrix<3> for JordanMatrix {
    fn to_oct(&self) -> OctMatrix3 {
        let [p, m, n] = self.diag;
        let (a, b, c) = (self.a, self.b, self.c);
        OctMatrix([
            [Octonion::real(p), a.conj(), c],
            [a, Octonion::real(m), b.conj()],
            [c.conj(), b, Octonion::real(n)],
        ])
    }

    fn from_oct(x: &OctMatrix3) -> Self {
        let h = |lower: Octonion, upper: Octonion| (lower + upper.conj()) * 0.5;
        JordanMatrix {
            diag: [x.0[0][0].re(), x.0[1][1].re(), x.0[2][2].re()],
            a: h(x.0[1][0], x.0[0][1]),
            b: h(x.0[2][1], x.0[1][2]),
            c: h(x.0[0][2], x.0[2][0]),
        }
    }
}

impl Add for JordanMatrix {
    type Output = JordanMatrix;
    fn add(self, rhs: JordanMatrix) -> JordanMatrix {
        JordanMatrix {
            diag: [
                self.diag[0] + rhs.diag[0],
                self.diag[1] + rhs.diag[1],
                self.diag[2] + rhs.diag[2],
            ],
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c + rhs.c,
        }
    }
}

impl Sub for JordanMatrix {
    type Output = JordanMatrix;
    fn sub(self, rhs: JordanMatrix) -> JordanMatrix {
        self + rhs.scale(-1.0)
    }
}

impl Neg for JordanMatrix {
    type Output = JordanMatrix;
    fn neg(self) -> JordanMatrix {
        self.scale(-1.0)
    }
}

impl Mul<f64> for JordanMatrix {
    type Output = JordanMatrix;
    fn mul(self, s: f64) -> JordanMatrix {
        self.scale(s)
    }
}

/// `[[x₁, ā], [a, x₂]]`, a 2×2 octonionic Hermitian matrix (a vector in
/// 9+1 dimensions).
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Hermitian2 {
    pub diag: [f64; 2],
    pub off: Octonion,
}

impl Hermitian2 {
    pub fn new(diag: [f64; 2], off: Octonion) -> Self {
        Hermitian2 { diag, off }
    }

    pub fn identity() -> Self {
        Hermitian2::new([1.0, 1.0], Octonion::ZERO)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `v v†`.
    pub fn outer(v: &[Octonion; 2]) -> Self {
        Hermitian2::from_oct(&OctMatrix2::outer(v))
    }

    pub fn trace(&self) -> f64 {
        self.diag[0] + self.diag[1]
    }

    /// `x₁x₂ − |a|²`.
    pub fn det(&self) -> f64 {
        self.diag[0] * self.diag[1] - self.off.norm_sqr()
    }

    pub fn scale(&self, s: f64) -> Self {
        Hermitian2::new([self.diag[0] * s, self.diag[1] * s], self.off * s)
    }

    pub fn norm(&self) -> f64 {
        (self.diag[0].powi(2) + self.diag[1].powi(2) + 2.0 * self.off.norm_sqr()).sqrt()
    }

    pub fn max_diff(&self, other: &Hermitian2) -> f64 {
        (self.diag[0] - other.diag[0])
            .abs()
            .max((self.diag[1] - other.diag[1]).abs())
            .max((self.off - other.off).norm())
    }

    pub fn jordan(&self, other: &Hermitian2) -> Hermitian2 {
        let (x, y) = (self.to_oct(), other.to_oct());
        Hermitian2::from_oct(&((x * y) + (y * x)).scale(0.5))
    }

    pub fn mul_vec(&self, v: &[Octonion; 2]) -> [Octonion; 2] {
        self.to_oct().mul_vec(v)
    }

    /// Whether all entries lie in a single complex subalgebra.
    pub fn is_complex(&self, tol: f64) -> bool {
        complex_check(&[self.off], tol).is_complex
    }
}

impl HermitianMatrix<2> for Hermitian2 {
    fn to_oct(&self) -> OctMatrix2 {
        OctMatrix([
            [Octonion::real(self.diag[0]), self.off.conj()],
            [self.off, Octonion::real(self.diag[1])],
        ])
    }

    fn from_oct(x: &OctMatrix2) -> Self {
        Hermitian2 {
            diag: [x.0[0][0].re(), x.0[1][1].re()],
            off: (x.0[1][0] + x.0[0][1].conj()) * 0.5,
        }
    }
}

impl Add for Hermitian2 {
    type Output = Hermitian2;
    fn add(self, rhs: Hermitian2) -> Hermitian2 {
        Hermitian2::new(
            [self.diag[0] + rhs.diag[0], self.diag[1] + rhs.diag[1]],
            self.off + rhs.off,
        )
    }
}

impl Sub for Hermitian2 {
    type Output = Hermitian2;
    fn sub(self, rhs: Hermitian2) -> Hermitian2 {
        self + rhs.scale(-1.0)
    }
}

/// Lorentzian inner product `X·Y = ½(tr(X∘Y) − tr X tr Y)` on `H₂(𝕆)`.
pub fn lorentz_inner(x: &Hermitian2, y: &Hermitian2) -> f64 {
    0.5 * (x.jordan(y).trace() - x.trace() * y.trace())
}

/// Both sides of `det [[X, θ], [θ†, n]] = (det X) n + 2 X·θθ†`.
pub fn det_block_identity(x: &Hermitian2, theta: &[Octonion; 2], n: f64) -> (f64, f64) {
    let assembled = JordanMatrix::from_block(x, theta, n);
    let rhs = x.det() * n + 2.0 * lorentz_inner(x, &Hermitian2::outer(theta));
    (assembled.det(), rhs)
}

/// `|tr(M X M†) − Re tr((M†M) X)|` for a complex 3×3 matrix `M`.
pub fn trace_identity_check(m: &OctMatrix3, x: &JordanMatrix, tol: f64) -> Result<f64> {
    let check = crate::transform::is_complex(m, tol);
    if !check.is_complex {
        return Err(Error::NotComplex {
            residual: check.residual,
        });
    }
    let lhs = NestedMap3::single(*m).vector_apply(x).trace();
    let rhs = ((m.adjoint() * *m) * x.to_oct()).trace().re();
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::{basis, ImaginaryUnit};
    use crate::random;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vectorize_roundtrip_and_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = random::jordan(&mut rng);
        assert_eq!(JordanMatrix::devectorize(&x.vectorize()), x);
        let a0 = JordanMatrix::basis(3);
        assert_eq!(a0.a, Octonion::ONE);
        let c7 = JordanMatrix::basis(26);
        assert_eq!(c7.c, Octonion::l());
        assert_eq!(JordanMatrix::basis(1).diag, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn layout_matches_matrix_form() {
        let x = JordanMatrix::new([1.0, 2.0, 3.0], Octonion::i(), Octonion::j(), Octonion::l());
        let m = x.to_oct();
        assert_eq!(m.0[1][0], Octonion::i());
        assert_eq!(m.0[0][1], -Octonion::i());
        assert_eq!(m.0[2][1], Octonion::j());
        assert_eq!(m.0[1][2], -Octonion::j());
        assert_eq!(m.0[0][2], Octonion::l());
        assert_eq!(m.0[2][0], -Octonion::l());
        assert_eq!(JordanMatrix::from_oct(&m), x);
    }

    #[test]
    fn jordan_product_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random::jordan(&mut rng);
        assert!(x.jordan(&JordanMatrix::identity()).max_diff(&x) < 1e-15);
        let d = JordanMatrix::diagonal(1.0, 2.0, 3.0).jordan(&JordanMatrix::diagonal(4.0, 5.0, 6.0));
        assert_eq!(d, JordanMatrix::diagonal(4.0, 10.0, 18.0));
        // X∘X equals the raw matrix square, which is already Hermitian
        let raw = x.to_oct() * x.to_oct();
        assert!(raw.hermiticity_defect() < 1e-12);
        assert!(JordanMatrix::from_oct(&raw).max_diff(&x.square()) < 1e-12);
        let y = random::jordan(&mut rng);
        assert!(x.jordan(&y).max_diff(&y.jordan(&x)) < 1e-12);
    }

    #[test]
    fn freudenthal_examples() {
        let i = JordanMatrix::identity();
        assert!(i.freudenthal(&i).max_diff(&i) < 1e-15);
        // X * I = ½(tr X · I − X)
        let x = JordanMatrix::diagonal(1.0, 2.0, 3.0);
        let expected = (i.scale(6.0) - x).scale(0.5);
        assert!(x.freudenthal(&i).max_diff(&expected) < 1e-15);
        let e11 = JordanMatrix::unit_diag(0);
        assert!(e11.freudenthal(&e11).max_abs() < 1e-15);
    }

    #[test]
    fn determinant_examples() {
        assert_relative_eq!(JordanMatrix::identity().det(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(JordanMatrix::diagonal(2.0, -3.0, 0.5).det(), -3.0, epsilon = 1e-14);
        assert_eq!(JordanMatrix::zero().det(), 0.0);
    }

    #[test]
    fn determinant_matches_classical_inside_complex_subalgebra() {
        use num_complex::Complex64;
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let u = random::imaginary_unit(&mut rng);
            let x = random::jordan_in_complex(&mut rng, &u);
            let c = |o: &Octonion| Complex64::new(o.re(), o.dot(&u.get()));
            let m = x.to_oct();
            let e = |i: usize, j: usize| c(&m.0[i][j]);
            let classical = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
            assert!(classical.im.abs() < 1e-12);
            assert_relative_eq!(x.det(), classical.re, epsilon = 1e-11);
        }
    }

    #[test]
    fn sigma_examples() {
        assert_relative_eq!(JordanMatrix::identity().sigma(), 3.0, epsilon = 1e-15);
        assert_relative_eq!(JordanMatrix::diagonal(1.0, 2.0, 3.0).sigma(), 11.0, epsilon = 1e-14);
        assert_eq!(JordanMatrix::unit_diag(0).sigma(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let x = random::jordan(&mut rng);
            assert!((x.sigma() - x.sigma_from_traces()).abs() < 1e-11);
        }
    }

    #[test]
    fn characteristic_equation() {
        assert!(JordanMatrix::identity().char_residual().max_abs() < 1e-15);
        assert!(JordanMatrix::diagonal(1.0, 2.0, 3.0).char_residual().max_abs() < 1e-13);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let x = random::jordan(&mut rng);
        let scale = x.norm();
        assert!(x.char_residual().max_abs() < 1e-8 * scale.powi(3));
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let ev = JordanMatrix::diagonal(2.0, -1.0, 5.0).eigenvalues();
        assert_relative_eq!(ev[0], 5.0, epsilon = 1e-12);
        assert_relative_eq!(ev[1], 2.0, epsilon = 1e-12);
        assert_relative_eq!(ev[2], -1.0, epsilon = 1e-12);
        assert_eq!(JordanMatrix::zero().eigenvalues(), [0.0; 3]);
    }

    #[test]
    fn lorentz_inner_examples() {
        let i2 = Hermitian2::identity();
        assert_relative_eq!(lorentz_inner(&i2, &i2), -1.0, epsilon = 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let x = random::hermitian2(&mut rng);
        // X·X = −det X
        assert_relative_eq!(lorentz_inner(&x, &x), -x.det(), epsilon = 1e-12);
    }

    #[test]
    fn block_determinant_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let x = random::hermitian2(&mut rng);
        let (lhs, rhs) = det_block_identity(&x, &[Octonion::ZERO; 2], 2.5);
        assert_relative_eq!(lhs, x.det() * 2.5, epsilon = 1e-12);
        assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
        let u = random::imaginary_unit(&mut rng);
        let theta = [random::in_complex(&mut rng, &u), random::in_complex(&mut rng, &u)];
        let (lhs, rhs) = det_block_identity(&x, &theta, -0.7);
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn trace_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = random::jordan(&mut rng);
        assert!(trace_identity_check(&OctMatrix3::identity(), &x, 1e-12).unwrap() < 1e-13);
        let u = ImaginaryUnit::basis(basis::JL).unwrap();
        let q = u.exp(0.3);
        let unitary = OctMatrix3::from_diag([q, q.conj(), Octonion::ONE]);
        let y = NestedMap3::single(unitary).vector_apply(&x);
        assert!((y.trace() - x.trace()).abs() < 1e-12);
        let mut m = OctMatrix3::zero();
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v = random::in_complex(&mut rng, &u);
            }
        }
        assert!(trace_identity_check(&m, &x, 1e-9).unwrap() < 1e-9 * m.frobenius().powi(2) * x.norm());
        let mixed = OctMatrix3::from_diag([Octonion::i(), Octonion::j(), Octonion::ONE]);
        assert!(matches!(
            trace_identity_check(&mixed, &x, 1e-9),
            Err(Error::NotComplex { .. })
        ));
    }

    #[test]
    fn cyclic_permutation_preserves_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let t = NestedMap3::single(crate::transform::cyclic_permutation());
        for _ in 0..10 {
            let x = random::jordan(&mut rng);
            assert!((t.vector_apply(&x).det() - x.det()).abs() < 1e-10 * x.norm().powi(3));
        }
    }
}
