//! Octonion arithmetic.
//!
//! Coefficients are stored over the ordered basis `(1, i, j, k, kℓ, jℓ, iℓ, ℓ)`.
//! Multiplication is the Cayley–Dickson doubling of the quaternions: writing
//! `x = p + qℓ` with quaternions `p`, `q`,
//!
//! ```text
//! (p + qℓ)(r + sℓ) = (pr − s̄q) + (sp + qr̄)ℓ
//! ```
//!
//! with the quaternion convention `ij = k`. The resulting signed table is
//! available from [`multiplication_table`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Human-readable labels of the basis, in coefficient order.
pub const BASIS_LABELS: [&str; 8] = ["1", "i", "j", "k", "kl", "jl", "il", "l"];

/// Coefficient index of each imaginary basis element.
pub mod basis {
    pub const ONE: usize = 0;
    pub const I: usize = 1;
    pub const J: usize = 2;
    pub const K: usize = 3;
    pub const KL: usize = 4;
    pub const JL: usize = 5;
    pub const IL: usize = 6;
    pub const L: usize = 7;
}

#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion(pub [f64; 8]);

type Quat = [f64; 4];

#[inline]
fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

#[inline]
fn qconj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub const fn new(c: [f64; 8]) -> Self {
        Octonion(c)
    }

    pub const fn real(r: f64) -> Self {
        Octonion([r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// The `idx`-th basis element (`0` is the identity).
    ///
    /// # Panics
    ///
    /// Panics if `idx >= 8`.
    pub fn unit(idx: usize) -> Self {
        let mut c = [0.0; 8];
        c[idx] = 1.0;
        Octonion(c)
    }

    pub fn i() -> Self {
        Self::unit(basis::I)
    }
    pub fn j() -> Self {
        Self::unit(basis::J)
    }
    pub fn k() -> Self {
        Self::unit(basis::K)
    }
    pub fn l() -> Self {
        Self::unit(basis::L)
    }

    pub fn coeffs(&self) -> &[f64; 8] {
        &self.0
    }

    // x = p + qℓ
    #[inline]
    fn halves(&self) -> (Quat, Quat) {
        let c = &self.0;
        ([c[0], c[1], c[2], c[3]], [c[7], c[6], c[5], c[4]])
    }

    #[inline]
    fn from_halves(p: Quat, q: Quat) -> Self {
        Octonion([p[0], p[1], p[2], p[3], q[3], q[2], q[1], q[0]])
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// Imaginary part, as an octonion with zero real coefficient.
    pub fn im(&self) -> Octonion {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    pub fn conj(&self) -> Octonion {
        let c = &self.0;
        Octonion([c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of the coefficient vectors, `Re(x ȳ)`.
    pub fn dot(&self, other: &Octonion) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    /// Multiplicative inverse `conj(x)/|x|²`.
    pub fn inverse(&self) -> Result<Octonion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::Domain("inverse of the zero octonion".into()));
        }
        Ok(self.conj() * (1.0 / n2))
    }

    pub fn scale(&self, s: f64) -> Octonion {
        let mut c = self.0;
        for v in c.iter_mut() {
            *v *= s;
        }
        Octonion(c)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `u x ū`, evaluated as `u(x ū)`.
    ///
    /// Flexibility makes the two parenthesizations agree; the function
    /// checks that they do.
    pub fn conj_by(u: &Octonion, x: &Octonion) -> Result<Octonion> {
        let n = u.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "conjugation requires a unit octonion, got norm {n}"
            )));
        }
        let ub = u.conj();
        let right = *u * (*x * ub);
        let left = (*u * *x) * ub;
        let scale = 1.0 + x.norm();
        debug_assert!(
            (right - left).norm() <= 1e-9 * scale,
            "flexible law violated in conj_by"
        );
        if (right - left).norm() > 1e-9 * scale {
            return Err(Error::Domain("flexible law violated in conj_by".into()));
        }
        Ok(right)
    }

    /// Associator `(xy)z − x(yz)`.
    pub fn associator(x: &Octonion, y: &Octonion, z: &Octonion) -> Octonion {
        (*x * *y) * *z - *x * (*y * *z)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion{:?}", self.0)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.0.iter().zip(BASIS_LABELS) {
            if *c == 0.0 {
                continue;
            }
            let sign = if *c < 0.0 { "-" } else if first { "" } else { "+" };
            if label == "1" {
                write!(f, "{sign}{}", c.abs())?;
            } else {
                write!(f, "{sign}{}{label}", c.abs())?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, idx: usize) -> &f64 {
        &self.0[idx]
    }
}

impl From<f64> for Octonion {
    fn from(r: f64) -> Self {
        Octonion::real(r)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    #[inline]
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Octonion(c)
    }
}

impl AddAssign for Octonion {
    #[inline]
    fn add_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    #[inline]
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        Octonion(c)
    }
}

impl SubAssign for Octonion {
    #[inline]
    fn sub_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    #[inline]
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    #[inline]
    fn mul(self, rhs: Octonion) -> Octonion {
        let (p, q) = self.halves();
        let (r, s) = rhs.halves();
        let pr = qmul(p, r);
        let sbq = qmul(qconj(s), q);
        let sp = qmul(s, p);
        let qrb = qmul(q, qconj(r));
        Octonion::from_halves(
            [pr[0] - sbq[0], pr[1] - sbq[1], pr[2] - sbq[2], pr[3] - sbq[3]],
            [sp[0] + qrb[0], sp[1] + qrb[1], sp[2] + qrb[2], sp[3] + qrb[3]],
        )
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    #[inline]
    fn mul(self, rhs: f64) -> Octonion {
        self.scale(rhs)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    #[inline]
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs.scale(self)
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    #[inline]
    fn div(self, rhs: f64) -> Octonion {
        self.scale(1.0 / rhs)
    }
}

/// A purely imaginary octonion of unit norm; squares to `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ImaginaryUnit(Octonion);

impl ImaginaryUnit {
    const TOL: f64 = 1e-9;

    pub fn new(u: Octonion) -> Result<Self> {
        if u.re().abs() > Self::TOL || (u.norm() - 1.0).abs() > Self::TOL {
            return Err(Error::Domain(format!(
                "{u} is not a purely imaginary unit octonion"
            )));
        }
        Ok(ImaginaryUnit(u))
    }

    /// Projects onto the imaginary part and rescales to unit norm.
    pub fn normalized(u: Octonion) -> Result<Self> {
        let im = u.im();
        let n = im.norm();
        if n < 1e-300 {
            return Err(Error::Domain("cannot normalize a real octonion".into()));
        }
        Ok(ImaginaryUnit(im / n))
    }

    /// Basis unit with coefficient index `idx` in `1..8`.
    pub fn basis(idx: usize) -> Result<Self> {
        if !(1..8).contains(&idx) {
            return Err(Error::Domain(format!("basis index {idx} is not imaginary")));
        }
        Ok(ImaginaryUnit(Octonion::unit(idx)))
    }

    pub fn all_basis() -> impl Iterator<Item = ImaginaryUnit> {
        (1..8).map(|idx| ImaginaryUnit(Octonion::unit(idx)))
    }

    pub fn get(&self) -> Octonion {
        self.0
    }

    /// `e^{uθ} = cos θ + u sin θ`.
    pub fn exp(&self, theta: f64) -> Octonion {
        exp_imag(self, theta)
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let o = Octonion::deserialize(d)?;
        ImaginaryUnit::new(o).map_err(serde::de::Error::custom)
    }
}

/// `cos θ + s sin θ`; always a unit octonion.
pub fn exp_imag(s: &ImaginaryUnit, theta: f64) -> Octonion {
    Octonion::real(theta.cos()) + s.0 * theta.sin()
}

/// Signed multiplication table: entry `[a][b] = ±(c + 1)` when `e_a e_b = ±e_c`.
///
/// Indices are one-based inside the table so the sign survives at `c = 0`.
pub fn multiplication_table() -> [[i8; 8]; 8] {
    let mut table = [[0i8; 8]; 8];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let prod = Octonion::unit(a) * Octonion::unit(b);
            let (idx, val) = prod
                .0
                .iter()
                .enumerate()
                .find(|(_, v)| **v != 0.0)
                .map(|(i, v)| (i, *v))
                .expect("basis products are nonzero");
            *cell = (idx as i8 + 1) * if val > 0.0 { 1 } else { -1 };
        }
    }
    table
}

/// A real-linear map on the octonions, stored column-wise: column `b` is the
/// image of basis element `e_b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OctonionMap(pub [[f64; 8]; 8]);

impl OctonionMap {
    pub fn identity() -> Self {
        let mut m = [[0.0; 8]; 8];
        for (i, col) in m.iter_mut().enumerate() {
            col[i] = 1.0;
        }
        OctonionMap(m)
    }

    pub fn from_fn(f: impl Fn(&Octonion) -> Octonion) -> Self {
        let mut m = [[0.0; 8]; 8];
        for (b, col) in m.iter_mut().enumerate() {
            *col = f(&Octonion::unit(b)).0;
        }
        OctonionMap(m)
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for (b, col) in self.0.iter().enumerate() {
            let xb = x.0[b];
            if xb == 0.0 {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                *o += xb * c;
            }
        }
        Octonion(out)
    }

    pub fn compose(&self, inner: &OctonionMap) -> OctonionMap {
        OctonionMap::from_fn(|x| self.apply(&inner.apply(x)))
    }

    /// Largest entrywise difference between two maps.
    pub fn max_diff(&self, other: &OctonionMap) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AutomorphismReport {
    pub is_automorphism: bool,
    /// `max ‖f(e_a e_b) − f(e_a) f(e_b)‖` over basis pairs, together with `‖f(1) − 1‖`.
    pub residual: f64,
}

/// Checks multiplicativity on all 64 basis pairs and that `f(1) = 1`.
pub fn is_automorphism(f: &OctonionMap, tol: f64) -> AutomorphismReport {
    let images: Vec<Octonion> = (0..8).map(|b| Octonion(f.0[b])).collect();
    let mut residual = (images[0] - Octonion::ONE).norm();
    for a in 0..8 {
        for b in 0..8 {
            let lhs = f.apply(&(Octonion::unit(a) * Octonion::unit(b)));
            let rhs = images[a] * images[b];
            residual = residual.max((lhs - rhs).norm());
        }
    }
    AutomorphismReport {
        is_automorphism: residual <= tol,
        residual,
    }
}

/// The map `x ↦ u x ū` for a unit octonion `u`.
pub fn conjugation_map(u: &Octonion) -> Result<OctonionMap> {
    Octonion::conj_by(u, &Octonion::ONE)?;
    let ub = u.conj();
    Ok(OctonionMap::from_fn(|x| *u * (*x * ub)))
}

/// ℓ-conjugation: `p + qℓ ↦ p − qℓ` for quaternions `p`, `q`.
pub fn ell_conjugation(x: &Octonion) -> Octonion {
    let c = x.0;
    Octonion([c[0], c[1], c[2], c[3], -c[4], -c[5], -c[6], -c[7]])
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialityEllReport {
    /// Per basis element: `(k(j(iq)), k(j(i q ī) j̄) k̄, ((q ī) j̄) k̄)`.
    pub rows: Vec<[Octonion; 3]>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Verifies `k(j(iq)) = k(j(i q ī) j̄) k̄ = ((q ī) j̄) k̄` on every basis
/// octonion and that the common value is the ℓ-conjugate of `q`.
pub fn triality_ell_conjugation_check(tol: f64) -> TrialityEllReport {
    let (i, j, k) = (Octonion::i(), Octonion::j(), Octonion::k());
    let (ib, jb, kb) = (i.conj(), j.conj(), k.conj());
    let mut rows = Vec::with_capacity(8);
    let mut max_residual = 0.0_f64;
    for b in 0..8 {
        let q = Octonion::unit(b);
        let left = k * (j * (i * q));
        let middle = k * (((j * (i * (q * ib))) * jb) * kb);
        let right = ((q * ib) * jb) * kb;
        let expected = ell_conjugation(&q);
        for v in [left, middle, right] {
            max_residual = max_residual.max((v - expected).norm());
        }
        rows.push([left, middle, right]);
    }
    TrialityEllReport {
        rows,
        max_residual,
        pass: max_residual <= tol,
    }
}

/// Dimension of the smallest unital subalgebra containing `generators`.
///
/// Repeatedly closes the span under multiplication; the answer is always one
/// of 1, 2, 4, 8 for nonzero input.
pub fn subalgebra_dimension(generators: &[Octonion]) -> usize {
    subalgebra_basis(generators, 1e-9).len()
}

/// Orthonormal basis of the unital subalgebra generated by `generators`.
pub fn subalgebra_basis(generators: &[Octonion], tol: f64) -> Vec<Octonion> {
    let mut basis: Vec<Octonion> = vec![Octonion::ONE];
    let scale = generators.iter().fold(1.0_f64, |m, g| m.max(g.norm()));
    let push = |basis: &mut Vec<Octonion>, v: Octonion, tol: f64| -> bool {
        let mut r = v;
        // two passes of Gram–Schmidt keep the basis orthonormal to roundoff
        for _ in 0..2 {
            for e in basis.iter() {
                r -= *e * r.dot(e);
            }
        }
        let n = r.norm();
        if n > tol * v.norm().max(1.0) && basis.len() < 8 {
            basis.push(r / n);
            true
        } else {
            false
        }
    };
    for g in generators {
        push(&mut basis, *g / scale, tol);
    }
    loop {
        let mut grew = false;
        let current = basis.clone();
        for a in &current {
            for b in &current {
                grew |= push(&mut basis, *a * *b, tol);
            }
        }
        if !grew || basis.len() == 8 {
            break;
        }
    }
    basis
}
