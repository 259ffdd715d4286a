//! Octonionic matrices acting as transformations.
//!
//! A single layer `M` acts on Hermitian matrices by `X ↦ (MX)M†` and on
//! spinors by `v ↦ Mv`. Octonionic matrices do not compose associatively, so
//! group elements are kept as [`NestedMap`]s: ordered lists of layers applied
//! from the inside out.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::SMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jordan::{Hermitian2, JordanMatrix};
use crate::octonion::{ImaginaryUnit, Octonion};
use crate::random;

/// Real 27×27 matrix acting on vectorized Jordan matrices.
pub type LinearOp27 = SMatrix<f64, 27, 27>;

#[derive(Clone, Copy, PartialEq)]
pub struct OctMatrix<const N: usize>(pub [[Octonion; N]; N]);

pub type OctMatrix2 = OctMatrix<2>;
pub type OctMatrix3 = OctMatrix<3>;

impl<const N: usize> OctMatrix<N> {
    pub fn zero() -> Self {
        OctMatrix([[Octonion::ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::scalar(Octonion::ONE)
    }

    /// `s·I`.
    pub fn scalar(s: Octonion) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = s;
        }
        m
    }

    pub fn from_diag(d: [Octonion; N]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Octonion {
        self.0[i][j]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v = v.scale(s);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Octonion; N]) -> [Octonion; N] {
        let mut out = [Octonion::ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *o += self.0[i][j] * *vj;
            }
        }
        out
    }

    /// `v v†` for a column `v`.
    pub fn outer(v: &[Octonion; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Octonion {
        (0..N).fold(Octonion::ZERO, |acc, i| acc + self.0[i][i])
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest octonion norm of an entrywise difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0_f64, |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// `max ‖X_ij − conj(X_ji)‖`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                d = d.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        d
    }

    /// One layer of the vector action, `(M X) M†`.
    pub fn act(&self, x: &Self) -> Self {
        (*self * *x) * self.adjoint()
    }

    /// The other pairing, `M (X M†)`.
    pub fn act_right_first(&self, x: &Self) -> Self {
        *self * (*x * self.adjoint())
    }

    /// Hermitian basis of `N×N` octonionic matrices: the `N` diagonal units
    /// followed by, for each `i < j`, the eight matrices with `X_ji = e_b`.
    pub fn hermitian_basis() -> Vec<Self> {
        let mut out = Vec::with_capacity(N + 4 * N * (N - 1));
        for i in 0..N {
            let mut m = Self::zero();
            m.0[i][i] = Octonion::ONE;
            out.push(m);
        }
        for i in 0..N {
            for j in (i + 1)..N {
                for b in 0..8 {
                    let mut m = Self::zero();
                    let e = Octonion::unit(b);
                    m.0[j][i] = e;
                    m.0[i][j] = e.conj();
                    out.push(m);
                }
            }
        }
        out
    }
}

impl OctMatrix2 {
    /// `[[0, u], [v, 0]]`.
    pub fn offdiag(u: Octonion, v: Octonion) -> Self {
        OctMatrix([[Octonion::ZERO, u], [v, Octonion::ZERO]])
    }
}

impl<const N: usize> Mul for OctMatrix<N> {
    type Output = OctMatrix<N>;
    /// Entry `(i, j)` is `Σ_k A_ik B_kj`, summed in increasing `k`.
    fn mul(self, rhs: OctMatrix<N>) -> OctMatrix<N> {
        let mut m = OctMatrix::zero();
        for i in 0..N {
            for j in 0..N {
                let mut acc = Octonion::ZERO;
                for k in 0..N {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }
}

impl<const N: usize> Add for OctMatrix<N> {
    type Output = OctMatrix<N>;
    fn add(self, rhs: OctMatrix<N>) -> OctMatrix<N> {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Sub for OctMatrix<N> {
    type Output = OctMatrix<N>;
    fn sub(self, rhs: OctMatrix<N>) -> OctMatrix<N> {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> fmt::Debug for OctMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl<const N: usize> Serialize for OctMatrix<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Octonion>> = self.0.iter().map(|r| r.to_vec()).collect();
        rows.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for OctMatrix<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Octonion>>::deserialize(d)?;
        rows_to_matrix(rows).map_err(D::Error::custom)
    }
}

fn rows_to_matrix<const N: usize>(rows: Vec<Vec<Octonion>>) -> Result<OctMatrix<N>> {
    if rows.len() != N || rows.iter().any(|r| r.len() != N) {
        return Err(Error::DimensionMismatch {
            expected: N,
            found: rows.len(),
        });
    }
    let mut m = OctMatrix::zero();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m.0[i][j] = v;
        }
    }
    Ok(m)
}

/// Hermitian matrix types that the vector action maps into themselves.
pub trait HermitianMatrix<const N: usize>: Sized {
    fn to_oct(&self) -> OctMatrix<N>;
    /// Hermitian part of an octonionic matrix.
    fn from_oct(m: &OctMatrix<N>) -> Self;
}

/// A group element, stored as layers `[M₁, …, M_k]` acting as
/// `X ↦ M_k(⋯(M₁ X M₁†)⋯)M_k†`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NestedMap<const N: usize> {
    pub layers: Vec<OctMatrix<N>>,
}

pub type NestedMap2 = NestedMap<2>;
pub type NestedMap3 = NestedMap<3>;

impl<const N: usize> NestedMap<N> {
    pub fn identity() -> Self {
        NestedMap { layers: Vec::new() }
    }

    pub fn single(m: OctMatrix<N>) -> Self {
        NestedMap { layers: vec![m] }
    }

    pub fn from_layers(layers: Vec<OctMatrix<N>>) -> Self {
        NestedMap { layers }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &NestedMap<N>) -> NestedMap<N> {
        let mut layers = self.layers.clone();
        layers.extend_from_slice(&next.layers);
        NestedMap { layers }
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Raw nested action on an octonionic matrix, without Hermitian projection.
    pub fn apply_matrix(&self, x: &OctMatrix<N>) -> OctMatrix<N> {
        self.layers.iter().fold(*x, |acc, m| m.act(&acc))
    }

    /// Vector action `T`, layer by layer, projecting onto the Hermitian part.
    pub fn vector_apply<H: HermitianMatrix<N>>(&self, x: &H) -> H {
        H::from_oct(&self.apply_matrix(&x.to_oct()))
    }

    /// Spinor action `v ↦ M_k(⋯(M₁ v))`.
    pub fn spinor_apply(&self, v: &[Octonion; N]) -> [Octonion; N] {
        self.layers.iter().fold(*v, |acc, m| m.mul_vec(&acc))
    }
}

impl NestedMap3 {
    /// Real 27×27 matrix of the vector action in the coordinates of
    /// [`JordanMatrix::vectorize`]; column `j` is the image of basis vector `j`.
    pub fn as_linear_op(&self) -> LinearOp27 {
        let mut op = LinearOp27::zeros();
        for j in 0..27 {
            let image = self.vector_apply(&JordanMatrix::basis(j)).vectorize();
            for (i, v) in image.iter().enumerate() {
                op[(i, j)] = *v;
            }
        }
        op
    }
}

/// A nested map whose dimension is only known at runtime (e.g. parsed JSON).
#[derive(Clone, Debug, PartialEq)]
pub enum AnyNestedMap {
    Two(NestedMap2),
    Three(NestedMap3),
}

impl AnyNestedMap {
    pub fn dim(&self) -> usize {
        match self {
            AnyNestedMap::Two(_) => 2,
            AnyNestedMap::Three(_) => 3,
        }
    }

    pub fn apply_jordan(&self, x: &JordanMatrix) -> Result<JordanMatrix> {
        match self {
            AnyNestedMap::Three(nm) => Ok(nm.vector_apply(x)),
            AnyNestedMap::Two(_) => Err(Error::DimensionMismatch {
                expected: 3,
                found: 2,
            }),
        }
    }

    pub fn apply_hermitian2(&self, x: &Hermitian2) -> Result<Hermitian2> {
        match self {
            AnyNestedMap::Two(nm) => Ok(nm.vector_apply(x)),
            AnyNestedMap::Three(_) => Err(Error::DimensionMismatch {
                expected: 2,
                found: 3,
            }),
        }
    }
}

impl Serialize for AnyNestedMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AnyNestedMap::Two(nm) => nm.serialize(s),
            AnyNestedMap::Three(nm) => nm.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AnyNestedMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let layers = Vec::<Vec<Vec<Octonion>>>::deserialize(d)?;
        let dim = layers.first().map(|l| l.len()).unwrap_or(3);
        match dim {
            2 => layers
                .into_iter()
                .map(rows_to_matrix::<2>)
                .collect::<Result<Vec<_>>>()
                .map(|l| AnyNestedMap::Two(NestedMap::from_layers(l)))
                .map_err(D::Error::custom),
            3 => layers
                .into_iter()
                .map(rows_to_matrix::<3>)
                .collect::<Result<Vec<_>>>()
                .map(|l| AnyNestedMap::Three(NestedMap::from_layers(l)))
                .map_err(D::Error::custom),
            n => Err(D::Error::custom(format!(
                "layers must be 2x2 or 3x3, found {n} rows"
            ))),
        }
    }
}

/// Outcome of a residual-based predicate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Predicate {
    pub holds: bool,
    pub residual: f64,
}

/// `M(XM†) = (MX)M†` with Hermitian result, for every Hermitian basis `X`.
pub fn is_welldefined<const N: usize>(m: &OctMatrix<N>, tol: f64) -> Predicate {
    let scale = m.frobenius().powi(2).max(1.0);
    let residual = OctMatrix::<N>::hermitian_basis()
        .iter()
        .map(|x| {
            let left = m.act(x);
            let right = m.act_right_first(x);
            left.max_diff(&right).max(left.hermiticity_defect())
        })
        .fold(0.0_f64, f64::max)
        / scale;
    Predicate {
        holds: residual <= tol,
        residual,
    }
}

/// Number of seeded random spinors sampled by [`is_compatible`] in addition
/// to the 16 basis columns.
pub const COMPATIBILITY_RANDOM_SAMPLES: usize = 32;
pub const DEFAULT_COMPATIBILITY_SEED: u64 = 0x5eed_c0de;

/// `(Mv)(Mv)† = M(vv†)M†` over the 16 basis columns and
/// [`COMPATIBILITY_RANDOM_SAMPLES`] random columns drawn from `seed`.
pub fn is_compatible(m: &OctMatrix2, tol: f64, seed: u64) -> Predicate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<[Octonion; 2]> = Vec::with_capacity(16 + COMPATIBILITY_RANDOM_SAMPLES);
    for slot in 0..2 {
        for b in 0..8 {
            let mut v = [Octonion::ZERO; 2];
            v[slot] = Octonion::unit(b);
            samples.push(v);
        }
    }
    for _ in 0..COMPATIBILITY_RANDOM_SAMPLES {
        samples.push([random::octonion(&mut rng), random::octonion(&mut rng)]);
    }
    let scale = m.frobenius().powi(2).max(1.0);
    let residual = samples
        .iter()
        .map(|v| {
            let mv = m.mul_vec(v);
            let lhs = OctMatrix::outer(&mv);
            let rhs = m.act(&OctMatrix::outer(v));
            let vn = v[0].norm_sqr() + v[1].norm_sqr();
            lhs.max_diff(&rhs) / vn.max(1e-300)
        })
        .fold(0.0_f64, f64::max)
        / scale;
    Predicate {
        holds: residual <= tol,
        residual,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexCheck {
    pub is_complex: bool,
    /// Largest component of an imaginary part orthogonal to the common direction.
    pub residual: f64,
    /// The common imaginary direction, when any entry has an imaginary part.
    pub unit: Option<ImaginaryUnit>,
}

/// All entries lie in one complex subalgebra `span{1, u}`.
pub fn is_complex<const N: usize>(m: &OctMatrix<N>, tol: f64) -> ComplexCheck {
    let entries: Vec<Octonion> = m.0.iter().flatten().copied().collect();
    complex_check(&entries, tol)
}

pub(crate) fn complex_check(entries: &[Octonion], tol: f64) -> ComplexCheck {
    let scale = entries.iter().fold(1.0_f64, |s, e| s.max(e.norm()));
    let reference = entries
        .iter()
        .map(|e| e.im())
        .max_by(|a, b| a.norm().total_cmp(&b.norm()));
    let Some(reference) = reference.filter(|r| r.norm() > tol * scale) else {
        return ComplexCheck {
            is_complex: true,
            residual: 0.0,
            unit: None,
        };
    };
    let u = ImaginaryUnit::normalized(reference).expect("nonzero reference direction");
    let residual = entries
        .iter()
        .map(|e| {
            let im = e.im();
            (im - u.get() * im.dot(&u.get())).norm()
        })
        .fold(0.0_f64, f64::max)
        / scale;
    ComplexCheck {
        is_complex: residual <= tol,
        residual,
        unit: Some(u),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexDet {
    pub det: Octonion,
    pub is_real: bool,
}

fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, f64)>) {
        let n = used.len();
        if prefix.len() == n {
            let mut inversions = 0;
            for a in 0..n {
                for b in (a + 1)..n {
                    if prefix[a] > prefix[b] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1.0 } else { -1.0 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Classical determinant of a complex matrix, computed inside its complex
/// subalgebra (where multiplication is commutative and associative).
pub fn complex_det<const N: usize>(m: &OctMatrix<N>, tol: f64) -> Result<ComplexDet> {
    let check = is_complex(m, tol);
    if !check.is_complex {
        return Err(Error::NotComplex {
            residual: check.residual,
        });
    }
    let det = permutations(N)
        .into_iter()
        .fold(Octonion::ZERO, |acc, (perm, sign)| {
            let term = perm
                .iter()
                .enumerate()
                .fold(Octonion::ONE, |p, (i, &j)| p * m.0[i][j]);
            acc + term * sign
        });
    let scale = m.frobenius().powi(N as i32).max(1.0);
    Ok(ComplexDet {
        det,
        is_real: det.im().norm() <= tol * scale,
    })
}

/// Which pair of rows/columns a 2×2 matrix occupies inside a 3×3 one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    Zero,
    One,
    Two,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Zero, Slot::One, Slot::Two];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl TryFrom<usize> for Slot {
    type Error = Error;
    fn try_from(k: usize) -> Result<Slot> {
        match k {
            0 => Ok(Slot::Zero),
            1 => Ok(Slot::One),
            2 => Ok(Slot::Two),
            _ => Err(Error::Domain(format!("slot must be 0, 1 or 2, got {k}"))),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// The cyclic permutation matrix `𝒯`, with `𝒯⁻¹ = 𝒯² = 𝒯†`.
pub fn cyclic_permutation() -> OctMatrix3 {
    let (o, z) = (Octonion::ONE, Octonion::ZERO);
    OctMatrix([[z, o, z], [z, z, o], [o, z, z]])
}

/// Embeds a 2×2 matrix as `[[M, 0], [0, 1]]` (slot 0), conjugated by `𝒯`
/// (slot 1) or `𝒯²` (slot 2).
pub fn embed(m: &OctMatrix2, slot: Slot) -> OctMatrix3 {
    let mut base = OctMatrix3::identity();
    for i in 0..2 {
        for j in 0..2 {
            base.0[i][j] = m.0[i][j];
        }
    }
    let t = cyclic_permutation();
    let mut out = base;
    for _ in 0..slot.index() {
        // 𝒯 is real, so these products associate
        out = (t * out) * t.adjoint();
    }
    out
}

/// Embeds every layer of a 2×2 nested map.
pub fn embed_map(nm: &NestedMap2, slot: Slot) -> NestedMap3 {
    NestedMap::from_layers(nm.layers.iter().map(|m| embed(m, slot)).collect())
}
