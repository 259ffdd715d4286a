//! Generator curves for `E₆` and its subgroups, and the rank machinery that
//! measures the dimensions of the Lie algebras they span.
//!
//! Every curve is a one-parameter family `θ ↦ NestedMap` of complex 2×2
//! layers with determinant ±1, embedded into one of the three 2×2 slots of a
//! 3×3 matrix. Differentiating the 27×27 action at `θ = 0` yields a Lie
//! algebra element; the numerical rank of a family of such elements is the
//! dimension of the algebra they generate as a vector space.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::jordan::JordanMatrix;
use crate::octonion::{basis, is_automorphism, ImaginaryUnit, Octonion, OctonionMap};
use crate::transform::{embed, LinearOp27, NestedMap, NestedMap2, NestedMap3, OctMatrix2, OctMatrix3, Slot};

/// Central-difference step used for Lie elements.
pub const DEFAULT_H_STEP: f64 = 1e-5;
/// Relative singular-value threshold for numerical rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    E6,
    F4,
    SO91,
    SO9,
    SO8,
    SO7,
    G2,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::E6,
        Group::F4,
        Group::SO91,
        Group::SO9,
        Group::SO8,
        Group::SO7,
        Group::G2,
    ];

    /// Dimension of the Lie algebra.
    pub fn dimension(self) -> usize {
        match self {
            Group::E6 => 78,
            Group::F4 => 52,
            Group::SO91 => 45,
            Group::SO9 => 36,
            Group::SO8 => 28,
            Group::SO7 => 21,
            Group::G2 => 14,
        }
    }

    /// Whether every element preserves the trace of a Jordan matrix.
    pub fn is_compact(self) -> bool {
        !matches!(self, Group::E6 | Group::SO91)
    }

    pub fn name(self) -> &'static str {
        match self {
            Group::E6 => "E6",
            Group::F4 => "F4",
            Group::SO91 => "SO91",
            Group::SO9 => "SO9",
            Group::SO8 => "SO8",
            Group::SO7 => "SO7",
            Group::G2 => "G2",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        match key.as_str() {
            "E6" => Ok(Group::E6),
            "F4" => Ok(Group::F4),
            "SO91" => Ok(Group::SO91),
            "SO9" => Ok(Group::SO9),
            "SO8" => Ok(Group::SO8),
            "SO7" => Ok(Group::SO7),
            "G2" => Ok(Group::G2),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// The shape of a generator curve. Unit fields are basis indices of the octonions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    /// `diag(e^{θ/2}, e^{−θ/2})`
    DiagonalBoost,
    /// `cosh(θ/2) I + sinh(θ/2) [[0, e], [ē, 0]]`
    OffDiagonalBoost { unit: usize },
    /// `cos(θ/2) I + sin(θ/2) [[0, e], [−ē, 0]]`
    Rotation { unit: usize },
    /// `diag(e^{sθ}, e^{−sθ})`
    Transverse { unit: usize },
    /// Nested flips `[sI, (s cos θ + t sin θ) I]`.
    FlipPair { s: usize, t: usize },
    /// Nested flips `[sI, (s cos θ + (sw) sin θ) I, uI, (u cos θ − (uw) sin θ) I]`.
    FourFlip { s: usize, u: usize, w: usize },
}

impl CurveKind {
    pub fn is_boost(self) -> bool {
        matches!(self, CurveKind::DiagonalBoost | CurveKind::OffDiagonalBoost { .. })
    }

    pub fn label(self) -> String {
        let l = |u: usize| crate::octonion::BASIS_LABELS[u];
        match self {
            CurveKind::DiagonalBoost => "boost(diag)".into(),
            CurveKind::OffDiagonalBoost { unit } => format!("boost({})", l(unit)),
            CurveKind::Rotation { unit } => format!("rotation({})", l(unit)),
            CurveKind::Transverse { unit } => format!("transverse({})", l(unit)),
            CurveKind::FlipPair { s, t } => format!("flips({},{})", l(s), l(t)),
            CurveKind::FourFlip { s, u, w } => format!("g2({},{},{})", l(s), l(u), l(w)),
        }
    }

    /// The 2×2 layers at parameter `theta`.
    pub fn layers(self, theta: f64) -> NestedMap2 {
        let e = Octonion::unit;
        let scalar = |x: Octonion| OctMatrix2::scalar(x);
        match self {
            CurveKind::DiagonalBoost => NestedMap::single(OctMatrix2::from_diag([
                Octonion::real((theta / 2.0).exp()),
                Octonion::real((-theta / 2.0).exp()),
            ])),
            CurveKind::OffDiagonalBoost { unit } => {
                let (c, s) = ((theta / 2.0).cosh(), (theta / 2.0).sinh());
                NestedMap::single(
                    OctMatrix2::scalar(Octonion::real(c))
                        + OctMatrix2::offdiag(e(unit) * s, e(unit).conj() * s),
                )
            }
            CurveKind::Rotation { unit } => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                NestedMap::single(
                    OctMatrix2::scalar(Octonion::real(c))
                        + OctMatrix2::offdiag(e(unit) * s, -e(unit).conj() * s),
                )
            }
            CurveKind::Transverse { unit } => {
                let q = Octonion::real(theta.cos()) + e(unit) * theta.sin();
                NestedMap::single(OctMatrix2::from_diag([q, q.conj()]))
            }
            CurveKind::FlipPair { s, t } => NestedMap::from_layers(vec![
                scalar(e(s)),
                scalar(e(s) * theta.cos() + e(t) * theta.sin()),
            ]),
            CurveKind::FourFlip { s, u, w } => {
                let (c, sn) = (theta.cos(), theta.sin());
                NestedMap::from_layers(
                    four_flip_units(s, u, w, c, sn)
                        .into_iter()
                        .map(scalar)
                        .collect(),
                )
            }
        }
    }
}

fn four_flip_units(s: usize, u: usize, w: usize, c: f64, sn: f64) -> [Octonion; 4] {
    let e = Octonion::unit;
    let (s, u, w) = (e(s), e(u), e(w));
    [s, s * c + (s * w) * sn, u, u * c - (u * w) * sn]
}

/// A labeled one-parameter family of group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorCurve {
    pub kind: CurveKind,
    pub slot: Slot,
}

impl GeneratorCurve {
    pub fn new(kind: CurveKind, slot: Slot) -> Self {
        GeneratorCurve { kind, slot }
    }

    pub fn label(&self) -> String {
        format!("{}@{}", self.kind.label(), self.slot)
    }

    pub fn layers2(&self, theta: f64) -> NestedMap2 {
        self.kind.layers(theta)
    }

    /// The embedded 3×3 nested map at `theta`.
    pub fn at(&self, theta: f64) -> NestedMap3 {
        crate::transform::embed_map(&self.layers2(theta), self.slot)
    }
}

impl fmt::Display for GeneratorCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn imaginary() -> std::ops::Range<usize> {
    1..8
}

fn so8_kinds() -> Vec<CurveKind> {
    let mut out: Vec<CurveKind> = imaginary().map(|unit| CurveKind::Transverse { unit }).collect();
    out.extend(so7_kinds());
    out
}

fn so7_kinds() -> Vec<CurveKind> {
    let mut out = Vec::with_capacity(21);
    for s in imaginary() {
        for t in (s + 1)..8 {
            out.push(CurveKind::FlipPair { s, t });
        }
    }
    out
}

fn so9_kinds() -> Vec<CurveKind> {
    let mut out: Vec<CurveKind> = (0..8).map(|unit| CurveKind::Rotation { unit }).collect();
    out.extend(so8_kinds());
    out
}

fn so91_kinds() -> Vec<CurveKind> {
    let mut out = vec![CurveKind::DiagonalBoost];
    out.extend((0..8).map(|unit| CurveKind::OffDiagonalBoost { unit }));
    out.extend(so9_kinds());
    out
}

/// Four-flip curves over basis imaginary units `s ≠ ±u`, with `w` orthogonal
/// to the quaternion subalgebra spanned by `s`, `u`, `su`. The enumeration
/// starts with `s, u ∈ {i, j, k}`, `w = ℓ`.
pub fn g2_kinds() -> Vec<CurveKind> {
    let mut out = g2_kinds_ell_only();
    for s in imaginary() {
        for u in imaginary() {
            if s == u {
                continue;
            }
            let su = Octonion::unit(s) * Octonion::unit(u);
            for w in imaginary() {
                let e = Octonion::unit(w);
                let orthogonal = w != s && w != u && su.dot(&e).abs() < 0.5;
                let kind = CurveKind::FourFlip { s, u, w };
                if orthogonal && !out.contains(&kind) {
                    out.push(kind);
                }
            }
        }
    }
    out
}

/// The four-flip curves with `s, u ∈ {i, j, k}` and `w = ℓ` only.
pub fn g2_kinds_ell_only() -> Vec<CurveKind> {
    let mut out = Vec::new();
    for s in [basis::I, basis::J, basis::K] {
        for u in [basis::I, basis::J, basis::K] {
            if s != u {
                out.push(CurveKind::FourFlip { s, u, w: basis::L });
            }
        }
    }
    out
}

/// The four-flip `G₂` curves embedded in `slot`.
pub fn g2_curves(slot: Slot) -> Vec<GeneratorCurve> {
    g2_kinds().into_iter().map(|k| GeneratorCurve::new(k, slot)).collect()
}

/// The curve `q̂ = i, i cos θ + iℓ sin θ, j, j cos θ − jℓ sin θ`.
pub fn g2_reference_curve(slot: Slot) -> GeneratorCurve {
    GeneratorCurve::new(
        CurveKind::FourFlip {
            s: basis::I,
            u: basis::J,
            w: basis::L,
        },
        slot,
    )
}

/// Generator curves of `group`. Single-slot groups use slot 0.
pub fn roster(group: Group) -> Vec<GeneratorCurve> {
    roster_in_slot(group, Slot::Zero)
}

/// Generator curves of `group`, with single-slot groups placed in `slot`
/// (ignored for `E6` and `F4`, which use all three slots).
pub fn roster_in_slot(group: Group, slot: Slot) -> Vec<GeneratorCurve> {
    let in_slot = |kinds: Vec<CurveKind>, slot: Slot| -> Vec<GeneratorCurve> {
        kinds.into_iter().map(|k| GeneratorCurve::new(k, slot)).collect()
    };
    match group {
        Group::E6 => Slot::ALL.iter().flat_map(|&s| in_slot(so91_kinds(), s)).collect(),
        Group::F4 => Slot::ALL.iter().flat_map(|&s| in_slot(so9_kinds(), s)).collect(),
        Group::SO91 => in_slot(so91_kinds(), slot),
        Group::SO9 => in_slot(so9_kinds(), slot),
        Group::SO8 => in_slot(so8_kinds(), slot),
        Group::SO7 => in_slot(so7_kinds(), slot),
        Group::G2 => g2_curves(slot),
    }
}

/// Tangent vector of a curve at the identity, as a 27×27 real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement(pub LinearOp27);

impl LieElement {
    pub fn flatten(&self) -> &[f64] {
        self.0.as_slice()
    }
}

/// `(op(c(h)) − op(c(−h)))/(2h) · op(c(0))⁻¹`.
pub fn lie_element(curve: &GeneratorCurve, h: f64) -> Result<LieElement> {
    let plus = curve.at(h).as_linear_op();
    let minus = curve.at(-h).as_linear_op();
    let base = curve.at(0.0).as_linear_op();
    let inv = base
        .try_inverse()
        .ok_or_else(|| Error::Singular(curve.label()))?;
    Ok(LieElement(((plus - minus) / (2.0 * h)) * inv))
}

/// Lie elements of every curve, in input order.
pub fn lie_elements(curves: &[GeneratorCurve], h: f64, exec: Execution) -> Result<Vec<LieElement>> {
    exec::map(exec, curves, |c| lie_element(c, h)).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// All singular values, largest first.
    pub singular_values: Vec<f64>,
    /// `σ_rank / σ_{rank+1}`; infinite when nothing lies below the threshold.
    pub gap: f64,
}

/// Numerical rank of the span of `elements`: the number of singular values
/// above `tau · σ_max` of the 729 × n matrix of flattened elements.
pub fn lie_rank(elements: &[LieElement], tau: f64) -> RankReport {
    if elements.is_empty() {
        return RankReport {
            rank: 0,
            singular_values: Vec::new(),
            gap: f64::INFINITY,
        };
    }
    let m = DMatrix::from_fn(729, elements.len(), |r, c| elements[c].flatten()[r]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let cutoff = tau * sv[0];
    let rank = sv.iter().filter(|v| **v > cutoff).count();
    let gap = match (rank, sv.get(rank)) {
        (0, _) | (_, None) => f64::INFINITY,
        (r, Some(next)) if *next > 0.0 => sv[r - 1] / next,
        _ => f64::INFINITY,
    };
    RankReport {
        rank,
        singular_values: sv,
        gap,
    }
}

/// Whether two families of Lie elements span the same subspace.
pub fn span_equal(a: &[LieElement], b: &[LieElement], tau: f64) -> bool {
    let ra = lie_rank(a, tau).rank;
    let rb = lie_rank(b, tau).rank;
    let both: Vec<LieElement> = a.iter().chain(b).cloned().collect();
    let rab = lie_rank(&both, tau).rank;
    ra == rb && rb == rab
}

/// Applies `embed(diag(q, q̄), 0)` and measures the departure from
/// `a ↦ q̄aq̄`, `b ↦ bq`, `c ↦ qc` with the diagonal fixed.
pub fn so8_action_check(q: &Octonion, x: &JordanMatrix) -> Result<f64> {
    if (q.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("q must be a unit octonion, |q| = {}", q.norm())));
    }
    let qb = q.conj();
    let layer = embed(&OctMatrix2::from_diag([*q, qb]), Slot::Zero);
    let y = NestedMap3::single(layer).vector_apply(x);
    let expected = JordanMatrix::new(x.diag, qb * (x.a * qb), x.b * *q, *q * x.c);
    Ok(y.max_diff(&expected))
}

/// The 8×8 maps induced on the `a`, `b` and `c` slots by a nested map,
/// together with the largest entry of the 27×27 action outside those three
/// blocks and the identity on the diagonal.
pub fn slot_maps(nm: &NestedMap3) -> ([OctonionMap; 3], f64) {
    let op = nm.as_linear_op();
    let mut maps = [OctonionMap::identity(); 3];
    let mut leak = 0.0_f64;
    for r in 0..27 {
        for c in 0..27 {
            let block_r = if r < 3 { None } else { Some((r - 3) / 8) };
            let block_c = if c < 3 { None } else { Some((c - 3) / 8) };
            let v = op[(r, c)];
            match (block_r, block_c) {
                (Some(br), Some(bc)) if br == bc => {
                    maps[br].0[(c - 3) % 8][(r - 3) % 8] = v;
                }
                (None, None) => {
                    let target = if r == c { 1.0 } else { 0.0 };
                    leak = leak.max((v - target).abs());
                }
                _ => leak = leak.max(v.abs()),
            }
        }
    }
    (maps, leak)
}

/// Nested map replacing each flip `𝒬_q̂` of a four-flip curve by `q̂ℐ`.
pub fn diagonal_g2_map(kind: CurveKind, theta: f64) -> Result<NestedMap3> {
    let CurveKind::FourFlip { s, u, w } = kind else {
        return Err(Error::Domain(format!("{} is not a four-flip curve", kind.label())));
    };
    let units = four_flip_units(s, u, w, theta.cos(), theta.sin());
    Ok(NestedMap::from_layers(
        units.into_iter().map(OctMatrix3::scalar).collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G2TrialityReport {
    pub theta: f64,
    /// Largest entry difference between the maps induced on `a`, `b`, `c`.
    pub slot_map_spread: f64,
    /// Largest 27×27 entry outside the three octonion blocks and the fixed diagonal.
    pub block_leak: f64,
    /// Residual of the induced map as an automorphism of the octonions.
    pub automorphism_residual: f64,
    /// Difference from the map obtained with `q̂ℐ` layers.
    pub diagonal_difference: f64,
    /// `max(|f(k) − k|, |f(ℓ) − ℓ|)` for the reference curve.
    pub fixed_residual: f64,
}

impl G2TrialityReport {
    pub fn max_residual(&self) -> f64 {
        self.slot_map_spread
            .max(self.block_leak)
            .max(self.automorphism_residual)
            .max(self.diagonal_difference)
    }
}

/// Evaluates the triality-on-`G₂` properties of a four-flip curve at `theta`.
pub fn g2_triality_check(curve: &GeneratorCurve, theta: f64) -> Result<G2TrialityReport> {
    let nm = curve.at(theta);
    let ([ma, mb, mc], block_leak) = slot_maps(&nm);
    let slot_map_spread = ma.max_diff(&mb).max(ma.max_diff(&mc)).max(mb.max_diff(&mc));
    let automorphism_residual = [ma, mb, mc]
        .iter()
        .map(|m| is_automorphism(m, 0.0).residual)
        .fold(0.0_f64, f64::max);
    let diag = diagonal_g2_map(curve.kind, theta)?;
    let (dmaps, dleak) = slot_maps(&diag);
    let diagonal_difference = dmaps
        .iter()
        .zip([ma, mb, mc].iter())
        .map(|(d, m)| d.max_diff(m))
        .fold(dleak, f64::max);
    let fixed_residual = match curve.kind {
        CurveKind::FourFlip { s, u, w } => {
            let fixed = [Octonion::unit(s) * Octonion::unit(u), Octonion::unit(w)];
            fixed
                .iter()
                .map(|x| (ma.apply(x) - *x).norm())
                .fold(0.0_f64, f64::max)
        }
        _ => unreachable!("checked by diagonal_g2_map"),
    };
    Ok(G2TrialityReport {
        theta,
        slot_map_spread,
        block_leak,
        automorphism_residual,
        diagonal_difference,
        fixed_residual,
    })
}

/// Checks a single 2×2 roster layer: complex, well defined, compatible, with
/// determinant `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LayerCheck {
    pub complex: bool,
    pub welldefined: bool,
    pub compatible: bool,
    pub det: f64,
    pub pass: bool,
}

pub fn check_layer(m: &OctMatrix2, tol: f64) -> LayerCheck {
    use crate::transform::{complex_det, is_compatible, is_welldefined, DEFAULT_COMPATIBILITY_SEED};
    let complex = crate::transform::is_complex(m, tol).is_complex;
    let welldefined = is_welldefined(m, tol).holds && is_welldefined(&embed(m, Slot::Zero), tol).holds;
    let compatible = is_compatible(m, tol, DEFAULT_COMPATIBILITY_SEED).holds;
    let (det, det_ok) = match complex_det(m, tol) {
        Ok(d) => (d.det.re(), d.is_real && ((d.det.re().abs() - 1.0).abs() <= tol)),
        Err(_) => (f64::NAN, false),
    };
    LayerCheck {
        complex,
        welldefined,
        compatible,
        det,
        pass: complex && welldefined && compatible && det_ok,
    }
}

/// Imaginary unit helper for callers building custom curves.
pub fn basis_unit(idx: usize) -> Result<ImaginaryUnit> {
    ImaginaryUnit::basis(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roster_sizes() {
        assert_eq!(roster(Group::E6).len(), 135);
        assert_eq!(roster(Group::SO91).len(), 45);
        assert_eq!(roster(Group::SO9).len(), 36);
        assert_eq!(roster(Group::SO8).len(), 28);
        assert_eq!(roster(Group::SO7).len(), 21);
        assert_eq!(roster(Group::F4).len(), 108);
        assert!(roster(Group::F4).iter().all(|c| !c.kind.is_boost()));
    }

    #[test]
    fn group_names_parse() {
        assert_eq!("e6".parse::<Group>().unwrap(), Group::E6);
        assert_eq!("SO(9,1)".parse::<Group>().unwrap(), Group::SO91);
        assert!(matches!("bogus".parse::<Group>(), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn every_layer_is_admissible() {
        for curve in roster(Group::SO91).iter().chain(g2_curves(Slot::Zero).iter()) {
            for theta in [0.0, 0.37, -1.2] {
                for layer in &curve.layers2(theta).layers {
                    let c = check_layer(layer, 1e-9);
                    assert!(c.pass, "{} at {theta}: {c:?}", curve.label());
                    let flip = matches!(curve.kind, CurveKind::FlipPair { .. } | CurveKind::FourFlip { .. });
                    let expected = if flip { -1.0 } else { 1.0 };
                    assert!((c.det - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn diagonal_boost_derivative_is_analytic() {
        let c = GeneratorCurve::new(CurveKind::DiagonalBoost, Slot::Zero);
        let l = lie_element(&c, DEFAULT_H_STEP).unwrap().0;
        // p ↦ e^θ p, m ↦ e^{−θ} m, n, a fixed, b ↦ e^{−θ/2} b, c ↦ e^{θ/2} c
        let mut expected = LinearOp27::zeros();
        expected[(0, 0)] = 1.0;
        expected[(1, 1)] = -1.0;
        for k in 0..8 {
            expected[(11 + k, 11 + k)] = -0.5;
            expected[(19 + k, 19 + k)] = 0.5;
        }
        assert!((l - expected).amax() < 1e-9);
    }

    #[test]
    fn transverse_generator_annihilates_diagonal() {
        let c = GeneratorCurve::new(CurveKind::Transverse { unit: basis::I }, Slot::Zero);
        let l = lie_element(&c, DEFAULT_H_STEP).unwrap().0;
        for j in 0..3 {
            assert!(l.column(j).amax() < 1e-9);
            assert!(l.row(j).amax() < 1e-9);
        }
    }

    #[test]
    fn flip_pair_base_point_is_involution() {
        let c = GeneratorCurve::new(CurveKind::FlipPair { s: basis::I, t: basis::J }, Slot::Zero);
        let op = c.at(0.0).as_linear_op();
        assert!((op * op - LinearOp27::identity()).amax() < 1e-14);
        assert!((op - LinearOp27::identity()).amax() > 1.0);
    }

    #[test]
    fn small_group_ranks() {
        let tau = DEFAULT_RANK_TOL;
        let so7 = lie_elements(&roster(Group::SO7), DEFAULT_H_STEP, Execution::Sequential).unwrap();
        assert_eq!(lie_rank(&so7, tau).rank, 21);
        let g2 = lie_elements(&g2_curves(Slot::Zero), DEFAULT_H_STEP, Execution::default()).unwrap();
        let rep = lie_rank(&g2, tau);
        assert_eq!(rep.rank, 14);
        assert!(rep.gap > 1e4);
    }

    #[test]
    fn ell_only_g2_curves_fall_short() {
        let curves: Vec<GeneratorCurve> = g2_kinds_ell_only()
            .into_iter()
            .map(|k| GeneratorCurve::new(k, Slot::Zero))
            .collect();
        let el = lie_elements(&curves, DEFAULT_H_STEP, Execution::default()).unwrap();
        assert!(lie_rank(&el, DEFAULT_RANK_TOL).rank < 14);
    }

    #[test]
    fn so8_actions() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let x = random::jordan(&mut rng);
        assert!(so8_action_check(&Octonion::ONE, &x).unwrap() < 1e-15);
        let q = random::unit_octonion(&mut rng);
        assert!(so8_action_check(&q, &x).unwrap() < 1e-12);
        assert!(so8_action_check(&(q * 2.0), &x).is_err());
        // q and −q: same action on a, opposite on b and c
        let layer = |q: Octonion| NestedMap3::single(embed(&OctMatrix2::from_diag([q, q.conj()]), Slot::Zero));
        let y1 = layer(q).vector_apply(&x);
        let y2 = layer(-q).vector_apply(&x);
        assert!((y1.a - y2.a).norm() < 1e-12);
        assert!((y1.c + y2.c).norm() < 1e-12);
        assert!((y1.b + y2.b).norm() < 1e-12);
    }

    #[test]
    fn so8_rotation_of_j_in_a_slot() {
        let q = ImaginaryUnit::basis(basis::I).unwrap().exp(std::f64::consts::FRAC_PI_4);
        let x = JordanMatrix::new([0.0; 3], Octonion::j(), Octonion::ZERO, Octonion::ZERO);
        let y = NestedMap3::single(embed(&OctMatrix2::from_diag([q, q.conj()]), Slot::Zero)).vector_apply(&x);
        // q̄ j q̄ = j q q̄ ... j anticommutes with i, so q̄ j q̄ = j q q̄ = j
        assert!((y.a - Octonion::j()).norm() < 1e-12);
        let x = JordanMatrix::new([0.0; 3], Octonion::ONE, Octonion::ZERO, Octonion::ZERO);
        let y = NestedMap3::single(embed(&OctMatrix2::from_diag([q, q.conj()]), Slot::Zero)).vector_apply(&x);
        // q̄² = e^{−iπ/2} = −i
        assert!((y.a + Octonion::i()).norm() < 1e-12);
    }

    #[test]
    fn reference_g2_curve() {
        let c = g2_reference_curve(Slot::Zero);
        for theta in [0.3, -0.8, 2.1] {
            let r = g2_triality_check(&c, theta).unwrap();
            assert!(r.max_residual() < 1e-9, "{r:?}");
            assert!(r.fixed_residual < 1e-12);
        }
        assert!(diagonal_g2_map(CurveKind::DiagonalBoost, 0.1).is_err());
    }
}
