//! Cayley spinors, the octonionic Dirac equation, and p-square decompositions.
//!
//! A Cayley spinor is the column `Ψ = (θ; ξ̄)` with `θ ∈ 𝕆²`, `ξ ∈ 𝕆`. Its
//! square `ΨΨ†` packs the momentum `P = θθ†` and the spinor `ψ = θξ` into a
//! single Jordan matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{Hermitian2, JordanMatrix};
use crate::octonion::Octonion;
use crate::transform::{complex_check, HermitianMatrix, NestedMap3, OctMatrix3};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CayleySpinor {
    pub theta: [Octonion; 2],
    pub xi: Octonion,
}

impl CayleySpinor {
    pub fn new(theta: [Octonion; 2], xi: Octonion) -> Self {
        CayleySpinor { theta, xi }
    }

    /// The column `(θ₁, θ₂, ξ̄)`.
    pub fn column(&self) -> [Octonion; 3] {
        [self.theta[0], self.theta[1], self.xi.conj()]
    }

    /// `θ†θ + |ξ|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.theta[0].norm_sqr() + self.theta[1].norm_sqr() + self.xi.norm_sqr()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero spinor".into()));
        }
        Ok(CayleySpinor::new(
            [self.theta[0] / n, self.theta[1] / n],
            self.xi / n,
        ))
    }

    /// All components, for subalgebra computations.
    pub fn components(&self) -> [Octonion; 3] {
        [self.theta[0], self.theta[1], self.xi]
    }

    /// `𝒫 = ΨΨ†`.
    pub fn square(&self) -> JordanMatrix {
        JordanMatrix::from_oct(&OctMatrix3::outer(&self.column()))
    }
}

/// `P̃ = P − tr(P) I`.
pub fn trace_reversal(p: &Hermitian2) -> Hermitian2 {
    let t = p.trace();
    Hermitian2::new([p.diag[0] - t, p.diag[1] - t], p.off)
}

/// `‖P̃ψ‖`.
pub fn dirac_residual(p: &Hermitian2, psi: &[Octonion; 2]) -> f64 {
    let v = trace_reversal(p).mul_vec(psi);
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiracSolution {
    pub theta: [Octonion; 2],
    /// `+1` or `−1`, with `P = sign · θθ†`.
    pub sign: f64,
}

impl DiracSolution {
    /// `max(‖P̃θ‖, ‖sign·θθ† − P‖)`.
    pub fn residual(&self, p: &Hermitian2) -> f64 {
        let factor = (Hermitian2::outer(&self.theta).scale(self.sign) - *p).norm();
        dirac_residual(p, &self.theta).max(factor)
    }
}

/// Solves `P = ±θθ†` for a null momentum `P` with complex entries.
///
/// The sign follows `tr P`; the first nonzero component of `θ` is real and
/// positive, and `θ` stays in the complex subalgebra of `P`.
pub fn dirac_solve(p: &Hermitian2, tol: f64) -> Result<DiracSolution> {
    let scale = p.norm();
    if scale == 0.0 {
        return Err(Error::Domain("momentum must be nonzero".into()));
    }
    if !p.is_complex(tol) {
        let c = complex_check(&[p.off], tol);
        return Err(Error::NotComplex { residual: c.residual });
    }
    let det = p.det();
    if det.abs() > tol * scale * scale {
        return Err(Error::NoSolution { det });
    }
    let sign = if p.trace() >= 0.0 { 1.0 } else { -1.0 };
    let q = p.scale(sign);
    let theta = if q.diag[0] >= q.diag[1] {
        let r = q.diag[0].max(0.0).sqrt();
        [Octonion::real(r), q.off / r]
    } else {
        // θ = (ā/√x₂, √x₂) reproduces x₁ = |a|²/x₂; rotate so the first
        // nonzero component is real positive
        let r = q.diag[1].max(0.0).sqrt();
        let first = q.off.conj() / r;
        let n = first.norm();
        if n <= tol * scale.sqrt() {
            [Octonion::ZERO, Octonion::real(r)]
        } else {
            // right phase u = conj(first)/|first| lies in the same complex subalgebra
            let u = first.conj() / n;
            [first * u, Octonion::real(r) * u]
        }
    };
    Ok(DiracSolution { theta, sign })
}

/// `(‖𝒫 * 𝒫‖, ‖P̃ψ‖)` for `𝒫 = ΨΨ†`, `P = θθ†`, `ψ = θξ`.
pub fn dirac_equiv_check(psi: &CayleySpinor) -> (f64, f64) {
    let sq = psi.square();
    let freudenthal = sq.freudenthal(&sq).norm();
    let p = Hermitian2::outer(&psi.theta);
    let spinor = [psi.theta[0] * psi.xi, psi.theta[1] * psi.xi];
    (freudenthal, dirac_residual(&p, &spinor))
}

/// `𝒫∘𝒫 = 𝒫` and `tr 𝒫 = 1`.
pub fn cayley_plane_check(p: &JordanMatrix, tol: f64) -> bool {
    p.square().max_diff(p) <= tol && (p.trace() - 1.0).abs() <= tol
}

/// One eigenvalue of a Jordan matrix with its (possibly non-primitive) projector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPiece {
    pub lambda: f64,
    pub projector: JordanMatrix,
    /// Trace of the projector: the number of primitive idempotents it contains.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PSquareDecomposition {
    /// Pieces ordered by decreasing eigenvalue.
    pub pieces: Vec<EigenPiece>,
    /// Number of nonzero eigenvalues, counted with multiplicity.
    pub p: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecompositionResiduals {
    /// `‖A − Σ λᵢPᵢ‖`
    pub reconstruction: f64,
    /// `max ‖Pᵢ∘Pⱼ‖, i ≠ j`
    pub orthogonality: f64,
    /// `max ‖A∘Pᵢ − λᵢPᵢ‖`
    pub eigen: f64,
    /// `max ‖Pᵢ∘Pᵢ − Pᵢ‖`
    pub idempotency: f64,
    /// `max |tr Pᵢ − multiplicityᵢ|`
    pub trace: f64,
}

impl PSquareDecomposition {
    /// All three eigenvalues, largest first, repeated by multiplicity.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pieces
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.lambda, p.multiplicity))
            .collect()
    }

    pub fn reconstruct(&self) -> JordanMatrix {
        self.pieces
            .iter()
            .fold(JordanMatrix::zero(), |acc, p| acc + p.projector.scale(p.lambda))
    }

    pub fn residuals(&self, a: &JordanMatrix) -> DecompositionResiduals {
        let mut r = DecompositionResiduals {
            reconstruction: (*a - self.reconstruct()).norm(),
            orthogonality: 0.0,
            eigen: 0.0,
            idempotency: 0.0,
            trace: 0.0,
        };
        for (i, pi) in self.pieces.iter().enumerate() {
            let proj = &pi.projector;
            r.eigen = r.eigen.max((a.jordan(proj) - proj.scale(pi.lambda)).norm());
            r.idempotency = r.idempotency.max((proj.square() - *proj).norm());
            r.trace = r.trace.max((proj.trace() - pi.multiplicity as f64).abs());
            for pj in self.pieces.iter().skip(i + 1) {
                r.orthogonality = r.orthogonality.max(proj.jordan(&pj.projector).norm());
            }
        }
        r
    }
}

/// Relative gap below which two eigenvalues are merged.
pub const DEGENERACY_TOL: f64 = 1e-7;
/// Relative size below which an eigenvalue counts as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-8;

/// Spectral decomposition `A = Σ λᵢPᵢ` by Lagrange interpolation in Jordan
/// powers of `A`.
///
/// Eigenvalues closer than [`DEGENERACY_TOL`]`·‖A‖` share one projector of
/// higher multiplicity, unless `A` is diagonal, in which case the diagonal
/// matrix units are returned directly.
pub fn psquare_decompose(a: &JordanMatrix) -> PSquareDecomposition {
    let scale = a.norm();
    let zero_tol = ZERO_EIGENVALUE_TOL * scale;
    let count_nonzero = |pieces: &[EigenPiece]| {
        pieces
            .iter()
            .filter(|p| p.lambda.abs() > zero_tol)
            .map(|p| p.multiplicity)
            .sum()
    };

    let off_diag = a.a.norm().max(a.b.norm()).max(a.c.norm());
    if off_diag <= f64::EPSILON * scale {
        let mut pieces: Vec<EigenPiece> = (0..3)
            .map(|k| EigenPiece {
                lambda: a.diag[k],
                projector: JordanMatrix::unit_diag(k),
                multiplicity: 1,
            })
            .collect();
        pieces.sort_by(|x, y| y.lambda.total_cmp(&x.lambda));
        let p = count_nonzero(&pieces);
        return PSquareDecomposition { pieces, p };
    }

    let ev = a.eigenvalues();
    // cluster sorted eigenvalues
    let mut clusters: Vec<(f64, usize)> = Vec::with_capacity(3);
    for &l in &ev {
        match clusters.last_mut() {
            Some((mean, count)) if (*mean - l).abs() <= DEGENERACY_TOL * scale => {
                *mean = (*mean * *count as f64 + l) / (*count as f64 + 1.0);
                *count += 1;
            }
            _ => clusters.push((l, 1)),
        }
    }

    let id = JordanMatrix::identity();
    let a2 = a.square();
    let pieces: Vec<EigenPiece> = match clusters.as_slice() {
        [(l, m)] => vec![EigenPiece {
            lambda: *l,
            projector: id,
            multiplicity: *m,
        }],
        [(l1, m1), (l2, m2)] => vec![
            EigenPiece {
                lambda: *l1,
                projector: (*a - id.scale(*l2)).scale(1.0 / (l1 - l2)),
                multiplicity: *m1,
            },
            EigenPiece {
                lambda: *l2,
                projector: (*a - id.scale(*l1)).scale(1.0 / (l2 - l1)),
                multiplicity: *m2,
            },
        ],
        _ => {
            let l = [clusters[0].0, clusters[1].0, clusters[2].0];
            (0..3)
                .map(|i| {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    let numer = a2 - a.scale(l[j] + l[k]) + id.scale(l[j] * l[k]);
                    EigenPiece {
                        lambda: l[i],
                        projector: numer.scale(1.0 / ((l[i] - l[j]) * (l[i] - l[k]))),
                        multiplicity: 1,
                    }
                })
                .collect()
        }
    };
    let p = count_nonzero(&pieces);
    PSquareDecomposition { pieces, p }
}

/// Thresholds for the `det / σ / tr` cascade, relative to `‖A‖ⁿ` for an
/// invariant of degree `n`.
pub const CLASSIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub p: usize,
    pub trace: f64,
    pub sigma: f64,
    pub det: f64,
}

/// p-square class from the invariants: `det ≠ 0` gives 3, else `σ ≠ 0`
/// gives 2, else `tr ≠ 0` gives 1, else 0.
pub fn classify(a: &JordanMatrix) -> usize {
    classify_details(a).p
}

pub fn classify_details(a: &JordanMatrix) -> Classification {
    let scale = a.norm();
    let (trace, sigma, det) = a.invariants();
    let p = if det.abs() > CLASSIFY_TOL * scale.powi(3) {
        3
    } else if sigma.abs() > CLASSIFY_TOL * scale.powi(2) {
        2
    } else if trace.abs() > CLASSIFY_TOL * scale {
        1
    } else {
        0
    };
    Classification { p, trace, sigma, det }
}

/// `classify(T(A)) = classify(A)`.
pub fn e6_preserves_class_check(nm: &NestedMap3, a: &JordanMatrix) -> bool {
    classify(&nm.vector_apply(a)) == classify(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{roster, CurveKind, GeneratorCurve, Group};
    use crate::octonion::subalgebra_dimension;
    use crate::random;
    use crate::transform::Slot;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn quaternionic_spinor(rng: &mut ChaCha8Rng) -> CayleySpinor {
        let b = random::quaternionic_basis(rng);
        CayleySpinor::new(
            [random::in_span(rng, &b), random::in_span(rng, &b)],
            random::in_span(rng, &b),
        )
    }

    #[test]
    fn square_of_simple_spinors() {
        let e = CayleySpinor::new([Octonion::ONE, Octonion::ZERO], Octonion::ZERO);
        assert_eq!(e.square(), JordanMatrix::unit_diag(0));
        let s = 1.0 / 3f64.sqrt();
        let all = CayleySpinor::new([Octonion::real(s), Octonion::real(s)], Octonion::real(s));
        let sq = all.square();
        assert_relative_eq!(sq.trace(), 1.0, epsilon = 1e-15);
        for k in 0..3 {
            assert_relative_eq!(sq.diag[k], 1.0 / 3.0, epsilon = 1e-15);
        }
        assert_relative_eq!(sq.a.re(), 1.0 / 3.0, epsilon = 1e-15);
        assert!(cayley_plane_check(&sq, 1e-12));
    }

    #[test]
    fn square_layout() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let psi = CayleySpinor::new(
            [random::octonion(&mut rng), random::octonion(&mut rng)],
            random::octonion(&mut rng),
        );
        let sq = psi.square();
        let (p, spinor, n) = sq.split_block();
        assert!(p.max_diff(&Hermitian2::outer(&psi.theta)) < 1e-12);
        assert!((spinor[0] - psi.theta[0] * psi.xi).norm() < 1e-12);
        assert!((spinor[1] - psi.theta[1] * psi.xi).norm() < 1e-12);
        assert_relative_eq!(n, psi.xi.norm_sqr(), epsilon = 1e-12);
        assert_relative_eq!(sq.trace(), psi.norm_sqr(), epsilon = 1e-12);
    }

    #[test]
    fn trace_reversal_examples() {
        assert_eq!(trace_reversal(&Hermitian2::identity()), Hermitian2::identity().scale(-1.0));
        let e11 = Hermitian2::new([1.0, 0.0], Octonion::ZERO);
        assert_eq!(trace_reversal(&e11), Hermitian2::new([0.0, -1.0], Octonion::ZERO));
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let p = random::hermitian2(&mut rng);
        let r = trace_reversal(&p);
        assert_relative_eq!(r.trace(), -p.trace(), epsilon = 1e-14);
        assert!(trace_reversal(&r).max_diff(&p) < 1e-14);
    }

    #[test]
    fn dirac_residual_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let u = random::imaginary_unit(&mut rng);
        let theta = [random::in_complex(&mut rng, &u), random::in_complex(&mut rng, &u)];
        let xi = random::octonion(&mut rng);
        let p = Hermitian2::outer(&theta);
        assert!(dirac_residual(&p, &[theta[0] * xi, theta[1] * xi]) < 1e-12);
        let psi = [random::octonion(&mut rng), random::octonion(&mut rng)];
        let norm = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
        assert_relative_eq!(dirac_residual(&Hermitian2::identity(), &psi), norm, epsilon = 1e-12);
        assert_eq!(dirac_residual(&Hermitian2::zero(), &psi), 0.0);
    }

    #[test]
    fn dirac_solve_examples() {
        let e11 = Hermitian2::new([1.0, 0.0], Octonion::ZERO);
        let s = dirac_solve(&e11, 1e-12).unwrap();
        assert_eq!(s.theta, [Octonion::ONE, Octonion::ZERO]);
        assert_eq!(s.sign, 1.0);
        let ones = Hermitian2::new([1.0, 1.0], Octonion::ONE);
        let s = dirac_solve(&ones, 1e-12).unwrap();
        assert!((s.theta[0] - Octonion::ONE).norm() < 1e-15);
        assert!((s.theta[1] - Octonion::ONE).norm() < 1e-15);
        assert!(matches!(
            dirac_solve(&Hermitian2::identity(), 1e-12),
            Err(Error::NoSolution { .. })
        ));
        assert!(dirac_solve(&Hermitian2::zero(), 1e-12).is_err());
    }

    #[test]
    fn dirac_solve_random_null_momenta() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for trial in 0..50 {
            let u = random::imaginary_unit(&mut rng);
            let mut theta = [random::in_complex(&mut rng, &u), random::in_complex(&mut rng, &u)];
            if trial % 5 == 0 {
                theta[0] = Octonion::ZERO;
            }
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            let p = Hermitian2::outer(&theta).scale(sign);
            let sol = dirac_solve(&p, 1e-9).unwrap();
            assert_eq!(sol.sign, sign);
            assert!(sol.residual(&p) < 1e-9 * p.norm().max(1.0), "trial {trial}");
            let first = if sol.theta[0].norm() > 1e-12 { sol.theta[0] } else { sol.theta[1] };
            assert!(first.im().norm() < 1e-12 && first.re() > 0.0);
            for c in sol.theta {
                assert!(subalgebra_dimension(&[c, u.get()]) <= 2);
            }
        }
        let mixed = Hermitian2::new([1.0, 1.0], Octonion::ONE);
        assert!(dirac_solve(&mixed, 1e-12).is_ok());
    }

    #[test]
    fn dirac_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..20 {
            let psi = quaternionic_spinor(&mut rng);
            let (f, d) = dirac_equiv_check(&psi);
            assert!(f < 1e-9 && d < 1e-9, "{f} {d}");
            let full = CayleySpinor::new(
                [random::octonion(&mut rng), random::octonion(&mut rng)],
                random::octonion(&mut rng),
            );
            assert_eq!(subalgebra_dimension(&full.components()), 8);
            let (f, _) = dirac_equiv_check(&full);
            assert!(f > 1e-3);
        }
        assert_eq!(dirac_equiv_check(&CayleySpinor::default()), (0.0, 0.0));
    }

    #[test]
    fn cayley_plane() {
        assert!(cayley_plane_check(&JordanMatrix::unit_diag(0), 1e-12));
        assert!(!cayley_plane_check(&JordanMatrix::identity(), 1e-12));
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let psi = quaternionic_spinor(&mut rng).normalized().unwrap();
        assert!(cayley_plane_check(&psi.square(), 1e-9));
    }

    #[test]
    fn decompose_examples() {
        let d = psquare_decompose(&JordanMatrix::diagonal(1.0, 2.0, 3.0));
        assert_eq!(d.eigenvalues(), vec![3.0, 2.0, 1.0]);
        assert_eq!(d.pieces[0].projector, JordanMatrix::unit_diag(2));
        assert_eq!(d.p, 3);
        let d = psquare_decompose(&JordanMatrix::unit_diag(0));
        assert_eq!(d.eigenvalues(), vec![1.0, 0.0, 0.0]);
        assert_eq!(d.pieces[0].projector, JordanMatrix::unit_diag(0));
        assert_eq!(d.p, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let psi = quaternionic_spinor(&mut rng).normalized().unwrap();
        let a = psi.square().scale(5.0);
        let d = psquare_decompose(&a);
        let ev = d.eigenvalues();
        assert_relative_eq!(ev[0], 5.0, epsilon = 1e-9);
        assert!(ev[1].abs() < 1e-7 && ev[2].abs() < 1e-7);
        assert_eq!(d.pieces.len(), 2);
        assert_eq!(d.pieces[1].multiplicity, 2);
        assert_eq!(d.p, 1);
        let r = d.residuals(&a);
        assert!(r.reconstruction < 1e-7 * a.norm() && r.orthogonality < 1e-7 && r.eigen < 1e-7 * a.norm());
        let d = psquare_decompose(&JordanMatrix::zero());
        assert_eq!(d.p, 0);
        let d = psquare_decompose(&JordanMatrix::identity().scale(2.0));
        assert_eq!(d.eigenvalues(), vec![2.0; 3]);
    }

    #[test]
    fn decompose_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let a = random::jordan(&mut rng);
            let d = psquare_decompose(&a);
            let r = d.residuals(&a);
            let s = a.norm();
            assert!(r.reconstruction < 1e-7 * s, "{r:?}");
            assert!(r.orthogonality < 1e-7, "{r:?}");
            assert!(r.eigen < 1e-7 * s, "{r:?}");
            assert!(r.idempotency < 1e-7 && r.trace < 1e-7, "{r:?}");
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&JordanMatrix::identity()), 3);
        assert_eq!(classify(&JordanMatrix::diagonal(1.0, 1.0, 0.0)), 2);
        assert_eq!(classify(&JordanMatrix::unit_diag(0)), 1);
        assert_eq!(classify(&JordanMatrix::zero()), 0);
        assert_eq!(classify(&JordanMatrix::diagonal(1.0, -1.0, 0.0)), 2);
    }

    #[test]
    fn boosts_preserve_class() {
        let boost = GeneratorCurve::new(CurveKind::OffDiagonalBoost { unit: 3 }, Slot::One).at(0.8);
        assert!(e6_preserves_class_check(&boost, &JordanMatrix::unit_diag(0)));
        assert_eq!(classify(&boost.vector_apply(&JordanMatrix::unit_diag(0))), 1);
        let id = NestedMap3::identity();
        assert!(e6_preserves_class_check(&id, &JordanMatrix::identity()));
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let curves = roster(Group::E6);
        let a = JordanMatrix::diagonal(1.0, 1.0, 0.0);
        for _ in 0..20 {
            let nm = (0..3).fold(NestedMap3::identity(), |acc, _| {
                let c = curves[rng.random_range(0..curves.len())];
                acc.then(&c.at(rng.random_range(-1.0..1.0)))
            });
            assert!(e6_preserves_class_check(&nm, &a));
        }
    }
}
