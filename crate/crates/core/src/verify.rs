//! Verification suites over the generator roster, triality and the Cayley
//! spinor machinery, with structured reports.

use rand::Rng;
use serde::Serialize;

use crate::cayley::{classify, dirac_equiv_check, psquare_decompose, CayleySpinor, DEGENERACY_TOL};
use crate::exec::{self, Execution};
use crate::generators::{
    check_layer, g2_curves, g2_reference_curve, g2_triality_check, lie_elements, lie_rank,
    roster_in_slot, so8_action_check, span_equal, G2TrialityReport, GeneratorCurve, Group,
    DEFAULT_H_STEP, DEFAULT_RANK_TOL,
};
use crate::jordan::JordanMatrix;
use crate::octonion::{subalgebra_dimension, triality_ell_conjugation_check};
use crate::random;
use crate::transform::{NestedMap3, Slot};
use crate::{Result, IDENTITY_TOL};

/// Minimum ratio between the last retained and first discarded singular value.
pub const MIN_RANK_GAP: f64 = 1e4;
/// Relative tolerance for determinant preservation under composed maps.
pub const DET_REL_TOL: f64 = 1e-7;
/// Tolerance for equality of induced 8×8 octonion maps.
pub const MAP_TOL: f64 = 1e-8;
/// Minimum trace change that counts as a boost moving the trace.
pub const TRACE_CHANGE_MIN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Settings {
    pub tol: f64,
    pub rank_tol: f64,
    pub h_step: f64,
    pub seed: u64,
    /// Number of random trials per sampled check.
    pub trials: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: IDENTITY_TOL,
            rank_tol: DEFAULT_RANK_TOL,
            h_step: DEFAULT_H_STEP,
            seed: 0,
            trials: 50,
        }
    }
}

/// A single comparison. `expected` is a human-readable target such as
/// `"78"`, `"<= 1e-9"` or `">= 10000"`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn equal(name: &str, expected: f64, observed: f64) -> Self {
        Check {
            name: name.into(),
            expected: format!("{expected}"),
            observed,
            tolerance: 0.0,
            pass: observed == expected,
        }
    }

    pub fn at_most(name: &str, observed: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            expected: format!("<= {bound:e}"),
            observed,
            tolerance: bound,
            pass: observed <= bound,
        }
    }

    pub fn at_least(name: &str, observed: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            expected: format!(">= {bound:e}"),
            observed,
            tolerance: bound,
            pass: observed >= bound,
        }
    }

    pub fn holds(name: &str, holds: bool) -> Self {
        Check {
            name: name.into(),
            expected: "true".into(),
            observed: if holds { 1.0 } else { 0.0 },
            tolerance: 0.0,
            pass: holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            suite: suite.into(),
            seed,
            checks,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub slot: usize,
    pub curve_count: usize,
    pub rank: usize,
    pub expected: usize,
    pub gap: f64,
    pub singular_values_head: Vec<f64>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Random composition of `depth` roster curves at parameters in `[-1, 1]`.
pub fn random_composition<R: Rng + ?Sized>(
    rng: &mut R,
    curves: &[GeneratorCurve],
    depth: usize,
) -> NestedMap3 {
    (0..depth).fold(NestedMap3::identity(), |acc, _| {
        let c = curves[rng.random_range(0..curves.len())];
        acc.then(&c.at(rng.random_range(-1.0..1.0)))
    })
}

/// `|det T(X) − det X| / max(1, ‖X‖, ‖T(X)‖)³` for one random composition.
pub fn det_preservation_error<R: Rng + ?Sized>(
    rng: &mut R,
    curves: &[GeneratorCurve],
    depth: usize,
) -> f64 {
    let x = random::jordan(rng);
    let nm = random_composition(rng, curves, depth);
    let y = nm.vector_apply(&x);
    let scale = 1f64.max(x.norm()).max(y.norm()).powi(3);
    (y.det() - x.det()).abs() / scale
}

/// Largest trace change over boost curves of `curves` at `theta`, on the
/// identity and on `samples` random matrices.
pub fn boost_trace_change<R: Rng + ?Sized>(
    rng: &mut R,
    curves: &[GeneratorCurve],
    theta: f64,
    samples: usize,
) -> Vec<f64> {
    let mut tests = vec![JordanMatrix::identity()];
    tests.extend((0..samples).map(|_| random::jordan(rng)));
    curves
        .iter()
        .filter(|c| c.kind.is_boost())
        .map(|c| {
            let nm = c.at(theta);
            tests
                .iter()
                .map(|x| (nm.vector_apply(x).trace() - x.trace()).abs())
                .fold(0.0_f64, f64::max)
        })
        .collect()
}

/// Rank, layer admissibility, determinant and trace checks for one group.
pub fn verify_group(group: Group, slot: Slot, s: &Settings, exec: Execution) -> Result<GroupReport> {
    let curves = roster_in_slot(group, slot);
    let elements = lie_elements(&curves, s.h_step, exec)?;
    let rank = lie_rank(&elements, s.rank_tol);
    let expected = group.dimension();

    let mut checks = vec![
        Check::equal("rank", expected as f64, rank.rank as f64),
        Check::at_least("singular value gap", rank.gap, MIN_RANK_GAP),
    ];

    let layer_failures: usize = exec::map(exec, &curves, |c| {
        [0.0, 0.37, -1.1]
            .iter()
            .flat_map(|&t| c.layers2(t).layers)
            .filter(|m| !check_layer(m, s.tol).pass)
            .count()
    })
    .into_iter()
    .sum();
    checks.push(Check::equal("inadmissible layers", 0.0, layer_failures as f64));

    let det_err = exec::trials(exec, s.seed, s.trials, |_, rng| {
        det_preservation_error(rng, &curves, 5)
    })
    .into_iter()
    .fold(0.0_f64, f64::max);
    checks.push(Check::at_most("determinant preservation", det_err, DET_REL_TOL));

    if group.is_compact() {
        let tr_err = exec::trials(exec, s.seed ^ 0x7472, s.trials, |_, rng| {
            let x = random::jordan(rng);
            let y = random_composition(rng, &curves, 5).vector_apply(&x);
            (y.trace() - x.trace()).abs() / 1f64.max(x.norm())
        })
        .into_iter()
        .fold(0.0_f64, f64::max);
        checks.push(Check::at_most("trace preservation", tr_err, s.tol));
    } else {
        let mut rng = exec::trial_rng(s.seed, usize::MAX);
        let changes = boost_trace_change(&mut rng, &curves, 0.5, 4);
        let weakest = changes.iter().copied().fold(f64::INFINITY, f64::min);
        checks.push(Check::at_least("every boost changes trace", weakest, TRACE_CHANGE_MIN));
    }

    match group {
        Group::G2 => {
            let worst = exec::map(exec, &curves, |c| {
                g2_triality_check(c, 0.3).map(|r| r.max_residual())
            })
            .into_iter()
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0_f64, f64::max);
            checks.push(Check::at_most("induced maps are equal automorphisms", worst, MAP_TOL));
        }
        Group::SO8 => {
            let worst = so8_worst(s, exec)?;
            checks.push(Check::at_most("so8 slot actions", worst, s.tol));
        }
        _ => {}
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(GroupReport {
        group: group.name().into(),
        slot: slot.index(),
        curve_count: curves.len(),
        rank: rank.rank,
        expected,
        gap: rank.gap,
        singular_values_head: rank.singular_values.iter().take(8).copied().collect(),
        seed: s.seed,
        checks,
        pass,
    })
}

fn so8_worst(s: &Settings, exec: Execution) -> Result<f64> {
    Ok(exec::trials(exec, s.seed ^ 0x5038, s.trials, |_, rng| {
        let q = random::unit_octonion(rng);
        let x = random::jordan(rng);
        so8_action_check(&q, &x)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?
    .into_iter()
    .fold(0.0_f64, f64::max))
}

/// SO(8) slot actions, the four-flip `G₂` curve, ℓ-conjugation and the
/// identification of the SO(8) and `G₂` spans across slots.
pub fn triality_suite(s: &Settings, exec: Execution) -> Result<Report> {
    let mut checks = vec![Check::at_most("so8 slot actions", so8_worst(s, exec)?, s.tol)];

    let reference = g2_reference_curve(Slot::Zero);
    let thetas = [-1.3, -0.4, 0.3, 0.9, 2.0];
    let reports = exec::map(exec, &thetas, |&t| g2_triality_check(&reference, t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let worst = |f: fn(&G2TrialityReport) -> f64| {
        reports.iter().map(f).fold(0.0_f64, f64::max)
    };
    checks.push(Check::at_most("four-flip slot maps coincide", worst(|r| r.slot_map_spread), MAP_TOL));
    checks.push(Check::at_most("four-flip block structure", worst(|r| r.block_leak), MAP_TOL));
    checks.push(Check::at_most("four-flip is an automorphism", worst(|r| r.automorphism_residual), MAP_TOL));
    checks.push(Check::at_most("four-flip equals scalar layers", worst(|r| r.diagonal_difference), MAP_TOL));
    checks.push(Check::at_most("four-flip fixes k and l", worst(|r| r.fixed_residual), s.tol));

    let ell = triality_ell_conjugation_check(s.tol);
    checks.push(Check::at_most("l-conjugation identity", ell.max_residual, s.tol));

    let so8: Vec<_> = Slot::ALL
        .iter()
        .map(|&slot| lie_elements(&roster_in_slot(Group::SO8, slot), s.h_step, exec))
        .collect::<Result<_>>()?;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        checks.push(Check::holds(
            &format!("so8 span slot {a} = slot {b}"),
            span_equal(&so8[a], &so8[b], s.rank_tol),
        ));
    }
    let g2: Vec<_> = [Slot::Zero, Slot::One]
        .iter()
        .map(|&slot| lie_elements(&g2_curves(slot), s.h_step, exec))
        .collect::<Result<_>>()?;
    checks.push(Check::holds("g2 span slot 0 = slot 1", span_equal(&g2[0], &g2[1], s.rank_tol)));

    Ok(Report::new("triality", s.seed, checks))
}

/// Dirac equivalence and p-square classification on seeded samples.
pub fn cayley_suite(s: &Settings, exec: Execution) -> Result<Report> {
    let quaternionic = exec::trials(exec, s.seed, s.trials, |_, rng| {
        let b = random::quaternionic_basis(rng);
        let psi = CayleySpinor::new(
            [random::in_span(rng, &b), random::in_span(rng, &b)],
            random::in_span(rng, &b),
        );
        let (f, d) = dirac_equiv_check(&psi);
        f.max(d)
    })
    .into_iter()
    .fold(0.0_f64, f64::max);
    let octonionic = exec::trials(exec, s.seed ^ 0x0c7, s.trials, |_, rng| {
        let psi = CayleySpinor::new(
            [random::octonion(rng), random::octonion(rng)],
            random::octonion(rng),
        );
        if subalgebra_dimension(&psi.components()) == 8 {
            dirac_equiv_check(&psi).0
        } else {
            f64::INFINITY
        }
    })
    .into_iter()
    .fold(f64::INFINITY, f64::min);

    let e6 = roster_in_slot(Group::E6, Slot::Zero);
    let decomposition = exec::trials(exec, s.seed ^ 0xdec, s.trials, |_, rng| {
        let a = random::jordan(rng);
        let r = psquare_decompose(&a).residuals(&a);
        let scale = a.norm();
        (r.reconstruction / scale).max(r.orthogonality).max(r.eigen / scale)
    })
    .into_iter()
    .fold(0.0_f64, f64::max);
    let class_changes = exec::trials(exec, s.seed ^ 0xc1a, s.trials, |t, rng| {
        let a = match t % 4 {
            0 => JordanMatrix::unit_diag(0),
            1 => JordanMatrix::diagonal(1.0, 1.0, 0.0),
            2 => JordanMatrix::diagonal(1.0, -2.0, 0.0),
            _ => random::jordan(rng),
        };
        let nm = random_composition(rng, &e6, 5);
        usize::from(classify(&nm.vector_apply(&a)) != classify(&a))
    })
    .into_iter()
    .sum::<usize>();

    let checks = vec![
        Check::at_most("quaternionic spinors satisfy both equations", quaternionic, s.tol),
        Check::at_least("octonionic spinors violate P*P = 0", octonionic, 1e-3),
        Check::at_most("p-square decomposition residuals", decomposition, DEGENERACY_TOL),
        Check::equal("class changes under E6 compositions", 0.0, class_changes as f64),
    ];
    Ok(Report::new("cayley", s.seed, checks))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FullReport {
    pub groups: Vec<GroupReport>,
    pub suites: Vec<Report>,
    pub pass: bool,
}

/// Every group in slot 0, then the triality and Cayley suites.
pub fn report_all(s: &Settings, exec: Execution) -> Result<FullReport> {
    let groups = Group::ALL
        .iter()
        .map(|&g| verify_group(g, Slot::Zero, s, exec))
        .collect::<Result<Vec<_>>>()?;
    let suites = vec![triality_suite(s, exec)?, cayley_suite(s, exec)?];
    let pass = groups.iter().all(|g| g.pass) && suites.iter().all(|r| r.pass);
    Ok(FullReport { groups, suites, pass })
}
