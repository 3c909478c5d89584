//! The validation suite behind the `validate` subcommand.
//!
//! Gating checks pin the engine against ground truth (brute-force oracle,
//! analytic signatures, invariants); fixture checks record where the
//! hand-transcribed reference material disagrees with the validated forms.
//! Fixture records never gate: they exist so that the disagreement is
//! visible, quantified, and stable.

use std::f64::consts::PI;

use crate::chain::{Boundary, ChainSpec, Topology};
use crate::dynamics::{propagate_sequence, PropagateOptions};
use crate::error::Result;
use crate::fidelity::optimal_average_fidelity;
use crate::linalg::hermitian_eigenvalues;
use crate::oracle;
use crate::reference::{self, ThreeQubitSystem};
use crate::state::ReducedState;

/// Tolerances of the gating checks; defaults match the advertised contract.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Tolerances {
    pub oracle_equivalence: f64,
    pub sector_confinement: f64,
    pub trace_conservation: f64,
    pub positivity: f64,
    pub conditional_purity: f64,
    pub coherence_monotonicity: f64,
    pub analytic_tight: f64,
    pub analytic_loose: f64,
    pub fidelity_closed_form: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            oracle_equivalence: 1e-8,
            sector_confinement: 1e-12,
            trace_conservation: 1e-10,
            positivity: 1e-10,
            conditional_purity: 1e-9,
            coherence_monotonicity: 1e-10,
            analytic_tight: 1e-9,
            analytic_loose: 1e-6,
            fidelity_closed_form: 1e-9,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// Fixture records carry `gating: false`: they document known reference
    /// discrepancies and never fail the run.
    pub gating: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn gate(name: &str, max_deviation: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            pass: max_deviation <= tolerance,
            gating: true,
            max_deviation,
            tolerance,
            detail,
        }
    }

    fn gate_bool(name: &str, pass: bool, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            pass,
            gating: true,
            max_deviation: if pass { 0.0 } else { f64::NAN },
            tolerance: 0.0,
            detail,
        }
    }

    fn fixture(name: &str, max_deviation: f64, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            gating: false,
            max_deviation,
            tolerance: f64::NAN,
            detail,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub max_n: usize,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

const GAMMAS: [f64; 4] = [0.0, 0.5, 4.0, 20.0];
const THETA: f64 = PI / 3.0;
const PHI: f64 = PI / 5.0;

fn spec_grid(max_n: usize) -> Vec<ChainSpec> {
    let mut specs = Vec::new();
    for n in 3..=max_n {
        for boundary in [Boundary::Open, Boundary::Closed] {
            for topology in [Topology::Chained, Topology::Local] {
                for gamma in GAMMAS {
                    specs.push(ChainSpec::new(n, boundary, topology, 1.0, gamma).unwrap());
                }
            }
        }
    }
    specs
}

fn time_grid() -> Vec<f64> {
    (0..50).map(|k| 2.0 * k as f64 / 49.0).collect()
}

/// Reduced vs brute-force output qubits over the whole spec grid, plus the
/// excitation-sector confinement of the full trajectories.
fn check_oracle(max_n: usize, tol: &Tolerances) -> Result<Vec<CheckResult>> {
    let times = time_grid();
    let mut worst_dev = 0.0f64;
    let mut worst_out = 0.0f64;
    let mut count = 0;
    for spec in spec_grid(max_n) {
        let report = oracle::compare_reduced(&spec, THETA, PHI, &times)?;
        worst_dev = worst_dev.max(report.max_abs_deviation);
        worst_out = worst_out.max(report.max_out_of_sector);
        count += 1;
    }
    Ok(vec![
        CheckResult::gate(
            "oracle_equivalence",
            worst_dev,
            tol.oracle_equivalence,
            format!("{count} chains, N in 3..={max_n}, gamma in {GAMMAS:?}, 50 times in [0, 2]"),
        ),
        CheckResult::gate(
            "sector_confinement",
            worst_out,
            tol.sector_confinement,
            "largest matrix element outside the vacuum + single-excitation sector".into(),
        ),
    ])
}

/// Trace, positivity, conditional purity, coherence monotonicity, and the
/// dark-state kernels along reduced trajectories of the same grid.
fn check_invariants(max_n: usize, tol: &Tolerances) -> Result<Vec<CheckResult>> {
    let times = time_grid();
    let mut trace_dev = 0.0f64;
    let mut neg_eig = 0.0f64;
    let mut purity_ratio = 0.0f64;
    let mut coherence_growth = 0.0f64;
    for spec in spec_grid(max_n) {
        let state0 = ReducedState::product_input(THETA, PHI, spec.n_qubits);
        let states = propagate_sequence(&state0, &spec, &times, &PropagateOptions::exponential())?;
        let mut last_norm = f64::INFINITY;
        for state in &states {
            trace_dev = trace_dev.max((state.trace() - 1.0).abs());
            let eigs = hermitian_eigenvalues(&state.assembled());
            neg_eig = neg_eig.max(-eigs[0]);
            let r_eigs = hermitian_eigenvalues(&state.r);
            let top = r_eigs[r_eigs.len() - 1];
            let second = r_eigs[r_eigs.len() - 2].max(0.0);
            if top > 1e-6 {
                purity_ratio = purity_ratio.max(second / top);
            }
            let c_norm = state.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            coherence_growth = coherence_growth.max(c_norm - last_norm);
            last_norm = c_norm;
        }
    }

    // dark-state kernels: exact annihilation of the alternating vector
    let mut kernel_exact = true;
    for n in 2..=max_n.max(10) {
        let alternating: Vec<f64> = (0..n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let mut cases = vec![(Boundary::Open, true)];
        if n >= 3 {
            cases.push((Boundary::Closed, n % 2 == 0));
        }
        for (boundary, expect_dark) in cases {
            let spec = ChainSpec::new(n, boundary, Topology::Chained, 1.0, 1.0).unwrap();
            let m = spec.dissipation_matrix();
            let annihilated = (0..n).all(|k| {
                (0..n).map(|l| m[[k, l]] * alternating[l]).sum::<f64>() == 0.0
            });
            kernel_exact &= annihilated == expect_dark;
        }
    }

    Ok(vec![
        CheckResult::gate(
            "trace_conservation",
            trace_dev,
            tol.trace_conservation,
            "p00 + tr r stays at 1 along every trajectory".into(),
        ),
        CheckResult::gate(
            "positivity",
            neg_eig,
            tol.positivity,
            "smallest eigenvalue of the assembled reduced state".into(),
        ),
        CheckResult::gate(
            "conditional_purity",
            purity_ratio,
            tol.conditional_purity,
            "second/first eigenvalue of r: product inputs stay rank one".into(),
        ),
        CheckResult::gate(
            "coherence_monotonicity",
            coherence_growth.max(0.0),
            tol.coherence_monotonicity,
            "norm of the vacuum coherence never grows".into(),
        ),
        CheckResult::gate_bool(
            "dark_state_kernel",
            kernel_exact,
            "alternating vector annihilated exactly: chained lines always, rings iff N even"
                .into(),
        ),
    ])
}

/// Reference-system regression: the fixed three-qubit systems against the
/// generator, with every residual discrepancy attributed by the brute-force
/// Jacobian.
fn check_reference_systems() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    // ground-truth attribution first: generator == full-space Jacobian
    let mut attribution_worst = 0.0f64;
    for system in ThreeQubitSystem::all() {
        let spec = system.labeled_spec(1.3, 0.7);
        let a = reference::generator_jacobian(&spec);
        let b = reference::full_space_jacobian(&spec)?;
        let dev = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        attribution_worst = attribution_worst.max(dev);
    }
    out.push(CheckResult::gate(
        "generator_vs_full_jacobian",
        attribution_worst,
        1e-12,
        "sector generator reproduces the brute-force Lindblad Jacobian".into(),
    ));

    let describe = |cmp: &reference::SystemComparison| -> String {
        cmp.discrepancies
            .iter()
            .map(|d| format!("(eq {}, coeff {})", d.row, d.col))
            .collect::<Vec<_>>()
            .join(", ")
    };

    // open local: exact
    let open_local = reference::compare_system_against(
        ThreeQubitSystem::OpenLocal,
        &ThreeQubitSystem::OpenLocal.labeled_spec(1.0, 1.0),
    );
    out.push(CheckResult::gate_bool(
        "reference_open_local",
        open_local.discrepancies.is_empty() && open_local.basis_leakage < 1e-12,
        "13-coefficient trimmed system matches the generator term by term".into(),
    ));

    // open chained: exactly the three known slips, nothing else
    let open_chained = reference::compare_system_against(
        ThreeQubitSystem::OpenChained,
        &ThreeQubitSystem::OpenChained.labeled_spec(1.0, 1.0),
    );
    let found: Vec<(usize, usize)> = open_chained
        .discrepancies
        .iter()
        .map(|d| (d.row, d.col))
        .collect();
    let expected = vec![(7, 8), (12, 13), (12, 14), (13, 15)];
    out.push(CheckResult::gate_bool(
        "reference_open_chained",
        found == expected,
        format!("only the known slipped terms disagree: {}", describe(&open_chained)),
    ));
    out.push(CheckResult::fixture(
        "fixture_open_chained_terms",
        open_chained
            .discrepancies
            .iter()
            .map(|d| {
                (d.reference.eval(1.0, 1.0) - d.generator.eval(1.0, 1.0)).abs()
            })
            .fold(0.0, f64::max),
        format!(
            "printed slips at {}; the xi^2 slip in eq 7 vanishes at xi = 1",
            describe(&open_chained)
        ),
    ));

    // closed systems: labels interchanged, residual slips known
    let evidence = reference::closed_label_swap_evidence();
    let chained_vs_local = reference::compare_system_against(
        ThreeQubitSystem::ClosedChained,
        &ChainSpec::new(3, Boundary::Closed, Topology::Local, 1.0, 1.0).unwrap(),
    );
    let local_vs_chained = reference::compare_system_against(
        ThreeQubitSystem::ClosedLocal,
        &ChainSpec::new(3, Boundary::Closed, Topology::Chained, 1.0, 1.0).unwrap(),
    );
    let chained_found: Vec<(usize, usize)> = chained_vs_local
        .discrepancies
        .iter()
        .map(|d| (d.row, d.col))
        .collect();
    let local_found: Vec<(usize, usize)> = local_vs_chained
        .discrepancies
        .iter()
        .map(|d| (d.row, d.col))
        .collect();
    let swap_ok = evidence.labels_interchanged()
        && chained_found == vec![(5, 5), (5, 6)]
        && local_found == vec![(2, 1), (2, 2), (11, 15)];
    out.push(CheckResult::gate_bool(
        "reference_closed_label_swap",
        swap_ok,
        format!(
            "chained fixture vs (chained, local) generators: ({}, {}); \
             local fixture vs (local, chained): ({}, {})",
            evidence.chained_fixture_vs_chained_generator,
            evidence.chained_fixture_vs_local_generator,
            evidence.local_fixture_vs_local_generator,
            evidence.local_fixture_vs_chained_generator,
        ),
    ));
    out.push(CheckResult::fixture(
        "fixture_closed_systems",
        (evidence.chained_fixture_vs_local_generator + evidence.local_fixture_vs_chained_generator)
            as f64,
        format!(
            "after swapping labels the residual slips are {} and {}",
            describe(&chained_vs_local),
            describe(&local_vs_chained)
        ),
    ));
    Ok(out)
}

/// Closed-form signatures against the engine on 200 times in `[0, 5/gamma]`
/// for `gamma` in `{0.5, 4, 20}`.
fn check_analytic(tol: &Tolerances) -> Result<Vec<CheckResult>> {
    let gammas = [0.5, 4.0, 20.0];
    let mut out = Vec::new();

    let grid = |gamma: f64| -> Vec<f64> {
        (0..200).map(|k| 5.0 / gamma * k as f64 / 199.0).collect()
    };

    // tight scenarios: full complex signature at 1e-9
    for (name, boundary, topology) in [
        ("analytic_open_local", Boundary::Open, Topology::Local),
        ("analytic_closed_local", Boundary::Closed, Topology::Local),
    ] {
        let mut worst = 0.0f64;
        for gamma in gammas {
            let spec = ChainSpec::new(3, boundary, topology, 1.0, gamma).unwrap();
            for t in grid(gamma) {
                let engine = crate::fidelity::output_signature(&spec, t)?;
                let exact = match topology {
                    Topology::Local if boundary == Boundary::Open => {
                        crate::analytic::open_local_signature(t, 1.0, gamma)
                    }
                    _ => crate::analytic::closed_local_signature(t, 1.0, gamma),
                };
                worst = worst.max((engine.rho - exact.rho).abs());
                worst = worst.max((engine.sigma - exact.sigma).norm());
            }
        }
        out.push(CheckResult::gate(
            name,
            worst,
            tol.analytic_tight,
            "engine vs closed form, full complex signature".into(),
        ));
    }

    // chained scenarios: rho and |sigma| at 1e-6, phase as a non-gating record
    let mut rho_open = 0.0f64;
    let mut abs_open = 0.0f64;
    let mut phase_open = 0.0f64;
    let mut rho_closed = 0.0f64;
    let mut abs_closed = 0.0f64;
    let mut phase_closed = 0.0f64;
    let mut fixture_sigma_closed = 0.0f64;
    for gamma in gammas {
        let open = ChainSpec::new(3, Boundary::Open, Topology::Chained, 1.0, gamma).unwrap();
        let closed = ChainSpec::new(3, Boundary::Closed, Topology::Chained, 1.0, gamma).unwrap();
        for t in grid(gamma) {
            let engine = crate::fidelity::output_signature(&open, t)?;
            let exact = crate::analytic::open_chained_signature(t, 1.0, gamma)?;
            rho_open = rho_open.max((engine.rho - exact.rho).abs());
            abs_open = abs_open.max((engine.sigma.norm() - exact.sigma.norm()).abs());
            phase_open = phase_open.max((engine.sigma - exact.sigma).norm());

            let engine = crate::fidelity::output_signature(&closed, t)?;
            let exact = crate::analytic::closed_chained_signature(t, 1.0, gamma);
            rho_closed = rho_closed.max((engine.rho - exact.rho).abs());
            abs_closed = abs_closed.max((engine.sigma.norm() - exact.sigma.norm()).abs());
            phase_closed = phase_closed.max((engine.sigma - exact.sigma).norm());

            let fixture = reference::closed_chained_sigma_reference(t, 1.0, gamma);
            fixture_sigma_closed =
                fixture_sigma_closed.max((fixture.norm() - engine.sigma.norm()).abs());
        }
    }
    out.push(CheckResult::gate(
        "analytic_open_chained_rho",
        rho_open,
        tol.analytic_loose,
        "engine vs closed-form population".into(),
    ));
    out.push(CheckResult::gate(
        "analytic_open_chained_sigma_abs",
        abs_open,
        tol.analytic_loose,
        "engine vs closed-form |sigma|".into(),
    ));
    out.push(CheckResult::gate(
        "analytic_closed_chained_rho",
        rho_closed,
        tol.analytic_loose,
        "engine vs closed-form population".into(),
    ));
    out.push(CheckResult::gate(
        "analytic_closed_chained_sigma_abs",
        abs_closed,
        tol.analytic_loose,
        "engine vs validated closed-form |sigma|".into(),
    ));
    out.push(CheckResult::fixture(
        "sigma_phase_chained_scenarios",
        phase_open.max(phase_closed),
        "full complex deviation of the chained-scenario coherences (not gated)".into(),
    ));
    out.push(CheckResult::fixture(
        "fixture_sigma_closed_chained",
        fixture_sigma_closed,
        "verbatim alternative coherence vs engine |sigma|; large except at gamma = 1/2"
            .into(),
    ));
    Ok(out)
}

/// Closed-form fidelity expressions against the normative pipeline.
fn check_fidelity_forms(tol: &Tolerances) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let times: Vec<f64> = (0..=300).map(|k| 0.02 * k as f64).collect();
    let gammas = [0.5, 4.0, 20.0];

    let mut open_local = 0.0f64;
    let mut closed_local = 0.0f64;
    let mut open_chained_fixture = 0.0f64;
    let mut closed_chained_fixture = 0.0f64;
    for gamma in gammas {
        for &t in &times {
            let sig = crate::analytic::open_local_signature(t, 1.0, gamma);
            open_local = open_local.max(
                (crate::analytic::open_local_fidelity(t, 1.0, gamma)
                    - optimal_average_fidelity(&sig)?)
                .abs(),
            );
            let sig = crate::analytic::closed_local_signature(t, 1.0, gamma);
            closed_local = closed_local.max(
                (crate::analytic::closed_local_fidelity(t, 1.0, gamma)
                    - optimal_average_fidelity(&sig)?)
                .abs(),
            );
            open_chained_fixture = open_chained_fixture.max(
                (reference::open_chained_fidelity_reference(t, 1.0, gamma)?
                    - crate::analytic::open_chained_fidelity(t, 1.0, gamma)?)
                .abs(),
            );
            closed_chained_fixture = closed_chained_fixture.max(
                (reference::closed_chained_fidelity_reference(t, 1.0, gamma)
                    - crate::analytic::closed_chained_fidelity(t, 1.0, gamma))
                .abs(),
            );
        }
    }
    out.push(CheckResult::gate(
        "fidelity_closed_form_open_local",
        open_local,
        tol.fidelity_closed_form,
        "closed form equals the signature pipeline".into(),
    ));
    out.push(CheckResult::gate(
        "fidelity_closed_form_closed_local",
        closed_local,
        tol.fidelity_closed_form,
        "closed form equals the signature pipeline".into(),
    ));
    out.push(CheckResult::fixture(
        "fixture_fidelity_open_chained",
        open_chained_fixture,
        "verbatim alternative expression vs pipeline (halved linear weight)".into(),
    ));
    out.push(CheckResult::fixture(
        "fixture_fidelity_closed_chained",
        closed_chained_fixture,
        "verbatim alternative expression vs pipeline (excess scaled by 1/9)".into(),
    ));
    Ok(out)
}

/// Run the whole suite up to chains of `max_n` qubits (capped by the oracle
/// guard).
pub fn run_validation(max_n: usize, tolerances: Tolerances) -> Result<ValidationReport> {
    if max_n > oracle::MAX_ORACLE_QUBITS {
        return Err(crate::error::Error::ResourceGuard(format!(
            "validation is capped at N <= {}, got {max_n}",
            oracle::MAX_ORACLE_QUBITS
        )));
    }
    if max_n < 3 {
        return Err(crate::error::Error::Usage(format!(
            "validation needs max_n >= 3, got {max_n}"
        )));
    }
    let mut checks = Vec::new();
    checks.extend(check_oracle(max_n, &tolerances)?);
    checks.extend(check_invariants(max_n, &tolerances)?);
    checks.extend(check_reference_systems()?);
    checks.extend(check_analytic(&tolerances)?);
    checks.extend(check_fidelity_forms(&tolerances)?);
    let passed = checks.iter().all(|c| c.pass || !c.gating);
    Ok(ValidationReport {
        max_n,
        tolerances,
        checks,
        passed,
    })
}
