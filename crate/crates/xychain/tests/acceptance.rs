//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Criterion 4b's odd-ring half encodes a reference ordering claim that the
//! oracle-validated dynamics contradicts; that test states the claim as
//! given, quantifies both sides, and fails. See the README's known-results
//! section. Everything else must pass at the stated tolerances.

use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

use xychain::chain::{Boundary, ChainSpec, Topology};
use xychain::dynamics::{propagate_sequence, PropagateOptions};
use xychain::fidelity::{max_fidelity, optimal_average_fidelity, output_signature};
use xychain::linalg::hermitian_eigenvalues;
use xychain::oracle::compare_reduced;
use xychain::reference;
use xychain::state::ReducedState;

const THETA: f64 = PI / 3.0;
const PHI: f64 = PI / 5.0;

fn all_specs(n_range: std::ops::RangeInclusive<usize>, gammas: &[f64]) -> Vec<ChainSpec> {
    let mut specs = Vec::new();
    for n in n_range {
        for boundary in [Boundary::Open, Boundary::Closed] {
            for topology in [Topology::Chained, Topology::Local] {
                for &gamma in gammas {
                    specs.push(ChainSpec::new(n, boundary, topology, 1.0, gamma).unwrap());
                }
            }
        }
    }
    specs
}

fn criterion_times() -> Vec<f64> {
    (0..50).map(|k| 2.0 * k as f64 / 49.0).collect()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let times = criterion_times();
    let mut worst = 0.0f64;
    for spec in all_specs(3..=5, &[0.0, 0.5, 4.0, 20.0]) {
        let report = compare_reduced(&spec, THETA, PHI, &times).unwrap();
        assert!(
            report.max_abs_deviation <= 1e-8,
            "criterion 1: FAIL at {spec:?}: {}",
            report.max_abs_deviation
        );
        worst = worst.max(report.max_abs_deviation);
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 1 (oracle equivalence, N=3..5 x boundary x topology x gamma): \
         PASS (max dev {worst:.2e} <= 1e-8; {elapsed:.1} s, target < 60 s)"
    );
}

#[test]
fn criterion_2_analytic_fixtures() {
    let gammas = [0.5, 4.0, 20.0];
    let grid = |gamma: f64| (0..200).map(move |k| 5.0 / gamma * k as f64 / 199.0);

    let mut tight = 0.0f64; // open-local and closed-local, full signature
    let mut rho_loose = 0.0f64; // chained populations
    let mut sigma_abs_loose = 0.0f64; // chained |sigma|
    let mut phase_dev = 0.0f64; // chained full-complex records
    let mut fixture_sigma = 0.0f64; // verbatim alternative coherence
    for gamma in gammas {
        for t in grid(gamma) {
            let open_local = ChainSpec::new(3, Boundary::Open, Topology::Local, 1.0, gamma).unwrap();
            let engine = output_signature(&open_local, t).unwrap();
            let exact = xychain::analytic::open_local_signature(t, 1.0, gamma);
            tight = tight
                .max((engine.rho - exact.rho).abs())
                .max((engine.sigma - exact.sigma).norm());

            let closed_local =
                ChainSpec::new(3, Boundary::Closed, Topology::Local, 1.0, gamma).unwrap();
            let engine = output_signature(&closed_local, t).unwrap();
            let exact = xychain::analytic::closed_local_signature(t, 1.0, gamma);
            tight = tight
                .max((engine.rho - exact.rho).abs())
                .max((engine.sigma - exact.sigma).norm());

            let open_chained =
                ChainSpec::new(3, Boundary::Open, Topology::Chained, 1.0, gamma).unwrap();
            let engine = output_signature(&open_chained, t).unwrap();
            let exact = xychain::analytic::open_chained_signature(t, 1.0, gamma).unwrap();
            rho_loose = rho_loose.max((engine.rho - exact.rho).abs());
            sigma_abs_loose = sigma_abs_loose.max((engine.sigma.norm() - exact.sigma.norm()).abs());
            phase_dev = phase_dev.max((engine.sigma - exact.sigma).norm());

            let closed_chained =
                ChainSpec::new(3, Boundary::Closed, Topology::Chained, 1.0, gamma).unwrap();
            let engine = output_signature(&closed_chained, t).unwrap();
            let exact = xychain::analytic::closed_chained_signature(t, 1.0, gamma);
            rho_loose = rho_loose.max((engine.rho - exact.rho).abs());
            sigma_abs_loose = sigma_abs_loose.max((engine.sigma.norm() - exact.sigma.norm()).abs());
            phase_dev = phase_dev.max((engine.sigma - exact.sigma).norm());
            fixture_sigma = fixture_sigma.max(
                (reference::closed_chained_sigma_reference(t, 1.0, gamma).norm()
                    - engine.sigma.norm())
                .abs(),
            );
        }
    }

    // closed-form fidelity expressions against the pipeline
    let mut local_forms = 0.0f64;
    let mut fixture_open = 0.0f64;
    let mut fixture_closed = 0.0f64;
    for gamma in gammas {
        for t in grid(gamma) {
            let sig = xychain::analytic::open_local_signature(t, 1.0, gamma);
            local_forms = local_forms.max(
                (xychain::analytic::open_local_fidelity(t, 1.0, gamma)
                    - optimal_average_fidelity(&sig).unwrap())
                .abs(),
            );
            let sig = xychain::analytic::closed_local_signature(t, 1.0, gamma);
            local_forms = local_forms.max(
                (xychain::analytic::closed_local_fidelity(t, 1.0, gamma)
                    - optimal_average_fidelity(&sig).unwrap())
                .abs(),
            );
            fixture_open = fixture_open.max(
                (reference::open_chained_fidelity_reference(t, 1.0, gamma).unwrap()
                    - xychain::analytic::open_chained_fidelity(t, 1.0, gamma).unwrap())
                .abs(),
            );
            fixture_closed = fixture_closed.max(
                (reference::closed_chained_fidelity_reference(t, 1.0, gamma)
                    - xychain::analytic::closed_chained_fidelity(t, 1.0, gamma))
                .abs(),
            );
        }
    }

    assert!(tight <= 1e-9, "criterion 2: FAIL, local signatures dev {tight:.2e} > 1e-9");
    assert!(rho_loose <= 1e-6, "criterion 2: FAIL, chained rho dev {rho_loose:.2e} > 1e-6");
    assert!(
        sigma_abs_loose <= 1e-6,
        "criterion 2: FAIL, chained |sigma| dev {sigma_abs_loose:.2e} > 1e-6"
    );
    assert!(
        local_forms <= 1e-9,
        "criterion 2: FAIL, local closed-form fidelities dev {local_forms:.2e} > 1e-9"
    );
    println!(
        "criterion 2 (analytic fixtures, N=3): PASS \
         (local signatures {tight:.2e} <= 1e-9; chained rho {rho_loose:.2e}, |sigma| {sigma_abs_loose:.2e} <= 1e-6; \
         local closed-form F {local_forms:.2e} <= 1e-9)"
    );
    println!(
        "criterion 2 records (non-gating): chained sigma phase dev {phase_dev:.2e}; \
         alternative-coherence fixture |sigma| dev {fixture_sigma:.2e}; \
         alternative-fidelity fixtures dev open {fixture_open:.2e} / closed {fixture_closed:.2e}"
    );
}

#[test]
fn criterion_3_reference_system_regression() {
    // ground truth: the generator equals the brute-force Jacobian everywhere
    for system in reference::ThreeQubitSystem::all() {
        let spec = system.labeled_spec(1.1, 0.9);
        let a = reference::generator_jacobian(&spec);
        let b = reference::full_space_jacobian(&spec).unwrap();
        let dev = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12, "criterion 3: generator not oracle-attributed: {dev:.2e}");
    }

    // open local: term-by-term exact
    let open_local = reference::compare_system_against(
        reference::ThreeQubitSystem::OpenLocal,
        &reference::ThreeQubitSystem::OpenLocal.labeled_spec(1.0, 1.0),
    );
    assert!(
        open_local.discrepancies.is_empty() && open_local.basis_leakage < 1e-12,
        "criterion 3: FAIL, open-local system disagrees: {:?}",
        open_local.discrepancies
    );

    // open chained: term-by-term exact except the three oracle-attributed
    // printed slips, which must be reported (non-gating fixture records)
    let open_chained = reference::compare_system_against(
        reference::ThreeQubitSystem::OpenChained,
        &reference::ThreeQubitSystem::OpenChained.labeled_spec(1.0, 1.0),
    );
    let found: Vec<(usize, usize)> = open_chained
        .discrepancies
        .iter()
        .map(|d| (d.row, d.col))
        .collect();
    assert_eq!(
        found,
        vec![(7, 8), (12, 13), (12, 14), (13, 15)],
        "criterion 3: FAIL, open-chained discrepancy set changed"
    );

    // closed boundary: the comparison must produce a non-empty structured
    // discrepancy report showing the chained/local systems interchanged
    let evidence = reference::closed_label_swap_evidence();
    assert!(
        evidence.labels_interchanged(),
        "criterion 3: FAIL, closed systems do not appear label-swapped: {evidence:?}"
    );
    assert!(
        evidence.chained_fixture_vs_local_generator + evidence.local_fixture_vs_chained_generator
            > 0,
        "criterion 3: FAIL, swap report unexpectedly empty"
    );

    println!(
        "criterion 3 (reference-system regression): PASS \
         (open-local exact; open-chained exact up to 3 oracle-attributed printed slips \
         at rows/cols {found:?}, reported non-gating; closed systems label-swapped with \
         cross-fit residuals {} and {} vs direct-fit {} and {})",
        evidence.chained_fixture_vs_local_generator,
        evidence.local_fixture_vs_chained_generator,
        evidence.chained_fixture_vs_chained_generator,
        evidence.local_fixture_vs_local_generator,
    );
}

fn sweep_f_max(boundary: Boundary, topology: Topology, n: usize, gamma: f64) -> f64 {
    let spec = ChainSpec::new(n, boundary, topology, 1.0, gamma).unwrap();
    max_fidelity(&spec, 40.0, 2000).unwrap().f_max
}

#[test]
fn criterion_4a_open_chain_orderings() {
    let start = Instant::now();
    for gamma in [4.0, 20.0] {
        for n in 3..=10 {
            let chained = sweep_f_max(Boundary::Open, Topology::Chained, n, gamma);
            let local = sweep_f_max(Boundary::Open, Topology::Local, n, gamma);
            assert!(
                chained > local,
                "criterion 4a: FAIL at N={n}, gamma={gamma}: chained {chained:.6} <= local {local:.6}"
            );
        }
    }
    println!(
        "criterion 4a (open chains, gamma in {{4, 20}}, N=3..10: chained > local): PASS ({:.1} s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_4b_even_closed_rings_moderate_noise() {
    for n in [4, 6, 8, 10] {
        let chained = sweep_f_max(Boundary::Closed, Topology::Chained, n, 4.0);
        let local = sweep_f_max(Boundary::Closed, Topology::Local, n, 4.0);
        assert!(
            chained > local,
            "criterion 4b (even): FAIL at N={n}: chained {chained:.6} <= local {local:.6}"
        );
    }
    println!("criterion 4b (closed rings, gamma=4, even N: chained > local): PASS");
}

#[test]
fn criterion_4b_odd_closed_rings_moderate_noise() {
    // As stated, this criterion requires local noise to beat chained noise on
    // odd rings at gamma = 4. The dynamics pinned by criterion 1 gives the
    // opposite ordering for every odd N; the stated ordering is reproduced
    // only by scoring the chained ring with the known-erroneous alternative
    // closed form (excess over 1/2 suppressed ninefold). The assertion is
    // kept as stated and fails; the printout quantifies both sides.
    let mut lines = Vec::new();
    let mut claim_holds = true;
    for n in [3usize, 5, 7, 9] {
        let chained = sweep_f_max(Boundary::Closed, Topology::Chained, n, 4.0);
        let local = sweep_f_max(Boundary::Closed, Topology::Local, n, 4.0);
        let suppressed = 0.5 + (chained - 0.5) / 9.0;
        claim_holds &= local > chained;
        lines.push(format!(
            "  N={n}: chained {chained:.6}, local {local:.6} (fixture-scored chained {suppressed:.6})"
        ));
    }
    let verdict = if claim_holds { "PASS" } else { "FAIL" };
    println!(
        "criterion 4b (closed rings, gamma=4, odd N: local > chained): {verdict}\n{}",
        lines.join("\n")
    );
    if !claim_holds {
        println!(
            "criterion 4b (odd) encodes the reference ordering claim; the oracle-validated \
             dynamics gives chained > local for every odd N, and reproduces the claimed \
             ordering only through the erroneous closed-form fixture shown above."
        );
    }
    assert!(
        claim_holds,
        "criterion 4b (odd rings): stated ordering local > chained does not hold for the \
         oracle-validated dynamics at any odd N in {{3,5,7,9}}; see printed values"
    );
}

#[test]
fn criterion_4c_closed_rings_strong_noise() {
    for n in 3..=10 {
        let chained = sweep_f_max(Boundary::Closed, Topology::Chained, n, 20.0);
        let local = sweep_f_max(Boundary::Closed, Topology::Local, n, 20.0);
        assert!(
            chained > local,
            "criterion 4c: FAIL at N={n}: chained {chained:.6} <= local {local:.6}"
        );
        assert!(
            local <= 0.55,
            "criterion 4c: FAIL at N={n}: local {local:.6} > 0.55"
        );
    }
    println!(
        "criterion 4c (closed rings, gamma=20: chained > local for all N, local <= 0.55): PASS"
    );
}

#[test]
fn criterion_5_monotonic_length_decay() {
    for gamma in [4.0, 20.0] {
        for topology in [Topology::Chained, Topology::Local] {
            let mut prev = f64::INFINITY;
            for n in 3..=10 {
                let f = sweep_f_max(Boundary::Open, topology, n, gamma);
                assert!(
                    f <= prev + 1e-3,
                    "criterion 5: FAIL, {topology:?} gamma={gamma}: F({n}) = {f:.6} > F({}) = {prev:.6} + 1e-3",
                    n - 1
                );
                prev = f;
            }
        }
    }
    println!(
        "criterion 5 (open chains: F_max non-increasing in N, both topologies, gamma in {{4, 20}}): PASS"
    );
}

#[test]
fn criterion_6_exact_limits() {
    // perfect transfer: N=3 open local, gamma=0, F_max = 1 at t* = pi/sqrt(2)/xi
    for xi in [1.0, 2.0] {
        let spec = ChainSpec::new(3, Boundary::Open, Topology::Local, xi, 0.0).unwrap();
        let res = max_fidelity(&spec, 6.0 / xi, 2000).unwrap();
        let t_expected = PI / SQRT_2 / xi;
        assert!(
            (res.f_max - 1.0).abs() <= 1e-8,
            "criterion 6: FAIL, F_max = {} at xi={xi}",
            res.f_max
        );
        assert!(
            (res.t_star - t_expected).abs() <= 1e-8,
            "criterion 6: FAIL, t* = {} vs {t_expected} at xi={xi}",
            res.t_star
        );
    }
    // t = 0 always scores exactly 1/2
    for spec in all_specs(3..=6, &[0.0, 4.0]) {
        let sig = output_signature(&spec, 0.0).unwrap();
        let f = optimal_average_fidelity(&sig).unwrap();
        assert!(
            (f - 0.5).abs() <= 1e-12,
            "criterion 6: FAIL, F(0) = {f} at {spec:?}"
        );
    }
    println!(
        "criterion 6 (exact limits: perfect transfer at t* = pi/sqrt(2)/xi within 1e-8; F(0) = 1/2 within 1e-12): PASS"
    );
}

#[test]
fn criterion_7_invariant_suite() {
    let times = criterion_times();
    let mut trace_dev = 0.0f64;
    let mut neg_eig = 0.0f64;
    let mut purity_ratio = 0.0f64;
    let mut coherence_growth = 0.0f64;
    let mut purity_identity = 0.0f64;
    for spec in all_specs(3..=5, &[0.0, 0.5, 4.0, 20.0]) {
        let state0 = ReducedState::product_input(THETA, PHI, spec.n_qubits);
        let states =
            propagate_sequence(&state0, &spec, &times, &PropagateOptions::exponential()).unwrap();
        let mut last_norm = f64::INFINITY;
        for (state, &t) in states.iter().zip(times.iter()) {
            trace_dev = trace_dev.max((state.trace() - 1.0).abs());
            let eigs = hermitian_eigenvalues(&state.assembled());
            neg_eig = neg_eig.max(-eigs[0]);
            let r_eigs = hermitian_eigenvalues(&state.r);
            let top = r_eigs[r_eigs.len() - 1];
            if top > 1e-6 {
                purity_ratio = purity_ratio.max(r_eigs[r_eigs.len() - 2].max(0.0) / top);
            }
            let c_norm = state.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            coherence_growth = coherence_growth.max(c_norm - last_norm);
            last_norm = c_norm;
            // rho = 4 |sigma|^2 for the input-independent signature
            let sig = output_signature(&spec, t).unwrap();
            purity_identity = purity_identity.max((sig.rho - 4.0 * sig.sigma.norm_sqr()).abs());
        }
    }
    // dark-state kernels exact
    for n in 2..=10usize {
        let alternating: Vec<f64> = (0..n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let mut cases = vec![(Boundary::Open, true)];
        if n >= 3 {
            cases.push((Boundary::Closed, n % 2 == 0));
        }
        for (boundary, expect_dark) in cases {
            let spec = ChainSpec::new(n, boundary, Topology::Chained, 1.0, 1.0).unwrap();
            let m = spec.dissipation_matrix();
            let dark = (0..n).all(|k| (0..n).map(|l| m[[k, l]] * alternating[l]).sum::<f64>() == 0.0);
            assert_eq!(dark, expect_dark, "criterion 7: FAIL, kernel at N={n} {boundary:?}");
        }
    }
    assert!(trace_dev <= 1e-10, "criterion 7: FAIL, trace dev {trace_dev:.2e}");
    assert!(neg_eig <= 1e-10, "criterion 7: FAIL, negativity {neg_eig:.2e}");
    assert!(purity_identity <= 1e-9, "criterion 7: FAIL, rho != 4|sigma|^2: {purity_identity:.2e}");
    assert!(purity_ratio <= 1e-9, "criterion 7: FAIL, rank-1 ratio {purity_ratio:.2e}");
    assert!(
        coherence_growth <= 1e-10,
        "criterion 7: FAIL, coherence grew by {coherence_growth:.2e}"
    );
    println!(
        "criterion 7 (invariants over the criterion-1 grid): PASS \
         (trace {trace_dev:.2e} <= 1e-10; negativity {neg_eig:.2e} <= 1e-10; \
         rho = 4|sigma|^2 within {purity_identity:.2e} <= 1e-9; rank-1 ratio {purity_ratio:.2e} <= 1e-9; \
         coherence growth {coherence_growth:.2e} <= 1e-10; dark kernels exact)"
    );
}

#[test]
fn criterion_8_sweep_determinism() {
    let exe = env!("CARGO_BIN_EXE_xychain");
    let dir = std::env::temp_dir().join(format!("xychain_acceptance_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_a = dir.join("sweep_a.csv");
    let out_b = dir.join("sweep_b.csv");
    for out in [&out_a, &out_b] {
        let status = std::process::Command::new(exe)
            .args([
                "sweep",
                "--n-list",
                "3,4,5,6",
                "--boundary",
                "open",
                "--xi",
                "1",
                "--gamma",
                "4",
                "--grid",
                "400",
                "--t-max",
                "12",
                "--output",
            ])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success(), "criterion 8: sweep run failed");
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert!(!a.is_empty() && a == b, "criterion 8: FAIL, outputs differ");
    std::fs::remove_dir_all(&dir).ok();
    println!(
        "criterion 8 (byte-identical repeated sweep runs): PASS ({} bytes compared)",
        a.len()
    );
}
