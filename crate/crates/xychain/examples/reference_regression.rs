//! Regression of the hand-transcribed three-qubit coefficient systems
//! against the general-N generator, with brute-force attribution.
//!
//! Prints, per fixed system, every Jacobian entry where the verbatim
//! transcription disagrees with the generator, and the cross-pairing
//! evidence that the two closed-ring systems carry interchanged labels.
//!
//! Run with: cargo run --release --example reference_regression

use xychain::chain::{Boundary, ChainSpec, Topology};
use xychain::reference::{
    closed_label_swap_evidence, compare_system_against, full_space_jacobian, generator_jacobian,
    ThreeQubitSystem,
};

fn main() -> xychain::Result<()> {
    // first: the generator itself is pinned by the full master equation
    let mut worst = 0.0f64;
    for system in ThreeQubitSystem::all() {
        let spec = system.labeled_spec(1.2, 0.8);
        let a = generator_jacobian(&spec);
        let b = full_space_jacobian(&spec)?;
        worst = worst.max(
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        );
    }
    println!("generator vs brute-force 2^N Jacobian: max |dev| = {worst:.2e}\n");

    for system in ThreeQubitSystem::all() {
        let cmp = compare_system_against(system, &system.labeled_spec(1.0, 1.0));
        println!(
            "{} system vs the generator its label claims: {} disagreeing terms",
            system.label(),
            cmp.discrepancies.len()
        );
        for d in cmp.discrepancies.iter().take(8) {
            println!(
                "  eq {:>2}, coeff {:>2}: transcription (xi: {:+.1}, gamma: {:+.1}, xi^2: {:+.1}) \
                 vs generator (xi: {:+.1}, gamma: {:+.1})",
                d.row, d.col, d.reference.xi, d.reference.gamma, d.reference.xi_squared,
                d.generator.xi, d.generator.gamma,
            );
        }
        if cmp.discrepancies.len() > 8 {
            println!("  ... and {} more", cmp.discrepancies.len() - 8);
        }
    }

    let evidence = closed_label_swap_evidence();
    println!("\nclosed-ring cross pairing (disagreeing terms):");
    println!(
        "  'chained' system: {} vs chained generator, {} vs local generator",
        evidence.chained_fixture_vs_chained_generator, evidence.chained_fixture_vs_local_generator
    );
    println!(
        "  'local'   system: {} vs local generator, {} vs chained generator",
        evidence.local_fixture_vs_local_generator, evidence.local_fixture_vs_chained_generator
    );
    println!(
        "  labels interchanged: {}",
        evidence.labels_interchanged()
    );

    // the residual slips after the swap, spelled out
    let local = ChainSpec::new(3, Boundary::Closed, Topology::Local, 1.0, 1.0)?;
    let cmp = compare_system_against(ThreeQubitSystem::ClosedChained, &local);
    println!(
        "\n'chained' system vs the *local* generator leaves {} slips: {:?}",
        cmp.discrepancies.len(),
        cmp.discrepancies
            .iter()
            .map(|d| (d.row, d.col))
            .collect::<Vec<_>>()
    );
    let chained = ChainSpec::new(3, Boundary::Closed, Topology::Chained, 1.0, 1.0)?;
    let cmp = compare_system_against(ThreeQubitSystem::ClosedLocal, &chained);
    println!(
        "'local' system vs the *chained* generator leaves {} slips: {:?}",
        cmp.discrepancies.len(),
        cmp.discrepancies
            .iter()
            .map(|d| (d.row, d.col))
            .collect::<Vec<_>>()
    );
    Ok(())
}
