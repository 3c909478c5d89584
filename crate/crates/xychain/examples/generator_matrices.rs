//! Inspect the sector matrices of a chain: the hop matrix h, the
//! dissipation matrix M, and the effective generator G = -i h - gamma M.
//!
//! Run with: cargo run --release --example generator_matrices

use xychain::chain::{Boundary, ChainSpec, Topology};

fn main() -> xychain::Result<()> {
    for (boundary, topology) in [
        (Boundary::Open, Topology::Chained),
        (Boundary::Closed, Topology::Chained),
        (Boundary::Open, Topology::Local),
    ] {
        let spec = ChainSpec::new(4, boundary, topology, 1.0, 0.5)?;
        println!(
            "N = {}, {boundary} boundary, {topology} noise ({} bonds, output qubit {}):",
            spec.n_qubits,
            spec.n_bonds(),
            spec.output_index()
        );
        let h = spec.hop_matrix();
        let m = spec.dissipation_matrix();
        let g = spec.effective_generator();
        println!("  h (hop):");
        for k in 0..4 {
            println!("    {:?}", (0..4).map(|l| h[[k, l]]).collect::<Vec<_>>());
        }
        println!("  M (dissipation):");
        for k in 0..4 {
            println!("    {:?}", (0..4).map(|l| m[[k, l]]).collect::<Vec<_>>());
        }
        println!("  G = -i h - gamma M:");
        for k in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|l| format!("{:+.2}{:+.2}i", g[[k, l]].re, g[[k, l]].im))
                .collect();
            println!("    [{}]", row.join(", "));
        }
        println!();
    }
    println!("the same data is available as JSON via: xychain generator --n 4 --boundary open --topology chained --xi 1 --gamma 0.5");
    Ok(())
}
