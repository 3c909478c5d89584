//! Closed rings: the even/odd interference effect on chained-noise transfer.
//!
//! On a ring the wavefronts travel both arcs and interfere at the antipodal
//! output site. Even rings host an exact dark state of the chained
//! dissipator that also diagonalizes the Hamiltonian (h and M commute
//! there), so their fidelity floor is the never-decaying value
//! 1/2 + (1/N^2 + 2/N)/6; odd rings are frustrated and keep only a weaker
//! advantage. Local noise freezes toward F = 1/2 in the strong-noise regime.
//!
//! Run with: cargo run --release --example ring_parity

use xychain::chain::{Boundary, ChainSpec, Topology};
use xychain::fidelity::max_fidelity;

fn main() -> xychain::Result<()> {
    for gamma in [4.0, 20.0] {
        println!("closed rings, xi = 1, gamma = {gamma}");
        println!(
            "{:>3} {:>7} {:>12} {:>12} {:>14}",
            "N", "parity", "F chained", "F local", "dark floor"
        );
        for n in 3..=10usize {
            let chained = ChainSpec::new(n, Boundary::Closed, Topology::Chained, 1.0, gamma)?;
            let local = ChainSpec::new(n, Boundary::Closed, Topology::Local, 1.0, gamma)?;
            let f_chained = max_fidelity(&chained, 40.0, 2000)?.f_max;
            let f_local = max_fidelity(&local, 40.0, 2000)?.f_max;
            let floor = if n % 2 == 0 {
                let nf = n as f64;
                format!("{:>14.6}", 0.5 + (1.0 / (nf * nf) + 2.0 / nf) / 6.0)
            } else {
                format!("{:>14}", "-")
            };
            println!(
                "{n:>3} {:>7} {f_chained:>12.6} {f_local:>12.6} {floor}",
                if n % 2 == 0 { "even" } else { "odd" }
            );
        }
        println!();
    }
    Ok(())
}
