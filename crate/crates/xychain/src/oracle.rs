//! Brute-force ground truth on the full `2^N` Hilbert space.
//!
//! Integrates the master equation with dense `2^N x 2^N` matrices and no
//! subspace tricks, then partial-traces down to the output qubit. Deliberately
//! naive so that it stays auditable; capped at `N <= 6` (64-dimensional
//! space) by a resource guard.
//!
//! Basis convention: computational basis index `b` has qubit `k` (1-based)
//! excited iff bit `k - 1` of `b` is set. Index 0 is the global ground state.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::chain::{ChainSpec, Topology};
use crate::dynamics::{propagate_sequence, PropagateOptions};
use crate::error::{Error, Result};
use crate::linalg::{dagger, ZERO};
use crate::ode::{integrate_sequence, OdeOptions};
use crate::state::ReducedState;

pub const MAX_ORACLE_QUBITS: usize = 6;

fn guard(n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::ResourceGuard(format!(
            "brute-force oracle is capped at N <= {MAX_ORACLE_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

/// Single-site lowering operator `sigma_k = |0><1|` on site `k` (1-based),
/// embedded in the full register.
pub fn build_lowering(n: usize, k: usize) -> Result<Array2<Complex64>> {
    guard(n)?;
    if k == 0 || k > n {
        return Err(Error::Usage(format!("site index {k} out of range 1..={n}")));
    }
    let dim = 1usize << n;
    let bit = 1usize << (k - 1);
    let mut m = Array2::from_elem((dim, dim), ZERO);
    for b in 0..dim {
        if b & bit != 0 {
            m[[b & !bit, b]] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(m)
}

/// XY Hamiltonian on the full register.
pub fn build_hamiltonian(spec: &ChainSpec) -> Result<Array2<Complex64>> {
    let n = spec.n_qubits;
    guard(n)?;
    let dim = 1usize << n;
    let mut h = Array2::from_elem((dim, dim), ZERO);
    let lowering: Vec<Array2<Complex64>> =
        (1..=n).map(|k| build_lowering(n, k)).collect::<Result<_>>()?;
    for bond in 0..spec.n_bonds() {
        let a = &lowering[bond];
        let b = &lowering[(bond + 1) % n];
        // sigma_n sigma_{n+1}^H + sigma_n^H sigma_{n+1}
        let hop = &a.dot(&dagger(b)) + &dagger(a).dot(b);
        h = &h + &hop.mapv(|z| z * spec.coupling);
    }
    Ok(h)
}

/// The jump operators of the chosen topology: `sigma_n + sigma_{n+1}` per
/// bond (chained, wrapping on a ring) or `sigma_n` per site (local).
pub fn build_jump_operators(spec: &ChainSpec) -> Result<Vec<Array2<Complex64>>> {
    let n = spec.n_qubits;
    guard(n)?;
    let lowering: Vec<Array2<Complex64>> =
        (1..=n).map(|k| build_lowering(n, k)).collect::<Result<_>>()?;
    Ok(match spec.topology {
        Topology::Chained => (0..spec.n_bonds())
            .map(|bond| &lowering[bond] + &lowering[(bond + 1) % n])
            .collect(),
        Topology::Local => lowering,
    })
}

/// Product initial state: qubit 1 in `cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>`,
/// the rest ground.
pub fn full_product_state(theta: f64, phi: f64, n: usize) -> Result<Array2<Complex64>> {
    guard(n)?;
    let dim = 1usize << n;
    let mut psi = Array1::from_elem(dim, ZERO);
    psi[0] = Complex64::new((0.5 * theta).cos(), 0.0);
    psi[1] = Complex64::from_polar((0.5 * theta).sin(), phi);
    let mut rho = Array2::from_elem((dim, dim), ZERO);
    for a in 0..dim {
        for b in 0..dim {
            rho[[a, b]] = psi[a] * psi[b].conj();
        }
    }
    Ok(rho)
}

/// Precomputed operators for the right-hand side.
pub struct LindbladOperators {
    pub hamiltonian: Array2<Complex64>,
    pub jumps: Vec<Array2<Complex64>>,
    /// `sum_n L_n^H L_n`
    pub damping: Array2<Complex64>,
    pub rate: f64,
}

impl LindbladOperators {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        let hamiltonian = build_hamiltonian(spec)?;
        let jumps = build_jump_operators(spec)?;
        let dim = hamiltonian.nrows();
        let mut damping = Array2::from_elem((dim, dim), ZERO);
        for l in &jumps {
            damping = &damping + &dagger(l).dot(l);
        }
        Ok(LindbladOperators {
            hamiltonian,
            jumps,
            damping,
            rate: spec.rate,
        })
    }

    /// `-i[H, rho] + gamma sum_n (2 L_n rho L_n^H - {L_n^H L_n, rho})`,
    /// keeping the factor-2 dissipator convention.
    pub fn rhs(&self, rho: &Array2<Complex64>) -> Array2<Complex64> {
        let minus_i = Complex64::new(0.0, -1.0);
        let mut out = (&self.hamiltonian.dot(rho) - &rho.dot(&self.hamiltonian)).mapv(|z| z * minus_i);
        if self.rate != 0.0 {
            let mut diss = Array2::from_elem(rho.dim(), ZERO);
            for l in &self.jumps {
                let l_rho = l.dot(rho);
                diss = &diss + &l_rho.dot(&dagger(l)).mapv(|z| z * 2.0);
            }
            diss = &diss - &self.damping.dot(rho);
            diss = &diss - &rho.dot(&self.damping);
            out = &out + &diss.mapv(|z| z * self.rate);
        }
        out
    }
}

/// Master-equation right-hand side for one density matrix.
pub fn lindblad_rhs(rho: &Array2<Complex64>, spec: &ChainSpec) -> Result<Array2<Complex64>> {
    let ops = LindbladOperators::new(spec)?;
    if rho.dim() != ops.hamiltonian.dim() {
        return Err(Error::Usage(format!(
            "density matrix shape {:?} does not match 2^N = {}",
            rho.dim(),
            ops.hamiltonian.nrows()
        )));
    }
    Ok(ops.rhs(rho))
}

fn flatten(rho: &Array2<Complex64>) -> Array1<f64> {
    let dim = rho.nrows();
    let mut y = Array1::zeros(2 * dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            y[2 * (a * dim + b)] = rho[[a, b]].re;
            y[2 * (a * dim + b) + 1] = rho[[a, b]].im;
        }
    }
    y
}

fn unflatten(y: &Array1<f64>, dim: usize) -> Array2<Complex64> {
    Array2::from_shape_fn((dim, dim), |(a, b)| {
        Complex64::new(y[2 * (a * dim + b)], y[2 * (a * dim + b) + 1])
    })
}

fn hermitize(rho: &Array2<Complex64>) -> Array2<Complex64> {
    let dim = rho.nrows();
    Array2::from_shape_fn((dim, dim), |(a, b)| 0.5 * (rho[[a, b]] + rho[[b, a]].conj()))
}

/// Integrate the full master equation to each requested time with adaptive
/// Runge-Kutta, re-symmetrizing the output.
pub fn propagate_full(
    rho0: &Array2<Complex64>,
    spec: &ChainSpec,
    times: &[f64],
    rtol: f64,
) -> Result<Vec<Array2<Complex64>>> {
    guard(spec.n_qubits)?;
    let dim = 1usize << spec.n_qubits;
    if rho0.dim() != (dim, dim) {
        return Err(Error::Usage(format!(
            "density matrix shape {:?} does not match 2^N = {dim}",
            rho0.dim()
        )));
    }
    let ops = LindbladOperators::new(spec)?;
    let rhs = move |_t: f64, y: &Array1<f64>| flatten(&ops.rhs(&unflatten(y, dim)));
    let opts = OdeOptions {
        rtol,
        atol: rtol * 1e-3,
        h0: Some(0.01 / spec.coupling.abs().max(spec.rate).max(1e-12)),
        ..Default::default()
    };
    let samples = integrate_sequence(rhs, &flatten(rho0), 0.0, times, &opts)?;
    Ok(samples.iter().map(|y| hermitize(&unflatten(y, dim))).collect())
}

/// Reduced 2x2 state of qubit `o` (1-based), basis `(|0>, |1>)`.
pub fn partial_trace_to_qubit(rho: &Array2<Complex64>, o: usize) -> Result<Array2<Complex64>> {
    let dim = rho.nrows();
    let n = dim.trailing_zeros() as usize;
    if dim != 1 << n || rho.ncols() != dim {
        return Err(Error::Usage(format!("shape {:?} is not 2^N x 2^N", rho.dim())));
    }
    if o == 0 || o > n {
        return Err(Error::Usage(format!("site index {o} out of range 1..={n}")));
    }
    let bit = 1usize << (o - 1);
    let mut q = Array2::from_elem((2, 2), ZERO);
    for rest in 0..dim {
        if rest & bit != 0 {
            continue;
        }
        q[[0, 0]] += rho[[rest, rest]];
        q[[1, 1]] += rho[[rest | bit, rest | bit]];
        q[[1, 0]] += rho[[rest | bit, rest]];
        q[[0, 1]] += rho[[rest, rest | bit]];
    }
    Ok(q)
}

/// Largest matrix element outside the vacuum + single-excitation sector.
/// Validates that product initial states never leave the sector.
pub fn out_of_sector_magnitude(rho: &Array2<Complex64>) -> f64 {
    let dim = rho.nrows();
    let in_sector = |b: usize| (b as u64).count_ones() <= 1;
    let mut worst = 0.0f64;
    for a in 0..dim {
        for b in 0..dim {
            if !(in_sector(a) && in_sector(b)) {
                worst = worst.max(rho[[a, b]].norm());
            }
        }
    }
    worst
}

/// Elementwise deviation between the reduced-engine output qubit and the
/// brute-force one, maximized over the supplied times.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DeviationReport {
    pub n_qubits: usize,
    pub boundary: String,
    pub topology: String,
    pub xi: f64,
    pub gamma: f64,
    pub theta: f64,
    pub phi: f64,
    pub n_times: usize,
    pub max_abs_deviation: f64,
    pub max_out_of_sector: f64,
}

/// Run both engines over `times` and report the worst output-qubit deviation.
pub fn compare_reduced(
    spec: &ChainSpec,
    theta: f64,
    phi: f64,
    times: &[f64],
) -> Result<DeviationReport> {
    guard(spec.n_qubits)?;
    let o = spec.output_index();
    let rho0 = full_product_state(theta, phi, spec.n_qubits)?;
    let full = propagate_full(&rho0, spec, times, 1e-10)?;
    let reduced0 = ReducedState::product_input(theta, phi, spec.n_qubits);
    let reduced = propagate_sequence(&reduced0, spec, times, &PropagateOptions::exponential())?;

    let mut max_dev = 0.0f64;
    let mut max_out = 0.0f64;
    for (rho, red) in full.iter().zip(reduced.iter()) {
        let q_full = partial_trace_to_qubit(rho, o)?;
        let q_red = red.output_qubit(o)?;
        for a in 0..2 {
            for b in 0..2 {
                max_dev = max_dev.max((q_full[[a, b]] - q_red[[a, b]]).norm());
            }
        }
        max_out = max_out.max(out_of_sector_magnitude(rho));
    }
    Ok(DeviationReport {
        n_qubits: spec.n_qubits,
        boundary: spec.boundary.to_string(),
        topology: spec.topology.to_string(),
        xi: spec.coupling,
        gamma: spec.rate,
        theta,
        phi,
        n_times: times.len(),
        max_abs_deviation: max_dev,
        max_out_of_sector: max_out,
    })
}
