//! Chain specifications and their single-excitation-sector matrices.
//!
//! A chain is a line or ring of `N` qubits with nearest-neighbor XY (hopping)
//! interactions of strength `xi`, losing excitations at rate `gamma` into
//! either *chained* environments (each pair of nearest neighbors shares a
//! bath, jump operator `sigma_n + sigma_{n+1}`) or *local* environments (one
//! independent bath per qubit, jump operator `sigma_n`).
//!
//! Restricted to the span of the vacuum and the single-excitation states, the
//! whole master equation is generated by two real symmetric `N x N` matrices:
//! the hop matrix `h` (the Hamiltonian on the sector) and the dissipation
//! matrix `M = sum_n v_n v_n^T`, with `v_n` the 0/1 indicator of the sites
//! the `n`th jump operator touches. The non-Hermitian effective generator
//!
//! ```text
//! G = -i h - gamma * M
//! ```
//!
//! drives the conditional single-excitation amplitude; everything downstream
//! (reduced dynamics, output signatures, fidelities) is built on it.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Boundary condition of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// A line: `N - 1` bonds, output at the far end.
    Open,
    /// A ring: `N` bonds, the `(N+1)`th qubit is the 1st.
    Closed,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Closed => "closed",
        })
    }
}

/// Environment topology: who shares a bath with whom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Quasi-local: one bath per bond, jump operator `sigma_n + sigma_{n+1}`.
    Chained,
    /// One independent bath per qubit, jump operator `sigma_n`.
    Local,
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Topology::Chained => "chained",
            Topology::Local => "local",
        })
    }
}

/// The identity of one experiment: geometry, noise topology and rates.
///
/// Qubit sites are 1-based on every public interface.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChainSpec {
    pub n_qubits: usize,
    pub boundary: Boundary,
    pub topology: Topology,
    /// Nearest-neighbor coupling strength `xi` (energy units).
    pub coupling: f64,
    /// Dissipation rate `gamma` (energy units, non-negative).
    pub rate: f64,
}

impl ChainSpec {
    /// Validated constructor. Open chains need `N >= 2`; rings need `N >= 3`
    /// (a two-site ring would traverse the same bond twice).
    pub fn new(
        n_qubits: usize,
        boundary: Boundary,
        topology: Topology,
        coupling: f64,
        rate: f64,
    ) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least 2 qubits, got {n_qubits}"
            )));
        }
        if boundary == Boundary::Closed && n_qubits < 3 {
            return Err(Error::InvalidSpec(format!(
                "closed boundary needs at least 3 qubits, got {n_qubits}"
            )));
        }
        if !coupling.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "coupling must be finite, got {coupling}"
            )));
        }
        if !rate.is_finite() || rate < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "rate must be finite and non-negative, got {rate}"
            )));
        }
        Ok(ChainSpec {
            n_qubits,
            boundary,
            topology,
            coupling,
            rate,
        })
    }

    /// Number of bonds: `N - 1` for a line, `N` for a ring.
    pub fn n_bonds(&self) -> usize {
        match self.boundary {
            Boundary::Open => self.n_qubits - 1,
            Boundary::Closed => self.n_qubits,
        }
    }

    /// 1-based index of the output qubit, always the farthest from qubit 1:
    /// `N` on a line, `ceil(N/2) + 1` on a ring.
    pub fn output_index(&self) -> usize {
        match self.boundary {
            Boundary::Open => self.n_qubits,
            Boundary::Closed => self.n_qubits.div_ceil(2) + 1,
        }
    }

    /// Hop matrix `h`: the XY Hamiltonian on the single-excitation sector.
    /// `h[k][k+1] = h[k+1][k] = xi` along the chain, plus the corner entries
    /// for a ring; zero diagonal.
    pub fn hop_matrix(&self) -> Array2<f64> {
        let n = self.n_qubits;
        let mut h = Array2::zeros((n, n));
        for k in 0..n - 1 {
            h[[k, k + 1]] = self.coupling;
            h[[k + 1, k]] = self.coupling;
        }
        if self.boundary == Boundary::Closed {
            h[[0, n - 1]] = self.coupling;
            h[[n - 1, 0]] = self.coupling;
        }
        h
    }

    /// Indicator vectors of the jump operators: `e_n + e_{n+1}` per bond for
    /// chained noise (wrapping on a ring), `e_n` per site for local noise.
    pub fn jump_vectors(&self) -> Vec<Array1<f64>> {
        let n = self.n_qubits;
        match self.topology {
            Topology::Chained => (0..self.n_bonds())
                .map(|k| {
                    let mut v = Array1::zeros(n);
                    v[k] = 1.0;
                    v[(k + 1) % n] = 1.0;
                    v
                })
                .collect(),
            Topology::Local => (0..n)
                .map(|k| {
                    let mut v = Array1::zeros(n);
                    v[k] = 1.0;
                    v
                })
                .collect(),
        }
    }

    /// Dissipation matrix `M = sum_n v_n v_n^T`; the identity for local noise.
    /// Positive semidefinite by construction.
    pub fn dissipation_matrix(&self) -> Array2<f64> {
        let n = self.n_qubits;
        let mut m = Array2::zeros((n, n));
        for v in self.jump_vectors() {
            for k in 0..n {
                if v[k] == 0.0 {
                    continue;
                }
                for l in 0..n {
                    m[[k, l]] += v[k] * v[l];
                }
            }
        }
        m
    }

    /// Effective sector generator `G = -i h - gamma M`.
    ///
    /// Its anti-Hermitian part is the Hamiltonian and its Hermitian part is
    /// `-gamma M`, so `G + G^H = -2 gamma M`.
    pub fn effective_generator(&self) -> Array2<Complex64> {
        let h = self.hop_matrix();
        let m = self.dissipation_matrix();
        let n = self.n_qubits;
        Array2::from_shape_fn((n, n), |(k, l)| {
            Complex64::new(-self.rate * m[[k, l]], -h[[k, l]])
        })
    }
}
