//! The reduced density operator on the vacuum + single-excitation subspace.
//!
//! For the product initial states used here, the full `2^N` density matrix
//! never leaves the span of the vacuum `|0>` and the `N` states `|k>` with a
//! single excitation on site `k`. A state in that span is stored as
//!
//! * `p00`  - vacuum population,
//! * `c[k]` - coherence `<k| rho |0>` (complex `N`-vector),
//! * `r[k][l]` - the Hermitian single-excitation block `<k| rho |l>`.
//!
//! [`PiCoefficients`] is the same data flattened to `(N+1)^2` real
//! coordinates: the natural variables of the coupled real ODE system.
//! Layout: `a0 = p00`; `a_k = r[k][k]` for `k = 1..N`; then the
//! `(Re, Im)` pairs of `c[k]`; then the pairs of `r[k][l]`, `k > l`, in
//! `(2,1), (3,1), (3,2), (4,1), ...` order. At `N = 3` this lands exactly on
//! the index convention of the hand-derived reference systems
//! (`a_{2k+2} + i a_{2k+3} = c[k]`, `a_{2k+2l+4} + i a_{2k+2l+5} = r[k][l]`).

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ZERO;

/// Vacuum + single-excitation reduced density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub p00: f64,
    pub c: Array1<Complex64>,
    pub r: Array2<Complex64>,
}

impl ReducedState {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// All-ground chain.
    pub fn vacuum(n: usize) -> Self {
        ReducedState {
            p00: 1.0,
            c: Array1::from_elem(n, ZERO),
            r: Array2::from_elem((n, n), ZERO),
        }
    }

    /// Product input: qubit 1 in `cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>`,
    /// all other qubits in the ground state.
    pub fn product_input(theta: f64, phi: f64, n: usize) -> Self {
        let half = 0.5 * theta;
        let mut state = ReducedState::vacuum(n);
        state.p00 = half.cos().powi(2);
        state.c[0] = Complex64::from_polar(0.5 * theta.sin(), phi);
        state.r[[0, 0]] = Complex64::new(half.sin().powi(2), 0.0);
        state
    }

    /// `p00 + tr r`; 1 for any physical state.
    pub fn trace(&self) -> f64 {
        self.p00 + (0..self.n()).map(|k| self.r[[k, k]].re).sum::<f64>()
    }

    /// The `(N+1) x (N+1)` matrix `[[p00, c^H], [c, r]]`: the reduced density
    /// operator itself, with the vacuum as coordinate 0.
    pub fn assembled(&self) -> Array2<Complex64> {
        let n = self.n();
        let mut a = Array2::from_elem((n + 1, n + 1), ZERO);
        a[[0, 0]] = Complex64::new(self.p00, 0.0);
        for k in 0..n {
            a[[k + 1, 0]] = self.c[k];
            a[[0, k + 1]] = self.c[k].conj();
            for l in 0..n {
                a[[k + 1, l + 1]] = self.r[[k, l]];
            }
        }
        a
    }

    /// Reduced 2x2 state of qubit `o` (1-based), basis `(|0>, |1>)`.
    ///
    /// Tracing out every other site keeps only `r[o][o]` (excited
    /// population), the vacuum-coherence `c[o]`, and lumps everything else
    /// into the ground population.
    pub fn output_qubit(&self, o: usize) -> Result<Array2<Complex64>> {
        let n = self.n();
        if o == 0 || o > n {
            return Err(Error::Usage(format!(
                "output qubit index {o} out of range 1..={n}"
            )));
        }
        let k = o - 1;
        let excited = self.r[[k, k]].re;
        let ground = self.p00
            + (0..n)
                .filter(|&l| l != k)
                .map(|l| self.r[[l, l]].re)
                .sum::<f64>();
        let mut q = Array2::from_elem((2, 2), ZERO);
        q[[0, 0]] = Complex64::new(ground, 0.0);
        q[[1, 1]] = Complex64::new(excited, 0.0);
        q[[1, 0]] = self.c[k];
        q[[0, 1]] = self.c[k].conj();
        Ok(q)
    }

    pub fn to_coefficients(&self) -> PiCoefficients {
        let n = self.n();
        let mut a = vec![0.0; (n + 1) * (n + 1)];
        a[0] = self.p00;
        for k in 1..=n {
            a[k] = self.r[[k - 1, k - 1]].re;
            a[n + 2 * k - 1] = self.c[k - 1].re;
            a[n + 2 * k] = self.c[k - 1].im;
        }
        let mut base = 3 * n + 1;
        for k in 2..=n {
            for l in 1..k {
                let z = self.r[[k - 1, l - 1]];
                a[base] = z.re;
                a[base + 1] = z.im;
                base += 2;
            }
        }
        PiCoefficients { a }
    }

    pub fn from_coefficients(coeffs: &PiCoefficients) -> Result<Self> {
        let n = coeffs.n()?;
        let a = &coeffs.a;
        let mut state = ReducedState::vacuum(n);
        state.p00 = a[0];
        for k in 1..=n {
            state.r[[k - 1, k - 1]] = Complex64::new(a[k], 0.0);
            state.c[k - 1] = Complex64::new(a[n + 2 * k - 1], a[n + 2 * k]);
        }
        let mut base = 3 * n + 1;
        for k in 2..=n {
            for l in 1..k {
                let z = Complex64::new(a[base], a[base + 1]);
                state.r[[k - 1, l - 1]] = z;
                state.r[[l - 1, k - 1]] = z.conj();
                base += 2;
            }
        }
        Ok(state)
    }
}

/// Real expansion coefficients of the reduced state over the Hermitian
/// operator basis (length `(N+1)^2`).
#[derive(Debug, Clone, PartialEq)]
pub struct PiCoefficients {
    pub a: Vec<f64>,
}

impl PiCoefficients {
    /// Recover `N` from the vector length, rejecting lengths that are not a
    /// perfect square `(N+1)^2` with `N >= 2`.
    pub fn n(&self) -> Result<usize> {
        let len = self.a.len();
        let root = (len as f64).sqrt().round() as usize;
        if root * root != len || root < 3 {
            return Err(Error::Usage(format!(
                "coefficient vector length {len} is not (N+1)^2 for N >= 2"
            )));
        }
        Ok(root - 1)
    }
}
