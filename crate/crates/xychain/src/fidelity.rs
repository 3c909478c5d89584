//! Output signatures and the optimal average fidelity pipeline.
//!
//! The output qubit of any run is fully characterized by two input-independent
//! functions: the conditional excited population `rho(t) = |psi_o(t)|^2` and
//! the conditional coherence `sigma(t) = psi_o(t) / 2`, where `psi = e^{Gt} e_1`
//! is the transfer amplitude and `o` the output site. For a Bloch input
//! `(theta, phi)` the physical output state is
//!
//! ```text
//! rho_o = [ 1 - rho sin^2(theta/2)      conj(sigma sin(theta) e^{i phi}) ]
//!         [ sigma sin(theta) e^{i phi}  rho sin^2(theta/2)               ]
//! ```
//!
//! in the `(|0>, |1>)` basis. Averaging the input-output fidelity over the
//! Bloch sphere and maximizing over a local receiver unitary gives
//! `F = 1/2 + (rho + 4 |sigma|) / 6`, the figure of merit everywhere in this
//! crate. Extraction never divides by input-angle factors, so the vacuum
//! input (`theta = 0`) needs no special casing.

use ndarray::Array2;
use num_complex::Complex64;

use crate::chain::ChainSpec;
use crate::dynamics::{amplitude_grid, propagate_amplitude};
use crate::error::{Error, Result};
use crate::linalg::ZERO;

/// The input-independent pair `(rho, sigma)` characterizing the output qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputSignature {
    /// Conditional excited population, in `[0, 1]`.
    pub rho: f64,
    /// Conditional coherence, `|sigma| <= 1/2`.
    pub sigma: Complex64,
}

/// A receiver unitary `V = [[u*, -v*], [v, u]]` with `|u|^2 + |v|^2 = 1`,
/// written in the same excited-first basis as the signature matrix.
#[derive(Debug, Clone, Copy)]
pub struct OutputUnitary {
    pub u: Complex64,
    pub v: Complex64,
}

impl OutputUnitary {
    pub fn new(u: Complex64, v: Complex64) -> Result<Self> {
        let norm = u.norm_sqr() + v.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Usage(format!(
                "output transformation is not unitary: |u|^2 + |v|^2 = {norm}"
            )));
        }
        Ok(OutputUnitary { u, v })
    }

    /// Phase-only rotation from a unit-modulus `u`.
    pub fn phase(u: Complex64) -> Result<Self> {
        OutputUnitary::new(u, ZERO)
    }

    /// The operator in the `(|0>, |1>)` basis used throughout this module
    /// (the basis swap turns `[[u*, -v*], [v, u]]` into `[[u, v], [-v*, u*]]`).
    pub fn matrix(&self) -> Array2<Complex64> {
        ndarray::array![
            [self.u, self.v],
            [-self.v.conj(), self.u.conj()],
        ]
    }
}

/// Extract `(rho, sigma)` from the transfer amplitude at time `t`.
pub fn output_signature(spec: &ChainSpec, t: f64) -> Result<OutputSignature> {
    let psi = propagate_amplitude(spec, t)?;
    Ok(signature_from_amplitude(&psi, spec.output_index()))
}

pub(crate) fn signature_from_amplitude(
    psi: &ndarray::Array1<Complex64>,
    output_index: usize,
) -> OutputSignature {
    let amp = psi[output_index - 1];
    OutputSignature {
        rho: amp.norm_sqr(),
        sigma: 0.5 * amp,
    }
}

/// Physical 2x2 output state for a Bloch input `(theta, phi)`,
/// basis `(|0>, |1>)`.
pub fn output_qubit_state(sig: &OutputSignature, theta: f64, phi: f64) -> Array2<Complex64> {
    let s2 = (0.5 * theta).sin().powi(2);
    let excited = sig.rho * s2;
    let coherence = sig.sigma * Complex64::from_polar(theta.sin(), phi);
    ndarray::array![
        [Complex64::new(1.0 - excited, 0.0), coherence.conj()],
        [coherence, Complex64::new(excited, 0.0)],
    ]
}

/// Fidelity of one Bloch input against the (rotated) output state:
/// `<psi| V rho_o V^H |psi>`.
pub fn single_input_fidelity(
    out: &Array2<Complex64>,
    theta: f64,
    phi: f64,
    v: &OutputUnitary,
) -> f64 {
    let m = v.matrix();
    let psi = [
        Complex64::new((0.5 * theta).cos(), 0.0),
        Complex64::from_polar((0.5 * theta).sin(), phi),
    ];
    // w = V^H |psi>, then f = w^H rho_o w
    let w = [
        m[[0, 0]].conj() * psi[0] + m[[1, 0]].conj() * psi[1],
        m[[0, 1]].conj() * psi[0] + m[[1, 1]].conj() * psi[1],
    ];
    let mut f = ZERO;
    for (a, wa) in w.iter().enumerate() {
        for (b, wb) in w.iter().enumerate() {
            f += wa.conj() * out[[a, b]] * wb;
        }
    }
    f.re
}

/// Bloch-sphere average of the rotated input-output fidelity as a function of
/// the rotation parameter `u` alone (`v` drops out of the average):
/// `F = 1/2 + (2 rho |u|^2 + 2(sigma u*^2 + sigma* u^2) - rho) / 6`.
pub fn average_fidelity(sig: &OutputSignature, u: Complex64) -> f64 {
    let cross = 2.0 * (sig.sigma * u.conj() * u.conj()).re;
    0.5 + (2.0 * sig.rho * u.norm_sqr() + 2.0 * cross - sig.rho) / 6.0
}

/// The unit-modulus `u` maximizing [`average_fidelity`]: any solution of
/// `2 arg(u) = arg(sigma) (mod 2 pi)`, with `u = 1` when `sigma = 0`.
pub fn optimal_u(sig: &OutputSignature) -> Complex64 {
    if sig.sigma.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, 0.5 * sig.sigma.arg())
    }
}

/// `F = 1/2 + (rho + 4 |sigma|) / 6`, the average fidelity at the optimal
/// receiver rotation. `|u| = 1` is optimal because the `|u|^2` coefficient
/// `2 rho` is non-negative; that premise is checked, not assumed.
pub fn optimal_average_fidelity(sig: &OutputSignature) -> Result<f64> {
    if sig.rho < -1e-12 {
        return Err(Error::InvariantViolation(format!(
            "negative output population rho = {}",
            sig.rho
        )));
    }
    let f = 0.5 + (sig.rho + 4.0 * sig.sigma.norm()) / 6.0;
    debug_assert!((f - average_fidelity(sig, optimal_u(sig))).abs() < 1e-12);
    Ok(f)
}

/// Time series of the optimal average fidelity with its refined maximum.
#[derive(Debug, Clone)]
pub struct FidelityResult {
    pub times: Vec<f64>,
    pub f: Vec<f64>,
    pub t_star: f64,
    pub f_max: f64,
    pub u_opt: Complex64,
}

/// Default scan window: a few coherent traversals plus several decay times.
pub fn default_t_max(spec: &ChainSpec) -> f64 {
    let xi = spec.coupling.abs().max(1e-12);
    10.0 / xi + 5.0 / spec.rate.max(xi)
}

pub const DEFAULT_GRID: usize = 2000;

/// Scan `F(t)` on `n_grid` uniform points over `[0, t_max]`, then refine every
/// local maximum within 0.1% of the grid best by golden-section search.
pub fn max_fidelity(spec: &ChainSpec, t_max: f64, n_grid: usize) -> Result<FidelityResult> {
    if t_max <= 0.0 || t_max.is_nan() {
        return Err(Error::Usage(format!("t_max must be positive, got {t_max}")));
    }
    if n_grid < 100 {
        return Err(Error::Usage(format!("n_grid must be at least 100, got {n_grid}")));
    }
    let o = spec.output_index();
    let dt = t_max / (n_grid - 1) as f64;
    let amplitudes = amplitude_grid(spec, dt, n_grid)?;
    let times: Vec<f64> = (0..n_grid).map(|k| k as f64 * dt).collect();
    let f: Vec<f64> = amplitudes
        .iter()
        .map(|psi| optimal_average_fidelity(&signature_from_amplitude(psi, o)))
        .collect::<Result<_>>()?;

    let g = spec.effective_generator();
    let grid_best = f.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let threshold = grid_best - 1e-3 * grid_best.abs();
    let tol_t = 1e-10 / spec.coupling.abs().max(spec.rate).max(1e-12);

    let mut best_t = 0.0;
    let mut best_f = f[0];
    for (k, &fk) in f.iter().enumerate() {
        if fk > best_f {
            best_f = fk;
            best_t = times[k];
        }
    }
    for k in 1..n_grid {
        let left = f[k - 1];
        let right = if k + 1 < n_grid { f[k + 1] } else { f64::NEG_INFINITY };
        let is_local_max = f[k] >= left && f[k] >= right;
        if !is_local_max || f[k] < threshold {
            continue;
        }
        let a = times[k - 1];
        let b = if k + 1 < n_grid { times[k + 1] } else { t_max };
        // refinement stays inside this grid cell, so propagate from the
        // cell's amplitude: the exponential argument stays tiny and cheap
        let psi_a = &amplitudes[k - 1];
        let f_at = |t: f64| -> Result<f64> {
            let step = crate::expm::expm(&g.mapv(|z| z * (t - a)))?;
            optimal_average_fidelity(&signature_from_amplitude(&step.dot(psi_a), o))
        };
        // function values alone cannot localize a smooth maximum past
        // sqrt(eps), so the bracket only needs to shrink to the polish
        // stencil; the parabolic fit then nails the vertex
        let h = 3e-5 / spec.coupling.abs().max(spec.rate).max(1.0);
        let (mut t_cand, mut f_cand) = golden_section_max(&f_at, a, b, tol_t.max(0.5 * h))?;
        if let Some((t_fit, f_fit)) = parabolic_polish(&f_at, t_cand, h)? {
            if f_fit >= f_cand - 1e-12 {
                t_cand = t_fit;
                f_cand = f_cand.max(f_fit);
            }
        }
        if f_cand > best_f {
            best_f = f_cand;
            best_t = t_cand;
        }
    }

    let u_opt = optimal_u(&output_signature(spec, best_t)?);
    Ok(FidelityResult {
        times,
        f,
        t_star: best_t,
        f_max: best_f,
        u_opt,
    })
}

/// Fit a parabola through `(t0 - h, t0, t0 + h)` and return its vertex,
/// or `None` when the stencil is not concave (edge maxima).
fn parabolic_polish<F>(f: &F, t0: f64, h: f64) -> Result<Option<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64>,
{
    if t0 - h < 0.0 {
        return Ok(None);
    }
    let f_minus = f(t0 - h)?;
    let f_center = f(t0)?;
    let f_plus = f(t0 + h)?;
    let curvature = f_plus - 2.0 * f_center + f_minus;
    if curvature >= 0.0 {
        return Ok(None);
    }
    let vertex = t0 - 0.5 * h * (f_plus - f_minus) / curvature;
    if (vertex - t0).abs() > h {
        return Ok(None);
    }
    let f_vertex = f(vertex)?;
    Ok(Some((vertex, f_vertex)))
}

fn golden_section_max<F>(f: &F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
    }
    if f1 >= f2 {
        Ok((x1, f1))
    } else {
        Ok((x2, f2))
    }
}

/// One row of a length/topology sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub spec: ChainSpec,
    pub t_star: f64,
    pub f_max: f64,
}

/// Element-wise [`max_fidelity`] over a list of specs, in input order, with
/// row-level error records.
pub fn sweep(specs: &[ChainSpec], t_max: Option<f64>, n_grid: usize) -> Vec<Result<SweepRow>> {
    specs
        .iter()
        .map(|spec| {
            let window = t_max.unwrap_or_else(|| default_t_max(spec));
            max_fidelity(spec, window, n_grid).map(|res| SweepRow {
                spec: *spec,
                t_star: res.t_star,
                f_max: res.f_max,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Boundary, Topology};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn spec(n: usize, b: Boundary, t: Topology, xi: f64, gamma: f64) -> ChainSpec {
        ChainSpec::new(n, b, t, xi, gamma).unwrap()
    }

    /// Independent Bloch-sphere quadrature of the single-input fidelity:
    /// Simpson in theta, trapezoid in phi (periodic, spectrally accurate).
    fn quadrature_average(sig: &OutputSignature, v: &OutputUnitary) -> f64 {
        let n_theta = 201;
        let n_phi = 64;
        let d_theta = PI / (n_theta - 1) as f64;
        let mut total = 0.0;
        for i in 0..n_theta {
            let theta = i as f64 * d_theta;
            let simpson = if i == 0 || i == n_theta - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let mut phi_sum = 0.0;
            for j in 0..n_phi {
                let phi = 2.0 * PI * j as f64 / n_phi as f64;
                let out = output_qubit_state(sig, theta, phi);
                phi_sum += single_input_fidelity(&out, theta, phi, v);
            }
            total += simpson * theta.sin() * phi_sum / n_phi as f64 * (2.0 * PI);
        }
        total * d_theta / 3.0 / (4.0 * PI)
    }

    fn sample_signatures(count: usize) -> Vec<OutputSignature> {
        let mut seed = 42u64;
        let mut rnd = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / (1u64 << 53) as f64
        };
        (0..count)
            .map(|_| {
                let mag = 0.5 * rnd();
                let phase = 2.0 * PI * rnd();
                OutputSignature {
                    // keep the conditional-purity relation rho = 4 |sigma|^2
                    rho: 4.0 * mag * mag,
                    sigma: Complex64::from_polar(mag, phase),
                }
            })
            .collect()
    }

    #[test]
    fn unit_fidelity_for_matching_pure_state() {
        let (theta, phi): (f64, f64) = (1.234, 2.345);
        let psi = [
            Complex64::new((0.5 * theta).cos(), 0.0),
            Complex64::from_polar((0.5 * theta).sin(), phi),
        ];
        let out = Array2::from_shape_fn((2, 2), |(a, b)| psi[a] * psi[b].conj());
        let v = OutputUnitary::new(Complex64::new(1.0, 0.0), ZERO).unwrap();
        assert_abs_diff_eq!(single_input_fidelity(&out, theta, phi, &v), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn ground_state_output_extremes() {
        let ground = ndarray::array![
            [Complex64::new(1.0, 0.0), ZERO],
            [ZERO, ZERO],
        ];
        let v = OutputUnitary::new(Complex64::new(1.0, 0.0), ZERO).unwrap();
        assert_abs_diff_eq!(single_input_fidelity(&ground, 0.0, 0.0, &v), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(single_input_fidelity(&ground, PI, 0.0, &v), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn non_unitary_rotation_is_rejected() {
        assert!(OutputUnitary::new(Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn average_fidelity_matches_bloch_quadrature() {
        // 2D quadrature oracle for the closed-form average, including v != 0
        let sigs = sample_signatures(4);
        let rotations = [
            OutputUnitary::new(Complex64::new(1.0, 0.0), ZERO).unwrap(),
            OutputUnitary::new(Complex64::from_polar(1.0, 0.9), ZERO).unwrap(),
            OutputUnitary::new(
                Complex64::from_polar(0.6, -1.1),
                Complex64::from_polar(0.8, 0.4),
            )
            .unwrap(),
        ];
        for sig in &sigs {
            for v in &rotations {
                let quad = quadrature_average(sig, v);
                let formula = average_fidelity(sig, v.u);
                assert_abs_diff_eq!(quad, formula, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn optimal_rotation_quadrature_consistency() {
        // the optimal-rotation fidelity equals the Bloch average of the
        // single-input fidelity with V built from the optimal u
        for sig in sample_signatures(20) {
            let v = OutputUnitary::phase(optimal_u(&sig)).unwrap();
            let quad = quadrature_average(&sig, &v);
            let closed = optimal_average_fidelity(&sig).unwrap();
            assert_abs_diff_eq!(quad, closed, epsilon = 1e-6);
        }
    }

    #[test]
    fn aligned_phase_reaches_unity() {
        // rho = 1, sigma = -1/2, u = i: the cross term flips sign and F = 1
        let sig = OutputSignature {
            rho: 1.0,
            sigma: Complex64::new(-0.5, 0.0),
        };
        let f = average_fidelity(&sig, Complex64::new(0.0, 1.0));
        assert_abs_diff_eq!(f, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn trivial_signature_scores_one_half() {
        let sig = OutputSignature { rho: 0.0, sigma: ZERO };
        for u in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            assert_abs_diff_eq!(average_fidelity(&sig, u), 0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(optimal_average_fidelity(&sig).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn optimal_u_phase_branches() {
        // negative real sigma: arg(u) = pi/2
        let sig = OutputSignature { rho: 0.2, sigma: Complex64::new(-0.3, 0.0) };
        assert_abs_diff_eq!(optimal_u(&sig).arg(), FRAC_PI_2, epsilon = 1e-14);
        // positive real sigma: arg(u) = 0 maximizes directly
        let sig = OutputSignature { rho: 0.2, sigma: Complex64::new(0.3, 0.0) };
        assert_abs_diff_eq!(optimal_u(&sig).arg(), 0.0, epsilon = 1e-14);
        // sigma = 0: fall back to u = 1
        let sig = OutputSignature { rho: 0.2, sigma: ZERO };
        assert_eq!(optimal_u(&sig), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn optimal_u_depends_only_on_the_phase_of_sigma() {
        let sig1 = OutputSignature { rho: 0.4, sigma: Complex64::from_polar(0.1, 1.1) };
        let sig2 = OutputSignature { rho: 0.1, sigma: Complex64::from_polar(0.45, 1.1) };
        assert!((optimal_u(&sig1) - optimal_u(&sig2)).norm() < 1e-15);
    }

    #[test]
    fn optimal_rotation_beats_random_rotations() {
        let sigs = sample_signatures(1000);
        let mut seed = 7u64;
        let mut rnd = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / (1u64 << 53) as f64
        };
        for sig in &sigs {
            let f_opt = average_fidelity(sig, optimal_u(sig));
            assert_abs_diff_eq!(f_opt, optimal_average_fidelity(sig).unwrap(), epsilon = 1e-14);
            for _ in 0..100 {
                let u = Complex64::from_polar(1.0, 2.0 * PI * rnd());
                assert!(f_opt >= average_fidelity(sig, u) - 1e-12);
            }
        }
    }

    #[test]
    fn fidelity_bounds_on_physical_signatures() {
        for k in 0..300 {
            let rho = (k % 17) as f64 / 16.0;
            let mag = 0.5 * ((k % 13) as f64 / 12.0);
            let sig = OutputSignature {
                rho,
                sigma: Complex64::from_polar(mag, 0.37 * k as f64),
            };
            let f = optimal_average_fidelity(&sig).unwrap();
            assert!((0.5..=1.0 + 1e-12).contains(&f), "rho={rho} mag={mag}: {f}");
        }
    }

    #[test]
    fn negative_population_is_an_invariant_violation() {
        let sig = OutputSignature { rho: -1e-6, sigma: ZERO };
        assert!(optimal_average_fidelity(&sig).is_err());
    }

    #[test]
    fn spec_arithmetic_example() {
        let sig = OutputSignature {
            rho: 0.36,
            sigma: Complex64::from_polar(0.3, 1.2),
        };
        assert_abs_diff_eq!(optimal_average_fidelity(&sig).unwrap(), 0.76, epsilon = 1e-15);
    }

    #[test]
    fn signature_starts_at_zero() {
        for (n, b) in [(2, Boundary::Open), (3, Boundary::Open), (5, Boundary::Closed)] {
            let s = spec(n, b, Topology::Chained, 1.0, 4.0);
            let sig = output_signature(&s, 0.0).unwrap();
            assert!(sig.rho < 1e-15);
            assert!(sig.sigma.norm() < 1e-15);
        }
    }

    #[test]
    fn open_local_signature_closed_form() {
        // sigma(t) = -(1/2) e^{-gamma t} sin^2(xi t / sqrt 2) on three sites
        let s = spec(3, Boundary::Open, Topology::Local, 1.0, 4.0);
        for t in [0.2, 0.5, 0.9, 1.3] {
            let sig = output_signature(&s, t).unwrap();
            let want = -0.5 * (-4.0 * t).exp() * (t / SQRT_2).sin().powi(2);
            assert_abs_diff_eq!(sig.sigma.re, want, epsilon = 1e-12);
            assert!(sig.sigma.im.abs() < 1e-12);
        }
    }

    #[test]
    fn signature_consistent_with_full_state_extraction() {
        // rho = 2 r[o][o] and sigma = c[o] at theta = pi/2, phi = 0, and the
        // same signature reconstructs the state at any other input angles
        let s = spec(4, Boundary::Closed, Topology::Chained, 1.0, 0.5);
        let o = s.output_index();
        let t = 0.8;
        let sig = output_signature(&s, t).unwrap();

        let state = crate::state::ReducedState::product_input(FRAC_PI_2, 0.0, 4);
        let out = crate::dynamics::propagate(&state, &s, t, &Default::default()).unwrap();
        assert_abs_diff_eq!(2.0 * out.r[[o - 1, o - 1]].re, sig.rho, epsilon = 1e-12);
        assert!((out.c[o - 1] - sig.sigma).norm() < 1e-12);

        for (theta, phi) in [(0.3, 1.0), (2.1, -0.4), (PI, 0.0)] {
            let state = crate::state::ReducedState::product_input(theta, phi, 4);
            let out = crate::dynamics::propagate(&state, &s, t, &Default::default()).unwrap();
            let s2 = (0.5 * theta).sin().powi(2);
            let amp = Complex64::from_polar(theta.sin(), phi);
            assert_abs_diff_eq!(out.r[[o - 1, o - 1]].re, sig.rho * s2, epsilon = 1e-12);
            assert!((out.c[o - 1] - sig.sigma * amp).norm() < 1e-12);
        }
    }

    #[test]
    fn perfect_transfer_maximum() {
        // N = 3 open local, gamma = 0: F peaks at exactly 1 at t = pi/sqrt(2)
        let s = spec(3, Boundary::Open, Topology::Local, 1.0, 0.0);
        let res = max_fidelity(&s, 4.0, 400).unwrap();
        assert_abs_diff_eq!(res.f_max, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(res.t_star, PI / SQRT_2, epsilon = 1e-7);
        assert!(res.f_max >= res.f.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    }

    #[test]
    fn three_qubit_orderings() {
        // chained noise beats local noise on the open chain
        let open_chained = max_fidelity(&spec(3, Boundary::Open, Topology::Chained, 1.0, 4.0), 12.0, 1200).unwrap();
        let open_local = max_fidelity(&spec(3, Boundary::Open, Topology::Local, 1.0, 4.0), 12.0, 1200).unwrap();
        assert!(open_chained.f_max > open_local.f_max);

        // ... and on the oracle-validated ring dynamics too. The oft-quoted
        // opposite ordering comes from the alternative closed-form fidelity
        // whose chained excess is suppressed ninefold (see `reference`);
        // running the maximization through that expression reproduces it.
        let ring_chained = max_fidelity(&spec(3, Boundary::Closed, Topology::Chained, 1.0, 4.0), 12.0, 1200).unwrap();
        let ring_local = max_fidelity(&spec(3, Boundary::Closed, Topology::Local, 1.0, 4.0), 12.0, 1200).unwrap();
        assert!(ring_chained.f_max > ring_local.f_max);
        let suppressed = 0.5 + (ring_chained.f_max - 0.5) / 9.0;
        assert!(suppressed < ring_local.f_max);
    }

    #[test]
    fn max_fidelity_argument_validation() {
        let s = spec(3, Boundary::Open, Topology::Local, 1.0, 1.0);
        assert!(max_fidelity(&s, 0.0, 500).is_err());
        assert!(max_fidelity(&s, 1.0, 50).is_err());
    }

    #[test]
    fn refined_maximum_dominates_the_grid() {
        // the refined value may never fall below the scan it started from,
        // and stays inside the physical band
        for (n, b, t, gamma) in [
            (2, Boundary::Open, Topology::Chained, 0.7),
            (3, Boundary::Open, Topology::Chained, 4.0),
            (4, Boundary::Closed, Topology::Chained, 20.0),
            (5, Boundary::Closed, Topology::Local, 0.0),
            (6, Boundary::Open, Topology::Local, 2.0),
        ] {
            let res = max_fidelity(&spec(n, b, t, 1.0, gamma), 25.0, 500).unwrap();
            let grid_best = res.f.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(res.f_max >= grid_best);
            assert!(res.f_max <= 1.0 + 1e-12);
            assert!(res.f.iter().all(|&f| f >= 0.5 - 1e-12));
            assert!((res.u_opt.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_preserves_input_order() {
        let specs = vec![
            spec(3, Boundary::Open, Topology::Chained, 1.0, 4.0),
            spec(4, Boundary::Open, Topology::Chained, 1.0, 4.0),
            spec(3, Boundary::Open, Topology::Local, 1.0, 4.0),
        ];
        let rows = sweep(&specs, Some(8.0), 400);
        assert_eq!(rows.len(), 3);
        for (row, s) in rows.iter().zip(specs.iter()) {
            let row = row.as_ref().unwrap();
            assert_eq!(row.spec.n_qubits, s.n_qubits);
            assert!(row.f_max > 0.5 && row.f_max <= 1.0);
        }
    }
}
