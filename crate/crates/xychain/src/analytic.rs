//! Closed-form output signatures for every three-qubit scenario.
//!
//! These serve as independent oracles for the dynamics engine; none of them
//! call into it. The two open-boundary forms come straight from
//! diagonalizing the 3x3 effective generator, whose non-trivial eigenvalues
//! for chained noise are `lambda_pm = (gamma/2)(-3 +- (x + i y))` with the
//! dimensionless pair `(x, y)` below. Hyperbolics of complex argument are
//! never evaluated bare: every `cosh`/`sinh` is grouped with its decaying
//! envelope first (`x < 3` always, so all exponents stay non-positive and
//! nothing overflows at large `gamma t`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fidelity::OutputSignature;

/// The dimensionless pair parameterizing the open-chained spectrum:
///
/// ```text
/// x = sqrt((9 - 8 r^2 + s) / 2),  y = sqrt((-9 + 8 r^2 + s) / 2),
/// s = sqrt(81 + 112 r^2 + 64 r^4),  r = xi / gamma,
/// ```
///
/// so that `x + i y = sqrt(9 - 8 r^2 + 16 i r)`, i.e. `x^2 - y^2 = 9 - 8 r^2`
/// and `x y = 8 r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyParams {
    pub x: f64,
    pub y: f64,
}

pub fn xy_params(xi: f64, gamma: f64) -> Result<XyParams> {
    if gamma <= 0.0 || gamma.is_nan() {
        return Err(Error::Domain(format!(
            "x, y are defined for gamma > 0 only (got gamma = {gamma}); \
             use the dynamics engine for the unitary limit"
        )));
    }
    let r2 = (xi / gamma) * (xi / gamma);
    let s = (81.0 + 112.0 * r2 + 64.0 * r2 * r2).sqrt();
    // both radicands are non-negative: s >= |9 - 8 r^2|
    let x = (0.5 * (9.0 - 8.0 * r2 + s)).max(0.0).sqrt();
    let y = (0.5 * (-9.0 + 8.0 * r2 + s)).max(0.0).sqrt();
    Ok(XyParams { x, y })
}

/// `e^{-c} cosh(a)` and `e^{-c} sinh(a)` for `c >= |a|`, without overflow.
fn decayed_cosh_sinh(a: f64, c: f64) -> (f64, f64) {
    let plus = (a - c).exp();
    let minus = (-a - c).exp();
    (0.5 * (plus + minus), 0.5 * (plus - minus))
}

/// Open boundary, chained noise: the exact `(rho, sigma)` of the third qubit.
pub fn open_chained_signature(t: f64, xi: f64, gamma: f64) -> Result<OutputSignature> {
    let XyParams { x, y } = xy_params(xi, gamma)?;
    let gt = gamma * t;
    let r2sum = x * x + y * y;

    // sigma = -e^{-gt}/4 + e^{-3gt/2}/4 * cosh(z)[1 + tanh(z)/w],
    // z = (gt/2) w, w = x + i y; regrouped over e^{lambda_pm t}
    let w = Complex64::new(x, y);
    let half = Complex64::new(0.5, 0.0);
    let coef_plus = half * (Complex64::new(1.0, 0.0) + 1.0 / w);
    let coef_minus = half * (Complex64::new(1.0, 0.0) - 1.0 / w);
    let exp_plus = Complex64::new(0.5 * gt * (x - 3.0), 0.5 * gt * y).exp();
    let exp_minus = Complex64::new(0.5 * gt * (-x - 3.0), -0.5 * gt * y).exp();
    let sigma = -0.25 * (-gt).exp() + 0.25 * (coef_plus * exp_plus + coef_minus * exp_minus);

    // rho, with every hyperbolic grouped against its envelope
    let (cosh5, sinh5) = decayed_cosh_sinh(0.5 * gt * x, 2.5 * gt); // e^{-5gt/2} cosh/sinh(gtx/2)
    let (cosh3, sinh3) = decayed_cosh_sinh(gt * x, 3.0 * gt); //       e^{-3gt}  cosh/sinh(gtx)
    let e3 = (-3.0 * gt).exp();
    let (sin_half, cos_half) = (0.5 * gt * y).sin_cos();
    let (sin_full, cos_full) = (gt * y).sin_cos();

    let middle = cosh5 * cos_half + (y * cosh5 * sin_half + x * cos_half * sinh5) / r2sum;
    let tail = e3 * cos_full
        + cosh3
        + (2.0 * y * e3 * sin_full + 2.0 * x * sinh3 - e3 * cos_full + cosh3) / r2sum;
    let rho = 0.25 * ((-2.0 * gt).exp() - 2.0 * middle + 0.5 * tail);

    Ok(OutputSignature { rho, sigma })
}

/// Optimal average fidelity for the open chained scenario, through the
/// normative signature -> fidelity pipeline.
pub fn open_chained_fidelity(t: f64, xi: f64, gamma: f64) -> Result<f64> {
    let sig = open_chained_signature(t, xi, gamma)?;
    crate::fidelity::optimal_average_fidelity(&sig)
}

/// Open boundary, local noise: `rho = e^{-2 gamma t} sin^4(xi t / sqrt 2)`,
/// `sigma = -(1/2) e^{-gamma t} sin^2(xi t / sqrt 2)`.
pub fn open_local_signature(t: f64, xi: f64, gamma: f64) -> OutputSignature {
    let s2 = (xi * t / std::f64::consts::SQRT_2).sin().powi(2);
    OutputSignature {
        rho: (-2.0 * gamma * t).exp() * s2 * s2,
        sigma: Complex64::new(-0.5 * (-gamma * t).exp() * s2, 0.0),
    }
}

/// Closed-form optimal average fidelity for the open local scenario:
/// `1/2 + (e^{-gamma t}/3) s^2 (1 + (e^{-gamma t}/2) s^2)`.
pub fn open_local_fidelity(t: f64, xi: f64, gamma: f64) -> f64 {
    let s2 = (xi * t / std::f64::consts::SQRT_2).sin().powi(2);
    let env = (-gamma * t).exp();
    0.5 + env * s2 / 3.0 * (1.0 + 0.5 * env * s2)
}

/// Closed ring, chained noise:
/// `rho = e^{-2 gamma t}/9 (1 + e^{-6 gamma t} - 2 e^{-3 gamma t} cos 3 xi t)`
/// and `sigma = e^{(i xi - gamma) t}/6 (e^{-3 (i xi + gamma) t} - 1)`, the
/// form validated against the full-space oracle (`|sigma|` and `rho` obey
/// the conditional-purity relation exactly).
pub fn closed_chained_signature(t: f64, xi: f64, gamma: f64) -> OutputSignature {
    let gt = gamma * t;
    let rho = ((-2.0 * gt).exp() / 9.0)
        * (1.0 + (-6.0 * gt).exp() - 2.0 * (-3.0 * gt).exp() * (3.0 * xi * t).cos());
    let lead = Complex64::new(-gt, xi * t).exp() / 6.0;
    let sigma = lead * (Complex64::new(-3.0 * gt, -3.0 * xi * t).exp() - 1.0);
    OutputSignature { rho, sigma }
}

/// Optimal average fidelity for the closed chained scenario, through the
/// normative pipeline.
pub fn closed_chained_fidelity(t: f64, xi: f64, gamma: f64) -> f64 {
    let sig = closed_chained_signature(t, xi, gamma);
    0.5 + (sig.rho + 4.0 * sig.sigma.norm()) / 6.0
}

/// Closed ring, local noise:
/// `rho = (4/9) e^{-2 gamma t} sin^2(3 xi t / 2)`,
/// `sigma = -(i/3) e^{-gamma t - i xi t / 2} sin(3 xi t / 2)`.
pub fn closed_local_signature(t: f64, xi: f64, gamma: f64) -> OutputSignature {
    let s = (1.5 * xi * t).sin();
    let rho = 4.0 / 9.0 * (-2.0 * gamma * t).exp() * s * s;
    let sigma = Complex64::new(0.0, -1.0 / 3.0)
        * Complex64::new(-gamma * t, -0.5 * xi * t).exp()
        * s;
    OutputSignature { rho, sigma }
}

/// Closed-form optimal average fidelity for the closed local scenario,
/// with each brace term carrying its decaying envelope:
/// `1/2 - (1/3) e^{-2 gamma t} {1/2 - (2/3) sin^2(3 xi t/2)
///  - (1/18)[5 + 4 cos 3 xi t] - (2/3) e^{gamma t} |sin(3 xi t/2)|}`.
pub fn closed_local_fidelity(t: f64, xi: f64, gamma: f64) -> f64 {
    let gt = gamma * t;
    let s2 = (1.5 * xi * t).sin().powi(2);
    let e2 = (-2.0 * gt).exp();
    0.5 - e2 / 6.0
        + 2.0 / 9.0 * e2 * s2
        + e2 / 54.0 * (5.0 + 4.0 * (3.0 * xi * t).cos())
        + 2.0 / 9.0 * (-gt).exp() * (1.5 * xi * t).sin().abs()
}
