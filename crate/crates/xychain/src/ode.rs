//! Adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4)).
//!
//! The state is a flat real vector; complex systems are integrated on their
//! real coordinates. Error control uses the usual mixed absolute/relative
//! tolerance with an RMS norm, a 0.9 safety factor and step-scale clamping.

use ndarray::Array1;

use crate::error::{OdeFailure, OdeFailureReason};

/// Step-control settings.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; if `None` a conservative guess from the tolerances is used.
    pub h0: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-9,
            atol: 1e-12,
            h0: None,
            max_steps: 1_000_000,
        }
    }
}

// Dormand-Prince coefficients.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate `dy/dt = f(t, y)` from `t0` to `t1`, returning `y(t1)`.
pub fn integrate<F>(
    f: F,
    y0: &Array1<f64>,
    t0: f64,
    t1: f64,
    opts: &OdeOptions,
) -> Result<Array1<f64>, OdeFailure>
where
    F: Fn(f64, &Array1<f64>) -> Array1<f64>,
{
    let mut out = integrate_sequence(f, y0, t0, &[t1], opts)?;
    Ok(out.pop().expect("one sample requested"))
}

/// Integrate through an ascending sequence of sample times, hitting each one
/// exactly. Returns `y(times[i])` for every requested time.
pub fn integrate_sequence<F>(
    f: F,
    y0: &Array1<f64>,
    t0: f64,
    times: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<Array1<f64>>, OdeFailure>
where
    F: Fn(f64, &Array1<f64>) -> Array1<f64>,
{
    assert!(
        times.windows(2).all(|w| w[0] <= w[1]),
        "sample times must be ascending"
    );
    assert!(opts.rtol > 0.0 && opts.atol > 0.0, "tolerances must be positive");

    let n = y0.len();
    let mut y = y0.clone();
    let mut t = t0;
    let mut dy = f(t, &y); // FSAL slot
    let mut h = opts.h0.unwrap_or_else(|| {
        let span = times.last().map(|tf| (tf - t0).abs()).unwrap_or(1.0);
        (span / 100.0).max(1e-10)
    });
    let mut steps = 0usize;
    let mut out = Vec::with_capacity(times.len());
    let mut k: [Array1<f64>; 7] = [
        Array1::zeros(n),
        Array1::zeros(n),
        Array1::zeros(n),
        Array1::zeros(n),
        Array1::zeros(n),
        Array1::zeros(n),
        Array1::zeros(n),
    ];

    for &target in times {
        assert!(target >= t0, "sample times must not precede t0");
        while t < target {
            // never overshoot the sample point
            let h_try = h.min(target - t);
            if h_try <= 0.0 || h_try.is_nan() || t + h_try == t {
                return Err(OdeFailure {
                    t,
                    step: h_try,
                    err_norm: f64::NAN,
                    steps,
                    reason: OdeFailureReason::StepSizeUnderflow,
                });
            }
            if steps >= opts.max_steps {
                return Err(OdeFailure {
                    t,
                    step: h_try,
                    err_norm: f64::NAN,
                    steps,
                    reason: OdeFailureReason::MaxStepsExceeded,
                });
            }
            steps += 1;

            k[0].assign(&dy);
            for stage in 1..7 {
                let mut y_stage = y.clone();
                for (j, kj) in k.iter().enumerate().take(stage) {
                    let a = A[stage][j];
                    if a != 0.0 {
                        y_stage.scaled_add(a * h_try, kj);
                    }
                }
                k[stage] = f(t + C[stage] * h_try, &y_stage);
            }

            let mut y5 = y.clone();
            let mut y4 = y.clone();
            for (j, kj) in k.iter().enumerate() {
                if B5[j] != 0.0 {
                    y5.scaled_add(B5[j] * h_try, kj);
                }
                if B4[j] != 0.0 {
                    y4.scaled_add(B4[j] * h_try, kj);
                }
            }

            // RMS of the componentwise scaled error
            let mut acc = 0.0;
            for i in 0..n {
                let tol = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
                let e = (y5[i] - y4[i]) / tol;
                acc += e * e;
            }
            let err_norm = (acc / n as f64).sqrt();

            if err_norm <= 1.0 {
                t += h_try;
                y = y5;
                // FSAL: stage 7 was evaluated at (t + h, y5)
                dy = k[6].clone();
                let scale = if err_norm == 0.0 {
                    5.0
                } else {
                    (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
                };
                h = h_try * scale;
            } else {
                let scale = (0.9 * err_norm.powf(-0.2)).clamp(0.1, 1.0);
                h = h_try * scale;
                if h < 1e-14 * (t.abs().max(target.abs()).max(1.0)) {
                    return Err(OdeFailure {
                        t,
                        step: h,
                        err_norm,
                        steps,
                        reason: OdeFailureReason::StepSizeUnderflow,
                    });
                }
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}
