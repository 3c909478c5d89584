//! Dense complex matrix exponential by Pade approximation with scaling and
//! squaring, plus its action on vectors.
//!
//! The order-13 diagonal Pade approximant with 1-norm scaling keeps the
//! backward error at unit roundoff for any input; generators here are tiny
//! (N of order ten to a few hundred), so no Krylov machinery is warranted.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{identity, lu_solve, one_norm};

// Coefficients of the (13, 13) Pade approximant to exp.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// 1-norm threshold below which the order-13 approximant is full accuracy.
const THETA13: f64 = 5.371920351148152;

/// `exp(A)` for a square complex matrix.
pub fn expm(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "expm: square matrix required");
    let norm = one_norm(a);
    let squarings = if norm <= THETA13 {
        0
    } else {
        (norm / THETA13).log2().ceil() as u32
    };
    let scale = Complex64::new( (0.5f64).powi(squarings as i32), 0.0);
    let a_s = a.mapv(|z| z * scale);

    let a2 = a_s.dot(&a_s);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let eye = identity(n);

    let poly_u = {
        let inner = &a6.mapv(|z| z * PADE13[13])
            + &a4.mapv(|z| z * PADE13[11])
            + &a2.mapv(|z| z * PADE13[9]);
        let inner = a6.dot(&inner);
        let rest = &a6.mapv(|z| z * PADE13[7])
            + &a4.mapv(|z| z * PADE13[5])
            + &a2.mapv(|z| z * PADE13[3])
            + &eye.mapv(|z| z * PADE13[1]);
        a_s.dot(&(&inner + &rest))
    };
    let poly_v = {
        let inner = &a6.mapv(|z| z * PADE13[12])
            + &a4.mapv(|z| z * PADE13[10])
            + &a2.mapv(|z| z * PADE13[8]);
        let inner = a6.dot(&inner);
        &inner
            + &a6.mapv(|z| z * PADE13[6])
            + &a4.mapv(|z| z * PADE13[4])
            + &a2.mapv(|z| z * PADE13[2])
            + &eye.mapv(|z| z * PADE13[0])
    };

    // r = (V - U)^{-1} (V + U), then undo the scaling by repeated squaring
    let mut r = lu_solve(&(&poly_v - &poly_u), &(&poly_v + &poly_u))?;
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    Ok(r)
}

/// `exp(G t) v` without forming any intermediate beyond `exp(G t)` itself.
pub fn expm_action(g: &Array2<Complex64>, t: f64, v: &Array1<Complex64>) -> Result<Array1<Complex64>> {
    let gt = g.mapv(|z| z * t);
    Ok(expm(&gt)?.dot(v))
}
