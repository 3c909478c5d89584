//! Small dense complex linear algebra kernels.
//!
//! Everything here targets matrices of at most a few hundred rows (reduced
//! sector) or `2^6` rows (brute-force oracle), so plain dense algorithms are
//! used throughout.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn identity(n: usize) -> Array2<Complex64> {
    Array2::from_shape_fn((n, n), |(k, l)| if k == l { ONE } else { ZERO })
}

/// Conjugate transpose.
pub fn dagger(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|z| z.conj())
}

/// Maximum absolute column sum.
pub fn one_norm(a: &Array2<Complex64>) -> f64 {
    let (n, m) = a.dim();
    (0..m)
        .map(|l| (0..n).map(|k| a[[k, l]].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Solve `A X = B` by LU decomposition with partial pivoting.
pub fn lu_solve(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(Error::Usage(format!(
            "lu_solve: incompatible shapes {:?} and {:?}",
            a.dim(),
            b.dim()
        )));
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let m = x.ncols();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        // pivot on the largest remaining magnitude in this column
        let mut pivot = col;
        let mut best = lu[[col, col]].norm();
        for row in col + 1..n {
            let cand = lu[[row, col]].norm();
            if cand > best {
                best = cand;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Err(Error::Usage("lu_solve: singular matrix".into()));
        }
        if pivot != col {
            perm.swap(pivot, col);
            for l in 0..n {
                let tmp = lu[[col, l]];
                lu[[col, l]] = lu[[pivot, l]];
                lu[[pivot, l]] = tmp;
            }
            for l in 0..m {
                let tmp = x[[col, l]];
                x[[col, l]] = x[[pivot, l]];
                x[[pivot, l]] = tmp;
            }
        }
        let inv_diag = ONE / lu[[col, col]];
        for row in col + 1..n {
            let factor = lu[[row, col]] * inv_diag;
            lu[[row, col]] = factor;
            for l in col + 1..n {
                let sub = factor * lu[[col, l]];
                lu[[row, l]] -= sub;
            }
            for l in 0..m {
                let sub = factor * x[[col, l]];
                x[[row, l]] -= sub;
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let inv_diag = ONE / lu[[col, col]];
        for l in 0..m {
            x[[col, l]] *= inv_diag;
        }
        for row in 0..col {
            let factor = lu[[row, col]];
            for l in 0..m {
                let sub = factor * x[[col, l]];
                x[[row, l]] -= sub;
            }
        }
    }
    Ok(x)
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi
/// rotations. Input is symmetrized first so tiny anti-Hermitian noise is
/// tolerated.
pub fn hermitian_eigenvalues(a: &Array2<Complex64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "hermitian_eigenvalues: square matrix required");
    if n == 0 {
        return Vec::new();
    }
    let mut w = Array2::from_shape_fn((n, n), |(k, l)| 0.5 * (a[[k, l]] + a[[l, k]].conj()));
    let scale = max_abs(&w).max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for k in 0..n {
            for l in k + 1..n {
                off = off.max(w[[k, l]].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[[p, q]];
                if apq.norm() <= 1e-18 * scale {
                    continue;
                }
                let app = w[[p, p]].re;
                let aqq = w[[q, q]].re;
                // unitary 2x2 rotation [[c, s], [-conj(s), c]] eliminating w[p][q]
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);

                for k in 0..n {
                    let wkp = w[[k, p]];
                    let wkq = w[[k, q]];
                    w[[k, p]] = c * wkp - s.conj() * wkq;
                    w[[k, q]] = s * wkp + c * wkq;
                }
                for k in 0..n {
                    let wpk = w[[p, k]];
                    let wqk = w[[q, k]];
                    w[[p, k]] = c * wpk - s * wqk;
                    w[[q, k]] = s.conj() * wpk + c * wqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|k| w[[k, k]].re).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Elementwise maximum deviation between two matrices.
pub fn max_deviation(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lu_solve_recovers_known_solution() {
        let a = ndarray::array![
            [Complex64::new(2.0, 1.0), Complex64::new(0.0, -1.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.5)],
        ];
        let x_true = ndarray::array![
            [Complex64::new(1.0, -2.0)],
            [Complex64::new(0.5, 0.25)],
        ];
        let b = a.dot(&x_true);
        let x = lu_solve(&a, &b).unwrap();
        for k in 0..2 {
            assert_abs_diff_eq!(x[[k, 0]].re, x_true[[k, 0]].re, epsilon = 1e-13);
            assert_abs_diff_eq!(x[[k, 0]].im, x_true[[k, 0]].im, epsilon = 1e-13);
        }
    }

    #[test]
    fn lu_solve_rejects_singular() {
        let a = ndarray::array![
            [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            [Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        ];
        let b = identity(2);
        assert!(lu_solve(&a, &b).is_err());
    }

    #[test]
    fn lu_solve_needs_pivoting() {
        // zero leading pivot forces a row swap
        let a = ndarray::array![
            [ZERO, ONE],
            [ONE, ONE],
        ];
        let b = identity(2);
        let inv = lu_solve(&a, &b).unwrap();
        let prod = a.dot(&inv);
        assert!(max_deviation(&prod, &identity(2)) < 1e-14);
    }

    #[test]
    fn jacobi_eigenvalues_diagonal() {
        let a = ndarray::array![
            [Complex64::new(3.0, 0.0), ZERO],
            [ZERO, Complex64::new(-1.0, 0.0)],
        ];
        let e = hermitian_eigenvalues(&a);
        assert_abs_diff_eq!(e[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn jacobi_eigenvalues_pauli_like() {
        // [[0, 1-i], [1+i, 0]] has eigenvalues +-sqrt(2)
        let a = ndarray::array![
            [ZERO, Complex64::new(1.0, -1.0)],
            [Complex64::new(1.0, 1.0), ZERO],
        ];
        let e = hermitian_eigenvalues(&a);
        assert_abs_diff_eq!(e[0], -std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], std::f64::consts::SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_eigenvalues_random_hermitian_trace_and_frobenius() {
        // eigenvalues must preserve trace and sum of squares
        let n = 7;
        let mut seed = 1u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / (1u64 << 53) as f64 - 0.5
        };
        let mut a = Array2::from_elem((n, n), ZERO);
        for k in 0..n {
            for l in k..n {
                if k == l {
                    a[[k, l]] = Complex64::new(rnd(), 0.0);
                } else {
                    let z = Complex64::new(rnd(), rnd());
                    a[[k, l]] = z;
                    a[[l, k]] = z.conj();
                }
            }
        }
        let e = hermitian_eigenvalues(&a);
        let tr: f64 = (0..n).map(|k| a[[k, k]].re).sum();
        let fro: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(e.iter().sum::<f64>(), tr, epsilon = 1e-11);
        assert_abs_diff_eq!(e.iter().map(|x| x * x).sum::<f64>(), fro, epsilon = 1e-10);
    }
}
