//! Dense symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Every algorithm in the crate funnels through [`sym_eigen`] or
//! [`sym_eigenvalues`]. Both run the identical rotation sequence, so the
//! eigenvalues they report for the same input are bit-identical.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative convergence threshold on the off-diagonal Frobenius mass.
pub const EIG_EPS: f64 = 1e-12;

/// Components of a unit eigenvector at or below this magnitude are skipped
/// when fixing the vector's sign.
const SIGN_EPS: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted nonincreasing, with matching orthonormal eigenvectors
/// as the columns of `vectors`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl EigenPairs {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i).iter().copied().collect()
    }
}

fn frobenius(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Checks `A = Aᵀ` to `1e-12` relative to the largest entry.
pub fn check_symmetric(a: &DMatrix<f64>) -> Result<()> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
    }
    let scale = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    for i in 0..n {
        for j in i + 1..n {
            if (a[(i, j)] - a[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
        for j in 0..n {
            if !a[(i, j)].is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Runs Jacobi sweeps on the row-major buffer `w` (n×n) in place.
/// When `v` is given the rotations are accumulated into it.
fn jacobi(w: &mut [f64], n: usize, mut v: Option<&mut [f64]>) {
    let tol = EIG_EPS * frobenius(w);
    if tol == 0.0 {
        return;
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * w[p * n + q] * w[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            return;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = w[r * n + p];
                    let arq = w[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    w[r * n + p] = new_rp;
                    w[p * n + r] = new_rp;
                    w[r * n + q] = new_rq;
                    w[q * n + r] = new_rq;
                }
                if let Some(v) = v.as_deref_mut() {
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = c * vrp - s * vrq;
                        v[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
}

fn row_major(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            w[i * n + j] = a[(i, j)];
        }
    }
    w
}

/// Descending order of the diagonal of `w`; ties keep Jacobi output order.
fn descending_order(w: &[f64], n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[b * n + b].total_cmp(&w[a * n + a]));
    order
}

/// Eigenvalues and eigenvectors of a real symmetric matrix.
///
/// Values come back sorted nonincreasing. Each eigenvector is normalized so
/// that its first component of magnitude above `1e-12` is positive, which
/// makes the output a deterministic function of the input bits.
pub fn sym_eigen(a: &DMatrix<f64>) -> Result<EigenPairs> {
    check_symmetric(a)?;
    let n = a.nrows();
    if n == 1 {
        return Ok(EigenPairs { values: vec![a[(0, 0)]], vectors: DMatrix::identity(1, 1) });
    }
    let mut w = row_major(a);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi(&mut w, n, Some(&mut v));

    let order = descending_order(&w, n);
    let values = order.iter().map(|&k| w[k * n + k]).collect();
    let mut vectors = DMatrix::from_fn(n, n, |r, c| v[r * n + order[c]]);
    for mut col in vectors.column_iter_mut() {
        if let Some(first) = col.iter().copied().find(|x| x.abs() > SIGN_EPS) {
            if first < 0.0 {
                col.neg_mut();
            }
        }
    }
    Ok(EigenPairs { values, vectors })
}

/// Eigenvalues only, bit-identical to `sym_eigen(a).values`.
pub fn sym_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_symmetric(a)?;
    let n = a.nrows();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let mut w = row_major(a);
    jacobi(&mut w, n, None);
    Ok(descending_order(&w, n).iter().map(|&k| w[k * n + k]).collect())
}

/// Perron root `ρ(R) = λ_1(R)` of a symmetric entrywise nonnegative matrix.
pub fn spectral_radius_nonneg(r: &DMatrix<f64>) -> Result<f64> {
    for j in 0..r.ncols() {
        for i in 0..r.nrows() {
            if r[(i, j)] < 0.0 {
                return Err(Error::NegativeEntry { row: i, col: j, value: r[(i, j)] });
            }
        }
    }
    let values = sym_eigenvalues(r)?;
    match (values.first(), values.last()) {
        (Some(&top), Some(&bottom)) => Ok(top.max(-bottom).max(0.0)),
        _ => Ok(0.0),
    }
}
