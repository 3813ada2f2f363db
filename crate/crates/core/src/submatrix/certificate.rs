use nalgebra::DMatrix;

use crate::interval::{Band, IntervalMatrix};
use crate::simplex::{Feasibility, LinearSystem};
use crate::symmetric::SymmetricIntervalMatrix;

/// Relative widening applied to every radius before the linear test, so
/// that rounding can only make the relaxation larger.
const RADIUS_INFLATION: f64 = 1e-9;

/// Outcome of the pruning test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FeasibilityVerdict {
    /// No `λ` in the window admits a nonzero `y` with `C y = 0` and `D y = λ y`.
    CertifiedInfeasible,
    Unknown,
}

fn inflated(mid: &DMatrix<f64>, rad: &DMatrix<f64>) -> DMatrix<f64> {
    let scale = 1.0 + mid.amax() + rad.amax();
    rad.map(|r| r + RADIUS_INFLATION * scale)
}

/// Pushes `|mid · y| ≤ rad · t` as two rows over the variables `(y, t)`.
fn oettli_prager_rows(sys: &mut LinearSystem, mid: &DMatrix<f64>, rad: &DMatrix<f64>) {
    let k = mid.ncols();
    for r in 0..mid.nrows() {
        let mut plus = vec![0.0; 2 * k];
        let mut minus = vec![0.0; 2 * k];
        for j in 0..k {
            plus[j] = mid[(r, j)];
            minus[j] = -mid[(r, j)];
            plus[k + j] = -rad[(r, j)];
            minus[k + j] = -rad[(r, j)];
        }
        sys.leq(plus, 0.0);
        sys.leq(minus, 0.0);
    }
}

/// Tests whether `[C] y = 0, ([D] − [λ] I) y = 0, ‖y‖_∞ = 1` can have a
/// solution, treating every interval occurrence independently.
///
/// With `M = D − λ I` the Oettli–Prager condition `|M_c y| ≤ M_Δ |y|` is
/// relaxed through auxiliary `t ≥ |y|`, `t ≤ e`. The normalisation is split
/// into `|J|` problems with `y_i = 1`; the node is certified infeasible only
/// if each of them is. A solution of the exact system restricted to any
/// `J' ⊆ J`, padded with zeros, solves the system for `J`, so the verdict
/// covers the whole subtree below `J`.
pub fn feasibility_certificate(
    d: &SymmetricIntervalMatrix,
    c: &IntervalMatrix,
    window: Band,
) -> FeasibilityVerdict {
    let k = d.n();
    if k == 0 || c.cols() != k {
        return FeasibilityVerdict::Unknown;
    }
    let (lc, ld) = (window.mid(), window.rad());
    let m_mid = d.mid() - DMatrix::identity(k, k) * lc;
    let m_rad = inflated(&m_mid, &(d.rad() + DMatrix::identity(k, k) * ld));
    let c_rad = inflated(c.mid(), c.rad());
    if !(m_mid.iter().chain(m_rad.iter()).chain(c_rad.iter()).all(|v| v.is_finite())) {
        return FeasibilityVerdict::Unknown;
    }

    let base = relaxation(&m_mid, &m_rad, c.mid(), &c_rad);
    for i in 0..k {
        let mut sys = base.clone();
        let mut pin = vec![0.0; 2 * k];
        pin[i] = 1.0;
        sys.between(pin, 1.0, 1.0);
        if sys.solve() != Feasibility::Infeasible {
            return FeasibilityVerdict::Unknown;
        }
    }
    FeasibilityVerdict::CertifiedInfeasible
}

/// The system over `(y, t)` shared by all `y_i = 1` splits.
pub(crate) fn relaxation(
    m_mid: &DMatrix<f64>,
    m_rad: &DMatrix<f64>,
    c_mid: &DMatrix<f64>,
    c_rad: &DMatrix<f64>,
) -> LinearSystem {
    let k = m_mid.ncols();
    let mut base = LinearSystem::with_bounds(
        [vec![-1.0; k], vec![0.0; k]].concat(),
        vec![1.0; 2 * k],
    );
    oettli_prager_rows(&mut base, m_mid, m_rad);
    oettli_prager_rows(&mut base, c_mid, c_rad);
    for j in 0..k {
        let mut up = vec![0.0; 2 * k];
        up[j] = 1.0;
        up[k + j] = -1.0;
        let mut down = vec![0.0; 2 * k];
        down[j] = -1.0;
        down[k + j] = -1.0;
        base.leq(up, 0.0);
        base.leq(down, 0.0);
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    fn scalar(lo: f64, hi: f64) -> SymmetricIntervalMatrix {
        SymmetricIntervalMatrix::from_bounds(
            &DMatrix::from_element(1, 1, lo),
            &DMatrix::from_element(1, 1, hi),
        )
        .unwrap()
    }

    fn no_rows(k: usize) -> IntervalMatrix {
        IntervalMatrix::point(DMatrix::zeros(0, k))
    }

    #[test]
    fn scalar_outside_window() {
        let v = feasibility_certificate(&scalar(1.0, 1.0), &no_rows(1), Interval::new(2.0, 3.0).unwrap());
        assert_eq!(v, FeasibilityVerdict::CertifiedInfeasible);
    }

    #[test]
    fn scalar_inside_window() {
        let v = feasibility_certificate(&scalar(0.0, 0.0), &no_rows(1), Interval::new(-1.0, 1.0).unwrap());
        assert_eq!(v, FeasibilityVerdict::Unknown);
    }

    /// Every vertex eigenpair solves the full-set system, so a window around
    /// its eigenvalue must never be certified infeasible. This instance once
    /// exposed pivoting error in the simplex.
    #[test]
    fn vertex_eigenvalues_are_never_pruned() {
        let a = crate::symmetric::jordan_wielandt(&crate::fixtures::square_3x3());
        let k = a.n();
        let none = no_rows(k);
        for idx in 0..1u64 << (k - 1) {
            let z = crate::symmetric::SignVector::from_index(k, idx);
            for side in crate::band::Side::BOTH {
                let v = a.vertex_matrix(&z, side).unwrap();
                for lam in crate::eig::sym_eigenvalues(&v).unwrap() {
                    for w in [0.1, 1e-6] {
                        let window = Interval::new(lam - w, lam + w).unwrap();
                        assert_eq!(feasibility_certificate(&a, &none, window), FeasibilityVerdict::Unknown);
                    }
                }
            }
        }
    }

    #[test]
    fn coupling_row_blocks_solution() {
        // D = 0 and the window contains 0. C = [1, 2] admits y = (1, -1/2);
        // C = I forces y = 0.
        let d = SymmetricIntervalMatrix::point(DMatrix::zeros(2, 2)).unwrap();
        let window = Interval::new(-0.5, 0.5).unwrap();
        let c1 = IntervalMatrix::point(DMatrix::from_row_slice(1, 2, &[1.0, 2.0]));
        assert_eq!(feasibility_certificate(&d, &c1, window), FeasibilityVerdict::Unknown);
        let c2 = IntervalMatrix::point(DMatrix::identity(2, 2));
        assert_eq!(feasibility_certificate(&d, &c2, window), FeasibilityVerdict::CertifiedInfeasible);
    }
}
