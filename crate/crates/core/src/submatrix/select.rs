use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::interval::{zero_tolerance, IntervalMatrix};

/// Picks `C* ∈ [C]` with `C* y = 0`.
///
/// Row `r` moves from the midpoint against `sgn(y)` by the fraction
/// `t_r = (C_c,r · y) / (C_Δ,r · |y|)` of the radius, which cancels the
/// product exactly in exact arithmetic. Rows whose centre product lies
/// within the zero tolerance of [`interval_matvec`](crate::interval::interval_matvec)
/// but slightly outside the spread get `t_r` clamped to `±1`.
pub fn select_matrix_with_zero_product(c: &IntervalMatrix, y: &[f64]) -> Result<DMatrix<f64>> {
    if c.cols() != y.len() {
        return Err(Error::DimensionMismatch { expected: c.cols(), found: y.len() });
    }
    let tol = zero_tolerance(c, y);
    let (mid, rad) = (c.mid(), c.rad());
    let mut out = mid.clone();
    for r in 0..c.rows() {
        let mut centre = 0.0;
        let mut spread = 0.0;
        for (j, &yj) in y.iter().enumerate() {
            centre += mid[(r, j)] * yj;
            spread += rad[(r, j)] * yj.abs();
        }
        if centre.abs() > spread + tol {
            return Err(Error::Precondition(format!(
                "row {r}: |C_c y| = {} exceeds C_Δ|y| = {spread}",
                centre.abs()
            )));
        }
        let t = if spread == 0.0 { 0.0 } else { (centre / spread).clamp(-1.0, 1.0) };
        for (j, &yj) in y.iter().enumerate() {
            let s = if yj > 0.0 {
                1.0
            } else if yj < 0.0 {
                -1.0
            } else {
                0.0
            };
            out[(r, j)] = mid[(r, j)] - t * s * rad[(r, j)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    fn row(entries: &[(f64, f64)]) -> IntervalMatrix {
        let e: Vec<Interval> = entries.iter().map(|&(l, h)| Interval::new(l, h).unwrap()).collect();
        IntervalMatrix::from_entries(1, e.len(), &e).unwrap()
    }

    #[test]
    fn symmetric_interval_picks_zero() {
        let c = select_matrix_with_zero_product(&row(&[(-1.0, 1.0)]), &[1.0]).unwrap();
        assert_eq!(c[(0, 0)], 0.0);
    }

    #[test]
    fn endpoint_at_zero() {
        let c = select_matrix_with_zero_product(&row(&[(0.0, 2.0)]), &[1.0]).unwrap();
        assert_eq!(c[(0, 0)], 0.0);
    }

    #[test]
    fn two_column_row() {
        let m = row(&[(1.0, 3.0), (-4.0, -2.0)]);
        let c = select_matrix_with_zero_product(&m, &[2.0, 1.0]).unwrap();
        assert!((c[(0, 0)] - 5.0 / 3.0).abs() < 1e-15);
        assert!((c[(0, 1)] + 10.0 / 3.0).abs() < 1e-15);
        assert!((c[(0, 0)] * 2.0 + c[(0, 1)]).abs() < 1e-14);
        assert!(m.contains(&c, 0.0));
    }

    #[test]
    fn rejects_when_zero_is_not_reachable() {
        assert!(matches!(
            select_matrix_with_zero_product(&row(&[(1.0, 5.0)]), &[1.0]),
            Err(Error::Precondition(_))
        ));
    }
}
