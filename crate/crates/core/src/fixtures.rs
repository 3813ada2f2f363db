//! Small benchmark instances from the interval eigenvalue literature,
//! together with published outer bands for them. Used by the tests and the
//! acceptance suite; handy for smoke-testing the CLI as well.

use nalgebra::DMatrix;

use crate::band::BandSet;
use crate::interval::{Band, IntervalMatrix};
use crate::symmetric::SymmetricIntervalMatrix;

fn bands(pairs: &[(f64, f64)]) -> BandSet {
    BandSet::new(pairs.iter().map(|&(lo, hi)| Band::new(lo, hi).expect("valid band")).collect())
}

/// `[[1, 2, [1,5]], [2, 1, 1], [[1,5], 1, 1]]`.
pub fn small_3x3() -> SymmetricIntervalMatrix {
    let mid = DMatrix::from_row_slice(3, 3, &[1., 2., 3., 2., 1., 1., 3., 1., 1.]);
    let mut rad = DMatrix::zeros(3, 3);
    rad[(0, 2)] = 2.0;
    rad[(2, 0)] = 2.0;
    SymmetricIntervalMatrix::from_mid_rad(mid, rad).expect("valid fixture")
}

/// Outer bands for [`small_3x3`], pairwise disjoint.
pub fn small_3x3_outer() -> BandSet {
    bands(&[(3.5230, 6.7843), (0.0000, 1.0519), (-4.1214, -0.2019)])
}

/// Tridiagonal 4×4 spring-mass stiffness matrix.
pub fn spring_mass_4x4() -> SymmetricIntervalMatrix {
    let lower = DMatrix::from_row_slice(
        4,
        4,
        &[
            2975., -2015., 0., 0., -2015., 4965., -3020., 0., 0., -3020., 6955., -4025., 0., 0.,
            -4025., 8945.,
        ],
    );
    let upper = DMatrix::from_row_slice(
        4,
        4,
        &[
            3025., -1985., 0., 0., -1985., 5035., -2980., 0., 0., -2980., 7045., -3975., 0., 0.,
            -3975., 9055.,
        ],
    );
    SymmetricIntervalMatrix::from_bounds(&lower, &upper).expect("valid fixture")
}

pub fn spring_mass_4x4_outer() -> BandSet {
    bands(&[
        (12560.6296, 12720.2273),
        (6990.7616, 7138.1800),
        (3320.2863, 3459.4322),
        (837.0637, 973.1993),
    ])
}

/// A 3×2 rectangular interval matrix.
pub fn rect_3x2() -> IntervalMatrix {
    let lower = DMatrix::from_row_slice(3, 2, &[2., 1., 0., 0., 0., 2.]);
    let upper = DMatrix::from_row_slice(3, 2, &[3., 1., 2., 1., 1., 3.]);
    IntervalMatrix::from_bounds(&lower, &upper).expect("valid fixture")
}

/// Outer bands for the two singular value sets of [`rect_3x2`].
pub fn rect_3x2_outer() -> BandSet {
    bands(&[(2.0489, 4.5431), (0.4239, 3.1817)])
}

/// A 3×3 interval matrix whose smallest singular value set reaches zero.
pub fn square_3x3() -> IntervalMatrix {
    let lower = DMatrix::from_row_slice(
        3,
        3,
        &[0.75, -0.015, 1.7, 3.55, -5.1, -1.95, 1.05, 0.005, -10.5],
    );
    let upper = DMatrix::from_row_slice(
        3,
        3,
        &[2.25, -0.005, 5.1, 10.65, -1.7, -0.65, 3.15, 0.015, -3.5],
    );
    IntervalMatrix::from_bounds(&lower, &upper).expect("valid fixture")
}

pub fn square_3x3_outer() -> BandSet {
    bands(&[(4.3308, 14.0115), (1.9305, 11.6111), (0.0000, 5.1000)])
}
