#![allow(dead_code)]

use nalgebra::DMatrix;
use proptest::prelude::*;

use interval_spectra::{IntervalMatrix, SymmetricIntervalMatrix};

/// Symmetric interval matrices of size `1..=max_n` with midpoints in
/// `[-5, 5]` and radii in `[0, max_rad]`.
pub fn sym_interval(max_n: usize, max_rad: f64) -> impl Strategy<Value = SymmetricIntervalMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        let k = n * (n + 1) / 2;
        (
            prop::collection::vec(-5.0..5.0f64, k),
            prop::collection::vec(0.0..=max_rad, k),
        )
            .prop_map(move |(mids, rads)| {
                let mut mid = DMatrix::zeros(n, n);
                let mut rad = DMatrix::zeros(n, n);
                let mut t = 0;
                for i in 0..n {
                    for j in i..n {
                        mid[(i, j)] = mids[t];
                        mid[(j, i)] = mids[t];
                        rad[(i, j)] = rads[t];
                        rad[(j, i)] = rads[t];
                        t += 1;
                    }
                }
                SymmetricIntervalMatrix::from_mid_rad(mid, rad).unwrap()
            })
    })
}

pub fn interval_matrix(rows: usize, cols: usize, max_rad: f64) -> impl Strategy<Value = IntervalMatrix> {
    (
        prop::collection::vec(-5.0..5.0f64, rows * cols),
        prop::collection::vec(0.0..=max_rad, rows * cols),
    )
        .prop_map(move |(m, r)| {
            IntervalMatrix::from_mid_rad(DMatrix::from_vec(rows, cols, m), DMatrix::from_vec(rows, cols, r)).unwrap()
        })
}

pub fn symmetric_point(max_n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    sym_interval(max_n, 0.0).prop_map(|a| a.mid().clone())
}

/// Tolerance scaled to the magnitude of `a`.
pub fn scale(a: &DMatrix<f64>) -> f64 {
    1.0 + a.amax()
}
