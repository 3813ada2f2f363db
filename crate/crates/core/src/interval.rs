//! Interval scalars and general (rectangular) interval matrices.
//!
//! Arithmetic is plain round-to-nearest floating point. Nothing here rounds
//! outward, so enclosures are exact only up to ordinary rounding error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]`.
///
/// Serialized as a two-element array so that files can write `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// One eigenvalue band. Inner bands, outer bands and exact eigenvalue sets
/// are all closed intervals.
pub type Band = Interval;

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Builds `[mid - rad, mid + rad]`. Panics in debug builds on negative radius.
    pub fn from_mid_rad(mid: f64, rad: f64) -> Self {
        debug_assert!(rad >= 0.0, "negative radius {rad}");
        Self { lo: mid - rad, hi: mid + rad }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    #[inline]
    pub fn rad(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// `self ⊆ other`, with every endpoint allowed to stick out by `tol`.
    pub fn is_subset_of(&self, other: &Interval, tol: f64) -> bool {
        self.lo >= other.lo - tol && self.hi <= other.hi + tol
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Dependent square `{x² : x ∈ self}`, tighter than `self * self`.
    pub fn sqr(&self) -> Interval {
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        if self.lo <= 0.0 && 0.0 <= self.hi {
            Interval { lo: 0.0, hi: a.max(b) }
        } else {
            Interval { lo: a.min(b), hi: a.max(b) }
        }
    }

    pub(crate) fn with_lo(self, lo: f64) -> Interval {
        Interval { lo, hi: self.hi.max(lo) }
    }

    pub(crate) fn with_hi(self, hi: f64) -> Interval {
        Interval { lo: self.lo.min(hi), hi }
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = Error;

    fn try_from((lo, hi): (f64, f64)) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo + rhs.lo, hi: self.hi + rhs.hi }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval { lo: self.lo - rhs.hi, hi: self.hi - rhs.lo }
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let c = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

pub(crate) fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if !m[(i, j)].is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// An `m × n` interval matrix stored as midpoint and radius.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    mid: DMatrix<f64>,
    rad: DMatrix<f64>,
}

impl IntervalMatrix {
    pub fn from_mid_rad(mid: DMatrix<f64>, rad: DMatrix<f64>) -> Result<Self> {
        if mid.shape() != rad.shape() {
            return Err(Error::DimensionMismatch { expected: mid.len(), found: rad.len() });
        }
        check_finite(&mid)?;
        check_finite(&rad)?;
        for j in 0..rad.ncols() {
            for i in 0..rad.nrows() {
                if rad[(i, j)] < 0.0 {
                    return Err(Error::NegativeEntry { row: i, col: j, value: rad[(i, j)] });
                }
            }
        }
        Ok(Self { mid, rad })
    }

    pub fn from_bounds(lower: &DMatrix<f64>, upper: &DMatrix<f64>) -> Result<Self> {
        if lower.shape() != upper.shape() {
            return Err(Error::DimensionMismatch { expected: lower.len(), found: upper.len() });
        }
        check_finite(lower)?;
        check_finite(upper)?;
        for j in 0..lower.ncols() {
            for i in 0..lower.nrows() {
                let (lo, hi) = (lower[(i, j)], upper[(i, j)]);
                if lo > hi {
                    return Err(Error::InvalidInterval { lo, hi });
                }
            }
        }
        let mid = (lower + upper) * 0.5;
        let rad = (upper - lower) * 0.5;
        Ok(Self { mid, rad })
    }

    pub fn point(m: DMatrix<f64>) -> Self {
        let rad = DMatrix::zeros(m.nrows(), m.ncols());
        Self { mid: m, rad }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[Interval]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        let mid = DMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j].mid());
        let rad = DMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j].rad());
        Self::from_mid_rad(mid, rad)
    }

    pub fn rows(&self) -> usize {
        self.mid.nrows()
    }

    pub fn cols(&self) -> usize {
        self.mid.ncols()
    }

    pub fn mid(&self) -> &DMatrix<f64> {
        &self.mid
    }

    pub fn rad(&self) -> &DMatrix<f64> {
        &self.rad
    }

    pub fn lower(&self) -> DMatrix<f64> {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> DMatrix<f64> {
        &self.mid + &self.rad
    }

    pub fn entry(&self, i: usize, j: usize) -> Interval {
        Interval::from_mid_rad(self.mid[(i, j)], self.rad[(i, j)])
    }

    pub fn transpose(&self) -> Self {
        Self { mid: self.mid.transpose(), rad: self.rad.transpose() }
    }

    /// Entrywise containment of a real matrix, with slack `tol`.
    pub fn contains(&self, m: &DMatrix<f64>, tol: f64) -> bool {
        m.shape() == self.mid.shape()
            && m.iter()
                .zip(self.mid.iter().zip(self.rad.iter()))
                .all(|(x, (c, r))| (x - c).abs() <= r + tol)
    }
}

/// `[C]·y` as a vector of intervals, plus whether zero lies in every component.
#[derive(Clone, Debug, PartialEq)]
pub struct MatVec {
    pub components: Vec<Interval>,
    pub contains_zero: bool,
}

/// Zero-membership slack used by [`interval_matvec`]: `1e-12·(1 + ‖C_c‖_∞‖y‖_∞)`.
pub fn zero_tolerance(c: &IntervalMatrix, y: &[f64]) -> f64 {
    let row_norm = (0..c.rows())
        .map(|r| (0..c.cols()).map(|j| c.mid[(r, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let y_norm = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    1e-12 * (1.0 + row_norm * y_norm)
}

/// Evaluates `[C_c y − C_Δ|y|, C_c y + C_Δ|y|]` row by row.
pub fn interval_matvec(c: &IntervalMatrix, y: &[f64]) -> Result<MatVec> {
    if c.cols() != y.len() {
        return Err(Error::DimensionMismatch { expected: c.cols(), found: y.len() });
    }
    let tol = zero_tolerance(c, y);
    let mut contains_zero = true;
    let components = (0..c.rows())
        .map(|r| {
            let mut centre = 0.0;
            let mut spread = 0.0;
            for (j, &yj) in y.iter().enumerate() {
                centre += c.mid[(r, j)] * yj;
                spread += c.rad[(r, j)] * yj.abs();
            }
            if centre.abs() > spread + tol {
                contains_zero = false;
            }
            Interval::from_mid_rad(centre, spread)
        })
        .collect();
    Ok(MatVec { components, contains_zero })
}
