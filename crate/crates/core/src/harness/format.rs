//! JSON problem files, outer-band files, and report records.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::band::BandSet;
use crate::error::{Error, Result};
use crate::harness::Method;
use crate::interval::{Interval, IntervalMatrix};
use crate::submatrix::Mode;
use crate::symmetric::SymmetricIntervalMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Symmetric,
    Rectangular,
}

/// An interval matrix given by its entrywise lower and upper bounds,
/// optionally with outer bands for its eigenvalue (or singular value) sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: ProblemKind,
    pub rows: usize,
    pub cols: usize,
    pub lower: Vec<Vec<f64>>,
    pub upper: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<Vec<Interval>>,
}

fn to_matrix(rows: usize, cols: usize, data: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>> {
    if data.len() != rows {
        return Err(Error::Parse(format!("{what}: expected {rows} rows, found {}", data.len())));
    }
    if let Some((r, row)) = data.iter().enumerate().find(|(_, row)| row.len() != cols) {
        return Err(Error::Parse(format!("{what}: row {r} has {} entries, expected {cols}", row.len())));
    }
    Ok(DMatrix::from_fn(rows, cols, |i, j| data[i][j]))
}

fn from_matrix(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("problem files always serialize")
    }

    /// Checks shapes, bounds and (for the symmetric kind) symmetry.
    pub fn validate(&self) -> Result<()> {
        let m = self.interval_matrix()?;
        if self.kind == ProblemKind::Symmetric {
            if self.rows != self.cols {
                return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
            }
            SymmetricIntervalMatrix::from_interval_matrix(&m)?;
        }
        if let Some(outer) = &self.outer {
            let expected = match self.kind {
                ProblemKind::Symmetric => self.rows,
                ProblemKind::Rectangular => self.rows.min(self.cols),
            };
            if outer.len() != expected && outer.len() != self.rows + self.cols {
                return Err(Error::InvalidOuter(format!(
                    "expected {expected} outer bands, found {}",
                    outer.len()
                )));
            }
        }
        Ok(())
    }

    pub fn interval_matrix(&self) -> Result<IntervalMatrix> {
        let lower = to_matrix(self.rows, self.cols, &self.lower, "lower")?;
        let upper = to_matrix(self.rows, self.cols, &self.upper, "upper")?;
        IntervalMatrix::from_bounds(&lower, &upper)
    }

    pub fn symmetric(&self) -> Result<SymmetricIntervalMatrix> {
        if self.kind != ProblemKind::Symmetric {
            return Err(Error::Parse("expected a problem of kind \"symmetric\"".into()));
        }
        SymmetricIntervalMatrix::from_interval_matrix(&self.interval_matrix()?)
    }

    pub fn outer_bands(&self) -> Option<BandSet> {
        self.outer.as_ref().map(|b| BandSet::new(b.clone()))
    }

    pub fn from_symmetric(a: &SymmetricIntervalMatrix, outer: Option<&BandSet>) -> Self {
        Self {
            kind: ProblemKind::Symmetric,
            rows: a.n(),
            cols: a.n(),
            lower: from_matrix(&a.lower()),
            upper: from_matrix(&a.upper()),
            outer: outer.map(|o| o.bands.clone()),
        }
    }

    pub fn from_rectangular(a: &IntervalMatrix, outer: Option<&BandSet>) -> Self {
        Self {
            kind: ProblemKind::Rectangular,
            rows: a.rows(),
            cols: a.cols(),
            lower: from_matrix(&a.lower()),
            upper: from_matrix(&a.upper()),
            outer: outer.map(|o| o.bands.clone()),
        }
    }
}

/// Reads outer bands from either `{"outer": [[lo, hi], ...]}` or a bare
/// array of pairs.
pub fn parse_outer(text: &str) -> Result<BandSet> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OuterDoc {
        Wrapped { outer: Vec<Interval> },
        Bare(Vec<Interval>),
    }
    let bands = match serde_json::from_str::<OuterDoc>(text)? {
        OuterDoc::Wrapped { outer } | OuterDoc::Bare(outer) => outer,
    };
    Ok(BandSet::new(bands))
}

/// Explicit members attaining the reported endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub upper: Vec<Vec<Vec<f64>>>,
    pub lower: Vec<Vec<Vec<f64>>>,
}

impl WitnessSet {
    pub fn from_matrices(upper: &[DMatrix<f64>], lower: &[DMatrix<f64>]) -> Self {
        Self {
            upper: upper.iter().map(from_matrix).collect(),
            lower: lower.iter().map(from_matrix).collect(),
        }
    }
}

/// Machine-readable output of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRecord {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub n: usize,
    pub bands: BandSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<BandSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sharpness: Option<f64>,
    pub seconds: f64,
    #[serde(default)]
    pub counters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessSet>,
}

fn check_flags(b: &BandSet, what: &str) -> Result<()> {
    if b.exact_lo.len() != b.len() || b.exact_hi.len() != b.len() {
        return Err(Error::Parse(format!("{what}: exactness flags do not match the number of bands")));
    }
    Ok(())
}

impl ReportRecord {
    pub fn parse(text: &str) -> Result<Self> {
        let r: ReportRecord = serde_json::from_str(text)?;
        check_flags(&r.bands, "bands")?;
        if let Some(o) = &r.outer {
            check_flags(o, "outer")?;
        }
        if let Some(s) = r.sharpness {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::Parse(format!("sharpness {s} outside [0, 1]")));
            }
        }
        if !(r.seconds.is_finite() && r.seconds >= 0.0) {
            return Err(Error::Parse(format!("invalid wall-clock time {}", r.seconds)));
        }
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn nonempty<T>(v: Vec<T>, text: &str) -> Result<Vec<T>> {
    if v.is_empty() {
        return Err(Error::Parse(format!("empty list {text:?}")));
    }
    Ok(v)
}

/// `"5,8,10"` → `[5, 8, 10]`.
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    let v = split_list(text)
        .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    nonempty(v, text)
}

/// `"0.01, 0.1, 1"` → `[0.01, 0.1, 1.0]`; values must be finite and `≥ 0`.
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    let v = split_list(text)
        .map(|s| match s.parse::<f64>() {
            Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
            Ok(x) => Err(Error::Parse(format!("{x} is not a finite nonnegative number"))),
            Err(e) => Err(Error::Parse(format!("{s:?}: {e}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    nonempty(v, text)
}

/// `"local,vertex"` → `[Local, Vertex]`, duplicates dropped, order kept.
pub fn parse_method_list(text: &str) -> Result<Vec<Method>> {
    let mut out = Vec::new();
    for s in split_list(text) {
        let m: Method = s.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    nonempty(out, text)
}
