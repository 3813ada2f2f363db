//! Sharpness and timing tables over seeded random instances.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::band::BandSet;
use crate::error::Result;
use crate::harness::random::{random_instance, random_interval_matrix};
use crate::harness::sharpness::sharpness;
use crate::harness::Method;
use crate::local::local_inner;
use crate::outer::{outer_bounds, tighten_outer};
use crate::submatrix::{submatrix_inner, Mode, SubmatrixOptions, DEFAULT_SUBMATRIX_CAP};
use crate::symmetric::{jordan_wielandt, SymmetricIntervalMatrix};
use crate::vertex::{vertex_enum_bounds, DEFAULT_VERTEX_CAP};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n: Vec<usize>,
    pub radius: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Row counts `m`; when set, the cells are singular value problems on
    /// random `m × n` matrices instead of eigenvalue problems on `AᵀA`.
    pub rows: Option<Vec<usize>>,
    pub vertex_cap: usize,
    pub submatrix_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n: vec![5],
            radius: vec![0.1],
            trials: 1,
            seed: 0,
            methods: Method::ALL.to_vec(),
            rows: None,
            vertex_cap: DEFAULT_VERTEX_CAP,
            submatrix_cap: DEFAULT_SUBMATRIX_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub sharpness: f64,
    pub seconds: f64,
}

/// One table row; `trial == None` marks the mean over trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    pub radius: f64,
    pub trial: Option<usize>,
    pub local: Option<Cell>,
    pub vertex: Option<Cell>,
    pub submatrix: Option<Cell>,
}

impl BenchRow {
    pub fn cell(&self, method: Method) -> Option<Cell> {
        match method {
            Method::Local => self.local,
            Method::Vertex => self.vertex,
            Method::Submatrix => self.submatrix,
        }
    }

    fn cell_mut(&mut self, method: Method) -> &mut Option<Cell> {
        match method {
            Method::Local => &mut self.local,
            Method::Vertex => &mut self.vertex,
            Method::Submatrix => &mut self.submatrix,
        }
    }
}

/// SplitMix64 finaliser, used to derive independent per-cell seeds.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for one cell, depending only on the base seed and the cell's own
/// parameters so that adding sizes or radii leaves other cells unchanged.
pub fn cell_seed(seed: u64, m: usize, n: usize, radius: f64, trial: usize) -> u64 {
    [m as u64, n as u64, radius.to_bits(), trial as u64]
        .into_iter()
        .fold(mix(seed), |h, v| mix(h ^ v))
}

struct Problem {
    a: SymmetricIntervalMatrix,
    /// Number of leading bands that are reported (`q` for singular values).
    q: usize,
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64()))
}

fn run_cell(cfg: &BenchConfig, m: Option<usize>, n: usize, radius: f64, trial: usize) -> Result<BenchRow> {
    let seed = cell_seed(cfg.seed, m.unwrap_or(0), n, radius, trial);
    let problem = match m {
        None => Problem { a: random_instance(n, radius, seed), q: n },
        Some(m) => Problem { a: jordan_wielandt(&random_interval_matrix(m, n, radius, seed)), q: m.min(n) },
    };
    let a = &problem.a;
    let size = a.n();

    let mut outer = outer_bounds(a)?;
    let mut vertex = None;
    if size <= cfg.vertex_cap {
        let (v, secs) = timed(|| vertex_enum_bounds(a, cfg.vertex_cap))?;
        outer = tighten_outer(&outer, &v.bands)?;
        vertex = Some((v.bands, secs));
    }
    let outer_q = outer.truncated(problem.q);
    let score = |bands: &BandSet, secs: f64| -> Result<Cell> {
        Ok(Cell { sharpness: sharpness(&bands.truncated(problem.q), &outer_q)?, seconds: secs })
    };

    let mut row = BenchRow { m, n, radius, trial: Some(trial), local: None, vertex: None, submatrix: None };
    for &method in &cfg.methods {
        let cell = match method {
            Method::Local => {
                let (r, secs) = timed(|| local_inner(a))?;
                Some(score(&r.bands, secs)?)
            }
            Method::Vertex => match &vertex {
                Some((bands, secs)) => Some(score(bands, *secs)?),
                None => None,
            },
            Method::Submatrix => {
                if size > cfg.submatrix_cap {
                    None
                } else {
                    let opts = SubmatrixOptions {
                        mode: Mode::BranchBound,
                        cap: cfg.submatrix_cap,
                        indices: Some((0..problem.q).collect()),
                        ..SubmatrixOptions::default()
                    };
                    let (r, secs) = timed(|| submatrix_inner(a, Some(&outer), &opts))?;
                    Some(score(&r.bands, secs)?)
                }
            }
        };
        *row.cell_mut(method) = cell;
    }
    Ok(row)
}

fn mean_row(rows: &[BenchRow]) -> BenchRow {
    let first = &rows[0];
    let mut out = BenchRow { trial: None, local: None, vertex: None, submatrix: None, ..first.clone() };
    for method in Method::ALL {
        let cells: Vec<Cell> = rows.iter().filter_map(|r| r.cell(method)).collect();
        if !cells.is_empty() {
            let k = cells.len() as f64;
            *out.cell_mut(method) = Some(Cell {
                sharpness: cells.iter().map(|c| c.sharpness).sum::<f64>() / k,
                seconds: cells.iter().map(|c| c.seconds).sum::<f64>() / k,
            });
        }
    }
    out
}

/// Runs every `(m, n, R, trial)` cell in parallel and returns per-trial
/// rows followed by a mean row for each `(m, n, R)`, in input order.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let ms: Vec<Option<usize>> = match &cfg.rows {
        Some(rows) => rows.iter().map(|&m| Some(m)).collect(),
        None => vec![None],
    };
    let mut groups = Vec::new();
    for &m in &ms {
        for &n in &cfg.n {
            for &r in &cfg.radius {
                groups.push((m, n, r));
            }
        }
    }
    let trials = cfg.trials.max(1);
    let cells: Vec<(usize, usize)> = (0..groups.len()).flat_map(|g| (0..trials).map(move |t| (g, t))).collect();
    let rows = cells
        .par_iter()
        .map(|&(g, t)| {
            let (m, n, r) = groups[g];
            run_cell(cfg, m, n, r, t)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::with_capacity(rows.len() + groups.len());
    for chunk in rows.chunks(trials) {
        out.extend_from_slice(chunk);
        out.push(mean_row(chunk));
    }
    Ok(out)
}

/// Fixed-width table with sharpness to 4 decimals; empty cells for methods
/// that were not run.
pub fn format_table(rows: &[BenchRow]) -> String {
    let singular = rows.iter().any(|r| r.m.is_some());
    let mut s = String::new();
    if singular {
        let _ = write!(s, "{:>4} ", "m");
    }
    let _ = write!(s, "{:>4} {:>8} {:>6}", "n", "R", "trial");
    for m in Method::ALL {
        let _ = write!(s, " | {:>9} {:>10}", format!("{m}"), "time");
    }
    s.push('\n');
    for r in rows {
        if singular {
            let _ = write!(s, "{:>4} ", r.m.map(|m| m.to_string()).unwrap_or_default());
        }
        let trial = r.trial.map(|t| t.to_string()).unwrap_or_else(|| "mean".into());
        let _ = write!(s, "{:>4} {:>8} {:>6}", r.n, r.radius, trial);
        for m in Method::ALL {
            match r.cell(m) {
                Some(c) => {
                    let _ = write!(s, " | {:>9.4} {:>8.3} s", c.sharpness, c.seconds);
                }
                None => {
                    let _ = write!(s, " | {:>9} {:>10}", "", "");
                }
            }
        }
        s.push('\n');
    }
    s
}
