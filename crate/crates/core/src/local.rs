//! Local improvement: walk from the midpoint towards the vertex matrix picked
//! out by the sign pattern of the current eigenvector until the eigenvalue
//! stops improving.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::band::{BandSet, Side};
use crate::eig::{sym_eigen, sym_eigenvalues};
use crate::error::{Error, Result};
use crate::symmetric::{SignVector, SymmetricIntervalMatrix};

/// Relative improvement threshold: a step must move `λ_i` by more than
/// `1e-10·(1 + |λ_i|)` to count.
pub const IMPROVE_EPS: f64 = 1e-10;

/// One side (all upper or all lower endpoints) of a local search.
#[derive(Clone, Debug)]
pub struct LocalHalf {
    pub values: Vec<f64>,
    /// Vertex matrices evaluated per index.
    pub iterations: Vec<u64>,
    /// `witnesses[i]` is a member whose `i`-th eigenvalue is `values[i]`.
    pub witnesses: Vec<DMatrix<f64>>,
    /// The sequence of accepted values per index, starting at `λ_i(A_c)`.
    pub trace: Vec<Vec<f64>>,
}

#[derive(Clone, Debug)]
pub struct LocalResult {
    pub bands: BandSet,
    pub upper: LocalHalf,
    pub lower: LocalHalf,
}

struct Walk {
    value: f64,
    iterations: u64,
    witness: DMatrix<f64>,
    trace: Vec<f64>,
}

fn iteration_cap(n: usize) -> u64 {
    if n >= 63 {
        u64::MAX
    } else {
        1u64 << n
    }
}

fn walk(a: &SymmetricIntervalMatrix, i: usize, side: Side) -> Result<Walk> {
    let cap = iteration_cap(a.n());
    let mut current = a.mid().clone();
    let mut pairs = sym_eigen(&current)?;
    let mut best = pairs.values[i];
    let mut trace = vec![best];
    let mut iterations = 0u64;
    loop {
        if iterations >= cap {
            return Err(Error::IterationCap { index: i, cap });
        }
        iterations += 1;
        let z = SignVector::from_signs_of(&pairs.vector(i));
        let next = a.vertex_matrix(&z, side)?;
        let next_pairs = sym_eigen(&next)?;
        let value = next_pairs.values[i];
        let eps = IMPROVE_EPS * (1.0 + value.abs());
        let better = match side {
            Side::Upper => value > best + eps,
            Side::Lower => value < best - eps,
        };
        if !better {
            break;
        }
        best = value;
        trace.push(value);
        current = next;
        pairs = next_pairs;
    }
    Ok(Walk { value: best, iterations, witness: current, trace })
}

/// Runs the local search for every index on one side.
///
/// Afterwards the endpoints are made monotone in the index: if the witness
/// for index `i + 1` (upper side) has a larger `i`-th eigenvalue than the
/// one found for `i`, that value and witness are taken over. This keeps
/// `μ̄_i ≥ μ̄_{i+1}` and every endpoint is still attained by its witness.
pub fn local_bounds(a: &SymmetricIntervalMatrix, side: Side) -> Result<LocalHalf> {
    let n = a.n();
    let walks = (0..n)
        .into_par_iter()
        .map(|i| walk(a, i, side))
        .collect::<Result<Vec<_>>>()?;

    let mut values: Vec<f64> = walks.iter().map(|w| w.value).collect();
    let iterations = walks.iter().map(|w| w.iterations).collect();
    let trace = walks.iter().map(|w| w.trace.clone()).collect();
    let mut witnesses: Vec<DMatrix<f64>> = walks.into_iter().map(|w| w.witness).collect();

    repair_monotone(&mut values, &mut witnesses, side)?;
    Ok(LocalHalf { values, iterations, witnesses, trace })
}

/// Makes one side of inner endpoints monotone in the index using the stored
/// witnesses, so every endpoint stays attained by its witness.
pub(crate) fn repair_monotone(values: &mut [f64], witnesses: &mut [DMatrix<f64>], side: Side) -> Result<()> {
    let n = values.len();
    match side {
        Side::Upper => {
            for i in (0..n.saturating_sub(1)).rev() {
                let spectrum = sym_eigenvalues(&witnesses[i + 1])?;
                if spectrum[i] > values[i] {
                    values[i] = spectrum[i];
                    witnesses[i] = witnesses[i + 1].clone();
                }
            }
        }
        Side::Lower => {
            for i in 1..n {
                let spectrum = sym_eigenvalues(&witnesses[i - 1])?;
                if spectrum[i] < values[i] {
                    values[i] = spectrum[i];
                    witnesses[i] = witnesses[i - 1].clone();
                }
            }
        }
    }
    Ok(())
}

/// Both sides of the local search, assembled into inner bands.
pub fn local_inner(a: &SymmetricIntervalMatrix) -> Result<LocalResult> {
    let (upper, lower) = rayon::join(|| local_bounds(a, Side::Upper), || local_bounds(a, Side::Lower));
    let (upper, lower) = (upper?, lower?);
    let bands = BandSet::from_endpoints(&lower.values, &upper.values)?;
    Ok(LocalResult { bands, upper, lower })
}
