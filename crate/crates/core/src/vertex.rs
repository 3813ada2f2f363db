//! Exhaustive vertex enumeration over the `2^{n−1}` sign vectors with
//! `z_1 = +1`.
//!
//! The enumeration walks the sign vectors in Gray-code order so that
//! consecutive vertex matrices differ in a single row and column. The range
//! is cut into fixed chunks that are evaluated in parallel and reduced in
//! chunk order, which keeps the output bit-stable across thread counts.

use rayon::prelude::*;

use crate::band::{BandSet, Side};
use crate::eig::sym_eigenvalues;
use crate::error::{Error, Result};
use crate::symmetric::{SignVector, SymmetricIntervalMatrix};

/// Default dimension guard for vertex enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 25;

/// Upper bound on the number of chunks the sign range is split into.
const MAX_CHUNKS: u64 = 256;

#[derive(Clone, Debug)]
pub struct VertexResult {
    /// Inner bands; `exact_hi[0]` and `exact_lo[n-1]` are set.
    pub bands: BandSet,
    /// Sign vector attaining each upper endpoint; `None` means the midpoint.
    pub upper_witnesses: Vec<Option<SignVector>>,
    pub lower_witnesses: Vec<Option<SignVector>>,
    /// Vertex matrices evaluated per side.
    pub vertices: u64,
}

#[inline]
fn gray(g: u64) -> u64 {
    g ^ (g >> 1)
}

/// Best endpoints of one side over vertices `range`, with the Gray index of
/// the attaining vertex.
fn scan_chunk(
    a: &SymmetricIntervalMatrix,
    side: Side,
    range: std::ops::Range<u64>,
    best: &[f64],
) -> Result<(Vec<f64>, Vec<Option<u64>>)> {
    let n = a.n();
    let mut values = best.to_vec();
    let mut witness = vec![None; n];
    let start = SignVector::from_index(n, gray(range.start));
    let mut signs = start.signs().to_vec();
    let mut m = a.vertex_matrix(&start, side)?;
    for g in range.clone() {
        if g != range.start {
            // Gray codes g-1 and g differ in bit trailing_zeros(g).
            let k = g.trailing_zeros() as usize + 1;
            signs[k] = -signs[k];
            a.refresh_vertex_line(&signs, side, k, &mut m);
        }
        let spectrum = sym_eigenvalues(&m)?;
        for i in 0..n {
            if side.improves(spectrum[i], values[i]) {
                values[i] = spectrum[i];
                witness[i] = Some(gray(g));
            }
        }
    }
    Ok((values, witness))
}

/// Extremal `λ_i` over all vertex matrices of one side, starting from the
/// midpoint eigenvalues.
pub fn vertex_side(a: &SymmetricIntervalMatrix, side: Side) -> Result<(Vec<f64>, Vec<Option<SignVector>>)> {
    let n = a.n();
    let start = sym_eigenvalues(a.mid())?;
    if n == 0 {
        return Ok((start, Vec::new()));
    }
    let total = 1u64 << (n - 1);
    let chunks = total.min(MAX_CHUNKS);
    let per = total / chunks;
    let parts = (0..chunks)
        .into_par_iter()
        .map(|c| scan_chunk(a, side, c * per..(c + 1) * per, &start))
        .collect::<Result<Vec<_>>>()?;

    let mut values = start;
    let mut witness: Vec<Option<u64>> = vec![None; n];
    for (part_values, part_witness) in parts {
        for i in 0..n {
            if side.improves(part_values[i], values[i]) {
                values[i] = part_values[i];
                witness[i] = part_witness[i];
            }
        }
    }
    let witness = witness.into_iter().map(|w| w.map(|g| SignVector::from_index(n, g))).collect();
    Ok((values, witness))
}

/// Inner bands from all `2^{n−1}` vertex matrices on each side.
///
/// `μ̄_1` and `μ̲_n` from this enumeration are the exact extremal
/// eigenvalues of the whole set, and are flagged as such.
pub fn vertex_enum_bounds(a: &SymmetricIntervalMatrix, cap: usize) -> Result<VertexResult> {
    let n = a.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(VertexResult {
            bands: BandSet::new(Vec::new()),
            upper_witnesses: Vec::new(),
            lower_witnesses: Vec::new(),
            vertices: 0,
        });
    }
    let (upper, lower) = rayon::join(|| vertex_side(a, Side::Upper), || vertex_side(a, Side::Lower));
    let (upper, upper_witnesses) = upper?;
    let (lower, lower_witnesses) = lower?;
    let mut bands = BandSet::from_endpoints(&lower, &upper)?;
    bands.exact_hi[0] = true;
    bands.exact_lo[n - 1] = true;
    Ok(VertexResult { bands, upper_witnesses, lower_witnesses, vertices: 1u64 << (n - 1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::small_3x3;
    use crate::interval::Interval;

    /// Brute force over every `z ∈ {±1}^n`, without Gray codes or chunks.
    fn brute_force(a: &SymmetricIntervalMatrix, side: Side) -> Vec<f64> {
        let n = a.n();
        let mut best = sym_eigenvalues(a.mid()).unwrap();
        for mask in 0..(1u64 << n) {
            let z = SignVector::new((0..n).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect())
                .unwrap();
            let ev = sym_eigenvalues(&a.vertex_matrix(&z, side).unwrap()).unwrap();
            for i in 0..n {
                if side.improves(ev[i], best[i]) {
                    best[i] = ev[i];
                }
            }
        }
        best
    }

    #[test]
    fn scalar_interval() {
        let a = SymmetricIntervalMatrix::from_mid_rad(
            nalgebra::DMatrix::from_element(1, 1, 2.0),
            nalgebra::DMatrix::from_element(1, 1, 0.5),
        )
        .unwrap();
        let r = vertex_enum_bounds(&a, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.bands.bands[0], Interval::new(1.5, 2.5).unwrap());
    }

    #[test]
    fn small_fixture() {
        let r = vertex_enum_bounds(&small_3x3(), DEFAULT_VERTEX_CAP).unwrap();
        let want = [(3.7321, 6.7843), (0.0888, 0.3230), (-4.1072, -1.0)];
        for (b, (lo, hi)) in r.bands.bands.iter().zip(want) {
            assert!((b.lo() - lo).abs() < 5e-5 && (b.hi() - hi).abs() < 5e-5, "{b}");
        }
        assert!(r.bands.exact_hi[0] && r.bands.exact_lo[2]);
        assert!(!r.bands.exact_hi[1]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            vertex_enum_bounds(&small_3x3(), 2),
            Err(Error::CapExceeded { n: 3, cap: 2 })
        ));
    }

    #[test]
    fn gray_walk_matches_brute_force() {
        let a = crate::harness::random::random_instance(7, 0.5, 11);
        for side in Side::BOTH {
            let (values, witnesses) = vertex_side(&a, side).unwrap();
            assert_eq!(values, brute_force(&a, side));
            for (i, w) in witnesses.iter().enumerate() {
                if let Some(z) = w {
                    let ev = sym_eigenvalues(&a.vertex_matrix(z, side).unwrap()).unwrap();
                    assert_eq!(ev[i], values[i]);
                }
            }
        }
    }
}
