//! Monte Carlo inner bands from sampled members.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::band::BandSet;
use crate::eig::sym_eigenvalues;
use crate::error::Result;
use crate::symmetric::SymmetricIntervalMatrix;

/// Samples per independent random stream.
pub const CHUNK: u64 = 1024;

/// Bandwise min/max of `λ_i` over `samples` random members.
///
/// Sample `k` always comes from stream `k / CHUNK` of the seed, so the
/// result for `K` samples is a prefix of the run with more samples and the
/// bands can only grow with `samples`. Every sample is a member, so the
/// bands lie inside the exact eigenvalue sets.
pub fn monte_carlo_inner(a: &SymmetricIntervalMatrix, samples: u64, seed: u64) -> Result<BandSet> {
    let n = a.n();
    let centre = sym_eigenvalues(a.mid())?;
    let chunks = samples.div_ceil(CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut lo = centre.clone();
            let mut hi = centre.clone();
            for _ in 0..count {
                let ev = sym_eigenvalues(&a.sample_member_with(&mut rng))?;
                for i in 0..n {
                    lo[i] = lo[i].min(ev[i]);
                    hi[i] = hi[i].max(ev[i]);
                }
            }
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut lo = centre.clone();
    let mut hi = centre;
    for (plo, phi) in parts {
        for i in 0..n {
            lo[i] = lo[i].min(plo[i]);
            hi[i] = hi[i].max(phi[i]);
        }
    }
    BandSet::from_endpoints(&lo, &hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::small_3x3;

    #[test]
    fn point_matrix_gives_centre() {
        let a = SymmetricIntervalMatrix::point(small_3x3().mid().clone()).unwrap();
        let b = monte_carlo_inner(&a, 100, 1).unwrap();
        let c = sym_eigenvalues(a.mid()).unwrap();
        for (band, l) in b.bands.iter().zip(c) {
            assert_eq!((band.lo(), band.hi()), (l, l));
        }
    }

    #[test]
    fn more_samples_never_shrink() {
        let a = small_3x3();
        let small = monte_carlo_inner(&a, 1500, 7).unwrap();
        let large = monte_carlo_inner(&a, 5000, 7).unwrap();
        assert!(small.is_within(&large, 0.0));
    }
}
