//! Seeded random instances: midpoints uniform in `[−20, 20]`, radii uniform
//! in `[0, R]`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interval::IntervalMatrix;
use crate::symmetric::{gram_product, SymmetricIntervalMatrix};

/// Half-width of the midpoint range.
pub const MID_RANGE: f64 = 20.0;

/// A random `rows × cols` interval matrix.
pub fn random_interval_matrix(rows: usize, cols: usize, radius: f64, seed: u64) -> IntervalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mid = DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-MID_RANGE..=MID_RANGE));
    let rad = DMatrix::from_fn(rows, cols, |_, _| if radius > 0.0 { rng.gen_range(0.0..=radius) } else { 0.0 });
    IntervalMatrix::from_mid_rad(mid, rad).expect("finite random entries")
}

/// `[A]ᵀ[A]` for a random `n × n` interval matrix `[A]`.
pub fn random_instance(n: usize, radius: f64, seed: u64) -> SymmetricIntervalMatrix {
    gram_product(&random_interval_matrix(n, n, radius, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::sym_eigenvalues;

    #[test]
    fn deterministic() {
        assert_eq!(random_instance(5, 0.1, 3), random_instance(5, 0.1, 3));
        assert_ne!(random_instance(5, 0.1, 3), random_instance(5, 0.1, 4));
    }

    #[test]
    fn zero_radius_is_point_gram() {
        let a = random_instance(4, 0.0, 9);
        assert!(a.is_point());
        let m = random_interval_matrix(4, 4, 0.0, 9);
        let g = m.mid().transpose() * m.mid();
        assert!((a.mid() - &g).amax() <= 1e-9 * g.amax());
        assert!(sym_eigenvalues(a.mid()).unwrap().iter().all(|&l| l >= -1e-9 * g.amax()));
    }

    #[test]
    fn entries_in_range() {
        let m = random_interval_matrix(3, 6, 0.5, 1);
        assert!(m.mid().iter().all(|v| v.abs() <= MID_RANGE));
        assert!(m.rad().iter().all(|&r| (0.0..=0.5).contains(&r)));
    }
}
