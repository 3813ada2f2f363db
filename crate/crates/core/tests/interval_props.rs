mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{interval_matrix, sym_interval};
use interval_spectra::eig::sym_eigenvalues;
use interval_spectra::{gram_product, interval_matvec, jordan_wielandt, IndexSet, IntervalMatrix, Side, SignVector};

fn sample(a: &IntervalMatrix, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let x = a.entry(i, j);
        x.lo() + (x.hi() - x.lo()) * rng.gen::<f64>()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertex_matrices_are_members(a in sym_interval(6, 2.0), bits in any::<u64>()) {
        let n = a.n();
        let z = SignVector::from_index(n, bits % (1u64 << (n - 1)));
        for side in Side::BOTH {
            let m = a.vertex_matrix(&z, side).unwrap();
            prop_assert!(a.contains(&m, 1e-12));
            prop_assert_eq!(&m, &a.vertex_matrix(&z.negated(), side).unwrap());
        }
    }

    #[test]
    fn matvec_encloses_samples(c in interval_matrix(3, 4, 1.0), y in prop::collection::vec(-2.0..2.0f64, 4), seed in any::<u64>()) {
        let enclosure = interval_matvec(&c, &y).unwrap();
        let yv = DMatrix::from_column_slice(4, 1, &y);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let cy = sample(&c, &mut rng) * &yv;
            for (k, iv) in enclosure.components.iter().enumerate() {
                prop_assert!(iv.is_subset_of(&interval_spectra::Interval::point(cy[k]).hull(iv), 0.0));
                prop_assert!(cy[k] >= iv.lo() - 1e-12 && cy[k] <= iv.hi() + 1e-12);
            }
        }
    }

    #[test]
    fn gram_product_encloses_members(a in interval_matrix(4, 3, 1.0), seed in any::<u64>()) {
        let g = gram_product(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let m = sample(&a, &mut rng);
            prop_assert!(g.contains(&(m.transpose() * &m), 1e-10));
        }
    }

    #[test]
    fn embedding_of_point_matrix(m in interval_matrix(3, 2, 0.0)) {
        let ev = sym_eigenvalues(jordan_wielandt(&m).mid()).unwrap();
        let mut sv: Vec<f64> = m.mid().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let mut want = sv.clone();
        want.push(0.0);
        want.extend(sv.iter().rev().map(|s| -s));
        for (got, want) in ev.iter().zip(&want) {
            prop_assert!((got - want).abs() < 1e-9, "{:?} vs {:?}", ev, want);
        }
    }

    #[test]
    fn bounds_round_trip(a in sym_interval(5, 3.0)) {
        let back = interval_spectra::SymmetricIntervalMatrix::from_bounds(&a.lower(), &a.upper()).unwrap();
        let tol = 4.0 * f64::EPSILON * (1.0 + a.mid().amax() + a.rad().amax());
        prop_assert!((back.mid() - a.mid()).amax() <= tol);
        prop_assert!((back.rad() - a.rad()).amax() <= tol);
    }

    #[test]
    fn decompose_then_assemble(a in sym_interval(5, 1.0), mask in any::<u32>()) {
        let n = a.n();
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!members.is_empty());
        let blocks = a.decompose(&IndexSet::new(members).unwrap()).unwrap();
        let rebuilt = blocks.assemble(blocks.b.mid(), blocks.c.mid(), blocks.d.mid());
        prop_assert_eq!(&rebuilt, a.mid());
    }

    #[test]
    fn samples_are_members(a in sym_interval(5, 1.0), seed in any::<u64>()) {
        let m = a.sample_member(seed);
        prop_assert!(a.contains(&m, 0.0));
        prop_assert_eq!(m, a.sample_member(seed));
    }
}
