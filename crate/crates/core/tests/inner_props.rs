mod common;

use proptest::prelude::*;

use common::{scale, sym_interval};
use interval_spectra::eig::sym_eigenvalues;
use interval_spectra::harness::sharpness::sharpness;
use interval_spectra::harness::{run_inner, InnerOptions, Method};
use interval_spectra::local::local_inner;
use interval_spectra::outer::{outer_bounds, tighten_outer};
use interval_spectra::submatrix::{
    certify_exact, submatrix_enum, submatrix_inner, Mode, SearchConfig, SubmatrixOptions,
};
use interval_spectra::vertex::{vertex_enum_bounds, DEFAULT_VERTEX_CAP};
use interval_spectra::{BandSet, Side};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn local_witnesses_and_traces(a in sym_interval(6, 1.0)) {
        let r = local_inner(&a).unwrap();
        prop_assert!(r.bands.is_ordered());
        for (half, side) in [(&r.upper, Side::Upper), (&r.lower, Side::Lower)] {
            for (i, w) in half.witnesses.iter().enumerate() {
                prop_assert!(a.contains(w, 1e-12));
                let ev = sym_eigenvalues(w).unwrap()[i];
                prop_assert!((ev - half.values[i]).abs() <= 1e-9 * scale(w));
                prop_assert_eq!(half.values[i], r.bands.endpoint(i, side));
            }
            for t in &half.trace {
                prop_assert!(t.windows(2).all(|w| side.improves(w[1], w[0])));
            }
        }
    }

    #[test]
    fn vertex_dominates_local(a in sym_interval(6, 1.0)) {
        let local = local_inner(&a).unwrap().bands;
        let vertex = vertex_enum_bounds(&a, DEFAULT_VERTEX_CAP).unwrap().bands;
        prop_assert!(local.is_within(&vertex, 0.0));
        let n = a.n();
        prop_assert!(vertex.exact_hi[0] && vertex.exact_lo[n - 1]);
    }

    #[test]
    fn extremes_bound_samples(a in sym_interval(5, 1.0), seed in any::<u64>()) {
        let v = vertex_enum_bounds(&a, DEFAULT_VERTEX_CAP).unwrap().bands;
        let n = a.n();
        for k in 0..200 {
            let ev = sym_eigenvalues(&a.sample_member(seed.wrapping_add(k))).unwrap();
            prop_assert!(ev[0] <= v.bands[0].hi() + 1e-9);
            prop_assert!(ev[n - 1] >= v.bands[n - 1].lo() - 1e-9);
        }
    }

    #[test]
    fn submatrix_witnesses_and_dominance(a in sym_interval(4, 1.0)) {
        let n = a.n();
        let vertex = vertex_enum_bounds(&a, DEFAULT_VERTEX_CAP).unwrap().bands;
        let outer = tighten_outer(&outer_bounds(&a).unwrap(), &vertex).unwrap();
        let r = submatrix_inner(&a, Some(&outer), &SubmatrixOptions::default()).unwrap();
        prop_assert!(vertex.is_within(&r.bands, 0.0));
        prop_assert!(r.bands.is_within(&r.outer, 1e-9 * (1.0 + a.mid().amax())));
        for p in 0..n {
            let (u, l) = (&r.upper_witnesses[p], &r.lower_witnesses[p]);
            prop_assert!(a.contains(u, 1e-12) && a.contains(l, 1e-12));
            let tol = 1e-9 * scale(u);
            prop_assert!(sym_eigenvalues(u).unwrap()[p] >= r.bands.bands[p].hi() - tol);
            prop_assert!(sym_eigenvalues(l).unwrap()[p] <= r.bands.bands[p].lo() + tol);
        }
        let s = [sharpness(&vertex, &r.outer).unwrap(), sharpness(&r.bands, &r.outer).unwrap()];
        prop_assert!(s.iter().all(|x| (0.0..=1.0).contains(x)) && s[1] <= s[0]);
    }

    #[test]
    fn modes_agree(a in sym_interval(6, 1.5)) {
        let outer = outer_bounds(&a).unwrap();
        let local = local_inner(&a).unwrap().bands;
        for side in Side::BOTH {
            for p in 0..a.n() {
                let start = local.endpoint(p, side);
                let run = |mode| submatrix_enum(&a, &outer, p, start, side, SearchConfig { mode, ..SearchConfig::default() }).unwrap();
                let (d, b) = (run(Mode::Direct), run(Mode::BranchBound));
                prop_assert_eq!(d.value.to_bits(), b.value.to_bits());
                prop_assert!(b.stats.nodes <= d.stats.nodes);
            }
        }
    }

    #[test]
    fn exact_flags_follow_gaps(lo in prop::collection::vec(-10.0..10.0f64, 1..6), w in prop::collection::vec(0.0..5.0f64, 6)) {
        let mut lo = lo;
        lo.sort_by(|a, b| b.total_cmp(a));
        let hi: Vec<f64> = lo.iter().zip(&w).map(|(l, w)| l + w).collect();
        let mut hi_sorted = hi.clone();
        hi_sorted.sort_by(|a, b| b.total_cmp(a));
        let outer = BandSet::from_endpoints(&lo, &hi_sorted).unwrap();
        let n = outer.len();
        let (exact_lo, exact_hi) = certify_exact(&outer, &vec![true; n], &vec![true; n], &BandSet::new(Vec::new()));
        for p in 0..n {
            prop_assert_eq!(exact_hi[p], p == 0 || outer.bands[p].hi() < outer.bands[p - 1].lo());
            prop_assert_eq!(exact_lo[p], p + 1 == n || outer.bands[p].lo() > outer.bands[p + 1].hi());
        }
    }

    #[test]
    fn methods_through_harness(a in sym_interval(4, 1.0)) {
        let mut prev: Option<BandSet> = None;
        for m in Method::ALL {
            let r = run_inner(&a, &InnerOptions::new(m)).unwrap();
            if let Some(p) = &prev {
                prop_assert!(p.is_within(&r.bands, 0.0), "{} not dominated", m);
            }
            prev = Some(r.bands);
        }
    }
}
