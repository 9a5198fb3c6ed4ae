mod oracle;

use anticode_core::matrix::BinaryMatrix;
use anticode_core::search::enumerate_configs;
use anticode_core::{
    bregman_bound, canonical_form, decompose_components, direct_sum, minor, permanent, BandConfig, EngineKind,
    IntervalMatrix, PermanentValue,
};
use oracle::{band_config, brute_permanent, factorial, interval_matrix};
use proptest::prelude::*;

fn per(m: &IntervalMatrix) -> PermanentValue {
    permanent(m, EngineKind::Auto).unwrap()
}

proptest! {
    #[test]
    fn left_endpoints_recover_x(cfg in band_config(12)) {
        let m = cfg.to_interval_matrix();
        let x: Vec<usize> = m.rows().iter().map(|r| r.unwrap().lo).collect();
        prop_assert_eq!(&x[..], cfg.x());
        prop_assert!(m.rows().iter().all(|r| r.unwrap().len() == cfg.d()));
        prop_assert_eq!(m.as_band_config(cfg.d()), Some(cfg));
    }

    #[test]
    fn minors_stay_interval_matrices(m in interval_matrix(9), i in 1usize..=9, j in 1usize..=9) {
        let n = m.order();
        prop_assume!(i <= n && j <= n);
        let sub = minor(&m, i, j).unwrap();
        prop_assert_eq!(sub.order(), n - 1);
        // revalidating through the checked constructor catches broken invariants
        prop_assert!(IntervalMatrix::new(n - 1, sub.rows().to_vec()).is_ok());
        // entries are those of m with row i and column j removed
        for r in 1..n {
            for c in 1..n {
                let (sr, sc) = (if r < i { r } else { r + 1 }, if c < j { c } else { c + 1 });
                prop_assert_eq!(sub.get(r, c), m.get(sr, sc));
            }
        }
    }

    #[test]
    fn direct_sum_multiplies(a in interval_matrix(6), b in interval_matrix(6)) {
        let s = direct_sum(&a, &b).unwrap();
        prop_assert_eq!(s.order(), a.order() + b.order());
        prop_assert_eq!(per(&s), per(&a) * per(&b));
    }

    #[test]
    fn components_multiply_to_whole(m in interval_matrix(8)) {
        let dec = decompose_components(&m);
        prop_assert_eq!(dec.orders.iter().sum::<usize>(), m.order());
        let product: PermanentValue = dec.components.iter().map(per).product();
        prop_assert_eq!(product, PermanentValue::from(brute_permanent(&m)));
    }

    #[test]
    fn json_round_trips(m in interval_matrix(8), cfg in band_config(8)) {
        let text = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntervalMatrix>(&text).unwrap(), m.clone());
        let dense = m.to_dense();
        let text = serde_json::to_string(&dense).unwrap();
        prop_assert_eq!(serde_json::from_str::<anticode_core::DenseBinaryMatrix>(&text).unwrap(), dense);
        let text = serde_json::to_string(&cfg).unwrap();
        prop_assert_eq!(serde_json::from_str::<BandConfig>(&text).unwrap(), cfg);
    }

    #[test]
    fn canonical_form_is_invariant_under_row_order_and_rotation(cfg in band_config(9), seed in any::<u64>()) {
        let mut x = cfg.x().to_vec();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..x.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            x.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = BandConfig::new(cfg.n(), cfg.d(), x).unwrap();
        let canon = canonical_form(&cfg);
        prop_assert_eq!(canonical_form(&shuffled), canon.clone());
        prop_assert_eq!(canonical_form(&cfg.reflected()), canon.clone());
        prop_assert!(canon.is_sorted());
    }
}

#[test]
fn canonical_form_is_idempotent_and_preserves_permanent() {
    for n in 1..=7 {
        for d in 1..=n {
            for cfg in enumerate_configs(n, d).unwrap() {
                let canon = canonical_form(&cfg);
                assert_eq!(canonical_form(&canon), canon);
                assert_eq!(
                    per(&canon.to_interval_matrix()),
                    per(&cfg.to_interval_matrix()),
                    "{cfg:?}"
                );
            }
        }
    }
}

#[test]
fn reflection_is_the_rotated_matrix() {
    for cfg in enumerate_configs(6, 3).unwrap() {
        let rotated = cfg.to_interval_matrix().rotated();
        assert_eq!(rotated, cfg.reflected().to_interval_matrix());
    }
}

#[test]
fn bregman_bound_holds_with_equality_only_on_block_sums() {
    for n in 1..=8 {
        for d in 1..=n {
            for cfg in enumerate_configs(n, d).unwrap() {
                let m = cfg.to_interval_matrix();
                let value = per(&m);
                let bound = bregman_bound(&m);
                // independent log-domain bound: n/d · ln d!
                let expected = n as f64 / d as f64 * (1..=d).map(|k| (k as f64).ln()).sum::<f64>();
                assert!((bound.log_bound - expected).abs() < 1e-9);
                assert!(value.ln() <= bound.log_bound + 1e-9, "{cfg:?}");
                let block_sum = n % d == 0 && canonical_form(&cfg) == BandConfig::full_blocks(n / d, d).unwrap();
                let equal = n % d == 0 && *value.as_biguint() == factorial(d as u64).pow((n / d) as u32);
                assert_eq!(equal, block_sum, "{cfg:?}");
                assert_eq!(bound.exact.as_ref() == Some(&value), block_sum, "{cfg:?}");
            }
        }
    }
}

#[test]
fn empty_rows_and_order_zero() {
    let m = IntervalMatrix::from_pairs(2, &[(1, 2), (1, 1)]).unwrap();
    let clipped = minor(&m, 1, 1).unwrap();
    assert!(clipped.has_empty_row());
    assert!(per(&clipped).is_zero());
    assert_eq!(per(&IntervalMatrix::empty()), PermanentValue::one());
    assert_eq!(bregman_bound(&clipped).exact, Some(PermanentValue::zero()));
}
