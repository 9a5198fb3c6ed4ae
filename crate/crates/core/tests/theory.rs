mod oracle;

use anticode_core::search::enumerate_configs;
use anticode_core::theory::{
    c_ratio, conjecture_band_config, conjecture_config, conjecture_size_formula, d_ratio, f_power,
    factorial_inequality_holds, factorial_inequality_margin, max_permanent_formula, optimal_config, optimal_family,
    push_block, run_bounds, wanless_b, wanless_margin, PushDirection,
};
use anticode_core::verify::{self, Scope};
use anticode_core::{minor, permanent, BandConfig, EngineKind, PermanentValue};
use oracle::{binomial, brute_permanent, factorial};

fn band(n: usize, d: usize, x: &[usize]) -> BandConfig {
    BandConfig::new(n, d, x.to_vec()).unwrap()
}

fn per(cfg: &BandConfig) -> PermanentValue {
    permanent(&cfg.to_interval_matrix(), EngineKind::Auto).unwrap()
}

#[test]
fn run_bounds_and_pushes() {
    assert_eq!(run_bounds(&band(5, 3, &[1, 1, 1, 3, 3]), 2).unwrap(), (3, 1));
    assert_eq!(run_bounds(&band(5, 3, &[1, 1, 2, 3, 3]), 3).unwrap(), (3, 3));
    assert_eq!(run_bounds(&band(5, 3, &[1, 1, 1, 3, 3]), 5).unwrap(), (5, 4));
    let c = band(5, 3, &[1, 1, 2, 3, 3]);
    assert_eq!(
        push_block(&c, 3, PushDirection::Right).unwrap(),
        band(5, 3, &[1, 1, 3, 3, 3])
    );
    assert_eq!(
        push_block(&c, 3, PushDirection::Left).unwrap(),
        band(5, 3, &[1, 1, 1, 3, 3])
    );
    assert!(push_block(&band(5, 3, &[1, 1, 3, 3, 3]), 5, PushDirection::Right).is_err());
    assert!(run_bounds(&band(3, 2, &[2, 1, 1]), 1).is_err());
    assert!(run_bounds(&c, 6).is_err());
}

/// The expansion identity, written directly with minors.
#[test]
fn push_identity_by_hand() {
    let c = band(5, 3, &[1, 1, 2, 3, 3]);
    let (last, _) = run_bounds(&c, 3).unwrap();
    let m = c.to_interval_matrix();
    let right = per(&push_block(&c, 3, PushDirection::Right).unwrap());
    let gain = permanent(&minor(&m, last, 2 + 3).unwrap(), EngineKind::Naive).unwrap();
    let loss = permanent(&minor(&m, last, 2).unwrap(), EngineKind::Naive).unwrap();
    assert_eq!(right + loss, per(&c) + gain);
}

#[test]
fn band_statements_up_to_order_eight() {
    for outcome in [
        verify::push_identity(8).unwrap(),
        verify::push_dominance(8, Scope::LongBlocks).unwrap(),
        verify::push_chain(8, Scope::LongBlocks).unwrap(),
        verify::minor_monotonicity(8, Scope::LongBlocks).unwrap(),
        verify::column_nesting(8, Scope::LongBlocks).unwrap(),
    ] {
        assert!(outcome.passed(), "{outcome:?}");
        assert!(outcome.cases > 0);
    }
}

#[test]
fn short_blocks_violate_nesting() {
    // n = 5, d = 2, r = 3: column 2 holds rows {1, 2}, column 3 rows {2, 3}
    let cfg = band(5, 2, &[1, 2, 3, 4, 4]);
    assert_eq!(cfg.column_rows(2), 0b011);
    assert_eq!(cfg.column_rows(3), 0b110);
}

#[test]
fn closed_form_examples() {
    assert_eq!(optimal_config(5, 3).unwrap().x(), &[1, 1, 3, 3, 3]);
    assert_eq!(optimal_config(4, 3).unwrap().x(), &[1, 1, 2, 2]);
    assert_eq!(optimal_config(3, 3).unwrap().x(), &[1, 1, 1]);
    assert_eq!(optimal_family(4, 3).unwrap(), vec![band(4, 3, &[1, 1, 2, 2])]);
    assert_eq!(
        optimal_family(5, 3).unwrap(),
        vec![
            band(5, 3, &[1, 1, 1, 3, 3]),
            band(5, 3, &[1, 1, 2, 3, 3]),
            band(5, 3, &[1, 1, 3, 3, 3])
        ]
    );
    assert_eq!(optimal_family(2, 2).unwrap(), vec![band(2, 2, &[1, 1])]);
    assert_eq!(max_permanent_formula(5, 3).unwrap(), 12u64);
    assert_eq!(max_permanent_formula(4, 3).unwrap(), 8u64);
    for n in 1..=10 {
        assert_eq!(*max_permanent_formula(n, n).unwrap().as_biguint(), factorial(n as u64));
    }
    assert!(max_permanent_formula(5, 2).is_err());
    assert!(optimal_config(7, 3).is_err());
}

#[test]
fn family_members_attain_the_formula() {
    for n in 1..=10 {
        for d in n / 2 + 1..=n {
            let r = (n - d) as u64;
            let expected = binomial(d as u64 - r, (d as u64 - r) / 2)
                * factorial(n as u64 / 2)
                * factorial((n as u64).div_ceil(2));
            let formula = max_permanent_formula(n, d).unwrap();
            assert_eq!(*formula.as_biguint(), expected, "n = {n}, d = {d}");
            for cfg in optimal_family(n, d).unwrap() {
                assert_eq!(per(&cfg), formula, "{cfg:?}");
            }
        }
    }
}

#[test]
fn formula_matches_brute_force_maximum_on_small_orders() {
    for n in 2..=7 {
        for d in n / 2 + 1..=n {
            let best = enumerate_configs(n, d)
                .unwrap()
                .map(|c| brute_permanent(&c.to_interval_matrix()))
                .max()
                .unwrap();
            assert_eq!(max_permanent_formula(n, d).unwrap(), best, "n = {n}, d = {d}");
        }
    }
}

#[test]
fn conjecture_matrix_matches_its_formula() {
    assert_eq!(conjecture_size_formula(5, 2).unwrap(), 4u64);
    assert_eq!(conjecture_size_formula(6, 2).unwrap(), 8u64);
    assert_eq!(conjecture_size_formula(7, 3).unwrap(), 48u64);
    for n in 1..=12 {
        for d in 1..=n.min(4) {
            let m = conjecture_config(n, d).unwrap();
            let formula = conjecture_size_formula(n, d).unwrap();
            assert_eq!(permanent(&m, EngineKind::Auto).unwrap(), formula, "n = {n}, d = {d}");
            assert_eq!(conjecture_band_config(n, d).unwrap().to_interval_matrix(), m);
            assert!(m.rows().iter().all(|r| r.unwrap().len() == d));
        }
    }
}

#[test]
fn wanless_functions() {
    assert!((f_power(3, 3.0).unwrap() - 6.0).abs() < 1e-12);
    assert!((d_ratio(2).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert!((c_ratio(3).unwrap() - 6f64.cbrt() / 2.0).abs() < 1e-12);
    // B(k, v) by its defining formula, with D and C from plain factorials
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    let dd = |k: u32| fact(k).powf(1.0 / f64::from(k)) / fact(k - 1).powf(1.0 / f64::from(k - 1).max(1.0));
    let b = |k: u32, v: u32| {
        let c = dd(k) / dd(k - 1);
        let (k, v) = (f64::from(k), f64::from(v));
        c.powf(v) * ((k - v).powi(2) + 2.0 * v * (k - v) * dd(k as u32 - 1) + v * (v - 1.0) * dd(k as u32 - 1).powi(2))
    };
    for k in 3..=12u32 {
        for v in 1..k {
            let ours = wanless_b(k as usize, v as usize).unwrap();
            assert!((ours - b(k, v)).abs() < 1e-9, "k = {k}, v = {v}: {ours} vs {}", b(k, v));
        }
    }
    assert!((wanless_b(3, 1).unwrap() - 8.774).abs() < 1e-3);
    assert!((wanless_b(3, 2).unwrap() - 8.80).abs() < 1e-2);
    assert!(wanless_b(2, 1).is_err());
    assert!(wanless_b(5, 5).is_err());
}

#[test]
fn wanless_margins_are_positive() {
    let m3 = wanless_margin(3).unwrap();
    assert_eq!(m3.margins.len(), 2);
    assert!(m3.min_margin > 0.1);
    for k in 3..=12 {
        let m = wanless_margin(k).unwrap();
        assert_eq!(m.margins.len(), k - 1);
        assert_eq!(m.min_margin, m.margins.iter().copied().fold(f64::INFINITY, f64::min));
        assert!(m.min_margin > 1e-6, "k = {k}");
    }
}

#[test]
fn factorial_inequality() {
    let root = |a: u32| (1..=a).map(f64::from).product::<f64>().powf(1.0 / f64::from(a));
    assert!((root(2) * root(4) - 3.1302).abs() < 1e-4);
    assert!((root(3) * root(3) - 3.3019).abs() < 1e-4);
    assert!(factorial_inequality_holds(2, 4).unwrap());
    assert!(factorial_inequality_holds(3, 5).unwrap());
    assert!(factorial_inequality_holds(2, 3).is_err());
    for a in 2..=28usize {
        for b in a + 2..=30 {
            let direct = root(a as u32 + 1) * root(b as u32 - 1) - root(a as u32) * root(b as u32);
            assert!(direct > 0.0);
            assert!(factorial_inequality_margin(a, b).unwrap() > 0.0);
            assert!(factorial_inequality_holds(a, b).unwrap());
        }
    }
}
