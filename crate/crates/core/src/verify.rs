//! Exhaustive checkers for the structural identities and inequalities of
//! banded matrices. Each returns a [`CheckOutcome`] counting cases and
//! violations instead of panicking, so the CLI self-test can report them.
//!
//! The column-nesting, minor-monotonicity and push checks other than the
//! expansion identity only hold for long blocks (`n <= 2d`). They take a
//! [`Scope`] so callers can also run them outside that range and see the
//! counterexamples.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::matrix::{bregman_bound, canonical_form, minor, BandConfig, Interval, IntervalMatrix};
use crate::perm_space::{
    anticode_diameter, ball_size, linf_distance, materialize_anticode, max_code_bruteforce, Permutation,
};
use crate::permanent::{permanent, EngineKind};
use crate::search::{enumerate_configs, find_maximizers, SearchOptions};
use crate::theory::{factorial_inequality_margin, push_block, run_bounds, wanless_margin, PushDirection};
use crate::{factorial, PermanentValue, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            cases: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Memoized permanents of band configurations.
#[derive(Default)]
struct PerCache(HashMap<BandConfig, PermanentValue>);

impl PerCache {
    fn get(&mut self, cfg: &BandConfig) -> Result<PermanentValue> {
        if let Some(v) = self.0.get(cfg) {
            return Ok(v.clone());
        }
        let v = permanent(&cfg.to_interval_matrix(), EngineKind::Auto)?;
        self.0.insert(cfg.clone(), v.clone());
        Ok(v)
    }
}

fn minor_per(cfg: &BandConfig, row: usize, col: usize) -> Result<PermanentValue> {
    permanent(&minor(&cfg.to_interval_matrix(), row, col)?, EngineKind::Auto)
}

fn sorted_configs(n_max: usize) -> impl Iterator<Item = BandConfig> {
    (1..=n_max).flat_map(|n| (1..=n).flat_map(move |d| enumerate_configs(n, d).expect("valid range")))
}

fn long_blocks(cfg: &BandConfig) -> bool {
    cfg.n() <= 2 * cfg.d()
}

/// Which configurations a range-limited check visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Only `n <= 2d`, where the statements hold.
    LongBlocks,
    /// Every sorted configuration.
    All,
}

impl Scope {
    fn admits(self, cfg: &BandConfig) -> bool {
        self == Scope::All || long_blocks(cfg)
    }
}

/// Expanding along the moved row: a one-step push changes the permanent by
/// the difference of the two affected minors.
pub fn push_identity(n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("push expansion identity");
    let mut cache = PerCache::default();
    for cfg in sorted_configs(n_max) {
        let base = cache.get(&cfg)?;
        let d = cfg.d();
        for i in 1..=cfg.n() {
            let (last, first) = run_bounds(&cfg, i)?;
            let v = cfg.x()[i - 1];
            if let Ok(pushed) = push_block(&cfg, i, PushDirection::Right) {
                let lhs = cache.get(&pushed)? + minor_per(&cfg, last, v)?;
                let rhs = &base + &minor_per(&cfg, last, v + d)?;
                out.record(lhs == rhs, || format!("{:?} row {i} right", cfg.x()));
            }
            if let Ok(pushed) = push_block(&cfg, i, PushDirection::Left) {
                let lhs = cache.get(&pushed)? + minor_per(&cfg, first, v + d - 1)?;
                let rhs = &base + &minor_per(&cfg, first, v - 1)?;
                out.record(lhs == rhs, || format!("{:?} row {i} left", cfg.x()));
            }
        }
    }
    Ok(out)
}

/// For an interior block (`2 <= x_i <= r`) one of the two pushes does not
/// decrease the permanent.
pub fn push_dominance(n_max: usize, scope: Scope) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("push dominance");
    let mut cache = PerCache::default();
    for cfg in sorted_configs(n_max).filter(|c| scope.admits(c)) {
        let base = cache.get(&cfg)?;
        for i in 1..=cfg.n() {
            let v = cfg.x()[i - 1];
            if v < 2 || v > cfg.r() {
                continue;
            }
            let right = cache.get(&push_block(&cfg, i, PushDirection::Right)?)?;
            let left = cache.get(&push_block(&cfg, i, PushDirection::Left)?)?;
            out.record(base <= right.max(left), || format!("{:?} row {i}", cfg.x()));
        }
    }
    Ok(out)
}

/// Once a push does not decrease the permanent, pushing the same block again
/// does not decrease it either.
pub fn push_chain(n_max: usize, scope: Scope) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("push chain");
    let mut cache = PerCache::default();
    for cfg in sorted_configs(n_max).filter(|c| scope.admits(c)) {
        let base = cache.get(&cfg)?;
        let (n, r, x) = (cfg.n(), cfg.r(), cfg.x());
        for i in 1..=n {
            if i < n && x[i - 1] < x[i] && x[i] <= r {
                let once = push_block(&cfg, i, PushDirection::Right)?;
                let p1 = cache.get(&once)?;
                if base <= p1 {
                    let p2 = cache.get(&push_block(&once, i, PushDirection::Right)?)?;
                    out.record(p1 <= p2, || format!("{:?} row {i} right", x));
                }
            }
            if i > 1 && 2 <= x[i - 2] && x[i - 2] < x[i - 1] {
                let once = push_block(&cfg, i, PushDirection::Left)?;
                let p1 = cache.get(&once)?;
                if base <= p1 {
                    let p2 = cache.get(&push_block(&once, i, PushDirection::Left)?)?;
                    out.record(p1 <= p2, || format!("{:?} row {i} left", x));
                }
            }
        }
    }
    Ok(out)
}

/// Minors along a row: deleting an earlier column among the first `r` leaves
/// at least as large a permanent; among the last `r` columns the reverse.
pub fn minor_monotonicity(n_max: usize, scope: Scope) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("minor monotonicity");
    for cfg in sorted_configs(n_max).filter(|c| scope.admits(c)) {
        let (n, d, r) = (cfg.n(), cfg.d(), cfg.r());
        for i in 1..=n {
            let pers = (1..=n).map(|j| minor_per(&cfg, i, j)).collect::<Result<Vec<_>>>()?;
            for m in 1..=r {
                for m2 in m..=r {
                    out.record(pers[m - 1] >= pers[m2 - 1], || {
                        format!("{:?} row {i} columns {m} <= {m2}", cfg.x())
                    });
                }
            }
            for m in d + 1..=n {
                for m2 in m..=n {
                    out.record(pers[m - 1] <= pers[m2 - 1], || {
                        format!("{:?} row {i} columns {m} <= {m2}", cfg.x())
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Column supports are nested: growing across the first `r` columns and
/// shrinking across the last `r`.
pub fn column_nesting(n_max: usize, scope: Scope) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("column nesting");
    for cfg in sorted_configs(n_max).filter(|c| scope.admits(c)) {
        let (n, d, r) = (cfg.n(), cfg.d(), cfg.r());
        let supp: Vec<u64> = (1..=n).map(|c| cfg.column_rows(c)).collect();
        for m in 1..=r {
            for m2 in m..=r {
                out.record(supp[m - 1] & !supp[m2 - 1] == 0, || {
                    format!("{:?} columns {m}, {m2}", cfg.x())
                });
            }
        }
        for m in d + 1..=n {
            for m2 in m..=n {
                out.record(supp[m2 - 1] & !supp[m - 1] == 0, || {
                    format!("{:?} columns {m}, {m2}", cfg.x())
                });
            }
        }
    }
    Ok(out)
}

/// `per <= bound`, with equality exactly for direct sums of `1_{d×d}` when `d | n`.
pub fn bregman_configs(n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("Bregman bound");
    for cfg in sorted_configs(n_max) {
        check_bregman(&mut out, &cfg)?;
    }
    Ok(out)
}

fn check_bregman(out: &mut CheckOutcome, cfg: &BandConfig) -> Result<()> {
    let m = cfg.to_interval_matrix();
    let per = permanent(&m, EngineKind::Auto)?;
    let bound = bregman_bound(&m);
    out.record(bound.admits(&per, 1e-9), || format!("{:?} exceeds the bound", cfg.x()));
    let (n, d) = (cfg.n(), cfg.d());
    let is_block_sum = n % d == 0 && canonical_form(cfg) == BandConfig::full_blocks(n / d, d)?;
    let attains = bound.exact.as_ref() == Some(&per);
    out.record(attains == is_block_sum, || format!("{:?} equality mismatch", cfg.x()));
    Ok(())
}

/// The Bregman check restricted to maximizers, `d >= 2`.
pub fn bregman_maximizers(n_max: usize, opts: &SearchOptions) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("Bregman bound on maximizers");
    for n in 2..=n_max {
        for d in 2..=n {
            for cfg in &find_maximizers(n, d, opts)?.maximizers {
                check_bregman(&mut out, cfg)?;
            }
        }
    }
    Ok(out)
}

/// Materialized anticodes have the permanent as size and diameter below `d`.
pub fn anticode_materialization(n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("anticode materialization");
    for cfg in sorted_configs(n_max) {
        let m = cfg.to_interval_matrix();
        let per = permanent(&m, EngineKind::Auto)?;
        let set = materialize_anticode(&m)?;
        out.record(per == PermanentValue::from(set.len()), || format!("{:?} size", cfg.x()));
        if !set.is_empty() {
            let diam = anticode_diameter(&set)?;
            out.record(diam < cfg.d(), || format!("{:?} diameter {diam}", cfg.x()));
        }
    }
    Ok(out)
}

/// Ball sizes against a direct count over `S_n`.
pub fn ball_sizes(n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("ball sizes");
    for n in 1..=n_max {
        let all = Permutation::all(n);
        let id = Permutation::identity(n);
        for r in 0..=n {
            let brute = all
                .iter()
                .filter(|p| linf_distance(p, &id).is_ok_and(|dist| dist <= r))
                .count();
            let value = ball_size(n, r)?;
            out.record(value == PermanentValue::from(brute), || format!("n = {n}, r = {r}"));
        }
    }
    Ok(out)
}

/// `|code| · |anticode| <= n!` with an optimal code and an optimal anticode.
pub fn set_antiset(n_max: usize, opts: &SearchOptions) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("set-antiset");
    for n in 2..=n_max {
        for dmin in 2..=n {
            let code = max_code_bruteforce(n, dmin)?;
            let best = find_maximizers(n, dmin, opts)?;
            let anticode = materialize_anticode(&best.maximizers[0].to_interval_matrix())?;
            let product = PermanentValue::from(code.len() * anticode.len());
            out.record(product <= factorial(n), || format!("n = {n}, dmin = {dmin}"));
        }
    }
    Ok(out)
}

pub fn wanless_margins(k_max: usize, tol: f64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("Wanless margins");
    for k in 3..=k_max {
        let m = wanless_margin(k)?;
        for (v, g) in m.margins.iter().enumerate() {
            out.record(*g > tol, || format!("k = {k}, v = {}: margin {g}", v + 1));
        }
    }
    Ok(out)
}

pub fn factorial_inequalities(b_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("factorial inequality");
    for a in 2..=b_max.saturating_sub(2) {
        for b in a + 2..=b_max {
            let margin = factorial_inequality_margin(a, b)?;
            out.record(margin > 0.0, || format!("a = {a}, b = {b}: margin {margin}"));
        }
    }
    Ok(out)
}

/// A random interval matrix: about half are diagonal bands with random reach,
/// the rest have arbitrary blocks, and a few rows are empty.
pub fn random_interval_matrix<R: Rng>(rng: &mut R, n_max: usize) -> IntervalMatrix {
    let n = rng.gen_range(1..=n_max);
    let banded = rng.gen_bool(0.5);
    let rows = (1..=n)
        .map(|i| {
            if rng.gen_bool(0.02) {
                return None;
            }
            if banded {
                let lo = i.saturating_sub(rng.gen_range(0..=3)).max(1);
                let hi = (i + rng.gen_range(0..=3)).min(n);
                Some(Interval::new(lo, hi))
            } else {
                let lo = rng.gen_range(1..=n);
                Some(Interval::new(lo, rng.gen_range(lo..=n)))
            }
        })
        .collect();
    IntervalMatrix::new(n, rows).expect("valid by construction")
}

/// Naive, Ryser and interval-DP permanents agree on random interval matrices.
pub fn engine_agreement(count: usize, n_max: usize, seed: u64) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("engine agreement");
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..count {
        let m = random_interval_matrix(&mut rng, n_max);
        let a = permanent(&m, EngineKind::Naive)?;
        let b = permanent(&m, EngineKind::Ryser)?;
        let c = permanent(&m, EngineKind::IntervalDp)?;
        out.record(a == b && b == c, || format!("{m:?}: {a} / {b} / {c}"));
    }
    Ok(out)
}
