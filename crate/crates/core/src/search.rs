//! Exhaustive search over sorted band configurations.
//!
//! Every matrix with contiguous length-`d` row blocks is a row permutation of
//! one with nondecreasing block starts, so the search only visits sorted
//! vectors. Maximizers are reported both as the full sorted list and as
//! canonical classes under row sorting and the 180° rotation; that quotient
//! is the notion of "up to isomorphism" used throughout. Two sorted
//! configurations may be isomorphic by some other row/column relabelling and
//! still land in different classes.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::matrix::{canonical_form, contains_full_block, decompose_components, BandConfig};
use crate::permanent::{permanent_with, EngineKind, EngineLimits};
use crate::theory::{conjecture_band_config, conjecture_size_formula, max_permanent_formula, optimal_family};
use crate::{binomial, Error, PermanentValue, Result};

/// Budget and execution settings for exhaustive searches.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    /// Cap on `configs × n × 2^min(d, 16)`, a rough proxy for DP work.
    pub max_work: u128,
    /// Wall-clock cap per search.
    pub max_duration: Duration,
    pub engine: EngineKind,
    pub limits: EngineLimits,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            max_work: 100_000_000,
            max_duration: Duration::from_secs(300),
            engine: EngineKind::Auto,
            limits: EngineLimits::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }
}

/// Number of sorted configurations: multisets of size `n` over `n - d + 1` values.
pub fn config_count(n: usize, d: usize) -> PermanentValue {
    binomial(2 * n - d, n - d)
}

/// Nondecreasing block-start vectors in lexicographic order.
pub struct ConfigIter {
    n: usize,
    d: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for ConfigIter {
    type Item = BandConfig;

    fn next(&mut self) -> Option<BandConfig> {
        let current = self.next.take()?;
        let top = self.n - self.d + 1;
        if let Some(pos) = current.iter().rposition(|&v| v < top) {
            let mut succ = current.clone();
            let v = succ[pos] + 1;
            succ[pos..].iter_mut().for_each(|s| *s = v);
            self.next = Some(succ);
        }
        Some(BandConfig::new_unchecked(self.n, self.d, current))
    }
}

pub fn enumerate_configs(n: usize, d: usize) -> Result<ConfigIter> {
    if n < 1 || d < 1 || d > n {
        return Err(Error::Range(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
    }
    Ok(ConfigIter {
        n,
        d,
        next: Some(vec![1; n]),
    })
}

fn check_budget(n: usize, d: usize, opts: &SearchOptions) -> Result<u64> {
    let count = config_count(n, d)
        .to_u128()
        .filter(|&c| c <= u64::MAX as u128)
        .ok_or_else(|| Error::BudgetExceeded(format!("too many configurations for n = {n}, d = {d}")))?;
    let work = count.saturating_mul(n as u128).saturating_mul(1u128 << d.min(16));
    if work > opts.max_work {
        return Err(Error::BudgetExceeded(format!(
            "n = {n}, d = {d}: {count} configurations, estimated work {work} > {}",
            opts.max_work
        )));
    }
    Ok(count as u64)
}

const CHUNK: usize = 4096;

/// Computes the permanent of every sorted configuration and feeds
/// `(config, permanent)` to `visit` in lexicographic order, whatever the
/// number of workers.
fn scan<F>(n: usize, d: usize, opts: &SearchOptions, mut visit: F) -> Result<u64>
where
    F: FnMut(BandConfig, PermanentValue),
{
    let started = Instant::now();
    let expected = check_budget(n, d, opts)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;

    let mut iter = enumerate_configs(n, d)?;
    let mut seen = 0u64;
    loop {
        let chunk: Vec<BandConfig> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        if started.elapsed() > opts.max_duration {
            return Err(Error::BudgetExceeded(format!(
                "wall-clock cap of {:?} reached after {seen} configurations",
                opts.max_duration
            )));
        }
        let values: Vec<Result<PermanentValue>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|cfg| permanent_with(&cfg.to_interval_matrix(), opts.engine, &opts.limits))
                .collect()
        });
        for (cfg, value) in chunk.into_iter().zip(values) {
            visit(cfg, value?);
            seen += 1;
        }
    }
    if seen != expected {
        return Err(Error::InternalInconsistency(format!(
            "enumerated {seen} configurations, expected {expected}"
        )));
    }
    Ok(seen)
}

fn serialize_xs<S: Serializer>(cfgs: &[BandConfig], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(cfgs.iter().map(BandConfig::x))
}

fn serialize_x<S: Serializer>(cfg: &BandConfig, s: S) -> std::result::Result<S::Ok, S::Error> {
    cfg.x().serialize(s)
}

/// The maximum permanent over all sorted configurations and where it is attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub d: usize,
    pub max_value: PermanentValue,
    /// Sorted maximizers in lexicographic order.
    #[serde(serialize_with = "serialize_xs")]
    pub maximizers: Vec<BandConfig>,
    /// Distinct canonical forms of the maximizers, in lexicographic order.
    #[serde(serialize_with = "serialize_xs")]
    pub canonical_classes: Vec<BandConfig>,
    pub configs_enumerated: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn is_maximizer(&self, cfg: &BandConfig) -> bool {
        self.canonical_classes.binary_search(&canonical_form(cfg)).is_ok()
    }
}

pub fn find_maximizers(n: usize, d: usize, opts: &SearchOptions) -> Result<SearchReport> {
    let started = Instant::now();
    let mut best = PermanentValue::zero();
    let mut maximizers = Vec::new();
    let configs_enumerated = scan(n, d, opts, |cfg, value| {
        if value > best {
            best = value;
            maximizers.clear();
            maximizers.push(cfg);
        } else if value == best {
            maximizers.push(cfg);
        }
    })?;
    let canonical_classes: BTreeSet<BandConfig> = maximizers.iter().map(canonical_form).collect();
    Ok(SearchReport {
        n,
        d,
        max_value: best,
        maximizers,
        canonical_classes: canonical_classes.into_iter().collect(),
        configs_enumerated,
        elapsed: started.elapsed(),
    })
}

/// Every sorted configuration with its permanent, in lexicographic order.
pub fn config_permanents(n: usize, d: usize, opts: &SearchOptions) -> Result<Vec<(BandConfig, PermanentValue)>> {
    let mut out = Vec::new();
    scan(n, d, opts, |cfg, value| out.push((cfg, value)))?;
    Ok(out)
}

/// Exhaustive check of the closed-form value and the classification of
/// maximizers for long blocks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub d: usize,
    pub verified: bool,
    pub max_value: PermanentValue,
    pub formula_value: PermanentValue,
    #[serde(serialize_with = "serialize_xs")]
    pub search_classes: Vec<BandConfig>,
    #[serde(serialize_with = "serialize_xs")]
    pub expected_classes: Vec<BandConfig>,
    /// Expected classes the search did not find.
    #[serde(serialize_with = "serialize_xs")]
    pub missing: Vec<BandConfig>,
    /// Search classes outside the expected family.
    #[serde(serialize_with = "serialize_xs")]
    pub unexpected: Vec<BandConfig>,
}

pub fn verify_classification(n: usize, d: usize, opts: &SearchOptions) -> Result<ClassificationReport> {
    let family = optimal_family(n, d)?;
    let formula_value = max_permanent_formula(n, d)?;
    let report = find_maximizers(n, d, opts)?;
    let expected: BTreeSet<BandConfig> = family.iter().map(canonical_form).collect();
    let found: BTreeSet<BandConfig> = report.canonical_classes.iter().cloned().collect();
    let missing: Vec<_> = expected.difference(&found).cloned().collect();
    let unexpected: Vec<_> = found.difference(&expected).cloned().collect();
    Ok(ClassificationReport {
        n,
        d,
        verified: missing.is_empty() && unexpected.is_empty() && report.max_value == formula_value,
        max_value: report.max_value,
        formula_value,
        search_classes: found.into_iter().collect(),
        expected_classes: expected.into_iter().collect(),
        missing,
        unexpected,
    })
}

/// Component structure of one maximizer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizerStructure {
    #[serde(serialize_with = "serialize_x")]
    pub config: BandConfig,
    pub component_orders: Vec<usize>,
    /// Components equal to `1_{d×d}`.
    pub full_blocks: usize,
    /// All other components.
    pub other_components: usize,
    /// `other_components <= d - 1`.
    pub within_bound: bool,
    /// For each other component, whether it contains `1_{d×d}` as a sub-matrix.
    pub others_contain_full_block: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub d: usize,
    pub max_value: PermanentValue,
    pub maximizers: Vec<MaximizerStructure>,
    pub all_within_bound: bool,
}

pub fn maximizer_structure(cfg: &BandConfig) -> Result<MaximizerStructure> {
    let d = cfg.d();
    let dec = decompose_components(&cfg.to_interval_matrix());
    if dec.deficient {
        return Err(Error::InternalInconsistency(format!(
            "configuration {:?} has permanent zero",
            cfg.x()
        )));
    }
    let mut full_blocks = 0;
    let mut others = Vec::new();
    for comp in &dec.components {
        if comp.order() == d {
            full_blocks += 1;
        } else {
            others.push(contains_full_block(comp, d));
        }
    }
    let other_orders: usize = dec.orders.iter().filter(|&&o| o != d).sum();
    if full_blocks * d + other_orders != cfg.n() {
        return Err(Error::InternalInconsistency(format!(
            "component orders of {:?} do not add up",
            cfg.x()
        )));
    }
    Ok(MaximizerStructure {
        config: cfg.clone(),
        component_orders: dec.orders,
        full_blocks,
        other_components: others.len(),
        within_bound: others.len() < d,
        others_contain_full_block: others,
    })
}

pub fn structure_report(n: usize, d: usize, opts: &SearchOptions) -> Result<StructureReport> {
    let report = find_maximizers(n, d, opts)?;
    let maximizers = report
        .maximizers
        .iter()
        .map(maximizer_structure)
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureReport {
        n,
        d,
        all_within_bound: maximizers.iter().all(|m| m.within_bound),
        max_value: report.max_value,
        maximizers,
    })
}

/// Maximizer sets at `n` and `n + d` and how appending `1_{d×d}` relates them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicityEntry {
    pub n: usize,
    pub max_n: PermanentValue,
    pub max_n_plus_d: PermanentValue,
    #[serde(serialize_with = "serialize_xs")]
    pub classes_n: Vec<BandConfig>,
    #[serde(serialize_with = "serialize_xs")]
    pub classes_n_plus_d: Vec<BandConfig>,
    /// Every class at `n` stays optimal after appending `1_{d×d}`.
    pub forward_holds: bool,
    /// Classes at `n` whose extension is not optimal at `n + d`.
    #[serde(serialize_with = "serialize_xs")]
    pub forward_failures: Vec<BandConfig>,
    /// Every maximizer at `n + d` with a `1_{d×d}` component is an extension
    /// of a maximizer at `n`.
    pub backward_holds: bool,
    /// Number of (maximizer, removable block) pairs examined for the backward direction.
    pub backward_cases: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicityReport {
    pub d: usize,
    pub entries: Vec<PeriodicityEntry>,
}

/// Removes each `1_{d×d}` component of a sorted configuration in turn.
pub fn strip_full_blocks(cfg: &BandConfig) -> Vec<BandConfig> {
    let (n, d) = (cfg.n(), cfg.d());
    let x = cfg.x();
    let mut runs: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in x {
        *runs.entry(v).or_default() += 1;
    }
    runs.iter()
        .filter(|&(&v, &count)| count == d && x.iter().all(|&w| w == v || w + d <= v || w >= v + d))
        .filter(|_| n > d)
        .map(|(&v, _)| {
            let rest = x
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| if w > v { w - d } else { w })
                .collect();
            BandConfig::new_unchecked(n - d, d, rest)
        })
        .collect()
}

pub fn periodicity_report(d: usize, n_from: usize, n_to: usize, opts: &SearchOptions) -> Result<PeriodicityReport> {
    if d < 1 || n_from < d || n_to < n_from {
        return Err(Error::Range(format!(
            "need 1 <= d <= from <= to, got d = {d}, from = {n_from}, to = {n_to}"
        )));
    }
    let mut cache: BTreeMap<usize, SearchReport> = BTreeMap::new();
    let mut entries = Vec::new();
    for n in n_from..=n_to {
        for m in [n, n + d] {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(m) {
                e.insert(find_maximizers(m, d, opts)?);
            }
        }
        let (small, large) = (&cache[&n], &cache[&(n + d)]);

        let mut forward_failures = Vec::new();
        for class in &small.canonical_classes {
            if !large.is_maximizer(&class.with_full_block()?) {
                forward_failures.push(class.clone());
            }
        }

        let mut backward_cases = 0;
        for big in &large.maximizers {
            for reduced in strip_full_blocks(big) {
                backward_cases += 1;
                if !small.is_maximizer(&reduced) {
                    return Err(Error::InternalInconsistency(format!(
                        "{:?} is optimal at n = {} but {:?} is not optimal at n = {n}",
                        big.x(),
                        n + d,
                        reduced.x()
                    )));
                }
            }
        }

        entries.push(PeriodicityEntry {
            n,
            max_n: small.max_value.clone(),
            max_n_plus_d: large.max_value.clone(),
            classes_n: small.canonical_classes.clone(),
            classes_n_plus_d: large.canonical_classes.clone(),
            forward_holds: forward_failures.is_empty(),
            forward_failures,
            backward_holds: true,
            backward_cases,
        });
    }
    Ok(PeriodicityReport { d, entries })
}

/// The conjectured optimum compared with its own permanent and, optionally,
/// with the exhaustive maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub d: usize,
    #[serde(serialize_with = "serialize_x")]
    pub config: BandConfig,
    pub formula: PermanentValue,
    pub config_permanent: PermanentValue,
    /// `formula == config_permanent`.
    pub consistent: bool,
    pub exhaustive_max: Option<PermanentValue>,
    /// `exhaustive_max == formula`, when the search ran.
    pub matches_search: Option<bool>,
}

pub fn conjecture_report(n: usize, d: usize, search: Option<&SearchOptions>) -> Result<ConjectureReport> {
    let config = conjecture_band_config(n, d)?;
    let formula = conjecture_size_formula(n, d)?;
    let limits = search.map(|o| o.limits).unwrap_or_default();
    let config_permanent = permanent_with(&config.to_interval_matrix(), EngineKind::Auto, &limits)?;
    let exhaustive_max = match search {
        Some(opts) => Some(find_maximizers(n, d, opts)?.max_value),
        None => None,
    };
    Ok(ConjectureReport {
        n,
        d,
        consistent: formula == config_permanent,
        matches_search: exhaustive_max.as_ref().map(|m| *m == formula),
        config,
        formula,
        config_permanent,
        exhaustive_max,
    })
}
