use std::fmt::Write as _;

use anticode_core::error::Error;
use anticode_core::perm_space::{
    anticode_diameter, ball_size, materialize_anticode, max_code_bruteforce, set_antiset_bound, PermSet,
};
use anticode_core::permanent::select_engine;
use anticode_core::search::{
    config_permanents, conjecture_report, find_maximizers, periodicity_report, structure_report, verify_classification,
    SearchOptions,
};
use anticode_core::theory::{conjecture_config, max_permanent_formula, optimal_config, optimal_family, wanless_margin};
use anticode_core::verify::{self, CheckOutcome, Scope};
use anticode_core::{bregman_bound, factorial, permanent_with, BandConfig, EngineKind, PermanentValue};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::MatrixInput;
use crate::{CliError, CliResult, Command, Context, Format, Rendered};

/// Pairs exercised by the conjecture report when no `--n`/`--d` is given.
pub const CONJECTURE_PAIRS: [(usize, usize); 6] = [(5, 2), (7, 2), (7, 3), (8, 3), (9, 4), (10, 3)];

/// Required margin for the Wanless check.
pub const WANLESS_TOLERANCE: f64 = 1e-6;

pub(crate) fn execute(ctx: &Context) -> CliResult<Rendered> {
    match ctx.args.command {
        Command::Perm => perm(ctx),
        Command::Search => search(ctx),
        Command::Classify => classify(ctx),
        Command::Structure => structure(ctx),
        Command::Periodicity => periodicity(ctx),
        Command::Formula => formula(ctx),
        Command::Conjecture => conjecture(ctx),
        Command::Wanless => wanless(ctx),
        Command::Ball => ball(ctx),
        Command::Bound => bound(ctx),
        Command::Anticode => anticode(ctx),
        Command::Maxcode => maxcode(ctx),
        Command::Selftest => selftest(ctx),
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn x_text(cfg: &BandConfig) -> String {
    let parts: Vec<String> = cfg.x().iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn n_and_d(ctx: &Context) -> CliResult<(usize, usize)> {
    Ok((ctx.require(ctx.args.n, "n")?, ctx.require(ctx.args.d, "d")?))
}

fn required_matrix(ctx: &Context) -> CliResult<MatrixInput> {
    MatrixInput::from_context(ctx)?
        .ok_or_else(|| CliError::Usage("a matrix is required: pass --config or --file".into()))
}

fn perm(ctx: &Context) -> CliResult<Rendered> {
    let input = required_matrix(ctx)?;
    let m = input.matrix();
    let engine = match ctx.args.engine {
        EngineKind::Auto => select_engine(m, &ctx.search.limits)?,
        e => e,
    };
    let value = permanent_with(m, engine, &ctx.search.limits)?;
    let bound = bregman_bound(m);
    let doc = json!({
        "input": input.echo(),
        "order": m.order(),
        "engine": engine.name(),
        "permanent": value,
        "bregman_log_bound": bound.log_bound,
        "bregman_exact": bound.exact,
    });
    Ok(Rendered::new(doc, value.to_string()))
}

fn search(ctx: &Context) -> CliResult<Rendered> {
    let (n, d) = n_and_d(ctx)?;
    if ctx.format == Format::Csv {
        let mut csv = String::from("config,permanent\n");
        for (cfg, value) in config_permanents(n, d, &ctx.search)? {
            let x: Vec<String> = cfg.x().iter().map(usize::to_string).collect();
            let _ = writeln!(csv, "{},{value}", x.join(" "));
        }
        let mut rendered = Rendered::new(Value::Null, String::new());
        rendered.csv = Some(csv);
        return Ok(rendered);
    }
    let report = find_maximizers(n, d, &ctx.search)?;
    let mut plain = format!(
        "max {}\nmaximizers {}\nclasses {}\n",
        report.max_value,
        report.maximizers.len(),
        report.canonical_classes.len()
    );
    for cfg in &report.canonical_classes {
        let _ = writeln!(plain, "{}", x_text(cfg));
    }
    Ok(Rendered::new(to_json(&report), plain))
}

/// `(n, d)` with `n/2 < d <= n` for every `n` in the range.
pub fn formula_pairs(from: usize, to: usize) -> Vec<(usize, usize)> {
    (from.max(1)..=to)
        .flat_map(|n| (n / 2 + 1..=n).map(move |d| (n, d)))
        .collect()
}

/// `(n, d)` with `2d < n` and `d` from `ds`.
pub fn short_block_pairs(from: usize, to: usize, ds: &[usize]) -> Vec<(usize, usize)> {
    (from..=to)
        .flat_map(|n| ds.iter().filter(move |&&d| d >= 1 && 2 * d < n).map(move |&d| (n, d)))
        .collect()
}

fn classify(ctx: &Context) -> CliResult<Rendered> {
    let one = |n, d| verify_classification(n, d, &ctx.search);
    let line = |r: &anticode_core::search::ClassificationReport| {
        format!(
            "n {} d {} verified {} max {} formula {} classes {}",
            r.n,
            r.d,
            r.verified,
            r.max_value,
            r.formula_value,
            r.search_classes.len()
        )
    };
    if let Some((from, to)) = ctx.range() {
        let reports = formula_pairs(from, to)
            .into_iter()
            .map(|(n, d)| one(n, d))
            .collect::<Result<Vec<_>, _>>()?;
        let verified = reports.iter().all(|r| r.verified);
        let plain = reports.iter().map(line).collect::<Vec<_>>().join("\n");
        let doc = json!({ "from": from, "to": to, "verified": verified, "reports": reports });
        return Ok(Rendered::new(doc, plain));
    }
    let (n, d) = n_and_d(ctx)?;
    let report = one(n, d)?;
    Ok(Rendered::new(to_json(&report), line(&report)))
}

fn structure(ctx: &Context) -> CliResult<Rendered> {
    let line = |r: &anticode_core::search::StructureReport| {
        format!(
            "n {} d {} max {} maximizers {} within_bound {}",
            r.n,
            r.d,
            r.max_value,
            r.maximizers.len(),
            r.all_within_bound
        )
    };
    if let Some((from, to)) = ctx.range() {
        let ds: Vec<usize> = match ctx.args.d {
            Some(d) => vec![d],
            None => vec![1, 2, 3],
        };
        let reports = short_block_pairs(from, to, &ds)
            .into_iter()
            .map(|(n, d)| structure_report(n, d, &ctx.search))
            .collect::<Result<Vec<_>, _>>()?;
        let ok = reports.iter().all(|r| r.all_within_bound);
        let plain = reports.iter().map(line).collect::<Vec<_>>().join("\n");
        let doc = json!({ "from": from, "to": to, "all_within_bound": ok, "reports": reports });
        return Ok(Rendered::new(doc, plain));
    }
    let (n, d) = n_and_d(ctx)?;
    let report = structure_report(n, d, &ctx.search)?;
    Ok(Rendered::new(to_json(&report), line(&report)))
}

fn periodicity(ctx: &Context) -> CliResult<Rendered> {
    let d = ctx.require(ctx.args.d, "d")?;
    let (from, to) = ctx
        .range()
        .ok_or_else(|| CliError::Usage("periodicity requires --from and --to".into()))?;
    let report = periodicity_report(d, from, to, &ctx.search)?;
    let plain = report
        .entries
        .iter()
        .map(|e| {
            format!(
                "n {} max {} max(n+d) {} forward {} backward {}",
                e.n, e.max_n, e.max_n_plus_d, e.forward_holds, e.backward_holds
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Rendered::new(to_json(&report), plain))
}

fn formula(ctx: &Context) -> CliResult<Rendered> {
    let (n, d) = n_and_d(ctx)?;
    let value = max_permanent_formula(n, d)?;
    let family = optimal_family(n, d)?;
    let family: Vec<&[usize]> = family.iter().map(BandConfig::x).collect();
    let doc = json!({
        "n": n,
        "d": d,
        "value": value,
        "optimal_config": optimal_config(n, d)?.x(),
        "optimal_family": family,
    });
    Ok(Rendered::new(doc, value.to_string()))
}

fn conjecture_one(n: usize, d: usize, opts: &SearchOptions) -> CliResult<Value> {
    let report = match conjecture_report(n, d, Some(opts)) {
        Err(Error::BudgetExceeded(_)) => conjecture_report(n, d, None)?,
        other => other?,
    };
    let mut doc = to_json(&report);
    doc["matrix"] = to_json(&conjecture_config(n, d)?);
    Ok(doc)
}

fn conjecture_line(doc: &Value) -> String {
    let text = |key: &str| match &doc[key] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    format!(
        "n {} d {} formula {} consistent {} exhaustive {} matches {}",
        text("n"),
        text("d"),
        text("formula"),
        text("consistent"),
        text("exhaustive_max"),
        text("matches_search")
    )
}

fn conjecture(ctx: &Context) -> CliResult<Rendered> {
    if ctx.args.n.is_none() && ctx.args.d.is_none() {
        let reports = CONJECTURE_PAIRS
            .iter()
            .map(|&(n, d)| conjecture_one(n, d, &ctx.search))
            .collect::<CliResult<Vec<_>>>()?;
        let consistent = reports.iter().all(|r| r["consistent"] == Value::Bool(true));
        let plain = reports.iter().map(conjecture_line).collect::<Vec<_>>().join("\n");
        let doc = json!({ "consistent": consistent, "reports": reports });
        return Ok(Rendered::new(doc, plain));
    }
    let (n, d) = n_and_d(ctx)?;
    let doc = conjecture_one(n, d, &ctx.search)?;
    let plain = conjecture_line(&doc);
    Ok(Rendered::new(doc, plain))
}

fn wanless(ctx: &Context) -> CliResult<Rendered> {
    let (from, to) = match (ctx.args.k, ctx.range()) {
        (Some(k), _) => (k, k),
        (None, Some(range)) => range,
        (None, None) => (3, 12),
    };
    let reports = (from..=to).map(wanless_margin).collect::<Result<Vec<_>, _>>()?;
    let min_margin = reports.iter().map(|r| r.min_margin).fold(f64::INFINITY, f64::min);
    let passed = min_margin > WANLESS_TOLERANCE;
    let mut csv = String::from("k,v,margin\n");
    let mut plain = String::new();
    for r in &reports {
        for (v, m) in r.margins.iter().enumerate() {
            let _ = writeln!(csv, "{},{},{m:e}", r.k, v + 1);
        }
        let _ = writeln!(plain, "k {} min_margin {:e}", r.k, r.min_margin);
    }
    let doc = json!({
        "from": from,
        "to": to,
        "tolerance": WANLESS_TOLERANCE,
        "passed": passed,
        "min_margin": min_margin,
        "reports": reports,
    });
    let mut rendered = Rendered::new(doc, plain);
    rendered.csv = Some(csv);
    if !passed {
        rendered.failure = Some(format!(
            "minimum margin {min_margin:e} is not above {WANLESS_TOLERANCE:e}"
        ));
    }
    Ok(rendered)
}

fn ball(ctx: &Context) -> CliResult<Rendered> {
    let n = ctx.require(ctx.args.n, "n")?;
    let r = ctx.require(ctx.args.r, "r")?;
    let size = ball_size(n, r)?;
    let doc = json!({ "n": n, "r": r, "size": size });
    Ok(Rendered::new(doc, size.to_string()))
}

fn bound(ctx: &Context) -> CliResult<Rendered> {
    let (n, size, source) = match MatrixInput::from_context(ctx)? {
        Some(input) => {
            let m = input.matrix();
            let size = permanent_with(m, ctx.args.engine, &ctx.search.limits)?;
            (ctx.args.n.unwrap_or(m.order()), size, "config")
        }
        None => {
            let (n, d) = n_and_d(ctx)?;
            (n, find_maximizers(n, d, &ctx.search)?.max_value, "search")
        }
    };
    let value = set_antiset_bound(n, &size)?;
    let doc = json!({
        "n": n,
        "anticode_size": size,
        "anticode_source": source,
        "code_size_bound": value,
    });
    Ok(Rendered::new(doc, value.to_string()))
}

fn perm_set_lines(set: &PermSet) -> String {
    set.members()
        .iter()
        .map(|p| p.images().iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn anticode(ctx: &Context) -> CliResult<Rendered> {
    let input = match MatrixInput::from_context(ctx)? {
        Some(input) => input,
        None => {
            let (n, d) = n_and_d(ctx)?;
            let report = find_maximizers(n, d, &ctx.search)?;
            let cfg = report.canonical_classes[0].clone();
            let m = cfg.to_interval_matrix();
            MatrixInput::Band(cfg, m)
        }
    };
    let set = materialize_anticode(input.matrix())?;
    let diameter = if set.is_empty() {
        None
    } else {
        Some(anticode_diameter(&set)?)
    };
    let doc = json!({
        "input": input.echo(),
        "size": set.len(),
        "diameter": diameter,
        "max_distance_bound": input.band_width().map(|d| d - 1),
        "members": set,
    });
    Ok(Rendered::new(doc, perm_set_lines(&set)))
}

fn maxcode(ctx: &Context) -> CliResult<Rendered> {
    let (n, dmin) = n_and_d(ctx)?;
    if dmin == 0 {
        return Err(CliError::Usage("maxcode requires --d >= 1 (minimum distance)".into()));
    }
    let code = max_code_bruteforce(n, dmin)?;
    let anticode_size = if dmin <= n {
        find_maximizers(n, dmin, &ctx.search)?.max_value
    } else {
        factorial(n)
    };
    let product = PermanentValue::from(code.len()) * anticode_size.clone();
    let n_factorial = factorial(n);
    let doc = json!({
        "n": n,
        "dmin": dmin,
        "size": code.len(),
        "anticode_size": anticode_size,
        "product": product,
        "n_factorial": n_factorial,
        "within_bound": product <= n_factorial,
        "code": code,
    });
    let plain = format!("{}\n{}", code.len(), perm_set_lines(&code));
    Ok(Rendered::new(doc, plain))
}

fn classification_outcome(n_max: usize, opts: &SearchOptions) -> CliResult<CheckOutcome> {
    let mut outcome = CheckOutcome {
        name: "maximizer classification".into(),
        cases: 0,
        violations: 0,
        first_violation: None,
    };
    for (n, d) in formula_pairs(2, n_max) {
        let report = verify_classification(n, d, opts)?;
        outcome.cases += 1;
        if !report.verified {
            outcome.violations += 1;
            outcome
                .first_violation
                .get_or_insert_with(|| format!("n = {n}, d = {d}"));
        }
    }
    Ok(outcome)
}

fn selftest(ctx: &Context) -> CliResult<Rendered> {
    let n_max = ctx.args.n.unwrap_or(6);
    let opts = &ctx.search;
    let checks = vec![
        classification_outcome(n_max, opts)?,
        verify::engine_agreement(100, (n_max + 2).min(10), 2024)?,
        verify::push_identity(n_max)?,
        verify::push_dominance(n_max, Scope::LongBlocks)?,
        verify::push_chain(n_max, Scope::LongBlocks)?,
        verify::minor_monotonicity(n_max, Scope::LongBlocks)?,
        verify::column_nesting(n_max, Scope::LongBlocks)?,
        verify::bregman_configs(n_max)?,
        verify::bregman_maximizers(n_max, opts)?,
        verify::ball_sizes(n_max.min(7))?,
        verify::anticode_materialization(n_max.min(7))?,
        verify::set_antiset(n_max.min(5), opts)?,
        verify::wanless_margins(12, WANLESS_TOLERANCE)?,
        verify::factorial_inequalities(30)?,
    ];
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let plain = checks
        .iter()
        .map(|c| {
            format!(
                "{} {} cases {} violations {}",
                if c.passed() { "pass" } else { "FAIL" },
                c.name,
                c.cases,
                c.violations
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let doc = json!({ "n_max": n_max, "passed": failed == 0, "checks": checks });
    let mut rendered = Rendered::new(doc, plain);
    if failed > 0 {
        rendered.failure = Some(format!("{failed} of {} checks failed", checks.len()));
    }
    Ok(rendered)
}
