//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always print.
//!
//! Criteria that have a single CLI invocation go through [`anticode_lab::run`]
//! exactly as the binary would; the rest call the library checkers.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use anticode_core::perm_space::ball_size;
use anticode_core::search::SearchOptions;
use anticode_core::verify::{self, CheckOutcome, Scope};
use serde_json::Value;

/// Log-domain slack allowed above the Bregman bound.
const BREGMAN_LOG_SLACK: f64 = 1e-9;
/// Minimum accepted margin `k^2 - B(k, v)`.
const WANLESS_MARGIN: f64 = 1e-6;
/// Random matrices for engine cross-validation, and their largest order.
const ENGINE_SAMPLES: usize = 500;
const ENGINE_MAX_ORDER: usize = 10;
const ENGINE_SEED: u64 = 0x5eed_2024;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn from_checks(checks: &[CheckOutcome]) -> Verdict {
        let passed = checks.iter().all(CheckOutcome::passed);
        let detail = checks
            .iter()
            .map(|c| match &c.first_violation {
                None => format!("{}: {} cases, 0 violations", c.name, c.cases),
                Some(v) => format!("{}: {} of {} cases violated, first {v}", c.name, c.violations, c.cases),
            })
            .collect::<Vec<_>>()
            .join("; ");
        Verdict { passed, detail }
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = anticode_lab::run(
        std::iter::once("anticode-lab").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    if code == 0 {
        Ok(String::from_utf8(out).expect("utf-8 output"))
    } else {
        Err(format!("exit {code}: {}", String::from_utf8_lossy(&err).trim()))
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let text = cli(args)?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn without_timing(text: &str) -> Result<String, String> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("not an object")?.remove("timing");
    serde_json::to_string(&v).map_err(|e| e.to_string())
}

fn reports(doc: &Value, key: &str) -> Vec<Value> {
    doc[key].as_array().cloned().unwrap_or_default()
}

const CLASSIFY: [&str; 7] = ["classify", "--from", "2", "--to", "9", "--engine", "dp"];

/// Number of pairs `n/2 < d <= n` with `2 <= n <= 9`.
fn formula_pair_count() -> usize {
    (2..=9usize).map(|n| n - n / 2).sum()
}

fn formula_vs_search() -> Result<Verdict, String> {
    let doc = cli_json(&CLASSIFY)?;
    let all = reports(&doc, "reports");
    let bad: Vec<String> = all
        .iter()
        .filter(|r| r["max_value"] != r["formula_value"])
        .map(|r| format!("(n = {}, d = {})", r["n"], r["d"]))
        .collect();
    Ok(Verdict {
        passed: all.len() == formula_pair_count() && bad.is_empty(),
        detail: format!("{} pairs n/2 < d <= n <= 9, mismatches {:?}", all.len(), bad),
    })
}

fn classification() -> Result<Verdict, String> {
    let doc = cli_json(&CLASSIFY)?;
    let all = reports(&doc, "reports");
    let classes: usize = all
        .iter()
        .map(|r| r["search_classes"].as_array().map_or(0, Vec::len))
        .sum();
    Ok(Verdict {
        passed: all.len() == formula_pair_count() && doc["verified"] == Value::Bool(true),
        detail: format!("{} pairs verified, {classes} canonical classes in total", all.len()),
    })
}

fn engines() -> Result<Verdict, String> {
    let c = verify::engine_agreement(ENGINE_SAMPLES, ENGINE_MAX_ORDER, ENGINE_SEED).map_err(|e| e.to_string())?;
    Ok(Verdict::from_checks(&[c]))
}

fn band_statements() -> Result<Verdict, String> {
    let run = |scope| -> anticode_core::Result<Vec<CheckOutcome>> {
        Ok(vec![
            verify::push_dominance(7, scope)?,
            verify::push_chain(7, scope)?,
            verify::minor_monotonicity(7, scope)?,
            verify::column_nesting(7, scope)?,
        ])
    };
    let mut checks = vec![verify::push_identity(7).map_err(|e| e.to_string())?];
    checks.extend(run(Scope::LongBlocks).map_err(|e| e.to_string())?);
    let mut verdict = Verdict::from_checks(&checks);
    // informational: the same statements over every d
    let outside: Vec<String> = run(Scope::All)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| format!("{} {}", c.name, c.violations))
        .collect();
    verdict.detail = format!(
        "{}; [info] violations when n > 2d is included: {}",
        verdict.detail,
        outside.join(", ")
    );
    Ok(verdict)
}

fn bregman() -> Result<Verdict, String> {
    // bregman_configs applies the 1e-9 log slack through BregmanBound::admits
    let c = verify::bregman_configs(8).map_err(|e| e.to_string())?;
    let mut v = Verdict::from_checks(&[c]);
    v.detail = format!("{} (log slack {BREGMAN_LOG_SLACK:e})", v.detail);
    Ok(v)
}

fn balls() -> Result<Verdict, String> {
    let c = verify::ball_sizes(7).map_err(|e| e.to_string())?;
    let spot = [(3, 1, 3u64), (4, 1, 5)]
        .iter()
        .all(|&(n, r, v)| ball_size(n, r).map(|s| s == v).unwrap_or(false));
    let mut v = Verdict::from_checks(&[c]);
    v.passed &= spot;
    v.detail = format!("{}; ball(3,1) = 3 and ball(4,1) = 5: {spot}", v.detail);
    Ok(v)
}

fn materialization() -> Result<Verdict, String> {
    let c = verify::anticode_materialization(7).map_err(|e| e.to_string())?;
    Ok(Verdict::from_checks(&[c]))
}

fn set_antiset() -> Result<Verdict, String> {
    let c = verify::set_antiset(5, &SearchOptions::default()).map_err(|e| e.to_string())?;
    Ok(Verdict::from_checks(&[c]))
}

fn wanless() -> Result<Verdict, String> {
    let c = verify::wanless_margins(12, WANLESS_MARGIN).map_err(|e| e.to_string())?;
    let doc = cli_json(&["wanless", "--from", "3", "--to", "12"])?;
    let mut v = Verdict::from_checks(&[c]);
    v.passed &= doc["passed"] == Value::Bool(true);
    v.detail = format!("{}; smallest margin {}", v.detail, doc["min_margin"]);
    Ok(v)
}

fn factorial_inequality() -> Result<Verdict, String> {
    let c = verify::factorial_inequalities(30).map_err(|e| e.to_string())?;
    Ok(Verdict::from_checks(&[c]))
}

fn structure() -> Result<Verdict, String> {
    let doc = cli_json(&["structure", "--from", "2", "--to", "10"])?;
    let all = reports(&doc, "reports");
    let maximizers: usize = all.iter().map(|r| r["maximizers"].as_array().map_or(0, Vec::len)).sum();
    Ok(Verdict {
        passed: !all.is_empty() && doc["all_within_bound"] == Value::Bool(true),
        detail: format!(
            "{} pairs with d <= 3 and 2d < n <= 10, {maximizers} maximizers, all within d - 1 other components: {}",
            all.len(),
            doc["all_within_bound"]
        ),
    })
}

fn periodicity() -> Result<Verdict, String> {
    let mut passed = true;
    let mut parts = Vec::new();
    for (d, from, to) in [("2", "4", "8"), ("3", "6", "8")] {
        let doc = cli_json(&["periodicity", "--d", d, "--from", from, "--to", to])?;
        let entries = reports(&doc, "entries");
        let backward = entries.iter().all(|e| e["backward_holds"] == Value::Bool(true));
        let forward = entries
            .iter()
            .filter(|e| e["forward_holds"] == Value::Bool(true))
            .count();
        passed &= backward && !entries.is_empty();
        parts.push(format!(
            "d = {d}, n = {from}..{to}: backward {backward}, [info] forward holds for {forward} of {}",
            entries.len()
        ));
    }
    Ok(Verdict {
        passed,
        detail: parts.join("; "),
    })
}

fn conjecture() -> Result<Verdict, String> {
    let doc = cli_json(&["conjecture"])?;
    let all = reports(&doc, "reports");
    let consistent = all.len() == 6
        && all.iter().all(|r| {
            r["consistent"] == Value::Bool(true)
                && r["formula"] == r["config_permanent"]
                && r["matches_search"] == Value::Bool(r["exhaustive_max"] == r["formula"])
        });
    let summary: Vec<String> = all
        .iter()
        .map(|r| {
            format!(
                "({},{}) {} vs {}",
                r["n"],
                r["d"],
                r["formula"].as_str().unwrap_or("?"),
                r["exhaustive_max"].as_str().unwrap_or("-")
            )
        })
        .collect();
    Ok(Verdict {
        passed: consistent,
        detail: format!(
            "internally consistent: {consistent}; [info] formula vs search: {}",
            summary.join(", ")
        ),
    })
}

fn determinism() -> Result<Verdict, String> {
    let mut one = CLASSIFY.to_vec();
    one.extend(["--threads", "1"]);
    let mut four = CLASSIFY.to_vec();
    four.extend(["--threads", "4"]);
    let a = without_timing(&cli(&one)?)?;
    let b = without_timing(&cli(&four)?)?;
    Ok(Verdict {
        passed: a == b,
        detail: format!(
            "classify JSON with 1 and 4 threads, {} bytes each, identical: {}",
            a.len(),
            a == b
        ),
    })
}

type Criterion = (u32, &'static str, Duration, fn() -> Result<Verdict, String>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 14] = [
        (1, "formula equals exhaustive maximum", secs(60), formula_vs_search),
        (
            2,
            "maximizer classes equal the closed-form family",
            secs(60),
            classification,
        ),
        (3, "naive, Ryser and interval-DP engines agree", secs(120), engines),
        (
            4,
            "push, minor and column-support statements",
            secs(300),
            band_statements,
        ),
        (5, "Bregman bound and its equality cases", secs(300), bregman),
        (6, "ball sizes against enumeration", secs(30), balls),
        (7, "anticode size and diameter", secs(300), materialization),
        (8, "code size times anticode size at most n!", secs(120), set_antiset),
        (9, "Wanless margins above tolerance", secs(10), wanless),
        (10, "factorial root inequality", secs(10), factorial_inequality),
        (11, "maximizer component structure", secs(300), structure),
        (12, "periodicity, backward direction", secs(300), periodicity),
        (13, "conjecture report consistency", secs(300), conjecture),
        (14, "output independent of thread count", secs(120), determinism),
    ];
    let mut failures = 0;
    println!("acceptance: {} criteria", criteria.len());
    for (id, name, limit, check) in criteria {
        let started = Instant::now();
        let result = check();
        let elapsed = started.elapsed();
        let (passed, detail) = match result {
            Ok(v) => (v.passed && elapsed <= limit, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "{} {id:>2} {name} [{:.2} s, limit {} s] {detail}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
