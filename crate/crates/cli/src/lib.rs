//! Command-line front end for `anticode-core`.
//!
//! [`run`] parses an argument vector, executes one subcommand and writes a
//! single JSON document, CSV table or plain value. JSON objects keep a fixed
//! field order; wall-clock measurements go in a trailing `"timing"` object,
//! which is the only part of the output allowed to differ between runs.

mod commands;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anticode_core::search::SearchOptions;
use anticode_core::EngineKind;
use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

/// Environment variable overriding the default search budget in seconds.
pub const BUDGET_ENV: &str = "ANTICODE_LAB_BUDGET_SECONDS";

const DEFAULT_BUDGET_SECONDS: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Permanent of a matrix given with --config or --file
    Perm,
    /// Exhaustive maximum over sorted band configurations
    Search,
    /// Compare search maximizers with the closed-form family
    Classify,
    /// Component structure of every maximizer
    Structure,
    /// Maximizers for n and n + d compared through full-block stripping
    Periodicity,
    /// Closed-form maximum permanent
    Formula,
    /// Conjectured optimum against its own permanent and the search
    Conjecture,
    /// Margins k^2 - B(k, v)
    Wanless,
    /// Size of an infinity-metric ball in S_n
    Ball,
    /// Set-antiset bound on code size
    Bound,
    /// Permutations of an anticode matrix
    Anticode,
    /// Largest code by clique search
    Maxcode,
    /// Property suite at reduced ranges
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "anticode-lab",
    version,
    about = "Permanents of banded (0,1)-matrices and optimal anticodes in S_n"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Matrix order, or n_max for selftest
    #[arg(long)]
    pub n: Option<usize>,
    /// Block length (dmin for maxcode)
    #[arg(long)]
    pub d: Option<usize>,
    /// Ball radius
    #[arg(long)]
    pub r: Option<usize>,
    /// Single k for wanless
    #[arg(long)]
    pub k: Option<usize>,
    /// First n (or k) of a range
    #[arg(long, requires = "to")]
    pub from: Option<usize>,
    /// Last n (or k) of a range, inclusive
    #[arg(long, requires = "from")]
    pub to: Option<usize>,
    /// Permanent engine: naive, ryser, dp or auto
    #[arg(long, default_value = "auto", value_parser = parse_engine)]
    pub engine: EngineKind,
    /// Worker threads [default: available parallelism]
    #[arg(long, value_parser = parse_positive)]
    pub threads: Option<usize>,
    /// Wall-clock cap per search, overriding ANTICODE_LAB_BUDGET_SECONDS [default: 300]
    #[arg(long, value_parser = parse_seconds)]
    pub budget_seconds: Option<f64>,
    /// Output format; perm, formula, ball and bound default to plain, the rest to json
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Matrix as inline JSON
    #[arg(long, conflicts_with = "file")]
    pub config: Option<String>,
    /// Matrix JSON file
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Write output to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_engine(s: &str) -> Result<EngineKind, String> {
    s.parse().map_err(|e: anticode_core::error::Error| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number of seconds, got {s:?}")),
    }
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Compute(anticode_core::error::Error),
    Io(String),
}

impl From<anticode_core::error::Error> for CliError {
    fn from(e: anticode_core::error::Error) -> Self {
        CliError::Compute(e)
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// What a subcommand produced, in every format it supports.
pub(crate) struct Rendered {
    pub json: Value,
    pub plain: String,
    pub csv: Option<String>,
    /// Set when the command ran but its checks failed.
    pub failure: Option<String>,
}

impl Rendered {
    pub fn new(json: Value, plain: String) -> Self {
        Rendered {
            json,
            plain,
            csv: None,
            failure: None,
        }
    }
}

/// Settings shared by all subcommands.
pub(crate) struct Context {
    pub args: Args,
    pub search: SearchOptions,
    pub format: Format,
}

impl Context {
    pub fn require(&self, value: Option<usize>, flag: &str) -> CliResult<usize> {
        value.ok_or_else(|| CliError::Usage(format!("{:?} requires --{flag}", self.args.command).to_lowercase()))
    }

    pub fn range(&self) -> Option<(usize, usize)> {
        self.args.from.zip(self.args.to)
    }
}

fn default_format(command: Command) -> Format {
    match command {
        Command::Perm | Command::Formula | Command::Ball | Command::Bound => Format::Plain,
        _ => Format::Json,
    }
}

fn budget(args: &Args) -> CliResult<Duration> {
    if let Some(s) = args.budget_seconds {
        return Ok(Duration::from_secs_f64(s));
    }
    match std::env::var(BUDGET_ENV) {
        Ok(text) => parse_seconds(text.trim())
            .map(Duration::from_secs_f64)
            .map_err(|e| CliError::Usage(format!("{BUDGET_ENV}: {e}"))),
        Err(_) => Ok(Duration::from_secs_f64(DEFAULT_BUDGET_SECONDS)),
    }
}

fn build_context(args: Args) -> CliResult<Context> {
    let format = args.format.unwrap_or_else(|| default_format(args.command));
    if format == Format::Csv && !matches!(args.command, Command::Search | Command::Wanless) {
        return Err(CliError::Usage(
            "--format csv is only supported by search and wanless".into(),
        ));
    }
    let search = SearchOptions {
        threads: args.threads,
        max_duration: budget(&args)?,
        engine: args.engine,
        ..SearchOptions::default()
    };
    Ok(Context { args, search, format })
}

fn render(ctx: &Context, rendered: &mut Rendered, elapsed: Duration) -> String {
    match ctx.format {
        Format::Json => {
            if let Value::Object(map) = &mut rendered.json {
                map.insert("timing".into(), json!({ "elapsed_ms": elapsed.as_secs_f64() * 1e3 }));
            }
            let mut text = serde_json::to_string_pretty(&rendered.json).expect("JSON values serialize");
            text.push('\n');
            text
        }
        Format::Csv => rendered.csv.take().unwrap_or_default(),
        Format::Plain => {
            let mut text = std::mem::take(&mut rendered.plain);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            text
        }
    }
}

fn emit(ctx: &Context, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match &ctx.args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let doc = json!({ "error": { "kind": kind, "message": message } });
    format!("{doc}\n")
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code: 0 on success, 1 on a computation error, 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let started = Instant::now();
    let result = build_context(args).and_then(|ctx| {
        let mut rendered = commands::execute(&ctx)?;
        let text = render(&ctx, &mut rendered, started.elapsed());
        emit(&ctx, &text, out)?;
        Ok(rendered.failure)
    });
    match result {
        Ok(None) => 0,
        Ok(Some(failure)) => {
            let _ = err.write_all(error_json("CheckFailed", &failure).as_bytes());
            1
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Compute(e)) => {
            let _ = err.write_all(error_json(e.kind(), &e.to_string()).as_bytes());
            1
        }
        Err(CliError::Io(msg)) => {
            let _ = err.write_all(error_json("Io", &msg).as_bytes());
            1
        }
    }
}
