//! The `degen` command line: tables, single values, identity verification.
//!
//! Exit codes: 0 on success, 1 when a verification run has failures, 2 on
//! any usage error (bad flags, malformed numbers, out-of-range indices).

mod families;
mod record;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use degen::series::{binom_lambda, dlog};
use degen::{
    list_identities, run_suite, Grid, IdentityId, LambdaPoly, LambdaSpec, Limits, Method, Rational, Scalar,
    SuiteConfig, TruncatedSeries,
};

pub use families::{eval, table, Query};
pub use record::{parse_csv, parse_json_lines, write_records, Family, Format, OutputRecord};

/// Grid bound used when `DEGEN_MAX_N` is unset.
pub const DEFAULT_MAX_N: usize = 30;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] degen::Error),
    #[error("malformed record: {0}")]
    Decode(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            CliError::Io(e.to_string())
        } else {
            CliError::Decode(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "degen",
    version,
    about = "Degenerate Stirling numbers, Bell polynomials and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a triangle (or Bell sequence) up to --n-max.
    Table(TableArgs),
    /// Emit a single value.
    Eval(EvalArgs),
    /// Check identities over a parameter grid.
    Verify(VerifyArgs),
    /// List the identity catalogue.
    List(ListArgs),
    /// Dump a generating-function building block as a truncated series.
    Series(SeriesArgs),
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long)]
    r: Option<usize>,
    /// Rational `p/q` or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<LambdaSpec>,
    #[arg(long, default_value = "series")]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<LambdaSpec>,
    /// Evaluate a Bell polynomial at this point.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<Rational>,
    #[arg(long, default_value = "series")]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated identity ids, or `all`.
    #[arg(long, default_value = "all")]
    ids: String,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Defaults to n-max + 2 so that n < k vanishing is exercised.
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long, default_value_t = 3)]
    r_max: usize,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0,1,1/2,-1/3,symbolic"
    )]
    lambda: Vec<LambdaSpec>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1/2,1,2")]
    x: Vec<Rational>,
    /// Absolute tolerance for the two Dobinski-type identities.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report wall-clock time instead of 0 in `elapsed_ms`.
    #[arg(long, hide = true)]
    timing: bool,
    /// Perturb one identity's right-hand side to exercise failure reporting.
    #[arg(long, hide = true)]
    inject_fault: Option<IdentityId>,
}

#[derive(Debug, Args)]
struct ListArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// log(1 + λt)/λ
    Dlog,
    /// (1 + λt)^{a/λ}
    Binom,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    kind: SeriesKind,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, allow_hyphen_values = true)]
    lambda: LambdaSpec,
    /// Exponent numerator for `binom`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Rational>,
}

/// Reads `DEGEN_MAX_N`.
pub fn max_n_from_env(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_MAX_N),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("DEGEN_MAX_N must be a non-negative integer, got {v:?}"))),
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, max_n: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, max_n, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, max_n: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Table(a) => {
            let rows = table(a.family, a.n_max, a.r, a.lambda.as_ref(), a.method, max_n)?;
            write_records(&rows, a.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Eval(a) => {
            let q = Query {
                family: a.family,
                n: a.n,
                k: a.k,
                r: a.r,
                lambda: a.lambda,
                x: a.x,
                method: a.method,
            };
            write_records(&[eval(&q, max_n)?], a.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => verify(a, max_n, out),
        Command::List(a) => {
            list(a.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Series(a) => {
            series(&a, max_n, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn parse_ids(spec: &str) -> Result<Vec<IdentityId>, CliError> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(IdentityId::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e: degen::Error| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn verify(a: VerifyArgs, max_n: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let ids = parse_ids(&a.ids)?;
    let grid = Grid {
        n_max: a.n_max,
        k_max: a.k_max.unwrap_or(a.n_max + 2),
        r_max: a.r_max,
        lambdas: a.lambda,
        xs: a.x,
        tol: a.tol,
    };
    let limits = Limits {
        max_n,
        ..Limits::default()
    };
    grid.validate(&limits).map_err(|e| CliError::Usage(e.to_string()))?;
    let config = SuiteConfig {
        ids,
        grid,
        limits,
        inject_fault: a.inject_fault,
    };
    let reports = run_suite(&config);
    let elapsed = |r: &degen::VerificationReport| if a.timing { r.elapsed.as_millis() as u64 } else { 0 };
    match a.format {
        Format::Json => {
            for r in &reports {
                writeln!(out, "{}", r.to_json_with_elapsed(elapsed(r)))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["identity", "status", "checked", "failures", "elapsed_ms", "error"])?;
            for r in &reports {
                let status = if r.passed() { "pass" } else { "fail" };
                w.write_record([
                    r.identity.to_string(),
                    status.to_string(),
                    r.checked.to_string(),
                    r.failures.len().to_string(),
                    elapsed(r).to_string(),
                    r.error.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn list(format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let catalogue = list_identities();
    match format {
        Format::Json => {
            for info in &catalogue {
                let v = serde_json::to_value(info).map_err(|e| CliError::Io(e.to_string()))?;
                writeln!(out, "{v}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["id", "location", "numeric", "statement"])?;
            for info in &catalogue {
                w.write_record([
                    info.id.as_str(),
                    info.location,
                    if info.numeric { "true" } else { "false" },
                    info.statement,
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn series(a: &SeriesArgs, max_n: usize, out: &mut dyn Write) -> Result<(), CliError> {
    if a.order > max_n {
        return Err(CliError::Usage(format!(
            "order {} exceeds the configured bound {max_n} (DEGEN_MAX_N)",
            a.order
        )));
    }
    let exponent = match (a.kind, &a.a) {
        (SeriesKind::Binom, None) => return Err(CliError::Usage("--kind binom needs --a".into())),
        (SeriesKind::Dlog, Some(_)) => return Err(CliError::Usage("--kind dlog takes no --a".into())),
        (_, a) => a.clone(),
    };
    let coeffs = match &a.lambda {
        LambdaSpec::Fixed(l) => build(a.kind, l, exponent.as_ref(), a.order),
        LambdaSpec::Symbolic => build(a.kind, &LambdaPoly::lambda(), exponent.as_ref(), a.order),
    };
    let line = json!({
        "kind": match a.kind { SeriesKind::Dlog => "dlog", SeriesKind::Binom => "binom" },
        "lambda": a.lambda.to_string(),
        "a": exponent.map(|q| q.to_string()),
        "order": a.order,
        "coeffs": coeffs,
    });
    writeln!(out, "{line}")?;
    Ok(())
}

fn build<S: Scalar>(kind: SeriesKind, lambda: &S, a: Option<&Rational>, order: usize) -> Value {
    let s: TruncatedSeries<S> = match (kind, a) {
        (SeriesKind::Binom, Some(a)) => binom_lambda(&S::from_rational(a), lambda, order),
        _ => dlog(lambda, order),
    };
    s.to_json()
}
