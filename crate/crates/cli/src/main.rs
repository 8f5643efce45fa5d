//! Command-line front end for the exact radial-moment engine.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch or I/O failure,
//! 2 on a usage error (clap reports those itself), 3 when a computation
//! is refused because it would exceed the term limit.

mod render;

use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use radial_core::{
    expand_power, generating_operator, moment_series, opval_moment_closed, opval_moment_series,
    power_support_size, verify_all, CommutatorSpec, GroupSpec, TermLimit,
};

const TERM_LIMIT_ENV: &str = "RADIAL_TERM_LIMIT";

#[derive(Parser)]
#[command(
    name = "radial",
    version,
    about = "Exact moments of the radial element g_1+..+g_N+g_1^-1+..+g_N^-1 in a free group algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand G^n over the sphere basis X_0, X_1, ...
    Expand(ExpandArgs),
    /// Tabulate the scalar moments tau(G^n) for n = 1..=max
    Moments(MomentsArgs),
    /// Operator-valued moments E(G^n) over the commutator subalgebra
    Opval(OpvalArgs),
    /// Cross-check the recurrence against brute-force convolution and walk counts
    Verify(VerifyArgs),
    /// Time the recurrence sweep and the brute-force power chain
    Bench(BenchArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Number of free generators
    #[arg(
        long = "N",
        value_name = "COUNT",
        default_value_t = 2,
        value_parser = clap::value_parser!(u32).range(2..=26)
    )]
    generators: u32,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Cap on materialized word-level terms; defaults to the
    /// RADIAL_TERM_LIMIT environment variable, then 20000000
    #[arg(long, value_name = "COUNT")]
    term_limit: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Power of G to expand
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Largest power to tabulate
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max: u64,
}

#[derive(Args)]
#[command(group(ArgGroup::new("scope").required(true).args(["n", "max"])))]
struct OpvalArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Single power of G
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,

    /// Tabulate all powers 1..=max
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Largest power checked against brute-force convolution
    #[arg(
        long = "max-brute",
        value_name = "N",
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    max_brute: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Largest power for the recurrence sweep
    #[arg(
        long,
        default_value_t = 1000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    max: u64,

    /// Also time the brute-force power chain up to this power
    #[arg(
        long = "max-brute",
        alias = "brute-max",
        value_name = "N",
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    max_brute: Option<u64>,
}

/// A failure that maps to a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn io(err: io::Error) -> Self {
        Self {
            code: 1,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Expand(args) => run_expand(args),
        Command::Moments(args) => run_moments(args),
        Command::Opval(args) => run_opval(args),
        Command::Verify(args) => run_verify(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn group_spec(common: &CommonArgs) -> GroupSpec {
    GroupSpec::new(common.generators).expect("clap bounds the generator count")
}

/// Flag beats environment beats default.
fn resolve_term_limit(common: &CommonArgs) -> Result<TermLimit, Failure> {
    if let Some(value) = common.term_limit {
        return Ok(TermLimit::new(value));
    }
    match env::var(TERM_LIMIT_ENV) {
        Ok(text) => match text.trim().parse::<u64>() {
            Ok(value) => Ok(TermLimit::new(value)),
            Err(_) => Err(Failure::usage(format!(
                "{TERM_LIMIT_ENV} must be an unsigned integer, got {text:?}"
            ))),
        },
        Err(env::VarError::NotPresent) => Ok(TermLimit::default()),
        Err(env::VarError::NotUnicode(_)) => Err(Failure::usage(format!(
            "{TERM_LIMIT_ENV} is not valid unicode"
        ))),
    }
}

fn emit(target: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match target {
        Some(path) => fs::write(path, text).map_err(Failure::io),
        None => {
            let stdout = io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(text.as_bytes())
                .and_then(|()| handle.flush())
                .map_err(Failure::io)
        }
    }
}

fn run_expand(args: ExpandArgs) -> Result<ExitCode, Failure> {
    let vector = expand_power(group_spec(&args.common), args.n as usize);
    let text = match args.common.format {
        Format::Json => {
            let mut doc = vector.to_json_string();
            doc.push('\n');
            doc
        }
        Format::Csv => render::expansion_csv(&vector),
        Format::Pretty => render::expansion_pretty(&vector),
    };
    emit(&args.common.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_moments(args: MomentsArgs) -> Result<ExitCode, Failure> {
    let table = moment_series(group_spec(&args.common), args.max as usize);
    let text = match args.common.format {
        Format::Json => {
            let mut doc = table.to_json_string();
            doc.push('\n');
            doc
        }
        Format::Csv => table.to_csv_string(),
        Format::Pretty => render::moments_pretty(&table),
    };
    emit(&args.common.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_opval(args: OpvalArgs) -> Result<ExitCode, Failure> {
    let cspec = CommutatorSpec::new(group_spec(&args.common));
    let rows: Vec<(usize, radial_core::LaurentInH)> = match (args.n, args.max) {
        (Some(n), None) => vec![(n as usize, opval_moment_closed(&cspec, n as usize))],
        (None, Some(max)) => opval_moment_series(&cspec, max as usize).rows().to_vec(),
        _ => unreachable!("clap enforces exactly one of --n and --max"),
    };
    let text = match args.common.format {
        Format::Json => render::opval_json(&rows, args.max.is_some()),
        Format::Csv => render::opval_csv(&rows),
        Format::Pretty => render::opval_pretty(&rows),
    };
    emit(&args.common.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let limit = resolve_term_limit(&args.common)?;
    let cspec = CommutatorSpec::new(group_spec(&args.common));
    let report = verify_all(&cspec, args.max_brute as usize, limit);
    let text = match args.common.format {
        Format::Json => {
            let mut doc = report.to_json_string();
            doc.push('\n');
            doc
        }
        Format::Csv => render::verify_csv(&report),
        Format::Pretty => render::verify_pretty(&report),
    };
    emit(&args.common.out, &text)?;
    Ok(if report.all_match() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Timing report for the two computation paths: the recurrence sweep is
/// timed at ladder checkpoints, the brute-force chain power by power
/// until done or refused by the term limit.
pub struct BenchReport {
    pub generators: u32,
    pub term_limit: u64,
    pub recurrence: Vec<RecurrenceTiming>,
    pub brute: Vec<BruteTiming>,
    pub notes: Vec<String>,
}

pub struct RecurrenceTiming {
    pub n: usize,
    pub ms: u64,
}

pub struct BruteTiming {
    pub n: usize,
    pub ms: u64,
    pub terms: usize,
    pub predicted: String,
}

fn checkpoint_ladder(max: u64) -> Vec<usize> {
    let mut points = Vec::new();
    let mut scale: u64 = 1;
    loop {
        for step in [1u64, 2, 5] {
            let value = step.saturating_mul(scale);
            if value >= max {
                points.push(max as usize);
                return points;
            }
            points.push(value as usize);
        }
        scale = scale.saturating_mul(10);
    }
}

fn run_bench(args: BenchArgs) -> Result<ExitCode, Failure> {
    let spec = group_spec(&args.common);
    let limit = resolve_term_limit(&args.common)?;
    let mut report = BenchReport {
        generators: spec.generators(),
        term_limit: limit.get(),
        recurrence: Vec::new(),
        brute: Vec::new(),
        notes: Vec::new(),
    };

    for n in checkpoint_ladder(args.max) {
        let started = Instant::now();
        let table = moment_series(spec, n);
        let ms = started.elapsed().as_millis() as u64;
        debug_assert_eq!(table.rows().len(), n);
        report.recurrence.push(RecurrenceTiming { n, ms });
    }

    let mut refused = false;
    if let Some(max_brute) = args.max_brute {
        let g = generating_operator(spec);
        let mut power = g.clone();
        for n in 1..=max_brute as usize {
            let started = Instant::now();
            if n > 1 {
                match g.multiply_within(&power, limit) {
                    Ok(next) => power = next,
                    Err(err) => {
                        report
                            .notes
                            .push(format!("brute force stopped before n={n}: {err}"));
                        refused = true;
                        break;
                    }
                }
            }
            report.brute.push(BruteTiming {
                n,
                ms: started.elapsed().as_millis() as u64,
                terms: power.term_count(),
                predicted: power_support_size(spec, n).to_string(),
            });
        }
    }

    let text = match args.common.format {
        Format::Json => render::bench_json(&report),
        Format::Csv => render::bench_csv(&report),
        Format::Pretty => render::bench_pretty(&report),
    };
    emit(&args.common.out, &text)?;
    if refused {
        eprintln!(
            "error: {}",
            report.notes.last().expect("a refusal was noted")
        );
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
