//! The `agc` command line: batch subcommands over the `agcodes` library.
//!
//! [`run`] does all the work and returns the process exit status, so tests can
//! drive it in-process. Exit status is 0 on success, 2 for malformed flags and
//! 3 when the flags parse but violate a mathematical precondition.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use agcodes::agcode::{ag_code, ag_params, Carrier, EvalConfig, OnePointDivisor};
use agcodes::bounds::{bound_table, bound_table_csv, tvz_beats_gv};
use agcodes::code::{
    channel_weights, rs_generator, ChannelSpec, CodeParams, LinearCode, MIN_DISTANCE_BUDGET,
};
use agcodes::elliptic::{
    enumerate_points, frobenius_trace, group_structure, is_supersingular, j_invariant,
    EllipticError, GroupStructure, WeierstrassCurve,
};
use agcodes::field::{enumerate_field, field_of_order, FieldError};
use agcodes::modular::{
    count_supersingular_classes, ihara_table, ihara_table_csv, x0_ramification,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

/// Largest number of rows `bounds` will print.
pub const MAX_SAMPLES: usize = 1_000_000;
/// Largest `n * trials` the channel simulation will draw.
pub const CHANNEL_BUDGET: u64 = 1 << 28;
/// Largest generator matrix (`k * n` entries) built for `rs` and `agcode`.
pub const MATRIX_BUDGET: u64 = 1 << 22;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "agc",
    version,
    about = "Algebraic-geometry codes, bounds and curves"
)]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singleton, Plotkin, GV and TVZ rates on a uniform delta grid.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        samples: usize,
    },
    /// Where the TVZ line lies above the GV curve.
    Crossover {
        #[arg(long)]
        q: u64,
    },
    /// Parameters of the Reed-Solomon code on the first n field elements.
    Rs {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Parameters of the one-point code L(m O) on all affine points of a curve.
    Agcode {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        m: u64,
    },
    /// Invariants of an elliptic curve; with no selector, all of them.
    Elliptic(EllipticArgs),
    /// Supersingular j-invariants over F_(p^2).
    Supersingular {
        #[arg(long)]
        p: u64,
    },
    /// Genus and ramification of X_0(l) over the j-line.
    X0 {
        #[arg(long)]
        ell: u64,
    },
    /// Point/genus lower bounds for X_0(l) over F_(p^2).
    Ihara {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        ells: Vec<u64>,
    },
    /// Error weights drawn from the q-ary symmetric channel.
    Channel {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perr: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct EllipticArgs {
    #[arg(long)]
    curve: String,
    #[arg(long)]
    points: bool,
    #[arg(long)]
    group: bool,
    #[arg(long)]
    j: bool,
    #[arg(long)]
    supersingular: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parses `args` (program name first), writes the result to `out` or the
/// `--out` file, diagnostics to `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = execute(&cli.command, cli.format).and_then(|text| match &cli.out {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(text.as_bytes())?;
            Ok(())
        }
        None => Ok(out.write_all(text.as_bytes())?),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value).map_err(|e| CliError::Io(e.into()))?;
    s.push('\n');
    Ok(s)
}

/// Picks the format, rejecting the ones a subcommand cannot produce.
fn choose(
    requested: Option<Format>,
    default: Format,
    allowed: &[Format],
    cmd: &str,
) -> Result<Format, CliError> {
    let f = requested.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "`{cmd}` does not support --format {}",
            match f {
                Format::Csv => "csv",
                Format::Json => "json",
            }
        )))
    }
}

fn execute(cmd: &Command, format: Option<Format>) -> Result<String, CliError> {
    use Format::{Csv, Json};
    match cmd {
        Command::Bounds { q, samples } => {
            let fmt = choose(format, Csv, &[Csv, Json], "bounds")?;
            if *samples > MAX_SAMPLES {
                return Err(CliError::Domain(format!(
                    "samples = {samples} exceeds {MAX_SAMPLES}"
                )));
            }
            let rows = bound_table(*q, *samples).map_err(domain)?;
            match fmt {
                Csv => Ok(bound_table_csv(&rows)),
                Json => json_line(&rows),
            }
        }
        Command::Crossover { q } => {
            choose(format, Json, &[Json], "crossover")?;
            json_line(&tvz_beats_gv(*q).map_err(domain)?)
        }
        Command::Rs { q, n, k } => {
            let fmt = choose(format, Json, &[Csv, Json], "rs")?;
            let field = field_of_order(*q).map_err(domain)?;
            if *n as u64 > field.order() || *k < 1 || k > n {
                return Err(CliError::Domain(format!(
                    "need 1 <= k <= n <= q, got k = {k}, n = {n}, q = {q}"
                )));
            }
            check_matrix(*k as u64, *n as u64)?;
            let alphas = &enumerate_field(&field).map_err(domain)?[..*n];
            let code = rs_generator(alphas, *k).map_err(domain)?;
            match fmt {
                Csv => code_csv(&code),
                Json => {
                    if code.codeword_count() > MIN_DISTANCE_BUDGET {
                        return Err(CliError::Domain(format!(
                            "q^k = {q}^{k} codewords exceed the brute-force budget {MIN_DISTANCE_BUDGET}"
                        )));
                    }
                    json_line(&CodeParams::of_code(&code).map_err(domain)?)
                }
            }
        }
        Command::Agcode { curve, m } => {
            let fmt = choose(format, Json, &[Csv, Json], "agcode")?;
            let curve = parse_curve(curve)?;
            let carrier = Carrier::Elliptic(curve);
            let eval = EvalConfig::all_affine(&carrier).map_err(domain)?;
            let divisor = OnePointDivisor::new(carrier, *m);
            if *m < eval.len() as u64 {
                check_matrix((*m).max(1), eval.len() as u64)?;
            }
            match fmt {
                Csv => code_csv(&ag_code(&divisor, &eval).map_err(domain)?),
                Json => json_line(&ag_params(&divisor, &eval).map_err(domain)?),
            }
        }
        Command::Elliptic(args) => {
            choose(format, Json, &[Json], "elliptic")?;
            elliptic_report(args)
        }
        Command::Supersingular { p } => {
            choose(format, Json, &[Json], "supersingular")?;
            let scan = count_supersingular_classes(*p).map_err(domain)?;
            json_line(&SupersingularReport {
                p: *p,
                count: scan.count(),
                j_invariants: scan.j_invariants.iter().map(|j| j.to_string()).collect(),
            })
        }
        Command::X0 { ell } => {
            choose(format, Json, &[Json], "x0")?;
            json_line(&x0_ramification(*ell).map_err(domain)?)
        }
        Command::Ihara { p, ells } => {
            let fmt = choose(format, Csv, &[Csv, Json], "ihara")?;
            let rows = ihara_table(*p, ells).map_err(domain)?;
            match fmt {
                Csv => Ok(ihara_table_csv(&rows)),
                Json => json_line(
                    &rows
                        .iter()
                        .map(|r| IharaJson {
                            ell: r.ell,
                            genus: r.genus,
                            lower_bound: ratio_str(&r.ss_lower_bound),
                            ratio: ratio_str(&r.ratio),
                        })
                        .collect::<Vec<_>>(),
                ),
            }
        }
        Command::Channel {
            q,
            n,
            perr,
            trials,
            seed,
        } => {
            let fmt = choose(format, Csv, &[Csv, Json], "channel")?;
            let field = field_of_order(*q).map_err(domain)?;
            let spec = ChannelSpec::new(field, *perr, *seed).map_err(domain)?;
            let draws = (*n as u64).saturating_mul(*trials as u64);
            if draws > CHANNEL_BUDGET {
                return Err(CliError::Domain(format!(
                    "n * trials = {n} * {trials} exceeds the simulation budget {CHANNEL_BUDGET}"
                )));
            }
            let weights = channel_weights(&spec, *n, *trials);
            match fmt {
                Csv => {
                    let mut w = csv::Writer::from_writer(vec![]);
                    w.write_record(["trial", "weight"]).map_err(csv_err)?;
                    for (i, wt) in weights.iter().enumerate() {
                        w.write_record([(i + 1).to_string(), wt.to_string()])
                            .map_err(csv_err)?;
                    }
                    finish_csv(w)
                }
                Json => json_line(&ChannelReport {
                    q: *q,
                    n: *n,
                    p_err: *perr,
                    seed: *seed,
                    weights,
                }),
            }
        }
    }
}

/// Malformed syntax is a usage error; a well-formed but singular or
/// unsupported curve is a domain error.
fn parse_curve(spec: &str) -> Result<WeierstrassCurve, CliError> {
    spec.parse().map_err(|e| match e {
        EllipticError::Parse(_) | EllipticError::Field(FieldError::Parse(_)) => {
            CliError::Usage(format!("--curve: {e}"))
        }
        other => domain(other),
    })
}

fn check_matrix(k: u64, n: u64) -> Result<(), CliError> {
    if k.saturating_mul(n) > MATRIX_BUDGET {
        return Err(CliError::Domain(format!(
            "a {k} x {n} generator matrix exceeds the budget of {MATRIX_BUDGET} entries"
        )));
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// First record `q,n,k`, then one record per generator row.
fn code_csv(code: &LinearCode) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(vec![]);
    w.write_record([
        code.field().order().to_string(),
        code.len().to_string(),
        code.dimension().to_string(),
    ])
    .map_err(csv_err)?;
    for row in code.generator() {
        w.write_record(row.iter().map(|e| e.to_string()))
            .map_err(csv_err)?;
    }
    finish_csv(w)
}

fn ratio_str(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize)]
struct SupersingularReport {
    p: u64,
    count: u64,
    j_invariants: Vec<String>,
}

#[derive(Serialize)]
struct IharaJson {
    ell: u64,
    genus: u64,
    lower_bound: String,
    ratio: String,
}

#[derive(Serialize)]
struct ChannelReport {
    q: u64,
    n: usize,
    p_err: f64,
    seed: u64,
    weights: Vec<usize>,
}

#[derive(Serialize)]
struct EllipticReport {
    curve: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<GroupStructure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    supersingular: Option<bool>,
}

fn elliptic_report(args: &EllipticArgs) -> Result<String, CliError> {
    let curve = parse_curve(&args.curve)?;
    let all = !(args.points || args.group || args.j || args.supersingular);
    let mut report = EllipticReport {
        curve: curve.to_string(),
        j: None,
        order: None,
        trace: None,
        points: None,
        group: None,
        supersingular: None,
    };
    if all || args.j {
        report.j = Some(j_invariant(&curve).to_string());
    }
    if all || args.points {
        let pts = enumerate_points(&curve).map_err(domain)?;
        report.order = Some(pts.len() as u64);
        report.points = Some(pts.iter().map(|p| p.to_string()).collect());
    }
    if all || args.group {
        report.group = Some(group_structure(&curve).map_err(domain)?);
    }
    if all || args.supersingular {
        report.trace = Some(frobenius_trace(&curve).map_err(domain)?);
        report.supersingular = Some(is_supersingular(&curve).map_err(domain)?);
    }
    json_line(&report)
}
