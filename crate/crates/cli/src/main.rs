//! `interval-rank`: rank questions for interval matrices from the command line.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 a cap was hit
//! or the answer is inconclusive, 4 the question is outside what the
//! library decides.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interval_rank::matrix_file::point_matrix_json;
use interval_rank::max_rank::{max_rank_certificate, max_rank_witness, rohn_full_rank_square};
use interval_rank::min_rank3::{min_rank_3col, MinRankOptions};
use interval_rank::oracle::{rank1_feasible_log, sample_rank_bounds, vertex_max_rank};
use interval_rank::rank_one::{analyze_rank_one, mrk_is_zero, RankOneOptions};
use interval_rank::{parse_matrix_json, Error, IntervalMatrix, PointMatrix};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "interval-rank", version, about = "Minimal and maximal rank of interval matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Largest tuple size tried by the rank-one product test (default: exact bound)
    #[arg(long, global = true)]
    h_max: Option<usize>,
    /// Largest number of zero-straddling entries to split
    #[arg(long, global = true, default_value_t = 16)]
    split_cap: usize,
    /// Include witness matrices in the report
    #[arg(long, global = true)]
    witness: bool,
    /// Transpose inputs with more than 3 columns when that brings them into scope
    #[arg(long, global = true)]
    transpose: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random members drawn by `oracle sample`
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Largest number of nonconstant entries for `oracle vertex`
    #[arg(long, global = true, default_value_t = interval_rank::oracle::DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
    /// Largest order for `oracle rohn`
    #[arg(long, global = true, default_value_t = interval_rank::max_rank::DEFAULT_ROHN_CAP)]
    rohn_cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the minimal rank is 0, 1 or larger
    Rk01 { file: PathBuf },
    /// Minimal rank of a matrix with at most 3 columns
    Mrk { file: PathBuf },
    /// Maximal rank
    Maxrank { file: PathBuf },
    /// Rank range; partial when the minimal rank is out of reach
    Range { file: PathBuf },
    /// Brute-force referees
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Maximal rank over all endpoint matrices
    Vertex { file: PathBuf },
    /// Rank-one member of a reduced nonnegative matrix by negative-cycle detection
    Rank1 { file: PathBuf },
    /// Rank bounds from sampled members
    Sample { file: PathBuf },
    /// Whether every member of a square matrix is nonsingular
    Rohn { file: PathBuf },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInterval { .. } | Error::DimensionMismatch { .. } => 2,
            Error::CapExceeded { .. } => 3,
            Error::Precondition(_) | Error::OutOfScope(_) | Error::NotSquare { .. } | Error::NotMember { .. } => 4,
        };
        let message = match e {
            Error::CapExceeded { .. } => format!("inconclusive: {e}"),
            Error::OutOfScope(_) => e.to_string(),
            _ if code == 4 => format!("out of method scope: {e}"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

struct Input {
    matrix: IntervalMatrix,
    digest: String,
}

fn read_input(path: &PathBuf) -> Result<Input, Failure> {
    let io_failure = |e: std::io::Error| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    };
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map_err(io_failure)?;
    } else {
        bytes = std::fs::read(path).map_err(io_failure)?;
    }
    let text = String::from_utf8(bytes.clone()).map_err(|e| Failure {
        code: 2,
        message: format!("input is not UTF-8: {e}"),
    })?;
    Ok(Input {
        matrix: parse_matrix_json(&text)?,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

/// What a command produced before it is wrapped into a report.
struct Outcome {
    summary: String,
    result: Value,
    witness: Option<Value>,
    inconclusive: bool,
}

impl Outcome {
    fn new(summary: impl Into<String>, result: Value) -> Self {
        Outcome {
            summary: summary.into(),
            result,
            witness: None,
            inconclusive: false,
        }
    }
}

/// Matrix with at most 3 columns, transposing when allowed.
fn three_column_view(mu: &IntervalMatrix, opts: &Options) -> Option<(IntervalMatrix, bool)> {
    if mu.cols() <= 3 {
        Some((mu.clone(), false))
    } else if opts.transpose && mu.rows() <= 3 {
        Some((mu.transpose(), true))
    } else {
        None
    }
}

fn oriented(a: PointMatrix, transposed: bool) -> PointMatrix {
    if transposed {
        a.transpose()
    } else {
        a
    }
}

fn rank_one_options(opts: &Options) -> RankOneOptions {
    RankOneOptions {
        h_max: opts.h_max,
        split_cap: Some(opts.split_cap),
        witness: opts.witness,
    }
}

fn rk01(mu: &IntervalMatrix, opts: &Options) -> Result<Outcome, Failure> {
    let report = analyze_rank_one(mu, &rank_one_options(opts))?;
    let verdict = if mrk_is_zero(mu) {
        "MRK=0"
    } else if report.contains {
        "MRK=1"
    } else {
        "MRK>1"
    };
    let mut out = Outcome::new(
        verdict,
        json!({
            "verdict": verdict,
            "conclusive": report.conclusive,
            "route": report.route,
            "reduction": {"kept_rows": report.kept_rows, "kept_cols": report.kept_cols},
            "split_count": report.split_count,
            "cases": report.cases,
        }),
    );
    out.inconclusive = !report.conclusive;
    out.witness = report.witness.as_ref().map(point_matrix_json);
    Ok(out)
}

fn mrk(mu: &IntervalMatrix, opts: &Options) -> Result<Outcome, Failure> {
    let (view, transposed) = three_column_view(mu, opts).ok_or_else(|| {
        Failure::from(Error::OutOfScope(format!(
            "minimal rank needs at most 3 columns (or at most 3 rows with --transpose), got {}x{}",
            mu.rows(),
            mu.cols()
        )))
    })?;
    let report = min_rank_3col(
        &view,
        &MinRankOptions {
            split_cap: Some(opts.split_cap),
        },
    )?;
    let mut out = Outcome::new(
        format!("MRK={}", report.value),
        json!({
            "mrk": report.value,
            "route": report.route,
            "transposed": transposed,
            "split_count": report.split_count,
            "cases_examined": report.cases_examined,
            "span": report.rank_two,
        }),
    );
    if opts.witness || (1..=2).contains(&report.value) {
        out.witness = Some(point_matrix_json(&oriented(report.witness, transposed)));
    }
    Ok(out)
}

fn maxrank(mu: &IntervalMatrix, opts: &Options) -> Result<Outcome, Failure> {
    let cert = max_rank_certificate(mu);
    let mut out = Outcome::new(
        format!("MAXRANK={}", cert.rank),
        json!({
            "max_rank": cert.rank,
            "submatrix": {"rows": cert.rows, "cols": cert.cols},
            "nonconstant_diagonal": cert.diagonal.positions,
        }),
    );
    if opts.witness {
        out.witness = Some(point_matrix_json(&max_rank_witness(mu)));
    }
    Ok(out)
}

fn range(mu: &IntervalMatrix, opts: &Options) -> Result<Outcome, Failure> {
    let max = max_rank_certificate(mu).rank;
    if let Some((view, transposed)) = three_column_view(mu, opts) {
        let low = min_rank_3col(
            &view,
            &MinRankOptions {
                split_cap: Some(opts.split_cap),
            },
        )?;
        let mut out = Outcome::new(
            format!("RANGE=[{}, {}]", low.value, max),
            json!({"status": "exact", "min": low.value, "max": max, "transposed": transposed}),
        );
        if opts.witness {
            out.witness = Some(json!({
                "min": point_matrix_json(&oriented(low.witness, transposed)),
                "max": point_matrix_json(&max_rank_witness(mu)),
            }));
        }
        return Ok(out);
    }

    let report = analyze_rank_one(mu, &rank_one_options(opts))?;
    let lower = if mrk_is_zero(mu) {
        0
    } else if report.contains {
        1
    } else {
        2
    };
    let exact = lower == 0 || (lower == 1 && report.conclusive) || lower == max;
    let summary = if exact {
        format!("RANGE=[{lower}, {max}]")
    } else {
        format!("PARTIAL mrk in {{{lower}..{max}}}, MAXRANK={max}")
    };
    let mut out = Outcome::new(
        summary,
        json!({
            "status": if exact { "exact" } else { "partial" },
            "min": if exact { Some(lower) } else { None },
            "min_lower_bound": lower,
            "max": max,
        }),
    );
    out.inconclusive = !report.conclusive;
    Ok(out)
}

fn oracle(command: &OracleCommand, mu: &IntervalMatrix, opts: &Options) -> Result<Outcome, Failure> {
    Ok(match command {
        OracleCommand::Vertex { .. } => {
            let r = vertex_max_rank(mu, opts.vertex_cap)?;
            Outcome::new(format!("MAXRANK={r}"), json!({"max_rank": r}))
        }
        OracleCommand::Rank1 { .. } => {
            let found = rank1_feasible_log(mu)?;
            let mut out = Outcome::new(
                if found.is_some() { "RANK1=yes" } else { "RANK1=no" },
                json!({"rank_one": found.is_some()}),
            );
            out.witness = found.as_ref().map(point_matrix_json);
            out
        }
        OracleCommand::Sample { .. } => {
            let b = sample_rank_bounds(mu, opts.samples, opts.seed);
            Outcome::new(
                format!("MRK<={} MAXRANK>={}", b.min_rank, b.max_rank),
                json!({"mrk_upper_bound": b.min_rank, "max_rank_lower_bound": b.max_rank, "samples": b.samples}),
            )
        }
        OracleCommand::Rohn { .. } => {
            let regular = rohn_full_rank_square(mu, opts.rohn_cap)?;
            Outcome::new(format!("ALL_REGULAR={regular}"), json!({"all_members_nonsingular": regular}))
        }
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Rk01 { .. } => "rk01",
        Command::Mrk { .. } => "mrk",
        Command::Maxrank { .. } => "maxrank",
        Command::Range { .. } => "range",
        Command::Oracle(OracleCommand::Vertex { .. }) => "oracle vertex",
        Command::Oracle(OracleCommand::Rank1 { .. }) => "oracle rank1",
        Command::Oracle(OracleCommand::Sample { .. }) => "oracle sample",
        Command::Oracle(OracleCommand::Rohn { .. }) => "oracle rohn",
    }
}

fn input_path(command: &Command) -> &PathBuf {
    match command {
        Command::Rk01 { file } | Command::Mrk { file } | Command::Maxrank { file } | Command::Range { file } => file,
        Command::Oracle(
            OracleCommand::Vertex { file }
            | OracleCommand::Rank1 { file }
            | OracleCommand::Sample { file }
            | OracleCommand::Rohn { file },
        ) => file,
    }
}

fn render(cli: &Cli, input: &Input, outcome: &Outcome, millis: f64) -> String {
    let opts = &cli.opts;
    match opts.format {
        Format::Json => {
            let mut report = json!({
                "command": command_name(&cli.command),
                "input": {"sha256": input.digest, "rows": input.matrix.rows(), "cols": input.matrix.cols()},
                "summary": outcome.summary,
                "result": outcome.result,
                "inconclusive": outcome.inconclusive,
                "caps": {
                    "h_max": opts.h_max,
                    "split_cap": opts.split_cap,
                    "vertex_cap": opts.vertex_cap,
                    "rohn_cap": opts.rohn_cap,
                    "samples": opts.samples,
                    "seed": opts.seed,
                },
                "timing_ms": millis,
            });
            if let Some(w) = &outcome.witness {
                report["witness"] = w.clone();
            }
            serde_json::to_string_pretty(&report).expect("json values serialize")
        }
        Format::Text => {
            let mut text = outcome.summary.clone();
            if outcome.inconclusive {
                text.push_str(" (inconclusive)");
            }
            text.push('\n');
            if let Value::Object(fields) = &outcome.result {
                for (k, v) in fields {
                    text.push_str(&format!("{k}: {v}\n"));
                }
            }
            if let Some(w) = &outcome.witness {
                text.push_str(&format!("witness: {w}\n"));
            }
            text.push_str(&format!("input sha256: {}\n", input.digest));
            text
        }
    }
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let input = read_input(input_path(&cli.command))?;
    let mu = &input.matrix;
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Rk01 { .. } => rk01(mu, &cli.opts)?,
        Command::Mrk { .. } => mrk(mu, &cli.opts)?,
        Command::Maxrank { .. } => maxrank(mu, &cli.opts)?,
        Command::Range { .. } => range(mu, &cli.opts)?,
        Command::Oracle(sub) => oracle(sub, mu, &cli.opts)?,
    };
    let millis = start.elapsed().as_secs_f64() * 1000.0;
    Ok((render(cli, &input, &outcome, millis), outcome.inconclusive))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, inconclusive)) => {
            println!("{}", text.trim_end());
            ExitCode::from(if inconclusive { 3 } else { 0 })
        }
        Err(f) => {
            eprintln!("interval-rank: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
