//! Command-line front end. `run` parses arguments, dispatches and returns the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or the property holds |
//! | 2 | usage, input or I/O error |
//! | 3 | the property does not hold (not an omnimosaic, target absent, none found) |
//! | 4 | search budget exceeded |
//!
//! Payloads go to stdout, diagnostics to stderr. JSON documents carry
//! `"schema": "omnikit/1"` and a `"command"` tag.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, ColorChoice, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    asymptotic_lower, check_lemma_properties, construction_upper, pigeonhole_min_n, suen_report,
    suen_threshold_n,
};
use crate::construct::{
    build_mosaic, canonical_grid, higher_dim_side_estimate, locate, square_omnimosaic, thin_strip,
};
use crate::error::{Error, Result};
use crate::experiments::{
    conjecture_table, estimate, exact_enumeration, exact_suen_inputs, oned_count_collections,
    oned_missing_count, text_to_sequence, ExperimentConfig,
};
use crate::format::{parse_matrix, serialize_matrix};
use crate::matrix::{Alphabet, MosaicMatrix};
use crate::search::{exists_omnimosaic_with, min_omnimosaic_n, SearchBudget, SearchOptions, SearchStatus};
use crate::target::{decode_target, encode_target, TargetCode};
use crate::verify::{contains_target, is_omnimosaic_with, verify_placement, VerifyOptions};
use crate::SCHEMA;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FALSE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "omnikit", version, about = "Construct, verify and search for omnimosaics")]
struct Cli {
    /// Worker threads (default: available parallelism; 1 runs sequentially).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Include wall-clock timings in reports (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an explicit omnimosaic.
    Construct(ConstructArgs),
    /// Check that a matrix contains every k x k target.
    Verify(VerifyArgs),
    /// Place a target inside the grid construction without searching.
    Locate(LocateArgs),
    /// Find the leftmost placement of one target in a matrix.
    Contains(ContainsArgs),
    /// Exhaustive search for the smallest omnimosaic.
    Search(SearchArgs),
    /// Counting bounds and the random-matrix existence certificate.
    Bounds(BoundsArgs),
    /// Monte-Carlo estimate for random matrices.
    Sample(SampleArgs),
    /// Exact statistics over all matrices of a tiny size.
    Exact(ExactArgs),
    /// One-dimensional case: which k-letter words a sequence contains.
    Oned(OnedArgs),
    /// Monte-Carlo estimates over a range of sizes, as CSV.
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Square,
    Grid,
    Strip,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: u32,
    #[arg(long, value_enum, default_value_t = Variant::Square)]
    variant: Variant,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report the estimated side length for d-dimensional arrays instead.
    #[arg(long, conflicts_with_all = ["variant", "format"])]
    d: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    /// Matrix file in v1 format; stdin when absent or `-`.
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Coverage bitset limit as a power of two.
    #[arg(long, default_value_t = crate::verify::DEFAULT_GUARD_BITS)]
    guard_bits: u32,
    /// How many missing target codes to list.
    #[arg(long, default_value_t = crate::verify::DEFAULT_MISSING_CAP)]
    missing_cap: usize,
}

#[derive(Args, Debug)]
struct LocateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: u32,
    /// Target as its row-major base-a code.
    #[arg(long, required_unless_present = "target_file", conflicts_with = "target_file")]
    target: Option<u64>,
    /// Target as a v1 matrix file.
    #[arg(long)]
    target_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ContainsArgs {
    /// Target matrix file (v1 format).
    #[arg(long)]
    target: PathBuf,
    /// Matrix file; stdin when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: u32,
    /// Decide a single size instead of searching upward from the counting bound.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1 << 40)]
    max_nodes: u64,
    #[arg(long, default_value_t = 3600.0)]
    max_seconds: f64,
    /// Checkpoint file of exhausted first-row branches (needs --n).
    #[arg(long, requires = "n")]
    checkpoint: Option<PathBuf>,
    /// Diagnostic: also force nondecreasing rows (verdicts are not proofs).
    #[arg(long)]
    row_order: bool,
    /// Diagnostic: also force nondecreasing columns (verdicts are not proofs).
    #[arg(long)]
    column_order: bool,
    /// Search even where the explicit construction already fits.
    #[arg(long)]
    no_construction: bool,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    a: u32,
    /// Evaluate at this size instead of the estimated threshold.
    #[arg(long)]
    n: Option<u64>,
    /// Also check the structural properties of the pair-count function.
    #[arg(long)]
    lemmas: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: u32,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: u32,
    /// Include the per-target table of missing probabilities.
    #[arg(long)]
    table: bool,
    /// Include the exact inputs of the correlation inequality.
    #[arg(long)]
    suen: bool,
}

#[derive(Args, Debug)]
struct OnedArgs {
    #[arg(long)]
    k: usize,
    /// Alphabet size for digit sequences (text files always use 26).
    #[arg(long, default_value_t = 2)]
    a: u32,
    /// Sequence of digits, e.g. 0110.
    #[arg(required_unless_present = "text", conflicts_with = "text")]
    sequence: Option<String>,
    /// Text file; its letters form a sequence over 26 symbols.
    #[arg(long)]
    text: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    n_from: usize,
    #[arg(long)]
    n_to: usize,
    #[arg(long, default_value_t = 1)]
    n_step: usize,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = if std::env::var_os("NO_COLOR").is_some() {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let cli = match <Cli as clap::CommandFactory>::command()
        .color(color)
        .try_get_matches_from(args)
        .and_then(|m| <Cli as clap::FromArgMatches>::from_arg_matches(&m))
    {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };

    let mut out: Vec<u8> = Vec::new();
    let result = match cli.workers {
        Some(0) => Err(Error::InvalidArgument("--workers must be at least 1".into())),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut out)),
            Err(e) => Err(Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli, &mut out),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(&out).and_then(|_| stdout.flush());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("omnikit: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("I/O error: {e}"))
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        }
    }
}

fn read_matrix(path: Option<&PathBuf>) -> Result<MosaicMatrix> {
    parse_matrix(&read_input(path)?)
}

fn emit_json(out: &mut impl Write, command: &str, payload: impl Serialize) -> Result<()> {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    let value = serde_json::to_value(payload).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    match value {
        Value::Object(map) => doc.as_object_mut().expect("object").extend(map),
        other => {
            doc["result"] = other;
        }
    }
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let timings = cli.timings;
    match &cli.command {
        Command::Construct(args) => construct_cmd(args, out),
        Command::Verify(args) => verify_cmd(args, timings, out),
        Command::Locate(args) => locate_cmd(args, out),
        Command::Contains(args) => contains_cmd(args, out),
        Command::Search(args) => search_cmd(args, cli.workers, timings, out),
        Command::Bounds(args) => bounds_cmd(args, out),
        Command::Sample(args) => {
            let stats = estimate(&ExperimentConfig::new(args.n, args.k, args.a, args.trials, args.seed))?;
            emit_json(out, "sample", json!({ "seed": args.seed, "trials": args.trials, "stats": stats }))?;
            Ok(EXIT_OK)
        }
        Command::Exact(args) => exact_cmd(args, out),
        Command::Oned(args) => oned_cmd(args, out),
        Command::Sweep(args) => sweep_cmd(args, out),
    }
}

fn construct_cmd(args: &ConstructArgs, out: &mut impl Write) -> Result<i32> {
    if let Some(d) = args.d {
        let side = higher_dim_side_estimate(args.k, args.a, d)?;
        emit_json(out, "construct", json!({ "k": args.k, "a": args.a, "d": d, "side_estimate": side }))?;
        return Ok(EXIT_OK);
    }
    let alphabet = Alphabet::new(args.a)?;
    let m = match args.variant {
        Variant::Square => square_omnimosaic(args.k, alphabet)?,
        Variant::Grid => build_mosaic(&canonical_grid(args.k), alphabet)?.0,
        Variant::Strip => thin_strip(args.k, alphabet)?,
    };
    match args.format {
        Format::Text => write!(out, "{}", serialize_matrix(&m)).map_err(io_err)?,
        Format::Json => emit_json(
            out,
            "construct",
            json!({
                "k": args.k,
                "a": args.a,
                "variant": format!("{:?}", args.variant).to_lowercase(),
                "rows": m.rows(),
                "cols": m.cols(),
                "matrix": m.to_rows(),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

fn verify_cmd(args: &VerifyArgs, timings: bool, out: &mut impl Write) -> Result<i32> {
    let m = read_matrix(args.file.as_ref())?;
    let opts = VerifyOptions {
        guard_bits: args.guard_bits,
        missing_cap: args.missing_cap,
    };
    let mut report = is_omnimosaic_with(&m, args.k, opts)?;
    if !timings {
        report.elapsed_seconds = None;
    }
    match args.format {
        Format::Json => emit_json(out, "verify", &report)?,
        Format::Text => {
            let verdict = if report.is_omni { "omnimosaic" } else { "not an omnimosaic" };
            writeln!(
                out,
                "{}x{} over {} letters, k={}: {} ({}/{} targets)",
                report.rows, report.cols, report.a, report.k, verdict, report.covered, report.targets
            )
            .map_err(io_err)?;
            if !report.missing_sample.is_empty() {
                let codes: Vec<String> = report.missing_sample.iter().map(u64::to_string).collect();
                writeln!(out, "missing: {}", codes.join(" ")).map_err(io_err)?;
            }
        }
    }
    Ok(if report.is_omni { EXIT_OK } else { EXIT_FALSE })
}

fn locate_cmd(args: &LocateArgs, out: &mut impl Write) -> Result<i32> {
    let alphabet = Alphabet::new(args.a)?;
    let target = match (&args.target, &args.target_file) {
        (Some(code), _) => decode_target(TargetCode::new(*code, args.k, alphabet)?)?,
        (None, path) => read_matrix(path.as_ref())?,
    };
    if target.rows() != args.k || target.cols() != args.k || target.alphabet() != alphabet {
        return Err(Error::Shape(format!(
            "target must be {k}x{k} over {a} letters",
            k = args.k,
            a = args.a
        )));
    }
    let grid = canonical_grid(args.k);
    let (m, map) = build_mosaic(&grid, alphabet)?;
    let placement = locate(&map, &grid, &target)?;
    let verified = verify_placement(&m, &placement, &target);
    emit_json(
        out,
        "locate",
        json!({
            "k": args.k,
            "a": args.a,
            "code": encode_target(&target)?.code,
            "rows": m.rows(),
            "cols": m.cols(),
            "placement": placement,
            "verified": verified,
        }),
    )?;
    Ok(if verified { EXIT_OK } else { EXIT_FALSE })
}

fn contains_cmd(args: &ContainsArgs, out: &mut impl Write) -> Result<i32> {
    let target = read_matrix(Some(&args.target))?;
    let m = read_matrix(args.file.as_ref())?;
    let placement = contains_target(&m, &target)?;
    let found = placement.is_some();
    emit_json(out, "contains", json!({ "found": found, "placement": placement }))?;
    Ok(if found { EXIT_OK } else { EXIT_FALSE })
}

fn status_code(s: SearchStatus) -> i32 {
    match s {
        SearchStatus::Found => EXIT_OK,
        SearchStatus::ExhaustedNone => EXIT_FALSE,
        SearchStatus::BudgetExceeded => EXIT_BUDGET,
    }
}

fn search_cmd(args: &SearchArgs, workers: Option<usize>, timings: bool, out: &mut impl Write) -> Result<i32> {
    if !(args.max_seconds > 0.0 && args.max_seconds.is_finite()) {
        return Err(Error::InvalidArgument("--max-seconds must be positive".into()));
    }
    let budget = SearchBudget {
        max_nodes: args.max_nodes,
        max_time: Duration::from_secs_f64(args.max_seconds),
    };
    let opts = SearchOptions {
        parallel: workers != Some(1),
        row_order: args.row_order,
        column_order: args.column_order,
        checkpoint: args.checkpoint.clone(),
        use_construction: !args.no_construction,
    };
    let strip = |mut r: crate::search::SearchResult| {
        if !timings {
            r.elapsed_seconds = None;
        }
        r
    };
    match args.n {
        Some(n) => {
            let r = strip(exists_omnimosaic_with(n, args.k, args.a, budget, &opts)?);
            let code = status_code(r.status);
            emit_json(out, "search", &r)?;
            Ok(code)
        }
        None => {
            let trace: Vec<_> = min_omnimosaic_n(args.k, args.a, budget, &opts)?
                .into_iter()
                .map(|(_, r)| strip(r))
                .collect();
            let last = trace.last().map(|r| r.status).unwrap_or(SearchStatus::BudgetExceeded);
            let omega = (last == SearchStatus::Found && trace.iter().all(|r| r.sound))
                .then(|| trace.last().map(|r| r.n))
                .flatten();
            emit_json(
                out,
                "search",
                json!({ "k": args.k, "a": args.a, "omega": omega, "trace": trace }),
            )?;
            Ok(status_code(last))
        }
    }
}

fn bounds_cmd(args: &BoundsArgs, out: &mut impl Write) -> Result<i32> {
    Alphabet::new(args.a)?;
    if args.k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let threshold = suen_threshold_n(args.k, args.a);
    let n = args.n.unwrap_or(threshold.estimate);
    let mut doc = json!({
        "k": args.k,
        "a": args.a,
        "n": n,
        "pigeonhole_min_n": pigeonhole_min_n(args.k, args.a),
        "asymptotic_lower": asymptotic_lower(args.k, args.a),
        "construction_upper": construction_upper(args.k, args.a).to_string(),
        "threshold": threshold,
        "report": suen_report(n, args.k, args.a),
    });
    if args.lemmas {
        doc["lemmas"] = serde_json::to_value(check_lemma_properties(n, args.k, args.a))
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    emit_json(out, "bounds", doc)?;
    Ok(EXIT_OK)
}

fn exact_cmd(args: &ExactArgs, out: &mut impl Write) -> Result<i32> {
    let counts = exact_enumeration(args.n, args.k, args.a)?;
    let mut doc = json!({
        "n": args.n,
        "k": args.k,
        "a": args.a,
        "matrices": counts.total,
        "omni": counts.omni,
        "p_omni": counts.p_omni().to_string(),
        "ex_missing": counts.ex_missing().to_string(),
        "stats": counts.to_stats(),
    });
    if args.table {
        doc["table"] = serde_json::to_value(conjecture_table(args.n, args.k, args.a)?)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    if args.suen {
        let s = exact_suen_inputs(args.n, args.k, args.a)?;
        let p_mono = counts.p_missing(0);
        doc["suen"] = json!({
            "mu": s.mu_exact.to_string(),
            "delta_pairs": s.delta_pairs_exact.to_string(),
            "delta_max": s.delta_max_exact.to_string(),
            "upper_bound": s.upper_bound(),
            "p_monochromatic_missing": p_mono.to_string(),
        });
    }
    emit_json(out, "exact", doc)?;
    Ok(EXIT_OK)
}

fn oned_cmd(args: &OnedArgs, out: &mut impl Write) -> Result<i32> {
    let (seq, a) = match (&args.sequence, &args.text) {
        (Some(s), _) => {
            Alphabet::new(args.a)?;
            let seq = s
                .chars()
                .map(|c| {
                    c.to_digit(36)
                        .filter(|&d| d < args.a)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidArgument(format!("`{c}` is not a letter below {}", args.a)))
                })
                .collect::<Result<Vec<u8>>>()?;
            (seq, args.a)
        }
        (None, path) => (text_to_sequence(&read_input(path.as_ref())?), 26),
    };
    let collections = oned_count_collections(&seq, a);
    let mut doc = json!({
        "k": args.k,
        "a": a,
        "length": seq.len(),
        "collections": collections,
        "is_omni": collections >= args.k,
    });
    if (a as f64).powi(args.k as i32) <= 1e6 {
        doc["missing"] = json!(oned_missing_count(&seq, args.k, a));
    }
    emit_json(out, "oned", doc)?;
    Ok(EXIT_OK)
}

fn sweep_cmd(args: &SweepArgs, out: &mut impl Write) -> Result<i32> {
    if args.n_step == 0 || args.n_from > args.n_to {
        return Err(Error::InvalidArgument("need n_from <= n_to and n_step >= 1".into()));
    }
    writeln!(out, "n,k,a,trials,p_omni,p_omni_stderr,ex_missing,ex_missing_stderr").map_err(io_err)?;
    for n in (args.n_from..=args.n_to).step_by(args.n_step) {
        let s = estimate(&ExperimentConfig::new(n, args.k, args.a, args.trials, args.seed))?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            n, args.k, args.a, args.trials, s.p_omni_hat, s.p_omni_stderr, s.ex_missing_hat, s.ex_missing_stderr
        )
        .map_err(io_err)?;
    }
    Ok(EXIT_OK)
}
