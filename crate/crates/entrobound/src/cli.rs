//! Command-line surface: ad-hoc bracket queries, batch experiments,
//! infinite families, and density matrices, with CSV/JSON output.
//!
//! Exit codes: 0 success, 1 usage/validation, 2 mathematical divergence,
//! 3 internal invariant violation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    bracket_gap, diff_bounds, entropy_bracket, estimate_entropy, find_sigma_nontrivial,
};
use crate::distribution::Distribution;
use crate::error::Error;
use crate::experiments::{
    run_bounds_experiment, run_difference_experiment, summarize_bounds, summarize_diffs,
    BoundRecord, DiffRecord, ExperimentConfig, ExperimentMode,
};
use crate::infinite::{family_bracket, family_entropy, is_in_ell_sigma, ParametricFamily};
use crate::norms::shannon_entropy;
use crate::quantum::{hermitian_eigenvalues, von_neumann_bracket, von_neumann_entropy, DensityMatrix};
use crate::sigma::SigmaParam;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DIVERGENT: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "entrobound",
    version,
    about = "Two-sided entropy brackets from p-quasinorms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy, bracket, gap, and midpoint estimate for one distribution
    Bounds(BoundsArgs),
    /// Entropy-difference bounds for a pair of distributions
    Diff(DiffArgs),
    /// Batch experiment over random distributions; records as CSV/JSON
    Experiment(ExperimentArgs),
    /// Finiteness criterion, entropy enclosure, and bracket for an infinite family
    Family(FamilyArgs),
    /// Spectrum, von Neumann entropy, and bracket of a density matrix
    Quantum(QuantumArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct BoundsArgs {
    /// Inline probabilities, comma-separated
    #[arg(long, value_name = "P1,P2,...", conflicts_with = "file")]
    probs: Option<String>,
    /// Distribution file: one probability per line, `#` comments allowed
    #[arg(long, value_name = "PATH", required_unless_present = "probs")]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 0.9)]
    sigma: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct DiffArgs {
    #[arg(long, value_name = "P1,P2,...", conflicts_with = "file_p")]
    probs_p: Option<String>,
    #[arg(long, value_name = "PATH", required_unless_present = "probs_p")]
    file_p: Option<PathBuf>,
    #[arg(long, value_name = "Q1,Q2,...", conflicts_with = "file_q")]
    probs_q: Option<String>,
    #[arg(long, value_name = "PATH", required_unless_present = "probs_q")]
    file_q: Option<PathBuf>,
    #[arg(long, default_value_t = 0.9)]
    sigma: f64,
    /// Ascending sigma grid; reports the first sigma whose difference
    /// lower bound is strictly positive, or `none`
    #[arg(long, value_name = "S1,S2,...")]
    find_sigma: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Bounds,
    Difference,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum, default_value = "bounds")]
    mode: ModeArg,
    /// Number of distributions (or pairs)
    #[arg(long, default_value_t = 500)]
    num: usize,
    /// Support size of each distribution
    #[arg(long, default_value_t = 100)]
    support: usize,
    #[arg(long, default_value_t = 0.9)]
    sigma: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write records here; without it records go to standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family kind
    #[arg(value_enum)]
    kind: FamilyKind,
    /// Geometric ratio in (0,1) or zipf exponent > 1
    parameter: f64,
    #[arg(long, default_value_t = 0.9)]
    sigma: f64,
    /// Guaranteed enclosure half-width for truncated series
    #[arg(long, default_value_t = 1e-8)]
    abs_tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Geometric,
    Zipf,
}

#[derive(Args)]
struct QuantumArgs {
    /// Density-matrix file: first line `dim`, then dim^2 lines `row col re im`
    matrix: PathBuf,
    #[arg(long, default_value_t = 0.9)]
    sigma: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

/// A failed command mapped to its exit code, with a one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Divergent { .. } => EXIT_DIVERGENT,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parse argv and run one subcommand, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here with exit code 0
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Diff(args) => cmd_diff(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Family(args) => cmd_family(args),
        Command::Quantum(args) => cmd_quantum(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

/// Convenience entry point for `main`.
pub fn main_entry() -> i32 {
    run(std::env::args_os())
}

// ---------------------------------------------------------------------------
// input parsing

fn parse_sigma(value: f64) -> Result<SigmaParam, Failure> {
    SigmaParam::new(value).map_err(Failure::from)
}

fn parse_inline_probs(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|field| {
            field
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad probability {field:?}")))
        })
        .collect()
}

fn read_probs_file(path: &Path) -> Result<Vec<f64>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut probs = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        probs.push(line.parse::<f64>().map_err(|_| {
            Failure::usage(format!(
                "{}:{}: bad probability {line:?}",
                path.display(),
                line_no + 1
            ))
        })?);
    }
    Ok(probs)
}

fn load_distribution(probs: Option<&str>, file: Option<&Path>) -> Result<Distribution, Failure> {
    let raw = match (probs, file) {
        (Some(text), None) => parse_inline_probs(text)?,
        (None, Some(path)) => read_probs_file(path)?,
        _ => return Err(Failure::usage("provide probabilities inline or as a file")),
    };
    Distribution::new(raw).map_err(Failure::from)
}

// ---------------------------------------------------------------------------
// reports

enum Value {
    Float(f64),
    Text(String),
    Floats(Vec<f64>),
}

struct Report {
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn print(&self, format: OutputFormat) {
        match format {
            OutputFormat::Csv => {
                let header: Vec<&str> = self.fields.iter().map(|(k, _)| *k).collect();
                let row: Vec<String> = self
                    .fields
                    .iter()
                    .map(|(_, v)| match v {
                        Value::Float(x) => format!("{x}"),
                        Value::Text(t) => t.clone(),
                        Value::Floats(xs) => xs
                            .iter()
                            .map(|x| format!("{x}"))
                            .collect::<Vec<_>>()
                            .join(";"),
                    })
                    .collect();
                println!("{}", header.join(","));
                println!("{}", row.join(","));
            }
            OutputFormat::Json => {
                let mut map = serde_json::Map::new();
                for (key, value) in &self.fields {
                    let json = match value {
                        Value::Float(x) => serde_json::json!(x),
                        Value::Text(t) => serde_json::json!(t),
                        Value::Floats(xs) => serde_json::json!(xs),
                    };
                    map.insert((*key).to_string(), json);
                }
                println!("{}", serde_json::Value::Object(map));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_bounds(args: BoundsArgs) -> CmdResult {
    let sigma = parse_sigma(args.sigma)?;
    let p = load_distribution(args.probs.as_deref(), args.file.as_deref())?;
    let bracket = entropy_bracket(&p, sigma);
    let (estimate, half_width) = estimate_entropy(&p, sigma);
    Report {
        fields: vec![
            ("entropy", Value::Float(shannon_entropy(&p))),
            ("lower", Value::Float(bracket.lower())),
            ("upper", Value::Float(bracket.upper())),
            ("gap", Value::Float(bracket_gap(&p, sigma))),
            ("estimate", Value::Float(estimate)),
            ("half_width", Value::Float(half_width)),
        ],
    }
    .print(args.format);
    Ok(())
}

fn cmd_diff(args: DiffArgs) -> CmdResult {
    let sigma = parse_sigma(args.sigma)?;
    let p = load_distribution(args.probs_p.as_deref(), args.file_p.as_deref())?;
    let q = load_distribution(args.probs_q.as_deref(), args.file_q.as_deref())?;
    let (sp, sq) = (shannon_entropy(&p), shannon_entropy(&q));
    let bound = diff_bounds(&p, &q, sigma);
    let mut fields = vec![
        ("s_p", Value::Float(sp)),
        ("s_q", Value::Float(sq)),
        ("true_diff", Value::Float(sp - sq)),
        ("upper_bound", Value::Float(bound.upper)),
        ("lower_bound", Value::Float(bound.lower)),
    ];
    if let Some(grid_text) = &args.find_sigma {
        let grid = parse_inline_probs(grid_text)?;
        let found = find_sigma_nontrivial(&p, &q, &grid).map_err(Failure::from)?;
        fields.push((
            "sigma_nontrivial",
            match found {
                Some(s) => Value::Float(s.sigma()),
                None => Value::Text("none".into()),
            },
        ));
    }
    Report { fields }.print(args.format);
    Ok(())
}

/// CSV column order for bounds-mode experiment records.
pub const BOUNDS_CSV_HEADER: &str =
    "index,entropy,lower,upper,abs_err_lower,abs_err_upper,rel_err_lower,rel_err_upper";

/// CSV column order for difference-mode experiment records.
pub const DIFF_CSV_HEADER: &str = "index,true_diff,upper_bound,abs_err,rel_err";

fn opt(value: Option<f64>) -> String {
    value.map(|v| format!("{v}")).unwrap_or_default()
}

/// Render bounds records in the fixed CSV column order.
pub fn bounds_records_csv(records: &[BoundRecord]) -> String {
    let mut out = String::from(BOUNDS_CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.index,
            r.entropy,
            r.lower,
            r.upper,
            r.abs_err_lower,
            r.abs_err_upper,
            opt(r.rel_err_lower),
            opt(r.rel_err_upper)
        );
    }
    out
}

/// Render difference records in the fixed CSV column order.
pub fn diff_records_csv(records: &[DiffRecord]) -> String {
    let mut out = String::from(DIFF_CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.index,
            r.true_diff,
            r.upper_bound,
            r.abs_err,
            opt(r.rel_err)
        );
    }
    out
}

fn bounds_records_json(records: &[BoundRecord]) -> String {
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            serde_json::json!({
                "index": r.index,
                "entropy": r.entropy,
                "lower": r.lower,
                "upper": r.upper,
                "abs_err_lower": r.abs_err_lower,
                "abs_err_upper": r.abs_err_upper,
                "rel_err_lower": r.rel_err_lower,
                "rel_err_upper": r.rel_err_upper,
            })
        })
        .collect();
    serde_json::Value::Array(rows).to_string()
}

fn diff_records_json(records: &[DiffRecord]) -> String {
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            serde_json::json!({
                "index": r.index,
                "true_diff": r.true_diff,
                "upper_bound": r.upper_bound,
                "abs_err": r.abs_err,
                "rel_err": r.rel_err,
            })
        })
        .collect();
    serde_json::Value::Array(rows).to_string()
}

fn cmd_experiment(args: ExperimentArgs) -> CmdResult {
    if args.num == 0 || args.support == 0 {
        return Err(Failure::usage("--num and --support must be positive"));
    }
    let sigma = parse_sigma(args.sigma)?;
    let mode = match args.mode {
        ModeArg::Bounds => ExperimentMode::Bounds,
        ModeArg::Difference => ExperimentMode::Difference,
    };
    let cfg = ExperimentConfig {
        num_distributions: args.num,
        support_size: args.support,
        sigma,
        seed: args.seed,
        mode,
    };
    let (rendered, summary) = match mode {
        ExperimentMode::Bounds => {
            let records = run_bounds_experiment(&cfg);
            let rendered = match args.format {
                OutputFormat::Csv => bounds_records_csv(&records),
                OutputFormat::Json => bounds_records_json(&records),
            };
            (rendered, summarize_bounds(&records).map_err(Failure::from)?)
        }
        ExperimentMode::Difference => {
            let records = run_difference_experiment(&cfg);
            let rendered = match args.format {
                OutputFormat::Csv => diff_records_csv(&records),
                OutputFormat::Json => diff_records_json(&records),
            };
            (rendered, summarize_diffs(&records).map_err(Failure::from)?)
        }
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{rendered}");
            eprintln!("{summary}");
        }
    }
    if summary.violations > 0 {
        return Err(Failure {
            code: EXIT_VIOLATION,
            message: format!("{} record(s) violate their bound invariant", summary.violations),
        });
    }
    Ok(())
}

fn cmd_family(args: FamilyArgs) -> CmdResult {
    let sigma = parse_sigma(args.sigma)?;
    let family = match args.kind {
        FamilyKind::Geometric => ParametricFamily::geometric(args.parameter),
        FamilyKind::Zipf => ParametricFamily::zipf(args.parameter),
    }
    .map_err(Failure::from)?;
    let in_ell = is_in_ell_sigma(family, sigma);
    let bracket = family_bracket(family, sigma, args.abs_tol).map_err(Failure::from)?;
    let entropy = family_entropy(family, args.abs_tol).map_err(Failure::from)?;
    Report {
        fields: vec![
            ("in_ell_sigma", Value::Text(in_ell.to_string())),
            ("entropy", Value::Float(entropy.value)),
            ("entropy_error_bound", Value::Float(entropy.error_bound)),
            ("lower", Value::Float(bracket.lower())),
            ("upper", Value::Float(bracket.upper())),
        ],
    }
    .print(args.format);
    Ok(())
}

fn cmd_quantum(args: QuantumArgs) -> CmdResult {
    let sigma = parse_sigma(args.sigma)?;
    let text = std::fs::read_to_string(&args.matrix)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.matrix.display())))?;
    let matrix = DensityMatrix::parse(&text).map_err(Failure::from)?;
    let spectrum = hermitian_eigenvalues(&matrix).map_err(Failure::from)?;
    let entropy = von_neumann_entropy(&matrix).map_err(Failure::from)?;
    let bracket = von_neumann_bracket(&matrix, sigma).map_err(Failure::from)?;
    Report {
        fields: vec![
            ("entropy", Value::Float(entropy)),
            ("lower", Value::Float(bracket.lower())),
            ("upper", Value::Float(bracket.upper())),
            ("gap", Value::Float(bracket.upper() - bracket.lower())),
            ("spectrum", Value::Floats(spectrum)),
        ],
    }
    .print(args.format);
    Ok(())
}
