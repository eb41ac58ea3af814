//! The `lambdawb` command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lambda_core::asymptotics::{AsymptoticTable, DEFAULT_DEPTH};
use lambda_core::sampler::{Sampler, SamplerConfig, SamplerFamily, DEFAULT_MAX_ATTEMPTS};
use lambda_core::series::{
    default_depth, exact_distribution, mean_at, solve_h_shallow, solve_marked, solve_normal_forms,
    solve_plain, Family, Jet, Parameter, Series, TruncatedSystem, DEFAULT_DISTRIBUTION_CAP,
};
use lambda_core::{measure, parse, Term};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::batch::sample_batch;
use crate::codec;
use crate::manifest::RunManifest;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_PARSE: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "lambdawb",
    version,
    about = "Counting, distributions, limit constants and sampling of lambda terms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of terms of each size up to --order.
    Count(CountArgs),
    /// Exact distribution of a parameter at one size.
    Dist(DistArgs),
    /// Exact mean and variance of a parameter at one size.
    Moments(MomentsArgs),
    /// Limit constants with their tolerances.
    Constants(ConstantsArgs),
    /// Boltzmann samples in a size window, one JSON line each.
    Sample(SampleArgs),
    /// Parameter reports for terms read one per line.
    Measure(MeasureArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Data file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Manifest file; defaults to `<out>.manifest.json`, or standard error
    /// when writing data to standard output.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CountArgs {
    /// plain, closed, m_open(M), h_shallow[(H)], normal_forms or neutral.
    #[arg(long)]
    pub family: String,
    #[arg(long, alias = "n-max")]
    pub order: usize,
    /// Truncation depth of the closed ladder (default: the order).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Index bound for h_shallow.
    #[arg(long, default_value_t = 30)]
    pub h: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DistArgs {
    #[arg(long)]
    pub param: String,
    /// plain, closed or m_open(M).
    #[arg(long)]
    pub family: String,
    #[arg(long, alias = "order")]
    pub n: usize,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DISTRIBUTION_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long)]
    pub param: String,
    #[arg(long)]
    pub family: String,
    #[arg(long, alias = "order")]
    pub n: usize,
    #[arg(long)]
    pub depth: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstantsArgs {
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    /// plain, closed, m_open(M) or h_shallow[(H)].
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 30)]
    pub h: usize,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [20_000u64, 50_000])]
    pub window: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Draw a seed from the operating system instead of requiring --seed.
    #[arg(long)]
    pub entropy: bool,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Evaluation point (default: the family's singularity).
    #[arg(long)]
    pub z: Option<f64>,
    /// Ladder depth for closed and m-open terms.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    pub max_attempts: u64,
    /// Include each term in canonical text form.
    #[arg(long)]
    pub emit_terms: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// JSON when a line starts with `{` or `[`, text otherwise.
    Auto,
    Text,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeasureArgs {
    /// Input file; standard input when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failed command and the exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numeric(_) => EXIT_NUMERIC,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Io(_) => 1,
        }
    }
}

/// Term classes accepted by `--family`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Plain,
    Open(usize),
    Shallow(usize),
    NormalForms,
    Neutral,
}

impl FamilySpec {
    /// Parses `--family`, with `default_h` for a bare `h_shallow`.
    pub fn parse(s: &str, default_h: usize) -> Result<Self, Failure> {
        let bad = || Failure::Usage(format!("invalid family {s:?}"));
        let (name, arg) = match s.split_once(['(', ':']) {
            Some((name, rest)) => {
                let rest = rest.strip_suffix(')').unwrap_or(rest);
                (name, Some(usize::from_str(rest).map_err(|_| bad())?))
            }
            None => (s, None),
        };
        Ok(match (name, arg) {
            ("plain", None) => FamilySpec::Plain,
            ("closed", None) => FamilySpec::Open(0),
            ("m_open" | "open", Some(m)) => FamilySpec::Open(m),
            ("h_shallow" | "shallow", h) => FamilySpec::Shallow(h.unwrap_or(default_h)),
            ("normal_forms" | "normal", None) => FamilySpec::NormalForms,
            ("neutral", None) => FamilySpec::Neutral,
            _ => return Err(bad()),
        })
    }

    fn series_family(self) -> Result<Family, Failure> {
        match self {
            FamilySpec::Plain => Ok(Family::Plain),
            FamilySpec::Open(m) => Ok(Family::Open(m)),
            other => Err(Failure::Usage(format!(
                "{other:?} has no marked series; use plain, closed or m_open(M)"
            ))),
        }
    }

    fn sampler_family(self) -> Result<SamplerFamily, Failure> {
        match self {
            FamilySpec::Plain => Ok(SamplerFamily::Plain),
            FamilySpec::Open(0) => Ok(SamplerFamily::Closed),
            FamilySpec::Open(m) => Ok(SamplerFamily::Open(m as u64)),
            FamilySpec::Shallow(h) => Ok(SamplerFamily::Shallow(h as u64)),
            other => Err(Failure::Usage(format!("no sampler for {other:?}"))),
        }
    }
}

fn parameter(s: &str) -> Result<Parameter, Failure> {
    s.parse()
        .map_err(|e: lambda_core::series::UnknownParameter| Failure::Usage(e.to_string()))
}

/// Parses arguments, runs the command and maps failures to exit codes.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lambdawb: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

pub fn run(command: Command) -> Result<(), Failure> {
    let started = Instant::now();
    let started_unix_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let (data, mut manifest, output) = match command {
        Command::Count(a) => {
            let data = count(&a)?;
            (data, manifest("count", &a, None), a.output)
        }
        Command::Dist(a) => {
            let data = dist(&a)?;
            (data, manifest("dist", &a, None), a.output)
        }
        Command::Moments(a) => {
            let data = moments(&a)?;
            (data, manifest("moments", &a, None), a.output)
        }
        Command::Constants(a) => {
            let data = constants(&a)?;
            (data, manifest("constants", &a, None), a.output)
        }
        Command::Sample(mut a) => {
            let seed = match (a.seed, a.entropy) {
                (Some(seed), _) => seed,
                (None, true) => rand::random(),
                (None, false) => {
                    return Err(Failure::Usage(
                        "sample needs --seed (or --entropy for an unseeded run)".into(),
                    ))
                }
            };
            a.seed = Some(seed);
            let data = sample(&a, seed)?;
            (data, manifest("sample", &a, Some(seed)), a.output)
        }
        Command::Measure(a) => {
            let data = measure_lines(&a)?;
            (data, manifest("measure", &a, None), a.output)
        }
    };
    manifest.started_unix_ms = started_unix_ms;
    manifest.output = output.out.as_ref().map(|p| p.display().to_string());
    manifest.seal(&data);
    match &output.out {
        Some(path) => fs::write(path, &data)?,
        None => io::stdout().lock().write_all(&data)?,
    }
    manifest.wall_clock_ms = started.elapsed().as_secs_f64() * 1e3;
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    match manifest_path(&output) {
        Some(path) => fs::write(path, text)?,
        None => io::stderr().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn manifest<A: Serialize>(command: &str, args: &A, seed: Option<u64>) -> RunManifest {
    let config = serde_json::to_value(args).expect("arguments serialize");
    RunManifest::new(command, config, seed)
}

fn manifest_path(output: &OutputArgs) -> Option<PathBuf> {
    output.manifest.clone().or_else(|| {
        output.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    })
}

/// `[z^n]` of the counting series of `family`, `n = 0..=order`.
pub fn count_series(family: FamilySpec, order: usize, depth: Option<usize>) -> Series<BigInt> {
    match family {
        FamilySpec::Plain => solve_plain(order),
        FamilySpec::Open(m) => {
            let depth = depth.unwrap_or(order) + m;
            TruncatedSystem::solve(order + m, depth.max(1))
                .level(m)
                .truncate(order)
        }
        FamilySpec::Shallow(h) => solve_h_shallow(order, h),
        FamilySpec::NormalForms => solve_normal_forms(order).0,
        FamilySpec::Neutral => solve_normal_forms(order).1,
    }
}

fn count(a: &CountArgs) -> Result<Vec<u8>, Failure> {
    let family = FamilySpec::parse(&a.family, a.h)?;
    if a.depth == Some(0) {
        return Err(Failure::Usage("--depth must be positive".into()));
    }
    let s = count_series(family, a.order, a.depth);
    let rows = (1..=a.order).filter(|&n| s.coeff(n) != &BigInt::from(0));
    Ok(match a.format {
        Format::Csv => {
            let mut out = String::from("n,count\n");
            for n in rows {
                writeln!(out, "{n},{}", s.coeff(n)).unwrap();
            }
            out.into_bytes()
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .map(|n| json!({"n": n, "count": s.coeff(n).to_string()}))
                .collect();
            json_bytes(&json!({"family": a.family, "order": a.order, "rows": rows}))
        }
    })
}

fn dist(a: &DistArgs) -> Result<Vec<u8>, Failure> {
    let parameter = parameter(&a.param)?;
    let family = FamilySpec::parse(&a.family, 30)?.series_family()?;
    let depth = a.depth.unwrap_or(default_depth(a.n));
    let d = exact_distribution(parameter, family, a.n, depth, a.cap)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if d.counts.is_empty() {
        return Err(Failure::Numeric(format!("no terms of size {}", a.n)));
    }
    let rows = d.rows();
    Ok(match a.format {
        Format::Csv => {
            let mut out = String::from("value,count,probability\n");
            for (v, c, p) in &rows {
                writeln!(out, "{v},{c},{p}").unwrap();
            }
            out.into_bytes()
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(v, c, p)| {
                    json!({
                        "value": v,
                        "count": c.to_string(),
                        "probability": p.to_string(),
                        "probability_f64": lambda_core::numeric::ratio_to_f64(p),
                    })
                })
                .collect();
            json_bytes(&json!({
                "parameter": parameter.name(),
                "family": a.family,
                "n": a.n,
                "total": d.total().to_string(),
                "rows": rows,
            }))
        }
    })
}

fn rational_json(q: &BigRational) -> serde_json::Value {
    json!({"exact": q.to_string(), "approx": lambda_core::numeric::ratio_to_f64(q)})
}

fn moments(a: &MomentsArgs) -> Result<Vec<u8>, Failure> {
    let parameter = parameter(&a.param)?;
    let family = FamilySpec::parse(&a.family, 30)?.series_family()?;
    let depth = a.depth.unwrap_or(default_depth(a.n));
    let s: Series<Jet<1, 2>> = solve_marked(parameter, family, a.n, depth);
    let m = mean_at(&s, a.n).map_err(|e| Failure::Numeric(e.to_string()))?;
    let variance = m.variance.as_ref().expect("degree-2 jet");
    Ok(json_bytes(&json!({
        "parameter": parameter.name(),
        "family": a.family,
        "n": a.n,
        "count": m.count.to_string(),
        "mean": rational_json(&m.mean),
        "variance": rational_json(variance),
    })))
}

fn constants(a: &ConstantsArgs) -> Result<Vec<u8>, Failure> {
    if a.depth == 0 {
        return Err(Failure::Usage("--depth must be positive".into()));
    }
    let table = AsymptoticTable::new(a.depth).map_err(|e| Failure::Numeric(e.to_string()))?;
    if (table.b_inf - table.b_inf_derived).abs() > 1e-9 {
        return Err(Failure::Numeric(format!(
            "b_inf seed {} disagrees with the derived {}",
            table.b_inf, table.b_inf_derived
        )));
    }
    Ok(json_bytes(
        &serde_json::to_value(&table.derived).expect("constants serialize"),
    ))
}

fn sample(a: &SampleArgs, seed: u64) -> Result<Vec<u8>, Failure> {
    let family = FamilySpec::parse(&a.family, a.h)?.sampler_family()?;
    let (lo, hi) = (a.window[0], a.window[1]);
    if a.count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let config = SamplerConfig {
        family,
        z: a.z,
        window: (lo, hi),
        seed,
        max_attempts: a.max_attempts,
        ladder_depth: a.depth,
    };
    let sampler = Sampler::new(config).map_err(|e| Failure::Numeric(e.to_string()))?;
    let items = sample_batch(&sampler, seed, a.count, a.workers, a.emit_terms)
        .map_err(|e| Failure::Numeric(e.to_string()))?;
    let mut out = Vec::new();
    for item in items {
        let mut line = json!({
            "size": item.size,
            "seed": seed,
            "worker": item.worker,
            "index": item.index,
            "attempt": item.attempt,
            "report": item.report,
        });
        if let Some(t) = &item.term {
            line["term"] = json!(t.to_string());
        }
        serde_json::to_writer(&mut out, &line).expect("line serializes");
        out.push(b'\n');
    }
    Ok(out)
}

/// Reads one term from a line of `measure` input.
pub fn read_term(line: &str, format: InputFormat) -> Result<Term, String> {
    let trimmed = line.trim();
    let json = match format {
        InputFormat::Auto => trimmed.starts_with(['{', '[']),
        InputFormat::Text => false,
        InputFormat::Json => true,
    };
    if !json {
        return parse(trimmed).map_err(|e| e.to_string());
    }
    match codec::decode(trimmed) {
        Ok(t) => Ok(t),
        Err(term_err) => {
            // A sample line carrying its term as text.
            let value: serde_json::Value =
                serde_json::from_str(trimmed).map_err(|_| term_err.to_string())?;
            match value.get("term") {
                Some(serde_json::Value::String(s)) => parse(s).map_err(|e| e.to_string()),
                _ => Err(term_err.to_string()),
            }
        }
    }
}

fn measure_lines(a: &MeasureArgs) -> Result<Vec<u8>, Failure> {
    let mut input = String::new();
    match &a.input {
        Some(path) => input = fs::read_to_string(path)?,
        None => {
            io::stdin().lock().read_to_string(&mut input)?;
        }
    }
    let mut out = Vec::new();
    for (k, line) in input.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = k + 1;
        let term = read_term(line, a.format)
            .map_err(|e| Failure::Parse(format!("line {line_no}: {e}")))?;
        let value = json!({"line": line_no, "size": term.size(), "report": measure(&term)});
        serde_json::to_writer(&mut out, &value).expect("line serializes");
        out.push(b'\n');
    }
    Ok(out)
}

fn json_bytes(v: &serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("value serializes");
    out.push(b'\n');
    out
}

/// Path helper for tests and scripts: the default manifest next to `out`.
pub fn default_manifest_for(out: &Path) -> PathBuf {
    manifest_path(&OutputArgs {
        out: Some(out.to_path_buf()),
        manifest: None,
    })
    .expect("out is set")
}
