//! Command-line front end: `generate`, `metrics`, `navigate`, `sweep` and
//! `compare`.
//!
//! Every report starts with a header holding the tool version, the resolved
//! configuration and the master seed (`#` lines in CSV, a `run` object in
//! JSON). Exit codes: 0 success, 2 invalid input, 3 runtime failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::family::{parse_pairs, GeneratorSpec};
use crate::graph::Network;
use crate::metrics::{ensemble_measure, measure, EnsembleStats};
use crate::navigation::{ensemble_navigation, navigation_summary, NavPolicy, TwoLevelMode};
use crate::optimize::{
    compare_families, default_w_grid, evaluate_grid, read_frontier_csv, write_frontier_csv, FrontierPoint, Selection,
    TargetKind,
};
use crate::seed::derive_seed;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lns",
    version,
    about = "Ring lattice networks with shortcuts: generate, measure, navigate, optimize"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one network and write it in the network file format.
    Generate(GenerateArgs),
    /// Average distance, diameter and wiring cost of a network or ensemble.
    Metrics(MetricsArgs),
    /// Average greedy or two-level navigation length.
    Navigate(NavigateArgs),
    /// Minimize a target function over a grid file for every weight.
    Sweep(SweepArgs),
    /// Compare the frontiers of several grids or frontier files.
    Compare(CompareArgs),
}

/// Generator family and its parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// ring, s1, s1m, s2, d1, d2, circulant, multiplicative, d3, d4s, d4
    #[arg(long)]
    pub family: Option<String>,
    /// Number of nodes.
    #[arg(long = "L")]
    pub size: Option<String>,
    /// Number of shortcuts (s1m, s2, d1).
    #[arg(long)]
    pub t: Option<String>,
    /// Shortcut probability per node (s1).
    #[arg(long)]
    pub p: Option<String>,
    /// Forced shortcuts between existing shortcut ends (s2).
    #[arg(long)]
    pub c: Option<String>,
    /// Power-law exponent of shortcut lengths.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Base (d4s, d4).
    #[arg(long)]
    pub b: Option<String>,
    /// Number of levels (d4s, d4) or exponent (multiplicative).
    #[arg(long)]
    pub k: Option<String>,
    /// Multiplier (multiplicative).
    #[arg(long)]
    pub s: Option<String>,
    /// Comma-separated chord steps (circulant).
    #[arg(long)]
    pub steps: Option<String>,
    /// Degree of the starting circulant (d3).
    #[arg(long = "K")]
    pub degree: Option<String>,
    /// Number of hubs (d3).
    #[arg(long)]
    pub h: Option<String>,
    /// Hub graph: star, loop or loop:a:b (d3).
    #[arg(long)]
    pub hub: Option<String>,
}

impl FamilyArgs {
    fn is_empty(&self) -> bool {
        self.pairs().is_empty()
    }

    fn pairs(&self) -> BTreeMap<String, String> {
        let fields = [
            ("family", &self.family),
            ("L", &self.size),
            ("t", &self.t),
            ("p", &self.p),
            ("c", &self.c),
            ("alpha", &self.alpha),
            ("b", &self.b),
            ("k", &self.k),
            ("s", &self.s),
            ("steps", &self.steps),
            ("K", &self.degree),
            ("h", &self.h),
            ("hub", &self.hub),
        ];
        fields
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
            .collect()
    }

    fn spec(&self) -> Result<GeneratorSpec, CliError> {
        if self.family.is_none() {
            return Err(CliError::invalid("--family is required"));
        }
        Ok(GeneratorSpec::from_params(&self.pairs())?)
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NavArg {
    Greedy,
    TwoLevel,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeArg {
    Commit,
    #[default]
    Rehop,
}

impl From<ModeArg> for TwoLevelMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Commit => TwoLevelMode::Commit,
            ModeArg::Rehop => TwoLevelMode::Rehop,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Network file to write (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Read the network from a file instead of generating it.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Ensemble size (stochastic families).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct NavigateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = NavArg::Greedy)]
    pub nav: NavArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Rehop)]
    pub two_level_mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the per-pair hop histogram (`hops,pairs`) to this file.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Grid file: one `key=value ...` tuple per line, `#` comments.
    #[arg(long)]
    pub grid: PathBuf,
    /// G (average distance), g1 (greedy navigation) or g2 (two-level).
    #[arg(long, default_value = "G")]
    pub target: String,
    /// Comma-separated weights (default 0, 0.05, ..., 1).
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<f64>>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the instance of this quality rank instead of the ensemble mean.
    #[arg(long)]
    pub percentile: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Rehop)]
    pub two_level_mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// `label:target:gridfile`, evaluated like `sweep`.
    #[arg(long)]
    pub entry: Vec<String>,
    /// `label=frontier.csv` from an earlier sweep.
    #[arg(long)]
    pub frontier: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<f64>>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub percentile: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Rehop)]
    pub two_level_mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() { EXIT_INVALID } else { EXIT_RUNTIME };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses a grid file. Errors name the offending line.
pub fn parse_grid(text: &str) -> Result<Vec<GeneratorSpec>, Error> {
    let mut grid = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let spec = parse_pairs(line)
            .and_then(|pairs| GeneratorSpec::from_params(&pairs))
            .map_err(|e| Error::Parse {
                position: format!("grid line {}", i + 1),
                message: e.to_string(),
            })?;
        grid.push(spec);
    }
    if grid.is_empty() {
        return Err(Error::Parse {
            position: "grid".into(),
            message: "no grid points".into(),
        });
    }
    Ok(grid)
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            let _ = writeln!(stderr, "error: --threads must be at least 1");
            return EXIT_INVALID;
        }
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a, stdout, stderr),
        Command::Metrics(a) => cmd_metrics(a, stdout),
        Command::Navigate(a) => cmd_navigate(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
        Command::Compare(a) => cmd_compare(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// Resolved configuration echoed into every report header.
struct RunHeader {
    command: &'static str,
    config: Vec<(String, String)>,
    seed: u64,
}

impl RunHeader {
    fn new(command: &'static str, seed: u64) -> Self {
        RunHeader {
            command,
            config: Vec::new(),
            seed,
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    fn csv_lines(&self) -> String {
        let config: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "# lns {VERSION}\n# command: {}\n# config: {}\n# seed: {}\n",
            self.command,
            config.join(" "),
            self.seed
        )
    }

    fn json(&self) -> Value {
        let config: serde_json::Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({ "tool": "lns", "version": VERSION, "command": self.command, "config": config, "seed": self.seed })
    }
}

fn write_report<T: Serialize>(
    header: &RunHeader,
    output: &OutputArgs,
    csv_body: &str,
    json_body: &T,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = match output.format {
        Format::Csv => format!("{}{}", header.csv_lines(), csv_body),
        Format::Json => {
            let doc = json!({ "run": header.json(), "result": json_body });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::runtime(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    emit(output.out.as_deref(), &text, stdout)
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::runtime(format!("cannot write output: {e}"))),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::runtime(format!("cannot read {}: {e}", path.display())))
}

fn csv_of<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| CliError::runtime(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::runtime(e.to_string()))
}

#[derive(Serialize)]
struct StatsRow<'a> {
    metric: &'a str,
    n: usize,
    mean: f64,
    std: f64,
    min: f64,
    max: f64,
}

impl<'a> StatsRow<'a> {
    fn new(metric: &'a str, s: &EnsembleStats) -> Self {
        StatsRow {
            metric,
            n: s.n,
            mean: s.mean,
            std: s.std,
            min: s.min,
            max: s.max,
        }
    }
}

/// The network named by `--input` or the family flags, plus its description.
enum Source {
    File(PathBuf, Network),
    Spec(GeneratorSpec),
}

fn resolve_source(family: &FamilyArgs, input: &Option<PathBuf>) -> Result<Source, CliError> {
    match input {
        Some(path) => {
            let net = Network::decode(&read_text(path)?)
                .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
            Ok(Source::File(path.clone(), net))
        }
        None if family.is_empty() => Err(CliError::invalid("give --input or --family with its parameters")),
        None => Ok(Source::Spec(family.spec()?)),
    }
}

fn describe(source: &Source, header: RunHeader) -> RunHeader {
    match source {
        Source::File(path, _) => header.with("input", path.display()),
        Source::Spec(spec) => header
            .with("family", spec.family())
            .with("params", spec.params_string()),
    }
}

fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let spec = args.family.spec()?;
    let net = spec.build(derive_seed(args.seed, 0))?;
    emit(args.out.as_deref(), &net.encode(), stdout)?;
    let cost = net.wiring_cost();
    let summary = format!("shortcuts: {}\nC/L: {}\n", net.shortcut_count(), cost.unit_cost);
    let sink: &mut dyn Write = if args.out.is_some() { stdout } else { stderr };
    sink.write_all(summary.as_bytes())
        .map_err(|e| CliError::runtime(e.to_string()))
}

fn cmd_metrics(args: &MetricsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let source = resolve_source(&args.family, &args.input)?;
    let header = describe(&source, RunHeader::new("metrics", args.seed)).with("n", args.n);
    if args.n == 0 {
        return Err(CliError::invalid("--n must be at least 1"));
    }
    match source {
        Source::File(_, net) => {
            let report = measure(&net);
            write_report(&header, &args.output, &csv_of(&[&report])?, &report, stdout)
        }
        Source::Spec(spec) if spec.instance_count(args.n) == 1 => {
            let report = measure(&spec.build(derive_seed(args.seed, 0))?);
            write_report(&header, &args.output, &csv_of(&[&report])?, &report, stdout)
        }
        Source::Spec(spec) => {
            let report = ensemble_measure(&spec, args.n, args.seed)?;
            let rows = [
                StatsRow::new("d", &report.d),
                StatsRow::new("diameter", &report.diameter),
                StatsRow::new("C_over_L", &report.unit_cost),
                StatsRow::new("shortcut_count", &report.shortcut_count),
            ];
            write_report(&header, &args.output, &csv_of(&rows)?, &report, stdout)
        }
    }
}

#[derive(Serialize)]
struct NavRow {
    policy: &'static str,
    mode: &'static str,
    #[serde(rename = "L")]
    size: usize,
    mean: f64,
    total_hops: u64,
    max_hops: usize,
}

fn cmd_navigate(args: &NavigateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let source = resolve_source(&args.family, &args.input)?;
    let mode: TwoLevelMode = args.two_level_mode.into();
    let (policy, policy_name, mode_name) = match args.nav {
        NavArg::Greedy => (NavPolicy::Greedy, "greedy", "-"),
        NavArg::TwoLevel => (
            NavPolicy::TwoLevel(mode),
            "two-level",
            match mode {
                TwoLevelMode::Commit => "commit",
                TwoLevelMode::Rehop => "rehop",
            },
        ),
    };
    let header = describe(&source, RunHeader::new("navigate", args.seed))
        .with("nav", policy_name)
        .with("two_level_mode", mode_name)
        .with("n", args.n);
    if args.n == 0 {
        return Err(CliError::invalid("--n must be at least 1"));
    }
    let net = match &source {
        Source::File(_, net) => Some(net.clone()),
        Source::Spec(spec) if spec.instance_count(args.n) == 1 => Some(spec.build(derive_seed(args.seed, 0))?),
        Source::Spec(_) => None,
    };
    match (net, &source) {
        (Some(net), _) => {
            let summary = navigation_summary(&net, policy);
            if let Some(path) = &args.histogram {
                let rows: Vec<(usize, u64)> = summary.histogram.iter().copied().enumerate().collect();
                let mut body = String::from("hops,pairs\n");
                for (h, c) in rows {
                    body.push_str(&format!("{h},{c}\n"));
                }
                emit(Some(path), &body, stdout)?;
            }
            let row = NavRow {
                policy: policy_name,
                mode: mode_name,
                size: net.size(),
                mean: summary.mean,
                total_hops: summary.total_hops,
                max_hops: summary.max_hops,
            };
            write_report(&header, &args.output, &csv_of(&[row])?, &summary, stdout)
        }
        (None, Source::Spec(spec)) => {
            if args.histogram.is_some() {
                return Err(CliError::invalid("--histogram needs a single network (n = 1)"));
            }
            let stats = ensemble_navigation(spec, policy, args.n, args.seed)?;
            write_report(
                &header,
                &args.output,
                &csv_of(&[StatsRow::new("l", &stats)])?,
                &stats,
                stdout,
            )
        }
        (None, Source::File(..)) => unreachable!("files always yield a network"),
    }
}

fn weights(w: &Option<Vec<f64>>) -> Vec<f64> {
    w.clone().unwrap_or_else(default_w_grid)
}

fn selection(percentile: Option<usize>, n: usize) -> Result<Selection, CliError> {
    match percentile {
        None => Ok(Selection::Mean),
        Some(q) if q >= 1 && q <= n => Ok(Selection::Rank(q)),
        Some(q) => Err(CliError::invalid(format!("--percentile {q} is outside 1..={n}"))),
    }
}

/// Evaluation settings shared by every grid of one run.
struct SweepSettings {
    w: Vec<f64>,
    n: usize,
    seed: u64,
    sel: Selection,
    mode: TwoLevelMode,
}

fn sweep_frontier(
    grid_path: &Path,
    kind: TargetKind,
    settings: &SweepSettings,
    stderr: &mut dyn Write,
) -> Result<Vec<FrontierPoint>, CliError> {
    let SweepSettings { w, n, seed, sel, mode } = settings;
    let grid =
        parse_grid(&read_text(grid_path)?).map_err(|e| CliError::invalid(format!("{}: {e}", grid_path.display())))?;
    let eval = evaluate_grid(&grid, &[kind], *n, *seed, *mode)?;
    for skipped in &eval.skipped {
        let _ = writeln!(
            stderr,
            "warning: skipped grid point `{}`: {}",
            skipped.spec, skipped.error
        );
    }
    Ok(eval.frontier(kind, w, *sel)?.points)
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let kind = TargetKind::parse(&args.target)?;
    let w = weights(&args.w);
    let sel = selection(args.percentile, args.n)?;
    let header = RunHeader::new("sweep", args.seed)
        .with("grid", args.grid.display())
        .with("target", kind.name())
        .with("n", args.n)
        .with(
            "percentile",
            args.percentile.map_or("mean".to_string(), |q| q.to_string()),
        )
        .with("two_level_mode", format!("{:?}", args.two_level_mode).to_lowercase())
        .with("w", join(&w));
    let settings = SweepSettings {
        w,
        n: args.n,
        seed: args.seed,
        sel,
        mode: args.two_level_mode.into(),
    };
    let points = sweep_frontier(&args.grid, kind, &settings, stderr)?;
    let mut body = Vec::new();
    write_frontier_csv(&points, &mut body)?;
    let body = String::from_utf8(body).map_err(|e| CliError::runtime(e.to_string()))?;
    write_report(&header, &args.output, &body, &points, stdout)
}

fn cmd_compare(args: &CompareArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    if args.entry.is_empty() && args.frontier.is_empty() {
        return Err(CliError::invalid("give at least one --entry or --frontier"));
    }
    let w = weights(&args.w);
    let sel = selection(args.percentile, args.n)?;
    let mut header = RunHeader::new("compare", args.seed)
        .with("n", args.n)
        .with(
            "percentile",
            args.percentile.map_or("mean".to_string(), |q| q.to_string()),
        )
        .with("two_level_mode", format!("{:?}", args.two_level_mode).to_lowercase())
        .with("w", join(&w));
    let settings = SweepSettings {
        w,
        n: args.n,
        seed: args.seed,
        sel,
        mode: args.two_level_mode.into(),
    };
    let mut frontiers = Vec::new();
    for entry in &args.entry {
        let parts: Vec<&str> = entry.splitn(3, ':').collect();
        let [label, target, grid] = parts.as_slice() else {
            return Err(CliError::invalid(format!(
                "--entry `{entry}` is not label:target:gridfile"
            )));
        };
        let kind = TargetKind::parse(target)?;
        header = header.with("entry", entry);
        let points = sweep_frontier(Path::new(grid), kind, &settings, stderr)?;
        frontiers.push((label.to_string(), points));
    }
    for item in &args.frontier {
        let Some((label, path)) = item.split_once('=') else {
            return Err(CliError::invalid(format!("--frontier `{item}` is not label=file.csv")));
        };
        header = header.with("frontier", item);
        let text = read_text(Path::new(path))?;
        let points = read_frontier_csv(text.as_bytes()).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
        frontiers.push((label.to_string(), points));
    }
    let comparison = compare_families(&frontiers)?;
    let mut body = Vec::new();
    comparison.write_csv(&mut body)?;
    let mut body = String::from_utf8(body).map_err(|e| CliError::runtime(e.to_string()))?;
    for (label, fraction) in comparison.labels.iter().zip(&comparison.win_fraction) {
        body.push_str(&format!("# win_fraction {label}={fraction}\n"));
    }
    write_report(&header, &args.output, &body, &comparison, stdout)
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parse_reports_line_numbers() {
        let grid = parse_grid("# header\nfamily=ring L=10\n\nfamily=s1m L=50 t=5 alpha=1 # trailing\n").unwrap();
        assert_eq!(grid.len(), 2);
        let err = parse_grid("family=ring L=10\nfamily=ring L=x\n").unwrap_err();
        assert!(err.to_string().contains("grid line 2"), "{err}");
        assert!(parse_grid("# nothing\n").is_err());
    }

    #[test]
    fn header_is_stable() {
        let h = RunHeader::new("metrics", 7).with("n", 3);
        assert_eq!(
            h.csv_lines(),
            format!("# lns {VERSION}\n# command: metrics\n# config: n=3\n# seed: 7\n")
        );
    }
}
