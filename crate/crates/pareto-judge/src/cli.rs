//! Command-line driver.
//!
//! Exit status: 0 on success, 1 when inputs fail validation, 2 on usage
//! errors. Every output file is rendered in memory first and then written
//! atomically, so a failing run leaves no partial files behind.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pareto_judge_core::fbeta::{fbeta_curve, fbeta_envelope};
use pareto_judge_core::geometry::IsoMetric;
use pareto_judge_core::{BetaGrid, FbetaCurve, Indicator, SolutionSet};

use crate::aggregate::{aggregate_experiment, AggregateOptions, Experiment, DEFAULT_INDICATORS};
use crate::datasets::{parse_datasets, render_datasets};
use crate::error::{Error, Result};
use crate::output::write_atomic;
use crate::records::{parse_records_with, ExperimentRecord, ParseOptions, Payload, PayloadKind};
use crate::report::{parse_report_csv, render_report, ReportFormat};
use crate::svg::{render_fbeta_plot, render_isocurves, render_region_plot, RegionMode};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PARETO_JUDGE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "pareto-judge",
    version,
    about = "Evaluate multi-solution classifiers against single-solution references"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-record confusion metrics (TPR, TNR, PPV, BAC, G-mean, F-beta).
    Metrics(MetricsArgs),
    /// Aggregate indicators of the front against every reference method.
    Compare(CompareArgs),
    /// F-beta curves of reference methods and the front envelope.
    FbetaPlot(FbetaPlotArgs),
    /// Hypervolume or dominance region diagram for one reference method.
    RegionPlot(RegionPlotArgs),
    /// Level sets of G-mean or F1.
    Isocurves(IsocurvesArgs),
    /// Re-render a CSV report in another format.
    Report(ReportArgs),
    /// Dataset table with imbalance ratios.
    Datasets(DatasetsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Counts,
    Objectives,
}

impl From<KindArg> for PayloadKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Counts => PayloadKind::Counts,
            KindArg::Objectives => PayloadKind::Objectives,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    #[value(alias = "md")]
    Markdown,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Markdown => ReportFormat::Markdown,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Hypervolume,
    Dominance,
}

impl From<ModeArg> for RegionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Hypervolume => RegionMode::Hypervolume,
            ModeArg::Dominance => RegionMode::Dominance,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Gmean,
    F1,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Results of the multi-solution method.
    #[arg(long, value_name = "CSV")]
    front: PathBuf,
    /// Results of the single-solution reference methods.
    #[arg(long, value_name = "CSV")]
    refs: PathBuf,
    #[arg(long, value_enum, default_value = "counts")]
    kind: KindArg,
    /// 1-based objective columns to minimize (objectives files only).
    #[arg(long, value_delimiter = ',', value_name = "COLS")]
    minimize: Vec<usize>,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    /// Counts file.
    #[arg(long = "in", value_name = "CSV")]
    input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, value_name = "CSV")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, value_delimiter = ',', value_parser = parse_indicator, value_name = "LIST")]
    indicators: Vec<Indicator>,
    /// Evaluate a single fold only.
    #[arg(long)]
    fold: Option<u32>,
    /// Keep only non-dominated front members.
    #[arg(long)]
    filter_front: bool,
    /// Seed of the Monte Carlo hypervolume (more than two objectives).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct FbetaPlotArgs {
    /// Counts file of the multi-solution method.
    #[arg(long, value_name = "CSV")]
    front: PathBuf,
    /// Counts file of the reference methods.
    #[arg(long, value_name = "CSV")]
    refs: PathBuf,
    #[arg(long)]
    fold: u32,
    /// Plot one dataset instead of all of them.
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long, default_value_t = BetaGrid::DEFAULT_MIN)]
    beta_min: f64,
    #[arg(long, default_value_t = BetaGrid::DEFAULT_MAX)]
    beta_max: f64,
    #[arg(long, default_value_t = BetaGrid::DEFAULT_COUNT)]
    beta_count: usize,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RegionPlotArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long)]
    dataset: String,
    #[arg(long)]
    fold: u32,
    /// Reference method providing the reference point.
    #[arg(long)]
    method: String,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    filter_front: bool,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct IsocurvesArgs {
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long, value_delimiter = ',', required = true, value_name = "LIST")]
    levels: Vec<f64>,
    #[arg(long, value_name = "SVG")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Report in CSV format.
    #[arg(long = "in", value_name = "CSV")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// Name shown in the markdown title.
    #[arg(long)]
    moo_method: Option<String>,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DatasetsArgs {
    #[arg(long = "in", value_name = "CSV")]
    input: PathBuf,
    /// Defaults to standard output.
    #[arg(long, value_name = "CSV")]
    out: Option<PathBuf>,
}

fn parse_indicator(s: &str) -> std::result::Result<Indicator, String> {
    s.parse().map_err(|_| format!("unknown indicator `{s}` (expected ed, gd, hv, sdr or ndr)"))
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("pareto-judge: error: {e}");
            1
        }
    }
}

fn threads_from_env() -> Result<Option<NonZeroUsize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<NonZeroUsize>()
            .map(Some)
            .map_err(|_| Error::Invalid(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        Err(std::env::VarError::NotUnicode(v)) => {
            Err(Error::Invalid(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))
        }
    }
}

fn execute(command: Command) -> Result<()> {
    let threads = threads_from_env()?;
    match command {
        Command::Metrics(a) => metrics(a),
        Command::Compare(a) => compare(a, threads),
        Command::FbetaPlot(a) => fbeta_plot(a),
        Command::RegionPlot(a) => region_plot(a),
        Command::Isocurves(a) => isocurves(a),
        Command::Report(a) => report(a),
        Command::Datasets(a) => datasets(a),
    }
}

fn load(path: &Path, kind: PayloadKind, minimize: &[usize]) -> Result<Vec<ExperimentRecord>> {
    if kind == PayloadKind::Counts && !minimize.is_empty() {
        return Err(Error::Invalid("--minimize only applies to objectives files".into()));
    }
    let options = ParseOptions { minimize: minimize.iter().copied().collect::<BTreeSet<_>>() };
    parse_records_with(path, kind, &options)
}

fn load_inputs(inputs: &Inputs) -> Result<(Vec<ExperimentRecord>, Vec<ExperimentRecord>)> {
    let kind = inputs.kind.into();
    Ok((load(&inputs.front, kind, &inputs.minimize)?, load(&inputs.refs, kind, &inputs.minimize)?))
}

fn metrics(a: MetricsArgs) -> Result<()> {
    let records = load(&a.input, PayloadKind::Counts, &[])?;
    let mut out = String::from("dataset,method,fold,solution_id,tpr,tnr,ppv,bac,gmean,fbeta,undefined\n");
    for r in &records {
        let Payload::Counts(m) = &r.payload else { unreachable!("counts file yields counts") };
        let named = [
            ("tpr", m.tpr()),
            ("tnr", m.tnr()),
            ("ppv", m.ppv()),
            ("bac", m.bac()),
            ("gmean", m.gmean()),
            ("fbeta", m.fbeta(a.beta)?),
        ];
        let k = &r.key;
        let _ = write!(out, "{},{},{},{}", k.dataset, k.method, k.fold, k.solution_id);
        for (_, v) in &named {
            let _ = write!(out, ",{}", v.value);
        }
        let undefined: Vec<&str> = named.iter().filter(|(_, v)| !v.defined).map(|(n, _)| *n).collect();
        let _ = writeln!(out, ",{}", undefined.join(";"));
    }
    write_atomic(&a.out, out.as_bytes())
}

fn compare(a: CompareArgs, threads: Option<NonZeroUsize>) -> Result<()> {
    let (front, refs) = load_inputs(&a.inputs)?;
    let options = AggregateOptions {
        indicators: if a.indicators.is_empty() { DEFAULT_INDICATORS.to_vec() } else { a.indicators },
        filter_front: a.filter_front,
        fold: a.fold,
        seed: a.seed,
        threads,
        ..AggregateOptions::default()
    };
    let experiment = Experiment::build(&front, &refs, options.fold)?;
    let report = aggregate_experiment(&experiment, &options)?;
    let text = render_report(&report, a.format.into())?;
    write_atomic(&a.out, text.as_bytes())
}

fn check_dataset(experiment: &Experiment, dataset: &str) -> Result<()> {
    if experiment.datasets().iter().any(|d| d == dataset) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("dataset `{dataset}` not found in the front file")))
    }
}

fn fbeta_plot(a: FbetaPlotArgs) -> Result<()> {
    let grid = BetaGrid::log_uniform(a.beta_min, a.beta_max, a.beta_count)?;
    let front = load(&a.front, PayloadKind::Counts, &[])?;
    let refs = load(&a.refs, PayloadKind::Counts, &[])?;
    let experiment = Experiment::build(&front, &refs, Some(a.fold))?;
    let datasets: Vec<String> = match &a.dataset {
        Some(d) => {
            check_dataset(&experiment, d)?;
            vec![d.clone()]
        }
        None => experiment.datasets().to_vec(),
    };

    let mut files: Vec<(PathBuf, String)> = Vec::new();
    for dataset in &datasets {
        let members = experiment.front_matrices(dataset, a.fold).ok_or_else(|| {
            Error::Invalid(format!("no front results for dataset {dataset} fold {}", a.fold))
        })?;
        let mut curves: Vec<FbetaCurve> = Vec::new();
        for method in experiment.methods(dataset) {
            if let Some(m) = experiment.reference(dataset, a.fold, method).and_then(Payload::confusion) {
                curves.push(fbeta_curve(method, m, &grid));
            }
        }
        let matrices: Vec<_> = members.iter().map(|(_, m)| *m).collect();
        let envelope = fbeta_envelope(format!("{} (envelope)", experiment.moo_method()), &matrices, &grid)?;

        let mut selection = String::from("beta,fbeta,solution_id\n");
        for ((beta, value), idx) in envelope.points().zip(&envelope.argmax) {
            let _ = writeln!(selection, "{beta},{value},{}", members[*idx].0);
        }
        curves.push(envelope);
        let title = format!("{dataset}, fold {}", a.fold);
        files.push((a.out.join(format!("{dataset}_fbeta.svg")), render_fbeta_plot(&title, &curves)?));
        files.push((a.out.join(format!("{dataset}_fbeta_selection.csv")), selection));
    }
    write_all(&files)
}

fn region_plot(a: RegionPlotArgs) -> Result<()> {
    let (front, refs) = load_inputs(&a.inputs)?;
    let experiment = Experiment::build(&front, &refs, Some(a.fold))?;
    check_dataset(&experiment, &a.dataset)?;
    let set: SolutionSet = experiment.front_set(&a.dataset, a.fold, a.filter_front)?;
    let reference = experiment
        .reference(&a.dataset, a.fold, &a.method)
        .ok_or_else(|| {
            Error::Invalid(format!("no result of {} for dataset {} fold {}", a.method, a.dataset, a.fold))
        })?
        .objective_point();
    let mode: RegionMode = a.mode.into();
    let title = format!("{} vs {} ({}, fold {})", set.label(), a.method, a.dataset, a.fold);
    let svg = render_region_plot(&title, &set, &reference, mode)?;
    let path = a.out.join(format!("{}_{}-{}.svg", a.dataset, mode.name(), a.method));
    write_all(&[(path, svg)])
}

fn isocurves(a: IsocurvesArgs) -> Result<()> {
    let metric = match a.metric {
        MetricArg::Gmean => IsoMetric::Gmean,
        MetricArg::F1 => IsoMetric::F1,
    };
    let svg = render_isocurves(metric, &a.levels)?;
    write_atomic(&a.out, svg.as_bytes())
}

fn report(a: ReportArgs) -> Result<()> {
    let mut report = parse_report_csv(&a.input)?;
    if let Some(name) = a.moo_method {
        report.moo_method = name;
    }
    let text = render_report(&report, a.format.into())?;
    write_atomic(&a.out, text.as_bytes())
}

fn datasets(a: DatasetsArgs) -> Result<()> {
    let table = render_datasets(&parse_datasets(&a.input)?);
    match a.out {
        Some(path) => write_atomic(&path, table.as_bytes()),
        None => {
            print!("{table}");
            Ok(())
        }
    }
}

/// Creates the output directory if needed, then writes each file atomically.
fn write_all(files: &[(PathBuf, String)]) -> Result<()> {
    for (path, _) in files {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
    }
    for (path, text) in files {
        write_atomic(path, text.as_bytes())?;
    }
    Ok(())
}
