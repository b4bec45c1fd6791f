//! Command line front end: smoothing, fitting, evaluation, reporting,
//! plotting and the built-in GDP reproduction.
//!
//! Exit codes: 0 on success, 1 when the demo's reproduction tolerance
//! fails, 2 on usage, input or fit errors.

mod csvio;
mod demo;
mod modeldoc;
mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use expseries::metrics::{residual_report, FitReport, LossKind};
use expseries::prony::fit;
use expseries::smooth::{smooth, SmoothingConfig};
use expseries::{fixtures, FitMode, FitOptions, TimeSeries};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "expseries",
    version,
    about = "Smooth tabulated series and fit sums of complex exponentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replace each run of three consecutive points by their centroid.
    Smooth(SmoothArgs),
    /// Fit an exponential-sum model and write it as JSON.
    Fit(FitArgs),
    /// Evaluate a stored model over a t grid.
    Eval(EvalArgs),
    /// Compare a stored model against a series.
    Report(ReportArgs),
    /// Draw a series and a model curve into an SVG file.
    Plot(PlotArgs),
    /// Reproduce the built-in GDP interpolation end to end.
    DemoGdp(demo::DemoArgs),
}

/// Where a series comes from: a CSV file or a built-in dataset.
#[derive(Args)]
struct SourceArgs {
    /// Input CSV file with a `t,value` or `year,value` header.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "dataset",
        required_unless_present = "dataset"
    )]
    input: Option<PathBuf>,
    /// Name of a built-in dataset instead of a file.
    #[arg(long, value_name = "NAME")]
    dataset: Option<String>,
    /// Subtract this origin from a `year` column to get t.
    #[arg(long, value_name = "YEAR")]
    year_origin: Option<f64>,
}

impl SourceArgs {
    fn load(&self) -> Result<TimeSeries> {
        if let Some(name) = &self.dataset {
            return Ok(fixtures::load(name)?);
        }
        let path = self
            .input
            .as_deref()
            .expect("clap requires input or dataset");
        csvio::read_series(path, self.year_origin)
    }
}

#[derive(Args)]
struct SmoothArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Output CSV file; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Number of smoothing passes; each pass shortens the series by two.
    #[arg(long, default_value_t = 1)]
    passes: u32,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of exponential terms p.
    #[arg(long)]
    terms: usize,
    /// exact requires 2p points; ls accepts any N >= 2p.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Output model file.
    #[arg(long, value_name = "FILE")]
    output: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Ls,
}

impl From<ModeArg> for FitMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Exact => FitMode::Exact,
            ModeArg::Ls => FitMode::LeastSquares,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Model file written by `fit`.
    #[arg(value_name = "MODEL")]
    model: PathBuf,
    /// First grid point.
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    /// Last grid point (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    /// Grid spacing; must be positive.
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    /// Output CSV file; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Model file written by `fit`.
    #[arg(value_name = "MODEL")]
    model: PathBuf,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Args)]
struct PlotArgs {
    /// Model file written by `fit`.
    #[arg(value_name = "MODEL")]
    model: PathBuf,
    #[command(flatten)]
    source: SourceArgs,
    /// Output SVG file.
    #[arg(long, value_name = "FILE")]
    output: PathBuf,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`expseries eval ... | head`) instead
    // of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Smooth(args) => cmd_smooth(args)?,
        Command::Fit(args) => cmd_fit(args)?,
        Command::Eval(args) => cmd_eval(args)?,
        Command::Report(args) => cmd_report(args)?,
        Command::Plot(args) => cmd_plot(args)?,
        Command::DemoGdp(args) => return demo::run(&args),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_smooth(args: SmoothArgs) -> Result<()> {
    let series = args.source.load()?;
    let config = SmoothingConfig::new(args.passes).context("passes must be at least 1")?;
    let smoothed = smooth(&series, config)?;
    write_text(args.output.as_deref(), &csvio::series_to_csv(&smoothed))
}

fn cmd_fit(args: FitArgs) -> Result<()> {
    let series = args.source.load()?;
    let options = FitOptions {
        terms: args.terms,
        mode: args.mode.into(),
        symmetrize: true,
    };
    let model = fit(&series, &options)?;

    let mut meta = BTreeMap::new();
    meta.insert("source".to_string(), series.name().to_string());
    meta.insert(
        "mode".to_string(),
        match args.mode {
            ModeArg::Exact => "exact".to_string(),
            ModeArg::Ls => "ls".to_string(),
        },
    );
    meta.insert("terms".to_string(), args.terms.to_string());
    let doc = modeldoc::ModelDocument::from_model(&model, meta);
    fs::write(&args.output, doc.to_json())
        .with_context(|| format!("writing {}", args.output.display()))?;

    println!(
        "fitted {} terms to {} points of {}",
        model.terms().len(),
        series.len(),
        series.name()
    );
    println!("wrote {}", args.output.display());
    print_summary(&residual_report(&model, &series));
    Ok(())
}

fn print_summary(report: &FitReport) {
    println!("max |residual|  {:.3e}", report.max_abs_residual);
    println!("rms residual    {:.3e}", report.rms_residual);
    println!("max |Im Y(t)|   {:.3e}", report.max_imag);
    for (kind, value) in &report.losses {
        if *kind == LossKind::RobustCount {
            println!("{:<15} {}", kind.name(), *value as u64);
        } else {
            println!("{:<15} {value:.3e}", kind.name());
        }
    }
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let model = modeldoc::load_model(&args.model)?;
    if args.step.is_nan() || args.step <= 0.0 {
        bail!("step must be positive, got {}", args.step);
    }
    if args.to < args.from {
        bail!("empty grid: --to {} is below --from {}", args.to, args.from);
    }
    let mut out = String::from("t,re,im\n");
    for t in grid(args.from, args.to, args.step) {
        let y = model.evaluate(t);
        out.push_str(&format!("{t},{},{}\n", y.re, y.im));
    }
    write_text(args.output.as_deref(), &out)
}

/// Inclusive grid from..=to; the endpoint is kept despite rounding drift
/// and never overshot.
fn grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let mut points = Vec::new();
    for i in 0.. {
        let t = from + i as f64 * step;
        if t > to + step * 1e-9 {
            break;
        }
        points.push(t.min(to));
    }
    points
}

#[derive(Serialize)]
struct ReportDoc {
    max_abs_residual: f64,
    rms_residual: f64,
    max_imag: f64,
    nodes: Vec<NodeDoc>,
    losses: BTreeMap<&'static str, f64>,
}

#[derive(Serialize)]
struct NodeDoc {
    t: f64,
    observed: f64,
    predicted: f64,
    residual: f64,
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    let model = modeldoc::load_model(&args.model)?;
    let series = args.source.load()?;
    let report = residual_report(&model, &series);
    let doc = ReportDoc {
        max_abs_residual: report.max_abs_residual,
        rms_residual: report.rms_residual,
        max_imag: report.max_imag,
        nodes: report
            .nodes
            .iter()
            .map(|node| NodeDoc {
                t: node.t,
                observed: node.observed,
                predicted: node.predicted,
                residual: node.residual,
            })
            .collect(),
        losses: report
            .losses
            .iter()
            .map(|(kind, value)| (kind.name(), *value))
            .collect(),
    };
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    let model = modeldoc::load_model(&args.model)?;
    let series = args.source.load()?;
    let chart = svg::render_plot(&series, &model, series.name());
    fs::write(&args.output, chart).with_context(|| format!("writing {}", args.output.display()))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
