use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::Parser;

use hspin_verify::config::{parse_list, SUITES};
use hspin_verify::{emit_report, run_suite, Format, SuiteConfig};

/// Runs exact identity suites for higher spin conformally invariant operators.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// Suite id; `all` runs everything.
    #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    /// Comma-separated dimensions. An empty value gives an empty grid.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Operator orders (also `t` for intertwining and cocycle suites).
    #[arg(long)]
    order: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Term budget per operator application; 0 disables it.
    #[arg(long, default_value_t = hspin_core::identities::DEFAULT_BUDGET)]
    budget: usize,
    /// Relative tolerance of the numeric δ suite.
    #[arg(long, default_value_t = 5e-2)]
    tolerance: f64,
    /// Quadrature points per axis of the numeric δ suite.
    #[arg(long, default_value_t = 64)]
    resolution: usize,
    /// Report path; stdout when absent or `-`.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, env = "HSPIN_JOBS")]
    jobs: Option<usize>,
}

fn list<T: std::str::FromStr>(s: &Option<String>) -> anyhow::Result<Option<Vec<T>>>
where
    T::Err: std::fmt::Display,
{
    s.as_deref().map(parse_list).transpose().map_err(|e| anyhow!(e))
}

fn config(cli: &Cli) -> anyhow::Result<SuiteConfig> {
    let mut cfg = SuiteConfig::new(&cli.suite);
    cfg.m = list(&cli.m).context("--m")?;
    cfg.k = list(&cli.k).context("--k")?;
    cfg.order = list(&cli.order).context("--order")?;
    cfg.alpha = list(&cli.alpha).context("--alpha")?;
    cfg.beta = list(&cli.beta).context("--beta")?;
    cfg.s = list(&cli.s).context("--s")?;
    cfg.seed = cli.seed;
    cfg.budget = (cli.budget > 0).then_some(cli.budget);
    cfg.tolerance = cli.tolerance;
    cfg.resolution = cli.resolution;
    cfg.output = cli.report.clone();
    cfg.jobs = cli.jobs;
    Ok(cfg)
}

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let cfg = config(&cli)?;
    let report = run_suite(&cfg).map_err(|e| anyhow!(e))?;
    emit_report(&report, cli.report.as_deref(), cli.format).context("writing report")?;
    Ok(if report.has_failures() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}
