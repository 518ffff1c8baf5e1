use clap::{Args, Parser, Subcommand};
use fbg_cli::{list_scenarios, run_gauge_check, run_identities, run_residuals, CliError, Report, RunConfig};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fbg", about = "Frame-bundle gravity residual checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the available scenarios as JSON.
    Scenarios,
    /// Run the algebra and exterior-calculus identity suites.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the field-equation and fibration residuals over sampled points.
    Residuals(RunArgs),
    /// Check gauge invariance and the momentum shift over sampled points.
    GaugeCheck(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Any config key, as `key=value`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut overrides: Vec<(String, String)> = Vec::new();
        for item in &self.set {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("--set expects key=value, got `{item}`")))?;
            overrides.push((k.to_string(), v.to_string()));
        }
        if let Some(s) = &self.scenario {
            overrides.push(("scenario".into(), s.clone()));
        }
        if let Some(n) = self.points {
            overrides.push(("points".into(), n.to_string()));
        }
        if let Some(s) = self.seed {
            overrides.push(("seed".into(), s.to_string()));
        }
        if let Some(o) = &self.out {
            overrides.push(("out".into(), o.display().to_string()));
        }
        RunConfig::load(self.config.as_deref(), std::env::vars(), &overrides)
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
                _ => Ok(()),
            }
        }
    }
}

fn finish(report: &Report, out: Option<&Path>) -> Result<i32, CliError> {
    emit(&report.to_json()?, out)?;
    for f in report.families.iter().filter(|f| !f.passed) {
        eprintln!("FAIL {}: {:e} > {:e}", f.name, f.max_abs, f.tolerance);
    }
    for s in report.identities.iter().filter(|s| !s.passed) {
        eprintln!("FAIL {}: {:e} > {:e}", s.name, s.max_residual, s.tolerance);
    }
    eprintln!("{}: {:?} in {:.2}s", report.command, report.verdict, report.wall_time_s);
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Scenarios => {
            emit(&serde_json::to_string_pretty(&list_scenarios())?, None)?;
            Ok(0)
        }
        Command::Identities { seed, out } => finish(&run_identities(seed)?, out.as_deref()),
        Command::Residuals(args) => {
            let cfg = args.load()?;
            finish(&run_residuals(&cfg)?, cfg.out.as_deref())
        }
        Command::GaugeCheck(args) => {
            let cfg = args.load()?;
            finish(&run_gauge_check(&cfg)?, cfg.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
