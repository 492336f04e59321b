use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use phib_cli::{
    load_config, parse_report, render, run, CliError, Format, RunConfig, RunReport, SuiteKind, EXIT_ERROR, EXIT_FAIL,
    EXIT_PASS,
};

/// Sampled verification of fuzzy strong phi-b-norms on R^n.
#[derive(Debug, Parser)]
#[command(name = "phib", version)]
struct Cli {
    /// TOML run description.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Overrides `sampler.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Overrides `sampler.budget`.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Overrides `output.path`.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Overrides `output.format`: text or structured.
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Report a t-norm that is not continuous at (1,1) as a failed check.
    #[arg(long, global = true)]
    strict_tnorm_continuity: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every suite in the config.
    Run,
    /// Axiom suites.
    Verify,
    /// Norm-equivalence constants on the coefficient sphere.
    Lemma1,
    /// Completeness probe.
    Complete,
    /// Compactness probe.
    Compact,
    /// Sequence convergence and Cauchy checks.
    Sequence,
    /// Fuzzy boundedness of point sets.
    Bounded,
    /// Re-render a stored structured report.
    Report { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("phib: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    if let Command::Report { path } = &cli.command {
        let text = read(path)?;
        let report = parse_report(&text)?;
        let format = cli.format.unwrap_or(Format::Text);
        emit(&report, format, cli.output.as_deref())?;
        return Ok(exit_for(&report));
    }

    let Some(path) = &cli.config else {
        return Err(CliError::Usage("--config is required".into()));
    };
    let mut config = load_config(path)?;
    config = apply_overrides(config, &cli);
    let config = match &cli.command {
        Command::Run => config,
        Command::Verify => config.restrict_to(SuiteKind::Axioms)?,
        Command::Lemma1 => config.restrict_to(SuiteKind::Lemma1)?,
        Command::Complete => config.restrict_to(SuiteKind::Completeness)?,
        Command::Compact => config.restrict_to(SuiteKind::Compactness)?,
        Command::Sequence => config.restrict_to(SuiteKind::Sequence)?,
        Command::Bounded => config.restrict_to(SuiteKind::Boundedness)?,
        Command::Report { .. } => unreachable!("handled above"),
    };

    let report = with_pool(|| run(&config))??;
    emit(&report, config.output.format, config.output.path.as_deref())?;
    Ok(exit_for(&report))
}

fn apply_overrides(mut config: RunConfig, cli: &Cli) -> RunConfig {
    if let Some(seed) = cli.seed {
        config.sampler.seed = seed;
    }
    if let Some(budget) = cli.budget {
        config.sampler.budget = budget;
    }
    if let Some(path) = &cli.output {
        config.output.path = Some(path.clone());
    }
    if let Some(format) = cli.format {
        config.output.format = format;
    }
    if cli.strict_tnorm_continuity {
        for suite in &mut config.suites {
            if let phib_cli::SuiteConfig::Axioms {
                strict_tnorm_continuity,
                ..
            } = suite
            {
                *strict_tnorm_continuity = true;
            }
        }
    }
    config
}

/// Runs `f` on a pool sized by `PHIB_THREADS` when it is set.
fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let Ok(raw) = std::env::var("PHIB_THREADS") else {
        return Ok(f());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("PHIB_THREADS must be a positive integer, got `{raw}`")))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(report: &RunReport, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let text = render(report, format);
    match path {
        None => print!("{text}"),
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            println!(
                "verdict {}; report written to {}",
                if report.passed() { "PASS" } else { "FAIL" },
                path.display()
            );
        }
    }
    Ok(())
}

fn exit_for(report: &RunReport) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
