use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freefermi::experiment::verify::run_verify;
use freefermi::experiment::{commands, output, ConfigOverrides, ExperimentConfig, OutputFormat};
use freefermi::gfmps::ladder::Strategy;
use freefermi::Error;

#[derive(Parser)]
#[command(name = "freefermi", version, about = "Free-fermion Gaussian-state experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Rényi entropy versus interval length, with fitted log slopes
    EntropyScaling,
    /// Counts of entanglement eigenvalues below μ
    Counting,
    /// Minimal ladder bond dimension versus ring size
    GfmpsScan,
    /// Gaussian versus non-Gaussian truncation of the antipodal-pair ring
    Toy,
    /// Run the self-check suite and emit a JSON report
    Verify,
    /// Dump raw entanglement eigenvalues
    Spectrum,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::EntropyScaling => "entropy-scaling",
            Command::Counting => "counting",
            Command::GfmpsScan => "gfmps-scan",
            Command::Toy => "toy",
            Command::Verify => "verify",
            Command::Spectrum => "spectrum",
        }
    }
}

#[derive(Args)]
struct Flags {
    /// JSON config file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Ring sizes (or interval lengths on the infinite chain)
    #[arg(long, global = true, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// L/N on finite rings; omit for the infinite chain
    #[arg(long, global = true)]
    ratio: Option<f64>,
    /// Rényi indices, `inf` allowed
    #[arg(long, global = true, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    mu: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    delta_target: Option<Vec<f64>>,
    /// all-near-fermi, log-spread, fourier or chebyshev
    #[arg(long, global = true)]
    strategy: Option<Strategy>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Worker threads, 0 for all cores
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Omit the timestamp line and zero wall times
    #[arg(long, global = true)]
    no_timestamp: bool,
}

impl Flags {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            n_list: self.n_list.clone(),
            ratio: self.ratio,
            alpha: self.alpha.clone(),
            mu: self.mu.clone(),
            delta_target: self.delta_target.clone(),
            strategy: self.strategy,
            eta: self.eta,
            beta: self.beta,
            epsilon: self.epsilon,
            seed: self.seed,
            out: self.out.clone(),
            format: self.format,
            workers: self.workers,
            no_timestamp: self.no_timestamp,
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_validation() {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

fn verify(cfg: &ExperimentConfig) -> Result<bool, Error> {
    let seed = cfg.require_seed("verify")?;
    let report = run_verify(seed);
    let mut body = serde_json::to_vec_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    body.push(b'\n');
    match &cfg.out {
        Some(p) => std::fs::write(p, body)?,
        None => std::io::Write::write_all(&mut std::io::stdout(), &body)?,
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}: max error {:e} (tolerance {:e}) {}", c.name, c.max_error, c.tolerance, c.detail);
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (cfg, sources) = match ExperimentConfig::resolve(cli.flags.config.as_deref(), cli.flags.overrides()) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let name = cli.command.name();
    let table = match cli.command {
        Command::Verify => {
            return match verify(&cfg) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(3),
                Err(e) => fail(&e),
            }
        }
        Command::EntropyScaling => commands::entropy_scaling(&cfg),
        Command::Counting => commands::counting(&cfg),
        Command::GfmpsScan => commands::gfmps_scan(&cfg),
        Command::Toy => commands::toy(&cfg),
        Command::Spectrum => commands::spectrum(&cfg),
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    if let Some(n) = table.summary.get("saturated_records").and_then(|v| v.as_u64()) {
        if n > 0 {
            eprintln!("warning: {n} saturated records (target not reached within χ_M ≤ N)");
        }
    }
    match output::write_table(name, &cfg, &sources, &table) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
