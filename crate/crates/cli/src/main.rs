use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spectpd_cli::config::{ConfigError, Experiment, ExperimentConfig, OutputFormat};
use spectpd_cli::{output, RunError};

/// Seeded random-matrix persistence experiments with CSV/JSON output.
#[derive(Debug, Parser)]
#[command(name = "spectpd", version = env!("SPECTPD_VERSION"))]
struct Args {
    /// universality, pe_table, ensembles, surmise_ks, w2, auc, rp_sweep, spiked or ecdf_fig
    experiment: String,
    /// Flat `key = value` config file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per cell (pairs for w2).
    #[arg(long)]
    samples: Option<usize>,
    /// Comma-separated matrix sizes.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
}

fn configure(args: &Args) -> Result<ExperimentConfig, ConfigError> {
    let experiment: Experiment = args.experiment.parse()?;
    let mut cfg = ExperimentConfig::defaults(experiment);
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        cfg.apply_file(&text)?;
    }
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(samples) = args.samples {
        cfg.samples_per_cell = samples;
    }
    if let Some(sizes) = &args.sizes {
        cfg.set("sizes", sizes)?;
    }
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if let Some(format) = &args.format {
        cfg.format = format.parse::<OutputFormat>()?;
    }
    if let Some(threads) = args.threads {
        cfg.threads = Some(threads);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(args: &Args) -> Result<PathBuf, RunError> {
    let cfg = configure(args)?;
    if let Some(threads) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    }
    let result = spectpd_cli::run(&cfg)?;
    Ok(output::write_result(&result, &cfg.output_dir, cfg.format)?)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(dir) => {
            println!("{}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("spectpd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
