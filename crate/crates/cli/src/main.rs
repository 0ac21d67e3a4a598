//! `qgreen`: sample spectra, evaluate Green's functions, solve the sum/product laws and run the
//! verification experiments.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{GreenArgs, PredictArgs, SampleArgs, VerifyCommand, EXIT_NUMERICAL};

/// Exit codes: 0 pass, 1 verification failure, 2 usage or config error, 3 numerical failure.
#[derive(Parser, Debug)]
#[command(name = "qgreen", version, about)]
struct Cli {
    /// Directory for outputs written under default names.
    #[arg(long, global = true, env = "QGREEN_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads (default: logical cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a matrix (A, D + A, D A or A B^-1) and write its eigenvalues.
    Sample(SampleArgs),
    /// Predict the limiting density on a grid from the sum or product law.
    Predict(PredictArgs),
    /// Run a verification experiment; exit 1 if a threshold is breached.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Print G(lambda + eps j; X) and rho_eps for a matrix or family.
    Green(GreenArgs),
    /// Write the default JSON config of every command into a directory.
    Configs {
        #[arg(long, default_value = "configs")]
        dir: PathBuf,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(workers) = cli.workers {
        anyhow::ensure!(workers > 0, "--workers must be at least 1");
        rayon::ThreadPoolBuilder::new().num_threads(workers).build_global().context("starting the worker pool")?;
    }
    let needs_out_dir = !matches!(cli.command, Command::Green(_) | Command::Configs { .. });
    if needs_out_dir {
        std::fs::create_dir_all(&cli.out_dir)
            .with_context(|| format!("creating output directory {}", cli.out_dir.display()))?;
    }
    match &cli.command {
        Command::Sample(args) => commands::sample(args, &cli.out_dir),
        Command::Predict(args) => commands::predict(args, &cli.out_dir),
        Command::Verify(cmd) => commands::verify(cmd, &cli.out_dir),
        Command::Green(args) => commands::green_cmd(args),
        Command::Configs { dir } => {
            commands::write_templates(dir)?;
            println!("wrote default configs to {}", dir.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// 3 when the root cause is a numerical failure, 2 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    let numerical = err
        .chain()
        .filter_map(|e| e.downcast_ref::<qgreen::Error>())
        .any(|e| e.is_numerical());
    if numerical {
        EXIT_NUMERICAL
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
