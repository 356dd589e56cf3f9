//! `gplab`: run and analyze program-synthesis experiments that compare
//! parent-selection strategies (tournament, lexicase, novelty search, and
//! novelty-lexicase) on a catalog of software-synthesis benchmarks.

mod analyze;
mod config;
mod runner;
mod selftest;

use anyhow::Result;
use clap::{Parser, Subcommand};
use config::{Overrides, Preset};
use gp_core::problems::ProblemSpec;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gplab",
    version,
    about = "Genetic programming lab: compare selection strategies on synthesis benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment: one problem, several strategies, several seeds.
    Run {
        /// Scale preset applied before config file and flags.
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// TOML configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Summarize a finished experiment directory.
    Analyze {
        /// Directory previously written by `gplab run`.
        dir: PathBuf,
    },
    /// Quick end-to-end sanity check of the whole pipeline.
    Selftest,
    /// List available problems and their strategy support.
    ListProblems,
}

fn main() {
    if let Err(e) = real_main() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn real_main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { preset, config, overrides } => {
            let experiment = config::resolve(preset, config.as_deref(), &overrides)?;
            // Validate the strategy/problem pairing before any file or
            // directory is created.
            runner::check_strategies(&experiment)?;
            if experiment.parallelism > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(experiment.parallelism)
                    .build_global()
                    .ok();
            }
            let summaries = runner::execute(&experiment)?;
            println!(
                "{:<18} {:>5} {:>7} {:>11} {:>9}",
                "strategy", "runs", "solved", "generalized", "mean gen"
            );
            for s in &summaries {
                println!(
                    "{:<18} {:>5} {:>7} {:>11} {:>9}",
                    s.strategy,
                    s.runs,
                    s.successes,
                    s.generalized,
                    s.mean_solution_generation
                        .map(|m| format!("{m:.1}"))
                        .unwrap_or_else(|| "-".into())
                );
            }
            println!("artifacts in {}", experiment.out_dir.display());
            Ok(())
        }
        Command::Analyze { dir } => analyze::analyze(&dir),
        Command::Selftest => selftest::selftest(),
        Command::ListProblems => {
            println!("{:<20} {:<8} {}", "problem", "novelty", "description");
            for (name, description) in ProblemSpec::catalog() {
                let spec = ProblemSpec::by_name(name)?;
                let novelty = if spec.distance.is_some() { "yes" } else { "no" };
                println!("{name:<20} {novelty:<8} {description}");
            }
            Ok(())
        }
    }
}
