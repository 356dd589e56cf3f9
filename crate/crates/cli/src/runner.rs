//! Executes a strategy × run matrix and writes experiment artifacts.
//!
//! All randomness is derived from per-run seeds (`seed_base + run_index`),
//! so re-running an experiment with the same configuration reproduces
//! every artifact byte for byte, regardless of `--parallelism`. Jobs run
//! in parallel, but files are written afterwards in canonical order:
//! strategies as configured, run indices ascending.
//!
//! Artifacts, all inside the output directory:
//! - `experiment.json` — the resolved configuration echo
//! - `run_<strategy>_<idx>.json` — one [`RunOutcome`] per run
//! - `run_<strategy>_<idx>_generations.csv` — per-generation records
//! - `manifest.jsonl` — one summary line per run, canonical order
//! - `summary.csv` — per-strategy aggregates

use crate::config::Experiment;
use anyhow::{Context, Result};
use gp_core::evolution::{run, RunOutcome};
use gp_core::problems::ProblemSpec;
use gp_core::selection::SelectionStrategy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

/// One line of `manifest.jsonl`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub run_id: String,
    pub problem: String,
    pub strategy: String,
    pub seed: u64,
    pub outcome_file: String,
    pub generations_file: String,
    pub solution_found: bool,
    pub solution_generation: Option<usize>,
    pub generalized: bool,
    pub simplified_size: Option<usize>,
}

/// Per-strategy aggregate, one row of `summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategySummary {
    pub problem: String,
    pub strategy: String,
    pub runs: usize,
    pub successes: usize,
    pub generalized: usize,
    pub mean_solution_generation: Option<f64>,
}

fn run_id(strategy: SelectionStrategy, index: usize) -> String {
    format!("{strategy}_{index:03}")
}

/// Check every configured strategy against the problem before any output
/// directory or file exists, so unsupported combinations fail cleanly.
pub fn check_strategies(experiment: &Experiment) -> Result<Vec<SelectionStrategy>> {
    let strategies = experiment.strategies()?;
    let spec = ProblemSpec::by_name(&experiment.problem)?;
    for strategy in &strategies {
        if strategy.needs_distance() && spec.distance.is_none() {
            anyhow::bail!(
                "strategy `{strategy}` cannot run on problem `{}`: the problem defines no \
                 behavior distance, so nearest-neighbor novelty is undefined. Drop it from \
                 --strategy (novelty-lexicase remains available).",
                spec.name
            );
        }
    }
    Ok(strategies)
}

fn generations_csv(run_id: &str, outcome: &RunOutcome) -> String {
    let mut out = String::from(
        "run_id,generation,behavioral_diversity,best_total_error,mean_total_error,archive_size,solution_found\n",
    );
    for rec in &outcome.generations {
        out.push_str(&format!(
            "{run_id},{},{},{},{},{},{}\n",
            rec.generation,
            rec.behavioral_diversity,
            rec.best_total_error,
            rec.mean_total_error,
            rec.archive_size,
            rec.solution_found
        ));
    }
    out
}

/// Execute the whole experiment and write its artifacts. Returns the
/// per-strategy summaries in configured order.
pub fn execute(experiment: &Experiment) -> Result<Vec<StrategySummary>> {
    let strategies = check_strategies(experiment)?;

    let jobs: Vec<(SelectionStrategy, usize)> = strategies
        .iter()
        .flat_map(|&s| (0..experiment.runs).map(move |i| (s, i)))
        .collect();
    eprintln!(
        "running {} jobs ({} strategies x {} runs) on `{}`",
        jobs.len(),
        strategies.len(),
        experiment.runs,
        experiment.problem
    );

    let outcomes: Result<Vec<RunOutcome>, gp_core::Error> = jobs
        .par_iter()
        .map(|&(strategy, index)| {
            let config = experiment.engine_config(strategy, index);
            let outcome = run(&config)?;
            eprintln!(
                "  {} seed={} solved={} gen={:?} generalized={}",
                run_id(strategy, index),
                config.seed,
                outcome.solution_found,
                outcome.solution_generation,
                outcome.generalized
            );
            Ok(outcome)
        })
        .collect();
    let outcomes = outcomes.context("run failed")?;

    let dir = &experiment.out_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_atomic(
        &dir.join("experiment.json"),
        &(serde_json::to_string_pretty(experiment)? + "\n"),
    )?;

    let mut manifest = String::new();
    let mut summaries = Vec::new();
    for (s_idx, &strategy) in strategies.iter().enumerate() {
        let mut successes = 0;
        let mut generalized = 0;
        let mut solution_gens: Vec<Option<usize>> = Vec::new();
        for index in 0..experiment.runs {
            let outcome = &outcomes[s_idx * experiment.runs + index];
            let id = run_id(strategy, index);
            let outcome_file = format!("run_{id}.json");
            let generations_file = format!("run_{id}_generations.csv");
            write_atomic(
                &dir.join(&outcome_file),
                &(serde_json::to_string_pretty(outcome)? + "\n"),
            )?;
            write_atomic(&dir.join(&generations_file), &generations_csv(&id, outcome))?;
            let entry = ManifestEntry {
                run_id: id,
                problem: experiment.problem.clone(),
                strategy: strategy.to_string(),
                seed: outcome.config.seed,
                outcome_file,
                generations_file,
                solution_found: outcome.solution_found,
                solution_generation: outcome.solution_generation,
                generalized: outcome.generalized,
                simplified_size: outcome.simplified_size,
            };
            manifest.push_str(&serde_json::to_string(&entry)?);
            manifest.push('\n');
            successes += usize::from(outcome.solution_found);
            generalized += usize::from(outcome.generalized);
            solution_gens.push(outcome.solution_generation);
        }
        summaries.push(StrategySummary {
            problem: experiment.problem.clone(),
            strategy: strategy.to_string(),
            runs: experiment.runs,
            successes,
            generalized,
            mean_solution_generation: gp_core::metrics::mean_solution_generation(&solution_gens),
        });
    }
    write_atomic(&dir.join("manifest.jsonl"), &manifest)?;

    let mut summary_csv =
        String::from("problem,strategy,runs,successes,generalized,mean_solution_generation\n");
    for s in &summaries {
        summary_csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.problem,
            s.strategy,
            s.runs,
            s.successes,
            s.generalized,
            s.mean_solution_generation
                .map(|m| m.to_string())
                .unwrap_or_default()
        ));
    }
    write_atomic(&dir.join("summary.csv"), &summary_csv)?;
    Ok(summaries)
}

/// Write via a temp file + rename so interrupted runs never leave a
/// half-written artifact behind.
pub(crate) fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)
            .with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(content.as_bytes())?;
        f.sync_all().ok();
    }
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Load the manifest of a previously executed experiment.
pub fn read_manifest(dir: &Path) -> Result<Vec<ManifestEntry>> {
    let path = dir.join("manifest.jsonl");
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading {} (was `gplab run` executed?)", path.display()))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).with_context(|| format!("parsing manifest line {l:?}")))
        .collect()
}

/// Load one run's full outcome by manifest entry.
pub fn read_outcome(dir: &Path, entry: &ManifestEntry) -> Result<RunOutcome> {
    let path = dir.join(&entry.outcome_file);
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
