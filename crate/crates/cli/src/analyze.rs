//! Post-hoc analysis of a finished experiment directory.
//!
//! Reads `manifest.jsonl` plus the per-run outcome files and produces:
//! - `success_counts.csv` — solved runs per strategy
//! - `generalization_rates.csv` — solutions that also pass held-out cases
//! - `accumulated_solutions.csv` — cumulative solutions by generation
//! - `diversity_curves.csv` — mean behavioral diversity by generation
//! - `significance.csv` — pairwise chi-square tests, Holm-corrected
//!
//! plus human-readable tables on stdout.

use crate::runner::{read_manifest, read_outcome, write_atomic, ManifestEntry};
use anyhow::Result;
use gp_core::evolution::RunOutcome;
use gp_core::metrics::{
    accumulated_solutions, chi_square_pairwise_holm, mean_solution_generation,
};
use std::path::Path;

struct StrategyGroup {
    name: String,
    entries: Vec<ManifestEntry>,
    outcomes: Vec<RunOutcome>,
}

fn group_by_strategy(dir: &Path, manifest: Vec<ManifestEntry>) -> Result<Vec<StrategyGroup>> {
    let mut groups: Vec<StrategyGroup> = Vec::new();
    for entry in manifest {
        let outcome = read_outcome(dir, &entry)?;
        match groups.iter_mut().find(|g| g.name == entry.strategy) {
            Some(group) => {
                group.entries.push(entry);
                group.outcomes.push(outcome);
            }
            None => groups.push(StrategyGroup {
                name: entry.strategy.clone(),
                entries: vec![entry],
                outcomes: vec![outcome],
            }),
        }
    }
    Ok(groups)
}

pub fn analyze(dir: &Path) -> Result<()> {
    let groups = group_by_strategy(dir, read_manifest(dir)?)?;
    anyhow::ensure!(!groups.is_empty(), "manifest holds no runs");
    let problem = groups[0].entries[0].problem.clone();
    let max_generation = groups
        .iter()
        .flat_map(|g| g.outcomes.iter())
        .map(|o| o.config.max_generations)
        .max()
        .unwrap_or(0);

    // --- success counts -------------------------------------------------
    let mut success_csv = String::from("problem,strategy,runs,successes,success_rate\n");
    for g in &groups {
        let n = g.entries.len();
        let s = g.entries.iter().filter(|e| e.solution_found).count();
        success_csv.push_str(&format!(
            "{problem},{},{n},{s},{}\n",
            g.name,
            s as f64 / n as f64
        ));
    }
    write_atomic(&dir.join("success_counts.csv"), &success_csv)?;

    // --- generalization -------------------------------------------------
    let mut gen_csv =
        String::from("problem,strategy,successes,generalized,generalization_rate\n");
    for g in &groups {
        let s = g.entries.iter().filter(|e| e.solution_found).count();
        let z = g.entries.iter().filter(|e| e.generalized).count();
        let rate = if s == 0 {
            String::new()
        } else {
            (z as f64 / s as f64).to_string()
        };
        gen_csv.push_str(&format!("{problem},{},{s},{z},{rate}\n", g.name));
    }
    write_atomic(&dir.join("generalization_rates.csv"), &gen_csv)?;

    // --- accumulated solutions ------------------------------------------
    let mut acc_csv = String::from("strategy,generation,cumulative_solutions\n");
    for g in &groups {
        let gens: Vec<Option<usize>> =
            g.entries.iter().map(|e| e.solution_generation).collect();
        for (generation, count) in accumulated_solutions(&gens, max_generation)
            .into_iter()
            .enumerate()
        {
            acc_csv.push_str(&format!("{},{generation},{count}\n", g.name));
        }
    }
    write_atomic(&dir.join("accumulated_solutions.csv"), &acc_csv)?;

    // --- diversity curves -----------------------------------------------
    let mut div_csv =
        String::from("strategy,generation,mean_behavioral_diversity,runs_reporting\n");
    for g in &groups {
        let longest = g
            .outcomes
            .iter()
            .map(|o| o.generations.len())
            .max()
            .unwrap_or(0);
        for generation in 0..longest {
            let values: Vec<f64> = g
                .outcomes
                .iter()
                .filter_map(|o| o.generations.get(generation))
                .map(|r| r.behavioral_diversity)
                .collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            div_csv.push_str(&format!(
                "{},{generation},{mean},{}\n",
                g.name,
                values.len()
            ));
        }
    }
    write_atomic(&dir.join("diversity_curves.csv"), &div_csv)?;

    // --- significance ---------------------------------------------------
    let group_counts: Vec<(String, usize, usize)> = groups
        .iter()
        .map(|g| {
            (
                g.name.clone(),
                g.entries.iter().filter(|e| e.solution_found).count(),
                g.entries.len(),
            )
        })
        .collect();
    let comparisons = chi_square_pairwise_holm(&group_counts)?;
    let mut sig_csv = String::from(
        "group_a,group_b,successes_a,total_a,successes_b,total_b,statistic,p_value,p_holm,significant\n",
    );
    for c in &comparisons {
        sig_csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            c.group_a,
            c.group_b,
            c.successes_a,
            c.total_a,
            c.successes_b,
            c.total_b,
            c.statistic,
            c.p_value,
            c.p_holm,
            c.significant
        ));
    }
    write_atomic(&dir.join("significance.csv"), &sig_csv)?;

    // --- stdout report --------------------------------------------------
    println!("problem: {problem}");
    println!();
    println!(
        "{:<18} {:>5} {:>7} {:>11} {:>9}",
        "strategy", "runs", "solved", "generalized", "mean gen"
    );
    for g in &groups {
        let n = g.entries.len();
        let s = g.entries.iter().filter(|e| e.solution_found).count();
        let z = g.entries.iter().filter(|e| e.generalized).count();
        let gens: Vec<Option<usize>> =
            g.entries.iter().map(|e| e.solution_generation).collect();
        let mean = mean_solution_generation(&gens)
            .map(|m| format!("{m:.1}"))
            .unwrap_or_else(|| "-".into());
        println!("{:<18} {n:>5} {s:>7} {z:>11} {mean:>9}", g.name);
    }
    println!();
    if comparisons.is_empty() {
        println!("(single strategy: no pairwise tests)");
    } else {
        println!(
            "{:<48} {:>9} {:>9} {:>12}",
            "comparison (solved)", "p", "p(Holm)", "significant"
        );
        for c in &comparisons {
            println!(
                "{:<48} {:>9.4} {:>9.4} {:>12}",
                format!(
                    "{} {}/{} vs {} {}/{}",
                    c.group_a, c.successes_a, c.total_a, c.group_b, c.successes_b, c.total_b
                ),
                c.p_value,
                c.p_holm,
                if c.significant { "yes" } else { "no" }
            );
        }
    }
    println!();
    println!("wrote analysis CSVs to {}", dir.display());
    Ok(())
}
