//! Experiment configuration: presets, TOML files, and flag overrides.
//!
//! Precedence, lowest to highest: built-in defaults, `--preset`, the
//! `--config` TOML file, then individual command-line flags. The resolved
//! [`Experiment`] is echoed into the output directory so an experiment is
//! reproducible from its artifacts alone.

use anyhow::{bail, Context, Result};
use gp_core::evolution::EngineConfig;
use gp_core::selection::SelectionStrategy;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Partial configuration as read from a TOML file; every field optional.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub problem: Option<String>,
    pub strategies: Option<Vec<String>>,
    pub runs: Option<usize>,
    pub seed_base: Option<u64>,
    pub population_size: Option<usize>,
    pub max_generations: Option<usize>,
    pub train_cases: Option<usize>,
    pub test_cases: Option<usize>,
    pub step_limit: Option<usize>,
    pub max_genome_size: Option<usize>,
    pub max_initial_genome_size: Option<usize>,
    pub stop_on_solution: Option<bool>,
    pub simplification_steps: Option<usize>,
    pub parallelism: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Scale presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Small populations and short runs for quick local experiments.
    Desk,
    /// Population 1000 for 300 generations, as in full-scale comparisons.
    Paper300,
    /// Population 1000 for 1000 generations.
    Paper1000,
}

/// A fully resolved experiment: one problem, several strategies, several
/// runs per strategy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub problem: String,
    pub strategy_names: Vec<String>,
    pub runs: usize,
    pub seed_base: u64,
    pub population_size: usize,
    pub max_generations: usize,
    pub train_cases: usize,
    pub test_cases: usize,
    pub step_limit: usize,
    pub max_genome_size: usize,
    pub max_initial_genome_size: usize,
    pub stop_on_solution: bool,
    pub simplification_steps: usize,
    /// Worker threads for the run matrix; 0 means "let rayon decide".
    pub parallelism: usize,
    pub out_dir: PathBuf,
}

impl Experiment {
    /// Desk-scale defaults; everything else is layered on top.
    fn defaults() -> Experiment {
        Experiment {
            problem: String::new(),
            strategy_names: vec![
                "tournament".into(),
                "lexicase".into(),
                "novelty".into(),
                "novelty-lexicase".into(),
            ],
            runs: 10,
            seed_base: 1000,
            population_size: 200,
            max_generations: 100,
            train_cases: 100,
            test_cases: 100,
            step_limit: 2000,
            max_genome_size: 800,
            max_initial_genome_size: 100,
            stop_on_solution: true,
            simplification_steps: 5000,
            parallelism: 0,
            out_dir: PathBuf::new(),
        }
    }

    fn apply_preset(&mut self, preset: Preset) {
        match preset {
            Preset::Desk => {
                self.population_size = 200;
                self.max_generations = 100;
                self.train_cases = 100;
                self.test_cases = 100;
            }
            Preset::Paper300 => {
                self.population_size = 1000;
                self.max_generations = 300;
                self.train_cases = 100;
                self.test_cases = 1000;
            }
            Preset::Paper1000 => {
                self.population_size = 1000;
                self.max_generations = 1000;
                self.train_cases = 100;
                self.test_cases = 1000;
            }
        }
    }

    fn apply_file(&mut self, file: &FileConfig) {
        if let Some(v) = &file.problem {
            self.problem = v.clone();
        }
        if let Some(v) = &file.strategies {
            self.strategy_names = v.clone();
        }
        if let Some(v) = file.runs {
            self.runs = v;
        }
        if let Some(v) = file.seed_base {
            self.seed_base = v;
        }
        if let Some(v) = file.population_size {
            self.population_size = v;
        }
        if let Some(v) = file.max_generations {
            self.max_generations = v;
        }
        if let Some(v) = file.train_cases {
            self.train_cases = v;
        }
        if let Some(v) = file.test_cases {
            self.test_cases = v;
        }
        if let Some(v) = file.step_limit {
            self.step_limit = v;
        }
        if let Some(v) = file.max_genome_size {
            self.max_genome_size = v;
        }
        if let Some(v) = file.max_initial_genome_size {
            self.max_initial_genome_size = v;
        }
        if let Some(v) = file.stop_on_solution {
            self.stop_on_solution = v;
        }
        if let Some(v) = file.simplification_steps {
            self.simplification_steps = v;
        }
        if let Some(v) = file.parallelism {
            self.parallelism = v;
        }
        if let Some(v) = &file.out_dir {
            self.out_dir = v.clone();
        }
    }

    /// The parsed strategies, in configured order.
    pub fn strategies(&self) -> Result<Vec<SelectionStrategy>> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for name in &self.strategy_names {
            if seen.contains(name) {
                bail!("strategy `{name}` listed twice");
            }
            seen.push(name.clone());
            out.push(name.parse::<SelectionStrategy>()?);
        }
        if out.is_empty() {
            bail!("no strategies configured");
        }
        Ok(out)
    }

    /// The engine configuration for one run of one strategy.
    pub fn engine_config(&self, strategy: SelectionStrategy, run_index: usize) -> EngineConfig {
        let mut config = EngineConfig::new(&self.problem, strategy);
        config.population_size = self.population_size;
        config.max_generations = self.max_generations;
        config.train_cases = self.train_cases;
        config.test_cases = self.test_cases;
        config.seed = self.seed_base + run_index as u64;
        config.step_limit = self.step_limit;
        config.max_genome_size = self.max_genome_size;
        config.max_initial_genome_size = self.max_initial_genome_size;
        config.stop_on_solution = self.stop_on_solution;
        config.simplification_steps = self.simplification_steps;
        config
    }

    fn validate(&self) -> Result<()> {
        if self.problem.is_empty() {
            bail!("no problem selected (use --problem or a config file)");
        }
        if self.runs == 0 {
            bail!("runs must be positive");
        }
        self.strategies()?;
        Ok(())
    }
}

/// Flag-level overrides collected by the `run` subcommand.
#[derive(Debug, Default, Clone, clap::Args)]
pub struct Overrides {
    /// Problem to evolve solutions for (see `list-problems`).
    #[arg(long)]
    pub problem: Option<String>,
    /// Comma-separated strategies to compare.
    #[arg(long, value_delimiter = ',')]
    pub strategy: Option<Vec<String>>,
    /// Independent runs per strategy.
    #[arg(long)]
    pub runs: Option<usize>,
    /// Base seed; run `i` of every strategy uses seed `seed + i`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub population_size: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    /// Number of training cases.
    #[arg(long)]
    pub train: Option<usize>,
    /// Number of held-out test cases.
    #[arg(long)]
    pub test: Option<usize>,
    #[arg(long)]
    pub step_limit: Option<usize>,
    #[arg(long)]
    pub max_genome_size: Option<usize>,
    #[arg(long)]
    pub max_initial_genome_size: Option<usize>,
    /// Keep breeding after a solution appears (for full diversity curves).
    #[arg(long)]
    pub no_stop_on_solution: bool,
    #[arg(long)]
    pub simplification_steps: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// Output directory for artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Resolve an experiment from all configuration layers.
pub fn resolve(
    preset: Option<Preset>,
    config_path: Option<&Path>,
    overrides: &Overrides,
) -> Result<Experiment> {
    let mut exp = Experiment::defaults();
    if let Some(p) = preset {
        exp.apply_preset(p);
    }
    if let Some(path) = config_path {
        exp.apply_file(&FileConfig::load(path)?);
    }
    if let Some(v) = &overrides.problem {
        exp.problem = v.clone();
    }
    if let Some(v) = &overrides.strategy {
        exp.strategy_names = v.clone();
    }
    if let Some(v) = overrides.runs {
        exp.runs = v;
    }
    if let Some(v) = overrides.seed {
        exp.seed_base = v;
    }
    if let Some(v) = overrides.population_size {
        exp.population_size = v;
    }
    if let Some(v) = overrides.generations {
        exp.max_generations = v;
    }
    if let Some(v) = overrides.train {
        exp.train_cases = v;
    }
    if let Some(v) = overrides.test {
        exp.test_cases = v;
    }
    if let Some(v) = overrides.step_limit {
        exp.step_limit = v;
    }
    if let Some(v) = overrides.max_genome_size {
        exp.max_genome_size = v;
    }
    if let Some(v) = overrides.max_initial_genome_size {
        exp.max_initial_genome_size = v;
    }
    if overrides.no_stop_on_solution {
        exp.stop_on_solution = false;
    }
    if let Some(v) = overrides.simplification_steps {
        exp.simplification_steps = v;
    }
    if let Some(v) = overrides.parallelism {
        exp.parallelism = v;
    }
    if let Some(v) = &overrides.out {
        exp.out_dir = v.clone();
    }
    if exp.out_dir.as_os_str().is_empty() && !exp.problem.is_empty() {
        let root = std::env::var_os("GPLAB_OUT_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("gplab-out"));
        exp.out_dir = root.join(&exp.problem);
    }
    exp.validate()?;
    Ok(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_overrides() -> Overrides {
        Overrides {
            problem: Some("mirror-image".into()),
            out: Some(PathBuf::from("/tmp/x")),
            ..Overrides::default()
        }
    }

    #[test]
    fn defaults_resolve_with_problem_and_out() {
        let exp = resolve(None, None, &base_overrides()).unwrap();
        assert_eq!(exp.population_size, 200);
        assert_eq!(exp.runs, 10);
        assert_eq!(exp.strategy_names.len(), 4);
        assert!(exp.stop_on_solution);
    }

    #[test]
    fn preset_and_flags_layer_in_order() {
        let mut ov = base_overrides();
        ov.population_size = Some(50);
        let exp = resolve(Some(Preset::Paper300), None, &ov).unwrap();
        // The preset sets 1000; the flag overrides to 50; generations stay
        // at the preset's 300.
        assert_eq!(exp.population_size, 50);
        assert_eq!(exp.max_generations, 300);
        assert_eq!(exp.test_cases, 1000);
    }

    #[test]
    fn file_layer_sits_between_preset_and_flags() {
        let dir = std::env::temp_dir().join("gplab-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exp.toml");
        std::fs::write(
            &path,
            "problem = \"csl\"\nruns = 3\npopulation_size = 77\nstrategies = [\"lexicase\"]\n",
        )
        .unwrap();
        let mut ov = Overrides::default();
        ov.out = Some(PathBuf::from("/tmp/y"));
        ov.runs = Some(5);
        let exp = resolve(Some(Preset::Desk), Some(&path), &ov).unwrap();
        assert_eq!(exp.problem, "csl");
        assert_eq!(exp.population_size, 77, "file beats preset");
        assert_eq!(exp.runs, 5, "flag beats file");
        assert_eq!(exp.strategy_names, vec!["lexicase".to_string()]);
    }

    #[test]
    fn unknown_fields_and_strategies_are_rejected() {
        let dir = std::env::temp_dir().join("gplab-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.toml");
        std::fs::write(&path, "problme = \"csl\"\n").unwrap();
        assert!(resolve(None, Some(&path), &base_overrides()).is_err());

        let mut ov = base_overrides();
        ov.strategy = Some(vec!["roulette".into()]);
        assert!(resolve(None, None, &ov).is_err());

        let mut ov = base_overrides();
        ov.strategy = Some(vec!["lexicase".into(), "lexicase".into()]);
        assert!(resolve(None, None, &ov).is_err());
    }

    #[test]
    fn engine_config_embeds_run_seed() {
        let exp = resolve(None, None, &base_overrides()).unwrap();
        let cfg = exp.engine_config(SelectionStrategy::Lexicase, 4);
        assert_eq!(cfg.seed, exp.seed_base + 4);
        assert_eq!(cfg.problem, "mirror-image");
        assert_eq!(cfg.population_size, 200);
    }
}
