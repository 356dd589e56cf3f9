//! A fast built-in end-to-end check: interpreter, a known reference
//! solution, a miniature evolutionary run, determinism, and strategy
//! refusal. Prints one line per check and fails loudly on any mismatch.

use anyhow::{ensure, Result};
use gp_core::evolution::{run, EngineConfig};
use gp_core::problems::ProblemSpec;
use gp_core::push::{execute, must_parse, ExecutionLimits};
use gp_core::selection::SelectionStrategy;

fn check(name: &str, result: Result<()>) -> Result<()> {
    match result {
        Ok(()) => {
            println!("ok   {name}");
            Ok(())
        }
        Err(e) => {
            println!("FAIL {name}: {e:#}");
            Err(e)
        }
    }
}

pub fn selftest() -> Result<()> {
    check("interpreter arithmetic", {
        let vm = execute(
            &must_parse("(1 2 integer_add)"),
            &[],
            &ExecutionLimits::default(),
        );
        ensure!(vm.int == vec![3], "got {:?}", vm.int);
        Ok(())
    })?;

    check("reference program solves mirror-image", {
        let spec = ProblemSpec::by_name("mirror-image")?;
        let (train, _) = spec.generate_cases(7, 40, 0);
        let program = must_parse("(in1 in2 vector_int_reverse vector_int_eq)");
        let (_, errors) = spec.evaluate(&program, &train, &ExecutionLimits::default());
        ensure!(
            errors.iter().all(|&e| e == 0.0),
            "nonzero errors: {errors:?}"
        );
        Ok(())
    })?;

    check("error function rejects a wrong program", {
        let spec = ProblemSpec::by_name("mirror-image")?;
        let (train, _) = spec.generate_cases(7, 40, 0);
        let program = must_parse("(true)");
        let (_, errors) = spec.evaluate(&program, &train, &ExecutionLimits::default());
        ensure!(errors.iter().any(|&e| e > 0.0), "constant true scored 0");
        Ok(())
    })?;

    let mut config = EngineConfig::new("echo-smoke", SelectionStrategy::Lexicase);
    config.population_size = 40;
    config.max_generations = 10;
    config.train_cases = 20;
    config.test_cases = 20;
    config.seed = 7;
    config.simplification_steps = 200;

    let first = run(&config)?;
    check("micro evolution run solves echo-smoke", {
        ensure!(first.solution_found, "no solution in 10 generations");
        ensure!(first.generalized, "identity failed generalization");
        Ok(())
    })?;

    check("identical seeds reproduce identical runs", {
        let second = run(&config)?;
        ensure!(
            serde_json::to_string(&first)? == serde_json::to_string(&second)?,
            "outcomes differ between reruns"
        );
        Ok(())
    })?;

    check("novelty is refused where no distance exists", {
        let config = EngineConfig::new(
            "negative-to-zero",
            SelectionStrategy::Novelty { tournament_size: 2, k: 25 },
        );
        match run(&config) {
            Err(gp_core::Error::StrategyUnavailable { .. }) => Ok(()),
            other => anyhow::bail!("expected StrategyUnavailable, got {other:?}"),
        }
    })?;

    check("problem catalog is intact", {
        let catalog = ProblemSpec::catalog();
        ensure!(catalog.len() == 11, "expected 11 problems, found {}", catalog.len());
        for (name, _) in &catalog {
            ProblemSpec::by_name(name)?;
        }
        Ok(())
    })?;

    println!("selftest passed");
    Ok(())
}
