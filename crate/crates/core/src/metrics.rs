//! Run-level measurements and statistics.
//!
//! Behavioral diversity, per-generation records, accumulated-solution
//! series, and the 2×2 chi-square test (no continuity correction) with
//! Holm correction used to compare success counts between strategies.

use crate::problems::Behavior;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Fraction of the population with a distinct behavior: the number of
/// unique output vectors across all training cases, divided by the
/// population size.
pub fn behavioral_diversity(behaviors: &[&Behavior]) -> f64 {
    if behaviors.is_empty() {
        return 0.0;
    }
    let mut keys: Vec<_> = behaviors.iter().map(|b| b.key()).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len() as f64 / behaviors.len() as f64
}

/// One row of a run's per-generation log, captured at the start of each
/// generation (before selection and breeding).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    pub behavioral_diversity: f64,
    pub best_total_error: f64,
    pub mean_total_error: f64,
    pub archive_size: usize,
    pub solution_found: bool,
}

/// Cumulative successes per generation: entry `g` counts the runs whose
/// first train-perfect program appeared at generation `g` or earlier.
pub fn accumulated_solutions(
    solution_generations: &[Option<usize>],
    max_generations: usize,
) -> Vec<usize> {
    let mut acc = vec![0usize; max_generations + 1];
    for sg in solution_generations.iter().flatten() {
        let g = (*sg).min(max_generations);
        acc[g] += 1;
    }
    let mut total = 0;
    for slot in acc.iter_mut() {
        total += *slot;
        *slot = total;
    }
    acc
}

/// Mean of the generations at which solved runs found their solutions;
/// `None` when no run solved.
pub fn mean_solution_generation(solution_generations: &[Option<usize>]) -> Option<f64> {
    let solved: Vec<usize> = solution_generations.iter().flatten().copied().collect();
    if solved.is_empty() {
        None
    } else {
        Some(solved.iter().sum::<usize>() as f64 / solved.len() as f64)
    }
}

/// Result of one 2×2 chi-square test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub p_value: f64,
}

/// Pearson chi-square on the 2×2 table of successes/failures for two
/// groups, without continuity correction. A table with a zero margin
/// (e.g. both groups all-failures) carries no signal: statistic 0, p = 1.
pub fn chi_square_2x2(
    successes_a: usize,
    total_a: usize,
    successes_b: usize,
    total_b: usize,
) -> Result<ChiSquare> {
    if successes_a > total_a || successes_b > total_b {
        return Err(Error::InvalidConfig(
            "successes cannot exceed totals in chi-square".into(),
        ));
    }
    if total_a == 0 || total_b == 0 {
        return Err(Error::InvalidConfig("chi-square groups must be non-empty".into()));
    }
    let a = successes_a as f64;
    let b = (total_a - successes_a) as f64;
    let c = successes_b as f64;
    let d = (total_b - successes_b) as f64;
    let n = a + b + c + d;
    let margins = [a + b, c + d, a + c, b + d];
    if margins.iter().any(|&m| m == 0.0) {
        return Ok(ChiSquare { statistic: 0.0, p_value: 1.0 });
    }
    let statistic = n * (a * d - b * c).powi(2) / margins.iter().product::<f64>();
    let dist = ChiSquared::new(1.0).expect("df = 1 is valid");
    let p_value = dist.sf(statistic).clamp(0.0, 1.0);
    Ok(ChiSquare { statistic, p_value })
}

/// Holm step-down adjustment. Sort the p-values ascending, multiply the
/// i-th smallest (0-based) by `m - i`, enforce monotonicity, clamp to 1,
/// and return the adjusted values in the original order.
pub fn holm_adjust(p_values: &[f64]) -> Vec<f64> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| p_values[i].total_cmp(&p_values[j]));
    let mut adjusted = vec![0.0; m];
    let mut running_max = 0.0f64;
    for (rank, &idx) in order.iter().enumerate() {
        let scaled = ((m - rank) as f64 * p_values[idx]).min(1.0);
        running_max = running_max.max(scaled);
        adjusted[idx] = running_max;
    }
    adjusted
}

/// One pairwise strategy comparison, Holm-adjusted across the whole family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub group_a: String,
    pub group_b: String,
    pub successes_a: usize,
    pub total_a: usize,
    pub successes_b: usize,
    pub total_b: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub p_holm: f64,
    /// Significant at the 0.05 level after Holm correction.
    pub significant: bool,
}

/// All pairwise chi-square comparisons between groups, Holm-corrected as
/// one family. Each group is `(name, successes, total)`.
pub fn chi_square_pairwise_holm(
    groups: &[(String, usize, usize)],
) -> Result<Vec<PairwiseComparison>> {
    let mut pairs = Vec::new();
    for i in 0..groups.len() {
        for j in (i + 1)..groups.len() {
            pairs.push((i, j, chi_square_2x2(groups[i].1, groups[i].2, groups[j].1, groups[j].2)?));
        }
    }
    let raw: Vec<f64> = pairs.iter().map(|(_, _, c)| c.p_value).collect();
    let holm = holm_adjust(&raw);
    Ok(pairs
        .into_iter()
        .zip(holm)
        .map(|((i, j, chi), p_holm)| PairwiseComparison {
            group_a: groups[i].0.clone(),
            group_b: groups[j].0.clone(),
            successes_a: groups[i].1,
            total_a: groups[i].2,
            successes_b: groups[j].1,
            total_b: groups[j].2,
            statistic: chi.statistic,
            p_value: chi.p_value,
            p_holm,
            significant: p_holm < 0.05,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::Output;
    use crate::push::Literal;

    fn int_behavior(vals: &[i64]) -> Behavior {
        Behavior {
            cases: vals
                .iter()
                .map(|&v| vec![Output::Val(Literal::Int(v))])
                .collect(),
        }
    }

    #[test]
    fn diversity_counts_distinct_behaviors() {
        let a = int_behavior(&[1, 2]);
        let b = int_behavior(&[1, 2]);
        let c = int_behavior(&[1, 3]);
        let d = int_behavior(&[9, 9]);
        assert_eq!(behavioral_diversity(&[&a, &b, &a, &b]), 0.25);
        assert_eq!(behavioral_diversity(&[&a, &b, &c, &d]), 0.75);
        assert_eq!(behavioral_diversity(&[&a, &c, &d]), 1.0);
        assert_eq!(behavioral_diversity(&[&a, &a, &c, &d]), 0.75);
        assert_eq!(behavioral_diversity(&[]), 0.0);
    }

    #[test]
    fn diversity_agrees_with_pairwise_partitioning() {
        // Independent count: group behaviors by exhaustive pairwise
        // equality instead of by key.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let n = rng.random_range(1..=12);
            let behaviors: Vec<Behavior> = (0..n)
                .map(|_| {
                    let vals: Vec<i64> = (0..3).map(|_| rng.random_range(0..3)).collect();
                    int_behavior(&vals)
                })
                .collect();
            let refs: Vec<&Behavior> = behaviors.iter().collect();
            let mut reps: Vec<&Behavior> = Vec::new();
            for b in &behaviors {
                if !reps.iter().any(|r| **r == *b) {
                    reps.push(b);
                }
            }
            let expected = reps.len() as f64 / n as f64;
            assert_eq!(behavioral_diversity(&refs), expected);
        }
    }

    #[test]
    fn accumulated_solutions_series() {
        let gens = [Some(3), None, Some(3), Some(0), None];
        assert_eq!(accumulated_solutions(&gens, 5), vec![1, 1, 1, 3, 3, 3]);
        assert_eq!(accumulated_solutions(&[], 2), vec![0, 0, 0]);
    }

    #[test]
    fn mean_solution_generation_over_solved_runs() {
        assert_eq!(mean_solution_generation(&[Some(10), None, Some(20)]), Some(15.0));
        assert_eq!(mean_solution_generation(&[None, None]), None);
    }

    #[test]
    fn chi_square_worked_example() {
        // 17/20 vs 8/20 successes. By hand: N = 40, ad - bc = 180,
        // statistic = 40·180² / (20·20·25·15) = 8.64. The p-value constant
        // comes from an independent erfc evaluation of the χ²₁ survival
        // function.
        let chi = chi_square_2x2(17, 20, 8, 20).unwrap();
        assert!((chi.statistic - 8.64).abs() < 1e-12, "stat {}", chi.statistic);
        assert!(
            (chi.p_value - 0.0032886143038479304).abs() < 1e-12,
            "p {}",
            chi.p_value
        );

        let chi = chi_square_2x2(19, 25, 6, 25).unwrap();
        assert!((chi.statistic - 13.52).abs() < 1e-12);
        assert!((chi.p_value - 0.00023603441652934908).abs() < 1e-12);
    }

    #[test]
    fn chi_square_zero_margin_is_null() {
        // Both groups all failures (or all successes): no signal.
        let chi = chi_square_2x2(0, 10, 0, 10).unwrap();
        assert_eq!(chi.statistic, 0.0);
        assert_eq!(chi.p_value, 1.0);
        let chi = chi_square_2x2(10, 10, 10, 10).unwrap();
        assert_eq!(chi.p_value, 1.0);
    }

    #[test]
    fn chi_square_identical_groups_not_significant() {
        let chi = chi_square_2x2(5, 10, 5, 10).unwrap();
        assert_eq!(chi.statistic, 0.0);
        assert_eq!(chi.p_value, 1.0);
    }

    #[test]
    fn chi_square_rejects_bad_tables() {
        assert!(chi_square_2x2(11, 10, 0, 10).is_err());
        assert!(chi_square_2x2(0, 0, 1, 10).is_err());
    }

    #[test]
    fn holm_worked_example() {
        // Textbook: {0.01, 0.02, 0.04} → {0.03, 0.04, 0.04}.
        let adjusted = holm_adjust(&[0.01, 0.02, 0.04]);
        let expected = [0.03, 0.04, 0.04];
        for (a, e) in adjusted.iter().zip(expected) {
            assert!((a - e).abs() < 1e-12, "{adjusted:?}");
        }
    }

    #[test]
    fn holm_preserves_input_order_and_clamps() {
        let adjusted = holm_adjust(&[0.9, 0.001, 0.5]);
        // Sorted: 0.001·3 = 0.003; 0.5·2 = 1.0; 0.9·1 = 0.9 → max 1.0.
        assert!((adjusted[1] - 0.003).abs() < 1e-12);
        assert_eq!(adjusted[2], 1.0);
        assert_eq!(adjusted[0], 1.0);
        assert!(holm_adjust(&[]).is_empty());
    }

    #[test]
    fn pairwise_holm_covers_all_pairs() {
        let groups = vec![
            ("a".to_string(), 17, 20),
            ("b".to_string(), 8, 20),
            ("c".to_string(), 8, 20),
        ];
        let cmp = chi_square_pairwise_holm(&groups).unwrap();
        assert_eq!(cmp.len(), 3);
        let ab = &cmp[0];
        assert_eq!((ab.group_a.as_str(), ab.group_b.as_str()), ("a", "b"));
        // Raw p ≈ 0.00329; Holm multiplies the smallest by 3.
        assert!((ab.p_holm - 3.0 * 0.0032886143038479304).abs() < 1e-9);
        assert!(ab.significant);
        let bc = &cmp[2];
        assert_eq!(bc.statistic, 0.0);
        assert_eq!(bc.p_holm, 1.0);
        assert!(!bc.significant);
    }

    #[test]
    fn generation_record_round_trips_through_json() {
        let rec = GenerationRecord {
            generation: 12,
            behavioral_diversity: 0.625,
            best_total_error: 3.0,
            mean_total_error: 41.5,
            archive_size: 13,
            solution_found: false,
        };
        let json = serde_json::to_string(&rec).unwrap();
        let back: GenerationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }
}
