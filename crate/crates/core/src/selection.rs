//! Parent selection strategies.
//!
//! Four strategies share one calling convention: given per-candidate data
//! and an RNG, return the index of the selected parent. Nothing here ever
//! fabricates an individual; a selection is always an index into the
//! population it was asked about.
//!
//! - **Tournament**: uniform entrants with replacement; lowest total error
//!   wins, ties split uniformly among the distinct tied entrants.
//! - **Lexicase**: shuffle the case list; keep only candidates with the
//!   best (lowest) score on each case in turn; stop when one remains, or
//!   pick uniformly among survivors when cases run out.
//! - **Novelty search**: behavioral novelty is the mean distance to the
//!   `k` nearest neighbors among the population and archive; a size-2
//!   tournament keeps the *most* novel entrant.
//! - **Novelty-lexicase**: lexicase over a doubled case list holding one
//!   error case and one novelty case per training case; the novelty score
//!   of a candidate on a case counts how many individuals in population ∪
//!   archive produced the same output on that case (self included, so the
//!   minimum is 1; lower means more novel).

use crate::problems::{numeric_value, outputs_equal, Behavior, DistanceKind, OutputKey};
use crate::{Error, Result};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Distance charged per case when exactly one of two behaviors lacks a
/// numeric output under the Manhattan distance. Mirrors the no-output error
/// penalty: an absent answer is maximally far from any present one.
pub const MISSING_OUTPUT_DISTANCE: f64 = 1_000_000.0;

/// The selection strategies the engine can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionStrategy {
    Tournament { size: usize },
    Lexicase,
    Novelty { tournament_size: usize, k: usize },
    NoveltyLexicase,
}

impl SelectionStrategy {
    /// Does this strategy need behavior distances (and hence an archive)?
    pub fn needs_distance(&self) -> bool {
        matches!(self, SelectionStrategy::Novelty { .. })
    }

    /// Does this strategy maintain a behavior archive?
    pub fn uses_archive(&self) -> bool {
        matches!(
            self,
            SelectionStrategy::Novelty { .. } | SelectionStrategy::NoveltyLexicase
        )
    }
}

impl fmt::Display for SelectionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionStrategy::Tournament { .. } => f.write_str("tournament"),
            SelectionStrategy::Lexicase => f.write_str("lexicase"),
            SelectionStrategy::Novelty { .. } => f.write_str("novelty"),
            SelectionStrategy::NoveltyLexicase => f.write_str("novelty-lexicase"),
        }
    }
}

impl FromStr for SelectionStrategy {
    type Err = Error;

    /// Parse a strategy name, with standard parameters filled in.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tournament" => Ok(SelectionStrategy::Tournament { size: 7 }),
            "lexicase" => Ok(SelectionStrategy::Lexicase),
            "novelty" => Ok(SelectionStrategy::Novelty {
                tournament_size: 2,
                k: 25,
            }),
            "novelty-lexicase" => Ok(SelectionStrategy::NoveltyLexicase),
            other => Err(Error::InvalidConfig(format!(
                "unknown selection strategy `{other}` \
                 (expected tournament | lexicase | novelty | novelty-lexicase)"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// Tournament

fn tournament_by(
    n: usize,
    size: usize,
    rng: &mut impl Rng,
    better: impl Fn(f64, f64) -> bool,
    value: impl Fn(usize) -> f64,
) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    if size == 0 {
        return Err(Error::InvalidConfig("tournament size must be positive".into()));
    }
    let mut entrants: Vec<usize> = (0..size).map(|_| rng.random_range(0..n)).collect();
    let mut best = value(entrants[0]);
    for &e in &entrants[1..] {
        let v = value(e);
        if better(v, best) {
            best = v;
        }
    }
    // Uniform choice among the distinct entrants achieving the best value.
    entrants.retain(|&e| value(e) == best);
    entrants.sort_unstable();
    entrants.dedup();
    Ok(*entrants.choose(rng).expect("at least one entrant"))
}

/// Tournament selection on total error: lowest wins.
pub fn tournament_select(totals: &[f64], size: usize, rng: &mut impl Rng) -> Result<usize> {
    tournament_by(totals.len(), size, rng, |a, b| a < b, |i| totals[i])
}

/// Tournament on novelty: highest wins.
pub fn novelty_tournament_select(
    novelties: &[f64],
    size: usize,
    rng: &mut impl Rng,
) -> Result<usize> {
    tournament_by(novelties.len(), size, rng, |a, b| a > b, |i| novelties[i])
}

// ---------------------------------------------------------------------------
// Lexicase

/// The generic lexicase filter: shuffle `cases`, then repeatedly keep only
/// the candidates scoring lowest on the next case. Scores are compared with
/// exact equality, as the algorithm specifies.
fn lexicase_core<C: Copy>(
    n: usize,
    cases: &mut [C],
    score: impl Fn(usize, C) -> f64,
    rng: &mut impl Rng,
) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    cases.shuffle(rng);
    let mut candidates: Vec<usize> = (0..n).collect();
    for &case in cases.iter() {
        if candidates.len() == 1 {
            break;
        }
        let best = candidates
            .iter()
            .map(|&i| score(i, case))
            .fold(f64::INFINITY, f64::min);
        candidates.retain(|&i| score(i, case) == best);
    }
    Ok(*candidates.choose(rng).expect("candidates never empties"))
}

/// Plain lexicase over error cases. `score(candidate, case)` must return
/// the candidate's error on that case.
pub fn lexicase_select(
    n_candidates: usize,
    n_cases: usize,
    score: impl Fn(usize, usize) -> f64,
    rng: &mut impl Rng,
) -> Result<usize> {
    let mut cases: Vec<usize> = (0..n_cases).collect();
    lexicase_core(n_candidates, &mut cases, score, rng)
}

/// A case in the doubled novelty-lexicase list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    /// The ordinary error on training case `i`.
    Error(usize),
    /// The novelty count on training case `i`.
    Novelty(usize),
}

/// The doubled case list for novelty-lexicase: one error case and one
/// novelty case per training case.
pub fn doubled_case_list(n_cases: usize) -> Vec<CaseId> {
    (0..n_cases)
        .flat_map(|i| [CaseId::Error(i), CaseId::Novelty(i)])
        .collect()
}

/// Novelty-lexicase: lexicase over the doubled case list, with novelty
/// counts as the scores of novelty cases (lower = rarer output).
pub fn novelty_lexicase_select(
    n_candidates: usize,
    n_cases: usize,
    error_score: impl Fn(usize, usize) -> f64,
    novelty_count: impl Fn(usize, usize) -> f64,
    rng: &mut impl Rng,
) -> Result<usize> {
    let mut cases = doubled_case_list(n_cases);
    lexicase_core(
        n_candidates,
        &mut cases,
        |i, case| match case {
            CaseId::Error(c) => error_score(i, c),
            CaseId::Novelty(c) => novelty_count(i, c),
        },
        rng,
    )
}

/// Per-candidate, per-case novelty counts: how many members of population ∪
/// archive produced the same output on that case. Self is included, so
/// every count is at least 1.
pub fn case_novelty_counts(
    population: &[&Behavior],
    archive: &[Behavior],
) -> Result<Vec<Vec<usize>>> {
    let Some(first) = population.first() else {
        return Err(Error::EmptyPopulation);
    };
    let n_cases = first.cases.len();
    for b in population.iter().copied().chain(archive.iter()) {
        if b.cases.len() != n_cases {
            return Err(Error::BehaviorShape(format!(
                "expected {n_cases} cases, found {}",
                b.cases.len()
            )));
        }
    }
    let mut counts = vec![Vec::with_capacity(n_cases); population.len()];
    let mut tally: HashMap<Vec<OutputKey>, usize> = HashMap::new();
    for case in 0..n_cases {
        tally.clear();
        for b in population.iter().copied().chain(archive.iter()) {
            let key: Vec<OutputKey> = b.cases[case].iter().map(|o| o.key()).collect();
            *tally.entry(key).or_insert(0) += 1;
        }
        for (i, b) in population.iter().enumerate() {
            let key: Vec<OutputKey> = b.cases[case].iter().map(|o| o.key()).collect();
            counts[i].push(tally[&key]);
        }
    }
    Ok(counts)
}

// ---------------------------------------------------------------------------
// Behavior distances and novelty search

/// Distance between two behaviors under the given kind.
pub fn behavior_distance(a: &Behavior, b: &Behavior, kind: DistanceKind) -> Result<f64> {
    if a.cases.len() != b.cases.len() {
        return Err(Error::BehaviorShape(format!(
            "behaviors cover {} vs {} cases",
            a.cases.len(),
            b.cases.len()
        )));
    }
    match kind {
        DistanceKind::HammingEquality => Ok(a
            .cases
            .iter()
            .zip(&b.cases)
            .filter(|(x, y)| !outputs_equal(x, y))
            .count() as f64),
        DistanceKind::Manhattan => {
            let mut total = 0.0;
            for (x, y) in a.cases.iter().zip(&b.cases) {
                total += match (numeric_value(x)?, numeric_value(y)?) {
                    (Some(u), Some(v)) => {
                        let d = (u - v).abs();
                        if d.is_finite() {
                            d
                        } else {
                            MISSING_OUTPUT_DISTANCE
                        }
                    }
                    (None, None) => 0.0,
                    _ => MISSING_OUTPUT_DISTANCE,
                };
            }
            Ok(total)
        }
    }
}

/// Mean distance to the `k` nearest neighbors in population ∪ archive
/// (fewer, if fewer exist). An individual with no neighbors scores 0.
pub fn novelty_scores(
    population: &[&Behavior],
    archive: &[Behavior],
    k: usize,
    kind: DistanceKind,
) -> Result<Vec<f64>> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    if k == 0 {
        return Err(Error::InvalidConfig("novelty k must be positive".into()));
    }
    let mut scores = Vec::with_capacity(population.len());
    let mut dists: Vec<f64> = Vec::new();
    for (i, me) in population.iter().enumerate() {
        dists.clear();
        for (j, other) in population.iter().enumerate() {
            if j != i {
                dists.push(behavior_distance(me, other, kind)?);
            }
        }
        for other in archive {
            dists.push(behavior_distance(me, other, kind)?);
        }
        dists.sort_unstable_by(f64::total_cmp);
        let take = k.min(dists.len());
        if take == 0 {
            scores.push(0.0);
        } else {
            scores.push(dists[..take].iter().sum::<f64>() / take as f64);
        }
    }
    Ok(scores)
}

/// The novelty archive: behaviors of randomly sampled past individuals.
#[derive(Debug, Clone, Default)]
pub struct Archive {
    pub behaviors: Vec<Behavior>,
}

impl Archive {
    pub fn new() -> Self {
        Archive::default()
    }

    pub fn len(&self) -> usize {
        self.behaviors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.behaviors.is_empty()
    }

    /// Add one uniformly random member of the population; called once per
    /// generation after parent selection.
    pub fn update(&mut self, population: &[&Behavior], rng: &mut impl Rng) -> Result<()> {
        let chosen = population.choose(rng).ok_or(Error::EmptyPopulation)?;
        self.behaviors.push((*chosen).clone());
        Ok(())
    }
}

// ---------------------------------------------------------------------------
