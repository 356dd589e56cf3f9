//! Benchmark problems: test cases, behaviors, and error functions.
//!
//! A [`ProblemSpec`] bundles everything strategy-independent about a task:
//! input/output shape, the gene pool programs are built from, a seeded
//! test-case generator, and the error function. Evaluating a program on a
//! case list yields a [`Behavior`] (what it outputs, per case) and an error
//! vector (how far each case output is from expected).
//!
//! Error rules:
//! - A missing output slot costs [`NO_OUTPUT_PENALTY`], large enough to
//!   dominate any achievable legitimate error.
//! - Printed text is scored by Levenshtein distance to the expected text.
//! - Numbers score their absolute difference, booleans 0/1.
//! - Integer vectors score elementwise absolute differences over the
//!   overlapping prefix plus [`VEC_LEN_PENALTY`] per element of length
//!   difference.
//! - A non-finite slot error (NaN/infinite float arithmetic) is replaced by
//!   [`NON_FINITE_ERROR`].

mod catalog;

pub use catalog::SCRABBLE_LETTER_VALUES;

use crate::push::literal::{canonical_f64_bits, Literal, LiteralKey, PushType};
use crate::push::{execute, ExecutionLimits, GenePool, Program, VmState};
use crate::rng::{self, salt};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Cost of an empty output slot.
pub const NO_OUTPUT_PENALTY: f64 = 1_000_000.0;
/// Cost per element of vector length mismatch.
pub const VEC_LEN_PENALTY: f64 = 10_000.0;
/// Substitute for NaN/infinite slot errors.
pub const NON_FINITE_ERROR: f64 = 1e12;
/// Absolute tolerance for the vector-average problem; errors at or below
/// this clamp to zero.
pub const VECTOR_AVERAGE_TOLERANCE: f64 = 1e-4;

/// Where a program's answer is read from after execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputSlot {
    /// The print buffer; always produces a value (possibly empty).
    Printed,
    /// Top of the integer stack.
    Int,
    /// Top of the float stack.
    Float,
    /// Top of the boolean stack.
    Bool,
    /// Top of the integer-vector stack.
    IntVec,
    /// Top of the float-vector stack.
    FloatVec,
}

/// One input/expected-output pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestCase {
    pub inputs: Vec<Literal>,
    pub expected: Vec<Literal>,
}

/// What one program produced in one output slot on one case.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Val(Literal),
    NoOutput,
}

/// Hashable key for an output, with canonical float handling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutputKey {
    Val(LiteralKey),
    NoOutput,
}

impl Output {
    pub fn key(&self) -> OutputKey {
        match self {
            Output::Val(lit) => OutputKey::Val(lit.key()),
            Output::NoOutput => OutputKey::NoOutput,
        }
    }
}

/// Per-case outputs, one entry per output slot.
pub type CaseOutputs = Vec<Output>;

/// Everything a program produced across a case list; the unit novelty and
/// diversity computations work on.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    pub cases: Vec<CaseOutputs>,
}

/// Hashable whole-behavior key.
pub type BehaviorKey = Vec<Vec<OutputKey>>;

impl Behavior {
    pub fn key(&self) -> BehaviorKey {
        self.cases
            .iter()
            .map(|case| case.iter().map(Output::key).collect())
            .collect()
    }
}

/// Which distance novelty methods use on this problem's case outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    /// Count of cases whose outputs differ (all components equal or not).
    HammingEquality,
    /// Sum of absolute differences of single numeric outputs.
    Manhattan,
}

/// Identifiers for the built-in problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    Csl,
    DoubleLetters,
    LastIndexOfZero,
    MirrorImage,
    NegativeToZero,
    Rswn,
    ScrabbleScore,
    Syllables,
    VectorAverage,
    XWordLines,
    EchoSmoke,
}

/// A fully assembled problem definition.
pub struct ProblemSpec {
    pub id: ProblemId,
    pub name: &'static str,
    pub description: &'static str,
    pub input_types: Vec<PushType>,
    pub output_slots: Vec<OutputSlot>,
    /// `None` means novelty methods cannot run on this problem.
    pub distance: Option<DistanceKind>,
    /// Absolute tolerance applied to float slot errors before anything else.
    pub float_tolerance: f64,
    pub pool: GenePool,
}

impl ProblemSpec {
    /// Look a problem up by its catalog name.
    pub fn by_name(name: &str) -> Result<ProblemSpec> {
        catalog::build(name).ok_or_else(|| Error::UnknownProblem(name.to_string()))
    }

    /// `(name, description)` for every problem, in catalog order.
    pub fn catalog() -> Vec<(&'static str, &'static str)> {
        catalog::NAMES
            .iter()
            .map(|&name| {
                let spec = catalog::build(name).expect("catalog names build");
                (spec.name, spec.description)
            })
            .collect()
    }

    /// The expected outputs for given inputs, from the problem's oracle.
    pub fn expected_for(&self, inputs: &[Literal]) -> Vec<Literal> {
        catalog::expected(self.id, inputs)
    }

    /// Deterministically generate disjoint train and test case lists.
    ///
    /// Fixed edge cases lead the training list; the rest is random with
    /// duplicate inputs rejected, so no test case repeats a training case.
    pub fn generate_cases(
        &self,
        seed: u64,
        n_train: usize,
        n_test: usize,
    ) -> (Vec<TestCase>, Vec<TestCase>) {
        let mut rng = rng::stream(seed, &[salt::CASES]);
        let mut seen: HashSet<String> = HashSet::new();
        let make = |inputs: Vec<Literal>, seen: &mut HashSet<String>| -> Option<TestCase> {
            let key = serde_json::to_string(&inputs).expect("literals serialize");
            if !seen.insert(key) {
                return None;
            }
            let expected = catalog::expected(self.id, &inputs);
            Some(TestCase { inputs, expected })
        };

        let mut train = Vec::with_capacity(n_train);
        for inputs in catalog::edge_inputs(self.id) {
            if train.len() >= n_train {
                break;
            }
            if let Some(case) = make(inputs, &mut seen) {
                train.push(case);
            }
        }
        let mut fill = |target: &mut Vec<TestCase>, n: usize, seen: &mut HashSet<String>| {
            let mut attempts = 0usize;
            while target.len() < n {
                attempts += 1;
                assert!(
                    attempts < 1_000_000,
                    "case generation stalled for {}; input domain too small",
                    self.name
                );
                if let Some(case) = make(catalog::random_inputs(self.id, &mut rng), seen) {
                    target.push(case);
                }
            }
        };
        fill(&mut train, n_train, &mut seen);
        let mut test = Vec::with_capacity(n_test);
        fill(&mut test, n_test, &mut seen);
        (train, test)
    }

    /// Read this problem's outputs from a finished execution.
    pub fn outputs_of(&self, vm: &VmState) -> CaseOutputs {
        self.output_slots
            .iter()
            .map(|slot| {
                let val = match slot {
                    OutputSlot::Printed => Some(Literal::Str(vm.print_buffer.clone())),
                    OutputSlot::Int => vm.int.last().map(|&x| Literal::Int(x)),
                    OutputSlot::Float => vm.float.last().map(|&x| Literal::Float(x)),
                    OutputSlot::Bool => vm.boolean.last().map(|&x| Literal::Bool(x)),
                    OutputSlot::IntVec => vm.int_vec.last().map(|x| Literal::IntVec(x.clone())),
                    OutputSlot::FloatVec => {
                        vm.float_vec.last().map(|x| Literal::FloatVec(x.clone()))
                    }
                };
                match val {
                    Some(lit) => Output::Val(lit),
                    None => Output::NoOutput,
                }
            })
            .collect()
    }

    /// Error contributed by one slot of one case.
    fn slot_error(&self, output: &Output, expected: &Literal) -> f64 {
        let raw = match output {
            Output::NoOutput => return NO_OUTPUT_PENALTY,
            Output::Val(lit) => match (lit, expected) {
                (Literal::Str(a), Literal::Str(b)) => levenshtein(a, b) as f64,
                (Literal::Int(a), Literal::Int(b)) => abs_diff_i64(*a, *b),
                (Literal::Float(a), Literal::Float(b)) => {
                    let d = (a - b).abs();
                    if d <= self.float_tolerance {
                        0.0
                    } else {
                        d
                    }
                }
                (Literal::Bool(a), Literal::Bool(b)) => {
                    if a == b {
                        0.0
                    } else {
                        1.0
                    }
                }
                (Literal::IntVec(a), Literal::IntVec(b)) => {
                    let len_diff = (a.len() as i64 - b.len() as i64).unsigned_abs() as f64;
                    let elems: f64 = a.iter().zip(b).map(|(&x, &y)| abs_diff_i64(x, y)).sum();
                    VEC_LEN_PENALTY * len_diff + elems
                }
                (Literal::FloatVec(a), Literal::FloatVec(b)) => {
                    let len_diff = (a.len() as i64 - b.len() as i64).unsigned_abs() as f64;
                    let elems: f64 = a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).sum();
                    VEC_LEN_PENALTY * len_diff + elems
                }
                (got, want) => unreachable!(
                    "slot type mismatch: got {:?}, expected {:?}",
                    got.type_of(),
                    want.type_of()
                ),
            },
        };
        if raw.is_finite() {
            raw
        } else {
            NON_FINITE_ERROR
        }
    }

    /// Error for one case: slot errors summed.
    pub fn case_error(&self, outputs: &CaseOutputs, expected: &[Literal]) -> f64 {
        assert_eq!(outputs.len(), expected.len(), "slot count mismatch");
        outputs
            .iter()
            .zip(expected)
            .map(|(o, e)| self.slot_error(o, e))
            .sum()
    }

    /// Run a program over a case list; returns its behavior and error vector.
    pub fn evaluate(
        &self,
        program: &Program,
        cases: &[TestCase],
        limits: &ExecutionLimits,
    ) -> (Behavior, Vec<f64>) {
        let mut outputs = Vec::with_capacity(cases.len());
        let mut errors = Vec::with_capacity(cases.len());
        for case in cases {
            let vm = execute(program, &case.inputs, limits);
            let out = self.outputs_of(&vm);
            errors.push(self.case_error(&out, &case.expected));
            outputs.push(out);
        }
        (Behavior { cases: outputs }, errors)
    }
}

fn abs_diff_i64(a: i64, b: i64) -> f64 {
    (a as i128 - b as i128).unsigned_abs() as f64
}

/// Levenshtein edit distance (two-row dynamic program).
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Equality check for whole case outputs, via canonical keys.
pub fn outputs_equal(a: &CaseOutputs, b: &CaseOutputs) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x.key() == y.key())
}

/// Numeric value of a single-slot numeric output, for Manhattan distances.
pub fn numeric_value(outputs: &CaseOutputs) -> Result<Option<f64>> {
    if outputs.len() != 1 {
        return Err(Error::UnsupportedDistance(
            "manhattan distance needs a single output slot".into(),
        ));
    }
    match &outputs[0] {
        Output::NoOutput => Ok(None),
        Output::Val(Literal::Int(x)) => Ok(Some(*x as f64)),
        Output::Val(Literal::Float(x)) => Ok(Some(canonical_float(*x))),
        Output::Val(other) => Err(Error::UnsupportedDistance(format!(
            "manhattan distance over non-numeric output {:?}",
            other.type_of()
        ))),
    }
}

fn canonical_float(x: f64) -> f64 {
    f64::from_bits(canonical_f64_bits(x))
}

// ---------------------------------------------------------------------------
// Case file I/O (JSON lines)

/// Serialize cases as one JSON object per line.
pub fn cases_to_jsonl(cases: &[TestCase]) -> String {
    let mut out = String::new();
    for case in cases {
        out.push_str(&serde_json::to_string(case).expect("cases serialize"));
        out.push('\n');
    }
    out
}

/// Parse cases from JSON-lines text; blank lines are skipped.
pub fn cases_from_jsonl(text: &str) -> Result<Vec<TestCase>> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(Error::from))
        .collect()
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str) -> ProblemSpec {
        ProblemSpec::by_name(name).unwrap()
    }

    #[test]
    fn catalog_is_complete() {
        let names: Vec<&str> = ProblemSpec::catalog().iter().map(|(n, _)| *n).collect();
        assert_eq!(
            names,
            vec![
                "csl",
                "double-letters",
                "last-index-of-zero",
                "mirror-image",
                "negative-to-zero",
                "rswn",
                "scrabble-score",
                "syllables",
                "vector-average",
                "x-word-lines",
                "echo-smoke",
            ]
        );
        assert!(ProblemSpec::by_name("no-such-problem").is_err());
    }

    #[test]
    fn levenshtein_known_values() {
        // Worked examples, checked against the full-matrix oracle in the
        // integration tests as well.
        assert_eq!(levenshtein("", ""), 0);
        assert_eq!(levenshtein("abc", ""), 3);
        assert_eq!(levenshtein("kitten", "sitting"), 3);
        assert_eq!(levenshtein("flaw", "lawn"), 2);
        assert_eq!(levenshtein("abc", "abc"), 0);
    }

    #[test]
    fn case_generation_is_deterministic_and_disjoint() {
        for (name, _) in ProblemSpec::catalog() {
            let p = spec(name);
            let (train1, test1) = p.generate_cases(99, 100, 300);
            let (train2, test2) = p.generate_cases(99, 100, 300);
            assert_eq!(train1, train2, "{name}: train not deterministic");
            assert_eq!(test1, test2, "{name}: test not deterministic");
            assert_eq!(train1.len(), 100);
            assert_eq!(test1.len(), 300);
            let train_keys: HashSet<String> = train1
                .iter()
                .map(|c| serde_json::to_string(&c.inputs).unwrap())
                .collect();
            assert_eq!(train_keys.len(), 100, "{name}: duplicate train inputs");
            for case in &test1 {
                let key = serde_json::to_string(&case.inputs).unwrap();
                assert!(!train_keys.contains(&key), "{name}: test overlaps train");
            }
        }
    }

    #[test]
    fn different_seeds_give_different_cases() {
        let p = spec("scrabble-score");
        let (a, _) = p.generate_cases(1, 100, 0);
        let (b, _) = p.generate_cases(2, 100, 0);
        assert_ne!(a, b);
    }

    #[test]
    fn expected_values_match_generated_cases() {
        for (name, _) in ProblemSpec::catalog() {
            let p = spec(name);
            let (train, test) = p.generate_cases(7, 50, 50);
            for case in train.iter().chain(&test) {
                assert_eq!(
                    p.expected_for(&case.inputs),
                    case.expected,
                    "{name}: oracle disagrees with generated case"
                );
            }
        }
    }

    #[test]
    fn missing_output_costs_the_penalty() {
        let p = spec("echo-smoke");
        let err = p.case_error(&vec![Output::NoOutput], &[Literal::Int(5)]);
        assert_eq!(err, NO_OUTPUT_PENALTY);
    }

    #[test]
    fn vector_errors_penalize_length_then_elements() {
        let p = spec("negative-to-zero");
        let out = vec![Output::Val(Literal::IntVec(vec![1, 5]))];
        let expected = [Literal::IntVec(vec![1, 2, 3])];
        // One element short (10000) plus |5-2| = 3 over the overlap.
        assert_eq!(p.case_error(&out, &expected), 10_003.0);
    }

    #[test]
    fn float_tolerance_clamps_small_errors() {
        let p = spec("vector-average");
        let expected = [Literal::Float(1.0)];
        let near = vec![Output::Val(Literal::Float(1.00005))];
        let far = vec![Output::Val(Literal::Float(1.5))];
        assert_eq!(p.case_error(&near, &expected), 0.0);
        assert_eq!(p.case_error(&far, &expected), 0.5);
    }

    #[test]
    fn non_finite_errors_are_clamped() {
        let p = spec("vector-average");
        let out = vec![Output::Val(Literal::Float(f64::NAN))];
        assert_eq!(p.case_error(&out, &[Literal::Float(0.0)]), NON_FINITE_ERROR);
    }

    #[test]
    fn composite_outputs_compare_componentwise() {
        let a = vec![
            Output::Val(Literal::Str("x".into())),
            Output::Val(Literal::Int(1)),
        ];
        let mut b = a.clone();
        assert!(outputs_equal(&a, &b));
        b[1] = Output::Val(Literal::Int(2));
        assert!(!outputs_equal(&a, &b));
    }

    #[test]
    fn case_files_round_trip() {
        let p = spec("rswn");
        let (train, _) = p.generate_cases(3, 10, 0);
        let text = cases_to_jsonl(&train);
        let back = cases_from_jsonl(&text).unwrap();
        assert_eq!(train, back);
    }
}
