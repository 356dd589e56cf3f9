//! The built-in problem catalog.
//!
//! Each problem contributes an oracle (`expected`), a fixed list of edge
//! inputs that always lead the training set, a random input generator, and
//! a gene pool sized to the task. Input text is ASCII: strings use visible
//! characters (`0x21..=0x7e`) plus, where stated, spaces.

use super::{DistanceKind, OutputSlot, ProblemId, ProblemSpec};
use crate::push::genome::{ErcKind, GenePool, GeneSource};
use crate::push::literal::{Literal, PushType};
use rand::Rng;

/// Catalog order; also the order `list-problems` prints.
pub const NAMES: [&str; 11] = [
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
];

/// Scrabble tile value per ASCII code; letters score case-insensitively,
/// everything else scores zero.
pub const SCRABBLE_LETTER_VALUES: [i64; 128] = build_scrabble_table();

const fn build_scrabble_table() -> [i64; 128] {
    let mut table = [0i64; 128];
    let values: [(u8, i64); 26] = [
        (b'a', 1),
        (b'b', 3),
        (b'c', 3),
        (b'd', 2),
        (b'e', 1),
        (b'f', 4),
        (b'g', 2),
        (b'h', 4),
        (b'i', 1),
        (b'j', 8),
        (b'k', 5),
        (b'l', 1),
        (b'm', 3),
        (b'n', 1),
        (b'o', 1),
        (b'p', 3),
        (b'q', 10),
        (b'r', 1),
        (b's', 1),
        (b't', 1),
        (b'u', 1),
        (b'v', 4),
        (b'w', 4),
        (b'x', 8),
        (b'y', 4),
        (b'z', 10),
    ];
    let mut i = 0;
    while i < values.len() {
        let (c, v) = values[i];
        table[c as usize] = v;
        table[(c - 32) as usize] = v;
        i += 1;
    }
    table
}

// ---------------------------------------------------------------------------
// Construction

pub(super) fn build(name: &str) -> Option<ProblemSpec> {
    let spec = match name {
        "csl" => ProblemSpec {
            id: ProblemId::Csl,
            name: "csl",
            description: "given three strings, are their lengths strictly increasing?",
            input_types: vec![PushType::Str, PushType::Str, PushType::Str],
            output_slots: vec![OutputSlot::Bool],
            distance: Some(DistanceKind::HammingEquality),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "in2",
                    "in3",
                    "string_length",
                    "string_dup",
                    "string_swap",
                    "string_pop",
                    "integer_lt",
                    "integer_gt",
                    "integer_eq",
                    "integer_dup",
                    "integer_swap",
                    "integer_pop",
                    "boolean_and",
                    "boolean_or",
                    "boolean_not",
                    "boolean_dup",
                    "exec_if",
                    "noop",
                ],
                vec![GeneSource::Erc(ErcKind::Bool)],
            ),
        },
        "double-letters" => ProblemSpec {
            id: ProblemId::DoubleLetters,
            name: "double-letters",
            description: "print the string with letters doubled and exclamation marks tripled",
            input_types: vec![PushType::Str],
            output_slots: vec![OutputSlot::Printed],
            distance: Some(DistanceKind::HammingEquality),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "string_length",
                    "string_char_at",
                    "string_code_at",
                    "string_eq",
                    "string_dup",
                    "string_swap",
                    "string_pop",
                    "print_string",
                    "exec_do_count",
                    "exec_if",
                    "exec_when",
                    "boolean_and",
                    "boolean_or",
                    "boolean_not",
                    "integer_gt",
                    "integer_lt",
                    "integer_dup",
                    "integer_pop",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::Str("!".into())),
                    GeneSource::Const(Literal::Int(64)),
                    GeneSource::Const(Literal::Int(91)),
                    GeneSource::Const(Literal::Int(96)),
                    GeneSource::Const(Literal::Int(123)),
                    GeneSource::Erc(ErcKind::Int),
                    GeneSource::Erc(ErcKind::VisibleChar),
                ],
            ),
        },
        "last-index-of-zero" => ProblemSpec {
            id: ProblemId::LastIndexOfZero,
            name: "last-index-of-zero",
            description: "index of the last zero in a vector that contains at least one",
            input_types: vec![PushType::IntVec],
            output_slots: vec![OutputSlot::Int],
            distance: Some(DistanceKind::Manhattan),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "vector_int_length",
                    "vector_int_reverse",
                    "vector_int_indexof",
                    "vector_int_nth",
                    "vector_int_dup",
                    "vector_int_pop",
                    "integer_add",
                    "integer_sub",
                    "integer_dup",
                    "integer_swap",
                    "integer_pop",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::Int(0)),
                    GeneSource::Const(Literal::Int(1)),
                    GeneSource::Erc(ErcKind::Int),
                ],
            ),
        },
        "mirror-image" => ProblemSpec {
            id: ProblemId::MirrorImage,
            name: "mirror-image",
            description: "are two vectors reverses of each other?",
            input_types: vec![PushType::IntVec, PushType::IntVec],
            output_slots: vec![OutputSlot::Bool],
            distance: Some(DistanceKind::HammingEquality),
            float_tolerance: 0.0,
            // Everything registered for the problem's stack types (exec,
            // integer, boolean, integer vector), so solutions must be
            // discovered rather than assembled from a shortlist.
            pool: GenePool::new(
                &[
                    "in1",
                    "in2",
                    "exec_if",
                    "exec_when",
                    "exec_dup",
                    "exec_pop",
                    "exec_swap",
                    "exec_do_range",
                    "exec_do_count",
                    "exec_do_times",
                    "exec_while",
                    "noop",
                    "noop_open",
                    "integer_add",
                    "integer_sub",
                    "integer_mult",
                    "integer_div",
                    "integer_mod",
                    "integer_max",
                    "integer_min",
                    "integer_abs",
                    "integer_eq",
                    "integer_lt",
                    "integer_gt",
                    "integer_dup",
                    "integer_swap",
                    "integer_rot",
                    "integer_pop",
                    "boolean_and",
                    "boolean_or",
                    "boolean_not",
                    "boolean_dup",
                    "boolean_swap",
                    "boolean_pop",
                    "boolean_to_integer",
                    "vector_int_length",
                    "vector_int_nth",
                    "vector_int_set",
                    "vector_int_conj",
                    "vector_int_reverse",
                    "vector_int_indexof",
                    "vector_int_eq",
                    "vector_int_dup",
                    "vector_int_swap",
                    "vector_int_pop",
                ],
                vec![GeneSource::Erc(ErcKind::Int), GeneSource::Erc(ErcKind::Bool)],
            ),
        },
        "negative-to-zero" => ProblemSpec {
            id: ProblemId::NegativeToZero,
            name: "negative-to-zero",
            description: "replace every negative element of a vector with zero",
            input_types: vec![PushType::IntVec],
            output_slots: vec![OutputSlot::IntVec],
            // Vector-output distances are not defined; novelty methods
            // refuse this problem.
            distance: None,
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "vector_int_length",
                    "vector_int_nth",
                    "vector_int_conj",
                    "vector_int_set",
                    "vector_int_dup",
                    "vector_int_swap",
                    "vector_int_pop",
                    "integer_dup",
                    "integer_lt",
                    "integer_gt",
                    "integer_pop",
                    "integer_swap",
                    "exec_do_count",
                    "exec_if",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::IntVec(vec![])),
                    GeneSource::Const(Literal::Int(0)),
                    GeneSource::Erc(ErcKind::Int),
                ],
            ),
        },
        "rswn" => ProblemSpec {
            id: ProblemId::Rswn,
            name: "rswn",
            description: "print the string with spaces as newlines; return its non-space count",
            input_types: vec![PushType::Str],
            output_slots: vec![OutputSlot::Printed, OutputSlot::Int],
            distance: Some(DistanceKind::HammingEquality),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "string_replace",
                    "string_length",
                    "string_split",
                    "string_concat",
                    "string_dup",
                    "string_swap",
                    "string_pop",
                    "print_string",
                    "print_newline",
                    "integer_dup",
                    "integer_pop",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::Str(" ".into())),
                    GeneSource::Const(Literal::Str("\n".into())),
                    GeneSource::Const(Literal::Str(String::new())),
                    GeneSource::Erc(ErcKind::VisibleChar),
                    GeneSource::Erc(ErcKind::Int),
                ],
            ),
        },
        "scrabble-score" => ProblemSpec {
            id: ProblemId::ScrabbleScore,
            name: "scrabble-score",
            description: "total Scrabble tile value of a string",
            input_types: vec![PushType::Str],
            output_slots: vec![OutputSlot::Int],
            distance: Some(DistanceKind::Manhattan),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "string_length",
                    "string_code_at",
                    "vector_int_nth",
                    "integer_add",
                    "integer_dup",
                    "integer_swap",
                    "integer_pop",
                    "exec_do_count",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::IntVec(SCRABBLE_LETTER_VALUES.to_vec())),
                    GeneSource::Const(Literal::Int(0)),
                    GeneSource::Erc(ErcKind::Int),
                ],
            ),
        },
        "syllables" => ProblemSpec {
            id: ProblemId::Syllables,
            name: "syllables",
            description: "print \"The number of syllables is N\" where N counts vowels (y included)",
            input_types: vec![PushType::Str],
            output_slots: vec![OutputSlot::Printed],
            distance: Some(DistanceKind::HammingEquality),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "string_length",
                    "string_char_at",
                    "string_contains",
                    "string_dup",
                    "string_swap",
                    "string_pop",
                    "boolean_to_integer",
                    "integer_add",
                    "integer_dup",
                    "integer_pop",
                    "exec_do_count",
                    "print_string",
                    "print_integer",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::Str("aeiouy".into())),
                    GeneSource::Const(Literal::Str("The number of syllables is ".into())),
                    GeneSource::Const(Literal::Int(0)),
                    GeneSource::Erc(ErcKind::VisibleChar),
                ],
            ),
        },
        "vector-average" => ProblemSpec {
            id: ProblemId::VectorAverage,
            name: "vector-average",
            description: "mean of a non-empty vector of floats",
            input_types: vec![PushType::FloatVec],
            output_slots: vec![OutputSlot::Float],
            distance: Some(DistanceKind::Manhattan),
            float_tolerance: super::VECTOR_AVERAGE_TOLERANCE,
            pool: GenePool::new(
                &[
                    "in1",
                    "vector_float_length",
                    "vector_float_nth",
                    "vector_float_dup",
                    "vector_float_pop",
                    "float_add",
                    "float_div",
                    "float_dup",
                    "float_swap",
                    "float_pop",
                    "integer_to_float",
                    "integer_dup",
                    "exec_do_count",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::Float(0.0)),
                    GeneSource::Erc(ErcKind::Float),
                    GeneSource::Erc(ErcKind::Int),
                ],
            ),
        },
        "x-word-lines" => ProblemSpec {
            id: ProblemId::XWordLines,
            name: "x-word-lines",
            description: "print the words of a string, x words per line",
            input_types: vec![PushType::Str, PushType::Int],
            output_slots: vec![OutputSlot::Printed],
            distance: Some(DistanceKind::HammingEquality),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "in2",
                    "string_word_count",
                    "string_split",
                    "string_dup",
                    "string_pop",
                    "print_string",
                    "print_newline",
                    "integer_add",
                    "integer_mod",
                    "integer_eq",
                    "integer_lt",
                    "integer_dup",
                    "integer_swap",
                    "integer_pop",
                    "exec_do_count",
                    "exec_if",
                    "noop",
                ],
                vec![
                    GeneSource::Const(Literal::Str(" ".into())),
                    GeneSource::Const(Literal::Str("\n".into())),
                    GeneSource::Const(Literal::Int(0)),
                    GeneSource::Const(Literal::Int(1)),
                    GeneSource::Erc(ErcKind::Int),
                ],
            ),
        },
        "echo-smoke" => ProblemSpec {
            id: ProblemId::EchoSmoke,
            name: "echo-smoke",
            description: "return the input integer unchanged (pipeline smoke test)",
            input_types: vec![PushType::Int],
            output_slots: vec![OutputSlot::Int],
            distance: Some(DistanceKind::Manhattan),
            float_tolerance: 0.0,
            pool: GenePool::new(
                &[
                    "in1",
                    "integer_dup",
                    "integer_pop",
                    "integer_add",
                    "integer_sub",
                    "noop",
                ],
                vec![GeneSource::Erc(ErcKind::Int)],
            ),
        },
        _ => return None,
    };
    Some(spec)
}

// ---------------------------------------------------------------------------
// Oracles

fn as_str(lit: &Literal) -> &str {
    match lit {
        Literal::Str(s) => s,
        other => panic!("expected a string input, got {other:?}"),
    }
}

fn as_int(lit: &Literal) -> i64 {
    match lit {
        Literal::Int(x) => *x,
        other => panic!("expected an int input, got {other:?}"),
    }
}

fn as_int_vec(lit: &Literal) -> &[i64] {
    match lit {
        Literal::IntVec(v) => v,
        other => panic!("expected an int-vector input, got {other:?}"),
    }
}

fn as_float_vec(lit: &Literal) -> &[f64] {
    match lit {
        Literal::FloatVec(v) => v,
        other => panic!("expected a float-vector input, got {other:?}"),
    }
}

/// The expected outputs for one problem on one input tuple.
pub(super) fn expected(id: ProblemId, inputs: &[Literal]) -> Vec<Literal> {
    match id {
        ProblemId::Csl => {
            let (a, b, c) = (
                as_str(&inputs[0]).chars().count(),
                as_str(&inputs[1]).chars().count(),
                as_str(&inputs[2]).chars().count(),
            );
            vec![Literal::Bool(a < b && b < c)]
        }
        ProblemId::DoubleLetters => {
            let mut out = String::new();
            for c in as_str(&inputs[0]).chars() {
                let repeats = if c.is_ascii_alphabetic() {
                    2
                } else if c == '!' {
                    3
                } else {
                    1
                };
                for _ in 0..repeats {
                    out.push(c);
                }
            }
            vec![Literal::Str(out)]
        }
        ProblemId::LastIndexOfZero => {
            let v = as_int_vec(&inputs[0]);
            let idx = v
                .iter()
                .rposition(|&x| x == 0)
                .expect("generator guarantees a zero") as i64;
            vec![Literal::Int(idx)]
        }
        ProblemId::MirrorImage => {
            let (a, b) = (as_int_vec(&inputs[0]), as_int_vec(&inputs[1]));
            vec![Literal::Bool(a.iter().eq(b.iter().rev()))]
        }
        ProblemId::NegativeToZero => {
            let v = as_int_vec(&inputs[0]);
            vec![Literal::IntVec(
                v.iter().map(|&x| if x < 0 { 0 } else { x }).collect(),
            )]
        }
        ProblemId::Rswn => {
            let s = as_str(&inputs[0]);
            let printed: String = s
                .chars()
                .map(|c| if c == ' ' { '\n' } else { c })
                .collect();
            let count = s.chars().filter(|&c| c != ' ').count() as i64;
            vec![Literal::Str(printed), Literal::Int(count)]
        }
        ProblemId::ScrabbleScore => {
            let total: i64 = as_str(&inputs[0])
                .chars()
                .map(|c| {
                    let code = c as usize;
                    if code < 128 {
                        SCRABBLE_LETTER_VALUES[code]
                    } else {
                        0
                    }
                })
                .sum();
            vec![Literal::Int(total)]
        }
        ProblemId::Syllables => {
            let n = as_str(&inputs[0])
                .chars()
                .filter(|c| "aeiouyAEIOUY".contains(*c))
                .count();
            vec![Literal::Str(format!("The number of syllables is {n}"))]
        }
        ProblemId::VectorAverage => {
            let v = as_float_vec(&inputs[0]);
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            vec![Literal::Float(mean)]
        }
        ProblemId::XWordLines => {
            let words: Vec<&str> = as_str(&inputs[0]).split_whitespace().collect();
            let x = as_int(&inputs[1]).max(1) as usize;
            let mut out = String::new();
            for (i, word) in words.iter().enumerate() {
                out.push_str(word);
                if (i + 1) % x == 0 {
                    out.push('\n');
                } else if i + 1 < words.len() {
                    out.push(' ');
                }
            }
            vec![Literal::Str(out)]
        }
        ProblemId::EchoSmoke => vec![Literal::Int(as_int(&inputs[0]))],
    }
}

// ---------------------------------------------------------------------------
// Edge inputs

fn strs(xs: &[&str]) -> Vec<Literal> {
    xs.iter().map(|s| Literal::Str(s.to_string())).collect()
}

fn ivecs(xs: &[&[i64]]) -> Vec<Literal> {
    xs.iter().map(|v| Literal::IntVec(v.to_vec())).collect()
}

/// Fixed inputs that always lead a problem's training set.
pub(super) fn edge_inputs(id: ProblemId) -> Vec<Vec<Literal>> {
    match id {
        ProblemId::Csl => vec![
            strs(&["", "", ""]),
            strs(&["", "a", "ab"]),
            strs(&["ab", "a", ""]),
            strs(&["a", "ab", "abc"]),
            strs(&["abc", "ab", "a"]),
            strs(&["a", "a", "a"]),
        ],
        ProblemId::DoubleLetters => ["", "!", "A", "ab!", "!!", "aqhz"]
            .iter()
            .map(|s| strs(&[s]))
            .collect(),
        ProblemId::LastIndexOfZero => vec![
            ivecs(&[&[0]]),
            ivecs(&[&[0, 1]]),
            ivecs(&[&[1, 0]]),
            ivecs(&[&[0, 0]]),
            ivecs(&[&[7, 1, 0, 2]]),
            ivecs(&[&[0, 5, 0]]),
        ],
        ProblemId::MirrorImage => vec![
            ivecs(&[&[], &[]]),
            ivecs(&[&[1], &[1]]),
            ivecs(&[&[0], &[1]]),
            ivecs(&[&[1, 2], &[2, 1]]),
            ivecs(&[&[1, 2], &[1, 2]]),
            ivecs(&[&[1, 2, 1], &[1, 2, 1]]),
        ],
        ProblemId::NegativeToZero => vec![
            ivecs(&[&[]]),
            ivecs(&[&[-1]]),
            ivecs(&[&[0]]),
            ivecs(&[&[1]]),
            ivecs(&[&[-5, 5]]),
            ivecs(&[&[5, -5]]),
            ivecs(&[&[-50, -50]]),
        ],
        ProblemId::Rswn => ["", " ", "a", "a b", "a  b", "ab ", " a"]
            .iter()
            .map(|s| strs(&[s]))
            .collect(),
        ProblemId::ScrabbleScore => ["", "a", "q", "Z", "abc", "a b!"]
            .iter()
            .map(|s| strs(&[s]))
            .collect(),
        ProblemId::Syllables => ["", "a", "y", "bcd", "aeiouy", "hello world"]
            .iter()
            .map(|s| strs(&[s]))
            .collect(),
        ProblemId::VectorAverage => [
            vec![0.0],
            vec![100.0],
            vec![-100.0],
            vec![1.5, 2.5],
            vec![0.1, 0.2, 0.3],
        ]
        .into_iter()
        .map(|v| vec![Literal::FloatVec(v)])
        .collect(),
        ProblemId::XWordLines => vec![
            vec![Literal::Str("a".into()), Literal::Int(1)],
            vec![Literal::Str("a b".into()), Literal::Int(1)],
            vec![Literal::Str("a b c".into()), Literal::Int(2)],
            vec![Literal::Str("a".into()), Literal::Int(3)],
            vec![Literal::Str("a b c d".into()), Literal::Int(2)],
        ],
        ProblemId::EchoSmoke => [0, -10_000, 10_000]
            .iter()
            .map(|&x| vec![Literal::Int(x)])
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Random input generators

fn visible_char(rng: &mut impl Rng) -> char {
    rng.random_range(0x21u8..=0x7e) as char
}

fn lowercase(rng: &mut impl Rng) -> char {
    rng.random_range(b'a'..=b'z') as char
}

fn letter(rng: &mut impl Rng) -> char {
    let c = lowercase(rng);
    if rng.random() {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

fn visible_string(rng: &mut impl Rng, len: usize) -> String {
    (0..len).map(|_| visible_char(rng)).collect()
}

/// Random inputs for one case of one problem.
pub(super) fn random_inputs(id: ProblemId, rng: &mut impl Rng) -> Vec<Literal> {
    match id {
        ProblemId::Csl => {
            let lens: [usize; 3] = if rng.random::<f64>() < 0.4 {
                // Strictly increasing lengths: sample three distinct values.
                let mut picks = [0usize; 3];
                loop {
                    for p in &mut picks {
                        *p = rng.random_range(0..=10);
                    }
                    picks.sort_unstable();
                    if picks[0] < picks[1] && picks[1] < picks[2] {
                        break;
                    }
                }
                picks
            } else {
                [
                    rng.random_range(0..=10),
                    rng.random_range(0..=10),
                    rng.random_range(0..=10),
                ]
            };
            lens.iter()
                .map(|&l| Literal::Str(visible_string(rng, l)))
                .collect()
        }
        ProblemId::DoubleLetters => {
            let len = rng.random_range(0..=16);
            let mut s = String::with_capacity(len);
            for _ in 0..len {
                let roll: f64 = rng.random();
                s.push(if roll < 0.65 {
                    letter(rng)
                } else if roll < 0.80 {
                    '!'
                } else {
                    loop {
                        let c = visible_char(rng);
                        if !c.is_ascii_alphabetic() && c != '!' {
                            break c;
                        }
                    }
                });
            }
            strs(&[&s])
        }
        ProblemId::LastIndexOfZero => {
            let len = rng.random_range(1..=16);
            let mut v: Vec<i64> = (0..len).map(|_| rng.random_range(-50..=50)).collect();
            if !v.contains(&0) {
                let pos = rng.random_range(0..len);
                v[pos] = 0;
            }
            vec![Literal::IntVec(v)]
        }
        ProblemId::MirrorImage => {
            let len = rng.random_range(0..=16);
            let a: Vec<i64> = (0..len).map(|_| rng.random_range(-50..=50)).collect();
            let roll: f64 = rng.random();
            let b: Vec<i64> = if roll < 0.4 || (roll < 0.6 && len == 0) {
                a.iter().rev().copied().collect()
            } else if roll < 0.6 {
                // A reverse with one element nudged: almost a mirror.
                let mut b: Vec<i64> = a.iter().rev().copied().collect();
                let pos = rng.random_range(0..len);
                let mut delta = 0;
                while delta == 0 {
                    delta = rng.random_range(-5..=5);
                }
                b[pos] = b[pos].saturating_add(delta);
                b
            } else if roll < 0.9 {
                (0..len).map(|_| rng.random_range(-50..=50)).collect()
            } else {
                let other_len = rng.random_range(0..=16);
                (0..other_len).map(|_| rng.random_range(-50..=50)).collect()
            };
            vec![Literal::IntVec(a), Literal::IntVec(b)]
        }
        ProblemId::NegativeToZero => {
            let len = rng.random_range(0..=16);
            vec![Literal::IntVec(
                (0..len).map(|_| rng.random_range(-50..=50)).collect(),
            )]
        }
        ProblemId::Rswn => {
            let len = rng.random_range(0..=16);
            let mut s = String::with_capacity(len);
            for _ in 0..len {
                if rng.random::<f64>() < 0.2 {
                    s.push(' ');
                } else {
                    s.push(visible_char(rng));
                }
            }
            strs(&[&s])
        }
        ProblemId::ScrabbleScore => {
            let len = rng.random_range(0..=16);
            let mut s = String::with_capacity(len);
            for _ in 0..len {
                let roll: f64 = rng.random();
                s.push(if roll < 0.7 {
                    letter(rng)
                } else if roll < 0.8 {
                    ' '
                } else {
                    loop {
                        let c = visible_char(rng);
                        if !c.is_ascii_alphabetic() {
                            break c;
                        }
                    }
                });
            }
            strs(&[&s])
        }
        ProblemId::Syllables => {
            let len = rng.random_range(0..=16);
            let mut s = String::with_capacity(len);
            for _ in 0..len {
                let roll: f64 = rng.random();
                s.push(if roll < 0.3 {
                    b"aeiouy"[rng.random_range(0..6)] as char
                } else if roll < 0.7 {
                    loop {
                        let c = lowercase(rng);
                        if !"aeiouy".contains(c) {
                            break c;
                        }
                    }
                } else if roll < 0.8 {
                    ' '
                } else {
                    loop {
                        let c = visible_char(rng);
                        if !c.is_ascii_alphabetic() {
                            break c;
                        }
                    }
                });
            }
            strs(&[&s])
        }
        ProblemId::VectorAverage => {
            let len = rng.random_range(1..=16);
            vec![Literal::FloatVec(
                (0..len)
                    .map(|_| {
                        let x: f64 = rng.random_range(-100.0..=100.0);
                        (x * 1e4).round() / 1e4
                    })
                    .collect(),
            )]
        }
        ProblemId::XWordLines => {
            let word_count = rng.random_range(1..=12);
            let words: Vec<String> = (0..word_count)
                .map(|_| {
                    let len = rng.random_range(1..=6);
                    visible_string(rng, len)
                })
                .collect();
            vec![
                Literal::Str(words.join(" ")),
                Literal::Int(rng.random_range(1..=8)),
            ]
        }
        ProblemId::EchoSmoke => vec![Literal::Int(rng.random_range(-10_000..=10_000))],
    }
}
