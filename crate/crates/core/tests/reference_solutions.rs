//! Reference solutions for every catalog problem.
//!
//! Each program below was written by hand against the instruction-set
//! contracts and must score zero error on every generated train and test
//! case. Together with the native oracles in the catalog this pins the
//! interpreter semantics end to end: if an instruction, the translator, or
//! an error function drifts, some reference solution stops being perfect.

use gp_core::problems::{ProblemSpec, SCRABBLE_LETTER_VALUES};
use gp_core::push::{must_parse, ExecutionLimits, Program};

fn reference_program(name: &str) -> Program {
    let text = match name {
        "csl" => "(in2 string_length in3 string_length integer_lt \
                   in1 string_length in2 string_length integer_lt boolean_and)"
            .to_string(),
        "double-letters" => "(in1 string_length exec_do_count ( \
                in1 string_char_at string_dup string_dup print_string \
                string_dup \"!\" string_eq \
                exec_if ( string_dup print_string print_string string_pop ) \
                        ( 0 string_code_at \
                          integer_dup integer_dup integer_dup \
                          64 integer_gt 91 integer_lt boolean_and \
                          96 integer_gt 123 integer_lt boolean_and boolean_or \
                          exec_if ( print_string ) ( string_pop ) ) ))"
            .to_string(),
        "last-index-of-zero" => "(in1 vector_int_length 0 in1 vector_int_reverse \
                   vector_int_indexof 1 integer_add integer_sub)"
            .to_string(),
        "mirror-image" => "(in1 in2 vector_int_reverse vector_int_eq)".to_string(),
        "negative-to-zero" => "([] in1 vector_int_length exec_do_count ( \
                in1 vector_int_nth integer_dup 0 integer_lt \
                exec_if ( integer_pop 0 ) ( ) vector_int_conj ))"
            .to_string(),
        "rswn" => "(in1 \" \" \"\\n\" string_replace print_string \
                   in1 \" \" \"\" string_replace string_length)"
            .to_string(),
        "scrabble-score" => {
            let table = SCRABBLE_LETTER_VALUES
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            format!(
                "(0 in1 string_length exec_do_count ( \
                   in1 string_code_at [{table}] vector_int_nth integer_add ))"
            )
        }
        "syllables" => "(0 in1 string_length exec_do_count ( \
                \"aeiouy\" in1 string_char_at string_contains \
                boolean_to_integer integer_add ) \
                \"The number of syllables is \" print_string print_integer)"
            .to_string(),
        "vector-average" => "(0.0 in1 vector_float_length exec_do_count ( \
                in1 vector_float_nth float_add ) \
                in1 vector_float_length integer_to_float float_div)"
            .to_string(),
        "x-word-lines" => "(in1 string_word_count in1 string_split exec_do_count ( \
                print_string 1 integer_add integer_dup in2 integer_mod 0 integer_eq \
                exec_if ( print_newline integer_pop ) \
                        ( in1 string_word_count integer_lt \
                          exec_if ( \" \" print_string ) ( ) ) ))"
            .to_string(),
        "echo-smoke" => "(in1)".to_string(),
        other => panic!("no reference program for {other}"),
    };
    must_parse(&text)
}

/// Run one problem's reference solution over freshly generated cases and
/// demand zero error everywhere.
fn assert_reference_is_perfect(name: &str, seed: u64) {
    let spec = ProblemSpec::by_name(name).unwrap();
    let program = reference_program(name);
    let limits = ExecutionLimits::default();
    let (train, test) = spec.generate_cases(seed, 100, 300);
    for (label, cases) in [("train", &train), ("test", &test)] {
        let (_, errors) = spec.evaluate(&program, cases, &limits);
        for (i, &e) in errors.iter().enumerate() {
            assert_eq!(
                e, 0.0,
                "{name}: reference solution misses {label} case {i}: {:?}",
                cases[i]
            );
        }
    }
}

#[test]
fn references_solve_all_problems() {
    // Two seeds per problem: 800 distinct cases each, oracle-checked.
    for (name, _) in ProblemSpec::catalog() {
        assert_reference_is_perfect(name, 424_242);
        assert_reference_is_perfect(name, 7);
    }
}

#[test]
fn wrong_programs_score_nonzero() {
    // Negative control: a program that ignores the input cannot be perfect.
    let spec = ProblemSpec::by_name("scrabble-score").unwrap();
    let program = must_parse("(3)");
    let (train, _) = spec.generate_cases(1, 100, 0);
    let (_, errors) = spec.evaluate(&program, &train, &ExecutionLimits::default());
    assert!(errors.iter().any(|&e| e > 0.0));
    // And a program that outputs nothing pays the no-output penalty.
    let silent = must_parse("()");
    let (_, errors) = spec.evaluate(&silent, &train, &ExecutionLimits::default());
    assert!(errors.iter().all(|&e| e == gp_core::problems::NO_OUTPUT_PENALTY));
}

#[test]
fn evaluation_is_deterministic() {
    let spec = ProblemSpec::by_name("rswn").unwrap();
    let program = reference_program("rswn");
    let (train, _) = spec.generate_cases(5, 50, 0);
    let (b1, e1) = spec.evaluate(&program, &train, &ExecutionLimits::default());
    let (b2, e2) = spec.evaluate(&program, &train, &ExecutionLimits::default());
    assert_eq!(b1.key(), b2.key());
    assert_eq!(e1, e2);
}

#[test]
fn step_limit_is_respected_by_references() {
    // References must fit the default step budget with room to spare on the
    // largest generated inputs.
    let limits = ExecutionLimits::default();
    for (name, _) in ProblemSpec::catalog() {
        let spec = ProblemSpec::by_name(name).unwrap();
        let program = reference_program(name);
        let (train, _) = spec.generate_cases(11, 100, 0);
        for case in &train {
            let vm = gp_core::push::execute(&program, &case.inputs, &limits);
            assert!(
                vm.steps_used < limits.step_limit,
                "{name}: reference hit the step limit on {:?}",
                case.inputs
            );
        }
    }
}
