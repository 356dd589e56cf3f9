//! The stack interpreter.
//!
//! Execution state is a set of typed stacks plus a print buffer. One item is
//! consumed from the exec stack per step; literals push themselves, blocks
//! expand in place, instructions run their registry function. An instruction
//! whose arguments are missing or invalid is a no-op — execution never
//! fails, it just runs out of steps or work.
//!
//! Resource bounds (all deliberate, all documented here):
//! - `step_limit` caps exec-stack consumption; loops desugar to re-pushed
//!   continuations, so the cap bounds every program's runtime.
//! - Strings on the stack never exceed [`MAX_STRING_LEN`] bytes; operations
//!   whose result would be longer are no-ops.
//! - The print buffer is truncated at [`PRINT_LIMIT`] bytes.
//! - Vectors never grow past [`MAX_VEC_LEN`] elements.
//! - Data stacks are capped at [`MAX_STACK`] entries; pushes beyond that
//!   are dropped.
//! - Integer arithmetic saturates instead of wrapping or panicking.

use super::literal::Literal;
use super::program::{Program, ProgramItem};
use super::registry;
use serde::{Deserialize, Serialize};

/// Longest string value an instruction may produce.
pub const MAX_STRING_LEN: usize = 1000;
/// Print buffer cap; output beyond this is dropped.
pub const PRINT_LIMIT: usize = 1000;
/// Longest vector an instruction may produce.
pub const MAX_VEC_LEN: usize = 10_000;
/// Per-stack entry cap.
pub const MAX_STACK: usize = 10_000;

/// Knobs bounding a single program execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionLimits {
    /// Maximum number of exec-stack items processed.
    pub step_limit: usize,
}

impl Default for ExecutionLimits {
    fn default() -> Self {
        ExecutionLimits { step_limit: 2000 }
    }
}

/// Full interpreter state; public so problem definitions can read outputs.
#[derive(Debug, Clone, Default)]
pub struct VmState {
    pub exec: Vec<ProgramItem>,
    pub int: Vec<i64>,
    pub float: Vec<f64>,
    pub boolean: Vec<bool>,
    pub string: Vec<String>,
    pub int_vec: Vec<Vec<i64>>,
    pub float_vec: Vec<Vec<f64>>,
    pub print_buffer: String,
    /// Input bindings read by `in1`..`in3`.
    pub inputs: Vec<Literal>,
    /// Exec items consumed so far.
    pub steps_used: usize,
}

impl VmState {
    pub fn new(inputs: Vec<Literal>) -> Self {
        VmState {
            inputs,
            ..VmState::default()
        }
    }

    // -- guarded pushes ----------------------------------------------------

    pub fn push_int(&mut self, x: i64) {
        if self.int.len() < MAX_STACK {
            self.int.push(x);
        }
    }

    pub fn push_float(&mut self, x: f64) {
        if self.float.len() < MAX_STACK {
            self.float.push(x);
        }
    }

    pub fn push_bool(&mut self, x: bool) {
        if self.boolean.len() < MAX_STACK {
            self.boolean.push(x);
        }
    }

    /// Push a string; silently dropped when over the length or stack cap.
    pub fn push_string(&mut self, x: String) {
        if x.len() <= MAX_STRING_LEN && self.string.len() < MAX_STACK {
            self.string.push(x);
        }
    }

    pub fn push_int_vec(&mut self, x: Vec<i64>) {
        if x.len() <= MAX_VEC_LEN && self.int_vec.len() < MAX_STACK {
            self.int_vec.push(x);
        }
    }

    pub fn push_float_vec(&mut self, x: Vec<f64>) {
        if x.len() <= MAX_VEC_LEN && self.float_vec.len() < MAX_STACK {
            self.float_vec.push(x);
        }
    }

    pub fn push_literal(&mut self, lit: Literal) {
        match lit {
            Literal::Int(x) => self.push_int(x),
            Literal::Float(x) => self.push_float(x),
            Literal::Bool(x) => self.push_bool(x),
            Literal::Str(x) => self.push_string(x),
            Literal::IntVec(x) => self.push_int_vec(x),
            Literal::FloatVec(x) => self.push_float_vec(x),
        }
    }

    /// Append to the print buffer, truncating at [`PRINT_LIMIT`].
    pub fn print(&mut self, text: &str) {
        let room = PRINT_LIMIT.saturating_sub(self.print_buffer.len());
        if room >= text.len() {
            self.print_buffer.push_str(text);
        } else {
            self.print_buffer.push_str(&text[..room]);
        }
    }
}

/// Run `program` against `inputs` under `limits`.
pub fn execute(program: &Program, inputs: &[Literal], limits: &ExecutionLimits) -> VmState {
    let mut vm = VmState::new(inputs.to_vec());
    for item in program.body.iter().rev() {
        vm.exec.push(item.clone());
    }
    while vm.steps_used < limits.step_limit {
        let Some(item) = vm.exec.pop() else { break };
        vm.steps_used += 1;
        match item {
            ProgramItem::Lit(lit) => vm.push_literal(lit),
            ProgramItem::Block(items) => {
                for it in items.iter().rev() {
                    vm.exec.push(it.clone());
                }
            }
            ProgramItem::Instr(id) => (registry::instruction(id).run)(&mut vm),
        }
    }
    vm
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::push::program::must_parse;

    fn run(text: &str, inputs: &[Literal]) -> VmState {
        execute(&must_parse(text), inputs, &ExecutionLimits::default())
    }

    #[test]
    fn arithmetic_example() {
        // Warm-up: (5 7 integer_add) leaves 12 on the int stack.
        let vm = run("(5 7 integer_add)", &[]);
        assert_eq!(vm.int, vec![12]);
        assert_eq!(vm.steps_used, 3);
    }

    #[test]
    fn missing_arguments_are_noops() {
        let vm = run("(integer_add 3 float_div boolean_not string_concat)", &[]);
        assert_eq!(vm.int, vec![3]);
        assert!(vm.float.is_empty());
        assert!(vm.boolean.is_empty());
    }

    #[test]
    fn empty_program_takes_no_steps() {
        let vm = run("()", &[]);
        assert_eq!(vm.steps_used, 0);
    }

    #[test]
    fn step_limit_halts_infinite_loops() {
        // A while-loop fed a constant true bool each iteration.
        let vm = execute(
            &must_parse("(true exec_while (true))"),
            &[],
            &ExecutionLimits { step_limit: 500 },
        );
        assert_eq!(vm.steps_used, 500);
    }

    #[test]
    fn inputs_bind_to_typed_stacks() {
        let vm = run(
            "(in1 in2 in3)",
            &[
                Literal::Int(9),
                Literal::Str("hi".into()),
                Literal::IntVec(vec![1, 2]),
            ],
        );
        assert_eq!(vm.int, vec![9]);
        assert_eq!(vm.string, vec!["hi".to_string()]);
        assert_eq!(vm.int_vec, vec![vec![1, 2]]);
    }

    #[test]
    fn missing_input_is_noop() {
        let vm = run("(in2)", &[Literal::Int(1)]);
        assert!(vm.int.is_empty() && vm.string.is_empty());
    }

    #[test]
    fn print_buffer_truncates_at_cap() {
        let mut vm = VmState::new(vec![]);
        let chunk = "x".repeat(600);
        vm.print(&chunk);
        vm.print(&chunk);
        assert_eq!(vm.print_buffer.len(), PRINT_LIMIT);
    }

    #[test]
    fn saturating_arithmetic_does_not_panic() {
        let vm = run(
            &format!("({max} {max} integer_add {max} integer_mult)", max = i64::MAX),
            &[],
        );
        assert_eq!(vm.int, vec![i64::MAX]);
        let vm = run(&format!("({min} -1 integer_div)", min = i64::MIN), &[]);
        assert_eq!(vm.int, vec![i64::MAX]);
    }
}
