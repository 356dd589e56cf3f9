//! The instruction registry.
//!
//! Every instruction the interpreter knows is described here: its name, how
//! many code blocks it opens during genome translation, and its runtime
//! effect. Problem definitions reference instructions by name to assemble
//! their gene pools.
//!
//! Conventions, applied uniformly:
//! - An instruction whose arguments are missing or invalid (division by
//!   zero, empty vector, negative loop count, …) is a no-op.
//! - Binary operations combine `(below, top)` in push order: with `5` then
//!   `7` on the stack, `integer_sub` leaves `-2`.
//! - Integer arithmetic saturates at the `i64` range; `integer_mod` is
//!   Euclidean, so its result is non-negative for a positive divisor.
//! - Indexing instructions wrap their index with `index mod len`.

use super::literal::Literal;
use super::program::ProgramItem;
use super::vm::{VmState, MAX_STRING_LEN};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// Compact handle into the registry; serialized as the instruction name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstrId(u16);

impl InstrId {
    pub fn name(&self) -> &'static str {
        instruction(*self).name
    }
}

impl Serialize for InstrId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for InstrId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        lookup(&name).ok_or_else(|| D::Error::custom(format!("unknown instruction `{name}`")))
    }
}

/// One registry entry.
pub struct Instruction {
    pub name: &'static str,
    /// Blocks opened in translation (0 for ordinary instructions).
    pub opens: u8,
    pub run: fn(&mut VmState),
}

/// Look up an instruction by name.
pub fn lookup(name: &str) -> Option<InstrId> {
    static INDEX: OnceLock<HashMap<&'static str, u16>> = OnceLock::new();
    let index = INDEX.get_or_init(|| {
        REGISTRY
            .iter()
            .enumerate()
            .map(|(i, ins)| (ins.name, i as u16))
            .collect()
    });
    index.get(name).map(|&i| InstrId(i))
}

/// Resolve a handle to its entry.
pub fn instruction(id: InstrId) -> &'static Instruction {
    &REGISTRY[id.0 as usize]
}

/// All instruction names, in registry order.
pub fn all_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|ins| ins.name)
}

// ---------------------------------------------------------------------------
// Exec instructions

fn exec_if(vm: &mut VmState) {
    if vm.boolean.is_empty() || vm.exec.len() < 2 {
        return;
    }
    let cond = vm.boolean.pop().expect("checked");
    let then_branch = vm.exec.pop().expect("checked");
    let else_branch = vm.exec.pop().expect("checked");
    vm.exec.push(if cond { then_branch } else { else_branch });
}

fn exec_when(vm: &mut VmState) {
    if vm.boolean.is_empty() || vm.exec.is_empty() {
        return;
    }
    if !vm.boolean.pop().expect("checked") {
        vm.exec.pop();
    }
}

fn exec_dup(vm: &mut VmState) {
    if let Some(top) = vm.exec.last().cloned() {
        vm.exec.push(top);
    }
}

fn exec_pop(vm: &mut VmState) {
    vm.exec.pop();
}

fn exec_swap(vm: &mut VmState) {
    let n = vm.exec.len();
    if n >= 2 {
        vm.exec.swap(n - 1, n - 2);
    }
}

fn self_id(name: &'static str) -> InstrId {
    lookup(name).expect("registry names resolve")
}

/// The loop workhorse: iterates the top exec item from the second integer
/// (current index) to the top integer (destination), pushing the index for
/// each iteration and re-pushing itself as a continuation.
fn exec_do_range(vm: &mut VmState) {
    if vm.int.len() < 2 || vm.exec.is_empty() {
        return;
    }
    let dest = vm.int.pop().expect("checked");
    let current = vm.int.pop().expect("checked");
    let body = vm.exec.pop().expect("checked");
    if current != dest {
        let step = if current < dest { 1 } else { -1 };
        let continuation = ProgramItem::Block(Arc::new(vec![
            ProgramItem::Lit(Literal::Int(current.saturating_add(step))),
            ProgramItem::Lit(Literal::Int(dest)),
            ProgramItem::Instr(self_id("exec_do_range")),
            body.clone(),
        ]));
        vm.exec.push(continuation);
    }
    vm.exec.push(body);
    vm.push_int(current);
}

/// Run the body `n` times with the loop index 0..n−1 on the int stack.
/// A non-positive count consumes both arguments and runs nothing.
fn exec_do_count(vm: &mut VmState) {
    if vm.int.is_empty() || vm.exec.is_empty() {
        return;
    }
    let n = vm.int.pop().expect("checked");
    let body = vm.exec.pop().expect("checked");
    if n < 1 {
        return;
    }
    vm.exec.push(ProgramItem::Block(Arc::new(vec![
        ProgramItem::Lit(Literal::Int(0)),
        ProgramItem::Lit(Literal::Int(n - 1)),
        ProgramItem::Instr(self_id("exec_do_range")),
        body,
    ])));
}

/// Run the body `n` times without exposing the loop index. A non-positive
/// count consumes both arguments and runs nothing.
fn exec_do_times(vm: &mut VmState) {
    if vm.int.is_empty() || vm.exec.is_empty() {
        return;
    }
    let n = vm.int.pop().expect("checked");
    let body = vm.exec.pop().expect("checked");
    if n < 1 {
        return;
    }
    let hidden_index = ProgramItem::Block(Arc::new(vec![
        ProgramItem::Instr(self_id("integer_pop")),
        body,
    ]));
    vm.exec.push(ProgramItem::Block(Arc::new(vec![
        ProgramItem::Lit(Literal::Int(0)),
        ProgramItem::Lit(Literal::Int(n - 1)),
        ProgramItem::Instr(self_id("exec_do_range")),
        hidden_index,
    ])));
}

/// While the top boolean is true, run the body and re-test. A missing
/// condition counts as false and consumes the body.
fn exec_while(vm: &mut VmState) {
    if vm.exec.is_empty() {
        return;
    }
    let Some(cond) = vm.boolean.pop() else {
        vm.exec.pop();
        return;
    };
    let body = vm.exec.pop().expect("checked");
    if cond {
        vm.exec.push(body.clone());
        vm.exec.push(ProgramItem::Instr(self_id("exec_while")));
        vm.exec.push(body);
    }
}

fn noop(_: &mut VmState) {}

// ---------------------------------------------------------------------------
// Integer instructions

fn pop2_int(vm: &mut VmState) -> Option<(i64, i64)> {
    if vm.int.len() < 2 {
        return None;
    }
    let top = vm.int.pop().expect("checked");
    let below = vm.int.pop().expect("checked");
    Some((below, top))
}

fn integer_add(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_int(a.saturating_add(b));
    }
}

fn integer_sub(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_int(a.saturating_sub(b));
    }
}

fn integer_mult(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_int(a.saturating_mul(b));
    }
}

fn integer_div(vm: &mut VmState) {
    if vm.int.len() < 2 || *vm.int.last().expect("checked") == 0 {
        return;
    }
    let (a, b) = pop2_int(vm).expect("checked");
    vm.push_int(a.checked_div(b).unwrap_or(i64::MAX));
}

fn integer_mod(vm: &mut VmState) {
    if vm.int.len() < 2 || *vm.int.last().expect("checked") == 0 {
        return;
    }
    let (a, b) = pop2_int(vm).expect("checked");
    vm.push_int(a.checked_rem_euclid(b).unwrap_or(0));
}

fn integer_max(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_int(a.max(b));
    }
}

fn integer_min(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_int(a.min(b));
    }
}

fn integer_abs(vm: &mut VmState) {
    if let Some(a) = vm.int.pop() {
        vm.push_int(a.saturating_abs());
    }
}

fn integer_eq(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_bool(a == b);
    }
}

fn integer_lt(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_bool(a < b);
    }
}

fn integer_gt(vm: &mut VmState) {
    if let Some((a, b)) = pop2_int(vm) {
        vm.push_bool(a > b);
    }
}

fn integer_dup(vm: &mut VmState) {
    if let Some(&a) = vm.int.last() {
        vm.push_int(a);
    }
}

fn integer_swap(vm: &mut VmState) {
    let n = vm.int.len();
    if n >= 2 {
        vm.int.swap(n - 1, n - 2);
    }
}

fn integer_rot(vm: &mut VmState) {
    let n = vm.int.len();
    if n >= 3 {
        // Third-from-top moves to the top.
        let third = vm.int.remove(n - 3);
        vm.int.push(third);
    }
}

fn integer_pop(vm: &mut VmState) {
    vm.int.pop();
}

fn integer_to_float(vm: &mut VmState) {
    if let Some(a) = vm.int.pop() {
        vm.push_float(a as f64);
    }
}

fn integer_to_string(vm: &mut VmState) {
    if let Some(a) = vm.int.pop() {
        vm.push_string(a.to_string());
    }
}

// ---------------------------------------------------------------------------
// Float instructions

fn pop2_float(vm: &mut VmState) -> Option<(f64, f64)> {
    if vm.float.len() < 2 {
        return None;
    }
    let top = vm.float.pop().expect("checked");
    let below = vm.float.pop().expect("checked");
    Some((below, top))
}

fn float_add(vm: &mut VmState) {
    if let Some((a, b)) = pop2_float(vm) {
        vm.push_float(a + b);
    }
}

fn float_sub(vm: &mut VmState) {
    if let Some((a, b)) = pop2_float(vm) {
        vm.push_float(a - b);
    }
}

fn float_mult(vm: &mut VmState) {
    if let Some((a, b)) = pop2_float(vm) {
        vm.push_float(a * b);
    }
}

fn float_div(vm: &mut VmState) {
    if vm.float.len() < 2 || *vm.float.last().expect("checked") == 0.0 {
        return;
    }
    let (a, b) = pop2_float(vm).expect("checked");
    vm.push_float(a / b);
}

fn float_abs(vm: &mut VmState) {
    if let Some(a) = vm.float.pop() {
        vm.push_float(a.abs());
    }
}

fn float_eq(vm: &mut VmState) {
    if let Some((a, b)) = pop2_float(vm) {
        vm.push_bool(a == b);
    }
}

fn float_lt(vm: &mut VmState) {
    if let Some((a, b)) = pop2_float(vm) {
        vm.push_bool(a < b);
    }
}

fn float_gt(vm: &mut VmState) {
    if let Some((a, b)) = pop2_float(vm) {
        vm.push_bool(a > b);
    }
}

fn float_dup(vm: &mut VmState) {
    if let Some(&a) = vm.float.last() {
        vm.push_float(a);
    }
}

fn float_swap(vm: &mut VmState) {
    let n = vm.float.len();
    if n >= 2 {
        vm.float.swap(n - 1, n - 2);
    }
}

fn float_pop(vm: &mut VmState) {
    vm.float.pop();
}

fn float_to_integer(vm: &mut VmState) {
    if let Some(a) = vm.float.pop() {
        // `as` saturates at the i64 range and maps NaN to 0.
        vm.push_int(a as i64);
    }
}

// ---------------------------------------------------------------------------
// Boolean instructions

fn pop2_bool(vm: &mut VmState) -> Option<(bool, bool)> {
    if vm.boolean.len() < 2 {
        return None;
    }
    let top = vm.boolean.pop().expect("checked");
    let below = vm.boolean.pop().expect("checked");
    Some((below, top))
}

fn boolean_and(vm: &mut VmState) {
    if let Some((a, b)) = pop2_bool(vm) {
        vm.push_bool(a && b);
    }
}

fn boolean_or(vm: &mut VmState) {
    if let Some((a, b)) = pop2_bool(vm) {
        vm.push_bool(a || b);
    }
}

fn boolean_not(vm: &mut VmState) {
    if let Some(a) = vm.boolean.pop() {
        vm.push_bool(!a);
    }
}

fn boolean_dup(vm: &mut VmState) {
    if let Some(&a) = vm.boolean.last() {
        vm.push_bool(a);
    }
}

fn boolean_swap(vm: &mut VmState) {
    let n = vm.boolean.len();
    if n >= 2 {
        vm.boolean.swap(n - 1, n - 2);
    }
}

fn boolean_pop(vm: &mut VmState) {
    vm.boolean.pop();
}

fn boolean_to_integer(vm: &mut VmState) {
    if let Some(a) = vm.boolean.pop() {
        vm.push_int(a as i64);
    }
}

// ---------------------------------------------------------------------------
// String instructions

fn string_concat(vm: &mut VmState) {
    let n = vm.string.len();
    if n < 2 || vm.string[n - 1].len() + vm.string[n - 2].len() > MAX_STRING_LEN {
        return;
    }
    let top = vm.string.pop().expect("checked");
    let mut below = vm.string.pop().expect("checked");
    below.push_str(&top);
    vm.push_string(below);
}

fn string_length(vm: &mut VmState) {
    if let Some(s) = vm.string.pop() {
        vm.push_int(s.chars().count() as i64);
    }
}

/// Wrap an index into `0..len`; `len` must be positive.
fn wrap_index(i: i64, len: usize) -> usize {
    i.rem_euclid(len as i64) as usize
}

fn string_char_at(vm: &mut VmState) {
    let Some(s) = vm.string.last() else { return };
    let len = s.chars().count();
    if len == 0 || vm.int.is_empty() {
        return;
    }
    let s = vm.string.pop().expect("checked");
    let i = vm.int.pop().expect("checked");
    let c = s.chars().nth(wrap_index(i, len)).expect("index wrapped");
    vm.push_string(c.to_string());
}

fn string_code_at(vm: &mut VmState) {
    let Some(s) = vm.string.last() else { return };
    let len = s.chars().count();
    if len == 0 || vm.int.is_empty() {
        return;
    }
    let s = vm.string.pop().expect("checked");
    let i = vm.int.pop().expect("checked");
    let c = s.chars().nth(wrap_index(i, len)).expect("index wrapped");
    vm.push_int(c as i64);
}

fn string_contains(vm: &mut VmState) {
    if vm.string.len() < 2 {
        return;
    }
    let needle = vm.string.pop().expect("checked");
    let haystack = vm.string.pop().expect("checked");
    vm.push_bool(haystack.contains(&needle));
}

/// In the third string, replace occurrences of the second with the top.
fn string_replace(vm: &mut VmState) {
    let n = vm.string.len();
    if n < 3 || vm.string[n - 2].is_empty() {
        return;
    }
    let replacement = &vm.string[n - 1];
    let needle = &vm.string[n - 2];
    let subject = &vm.string[n - 3];
    let result = subject.replace(needle.as_str(), replacement);
    if result.len() > MAX_STRING_LEN {
        return;
    }
    vm.string.truncate(n - 3);
    vm.push_string(result);
}

fn string_occurrences(vm: &mut VmState) {
    let n = vm.string.len();
    if n < 2 || vm.string[n - 1].is_empty() {
        return;
    }
    let needle = vm.string.pop().expect("checked");
    let haystack = vm.string.pop().expect("checked");
    vm.push_int(haystack.matches(&needle).count() as i64);
}

/// Split on whitespace and push the words so the first word ends on top.
fn string_split(vm: &mut VmState) {
    let Some(s) = vm.string.pop() else { return };
    let words: Vec<&str> = s.split_whitespace().collect();
    for word in words.iter().rev() {
        vm.push_string(word.to_string());
    }
}

/// Number of whitespace-separated words.
fn string_word_count(vm: &mut VmState) {
    if let Some(s) = vm.string.pop() {
        vm.push_int(s.split_whitespace().count() as i64);
    }
}

fn string_eq(vm: &mut VmState) {
    if vm.string.len() < 2 {
        return;
    }
    let top = vm.string.pop().expect("checked");
    let below = vm.string.pop().expect("checked");
    vm.push_bool(below == top);
}

fn string_dup(vm: &mut VmState) {
    if let Some(s) = vm.string.last().cloned() {
        vm.push_string(s);
    }
}

fn string_swap(vm: &mut VmState) {
    let n = vm.string.len();
    if n >= 2 {
        vm.string.swap(n - 1, n - 2);
    }
}

fn string_pop(vm: &mut VmState) {
    vm.string.pop();
}

// ---------------------------------------------------------------------------
// Integer-vector instructions

fn vector_int_length(vm: &mut VmState) {
    if let Some(v) = vm.int_vec.pop() {
        vm.push_int(v.len() as i64);
    }
}

fn vector_int_nth(vm: &mut VmState) {
    let Some(v) = vm.int_vec.last() else { return };
    if v.is_empty() || vm.int.is_empty() {
        return;
    }
    let v = vm.int_vec.pop().expect("checked");
    let i = vm.int.pop().expect("checked");
    vm.push_int(v[wrap_index(i, v.len())]);
}

/// Write a value into the vector: index comes from the top of the int
/// stack, the value from the next int down.
fn vector_int_set(vm: &mut VmState) {
    let Some(v) = vm.int_vec.last() else { return };
    if v.is_empty() || vm.int.len() < 2 {
        return;
    }
    let mut v = vm.int_vec.pop().expect("checked");
    let i = vm.int.pop().expect("checked");
    let value = vm.int.pop().expect("checked");
    let len = v.len();
    v[wrap_index(i, len)] = value;
    vm.push_int_vec(v);
}

fn vector_int_conj(vm: &mut VmState) {
    if vm.int_vec.is_empty() || vm.int.is_empty() {
        return;
    }
    let mut v = vm.int_vec.pop().expect("checked");
    let x = vm.int.pop().expect("checked");
    v.push(x);
    vm.push_int_vec(v);
}

fn vector_int_reverse(vm: &mut VmState) {
    if let Some(v) = vm.int_vec.last_mut() {
        v.reverse();
    }
}

fn vector_int_indexof(vm: &mut VmState) {
    if vm.int_vec.is_empty() || vm.int.is_empty() {
        return;
    }
    let v = vm.int_vec.pop().expect("checked");
    let x = vm.int.pop().expect("checked");
    let pos = v.iter().position(|&e| e == x).map(|p| p as i64).unwrap_or(-1);
    vm.push_int(pos);
}

fn vector_int_eq(vm: &mut VmState) {
    if vm.int_vec.len() < 2 {
        return;
    }
    let top = vm.int_vec.pop().expect("checked");
    let below = vm.int_vec.pop().expect("checked");
    vm.push_bool(below == top);
}

fn vector_int_dup(vm: &mut VmState) {
    if let Some(v) = vm.int_vec.last().cloned() {
        vm.push_int_vec(v);
    }
}

fn vector_int_swap(vm: &mut VmState) {
    let n = vm.int_vec.len();
    if n >= 2 {
        vm.int_vec.swap(n - 1, n - 2);
    }
}

fn vector_int_pop(vm: &mut VmState) {
    vm.int_vec.pop();
}

// ---------------------------------------------------------------------------
// Float-vector instructions

fn vector_float_length(vm: &mut VmState) {
    if let Some(v) = vm.float_vec.pop() {
        vm.push_int(v.len() as i64);
    }
}

fn vector_float_nth(vm: &mut VmState) {
    let Some(v) = vm.float_vec.last() else { return };
    if v.is_empty() || vm.int.is_empty() {
        return;
    }
    let v = vm.float_vec.pop().expect("checked");
    let i = vm.int.pop().expect("checked");
    vm.push_float(v[wrap_index(i, v.len())]);
}

fn vector_float_conj(vm: &mut VmState) {
    if vm.float_vec.is_empty() || vm.float.is_empty() {
        return;
    }
    let mut v = vm.float_vec.pop().expect("checked");
    let x = vm.float.pop().expect("checked");
    v.push(x);
    vm.push_float_vec(v);
}

fn vector_float_reverse(vm: &mut VmState) {
    if let Some(v) = vm.float_vec.last_mut() {
        v.reverse();
    }
}

fn vector_float_eq(vm: &mut VmState) {
    if vm.float_vec.len() < 2 {
        return;
    }
    let top = vm.float_vec.pop().expect("checked");
    let below = vm.float_vec.pop().expect("checked");
    vm.push_bool(below == top);
}

fn vector_float_dup(vm: &mut VmState) {
    if let Some(v) = vm.float_vec.last().cloned() {
        vm.push_float_vec(v);
    }
}

fn vector_float_swap(vm: &mut VmState) {
    let n = vm.float_vec.len();
    if n >= 2 {
        vm.float_vec.swap(n - 1, n - 2);
    }
}

fn vector_float_pop(vm: &mut VmState) {
    vm.float_vec.pop();
}

// ---------------------------------------------------------------------------
// Printing and input

fn print_string(vm: &mut VmState) {
    if let Some(s) = vm.string.pop() {
        vm.print(&s);
    }
}

fn print_integer(vm: &mut VmState) {
    if let Some(x) = vm.int.pop() {
        vm.print(&x.to_string());
    }
}

fn print_newline(vm: &mut VmState) {
    vm.print("\n");
}

fn push_input(vm: &mut VmState, k: usize) {
    if let Some(lit) = vm.inputs.get(k).cloned() {
        vm.push_literal(lit);
    }
}

fn in1(vm: &mut VmState) {
    push_input(vm, 0);
}

fn in2(vm: &mut VmState) {
    push_input(vm, 1);
}

fn in3(vm: &mut VmState) {
    push_input(vm, 2);
}

// ---------------------------------------------------------------------------
// The table

macro_rules! ins {
    ($name:ident) => {
        Instruction {
            name: stringify!($name),
            opens: 0,
            run: $name,
        }
    };
    ($name:ident, opens $n:expr) => {
        Instruction {
            name: stringify!($name),
            opens: $n,
            run: $name,
        }
    };
}

static REGISTRY: &[Instruction] = &[
    // exec / control
    Instruction { name: "noop", opens: 0, run: noop },
    Instruction { name: "noop_open", opens: 1, run: noop },
    ins!(exec_if, opens 2),
    ins!(exec_when, opens 1),
    ins!(exec_dup, opens 1),
    ins!(exec_pop, opens 1),
    ins!(exec_swap, opens 2),
    ins!(exec_do_range, opens 1),
    ins!(exec_do_count, opens 1),
    ins!(exec_do_times, opens 1),
    ins!(exec_while, opens 1),
    // integer
    ins!(integer_add),
    ins!(integer_sub),
    ins!(integer_mult),
    ins!(integer_div),
    ins!(integer_mod),
    ins!(integer_max),
    ins!(integer_min),
    ins!(integer_abs),
    ins!(integer_eq),
    ins!(integer_lt),
    ins!(integer_gt),
    ins!(integer_dup),
    ins!(integer_swap),
    ins!(integer_rot),
    ins!(integer_pop),
    ins!(integer_to_float),
    ins!(integer_to_string),
    // float
    ins!(float_add),
    ins!(float_sub),
    ins!(float_mult),
    ins!(float_div),
    ins!(float_abs),
    ins!(float_eq),
    ins!(float_lt),
    ins!(float_gt),
    ins!(float_dup),
    ins!(float_swap),
    ins!(float_pop),
    ins!(float_to_integer),
    // boolean
    ins!(boolean_and),
    ins!(boolean_or),
    ins!(boolean_not),
    ins!(boolean_dup),
    ins!(boolean_swap),
    ins!(boolean_pop),
    ins!(boolean_to_integer),
    // string
    ins!(string_concat),
    ins!(string_length),
    ins!(string_char_at),
    ins!(string_code_at),
    ins!(string_contains),
    ins!(string_replace),
    ins!(string_occurrences),
    ins!(string_split),
    ins!(string_word_count),
    ins!(string_eq),
    ins!(string_dup),
    ins!(string_swap),
    ins!(string_pop),
    // vector of integers
    ins!(vector_int_length),
    ins!(vector_int_nth),
    ins!(vector_int_set),
    ins!(vector_int_conj),
    ins!(vector_int_reverse),
    ins!(vector_int_indexof),
    ins!(vector_int_eq),
    ins!(vector_int_dup),
    ins!(vector_int_swap),
    ins!(vector_int_pop),
    // vector of floats
    ins!(vector_float_length),
    ins!(vector_float_nth),
    ins!(vector_float_conj),
    ins!(vector_float_reverse),
    ins!(vector_float_eq),
    ins!(vector_float_dup),
    ins!(vector_float_swap),
    ins!(vector_float_pop),
    // io
    ins!(print_string),
    ins!(print_integer),
    ins!(print_newline),
    ins!(in1),
    ins!(in2),
    ins!(in3),
];

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::push::program::must_parse;
    use crate::push::vm::{execute, ExecutionLimits};

    fn run(text: &str) -> VmState {
        execute(&must_parse(text), &[], &ExecutionLimits::default())
    }

    #[test]
    fn names_are_unique_and_resolvable() {
        let mut seen = std::collections::HashSet::new();
        for name in all_names() {
            assert!(seen.insert(name), "duplicate instruction name {name}");
            let id = lookup(name).expect("name resolves");
            assert_eq!(id.name(), name);
        }
        assert!(lookup("no_such_instruction").is_none());
    }

    #[test]
    fn binary_ops_use_push_order() {
        assert_eq!(run("(5 7 integer_sub)").int, vec![-2]);
        assert_eq!(run("(7 2 integer_div)").int, vec![3]);
        assert_eq!(run("(2 7 integer_lt)").boolean, vec![true]);
        assert_eq!(run("(1.0 4.0 float_div)").float, vec![0.25]);
    }

    #[test]
    fn division_and_modulo_guard_zero() {
        assert_eq!(run("(5 0 integer_div)").int, vec![5, 0]);
        assert_eq!(run("(5 0 integer_mod)").int, vec![5, 0]);
        assert_eq!(run("(1.0 0.0 float_div)").float, vec![1.0, 0.0]);
    }

    #[test]
    fn modulo_is_euclidean() {
        assert_eq!(run("(-7 3 integer_mod)").int, vec![2]);
        assert_eq!(run("(7 -3 integer_mod)").int, vec![1]);
    }

    #[test]
    fn rot_brings_third_to_top() {
        assert_eq!(run("(1 2 3 integer_rot)").int, vec![2, 3, 1]);
    }

    #[test]
    fn exec_if_picks_branch_by_condition() {
        assert_eq!(run("(true exec_if (1) (2))").int, vec![1]);
        assert_eq!(run("(false exec_if (1) (2))").int, vec![2]);
        // No condition: both branches stay and run in order.
        assert_eq!(run("(exec_if (1) (2))").int, vec![1, 2]);
    }

    #[test]
    fn exec_when_runs_body_only_when_true() {
        assert_eq!(run("(true exec_when (7))").int, vec![7]);
        assert!(run("(false exec_when (7))").int.is_empty());
    }

    #[test]
    fn do_range_counts_inclusive_both_directions() {
        assert_eq!(run("(1 4 exec_do_range (noop))").int, vec![1, 2, 3, 4]);
        assert_eq!(run("(3 1 exec_do_range (noop))").int, vec![3, 2, 1]);
        assert_eq!(run("(5 5 exec_do_range (noop))").int, vec![5]);
    }

    #[test]
    fn do_count_exposes_index_do_times_hides_it() {
        assert_eq!(run("(3 exec_do_count (noop))").int, vec![0, 1, 2]);
        assert_eq!(run("(3 exec_do_times (10))").int, vec![10, 10, 10]);
        // Non-positive counts consume the count and the body, run nothing.
        assert!(run("(0 exec_do_count (10))").int.is_empty());
        assert!(run("(-2 exec_do_times (10))").int.is_empty());
    }

    #[test]
    fn while_loops_until_condition_exhausted() {
        // Three trues then nothing: body runs three times, the missing
        // fourth condition stops the loop.
        assert_eq!(run("(true true true exec_while (7))").int, vec![7, 7, 7]);
    }

    #[test]
    fn string_ops_match_their_contracts() {
        assert_eq!(run("(\"ab\" \"cd\" string_concat)").string, vec!["abcd"]);
        assert_eq!(run("(\"hello\" string_length)").int, vec![5]);
        assert_eq!(run("(6 \"abc\" string_char_at)").string, vec!["a"]);
        assert_eq!(run("(1 \"abc\" string_code_at)").int, vec!['b' as i64]);
        assert_eq!(run("(\"a b\" \" \" \"\\n\" string_replace)").string, vec!["a\nb"]);
        assert_eq!(run("(\"banana\" \"an\" string_occurrences)").int, vec![2]);
        assert_eq!(run("(\"banana\" \"an\" string_contains)").boolean, vec![true]);
        assert_eq!(run("(\"a bb c\" string_split)").string, vec!["c", "bb", "a"]);
        assert_eq!(run("(\" a  bb c \" string_word_count)").int, vec![3]);
    }

    #[test]
    fn vector_ops_match_their_contracts() {
        assert_eq!(run("([1 2 3] vector_int_length)").int, vec![3]);
        assert_eq!(run("(4 [1 2 3] vector_int_nth)").int, vec![2]);
        assert_eq!(run("(9 1 [1 2 3] vector_int_set)").int_vec, vec![vec![1, 9, 3]]);
        assert_eq!(run("(4 [1 2] vector_int_conj)").int_vec, vec![vec![1, 2, 4]]);
        assert_eq!(run("([1 2] vector_int_reverse)").int_vec, vec![vec![2, 1]]);
        assert_eq!(run("(2 [1 2 3] vector_int_indexof)").int, vec![1]);
        assert_eq!(run("(5 [1 2] vector_int_indexof)").int, vec![-1]);
        assert_eq!(run("([1 2] [1 2] vector_int_eq)").boolean, vec![true]);
        assert_eq!(run("(0 f[0.5 1.5] vector_float_nth)").float, vec![0.5]);
    }

    #[test]
    fn printing_appends_to_buffer() {
        let vm = run("(1 print_integer print_newline \"x\" print_string)");
        assert_eq!(vm.print_buffer, "1\nx");
    }

    #[test]
    fn concat_over_cap_is_noop() {
        let long = "y".repeat(MAX_STRING_LEN);
        let vm = run(&format!("(\"{long}\" \"z\" string_concat)"));
        assert_eq!(vm.string.len(), 2, "operands stay when result would exceed cap");
    }
}
