//! Nested programs and genome translation.
//!
//! Programs are what the interpreter runs: sequences of instructions,
//! literals, and parenthesized blocks. They are produced from linear
//! genomes by [`translate`], printed as s-expressions, and parsed back for
//! artifacts and tests.

use super::genome::{Gene, GenePayload, Genome};
use super::literal::Literal;
use super::registry::{self, InstrId};
use crate::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// One element of a program body.
#[derive(Debug, Clone, PartialEq)]
pub enum ProgramItem {
    Instr(InstrId),
    Lit(Literal),
    /// A nested code block. `Arc` keeps block duplication on the exec stack
    /// cheap and lets programs cross thread boundaries.
    Block(Arc<Vec<ProgramItem>>),
}

/// A translated, executable program.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub body: Vec<ProgramItem>,
}

impl Program {
    /// Total number of items, counting each block as one plus its contents.
    pub fn size(&self) -> usize {
        fn count(items: &[ProgramItem]) -> usize {
            items
                .iter()
                .map(|it| match it {
                    ProgramItem::Block(b) => 1 + count(b),
                    _ => 1,
                })
                .sum()
        }
        count(&self.body)
    }
}

// ---------------------------------------------------------------------------
// Translation

struct Frame {
    /// Sibling blocks already closed for the opening instruction.
    finished: Vec<ProgramItem>,
    /// The block currently being filled.
    current: Vec<ProgramItem>,
    /// Blocks still owed, including `current`.
    remaining: usize,
}

fn append_item(body: &mut Vec<ProgramItem>, stack: &mut [Frame], item: ProgramItem) {
    match stack.last_mut() {
        Some(frame) => frame.current.push(item),
        None => body.push(item),
    }
}

fn close_one(body: &mut Vec<ProgramItem>, stack: &mut Vec<Frame>) {
    let Some(top) = stack.last_mut() else {
        // Surplus close with nothing open: ignored.
        return;
    };
    let block = ProgramItem::Block(Arc::new(std::mem::take(&mut top.current)));
    top.finished.push(block);
    top.remaining -= 1;
    if top.remaining == 0 {
        let frame = stack.pop().expect("stack is non-empty");
        for block in frame.finished {
            append_item(body, stack, block);
        }
    }
}

/// Translate a linear genome into a nested program.
///
/// Each gene appends its payload, then block-opening instructions open their
/// declared number of blocks; the gene's `close_count` then closes that many
/// of the innermost open blocks. Surplus closes are ignored and any blocks
/// still open at the end of the genome are closed automatically.
pub fn translate(genome: &Genome) -> Program {
    let mut body = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();
    for gene in genome {
        let (item, opens) = match &gene.payload {
            GenePayload::Instr(id) => (
                ProgramItem::Instr(*id),
                registry::instruction(*id).opens as usize,
            ),
            GenePayload::Lit(lit) => (ProgramItem::Lit(lit.clone()), 0),
        };
        append_item(&mut body, &mut stack, item);
        if opens > 0 {
            stack.push(Frame {
                finished: Vec::new(),
                current: Vec::new(),
                remaining: opens,
            });
        }
        for _ in 0..gene.close_count {
            close_one(&mut body, &mut stack);
        }
    }
    while !stack.is_empty() {
        close_one(&mut body, &mut stack);
    }
    Program { body }
}

// ---------------------------------------------------------------------------
// Printing

fn fmt_items(items: &[ProgramItem], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        match item {
            ProgramItem::Instr(id) => f.write_str(registry::instruction(*id).name)?,
            ProgramItem::Lit(lit) => write!(f, "{lit}")?,
            ProgramItem::Block(block) => {
                f.write_str("(")?;
                fmt_items(block, f)?;
                f.write_str(")")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        fmt_items(&self.body, f)?;
        f.write_str(")")
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, PartialEq)]
enum Token {
    LParen,
    RParen,
    LBracket,
    FloatLBracket,
    RBracket,
    Str(String),
    Atom(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push(Token::LParen);
            }
            ')' => {
                chars.next();
                tokens.push(Token::RParen);
            }
            '[' => {
                chars.next();
                tokens.push(Token::LBracket);
            }
            ']' => {
                chars.next();
                tokens.push(Token::RBracket);
            }
            '"' => {
                chars.next();
                tokens.push(Token::Str(read_string(&mut chars)?));
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "()[]\"".contains(c) {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                // `f[` marks a float-vector literal; the bracket follows.
                if atom == "f" && chars.peek() == Some(&'[') {
                    chars.next();
                    tokens.push(Token::FloatLBracket);
                } else {
                    tokens.push(Token::Atom(atom));
                }
            }
        }
    }
    Ok(tokens)
}

fn read_string(chars: &mut std::iter::Peekable<std::str::Chars<'_>>) -> Result<String> {
    let mut out = String::new();
    loop {
        match chars.next() {
            None => return Err(Error::Parse("unterminated string literal".into())),
            Some('"') => return Ok(out),
            Some('\\') => match chars.next() {
                Some('n') => out.push('\n'),
                Some('t') => out.push('\t'),
                Some('r') => out.push('\r'),
                Some('\\') => out.push('\\'),
                Some('"') => out.push('"'),
                Some('0') => out.push('\0'),
                Some('u') => {
                    if chars.next() != Some('{') {
                        return Err(Error::Parse("malformed \\u escape".into()));
                    }
                    let mut hex = String::new();
                    for c in chars.by_ref() {
                        if c == '}' {
                            break;
                        }
                        hex.push(c);
                    }
                    let code = u32::from_str_radix(&hex, 16)
                        .map_err(|_| Error::Parse(format!("bad \\u escape: {hex}")))?;
                    out.push(
                        char::from_u32(code)
                            .ok_or_else(|| Error::Parse(format!("bad code point {code:#x}")))?,
                    );
                }
                other => return Err(Error::Parse(format!("bad escape: {other:?}"))),
            },
            Some(c) => out.push(c),
        }
    }
}

fn parse_atom(atom: &str) -> Result<ProgramItem> {
    if atom == "true" {
        return Ok(ProgramItem::Lit(Literal::Bool(true)));
    }
    if atom == "false" {
        return Ok(ProgramItem::Lit(Literal::Bool(false)));
    }
    if let Ok(x) = atom.parse::<i64>() {
        return Ok(ProgramItem::Lit(Literal::Int(x)));
    }
    if looks_numeric(atom) {
        if let Ok(x) = atom.parse::<f64>() {
            return Ok(ProgramItem::Lit(Literal::Float(x)));
        }
    }
    match registry::lookup(atom) {
        Some(id) => Ok(ProgramItem::Instr(id)),
        None => Err(Error::UnknownInstruction(atom.to_string())),
    }
}

fn looks_numeric(atom: &str) -> bool {
    atom.chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '.' || c == '+')
}

fn parse_number_atom(atom: &str) -> Result<f64> {
    atom.parse::<f64>()
        .map_err(|_| Error::Parse(format!("expected a number, found `{atom}`")))
}

fn parse_items(
    tokens: &mut std::iter::Peekable<std::vec::IntoIter<Token>>,
) -> Result<Vec<ProgramItem>> {
    let mut items = Vec::new();
    loop {
        match tokens.peek() {
            None | Some(Token::RParen) => return Ok(items),
            _ => {}
        }
        let token = tokens.next().expect("peeked above");
        match token {
            Token::LParen => {
                let inner = parse_items(tokens)?;
                match tokens.next() {
                    Some(Token::RParen) => items.push(ProgramItem::Block(Arc::new(inner))),
                    _ => return Err(Error::Parse("unbalanced `(`".into())),
                }
            }
            Token::LBracket => {
                let mut xs = Vec::new();
                loop {
                    match tokens.next() {
                        Some(Token::RBracket) => break,
                        Some(Token::Atom(a)) => xs.push(
                            a.parse::<i64>()
                                .map_err(|_| Error::Parse(format!("bad int `{a}` in vector")))?,
                        ),
                        _ => return Err(Error::Parse("unbalanced `[`".into())),
                    }
                }
                items.push(ProgramItem::Lit(Literal::IntVec(xs)));
            }
            Token::FloatLBracket => {
                let mut xs = Vec::new();
                loop {
                    match tokens.next() {
                        Some(Token::RBracket) => break,
                        Some(Token::Atom(a)) => xs.push(parse_number_atom(&a)?),
                        _ => return Err(Error::Parse("unbalanced `f[`".into())),
                    }
                }
                items.push(ProgramItem::Lit(Literal::FloatVec(xs)));
            }
            Token::Str(s) => items.push(ProgramItem::Lit(Literal::Str(s))),
            Token::Atom(a) => items.push(parse_atom(&a)?),
            Token::RParen | Token::RBracket => {
                return Err(Error::Parse("unbalanced close delimiter".into()))
            }
        }
    }
}

/// Parse the s-expression form produced by [`Program`]'s `Display`.
pub fn parse(text: &str) -> Result<Program> {
    let mut tokens = tokenize(text)?.into_iter().peekable();
    match tokens.next() {
        Some(Token::LParen) => {}
        _ => return Err(Error::Parse("program must start with `(`".into())),
    }
    let body = parse_items(&mut tokens)?;
    match tokens.next() {
        Some(Token::RParen) => {}
        _ => return Err(Error::Parse("program must end with `)`".into())),
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing content after program".into()));
    }
    Ok(Program { body })
}

/// Convenience constructor used by tests and reference programs: parse the
/// body of a program and fail loudly on error.
pub fn must_parse(text: &str) -> Program {
    parse(text).unwrap_or_else(|e| panic!("bad program text {text:?}: {e}"))
}

/// Build a genome literal from `(payload, close_count)` pairs given as
/// program-atom text; handy for tests that exercise translation directly.
pub fn genome_from_atoms(atoms: &[(&str, u8)]) -> Result<Genome> {
    atoms
        .iter()
        .map(|(atom, close)| {
            let payload = match parse_atom(atom)? {
                ProgramItem::Instr(id) => GenePayload::Instr(id),
                ProgramItem::Lit(lit) => GenePayload::Lit(lit),
                ProgramItem::Block(_) => {
                    return Err(Error::Parse("blocks cannot appear in genomes".into()))
                }
            };
            Ok(Gene {
                payload,
                close_count: *close,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn translated(atoms: &[(&str, u8)]) -> String {
        translate(&genome_from_atoms(atoms).unwrap()).to_string()
    }

    #[test]
    fn exec_if_opens_two_blocks() {
        // A gene for a two-block instruction followed by two genes that each
        // close one block yields one block per branch.
        assert_eq!(
            translated(&[("exec_if", 0), ("1", 1), ("2", 1)]),
            "(exec_if (1) (2))"
        );
    }

    #[test]
    fn unclosed_blocks_close_at_genome_end() {
        assert_eq!(
            translated(&[("exec_dup", 0), ("integer_add", 0)]),
            "(exec_dup (integer_add))"
        );
    }

    #[test]
    fn surplus_closes_are_ignored() {
        assert_eq!(translated(&[("1", 3), ("2", 0)]), "(1 2)");
    }

    #[test]
    fn nested_openers_close_innermost_first() {
        assert_eq!(
            translated(&[("exec_dup", 0), ("exec_if", 0), ("1", 1), ("2", 2)]),
            "(exec_dup (exec_if (1) (2)))"
        );
    }

    #[test]
    fn multi_close_on_opening_gene_yields_empty_blocks() {
        assert_eq!(translated(&[("exec_if", 2), ("7", 0)]), "(exec_if () () 7)");
    }

    #[test]
    fn display_parse_round_trip() {
        let texts = [
            "(5 7 integer_add)",
            "(exec_if (1) (2))",
            "()",
            "(in1 [1 2 3] vector_int_eq \"a b\" f[0.5 -1.0] true)",
            "(exec_dup () 3.5)",
        ];
        for text in texts {
            let program = parse(text).unwrap();
            assert_eq!(program.to_string(), text);
            assert_eq!(parse(&program.to_string()).unwrap(), program);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("(integer_add").is_err());
        assert!(parse("(not_an_instruction)").is_err());
        assert!(parse("(\"unterminated)").is_err());
        assert!(parse("(1) extra").is_err());
    }

    #[test]
    fn string_escapes_round_trip() {
        let program = Program {
            body: vec![ProgramItem::Lit(Literal::Str("a\nb\"c\\d".into()))],
        };
        assert_eq!(parse(&program.to_string()).unwrap(), program);
    }

    #[test]
    fn size_counts_nested_items() {
        let p = must_parse("(exec_if (1) (2 3))");
        // exec_if + 2 blocks + 3 literals
        assert_eq!(p.size(), 6);
    }
}
