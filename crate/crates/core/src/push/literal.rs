//! Literal values and the type lattice of the interpreter.

use serde::{Deserialize, Serialize};
use std::fmt;

/// The stack types the interpreter knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PushType {
    Int,
    Float,
    Bool,
    Str,
    IntVec,
    FloatVec,
}

impl fmt::Display for PushType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PushType::Int => "int",
            PushType::Float => "float",
            PushType::Bool => "bool",
            PushType::Str => "string",
            PushType::IntVec => "int_vec",
            PushType::FloatVec => "float_vec",
        };
        f.write_str(s)
    }
}

/// A constant value: appears in genomes, on stacks, and in test-case data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Literal {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    IntVec(Vec<i64>),
    FloatVec(Vec<f64>),
}

impl Literal {
    pub fn type_of(&self) -> PushType {
        match self {
            Literal::Int(_) => PushType::Int,
            Literal::Float(_) => PushType::Float,
            Literal::Bool(_) => PushType::Bool,
            Literal::Str(_) => PushType::Str,
            Literal::IntVec(_) => PushType::IntVec,
            Literal::FloatVec(_) => PushType::FloatVec,
        }
    }
}

/// Bit pattern used to canonicalize every NaN in behavior comparisons.
const CANON_NAN: u64 = 0x7ff8_0000_0000_0000;

/// Canonical bits for an `f64`: all NaNs identified, `-0.0` folded into
/// `0.0`. Behavior equality and hashing go through this so that float
/// quirks never split or merge behaviors inconsistently.
#[inline]
pub fn canonical_f64_bits(x: f64) -> u64 {
    if x.is_nan() {
        CANON_NAN
    } else if x == 0.0 {
        0
    } else {
        x.to_bits()
    }
}

/// A hashable key capturing literal equality with canonical float handling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralKey {
    Int(i64),
    Float(u64),
    Bool(bool),
    Str(String),
    IntVec(Vec<i64>),
    FloatVec(Vec<u64>),
}

impl Literal {
    pub fn key(&self) -> LiteralKey {
        match self {
            Literal::Int(x) => LiteralKey::Int(*x),
            Literal::Float(x) => LiteralKey::Float(canonical_f64_bits(*x)),
            Literal::Bool(x) => LiteralKey::Bool(*x),
            Literal::Str(x) => LiteralKey::Str(x.clone()),
            Literal::IntVec(x) => LiteralKey::IntVec(x.clone()),
            Literal::FloatVec(x) => {
                LiteralKey::FloatVec(x.iter().map(|&v| canonical_f64_bits(v)).collect())
            }
        }
    }
}

impl fmt::Display for Literal {
    /// Program-text form. Floats always carry a decimal point or exponent,
    /// float vectors are prefixed `f[...]`, so every form parses back
    /// unambiguously.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(x) => write!(f, "{x}"),
            Literal::Float(x) => write!(f, "{}", format_float(*x)),
            Literal::Bool(x) => write!(f, "{x}"),
            Literal::Str(x) => write!(f, "{x:?}"),
            Literal::IntVec(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Literal::FloatVec(xs) => {
                f.write_str("f[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", format_float(*x))?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Render a float so it round-trips and is visibly a float.
pub fn format_float(x: f64) -> String {
    if x.is_finite() && x == x.trunc() && x.abs() < 1e15 {
        format!("{x:.1}")
    } else {
        // Shortest round-trip representation; covers NaN/inf too.
        format!("{x}")
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_unambiguous() {
        assert_eq!(format_float(5.0), "5.0");
        assert_eq!(format_float(1.25), "1.25");
        assert_eq!(format_float(-0.5), "-0.5");
        assert_eq!(Literal::Float(3.0).to_string(), "3.0");
        assert_eq!(Literal::Int(3).to_string(), "3");
    }

    #[test]
    fn canonical_bits_fold_nan_and_negative_zero() {
        assert_eq!(canonical_f64_bits(f64::NAN), canonical_f64_bits(-f64::NAN));
        assert_eq!(canonical_f64_bits(0.0), canonical_f64_bits(-0.0));
        assert_ne!(canonical_f64_bits(1.0), canonical_f64_bits(-1.0));
    }

    #[test]
    fn keys_capture_equality() {
        assert_eq!(
            Literal::FloatVec(vec![0.0]).key(),
            Literal::FloatVec(vec![-0.0]).key()
        );
        assert_ne!(Literal::Int(1).key(), Literal::Float(1.0).key());
    }

    #[test]
    fn serde_round_trip() {
        let vals = vec![
            Literal::Int(-3),
            Literal::Float(2.5),
            Literal::Bool(true),
            Literal::Str("a\nb".into()),
            Literal::IntVec(vec![1, 2]),
            Literal::FloatVec(vec![0.25]),
        ];
        let json = serde_json::to_string(&vals).unwrap();
        let back: Vec<Literal> = serde_json::from_str(&json).unwrap();
        assert_eq!(vals, back);
    }
}
