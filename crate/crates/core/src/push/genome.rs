//! Linear genomes.
//!
//! A genome is a flat sequence of genes. Each gene carries a payload (an
//! instruction or a literal) plus a `close_count` that closes that many open
//! code blocks during translation. Keeping the representation linear makes
//! the variation operators simple sequence edits; nesting is reintroduced by
//! [`translate`](super::program::translate).

use super::literal::Literal;
use super::registry::{self, InstrId};
use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// What a gene expresses when translated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenePayload {
    /// A registry instruction, serialized by name.
    Instr(InstrId),
    /// A constant pushed to its typed stack.
    Lit(Literal),
}

/// One gene: payload plus the number of open blocks it closes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gene {
    pub payload: GenePayload,
    pub close_count: u8,
}

impl Gene {
    pub fn instr(id: InstrId) -> Self {
        Gene {
            payload: GenePayload::Instr(id),
            close_count: 0,
        }
    }

    pub fn lit(l: Literal) -> Self {
        Gene {
            payload: GenePayload::Lit(l),
            close_count: 0,
        }
    }

    pub fn with_close(mut self, n: u8) -> Self {
        self.close_count = n;
        self
    }
}

/// A linear genome.
pub type Genome = Vec<Gene>;

/// Distribution of freshly generated `close_count` values.
pub const CLOSE_COUNT_WEIGHTS: [(u8, f64); 4] =
    [(0, 0.772), (1, 0.206), (2, 0.021), (3, 0.001)];

/// Sample a `close_count` from the standard distribution.
pub fn random_close_count(rng: &mut impl Rng) -> u8 {
    let roll: f64 = rng.random();
    let mut acc = 0.0;
    for &(value, weight) in &CLOSE_COUNT_WEIGHTS {
        acc += weight;
        if roll < acc {
            return value;
        }
    }
    CLOSE_COUNT_WEIGHTS[CLOSE_COUNT_WEIGHTS.len() - 1].0
}

// ---------------------------------------------------------------------------
// Gene pools

/// Ephemeral random constant generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErcKind {
    /// Uniform integer in `[-100, 100]`.
    Int,
    /// Uniform float in `[-100, 100]`, rounded to 4 decimal places.
    Float,
    /// Fair-coin boolean.
    Bool,
    /// Single visible-ASCII character, as a one-char string.
    VisibleChar,
    /// Visible-ASCII string of length 0..=10.
    VisibleStr,
}

/// Characters an ERC string may contain: printable ASCII minus space.
pub const VISIBLE_ASCII: std::ops::RangeInclusive<u8> = 0x21..=0x7e;

fn random_visible_char(rng: &mut impl Rng) -> char {
    rng.random_range(VISIBLE_ASCII) as char
}

impl ErcKind {
    pub fn generate(&self, rng: &mut impl Rng) -> Literal {
        match self {
            ErcKind::Int => Literal::Int(rng.random_range(-100..=100)),
            ErcKind::Float => {
                let x: f64 = rng.random_range(-100.0..=100.0);
                Literal::Float((x * 1e4).round() / 1e4)
            }
            ErcKind::Bool => Literal::Bool(rng.random()),
            ErcKind::VisibleChar => Literal::Str(random_visible_char(rng).to_string()),
            ErcKind::VisibleStr => {
                let len = rng.random_range(0..=10);
                Literal::Str((0..len).map(|_| random_visible_char(rng)).collect())
            }
        }
    }
}

/// One entry a random gene can be drawn from.
#[derive(Debug, Clone)]
pub enum GeneSource {
    Instr(InstrId),
    Const(Literal),
    Erc(ErcKind),
}

/// The atom set for a problem: instructions, constants, and ERC generators,
/// drawn uniformly when building or mutating genomes.
#[derive(Debug, Clone)]
pub struct GenePool {
    entries: Vec<GeneSource>,
}

impl GenePool {
    /// Build a pool from instruction names plus extra sources. Panics on an
    /// unknown name: pools are authored in code, so that is a programmer
    /// error, not an input error.
    pub fn new(instruction_names: &[&str], extras: Vec<GeneSource>) -> Self {
        let mut entries: Vec<GeneSource> = instruction_names
            .iter()
            .map(|name| {
                GeneSource::Instr(
                    registry::lookup(name)
                        .unwrap_or_else(|| panic!("unknown instruction in pool: {name}")),
                )
            })
            .collect();
        entries.extend(extras);
        assert!(!entries.is_empty(), "gene pool must not be empty");
        GenePool { entries }
    }

    /// Draw one payload uniformly over pool entries.
    pub fn draw_payload(&self, rng: &mut impl Rng) -> GenePayload {
        match self.entries.choose(rng).expect("pool is non-empty") {
            GeneSource::Instr(id) => GenePayload::Instr(*id),
            GeneSource::Const(lit) => GenePayload::Lit(lit.clone()),
            GeneSource::Erc(kind) => GenePayload::Lit(kind.generate(rng)),
        }
    }

    /// Draw a full gene: payload plus a `close_count` from the standard
    /// distribution.
    pub fn draw_gene(&self, rng: &mut impl Rng) -> Gene {
        Gene {
            payload: self.draw_payload(rng),
            close_count: random_close_count(rng),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A fresh random genome with length uniform in `1..=max_initial_size`.
pub fn random_genome(pool: &GenePool, max_initial_size: usize, rng: &mut impl Rng) -> Genome {
    let len = rng.random_range(1..=max_initial_size.max(1));
    (0..len).map(|_| pool.draw_gene(rng)).collect()
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn close_count_distribution_matches_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 200_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            counts[random_close_count(&mut rng) as usize] += 1;
        }
        for (i, &(_, weight)) in CLOSE_COUNT_WEIGHTS.iter().enumerate() {
            let observed = counts[i] as f64 / n as f64;
            assert!(
                (observed - weight).abs() < 0.01,
                "close_count {i}: observed {observed:.4}, expected {weight}"
            );
        }
    }

    #[test]
    fn erc_values_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            match ErcKind::Int.generate(&mut rng) {
                Literal::Int(x) => assert!((-100..=100).contains(&x)),
                other => panic!("unexpected literal {other:?}"),
            }
            match ErcKind::Float.generate(&mut rng) {
                Literal::Float(x) => {
                    assert!((-100.0..=100.0).contains(&x));
                    // Rounded to 4 decimal places.
                    assert!((x * 1e4 - (x * 1e4).round()).abs() < 1e-9);
                }
                other => panic!("unexpected literal {other:?}"),
            }
            match ErcKind::VisibleStr.generate(&mut rng) {
                Literal::Str(s) => {
                    assert!(s.len() <= 10);
                    assert!(s.bytes().all(|b| VISIBLE_ASCII.contains(&b)));
                }
                other => panic!("unexpected literal {other:?}"),
            }
        }
    }

    #[test]
    fn random_genome_respects_length_bounds() {
        let pool = GenePool::new(&["integer_add"], vec![GeneSource::Erc(ErcKind::Int)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let g = random_genome(&pool, 100, &mut rng);
            assert!(!g.is_empty() && g.len() <= 100);
        }
    }

    #[test]
    fn gene_serde_round_trip() {
        let gene = Gene::lit(Literal::IntVec(vec![1, -2])).with_close(2);
        let json = serde_json::to_string(&gene).unwrap();
        let back: Gene = serde_json::from_str(&json).unwrap();
        assert_eq!(gene, back);
    }
}
