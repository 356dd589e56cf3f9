//! The Push-style program representation and interpreter.
//!
//! Genomes are linear gene sequences ([`genome`]); translation turns them
//! into nested programs ([`program`]) which the stack interpreter executes
//! ([`vm`]) using the instruction set in [`registry`].

pub mod genome;
pub mod literal;
pub mod program;
pub mod registry;
pub mod vm;

pub use genome::{random_genome, ErcKind, Gene, GenePayload, GenePool, GeneSource, Genome, VISIBLE_ASCII};
pub use literal::{Literal, LiteralKey, PushType};
pub use program::{genome_from_atoms, must_parse, parse, translate, Program, ProgramItem};
pub use registry::{instruction, lookup, InstrId, Instruction};
pub use vm::{execute, ExecutionLimits, VmState};
