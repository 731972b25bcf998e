//! Compilers and exact simulators for ROM-based computation.
//!
//! A ROM machine holds `j` read-only bits and a few writable (qu)bits. Every
//! gate may be conditioned on one ROM bit, and the cost of a program is the
//! number of such conditioned gates ("ROM calls"). This crate provides:
//!
//! - an instruction set and JSON format for such programs ([`ir`], [`json`]);
//! - truth tables and algebraic normal forms ([`boolean`]);
//! - exact simulation of the classical and one-qubit machines ([`sim`]);
//! - compilers for one qubit, two classical bits and three classical bits
//!   via width-5 branching programs ([`synth`]);
//! - a minimum-cost search for two-bit conjunction programs ([`search`]).

#![forbid(unsafe_code)]

pub mod boolean;
pub mod counts;
pub mod error;
pub mod ir;
pub mod json;
pub mod permutation;
pub mod render;
pub mod search;
pub mod sim;
pub mod synth;
pub mod verify;

pub use boolean::{Anf, TruthTable, VectorFunction};
pub use error::{Error, Result};
pub use ir::{Axis, DyadicExponent, Gate, Instruction, MachineKind, RomProgram, RomSpace};
pub use permutation::Permutation;
pub use verify::{verify_program, Verdict};
