//! Machine-neutral instruction set for ROM-conditioned programs.
//!
//! A program runs over `j` read-only ROM bits `u_1..u_j` and `n` writable
//! (qu)bits. Each instruction applies one gate to the writable register,
//! optionally conditioned on a single ROM bit. Nothing in the instruction set
//! can target a ROM bit, so ROM contents are invariant by construction.
//!
//! Conventions shared by the whole crate:
//! - instructions are stored in time order, first applied first;
//! - writable bit 1 is the least significant bit of a machine state index;
//! - a ROM assignment is a `u64` whose bit `i - 1` holds `u_i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::sim::quantum::Unitary2;

/// Largest ROM width addressable by a `u64` assignment.
pub const MAX_ROM_BITS: usize = 63;

/// Largest `|t|` accepted for a dyadic exponent.
const MAX_EXPONENT: i64 = 2;

/// Largest denominator exponent `k` in `t = p / 2^k`.
pub const MAX_LOG2_DEN: u32 = 60;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MachineKind {
    Classical,
    Quantum,
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineKind::Classical => "classical",
            MachineKind::Quantum => "quantum",
        })
    }
}

/// Value of ROM bit `u_index` (1-based) in assignment `u`.
#[inline]
pub fn rom_bit(u: u64, index: usize) -> bool {
    (u >> (index - 1)) & 1 == 1
}

/// Dimensions of a ROM machine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RomSpace {
    num_rom_bits: usize,
    num_writable: usize,
    kind: MachineKind,
}

impl RomSpace {
    pub fn new(num_rom_bits: usize, num_writable: usize, kind: MachineKind) -> Result<Self> {
        if num_rom_bits == 0 || num_rom_bits > MAX_ROM_BITS {
            return Err(Error::InvalidSpace(format!(
                "number of ROM bits must be in 1..={MAX_ROM_BITS}, got {num_rom_bits}"
            )));
        }
        if !(1..=3).contains(&num_writable) {
            return Err(Error::InvalidSpace(format!(
                "number of writable bits must be 1, 2 or 3, got {num_writable}"
            )));
        }
        if kind == MachineKind::Quantum && num_writable != 1 {
            return Err(Error::InvalidSpace(
                "the quantum machine has exactly one writable qubit".into(),
            ));
        }
        Ok(RomSpace {
            num_rom_bits,
            num_writable,
            kind,
        })
    }

    pub fn classical(num_rom_bits: usize, num_writable: usize) -> Result<Self> {
        Self::new(num_rom_bits, num_writable, MachineKind::Classical)
    }

    pub fn quantum(num_rom_bits: usize) -> Result<Self> {
        Self::new(num_rom_bits, 1, MachineKind::Quantum)
    }

    pub fn num_rom_bits(&self) -> usize {
        self.num_rom_bits
    }

    pub fn num_writable(&self) -> usize {
        self.num_writable
    }

    pub fn kind(&self) -> MachineKind {
        self.kind
    }

    /// Number of writable-register basis states, `2^n`.
    pub fn num_states(&self) -> usize {
        1 << self.num_writable
    }

    /// Number of ROM assignments, `2^j`.
    pub fn num_assignments(&self) -> u64 {
        1u64 << self.num_rom_bits
    }

    pub(crate) fn check_assignment(&self, u: u64) -> Result<()> {
        if self.num_rom_bits < 64 && u >> self.num_rom_bits != 0 {
            return Err(Error::AssignmentOutOfRange {
                assignment: u,
                num_rom_bits: self.num_rom_bits,
            });
        }
        Ok(())
    }
}

/// A rotation exponent `t = num / 2^log2_den` in lowest terms, `|t| <= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DyadicExponent {
    num: i64,
    log2_den: u32,
}

impl DyadicExponent {
    pub const ONE: DyadicExponent = DyadicExponent {
        num: 1,
        log2_den: 0,
    };

    pub fn new(num: i64, log2_den: u32) -> Result<Self> {
        let err = |reason| Error::InvalidExponent {
            num,
            log2_den,
            reason,
        };
        if log2_den > MAX_LOG2_DEN {
            return Err(err("denominator too large"));
        }
        let (mut p, mut k) = (num, log2_den);
        while k > 0 && p % 2 == 0 {
            p /= 2;
            k -= 1;
        }
        if p.unsigned_abs() > (MAX_EXPONENT as u64) << k {
            return Err(err("magnitude exceeds 2"));
        }
        Ok(DyadicExponent { num: p, log2_den: k })
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / (1u64 << self.log2_den) as f64
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn half(&self) -> Result<Self> {
        Self::new(self.num, self.log2_den + 1)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let k = self.log2_den.max(other.log2_den);
        let a = self.num << (k - self.log2_den);
        let b = other.num << (k - other.log2_den);
        Self::new(a + b, k)
    }
}

impl std::ops::Neg for DyadicExponent {
    type Output = DyadicExponent;

    fn neg(self) -> Self::Output {
        DyadicExponent {
            num: -self.num,
            log2_den: self.log2_den,
        }
    }
}

impl fmt::Display for DyadicExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.log2_den)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Axis {
    X,
    Z,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Z,
            Axis::Z => Axis::X,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "X",
            Axis::Z => "Z",
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Gate {
    /// Reversible classical gate: a permutation of the `2^n` register states.
    ClassicalPerm(Permutation),
    /// `X^t` or `Z^t` on the single writable qubit.
    QuantumAxis { axis: Axis, exponent: DyadicExponent },
    /// Any other single-qubit unitary.
    QuantumRaw(Unitary2),
}

impl Gate {
    pub fn axis(axis: Axis, exponent: DyadicExponent) -> Gate {
        Gate::QuantumAxis { axis, exponent }
    }

    pub fn kind(&self) -> MachineKind {
        match self {
            Gate::ClassicalPerm(_) => MachineKind::Classical,
            Gate::QuantumAxis { .. } | Gate::QuantumRaw(_) => MachineKind::Quantum,
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::ClassicalPerm(p) => Gate::ClassicalPerm(p.inverse()),
            Gate::QuantumAxis { axis, exponent } => Gate::QuantumAxis {
                axis: *axis,
                exponent: -*exponent,
            },
            Gate::QuantumRaw(u) => Gate::QuantumRaw(u.adjoint()),
        }
    }
}

/// A gate plus at most one ROM control. An absent control means the gate is
/// always applied; it does not count as a ROM call.
#[derive(Clone, PartialEq, Debug)]
pub struct Instruction {
    pub gate: Gate,
    pub control: Option<usize>,
}

impl Instruction {
    pub fn controlled(gate: Gate, control: usize) -> Self {
        Instruction {
            gate,
            control: Some(control),
        }
    }

    pub fn free(gate: Gate) -> Self {
        Instruction {
            gate,
            control: None,
        }
    }

    /// Whether the gate fires under ROM assignment `u`.
    #[inline]
    pub fn is_active(&self, u: u64) -> bool {
        self.control.is_none_or(|i| rom_bit(u, i))
    }

    pub fn inverse(&self) -> Instruction {
        Instruction {
            gate: self.gate.inverse(),
            control: self.control,
        }
    }
}

/// A validated, time-ordered sequence of instructions over a fixed space.
#[derive(Clone, PartialEq, Debug)]
pub struct RomProgram {
    space: RomSpace,
    instructions: Vec<Instruction>,
}

impl RomProgram {
    pub fn new(space: RomSpace, instructions: Vec<Instruction>) -> Result<Self> {
        for ins in &instructions {
            if let Some(c) = ins.control {
                if c == 0 || c > space.num_rom_bits {
                    return Err(Error::ControlOutOfRange {
                        control: c,
                        num_rom_bits: space.num_rom_bits,
                    });
                }
            }
            if ins.gate.kind() != space.kind {
                return Err(Error::KindMismatch {
                    expected: space.kind,
                    found: ins.gate.kind(),
                });
            }
            match &ins.gate {
                Gate::ClassicalPerm(p) if p.len() != space.num_states() => {
                    return Err(Error::PermutationSize {
                        expected: space.num_states(),
                        found: p.len(),
                    });
                }
                Gate::QuantumRaw(u) => u.check_unitary()?,
                _ => {}
            }
        }
        Ok(RomProgram {
            space,
            instructions,
        })
    }

    pub fn empty(space: RomSpace) -> Self {
        RomProgram {
            space,
            instructions: Vec::new(),
        }
    }

    pub fn space(&self) -> &RomSpace {
        &self.space
    }

    pub fn kind(&self) -> MachineKind {
        self.space.kind
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Number of controlled instructions. Uncontrolled gates are free.
    pub fn rom_call_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|ins| ins.control.is_some())
            .count()
    }

    pub fn gate_count(&self) -> usize {
        self.instructions.len()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &RomProgram) -> Result<RomProgram> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut instructions = self.instructions.clone();
        instructions.extend_from_slice(&other.instructions);
        Ok(RomProgram {
            space: self.space,
            instructions,
        })
    }

    /// Undoes `self`: reversed order, each gate inverted, controls kept.
    pub fn inverse(&self) -> RomProgram {
        RomProgram {
            space: self.space,
            instructions: self.instructions.iter().rev().map(Instruction::inverse).collect(),
        }
    }
}
