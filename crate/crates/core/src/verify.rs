//! Checking a program against an expected function.
//!
//! The machine starts in the all-zero state. Component `k` of the expected
//! function must land in writable bit `k + 1`; bits beyond the last
//! component must return to 0.

use std::fmt;

use crate::boolean::VectorFunction;
use crate::error::{Error, Result};
use crate::ir::{rom_bit, Gate, MachineKind, RomProgram};
use crate::permutation::Permutation;
use crate::sim::quantum::CompiledQuantum;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    /// First disagreeing assignment, with both machine states.
    Mismatch {
        assignment: u64,
        expected: usize,
        found: usize,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// `(u1,u2,...,uj)` for assignment `u`.
pub fn format_assignment(u: u64, j: usize) -> String {
    let bits: Vec<String> = (0..j).map(|b| (u >> b & 1).to_string()).collect();
    format!("({})", bits.join(","))
}

/// Writable bits of `state`, bit 1 first.
pub fn format_state(state: usize, n: usize) -> String {
    (0..n).map(|b| if state >> b & 1 == 1 { '1' } else { '0' }).collect()
}

/// Human-readable report for a verdict on a `j`-bit, `n`-register machine.
pub struct Report {
    pub verdict: Verdict,
    pub num_rom_bits: usize,
    pub num_writable: usize,
    pub checked: u64,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Pass => write!(f, "pass: {} assignments checked", self.checked),
            Verdict::Mismatch {
                assignment,
                expected,
                found,
            } => write!(
                f,
                "mismatch at u={}: expected {}, found {}",
                format_assignment(assignment, self.num_rom_bits),
                format_state(expected, self.num_writable),
                format_state(found, self.num_writable)
            ),
        }
    }
}

/// Final machine state from 0 under `u`, with gates decoded once.
enum Runner<'p> {
    Classical(u64, Vec<(&'p Permutation, Option<usize>)>),
    Quantum(CompiledQuantum<'p>),
}

impl<'p> Runner<'p> {
    fn new(program: &'p RomProgram) -> Result<Self> {
        match program.kind() {
            MachineKind::Quantum => Ok(Runner::Quantum(CompiledQuantum::new(program)?)),
            MachineKind::Classical => {
                let perms = program
                    .instructions()
                    .iter()
                    .map(|ins| match &ins.gate {
                        Gate::ClassicalPerm(perm) => Ok((perm, ins.control)),
                        other => Err(Error::KindMismatch {
                            expected: MachineKind::Classical,
                            found: other.kind(),
                        }),
                    })
                    .collect::<Result<_>>()?;
                Ok(Runner::Classical(program.space().num_assignments(), perms))
            }
        }
    }

    fn state(&self, u: u64) -> Result<usize> {
        match self {
            Runner::Quantum(q) => Ok(q.outcome(u)? as usize),
            Runner::Classical(num_assignments, perms) => {
                if u >= *num_assignments {
                    return Err(Error::AssignmentOutOfRange {
                        assignment: u,
                        num_rom_bits: num_assignments.trailing_zeros() as usize,
                    });
                }
                Ok(perms.iter().fold(0, |s, (perm, control)| match control {
                    Some(i) if !rom_bit(u, *i) => s,
                    _ => perm.apply(s),
                }))
            }
        }
    }
}

/// Exhaustive check over all `2^j` assignments. A quantum program that
/// leaves the qubit in superposition is an error, not a mismatch.
pub fn verify_program(p: &RomProgram, expected: &VectorFunction) -> Result<Verdict> {
    let j = p.space().num_rom_bits();
    if expected.num_vars() != j {
        return Err(Error::ArityMismatch {
            left: expected.num_vars(),
            right: j,
        });
    }
    if expected.components().len() > p.space().num_writable() {
        return Err(Error::ArityMismatch {
            left: expected.components().len(),
            right: p.space().num_writable(),
        });
    }
    verify_with(p, |u| expected.state(u), 0..p.space().num_assignments())
}

/// Checks only the given assignments against an oracle returning the
/// expected final state. Used when `2^j` is too large to sweep.
pub fn verify_with(
    p: &RomProgram,
    oracle: impl Fn(u64) -> usize,
    assignments: impl IntoIterator<Item = u64>,
) -> Result<Verdict> {
    let runner = Runner::new(p)?;
    for u in assignments {
        let found = runner.state(u)?;
        let expected = oracle(u);
        if found != expected {
            return Ok(Verdict::Mismatch {
                assignment: u,
                expected,
                found,
            });
        }
    }
    Ok(Verdict::Pass)
}
