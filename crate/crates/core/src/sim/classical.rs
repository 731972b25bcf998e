//! Exact semantics of classical ROM programs.
//!
//! Under a fixed ROM assignment every instruction is either its gate's
//! permutation or the identity, so a program is a permutation of the `2^n`
//! register states per assignment.

use crate::boolean::{TruthTable, VectorFunction};
use crate::error::{Error, Result};
use crate::ir::{Gate, MachineKind, RomProgram};
use crate::permutation::Permutation;
use crate::sim::EAGER_SWEEP_LIMIT;

fn classical_perms(p: &RomProgram) -> Result<Vec<(&Permutation, Option<usize>)>> {
    p.instructions()
        .iter()
        .map(|ins| match &ins.gate {
            Gate::ClassicalPerm(perm) => Ok((perm, ins.control)),
            other => Err(Error::KindMismatch {
                expected: MachineKind::Classical,
                found: other.kind(),
            }),
        })
        .collect()
}

/// Time-ordered composition of the instructions active under `u`.
pub fn permutation_of(p: &RomProgram, u: u64) -> Result<Permutation> {
    p.space().check_assignment(u)?;
    let mut acc = Permutation::identity(p.space().num_states());
    for ins in p.instructions() {
        let Gate::ClassicalPerm(perm) = &ins.gate else {
            return Err(Error::KindMismatch {
                expected: MachineKind::Classical,
                found: ins.gate.kind(),
            });
        };
        if ins.is_active(u) {
            acc = acc.then(perm);
        }
    }
    Ok(acc)
}

/// Final state reached from `start` under assignment `u`.
pub fn evaluate(p: &RomProgram, u: u64, start: usize) -> Result<usize> {
    let num_states = p.space().num_states();
    if start >= num_states {
        return Err(Error::StateOutOfRange {
            state: start,
            num_states,
        });
    }
    p.space().check_assignment(u)?;
    let perms = classical_perms(p)?;
    Ok(run(&perms, u, start))
}

fn run(perms: &[(&Permutation, Option<usize>)], u: u64, start: usize) -> usize {
    perms.iter().fold(start, |s, (perm, control)| match control {
        Some(i) if (u >> (i - 1)) & 1 == 0 => s,
        _ => perm.apply(s),
    })
}

/// Lazily yields `(u, final state from 0)` for every assignment in order.
pub fn sweep(p: &RomProgram) -> Result<impl Iterator<Item = (u64, usize)> + '_> {
    let perms = classical_perms(p)?;
    Ok((0..p.space().num_assignments()).map(move |u| (u, run(&perms, u, 0))))
}

/// The function computed from the all-zero register, one table per
/// writable bit (bit 1 first).
pub fn extract_function(p: &RomProgram) -> Result<VectorFunction> {
    let j = p.space().num_rom_bits();
    if j > EAGER_SWEEP_LIMIT {
        return Err(Error::TooLarge(format!(
            "eager extraction supports at most {EAGER_SWEEP_LIMIT} ROM bits, got {j}; use sweep()"
        )));
    }
    let n = p.space().num_writable();
    let finals: Vec<usize> = sweep(p)?.map(|(_, s)| s).collect();
    let components = (0..n)
        .map(|k| TruthTable::new(j, finals.iter().map(|s| s >> k & 1 == 1).collect()))
        .collect::<Result<Vec<_>>>()?;
    VectorFunction::new(components)
}
