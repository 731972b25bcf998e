//! Two-bit classical compilers and the one-bit reachability closure.
//!
//! The register holds `|alpha>|beta>` as state `alpha + 2 beta`. Four
//! ROM-controlled gates suffice:
//!
//! | gate              | effect                              |
//! |-------------------|-------------------------------------|
//! | `N(1)` on `u_i`   | `alpha ^= u_i`                      |
//! | `N(2)` on `u_i`   | `beta  ^= u_i`                      |
//! | `C(1)` on `u_i`   | `alpha ^= u_i & beta`               |
//! | `C(2)` on `u_i`   | `beta  ^= u_i & alpha`              |
//!
//! A conjunction of `m` controls is built by nesting: if `P` XORs the
//! conjunction of the first `m - 1` controls into one register, then
//! `P, C(other), P, C(other)` (time order, with `C` on the last control)
//! XORs the full conjunction into the other register and restores the first.

use std::collections::{BTreeSet, VecDeque};

use crate::boolean::{mask_variables, Anf, TruthTable};
use crate::error::{Error, Result};
use crate::ir::{Gate, Instruction, RomProgram, RomSpace};
use crate::permutation::Permutation;
use crate::synth::validate_controls;

/// One of the two writable bits of the classical machine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Register {
    First,
    Second,
}

impl Register {
    pub fn other(self) -> Register {
        match self {
            Register::First => Register::Second,
            Register::Second => Register::First,
        }
    }

    /// 1 or 2.
    pub fn index(self) -> usize {
        match self {
            Register::First => 1,
            Register::Second => 2,
        }
    }

    fn bit(self) -> usize {
        self.index() - 1
    }
}

impl TryFrom<usize> for Register {
    type Error = Error;

    fn try_from(index: usize) -> Result<Self> {
        match index {
            1 => Ok(Register::First),
            2 => Ok(Register::Second),
            other => Err(Error::BadRegister(other)),
        }
    }
}

/// Flips `reg` on the 4-state register.
pub fn not_perm(reg: Register) -> Permutation {
    let b = reg.bit();
    Permutation::from_images((0..4).map(|s| s ^ (1 << b)).collect()).expect("xor is a bijection")
}

/// XORs the other register into `target`.
pub fn cnot_perm(target: Register) -> Permutation {
    let t = target.bit();
    let c = target.other().bit();
    Permutation::from_images((0..4).map(|s| s ^ ((s >> c & 1) << t)).collect())
        .expect("xor is a bijection")
}

/// `N^(reg)` conditioned on `u_i`.
pub fn gate_n(reg: Register, i: usize) -> Instruction {
    Instruction::controlled(Gate::ClassicalPerm(not_perm(reg)), i)
}

/// `C^(target)` conditioned on `u_i`.
pub fn gate_c(target: Register, i: usize) -> Instruction {
    Instruction::controlled(Gate::ClassicalPerm(cnot_perm(target)), i)
}

fn and_sequence(controls: &[usize], target: Register, out: &mut Vec<Instruction>) {
    let (&last, init) = controls.split_last().expect("non-empty controls");
    if init.is_empty() {
        out.push(gate_n(target, last));
        return;
    }
    and_sequence(init, target.other(), out);
    out.push(gate_c(target, last));
    and_sequence(init, target.other(), out);
    out.push(gate_c(target, last));
}

/// Two-bit program XOR-ing `AND(controls)` into `target` and leaving the
/// other register unchanged, from any start state.
pub fn and_into(controls: &[usize], target: Register, j: usize) -> Result<RomProgram> {
    validate_controls(controls, j)?;
    let mut instructions = Vec::new();
    and_sequence(controls, target, &mut instructions);
    RomProgram::new(RomSpace::classical(j, 2)?, instructions)
}

/// The nested conjunction of `u_1 .. u_m` in its natural register: the
/// first register for odd `m`, the second for even `m`.
pub fn s_sequence(m: usize, j: usize) -> Result<(RomProgram, Register)> {
    if m == 0 || m > j {
        return Err(Error::InvalidControls(format!("need 1 <= m <= {j}, got {m}")));
    }
    let target = if m % 2 == 1 { Register::First } else { Register::Second };
    let controls: Vec<usize> = (1..=m).collect();
    Ok((and_into(&controls, target, j)?, target))
}

/// Two-bit program computing `(f1, f2)` into `(alpha, beta)`.
pub fn compile_pair(f1: &Anf, f2: &Anf, j: usize) -> Result<RomProgram> {
    for f in [f1, f2] {
        if f.num_vars() != j {
            return Err(Error::ArityMismatch {
                left: f.num_vars(),
                right: j,
            });
        }
    }
    let mut instructions = Vec::new();
    for (f, reg) in [(f1, Register::First), (f2, Register::Second)] {
        for mask in f.monomials() {
            if mask == 0 {
                instructions.push(Instruction::free(Gate::ClassicalPerm(not_perm(reg))));
            } else {
                and_sequence(&mask_variables(mask), reg, &mut instructions);
            }
        }
    }
    RomProgram::new(RomSpace::classical(j, 2)?, instructions)
}

/// Every function a one-bit machine can leave in its bit, starting from 0,
/// when each NOT may be conditioned on a single ROM bit.
pub fn one_bit_reachable(j: usize) -> Result<BTreeSet<TruthTable>> {
    one_bit_reachable_with_controls(j, 1)
}

/// As [`one_bit_reachable`], but each NOT may be conditioned on the
/// conjunction of up to `max_controls` ROM bits.
pub fn one_bit_reachable_with_controls(j: usize, max_controls: usize) -> Result<BTreeSet<TruthTable>> {
    if j == 0 || j > 4 {
        return Err(Error::TooLarge(format!(
            "closure enumeration supports 1..=4 ROM bits, got {j}"
        )));
    }
    let n = 1usize << j;
    // tables packed as bit u = f(u)
    let code_of_mask = |mask: u64| -> u64 {
        (0..n as u64).filter(|u| mask & !u == 0).fold(0, |acc, u| acc | 1 << u)
    };
    let mut moves: Vec<u64> = vec![code_of_mask(0)];
    moves.extend(
        (1u64..1 << j)
            .filter(|m| m.count_ones() as usize <= max_controls)
            .map(code_of_mask),
    );
    let mut seen = BTreeSet::from([0u64]);
    let mut queue = VecDeque::from([0u64]);
    while let Some(f) = queue.pop_front() {
        for &g in &moves {
            if seen.insert(f ^ g) {
                queue.push_back(f ^ g);
            }
        }
    }
    seen.into_iter()
        .map(|code| TruthTable::from_fn(j, |u| code >> u & 1 == 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::truth_table_of;
    use crate::sim::classical::{evaluate, extract_function, permutation_of};

    fn conj(u: u64, m: usize) -> usize {
        let mask = (1u64 << m) - 1;
        (u & mask == mask) as usize
    }

    #[test]
    fn gate_tables() {
        assert_eq!(not_perm(Register::First).images(), &[1, 0, 3, 2]);
        assert_eq!(not_perm(Register::Second).images(), &[2, 3, 0, 1]);
        assert_eq!(cnot_perm(Register::First).images(), &[0, 1, 3, 2]);
        assert_eq!(cnot_perm(Register::Second).images(), &[0, 3, 2, 1]);
        let space = RomSpace::classical(1, 2).unwrap();
        for ins in [
            gate_n(Register::First, 1),
            gate_n(Register::Second, 1),
            gate_c(Register::First, 1),
            gate_c(Register::Second, 1),
        ] {
            let p = RomProgram::new(space, vec![ins]).unwrap();
            assert!(permutation_of(&p, 0).unwrap().is_identity());
        }
    }

    #[test]
    fn register_indices() {
        assert_eq!(Register::try_from(2).unwrap(), Register::Second);
        assert!(matches!(Register::try_from(3), Err(Error::BadRegister(3))));
    }

    #[test]
    fn base_and_second_sequences() {
        let (p, reg) = s_sequence(1, 2).unwrap();
        assert_eq!(reg, Register::First);
        assert_eq!(p.instructions(), &[gate_n(Register::First, 1)]);

        let (p, reg) = s_sequence(2, 2).unwrap();
        assert_eq!(reg, Register::Second);
        assert_eq!(
            p.instructions(),
            &[
                gate_n(Register::First, 1),
                gate_c(Register::Second, 2),
                gate_n(Register::First, 1),
                gate_c(Register::Second, 2),
            ]
        );
        assert_eq!(p.rom_call_count(), 4);
        assert!(s_sequence(3, 2).is_err());
        assert!(s_sequence(0, 2).is_err());
    }

    #[test]
    fn third_level_lands_in_first_register() {
        let (p, reg) = s_sequence(3, 3).unwrap();
        assert_eq!(reg, Register::First);
        for u in 0..8 {
            for start in 0..4 {
                assert_eq!(evaluate(&p, u, start).unwrap(), start ^ conj(u, 3));
            }
        }
    }

    #[test]
    fn steering_into_either_register() {
        for target in [Register::First, Register::Second] {
            let p = and_into(&[3, 1], target, 3).unwrap();
            for u in 0..8u64 {
                let bit = ((u & 0b101) == 0b101) as usize;
                for start in 0..4 {
                    assert_eq!(evaluate(&p, u, start).unwrap(), start ^ (bit << (target.index() - 1)));
                }
            }
        }
    }

    #[test]
    fn doubled_sequence_is_identity() {
        for m in 1..=5 {
            let (p, _) = s_sequence(m, 5).unwrap();
            let twice = p.concat(&p).unwrap();
            for u in 0..32 {
                assert!(permutation_of(&twice, u).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn pair_compiler_reproduces_two_output_example() {
        let f1 = Anf::from_index_lists(3, &[&[1], &[3]]).unwrap();
        let f2 = Anf::from_index_lists(3, &[&[1], &[1, 2]]).unwrap();
        let p = compile_pair(&f1, &f2, 3).unwrap();
        let f = extract_function(&p).unwrap();
        assert_eq!(f.component(0), &truth_table_of(&f1).unwrap());
        assert_eq!(f.component(1), &truth_table_of(&f2).unwrap());
        let empty = compile_pair(&Anf::zero(3), &Anf::zero(3), 3).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn pair_with_constants() {
        let f1 = Anf::from_index_lists(2, &[&[]]).unwrap();
        let f2 = Anf::from_index_lists(2, &[&[], &[1, 2]]).unwrap();
        let p = compile_pair(&f1, &f2, 2).unwrap();
        let f = extract_function(&p).unwrap();
        assert_eq!(f.component(0), &truth_table_of(&f1).unwrap());
        assert_eq!(f.component(1), &truth_table_of(&f2).unwrap());
    }

    #[test]
    fn one_bit_closure_is_affine() {
        let r1 = one_bit_reachable(1).unwrap();
        assert_eq!(r1.len(), 4);
        for j in 2..=4 {
            let reach = one_bit_reachable(j).unwrap();
            assert_eq!(reach.len(), 1 << (j + 1));
            assert!(!reach.contains(&TruthTable::and_all(j)));
        }
        assert!(one_bit_reachable(5).is_err());
    }

    #[test]
    fn wider_controls_reach_only_bounded_degree() {
        let reach = one_bit_reachable_with_controls(3, 2).unwrap();
        // constant, 3 linear and 3 quadratic monomials
        assert_eq!(reach.len(), 1 << 7);
        assert!(reach.contains(&TruthTable::from_fn(3, |u| u & 3 == 3).unwrap()));
        assert!(!reach.contains(&TruthTable::and_all(3)));
        assert_eq!(one_bit_reachable_with_controls(3, 3).unwrap().len(), 256);
    }
}
