//! One-qubit compilers.
//!
//! Both AND constructions rest on one gadget. For a rotation `A` and the
//! other axis `B`, the operator product `A^a_S B_T A^-a_S B_T` equals a phase
//! times `A^{2a}` when every control in `S` and `T` is set, and a phase times
//! the identity otherwise. Phases per ROM assignment are scalars, so they
//! commute out of every enclosing product and never affect the outcome.
//!
//! - [`and_naive`] peels one control per level: `S` is a single control with
//!   `a = -1/2` and `T` is the recursively built block for the rest.
//!   Costs `3 * 2^(m-1) - 2` ROM calls.
//! - [`and_fast`] splits the controls in halves at every level and halves the
//!   exponent on the `A` side, so `2^k` controls cost exactly `4^k` calls.
//!
//! Gadgets are assembled as operator products (leftmost applied last) and
//! reversed into time order at the end.

use crate::boolean::{mask_variables, Anf};
use crate::error::{Error, Result};
use crate::ir::{Axis, DyadicExponent, Gate, Instruction, RomProgram, RomSpace};
use crate::synth::validate_controls;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum AndStrategy {
    Naive,
    #[default]
    Fast,
}

fn half() -> DyadicExponent {
    DyadicExponent::ONE.half().expect("1/2 is representable")
}

fn naive_product(axis: Axis, controls: &[usize], out: &mut Vec<Instruction>) {
    let (&first, rest) = controls.split_first().expect("non-empty controls");
    if rest.is_empty() {
        out.push(Instruction::controlled(Gate::axis(axis, DyadicExponent::ONE), first));
        return;
    }
    out.push(Instruction::controlled(Gate::axis(axis, -half()), first));
    naive_product(axis.other(), rest, out);
    out.push(Instruction::controlled(Gate::axis(axis, half()), first));
    naive_product(axis.other(), rest, out);
}

/// `|f> -> |f ⊕ AND(controls)>` by peeling one control per recursion level.
pub fn and_naive(controls: &[usize], j: usize) -> Result<RomProgram> {
    validate_controls(controls, j)?;
    let mut ops = Vec::new();
    naive_product(Axis::X, controls, &mut ops);
    ops.reverse();
    RomProgram::new(RomSpace::quantum(j)?, ops)
}

/// Appends the operator product for `axis^exponent` conditioned on all of
/// `slots`. A `None` slot is an always-set padding bit.
fn fast_product(axis: Axis, exponent: DyadicExponent, slots: &[Option<usize>], out: &mut Vec<Instruction>) {
    if let [slot] = slots {
        out.push(Instruction {
            gate: Gate::axis(axis, exponent),
            control: *slot,
        });
        return;
    }
    let (left, right) = slots.split_at(slots.len() / 2);
    let halved = exponent.half().expect("tree depth is bounded by the ROM width");
    // Sign choice follows the classic X^{-1/2} Z X^{1/2} Z skeleton; the
    // fractional X blocks keep their sign and every other block flips it.
    // Flipped blocks always come in matched pairs, so the result is the same
    // up to phase.
    let lead = if axis == Axis::X && exponent.numerator().unsigned_abs() < 1 << exponent.log2_denominator() {
        halved
    } else {
        -halved
    };
    fast_product(axis, lead, left, out);
    fast_product(axis.other(), DyadicExponent::ONE, right, out);
    fast_product(axis, -lead, left, out);
    fast_product(axis.other(), DyadicExponent::ONE, right, out);
}

/// `|f> -> |f ⊕ AND(controls)>` with `4^ceil(log2 m)` gates. Control lists
/// that are not a power of two are padded with uncontrolled positions.
pub fn and_fast(controls: &[usize], j: usize) -> Result<RomProgram> {
    validate_controls(controls, j)?;
    let width = controls.len().next_power_of_two();
    let slots: Vec<Option<usize>> = controls
        .iter()
        .copied()
        .map(Some)
        .chain(std::iter::repeat(None))
        .take(width)
        .collect();
    let mut ops = Vec::with_capacity(width * width);
    fast_product(Axis::X, DyadicExponent::ONE, &slots, &mut ops);
    ops.reverse();
    RomProgram::new(RomSpace::quantum(j)?, ops)
}

/// Compiles a function given in normal form: one AND block per monomial, an
/// uncontrolled `X` for the constant term.
pub fn compile_function(a: &Anf, j: usize, strategy: AndStrategy) -> Result<RomProgram> {
    if a.num_vars() != j {
        return Err(Error::ArityMismatch {
            left: a.num_vars(),
            right: j,
        });
    }
    let space = RomSpace::quantum(j)?;
    let mut instructions = Vec::new();
    for mask in a.monomials() {
        if mask == 0 {
            instructions.push(Instruction::free(Gate::axis(Axis::X, DyadicExponent::ONE)));
            continue;
        }
        let controls = mask_variables(mask);
        let block = match strategy {
            AndStrategy::Naive => and_naive(&controls, j)?,
            AndStrategy::Fast => and_fast(&controls, j)?,
        };
        instructions.extend_from_slice(block.instructions());
    }
    RomProgram::new(space, instructions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{truth_table_of, TruthTable};
    use crate::sim::quantum::{extract_boolean, unitary_of, Unitary2};
    use num_complex::Complex64;

    fn conj_table(j: usize, controls: &[usize]) -> TruthTable {
        TruthTable::from_fn(j, |u| controls.iter().all(|&c| u >> (c - 1) & 1 == 1)).unwrap()
    }

    fn t(num: i64, k: u32) -> DyadicExponent {
        DyadicExponent::new(num, k).unwrap()
    }

    #[test]
    fn single_control_is_one_gate() {
        for p in [and_naive(&[2], 3).unwrap(), and_fast(&[2], 3).unwrap()] {
            assert_eq!(p.rom_call_count(), 1);
            assert_eq!(
                p.instructions()[0],
                Instruction::controlled(Gate::axis(Axis::X, DyadicExponent::ONE), 2)
            );
        }
    }

    #[test]
    fn two_controls_match_the_textbook_sequence() {
        // operator product X^{-1/2}_1 Z_2 X^{1/2}_1 Z_2, listed in time order
        let expected = vec![
            Instruction::controlled(Gate::axis(Axis::Z, DyadicExponent::ONE), 2),
            Instruction::controlled(Gate::axis(Axis::X, t(1, 1)), 1),
            Instruction::controlled(Gate::axis(Axis::Z, DyadicExponent::ONE), 2),
            Instruction::controlled(Gate::axis(Axis::X, t(-1, 1)), 1),
        ];
        assert_eq!(and_naive(&[1, 2], 2).unwrap().instructions(), expected.as_slice());
        assert_eq!(and_fast(&[1, 2], 2).unwrap().instructions(), expected.as_slice());
        let p = and_fast(&[1, 2], 2).unwrap();
        let ix = Unitary2::pauli_x().scale(Complex64::new(0.0, 1.0));
        assert!(unitary_of(&p, 0b11).unwrap().max_deviation(&ix) <= 1e-12);
        for u in [0b00, 0b01, 0b10] {
            assert!(unitary_of(&p, u).unwrap().max_deviation(&Unitary2::IDENTITY) <= 1e-12);
        }
    }

    #[test]
    fn four_controls_match_the_worked_replacement() {
        // operator product, leftmost applied last
        let x = |e, c| Instruction::controlled(Gate::axis(Axis::X, e), c);
        let z = |e, c| Instruction::controlled(Gate::axis(Axis::Z, e), c);
        let one = DyadicExponent::ONE;
        let mut product = vec![
            x(t(-1, 2), 1), z(one, 2), x(t(1, 2), 1), z(one, 2),
            z(t(-1, 1), 3), x(one, 4), z(t(1, 1), 3), x(one, 4),
            x(t(1, 2), 1), z(one, 2), x(t(-1, 2), 1), z(one, 2),
            z(t(-1, 1), 3), x(one, 4), z(t(1, 1), 3), x(one, 4),
        ];
        product.reverse();
        assert_eq!(and_fast(&[1, 2, 3, 4], 4).unwrap().instructions(), product.as_slice());
    }

    #[test]
    fn three_controls_naive_costs_ten() {
        let p = and_naive(&[1, 2, 3], 3).unwrap();
        assert_eq!(p.rom_call_count(), 10);
        assert_eq!(extract_boolean(&p).unwrap(), TruthTable::and_all(3));
    }

    #[test]
    fn naive_and_fast_agree() {
        for m in 1..=6 {
            let controls: Vec<usize> = (1..=m).collect();
            let naive = and_naive(&controls, m).unwrap();
            let fast = and_fast(&controls, m).unwrap();
            assert_eq!(naive.rom_call_count(), 3 * (1 << (m - 1)) - 2);
            let width = m.next_power_of_two();
            assert_eq!(fast.gate_count(), width * width);
            assert_eq!(extract_boolean(&naive).unwrap(), TruthTable::and_all(m));
            assert_eq!(extract_boolean(&fast).unwrap(), TruthTable::and_all(m));
        }
    }

    #[test]
    fn padded_controls_count_only_real_calls() {
        let p = and_fast(&[1, 2, 3], 3).unwrap();
        assert_eq!(p.gate_count(), 16);
        assert!(p.rom_call_count() < 16);
        assert_eq!(extract_boolean(&p).unwrap(), TruthTable::and_all(3));
    }

    #[test]
    fn unordered_sparse_controls() {
        let p = and_fast(&[5, 2, 4], 5).unwrap();
        assert_eq!(extract_boolean(&p).unwrap(), conj_table(5, &[2, 4, 5]));
        let p = and_naive(&[5, 2, 4], 5).unwrap();
        assert_eq!(extract_boolean(&p).unwrap(), conj_table(5, &[2, 4, 5]));
    }

    #[test]
    fn rejects_bad_controls() {
        assert!(and_fast(&[], 2).is_err());
        assert!(and_fast(&[1, 1], 2).is_err());
        assert!(and_naive(&[3], 2).is_err());
        assert!(and_naive(&[0], 2).is_err());
    }

    #[test]
    fn compiles_normal_forms() {
        assert!(compile_function(&Anf::zero(2), 2, AndStrategy::Fast).unwrap().is_empty());
        let a = Anf::from_index_lists(2, &[&[1], &[1, 2]]).unwrap();
        for strategy in [AndStrategy::Naive, AndStrategy::Fast] {
            let p = compile_function(&a, 2, strategy).unwrap();
            assert_eq!(extract_boolean(&p).unwrap(), truth_table_of(&a).unwrap());
        }
        let with_constant = Anf::from_index_lists(3, &[&[], &[2, 3]]).unwrap();
        let p = compile_function(&with_constant, 3, AndStrategy::Fast).unwrap();
        assert_eq!(extract_boolean(&p).unwrap(), truth_table_of(&with_constant).unwrap());
        assert!(compile_function(&a, 3, AndStrategy::Fast).is_err());
    }

    #[test]
    fn monomial_order_does_not_matter() {
        let a = Anf::from_index_lists(3, &[&[1], &[2, 3], &[1, 2, 3]]).unwrap();
        let forward = compile_function(&a, 3, AndStrategy::Fast).unwrap();
        let mut reversed_blocks = Vec::new();
        for mask in a.monomials().collect::<Vec<_>>().into_iter().rev() {
            let block = and_fast(&mask_variables(mask), 3).unwrap();
            reversed_blocks.extend_from_slice(block.instructions());
        }
        let reversed = RomProgram::new(*forward.space(), reversed_blocks).unwrap();
        assert_eq!(extract_boolean(&forward).unwrap(), extract_boolean(&reversed).unwrap());
    }
}
