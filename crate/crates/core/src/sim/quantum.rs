//! Exact semantics of one-qubit ROM programs.
//!
//! For each ROM assignment a program induces a 2x2 unitary. ROM bits are
//! classical, so a global phase per assignment carries no information and
//! outcome extraction is projective.

use std::ops::Mul;

use num_complex::Complex64;

use crate::boolean::TruthTable;
use crate::error::{Error, Result};
use crate::ir::{Axis, DyadicExponent, Gate, MachineKind, RomProgram};
use crate::sim::EAGER_SWEEP_LIMIT;

/// Probability a basis state must reach for the qubit to count as classical.
pub const OUTCOME_THRESHOLD: f64 = 1.0 - 1e-9;

/// Tolerance used when validating raw unitaries.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2x2 complex matrix, row-major `[u00, u01, u10, u11]`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Unitary2 {
    m: [Complex64; 4],
}

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2 {
        m: [ONE, ZERO, ZERO, ONE],
    };

    /// Validates unitarity to [`UNITARY_TOLERANCE`].
    pub fn new(entries: [Complex64; 4]) -> Result<Self> {
        let u = Unitary2 { m: entries };
        u.check_unitary()?;
        Ok(u)
    }

    #[cfg(test)]
    pub(crate) fn from_entries_unchecked(entries: [Complex64; 4]) -> Self {
        Unitary2 { m: entries }
    }

    pub fn pauli_x() -> Self {
        Unitary2 {
            m: [ZERO, ONE, ONE, ZERO],
        }
    }

    pub fn pauli_z() -> Self {
        Unitary2 {
            m: [ONE, ZERO, ZERO, -ONE],
        }
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Unitary2 { m: [h, h, h, -h] }
    }

    pub fn entries(&self) -> &[Complex64; 4] {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[2 * row + col]
    }

    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = self.m;
        Unitary2 {
            m: [a.conj(), c.conj(), b.conj(), d.conj()],
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Unitary2 {
            m: self.m.map(|z| z * s),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Unitary2) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise deviation of `U U^dagger` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        (*self * self.adjoint()).max_deviation(&Unitary2::IDENTITY)
    }

    pub(crate) fn check_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_residual();
        if deviation.is_nan() || deviation > UNITARY_TOLERANCE {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(())
    }

    /// Whether `self = e^{i phi} other` for some phase, to within `tol`.
    pub fn equal_up_to_phase(&self, other: &Unitary2, tol: f64) -> bool {
        // align on the largest entry of `other`
        let k = (0..4)
            .max_by(|&a, &b| other.m[a].norm().total_cmp(&other.m[b].norm()))
            .unwrap();
        if other.m[k].norm() < 1e-6 || self.m[k].norm() < 1e-6 {
            return false;
        }
        let phase = self.m[k] / other.m[k];
        let phase = phase / phase.norm();
        self.max_deviation(&other.scale(phase)) <= tol
    }

    pub fn apply(&self, state: [Complex64; 2]) -> [Complex64; 2] {
        let [a, b, c, d] = self.m;
        [a * state[0] + b * state[1], c * state[0] + d * state[1]]
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        Unitary2 {
            m: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
        }
    }
}

/// `e^{i pi t}`, exact for multiples of 1/2.
fn phase_of(t: &DyadicExponent) -> Complex64 {
    if t.log2_denominator() <= 1 {
        // t * 2 is an integer; quarter turns are exact
        let quarter = (t.numerator() << (1 - t.log2_denominator())).rem_euclid(4);
        return match quarter {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => -ONE,
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let angle = std::f64::consts::PI * t.value();
    Complex64::new(angle.cos(), angle.sin())
}

/// `Z^t = diag(1, e^{i pi t})` and `X^t = H Z^t H`.
pub fn gate_matrix(axis: Axis, t: DyadicExponent) -> Unitary2 {
    let e = phase_of(&t);
    match axis {
        Axis::Z => Unitary2 {
            m: [ONE, ZERO, ZERO, e],
        },
        Axis::X => {
            let p = (ONE + e) * 0.5;
            let q = (ONE - e) * 0.5;
            Unitary2 { m: [p, q, q, p] }
        }
    }
}

pub fn gate_unitary(gate: &Gate) -> Result<Unitary2> {
    match gate {
        Gate::QuantumAxis { axis, exponent } => Ok(gate_matrix(*axis, *exponent)),
        Gate::QuantumRaw(u) => Ok(*u),
        Gate::ClassicalPerm(_) => Err(Error::KindMismatch {
            expected: MachineKind::Quantum,
            found: MachineKind::Classical,
        }),
    }
}

/// A quantum program with its gate matrices evaluated once, ready for
/// sweeping many ROM assignments.
pub struct CompiledQuantum<'p> {
    program: &'p RomProgram,
    matrices: Vec<Unitary2>,
}

impl<'p> CompiledQuantum<'p> {
    pub fn new(program: &'p RomProgram) -> Result<Self> {
        if program.kind() != MachineKind::Quantum {
            return Err(Error::KindMismatch {
                expected: MachineKind::Quantum,
                found: program.kind(),
            });
        }
        let matrices = program
            .instructions()
            .iter()
            .map(|ins| gate_unitary(&ins.gate))
            .collect::<Result<_>>()?;
        Ok(CompiledQuantum { program, matrices })
    }

    pub fn unitary(&self, u: u64) -> Result<Unitary2> {
        self.program.space().check_assignment(u)?;
        let mut acc = Unitary2::IDENTITY;
        for (ins, m) in self.program.instructions().iter().zip(&self.matrices) {
            if ins.is_active(u) {
                acc = *m * acc;
            }
        }
        Ok(acc)
    }

    /// State reached from `|0>`.
    pub fn final_state(&self, u: u64) -> Result<[Complex64; 2]> {
        self.program.space().check_assignment(u)?;
        let mut state = [ONE, ZERO];
        for (ins, m) in self.program.instructions().iter().zip(&self.matrices) {
            if ins.is_active(u) {
                state = m.apply(state);
            }
        }
        Ok(state)
    }

    /// Computational-basis outcome for assignment `u`.
    pub fn outcome(&self, u: u64) -> Result<bool> {
        let [a0, a1] = self.final_state(u)?;
        if a1.norm_sqr() >= OUTCOME_THRESHOLD {
            Ok(true)
        } else if a0.norm_sqr() >= OUTCOME_THRESHOLD {
            Ok(false)
        } else {
            Err(Error::NonClassicalOutput { assignment: u })
        }
    }
}

/// Time-ordered product of the active gates; later gates multiply on the left.
pub fn unitary_of(p: &RomProgram, u: u64) -> Result<Unitary2> {
    CompiledQuantum::new(p)?.unitary(u)
}

pub fn outcome(p: &RomProgram, u: u64) -> Result<bool> {
    CompiledQuantum::new(p)?.outcome(u)
}

/// The boolean function written into the qubit, over all `2^j` assignments.
pub fn extract_boolean(p: &RomProgram) -> Result<TruthTable> {
    let j = p.space().num_rom_bits();
    if j > EAGER_SWEEP_LIMIT {
        return Err(Error::TooLarge(format!(
            "eager truth-table extraction supports at most {EAGER_SWEEP_LIMIT} ROM bits, got {j}"
        )));
    }
    let compiled = CompiledQuantum::new(p)?;
    let bits = (0..p.space().num_assignments())
        .map(|u| compiled.outcome(u))
        .collect::<Result<Vec<bool>>>()?;
    TruthTable::new(j, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Instruction, RomSpace};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn t(num: i64, k: u32) -> DyadicExponent {
        DyadicExponent::new(num, k).unwrap()
    }

    fn i_times(u: Unitary2) -> Unitary2 {
        u.scale(c(0.0, 1.0))
    }

    #[test]
    fn named_matrices() {
        assert_eq!(gate_matrix(Axis::Z, t(1, 0)).max_deviation(&Unitary2::pauli_z()), 0.0);
        assert_eq!(gate_matrix(Axis::X, t(1, 0)).max_deviation(&Unitary2::pauli_x()), 0.0);
        let x_half = Unitary2::from_entries_unchecked([c(1.0, 1.0), c(1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0)])
            .scale(c(0.5, 0.0));
        assert!(gate_matrix(Axis::X, t(1, 1)).max_deviation(&x_half) <= 1e-15);
        let x_minus_half =
            Unitary2::from_entries_unchecked([c(1.0, -1.0), c(1.0, 1.0), c(1.0, 1.0), c(1.0, -1.0)])
                .scale(c(0.5, 0.0));
        assert!(gate_matrix(Axis::X, t(-1, 1)).max_deviation(&x_minus_half) <= 1e-15);
        let z_half = Unitary2::from_entries_unchecked([ONE, ZERO, ZERO, c(0.0, 1.0)]);
        assert!(gate_matrix(Axis::Z, t(1, 1)).max_deviation(&z_half) <= 1e-15);
        let z_minus_half = Unitary2::from_entries_unchecked([ONE, ZERO, ZERO, c(0.0, -1.0)]);
        assert!(gate_matrix(Axis::Z, t(-1, 1)).max_deviation(&z_minus_half) <= 1e-15);
    }

    #[test]
    fn conjugated_pairs_give_scaled_paulis() {
        let x = |num, k| gate_matrix(Axis::X, t(num, k));
        let z = |num, k| gate_matrix(Axis::Z, t(num, k));
        // operator products, rightmost applied first
        let ix = x(-1, 1) * z(1, 0) * x(1, 1) * z(1, 0);
        assert!(ix.max_deviation(&i_times(Unitary2::pauli_x())) <= 1e-12);
        let iz = z(-1, 1) * x(1, 0) * z(1, 1) * x(1, 0);
        assert!(iz.max_deviation(&i_times(Unitary2::pauli_z())) <= 1e-12);
    }

    #[test]
    fn rejects_non_unitary_raw_matrix() {
        assert!(Unitary2::new([ONE, ONE, ZERO, ONE]).is_err());
        assert!(Unitary2::new(*Unitary2::hadamard().entries()).is_ok());
    }

    #[test]
    fn single_superposing_gate_is_not_classical() {
        let space = RomSpace::quantum(1).unwrap();
        let p = RomProgram::new(space, vec![Instruction::free(Gate::axis(Axis::X, t(1, 1)))]).unwrap();
        assert!(matches!(
            extract_boolean(&p),
            Err(Error::NonClassicalOutput { assignment: 0 })
        ));
        assert_eq!(
            extract_boolean(&RomProgram::empty(space)).unwrap(),
            TruthTable::zero(1)
        );
    }

    #[test]
    fn inactive_controls_contribute_identity() {
        let space = RomSpace::quantum(2).unwrap();
        let p = RomProgram::new(
            space,
            vec![Instruction::controlled(Gate::axis(Axis::X, DyadicExponent::ONE), 2)],
        )
        .unwrap();
        assert_eq!(unitary_of(&p, 0b01).unwrap(), Unitary2::IDENTITY);
        assert_eq!(unitary_of(&p, 0b10).unwrap(), Unitary2::pauli_x());
        assert!(unitary_of(&p, 0b100).is_err());
    }

    #[test]
    fn phase_equality() {
        let x = Unitary2::pauli_x();
        assert!(i_times(x).equal_up_to_phase(&x, 1e-12));
        assert!(!Unitary2::pauli_z().equal_up_to_phase(&x, 1e-12));
    }

    fn arb_exponent() -> impl Strategy<Value = DyadicExponent> {
        (0u32..12).prop_flat_map(|k| {
            let bound = 1i64 << k;
            (-bound..=bound).prop_map(move |p| DyadicExponent::new(p, k).unwrap())
        })
    }

    fn arb_axis() -> impl Strategy<Value = Axis> {
        prop_oneof![Just(Axis::X), Just(Axis::Z)]
    }

    proptest! {
        #[test]
        fn opposite_exponents_cancel(axis in arb_axis(), e in arb_exponent()) {
            let prod = gate_matrix(axis, e) * gate_matrix(axis, -e);
            prop_assert!(prod.max_deviation(&Unitary2::IDENTITY) <= 1e-12);
        }

        #[test]
        fn exponents_add_on_same_axis(axis in arb_axis(), a in arb_exponent(), b in arb_exponent()) {
            let sum = a.checked_add(&b).unwrap();
            let prod = gate_matrix(axis, a) * gate_matrix(axis, b);
            prop_assert!(prod.max_deviation(&gate_matrix(axis, sum)) <= 1e-12);
        }

        #[test]
        fn gate_matrices_are_unitary(axis in arb_axis(), e in arb_exponent()) {
            prop_assert!(gate_matrix(axis, e).unitarity_residual() <= 1e-12);
        }
    }
}
