//! Width-5 permutation branching programs and the three-bit AND compiler.
//!
//! [`barrington`] turns a depth-`d` fan-in-2 circuit into a branching
//! program of length at most `4^d` whose product is the identity when the
//! circuit outputs 0 and a chosen 5-cycle `rho` when it outputs 1:
//!
//! - an input `u_i` is one step applying `rho` when `u_i = 1`;
//! - `NOT a` compiles `a` for `rho^-1` and post-composes the last step with
//!   `rho`;
//! - `a AND b` picks 5-cycles `s`, `t` whose commutator is `rho` and
//!   concatenates the programs for `(a, s)`, `(b, t)`, `(a, s^-1)`, `(b, t^-1)`;
//! - `a OR b` is `NOT (NOT a AND NOT b)`.
//!
//! The three-bit machine flips its first bit with the permutation
//! `(0 1)(2 3)(4 5)(6 7)`, which factors into four 5-cycles on its 8 states
//! ([`FLIP_CYCLES`], applied in the listed order). Each factor is realized by
//! one branching program over a balanced AND tree, acting only on the five
//! states of that cycle.

use std::sync::OnceLock;

use crate::boolean::{mask_variables, Anf};
use crate::error::{Error, Result};
use crate::ir::{Gate, Instruction, RomProgram, RomSpace};
use crate::permutation::Permutation;
use crate::synth::circuit::{BooleanCircuit, Node, NodeId};
use crate::synth::validate_controls;

/// The four 5-cycles whose time-ordered product is `(0 1)(2 3)(4 5)(6 7)`.
pub const FLIP_CYCLES: [[usize; 5]; 4] = [
    [0, 1, 2, 5, 4],
    [0, 4, 5, 3, 2],
    [4, 5, 6, 1, 0],
    [4, 0, 1, 7, 6],
];

const WIDTH: usize = 5;

/// One step: apply `perm0` if `u_rom = 0`, `perm1` if `u_rom = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchStep {
    pub rom: usize,
    pub perm0: Permutation,
    pub perm1: Permutation,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchingProgram {
    steps: Vec<BranchStep>,
}

impl BranchingProgram {
    pub fn steps(&self) -> &[BranchStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Time-ordered product of the selected permutations.
    pub fn evaluate(&self, u: u64) -> Permutation {
        self.steps
            .iter()
            .fold(Permutation::identity(WIDTH), |acc, step| {
                let p = if u >> (step.rom - 1) & 1 == 1 { &step.perm1 } else { &step.perm0 };
                acc.then(p)
            })
    }
}

/// `s, t, s^-1, t^-1` in time order.
fn commutator(s: &Permutation, t: &Permutation) -> Permutation {
    s.then(t).then(&s.inverse()).then(&t.inverse())
}

/// A fixed pair of 5-cycles whose commutator is a 5-cycle: the first is
/// `(0 1 2 3 4)`, the second the lexicographically first 5-cycle that works.
fn base_pair() -> &'static (Permutation, Permutation, Permutation) {
    static PAIR: OnceLock<(Permutation, Permutation, Permutation)> = OnceLock::new();
    PAIR.get_or_init(|| {
        let sigma = Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        Permutation::all(WIDTH)
            .into_iter()
            .filter(Permutation::is_full_cycle)
            .find_map(|tau| {
                let kappa = commutator(&sigma, &tau);
                kappa.is_full_cycle().then(|| (sigma.clone(), tau, kappa))
            })
            .expect("S5 contains 5-cycles with a 5-cycle commutator")
    })
}

/// 5-cycles `(s, t)` with commutator `rho`, conjugating the base pair by
/// the lexicographically first permutation that maps its commutator to `rho`.
fn split_cycle(rho: &Permutation) -> (Permutation, Permutation) {
    let (sigma, tau, kappa) = base_pair();
    let theta = Permutation::all(WIDTH)
        .into_iter()
        .find(|theta| kappa.conjugated_by(theta) == *rho)
        .expect("all 5-cycles are conjugate in S5");
    (sigma.conjugated_by(&theta), tau.conjugated_by(&theta))
}

fn post_compose(steps: &mut [BranchStep], rho: &Permutation) {
    let last = steps.last_mut().expect("programs for circuit nodes are non-empty");
    last.perm0 = last.perm0.then(rho);
    last.perm1 = last.perm1.then(rho);
}

fn compile_node(c: &BooleanCircuit, id: NodeId, rho: &Permutation) -> Vec<BranchStep> {
    match c.node(id) {
        Node::Input(i) => vec![BranchStep {
            rom: i,
            perm0: Permutation::identity(WIDTH),
            perm1: rho.clone(),
        }],
        Node::Not(a) => compile_negated(c, a, rho),
        Node::And(a, b) => compile_and(rho, |t| compile_node(c, a, t), |t| compile_node(c, b, t)),
        Node::Or(a, b) => {
            let inv = rho.inverse();
            let mut steps = compile_and(&inv, |t| compile_negated(c, a, t), |t| compile_negated(c, b, t));
            post_compose(&mut steps, rho);
            steps
        }
    }
}

/// Program yielding `rho` exactly when node `id` evaluates to 0.
fn compile_negated(c: &BooleanCircuit, id: NodeId, rho: &Permutation) -> Vec<BranchStep> {
    let mut steps = compile_node(c, id, &rho.inverse());
    post_compose(&mut steps, rho);
    steps
}

fn compile_and(
    rho: &Permutation,
    left: impl Fn(&Permutation) -> Vec<BranchStep>,
    right: impl Fn(&Permutation) -> Vec<BranchStep>,
) -> Vec<BranchStep> {
    let (s, t) = split_cycle(rho);
    let mut steps = left(&s);
    steps.extend(right(&t));
    steps.extend(left(&s.inverse()));
    steps.extend(right(&t.inverse()));
    steps
}

/// Width-5 branching program of length at most `4^depth` computing `c`:
/// identity when `c` is 0, `rho` when `c` is 1.
pub fn barrington(c: &BooleanCircuit, rho: &Permutation) -> Result<BranchingProgram> {
    if rho.len() != WIDTH || !rho.is_full_cycle() {
        return Err(Error::NotFiveCycle(rho.to_string()));
    }
    Ok(BranchingProgram {
        steps: compile_node(c, c.output(), rho),
    })
}

/// The [`FLIP_CYCLES`] as permutations of the 8 three-bit states.
pub fn flip_cycle_perms() -> Vec<Permutation> {
    FLIP_CYCLES
        .iter()
        .map(|c| Permutation::from_cycles(8, &[c]).expect("valid cycle"))
        .collect()
}

/// Appends a free permutation, merging it into a preceding free instruction
/// at or after index `floor`.
fn push_free(out: &mut Vec<Instruction>, perm: Permutation, floor: usize) {
    let mergeable = out.len() > floor;
    if let (
        true,
        Some(Instruction {
            gate: Gate::ClassicalPerm(prev),
            control: None,
        }),
    ) = (mergeable, out.last_mut())
    {
        *prev = prev.then(&perm);
        if prev.is_identity() {
            out.pop();
        }
    } else if !perm.is_identity() {
        out.push(Instruction::free(Gate::ClassicalPerm(perm)));
    }
}

fn lower_conjunction(controls: &[usize], out: &mut Vec<Instruction>) -> Result<()> {
    let circuit = BooleanCircuit::balanced_and(controls)?;
    let rho = Permutation::from_images(vec![1, 2, 3, 4, 0]).expect("valid 5-cycle");
    let bp = barrington(&circuit, &rho)?;
    for cycle in FLIP_CYCLES {
        let floor = out.len();
        // abstract state a is the 8-state label cycle[a], so rho becomes the cycle
        for step in bp.steps() {
            let p0 = step.perm0.embed(&cycle, 8);
            let p1 = step.perm1.embed(&cycle, 8);
            let delta = p0.inverse().then(&p1);
            push_free(out, p0, floor);
            if !delta.is_identity() {
                out.push(Instruction::controlled(Gate::ClassicalPerm(delta), step.rom));
            }
        }
    }
    Ok(())
}

/// Three-bit program XOR-ing `AND(controls)` into the first writable bit.
pub fn and_barrington_controls(controls: &[usize], j: usize) -> Result<RomProgram> {
    validate_controls(controls, j)?;
    let mut instructions = Vec::new();
    lower_conjunction(controls, &mut instructions)?;
    RomProgram::new(RomSpace::classical(j, 3)?, instructions)
}

/// `|f>|g>|h> -> |f ⊕ u_1...u_j>|g>|h>` on the three-bit machine.
pub fn and_barrington(j: usize) -> Result<RomProgram> {
    let controls: Vec<usize> = (1..=j).collect();
    and_barrington_controls(&controls, j)
}

/// Three-bit program computing `a` into the first writable bit, one
/// conjunction per monomial.
pub fn compile_function_barrington(a: &Anf, j: usize) -> Result<RomProgram> {
    if a.num_vars() != j {
        return Err(Error::ArityMismatch {
            left: a.num_vars(),
            right: j,
        });
    }
    let flip = flip_cycle_perms()
        .iter()
        .fold(Permutation::identity(8), |acc, p| acc.then(p));
    let mut instructions = Vec::new();
    for mask in a.monomials() {
        if mask == 0 {
            let floor = instructions.len();
            push_free(&mut instructions, flip.clone(), floor);
        } else {
            lower_conjunction(&mask_variables(mask), &mut instructions)?;
        }
    }
    RomProgram::new(RomSpace::classical(j, 3)?, instructions)
}
