//! Exhaustive search for minimum-ROM-call two-bit classical programs.
//!
//! The search state is the vector of current register states, one entry per
//! ROM assignment, starting from all zeros. A controlled step on `u_i` with
//! permutation `Q` rewrites the entries whose assignment has `u_i = 1`.
//!
//! Uncontrolled permutations are free and can be inserted anywhere, so two
//! vectors that differ by a global relabeling of the four register states
//! are interchangeable. Vectors are therefore stored in a canonical form
//! (states renamed in order of first appearance). When the target is
//! invariant under permuting the ROM bits, vectors are additionally reduced
//! modulo that symmetry.
//!
//! Steps are invertible, so the search runs breadth-first from both ends
//! and stops at the first layer where the two balls meet; the meeting depth
//! is the minimum number of ROM calls.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ir::{Gate, Instruction, RomProgram, RomSpace};
use crate::permutation::Permutation;

const MAX_SEARCH_ROM_BITS: usize = 4;
const NUM_STATES: usize = 4;

/// Required final register state for every ROM assignment, from start 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchTarget {
    num_rom_bits: usize,
    targets: Vec<u8>,
}

impl SearchTarget {
    pub fn new(num_rom_bits: usize, targets: Vec<u8>) -> Result<Self> {
        if num_rom_bits == 0 || num_rom_bits > MAX_SEARCH_ROM_BITS {
            return Err(Error::TooLarge(format!(
                "search supports 1..={MAX_SEARCH_ROM_BITS} ROM bits, got {num_rom_bits}"
            )));
        }
        if targets.len() != 1 << num_rom_bits {
            return Err(Error::InvalidSpace(format!(
                "expected {} target states, got {}",
                1usize << num_rom_bits,
                targets.len()
            )));
        }
        if let Some(bad) = targets.iter().find(|&&t| t as usize >= NUM_STATES) {
            return Err(Error::StateOutOfRange {
                state: *bad as usize,
                num_states: NUM_STATES,
            });
        }
        Ok(SearchTarget {
            num_rom_bits,
            targets,
        })
    }

    /// `|0>|0> -> |u_1 ... u_j>|0>`.
    pub fn conjunction(num_rom_bits: usize) -> Result<Self> {
        let all = (1usize << num_rom_bits) - 1;
        let targets = (0..=all).map(|u| (u == all) as u8).collect();
        Self::new(num_rom_bits, targets)
    }

    pub fn num_rom_bits(&self) -> usize {
        self.num_rom_bits
    }

    pub fn targets(&self) -> &[u8] {
        &self.targets
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub minimal_rom_calls: usize,
    pub witness: RomProgram,
    pub nodes_expanded: u64,
}

/// `R(1) = 1`, `R(j) = R(j - 1) + 2^floor(j/2)`.
pub fn recurrence_r(j: u32) -> u64 {
    assert!((1..=120).contains(&j), "recurrence defined for 1 <= j <= 120");
    (2..=j).fold(1u64, |r, k| r + (1u64 << (k / 2)))
}

type Code = u32;

struct Space {
    num_assignments: usize,
    /// Assignment relabelings induced by ROM-bit permutations.
    symmetries: Vec<Vec<usize>>,
    /// `(rom index, images)` in lexicographic order.
    moves: Vec<(usize, [u8; NUM_STATES])>,
}

fn decode(code: Code, len: usize) -> [u8; 16] {
    let mut v = [0u8; 16];
    for (u, slot) in v.iter_mut().enumerate().take(len) {
        *slot = (code >> (2 * u) & 3) as u8;
    }
    v
}

#[cfg(test)]
fn encode(v: &[u8]) -> Code {
    v.iter().enumerate().fold(0, |acc, (u, &s)| acc | (s as Code) << (2 * u))
}

impl Space {
    fn new(j: usize, symmetric: bool) -> Self {
        let num_assignments = 1 << j;
        let symmetries = if symmetric {
            Permutation::all(j)
                .iter()
                .map(|pi| {
                    (0..num_assignments)
                        .map(|u| {
                            (0..j).fold(0, |acc, b| acc | ((u >> pi.apply(b)) & 1) << b)
                        })
                        .collect()
                })
                .collect()
        } else {
            vec![(0..num_assignments).collect()]
        };
        let mut moves = Vec::new();
        for rom in 1..=j {
            for q in Permutation::all(NUM_STATES).iter().filter(|q| !q.is_identity()) {
                let mut images = [0u8; NUM_STATES];
                for (s, img) in images.iter_mut().enumerate() {
                    *img = q.apply(s) as u8;
                }
                moves.push((rom, images));
            }
        }
        Space {
            num_assignments,
            symmetries,
            moves,
        }
    }

    fn canonical(&self, v: &[u8; 16]) -> Code {
        let mut best = Code::MAX;
        for sym in &self.symmetries {
            let mut rename = [u8::MAX; NUM_STATES];
            let mut next = 0u8;
            let mut code: Code = 0;
            for (u, &src) in sym.iter().enumerate() {
                let s = v[src] as usize;
                if rename[s] == u8::MAX {
                    rename[s] = next;
                    next += 1;
                }
                code |= (rename[s] as Code) << (2 * u);
            }
            best = best.min(code);
        }
        best
    }

    fn apply(&self, v: &[u8; 16], rom: usize, q: &[u8; NUM_STATES]) -> [u8; 16] {
        let mut w = *v;
        for (u, slot) in w.iter_mut().enumerate().take(self.num_assignments) {
            if u >> (rom - 1) & 1 == 1 {
                *slot = q[*slot as usize];
            }
        }
        w
    }
}

fn is_rom_symmetric(target: &SearchTarget) -> bool {
    let space = Space::new(target.num_rom_bits, true);
    space.symmetries.iter().all(|sym| {
        sym.iter()
            .enumerate()
            .all(|(u, &src)| target.targets[u] == target.targets[src])
    })
}

/// One side of the bidirectional search: canonical vector -> parent.
struct Ball {
    parent: HashMap<Code, Code>,
    frontier: Vec<Code>,
    radius: usize,
}

impl Ball {
    fn new(root: Code) -> Self {
        Ball {
            parent: HashMap::from([(root, root)]),
            frontier: vec![root],
            radius: 0,
        }
    }

    /// Root-to-`node` path.
    fn path_to(&self, node: Code) -> Vec<Code> {
        let mut path = vec![node];
        let mut cur = node;
        while self.parent[&cur] != cur {
            cur = self.parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// A program with the fewest controlled steps driving `|0>|0>` to the
/// target state on every assignment. Ties are broken deterministically by
/// expansion order.
pub fn minimal_program(target: &SearchTarget, max_depth: usize) -> Result<SearchResult> {
    let j = target.num_rom_bits;
    let space = Space::new(j, is_rom_symmetric(target));
    let len = space.num_assignments;
    let start = space.canonical(&[0u8; 16]);
    let mut goal_vec = [0u8; 16];
    goal_vec[..len].copy_from_slice(&target.targets);
    let goal = space.canonical(&goal_vec);

    let mut fwd = Ball::new(start);
    let mut bwd = Ball::new(goal);
    let mut nodes_expanded = 0u64;

    let meet = if start == goal {
        start
    } else {
        loop {
            if fwd.radius + bwd.radius >= max_depth {
                return Err(Error::NotFoundWithinDepth(max_depth));
            }
            let forward = fwd.frontier.len() <= bwd.frontier.len();
            let (grow, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
            let mut next = Vec::new();
            let mut found = None;
            for &node in &grow.frontier {
                nodes_expanded += 1;
                let v = decode(node, len);
                for (rom, q) in &space.moves {
                    let child = space.canonical(&space.apply(&v, *rom, q));
                    if grow.parent.contains_key(&child) {
                        continue;
                    }
                    grow.parent.insert(child, node);
                    next.push(child);
                    if found.is_none() && other.parent.contains_key(&child) {
                        found = Some(child);
                    }
                }
            }
            grow.frontier = next;
            grow.radius += 1;
            if let Some(m) = found {
                break m;
            }
            if grow.frontier.is_empty() {
                return Err(Error::NotFoundWithinDepth(max_depth));
            }
        }
    };

    let mut path = fwd.path_to(meet);
    let mut tail = bwd.path_to(meet);
    tail.pop();
    path.extend(tail.into_iter().rev());

    let witness = realize(&space, &path, target)?;
    Ok(SearchResult {
        minimal_rom_calls: path.len() - 1,
        witness,
        nodes_expanded,
    })
}

/// Replays a canonical path with concrete steps and appends the free
/// relabeling that lands exactly on the target.
fn realize(space: &Space, path: &[Code], target: &SearchTarget) -> Result<RomProgram> {
    let j = target.num_rom_bits;
    let len = space.num_assignments;
    let mut actual = [0u8; 16];
    let mut instructions = Vec::new();
    for &next in &path[1..] {
        let (rom, q, w) = space
            .moves
            .iter()
            .find_map(|(rom, q)| {
                let w = space.apply(&actual, *rom, q);
                (space.canonical(&w) == next).then_some((*rom, q, w))
            })
            .expect("canonical neighbours are reachable from every representative");
        let perm = Permutation::from_images(q.iter().map(|&s| s as usize).collect())?;
        instructions.push(Instruction::controlled(Gate::ClassicalPerm(perm), rom));
        actual = w;
    }

    let mut relabel = [usize::MAX; NUM_STATES];
    for u in 0..len {
        let (from, to) = (actual[u] as usize, target.targets[u] as usize);
        debug_assert!(relabel[from] == usize::MAX || relabel[from] == to);
        relabel[from] = to;
    }
    let used = relabel;
    let mut unused = (0..NUM_STATES).filter(|s| !used.contains(s));
    for slot in relabel.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = unused.next().expect("a partial injection extends to a bijection");
    }
    let finish = Permutation::from_images(relabel.to_vec())?;
    if !finish.is_identity() {
        instructions.push(Instruction::free(Gate::ClassicalPerm(finish)));
    }
    RomProgram::new(RomSpace::classical(j, 2)?, instructions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::TruthTable;
    use crate::sim::classical::{evaluate, extract_function};

    #[test]
    fn recurrence_values() {
        assert_eq!(recurrence_r(1), 1);
        assert_eq!(recurrence_r(2), 3);
        assert_eq!(recurrence_r(3), 5);
        assert_eq!(recurrence_r(4), 9);
        assert_eq!(recurrence_r(5), 13);
    }

    #[test]
    fn target_validation() {
        assert!(SearchTarget::new(5, vec![0; 32]).is_err());
        assert!(SearchTarget::new(1, vec![0; 3]).is_err());
        assert!(SearchTarget::new(1, vec![0, 4]).is_err());
        assert_eq!(SearchTarget::conjunction(2).unwrap().targets(), &[0, 0, 0, 1]);
    }

    #[test]
    fn canonical_forms() {
        let space = Space::new(2, false);
        let a = decode(encode(&[2, 2, 3, 0]), 4);
        let b = decode(encode(&[0, 0, 1, 2]), 4);
        assert_eq!(space.canonical(&a), space.canonical(&b));
        let sym = Space::new(2, true);
        let c = decode(encode(&[0, 1, 0, 0]), 4);
        let d = decode(encode(&[0, 0, 1, 0]), 4);
        assert_eq!(sym.canonical(&c), sym.canonical(&d));
        assert_ne!(space.canonical(&c), space.canonical(&d));
    }

    #[test]
    fn small_minima_match_recurrence() {
        for j in 1..=3 {
            let target = SearchTarget::conjunction(j).unwrap();
            let result = minimal_program(&target, 10).unwrap();
            assert_eq!(result.minimal_rom_calls as u64, recurrence_r(j as u32), "j={j}");
            assert_eq!(result.witness.rom_call_count(), result.minimal_rom_calls);
            let f = extract_function(&result.witness).unwrap();
            assert_eq!(f.component(0), &TruthTable::and_all(j));
            assert_eq!(f.component(1), &TruthTable::zero(j));
        }
    }

    #[test]
    fn depth_limit_is_reported() {
        let target = SearchTarget::conjunction(3).unwrap();
        assert!(matches!(
            minimal_program(&target, 4),
            Err(Error::NotFoundWithinDepth(4))
        ));
    }

    #[test]
    fn asymmetric_targets() {
        // |0>|0> -> |0>|u_2> needs one call; u_1 AND NOT u_2 needs three
        let t = SearchTarget::new(2, vec![0, 0, 2, 2]).unwrap();
        let r = minimal_program(&t, 5).unwrap();
        assert_eq!(r.minimal_rom_calls, 1);
        for u in 0..4 {
            assert_eq!(evaluate(&r.witness, u, 0).unwrap(), t.targets()[u as usize] as usize);
        }
        let t = SearchTarget::new(2, vec![0, 1, 0, 0]).unwrap();
        let r = minimal_program(&t, 5).unwrap();
        assert_eq!(r.minimal_rom_calls, 3);
        for u in 0..4 {
            assert_eq!(evaluate(&r.witness, u, 0).unwrap(), t.targets()[u as usize] as usize);
        }
    }

    #[test]
    fn constant_targets_need_no_calls() {
        let t = SearchTarget::new(2, vec![3; 4]).unwrap();
        let r = minimal_program(&t, 0).unwrap();
        assert_eq!(r.minimal_rom_calls, 0);
        assert_eq!(r.witness.gate_count(), 1);
        assert_eq!(evaluate(&r.witness, 2, 0).unwrap(), 3);
    }

    #[test]
    fn search_is_deterministic() {
        let t = SearchTarget::conjunction(3).unwrap();
        let a = minimal_program(&t, 10).unwrap();
        let b = minimal_program(&t, 10).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_expanded, b.nodes_expanded);
    }
}
