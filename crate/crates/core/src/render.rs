//! Monospace circuit diagrams.
//!
//! The first row names the ROM bit each column is conditioned on (`.` for
//! an unconditioned gate). Below it, one horizontal wire per writable
//! (qu)bit, one column per instruction in time order:
//!
//! ```text
//! rom  u1  u2  u3  u1
//! b1  -X---*---X------
//! b2  -----X-------X--
//! ```
//!
//! Classical gates of the form "flip bit `t` when bits `c..` are all set"
//! draw as `X` on the target and `*` on each writable control. Other
//! permutations draw as `P<k>` on every wire with a legend underneath.

use crate::ir::{Gate, MachineKind, RomProgram};
use crate::permutation::Permutation;

/// `Some((target, control_mask))` when `perm` flips one bit conditioned on
/// a set of other bits.
fn as_controlled_not(perm: &Permutation, n: usize) -> Option<(usize, usize)> {
    (0..n).find_map(|t| {
        (0..1usize << n)
            .filter(|m| m >> t & 1 == 0)
            .find(|&m| (0..perm.len()).all(|s| perm.apply(s) == s ^ (((s & m == m) as usize) << t)))
            .map(|m| (t, m))
    })
}

fn exponent_label(axis: &str, text: String) -> String {
    if text == "1" {
        axis.to_string()
    } else {
        format!("{axis}^{text}")
    }
}

pub fn render(p: &RomProgram) -> String {
    let n = p.space().num_writable();
    let wire_prefix = match p.kind() {
        MachineKind::Classical => "b",
        MachineKind::Quantum => "q",
    };
    let mut legend: Vec<Permutation> = Vec::new();
    let mut columns: Vec<(String, Vec<String>)> = Vec::new();
    for ins in p.instructions() {
        let header = ins.control.map_or_else(|| ".".to_string(), |i| format!("u{i}"));
        let mut cells = vec![String::new(); n];
        match &ins.gate {
            Gate::QuantumAxis { axis, exponent } => {
                cells[0] = exponent_label(&axis.to_string(), exponent.to_string());
            }
            Gate::QuantumRaw(_) => cells[0] = "U".into(),
            Gate::ClassicalPerm(perm) if perm.is_identity() => {
                cells.iter_mut().for_each(|c| *c = "I".into());
            }
            Gate::ClassicalPerm(perm) => match as_controlled_not(perm, n) {
                Some((t, mask)) => {
                    for (b, cell) in cells.iter_mut().enumerate() {
                        if b == t {
                            *cell = "X".into();
                        } else if mask >> b & 1 == 1 {
                            *cell = "*".into();
                        }
                    }
                }
                None => {
                    let k = match legend.iter().position(|q| q == perm) {
                        Some(k) => k,
                        None => {
                            legend.push(perm.clone());
                            legend.len() - 1
                        }
                    };
                    cells.iter_mut().for_each(|c| *c = format!("P{}", k + 1));
                }
            },
        }
        columns.push((header, cells));
    }

    let label_width = format!("{wire_prefix}{n}").len().max(3) + 1;
    let mut out = format!("{:<label_width$}", "rom");
    let mut wires: Vec<String> = (1..=n)
        .map(|b| format!("{:<label_width$}", format!("{wire_prefix}{b}")))
        .collect();
    for (header, cells) in &columns {
        let width = cells.iter().map(String::len).chain([header.len()]).max().unwrap_or(1);
        out.push_str(&format!(" {header:^width$} "));
        for (wire, cell) in wires.iter_mut().zip(cells) {
            wire.push_str(&format!("-{cell:-^width$}-"));
        }
    }
    let mut text = out.trim_end().to_string();
    text.push('\n');
    if columns.is_empty() {
        return text;
    }
    for wire in &wires {
        text.push_str(wire);
        text.push('\n');
    }
    if !legend.is_empty() {
        text.push('\n');
        for (k, perm) in legend.iter().enumerate() {
            text.push_str(&format!("P{} = {}\n", k + 1, perm));
        }
    }
    text
}
