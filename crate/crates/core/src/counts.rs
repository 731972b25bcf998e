//! ROM-call counts of the conjunction constructions side by side.

use crate::error::{Error, Result};
use crate::search::recurrence_r;
use crate::synth::barrington::and_barrington;
use crate::synth::classical::s_sequence;
use crate::synth::quantum::{and_fast, and_naive};

pub const MAX_COUNT_ROWS: usize = 16;

/// ROM calls to compute `u_1 ∧ ... ∧ u_j` with each construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CountRow {
    pub j: usize,
    pub naive: usize,
    pub fast: usize,
    pub s_sequence: usize,
    pub barrington: usize,
    /// Proven two-bit lower bound.
    pub recurrence: u64,
}

/// Counts taken from the generated programs themselves, not formulas.
pub fn count_row(j: usize) -> Result<CountRow> {
    let controls: Vec<usize> = (1..=j).collect();
    Ok(CountRow {
        j,
        naive: and_naive(&controls, j)?.rom_call_count(),
        fast: and_fast(&controls, j)?.rom_call_count(),
        s_sequence: s_sequence(j, j)?.0.rom_call_count(),
        barrington: and_barrington(j)?.rom_call_count(),
        recurrence: recurrence_r(j as u32),
    })
}

pub fn count_table(j_max: usize) -> Result<Vec<CountRow>> {
    if j_max == 0 || j_max > MAX_COUNT_ROWS {
        return Err(Error::TooLarge(format!(
            "count tables cover 1..={MAX_COUNT_ROWS} ROM bits, got {j_max}"
        )));
    }
    (1..=j_max).map(count_row).collect()
}

pub fn format_table(rows: &[CountRow]) -> String {
    let mut out = format!(
        "{:>3} {:>8} {:>8} {:>8} {:>10} {:>8}\n",
        "j", "naive", "fast", "s_seq", "barrington", "R(j)"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3} {:>8} {:>8} {:>8} {:>10} {:>8}\n",
            r.j, r.naive, r.fast, r.s_sequence, r.barrington, r.recurrence
        ));
    }
    out
}
