//! Compilers from boolean functions to ROM programs.

pub mod barrington;
pub mod circuit;
pub mod classical;
pub mod quantum;

use crate::error::{Error, Result};

pub(crate) fn validate_controls(controls: &[usize], j: usize) -> Result<()> {
    if controls.is_empty() {
        return Err(Error::InvalidControls("at least one control is required".into()));
    }
    if controls.len() > j {
        return Err(Error::InvalidControls(format!(
            "{} controls exceed the {j} ROM bits",
            controls.len()
        )));
    }
    let mut seen = 0u64;
    for &c in controls {
        if c == 0 || c > j {
            return Err(Error::ControlOutOfRange {
                control: c,
                num_rom_bits: j,
            });
        }
        if seen >> (c - 1) & 1 == 1 {
            return Err(Error::InvalidControls(format!("u{c} appears twice")));
        }
        seen |= 1 << (c - 1);
    }
    Ok(())
}
