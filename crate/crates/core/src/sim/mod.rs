//! Exact simulators for the classical and quantum backends.

pub mod classical;
pub mod quantum;

/// Largest ROM width swept eagerly into truth tables; wider programs must
/// be checked through the streaming or per-assignment entry points.
pub const EAGER_SWEEP_LIMIT: usize = 20;
