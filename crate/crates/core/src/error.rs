use thiserror::Error;

use crate::ir::MachineKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid machine space: {0}")]
    InvalidSpace(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation acts on {found} states but the machine has {expected}")]
    PermutationSize { expected: usize, found: usize },

    #[error("invalid dyadic exponent {num}/2^{log2_den}: {reason}")]
    InvalidExponent {
        num: i64,
        log2_den: u32,
        reason: &'static str,
    },

    #[error("matrix is not unitary (max deviation of U*U^dagger from identity is {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("control u{control} is out of range for {num_rom_bits} ROM bits")]
    ControlOutOfRange { control: usize, num_rom_bits: usize },

    #[error("invalid control list: {0}")]
    InvalidControls(String),

    #[error("expected a {expected} program or gate, found {found}")]
    KindMismatch {
        expected: MachineKind,
        found: MachineKind,
    },

    #[error("programs live in different machine spaces")]
    SpaceMismatch,

    #[error("ROM assignment {assignment:#x} does not fit in {num_rom_bits} ROM bits")]
    AssignmentOutOfRange { assignment: u64, num_rom_bits: usize },

    #[error("start state {state} is out of range for {num_states} machine states")]
    StateOutOfRange { state: usize, num_states: usize },

    #[error("program leaves the qubit in superposition for ROM assignment {assignment:#x}")]
    NonClassicalOutput { assignment: u64 },

    #[error("writable register index must be 1 or 2, got {0}")]
    BadRegister(usize),

    #[error("target permutation {0} is not a 5-cycle")]
    NotFiveCycle(String),

    #[error("no program found within {0} ROM calls")]
    NotFoundWithinDepth(usize),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("boolean functions disagree on the number of variables ({left} vs {right})")]
    ArityMismatch { left: usize, right: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
