//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state count must be at least 2, got {0}")]
    BadStateCount(u8),

    #[error("arity must be odd so the window is centered, got {0}")]
    EvenArity(u8),

    #[error("rule table needs {expected} entries, got {got}")]
    BadTableLength { expected: usize, got: usize },

    #[error("rule table for {k} states and arity {m} is too large to enumerate")]
    TableTooLarge { k: u8, m: u8 },

    #[error("table entry {value} is not a valid state, must be below {k}")]
    BadTableEntry { value: u8, k: u8 },

    #[error("rule code {code} out of range, must be below {k}^({k}^{m})")]
    BadRuleCode { code: u128, k: u8, m: u8 },

    #[error("cell state {value} is not valid, must be below {k}")]
    BadCellState { value: u8, k: u8 },

    #[error("window has {got} entries, rule expects {expected}")]
    BadWindowLength { expected: usize, got: usize },

    #[error("configuration encoding {code} out of range for {n} cells over {k} states")]
    BadEncoding { code: u128, k: u8, n: usize },

    #[error("configuration space {k}^{n} does not fit in the encoding integer")]
    EncodingOverflow { k: u8, n: usize },

    #[error("lattice must have at least one cell")]
    EmptyLattice,

    #[error("rule has {rule_states} states but configuration has {config_states}")]
    AlphabetMismatch { rule_states: u8, config_states: u8 },

    #[error("maps disagree on lattice or alphabet: {left_n} cells over {left_k} states vs {right_n} cells over {right_k} states")]
    MapMismatch {
        left_n: usize,
        left_k: u8,
        right_n: usize,
        right_k: u8,
    },

    #[error("state space of {required} configurations exceeds the enumeration budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("unknown sequence specifier {spec:?}: expected A005408, A001651, A018252, pat:<bits>, or bits:<bits>")]
    BadSequenceSpec { spec: String },

    #[error("pattern must be a non-empty string of 0s and 1s, got {pattern:?}")]
    BadPattern { pattern: String },

    #[error("explicit sequence exhausted at step {t}, only {len} steps were given")]
    ExplicitExhausted { t: u64, len: usize },

    #[error("time steps are 1-based, got 0")]
    ZeroTimeStep,

    #[error("initial configuration set must not be empty")]
    EmptyInitialSet,

    #[error("{operation} needs a periodic sequence; pass a horizon for aperiodic ones")]
    NeedsPeriodicSequence { operation: &'static str },

    #[error("aperiodic sequence needs an explicit horizon for {operation}")]
    AperiodicNeedsHorizon { operation: &'static str },

    #[error("render colors must be pairwise distinct")]
    IndistinctColors,

    #[error("render scale must be at least 1")]
    ZeroScale,

    #[error("alternating circuit needs both rule layers in the diagram")]
    AlternatingNeedsBothRules,

    #[error("initial configuration {spec:?} not understood: expected an encoding, \"center\", or \"random:<seed>\"")]
    BadInitSpec { spec: String },

    #[error("initial set {spec:?} not understood: expected \"all\", \"auto\", or comma-separated encodings")]
    BadCinSpec { spec: String },

    #[error("no initial set found that verifies restricted reversibility")]
    NoRestrictedInitialSet,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
