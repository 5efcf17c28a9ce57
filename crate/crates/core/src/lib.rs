//! Cellular automata on a finite ring driven by two local rules that take
//! turns according to a temporal schedule.
//!
//! A run is determined by a rule pair (f, g), a ring of n cells over k states,
//! and a schedule deciding which rule fires at each 1-based step. The crate
//! answers three families of questions about such systems:
//!
//! * reversibility: whether the scheduled dynamics can be undone from every
//!   configuration, from a restricted initial set, or not at all ([`reach`]);
//! * recurrence: which configurations a trajectory keeps returning to, and
//!   with what gap structure ([`dynamics`]);
//! * graph structure: components, Hamiltonian cycles, and Euler circuits of
//!   the multigraph holding both rules' transitions ([`graph`]).
//!
//! Configurations are addressed by their encoding: the cell row read left to
//! right as a base-k numeral, cell 0 most significant. Rule codes follow the
//! usual Wolfram numbering generalized to k states.

pub mod cli;
pub mod config;
pub mod dot;
pub mod dynamics;
pub mod error;
pub mod global_map;
pub mod graph;
pub mod reach;
pub mod render;
pub mod rule;
pub mod sequence;

pub use config::{global_step, Configuration};
pub use error::{Error, Result};
pub use global_map::{GlobalMap, DEFAULT_BUDGET};
pub use rule::LocalRule;
pub use sequence::{Periodicity, RuleChoice, RuleSequence};
