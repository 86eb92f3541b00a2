//! Security experiments for delegatable pseudonyms.
//!
//! [`GameState`] holds the bookkeeping sets of the experiments and answers
//! oracle queries. Adversaries see the game only through the handles in
//! [`oracles`], which expose the public parameters, the master public key
//! and the oracles allowed by each experiment. The master secret key never
//! leaves the game state:
//!
//! ```compile_fail
//! fn peek(state: &bpk_harness::GameState) {
//!     let _ = &state.msk;
//! }
//! ```
//!
//! Oracle refusals (the `⊥` answers) are `None`.
//!
//! Trial counts and the master seed come from `BPK_TRIALS` and `BPK_SEED`
//! (see [`Knobs`]).

pub mod adversaries;
pub mod experiments;
pub mod oracles;
mod state;

pub use experiments::{
    anonymity_trials, non_frameability_trials, run_anonymity, run_non_frameability,
    AnonymityOutcome, AnonymityTally, Constraint, NonFrameabilityOutcome, NonFrameabilityTally,
    Run,
};
pub use oracles::{
    AnonymityAdversary, AnonymityOracles, Forgery, NonFrameabilityAdversary, NonFrameabilityOracles,
};
pub use state::{GameState, LrEntry, OracleCall};

/// Trial count and seed, overridable from the environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Knobs {
    pub trials: usize,
    pub seed: u64,
}

impl Knobs {
    pub const DEFAULT_SEED: u64 = 0x5eed;

    /// Reads `BPK_TRIALS` and `BPK_SEED`, falling back to `default_trials`
    /// and [`Knobs::DEFAULT_SEED`]. Unparseable values are ignored.
    pub fn from_env(default_trials: usize) -> Self {
        let read = |name: &str| std::env::var(name).ok().and_then(|v| v.trim().parse().ok());
        Knobs {
            trials: read("BPK_TRIALS").map_or(default_trials, |t: u64| t as usize),
            seed: read("BPK_SEED").unwrap_or(Self::DEFAULT_SEED),
        }
    }
}
