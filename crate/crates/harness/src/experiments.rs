//! The two experiments and repeated-trial drivers.

use std::collections::BTreeMap;

use bpk_core::batch::map_indexed;
use bpk_core::scheme;
use bpk_core::PublicParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::oracles::{
    AnonymityAdversary, AnonymityOracles, Forgery, NonFrameabilityAdversary, NonFrameabilityOracles,
};
use crate::state::GameState;

/// Final state of an experiment next to its result.
pub struct Run<O> {
    pub outcome: O,
    pub state: GameState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NonFrameabilityOutcome {
    /// No output, or the output does not verify.
    Rejected,
    /// Verifies and opens to a key that was never issued. Adversary wins.
    UnknownUser,
    /// Verifies and opens to an honest user who never produced it.
    /// Adversary wins.
    FreshForgery,
    /// Verifies and opens to an issued key, but the pseudonym oracle already
    /// answered for this user and provider.
    AlreadyQueried,
    /// Verifies and opens to a corrupted user.
    CorruptedUser,
}

impl NonFrameabilityOutcome {
    pub fn bit(self) -> bool {
        matches!(self, Self::UnknownUser | Self::FreshForgery)
    }
}

/// Constraints on the anonymity adversary's queries; a run violating any
/// of them returns 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// Left-or-right pairs for one provider are equal or disjoint.
    ConsistentPairs,
    /// No honest pseudonym for a user and provider also used in a
    /// left-or-right query.
    NoNymOnChallengeUser,
    /// No corrupted user or provider in a left-or-right query.
    NoCorruptChallenge,
    /// No corrupted user or provider in a pseudonym query.
    NoCorruptNym,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnonymityOutcome {
    pub b: bool,
    pub guess: bool,
    pub violations: Vec<Constraint>,
}

impl AnonymityOutcome {
    pub fn guessed(&self) -> bool {
        self.b == self.guess
    }

    pub fn bit(&self) -> bool {
        self.guessed() && self.violations.is_empty()
    }
}

/// Runs the non-frameability experiment once.
pub fn run_non_frameability<A: NonFrameabilityAdversary + ?Sized>(
    pp: &PublicParams,
    adversary: &mut A,
    rng: &mut ChaCha20Rng,
) -> Run<NonFrameabilityOutcome> {
    let mut state = GameState::new(pp, ChaCha20Rng::from_rng(&mut *rng).expect("chacha"));
    let output = adversary.attack(&mut NonFrameabilityOracles::new(&mut state), rng);
    let outcome = judge_non_frameability(&state, output.as_ref());
    Run { outcome, state }
}

fn judge_non_frameability(state: &GameState, output: Option<&Forgery>) -> NonFrameabilityOutcome {
    let Some(f) = output else {
        return NonFrameabilityOutcome::Rejected;
    };
    if !scheme::nymvf(state.pp(), state.mpk(), &f.sppk, &f.nym, &f.proof) {
        return NonFrameabilityOutcome::Rejected;
    }
    let upk = state.open(&f.proof);
    if !state.is_registered_user(&upk) {
        NonFrameabilityOutcome::UnknownUser
    } else if state.n().contains(&(upk, f.sppk)) {
        NonFrameabilityOutcome::AlreadyQueried
    } else if state.c_u().contains(&upk) {
        NonFrameabilityOutcome::CorruptedUser
    } else {
        NonFrameabilityOutcome::FreshForgery
    }
}

/// Runs the anonymity experiment once with a uniformly drawn hidden bit.
pub fn run_anonymity<A: AnonymityAdversary + ?Sized>(
    pp: &PublicParams,
    adversary: &mut A,
    rng: &mut ChaCha20Rng,
) -> Run<AnonymityOutcome> {
    let b: bool = rng.gen();
    let mut state = GameState::new(pp, ChaCha20Rng::from_rng(&mut *rng).expect("chacha"));
    let guess = adversary.guess(&mut AnonymityOracles::new(&mut state, b), rng);
    let violations = violated_constraints(&state);
    Run {
        outcome: AnonymityOutcome {
            b,
            guess,
            violations,
        },
        state,
    }
}

fn violated_constraints(state: &GameState) -> Vec<Constraint> {
    let lr: Vec<_> = state.lr().iter().collect();
    let mut out = Vec::new();

    let inconsistent = lr.iter().enumerate().any(|(i, a)| {
        lr[i + 1..]
            .iter()
            .any(|b| a.sppk == b.sppk && !a.same_users(b) && !a.disjoint(b))
    });
    if inconsistent {
        out.push(Constraint::ConsistentPairs);
    }

    let nym_on_challenge = state
        .n()
        .iter()
        .any(|(upk, sppk)| lr.iter().any(|e| e.sppk == *sppk && e.contains(upk)));
    if nym_on_challenge {
        out.push(Constraint::NoNymOnChallengeUser);
    }

    let corrupt_challenge = lr.iter().any(|e| {
        e.users().iter().any(|u| state.c_u().contains(u)) || state.c_sp().contains(&e.sppk)
    });
    if corrupt_challenge {
        out.push(Constraint::NoCorruptChallenge);
    }

    let corrupt_nym = state
        .n()
        .iter()
        .any(|(upk, sppk)| state.c_u().contains(upk) || state.c_sp().contains(sppk));
    if corrupt_nym {
        out.push(Constraint::NoCorruptNym);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFrameabilityTally {
    pub adversary: &'static str,
    pub trials: usize,
    pub wins: usize,
    pub outcomes: BTreeMap<NonFrameabilityOutcome, usize>,
}

impl NonFrameabilityTally {
    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.trials.max(1) as f64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnonymityTally {
    pub adversary: &'static str,
    pub trials: usize,
    /// Runs returning 1.
    pub wins: usize,
    /// Runs where the guess matched the hidden bit, constraints aside.
    pub correct_guesses: usize,
    /// Runs that violated at least one constraint.
    pub violating_runs: usize,
}

impl AnonymityTally {
    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.trials.max(1) as f64
    }

    pub fn guess_rate(&self) -> f64 {
        self.correct_guesses as f64 / self.trials.max(1) as f64
    }
}

/// Runs `trials` independent experiments, each with a fresh adversary from
/// `make` and its own random stream derived from `seed`.
pub fn non_frameability_trials<A, F>(
    pp: &PublicParams,
    make: F,
    trials: usize,
    seed: u64,
) -> NonFrameabilityTally
where
    A: NonFrameabilityAdversary,
    F: Fn() -> A + Sync + Send,
{
    let name = make().name();
    let outcomes = map_indexed(trials, seed, |_, rng| {
        run_non_frameability(pp, &mut make(), rng).outcome
    });
    let mut tally = NonFrameabilityTally {
        adversary: name,
        trials,
        wins: 0,
        outcomes: BTreeMap::new(),
    };
    for o in outcomes {
        tally.wins += o.bit() as usize;
        *tally.outcomes.entry(o).or_default() += 1;
    }
    tally
}

pub fn anonymity_trials<A, F>(
    pp: &PublicParams,
    make: F,
    trials: usize,
    seed: u64,
) -> AnonymityTally
where
    A: AnonymityAdversary,
    F: Fn() -> A + Sync + Send,
{
    let name = make().name();
    let outcomes = map_indexed(trials, seed, |_, rng| {
        run_anonymity(pp, &mut make(), rng).outcome
    });
    AnonymityTally {
        adversary: name,
        trials,
        wins: outcomes.iter().filter(|o| o.bit()).count(),
        correct_guesses: outcomes.iter().filter(|o| o.guessed()).count(),
        violating_runs: outcomes.iter().filter(|o| !o.violations.is_empty()).count(),
    }
}
