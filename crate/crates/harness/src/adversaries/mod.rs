//! Scripted adversaries.
//!
//! [`non_frameability_battery`] and [`anonymity_battery`] list the
//! strategies that play by the rules; [`constraint_violators`] lists
//! anonymity strategies that break one of the experiment's constraints and
//! therefore must never win, however good their guess.

pub mod anonymity;
pub mod non_frameability;
mod proof_fields;

pub use proof_fields::ProofField;

use crate::oracles::{AnonymityAdversary, NonFrameabilityAdversary};

pub type NonFrameabilityFactory = fn() -> Box<dyn NonFrameabilityAdversary>;
pub type AnonymityFactory = fn() -> Box<dyn AnonymityAdversary>;

pub fn non_frameability_battery() -> Vec<NonFrameabilityFactory> {
    use non_frameability::*;
    vec![
        || Box::new(HonestReplay),
        || Box::new(CorruptAndProve),
        || Box::new(RandomForgery),
        || Box::new(FieldTamperer::any()),
        || Box::new(Mixer),
        || Box::new(Replayer::any()),
        || Box::new(SignatureStripper::any()),
    ]
}

pub fn anonymity_battery() -> Vec<AnonymityFactory> {
    use anonymity::*;
    vec![
        || Box::new(CoinFlip),
        || Box::new(NearestProof),
        || Box::new(CiphertextDifference),
        || Box::new(CorruptOtherSp),
    ]
}

pub fn constraint_violators() -> Vec<AnonymityFactory> {
    use anonymity::*;
    vec![
        || Box::new(InconsistentPairs),
        || Box::new(NymOnChallengeUser),
        || Box::new(CorruptChallengeUser),
        || Box::new(CorruptChallengeSp),
        || Box::new(CorruptNymUser),
    ]
}
