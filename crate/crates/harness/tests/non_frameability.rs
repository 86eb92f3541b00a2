//! Non-frameability battery. `BPK_TRIALS` sets the number of runs per
//! adversary (default 100), `BPK_SEED` the master seed.

use bpk_core::scheme;
use bpk_harness::adversaries::non_frameability::*;
use bpk_harness::adversaries::{non_frameability_battery, ProofField};
use bpk_harness::{non_frameability_trials, Knobs, NonFrameabilityOutcome};

fn pp() -> scheme::PublicParams {
    scheme::setup(128, b"non-frameability").unwrap()
}

#[test]
fn battery_never_wins() {
    let knobs = Knobs::from_env(100);
    let pp = pp();
    for (i, make) in non_frameability_battery().into_iter().enumerate() {
        let tally = non_frameability_trials(&pp, make, knobs.trials, knobs.seed + i as u64);
        println!(
            "{:<22} {} trials, {} wins, {:?}",
            tally.adversary, tally.trials, tally.wins, tally.outcomes
        );
        assert_eq!(tally.wins, 0, "{} won", tally.adversary);
    }
}

#[test]
fn baselines_lose_for_the_stated_reason() {
    let pp = pp();
    let t = non_frameability_trials(&pp, || HonestReplay, 10, 1);
    assert_eq!(t.outcomes[&NonFrameabilityOutcome::AlreadyQueried], 10);
    let t = non_frameability_trials(&pp, || CorruptAndProve, 10, 2);
    assert_eq!(t.outcomes[&NonFrameabilityOutcome::CorruptedUser], 10);
}

#[test]
fn every_tamper_target_is_rejected() {
    let pp = pp();
    for (i, target) in TamperTarget::all().into_iter().enumerate() {
        let t = non_frameability_trials(
            &pp,
            || FieldTamperer {
                target: Some(target),
            },
            4,
            100 + i as u64,
        );
        assert_eq!(
            t.outcomes.get(&NonFrameabilityOutcome::Rejected),
            Some(&4),
            "{target:?}"
        );
    }
    assert_eq!(TamperTarget::all().len(), 2 + ProofField::ALL.len());
}

#[test]
fn every_replay_and_strip_mode_is_rejected() {
    let pp = pp();
    for mode in [ReplayMode::CrossSppk, ReplayMode::CrossNym] {
        let t = non_frameability_trials(&pp, || Replayer { mode: Some(mode) }, 5, 7);
        assert_eq!(
            t.outcomes.get(&NonFrameabilityOutcome::Rejected),
            Some(&5),
            "{mode:?}"
        );
    }
    for mode in [
        StripMode::FakeCredential,
        StripMode::BorrowedCredential,
        StripMode::FrameHonest,
    ] {
        let t = non_frameability_trials(&pp, || SignatureStripper { mode: Some(mode) }, 5, 8);
        assert_eq!(
            t.outcomes.get(&NonFrameabilityOutcome::Rejected),
            Some(&5),
            "{mode:?}"
        );
    }
}
