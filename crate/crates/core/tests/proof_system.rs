use bpk_core::batch::{item_rng, map_indexed};
use bpk_core::nizk::{self, NymProofTranscript};
use bpk_core::{scheme, Scalar};

#[test]
fn honest_proofs_always_verify() {
    let pp = scheme::setup(128, b"completeness").unwrap();
    let mut rng = item_rng(30, 0);
    let master = scheme::keygen(&pp, &mut rng);
    let ok = map_indexed(200, 31, |_, rng| {
        let user = scheme::keygen_user(&pp, &master.msk, rng).unwrap();
        let sp = scheme::keygen_sp(&pp, &master.msk, rng);
        let (nym, proof) = scheme::nymgen_user(&pp, &user.usk, &master.mpk, &sp.sppk, rng).unwrap();
        scheme::nymvf(&pp, &master.mpk, &sp.sppk, &nym, &proof)
    });
    assert_eq!(ok.iter().filter(|v| **v).count(), 200);
}

/// An adversary choosing the challenge and all responses at random never
/// gets an honest statement accepted.
#[test]
fn random_transcripts_are_rejected() {
    const TRIALS: usize = 10_000;
    let pp = scheme::setup(128, b"soundness").unwrap();
    let mut rng = item_rng(40, 0);
    let master = scheme::keygen(&pp, &mut rng);
    let user = scheme::keygen_user(&pp, &master.msk, &mut rng).unwrap();
    let sp = scheme::keygen_sp(&pp, &master.msk, &mut rng);
    let (nym, proof) =
        scheme::nymgen_user(&pp, &user.usk, &master.mpk, &sp.sppk, &mut rng).unwrap();
    let st = proof.statement(&pp, &master.mpk, &sp.sppk, &nym);

    let accepted = map_indexed(TRIALS, 41, |_, rng| {
        let pi = NymProofTranscript {
            challenge: Scalar::random(rng),
            z_r: Scalar::random(rng),
            z_s: Scalar::random(rng),
            z_usk: Scalar::random(rng),
            z_alpha: Scalar::random(rng),
            z_beta: Scalar::random(rng),
        };
        nizk::verify(&st, &pi)
    });
    assert_eq!(accepted.iter().filter(|v| **v).count(), 0);
}
