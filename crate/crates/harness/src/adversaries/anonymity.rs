//! Adversaries against anonymity.
//!
//! The first group respects every constraint of the experiment and should
//! guess the hidden bit no better than a coin. The second group breaks one
//! constraint each; most of them learn the bit with certainty, which is
//! exactly why the experiment forces their output to 0.

use bpk_core::primitives::nike;
use bpk_core::scheme::{self, NymProof, Pseudonym};
use bpk_core::G1Point;
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::oracles::{AnonymityAdversary, AnonymityOracles};

/// Two honest users and one provider, challenged once.
fn challenge(
    o: &mut AnonymityOracles<'_>,
) -> Option<(G1Point, G1Point, G1Point, Pseudonym, NymProof)> {
    let (u0, u1) = (o.gen_u(), o.gen_u());
    let sp = o.gen_sp();
    let (nym, proof) = o.lor(&u0, &u1, &sp)?;
    Some((u0, u1, sp, nym, proof))
}

fn low_bit(p: &G1Point) -> bool {
    p.to_bytes()[47] & 1 == 1
}

fn hamming(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Queries the challenge oracle once and flips a coin.
pub struct CoinFlip;

impl AnonymityAdversary for CoinFlip {
    fn name(&self) -> &'static str {
        "coin flip"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let _ = challenge(o);
        rng.gen()
    }
}

/// Compares the challenge proof bit by bit with an honest proof of the left
/// user at another provider and guesses "left" when they are closer than
/// half the length.
pub struct NearestProof;

impl AnonymityAdversary for NearestProof {
    fn name(&self) -> &'static str {
        "nearest proof"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, _, _, _, proof)) = challenge(o) else {
            return rng.gen();
        };
        let other = o.gen_sp();
        let Some((_, reference)) = o.nym(&u0, &other) else {
            return rng.gen();
        };
        let (a, b) = (proof.to_bytes(), reference.to_bytes());
        let distance = hamming(&a, &b);
        let half = 4 * a.len() as u32;
        if distance == half {
            rng.gen()
        } else {
            distance > half
        }
    }
}

/// Subtracts the ciphertext of an honest proof for the left user from the
/// challenge ciphertext (an encryption of zero when the hidden bit is 0)
/// and reads a bit of the result.
pub struct CiphertextDifference;

impl AnonymityAdversary for CiphertextDifference {
    fn name(&self) -> &'static str {
        "ciphertext difference"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, _, _, _, proof)) = challenge(o) else {
            return rng.gen();
        };
        let other = o.gen_sp();
        let Some((_, reference)) = o.nym(&u0, &other) else {
            return rng.gen();
        };
        let d1 = proof.ciphertext.c1 - reference.ciphertext.c1;
        let d2 = proof.ciphertext.c2 - reference.ciphertext.c2;
        low_bit(&d1) != low_bit(&d2)
    }
}

/// Corrupts a provider that is not challenged, derives both users'
/// pseudonyms there, and tries to relate them to the challenge pseudonym.
pub struct CorruptOtherSp;

impl AnonymityAdversary for CorruptOtherSp {
    fn name(&self) -> &'static str {
        "corrupt other provider"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, u1, _, nym, _)) = challenge(o) else {
            return rng.gen();
        };
        let other = o.gen_sp();
        let Some(spsk) = o.corrupt_sp(&other) else {
            return rng.gen();
        };
        let mpk = *o.mpk();
        let (Ok(p0), Ok(p1)) = (
            scheme::nymgen_sp(&spsk, &mpk, &u0),
            scheme::nymgen_sp(&spsk, &mpk, &u1),
        ) else {
            return rng.gen();
        };
        let target = low_bit(&nym.0);
        match (low_bit(&p0.0) == target, low_bit(&p1.0) == target) {
            (true, false) => false,
            (false, true) => true,
            _ => rng.gen(),
        }
    }
}

/// Challenges `(u0, u1)` and then `(u0, u2)` at the same provider; the two
/// answers coincide exactly when the hidden bit is 0.
pub struct InconsistentPairs;

impl AnonymityAdversary for InconsistentPairs {
    fn name(&self) -> &'static str {
        "inconsistent pairs"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, _, sp, first, _)) = challenge(o) else {
            return rng.gen();
        };
        let u2 = o.gen_u();
        match o.lor(&u0, &u2, &sp) {
            Some((second, _)) => first != second,
            None => rng.gen(),
        }
    }
}

/// Asks the pseudonym oracle for the left user at the challenged provider.
pub struct NymOnChallengeUser;

impl AnonymityAdversary for NymOnChallengeUser {
    fn name(&self) -> &'static str {
        "pseudonym on challenged user"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, _, sp, nym, _)) = challenge(o) else {
            return rng.gen();
        };
        match o.nym(&u0, &sp) {
            Some((own, _)) => own != nym,
            None => rng.gen(),
        }
    }
}

/// Corrupts the left challenged user and recomputes its pseudonym.
pub struct CorruptChallengeUser;

impl AnonymityAdversary for CorruptChallengeUser {
    fn name(&self) -> &'static str {
        "corrupt challenged user"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, _, sp, nym, _)) = challenge(o) else {
            return rng.gen();
        };
        let Some(usk) = o.corrupt_u(&u0) else {
            return rng.gen();
        };
        match nike::share_key(&sp, &usk.nike_sk) {
            Ok(own) => own != nym.0,
            Err(_) => rng.gen(),
        }
    }
}

/// Corrupts the challenged provider and computes the left user's
/// pseudonym there.
pub struct CorruptChallengeSp;

impl AnonymityAdversary for CorruptChallengeSp {
    fn name(&self) -> &'static str {
        "corrupt challenged provider"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let Some((u0, _, sp, nym, _)) = challenge(o) else {
            return rng.gen();
        };
        let Some(spsk) = o.corrupt_sp(&sp) else {
            return rng.gen();
        };
        match scheme::nymgen_sp(&spsk, o.mpk(), &u0) {
            Ok(own) => own != nym,
            Err(_) => rng.gen(),
        }
    }
}

/// Obtains a pseudonym for a bystander and then corrupts the bystander.
/// Learns nothing about the challenge, guesses at random, and still breaks
/// the last constraint.
pub struct CorruptNymUser;

impl AnonymityAdversary for CorruptNymUser {
    fn name(&self) -> &'static str {
        "corrupt pseudonym user"
    }

    fn guess(&mut self, o: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        let _ = challenge(o);
        let bystander = o.gen_u();
        let sp = o.gen_sp();
        let _ = o.nym(&bystander, &sp);
        let _ = o.corrupt_u(&bystander);
        rng.gen()
    }
}
