//! Adversaries against non-frameability.
//!
//! Apart from the two baselines that are expected to lose on a technicality
//! ([`HonestReplay`] and [`CorruptAndProve`]), every output here would win
//! the experiment if it verified.

use bpk_core::nizk::{self, Commitments, NymWitness};
use bpk_core::primitives::{elgamal, groth, nike, ElGamalCiphertext, GrothSignature};
use bpk_core::scheme::{self, NymProof, Pseudonym};
use bpk_core::{G1Point, G2Point, MasterPublicKey, PublicParams, Scalar};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use super::ProofField;
use crate::oracles::{Forgery, NonFrameabilityAdversary, NonFrameabilityOracles};

/// Resubmits a pseudonym obtained from the pseudonym oracle.
pub struct HonestReplay;

impl NonFrameabilityAdversary for HonestReplay {
    fn name(&self) -> &'static str {
        "honest replay"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        _: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        let upk = o.gen_u();
        let sppk = o.gen_sp();
        let (nym, proof) = o.nym(&upk, &sppk)?;
        Some(Forgery { sppk, nym, proof })
    }
}

/// Corrupts a user and generates a pseudonym with the stolen key.
pub struct CorruptAndProve;

impl NonFrameabilityAdversary for CorruptAndProve {
    fn name(&self) -> &'static str {
        "corrupt and prove"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        let upk = o.gen_u();
        let sppk = o.gen_sp();
        let usk = o.corrupt_u(&upk)?;
        let (nym, proof) = scheme::nymgen_user(o.pp(), &usk, o.mpk(), &sppk, rng).ok()?;
        Some(Forgery { sppk, nym, proof })
    }
}

/// Outputs a random pseudonym with a proof made of random valid encodings.
pub struct RandomForgery;

impl NonFrameabilityAdversary for RandomForgery {
    fn name(&self) -> &'static str {
        "random forgery"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        o.gen_u();
        let sppk = o.gen_sp();
        let mut proof = some_proof(rng);
        for field in ProofField::ALL {
            field.randomize(&mut proof, rng);
        }
        Some(Forgery {
            sppk,
            nym: Pseudonym(G1Point::random(rng)),
            proof,
        })
    }
}

/// What [`FieldTamperer`] changes in an honest presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TamperTarget {
    /// Present under another registered provider.
    Sppk,
    /// Replace the pseudonym with a random element.
    Nym,
    /// Replace one proof component with a random value.
    Proof(ProofField),
}

impl TamperTarget {
    pub fn all() -> Vec<TamperTarget> {
        let mut out = vec![TamperTarget::Sppk, TamperTarget::Nym];
        out.extend(ProofField::ALL.map(TamperTarget::Proof));
        out
    }
}

/// Takes an honest presentation and changes one field. With no fixed
/// target, picks one uniformly per run.
pub struct FieldTamperer {
    pub target: Option<TamperTarget>,
}

impl FieldTamperer {
    pub fn any() -> Self {
        FieldTamperer { target: None }
    }
}

impl NonFrameabilityAdversary for FieldTamperer {
    fn name(&self) -> &'static str {
        "field tamperer"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        let upk = o.gen_u();
        let sppk = o.gen_sp();
        let other_sp = o.gen_sp();
        let (nym, mut proof) = o.nym(&upk, &sppk)?;
        let target = self.target.unwrap_or_else(|| {
            let all = TamperTarget::all();
            all[rng.gen_range(0..all.len())]
        });
        let mut forgery_sppk = sppk;
        let mut forgery_nym = nym;
        match target {
            TamperTarget::Sppk => forgery_sppk = other_sp,
            TamperTarget::Nym => forgery_nym = Pseudonym(G1Point::random(rng)),
            TamperTarget::Proof(field) => field.randomize(&mut proof, rng),
        }
        Some(Forgery {
            sppk: forgery_sppk,
            nym: forgery_nym,
            proof,
        })
    }
}

/// Splices components of two honest proofs, for different users and
/// providers, into one.
pub struct Mixer;

impl NonFrameabilityAdversary for Mixer {
    fn name(&self) -> &'static str {
        "mixer"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        let (u1, u2) = (o.gen_u(), o.gen_u());
        let (sp1, sp2) = (o.gen_sp(), o.gen_sp());
        let (nym1, mut proof) = o.nym(&u1, &sp1)?;
        let (nym2, donor) = o.nym(&u2, &sp2)?;
        // A nonempty proper subset of the components, as a bit mask.
        let mask: u16 = rng.gen_range(1..(1 << ProofField::ALL.len()) - 1);
        for (i, field) in ProofField::ALL.into_iter().enumerate() {
            if mask & (1 << i) != 0 {
                field.splice(&mut proof, &donor);
            }
        }
        let (sppk, nym) = if rng.gen() { (sp1, nym2) } else { (sp2, nym1) };
        Some(Forgery { sppk, nym, proof })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReplayMode {
    /// Presents a user's pseudonym and proof under another provider.
    CrossSppk,
    /// Presents a proof together with another user's pseudonym at a
    /// provider the proof's user was never queried for.
    CrossNym,
}

pub struct Replayer {
    pub mode: Option<ReplayMode>,
}

impl Replayer {
    pub fn any() -> Self {
        Replayer { mode: None }
    }
}

impl NonFrameabilityAdversary for Replayer {
    fn name(&self) -> &'static str {
        "replayer"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        let mode = self.mode.unwrap_or(if rng.gen() {
            ReplayMode::CrossSppk
        } else {
            ReplayMode::CrossNym
        });
        let u1 = o.gen_u();
        let (sp1, sp2) = (o.gen_sp(), o.gen_sp());
        let (nym1, proof) = o.nym(&u1, &sp1)?;
        match mode {
            ReplayMode::CrossSppk => Some(Forgery {
                sppk: sp2,
                nym: nym1,
                proof,
            }),
            ReplayMode::CrossNym => {
                let u2 = o.gen_u();
                let (nym2, _) = o.nym(&u2, &sp2)?;
                Some(Forgery {
                    sppk: sp2,
                    nym: nym2,
                    proof,
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripMode {
    /// A fresh key pair with a made-up credential.
    FakeCredential,
    /// A fresh key pair with a corrupted user's credential on another key.
    BorrowedCredential,
    /// A corrupted user's key and credential, but an honest user's public
    /// key in the ciphertext.
    FrameHonest,
}

/// Proves with an invalid or mismatched credential, bypassing the prover's
/// own witness check.
pub struct SignatureStripper {
    pub mode: Option<StripMode>,
}

impl SignatureStripper {
    pub fn any() -> Self {
        SignatureStripper { mode: None }
    }
}

impl NonFrameabilityAdversary for SignatureStripper {
    fn name(&self) -> &'static str {
        "signature stripper"
    }

    fn attack(
        &mut self,
        o: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        let modes = [
            StripMode::FakeCredential,
            StripMode::BorrowedCredential,
            StripMode::FrameHonest,
        ];
        let mode = self
            .mode
            .unwrap_or_else(|| modes[rng.gen_range(0..modes.len())]);
        let sppk = o.gen_sp();
        let (pp, mpk) = (o.pp().clone(), *o.mpk());
        let group = &pp.group;
        match mode {
            StripMode::FakeCredential => {
                o.gen_u();
                let usk = Scalar::random_nonzero(rng);
                let upk = nike::public_key(group, &usk);
                let credential = GrothSignature {
                    r_hat: G2Point::random(rng),
                    s: G1Point::random(rng),
                    t: G1Point::random(rng),
                };
                forge(&pp, &mpk, &sppk, &usk, &credential, &upk, rng)
            }
            StripMode::BorrowedCredential => {
                let victim = o.gen_u();
                let stolen = o.corrupt_u(&victim)?;
                let usk = Scalar::random_nonzero(rng);
                let upk = nike::public_key(group, &usk);
                forge(&pp, &mpk, &sppk, &usk, &stolen.credential, &upk, rng)
            }
            StripMode::FrameHonest => {
                let honest = o.gen_u();
                let accomplice = o.gen_u();
                let usk = o.corrupt_u(&accomplice)?;
                forge(
                    &pp,
                    &mpk,
                    &sppk,
                    &usk.nike_sk,
                    &usk.credential,
                    &honest,
                    rng,
                )
            }
        }
    }
}

/// Runs the prover's algorithm on whatever it is given: the pseudonym is
/// `sppk · usk`, the ciphertext encrypts `escrowed_upk`, and the credential
/// is blinded as an honest prover would.
pub fn forge(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    sppk: &G1Point,
    usk: &Scalar,
    credential: &GrothSignature,
    escrowed_upk: &G1Point,
    rng: &mut ChaCha20Rng,
) -> Option<Forgery> {
    let group = &pp.group;
    let upk = nike::public_key(group, usk);
    let nym = Pseudonym(nike::share_key(sppk, usk).ok()?);
    let w = NymWitness {
        r: Scalar::random_nonzero(rng),
        s: Scalar::random_nonzero(rng),
        usk: *usk,
        alpha: Scalar::random_nonzero(rng),
        beta: Scalar::random_nonzero(rng),
    };
    let sigma = groth::randomize(credential, rng);
    let inv = |x: Scalar| x.invert().expect("nonzero");
    let mut proof = some_proof(rng);
    proof.ciphertext = elgamal::encrypt(group, &mpk.enc, escrowed_upk, &w.r).ok()?;
    proof.r_hat = sigma.r_hat;
    proof.s = sigma.s * inv(w.alpha);
    proof.t = sigma.t * inv(w.beta);
    proof.blinded_upk = upk * inv(w.s);
    proof.transcript = prove_unchecked(pp, mpk, sppk, &nym, &proof, &w, rng);
    Some(Forgery {
        sppk: *sppk,
        nym,
        proof,
    })
}

/// The Fiat-Shamir prover without the witness check.
pub fn prove_unchecked(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    sppk: &G1Point,
    nym: &Pseudonym,
    shell: &NymProof,
    w: &NymWitness,
    rng: &mut ChaCha20Rng,
) -> nizk::NymProofTranscript {
    let st = shell.statement(pp, mpk, sppk, nym);
    let masks = NymWitness::random(rng);
    let e = nizk::challenge(&st, &Commitments::from_masks(&st, &masks));
    nizk::respond(&masks, w, e)
}

fn some_proof(rng: &mut ChaCha20Rng) -> NymProof {
    let zero = Scalar::ZERO;
    NymProof {
        ciphertext: ElGamalCiphertext {
            c1: G1Point::random(rng),
            c2: G1Point::random(rng),
        },
        r_hat: G2Point::random(rng),
        s: G1Point::random(rng),
        t: G1Point::random(rng),
        blinded_upk: G1Point::random(rng),
        transcript: nizk::NymProofTranscript {
            challenge: zero,
            z_r: zero,
            z_s: zero,
            z_usk: zero,
            z_alpha: zero,
            z_beta: zero,
        },
    }
}
