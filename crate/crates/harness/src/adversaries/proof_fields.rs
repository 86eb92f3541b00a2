use bpk_core::scheme::NymProof;
use bpk_core::{G1Point, G2Point, Scalar};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha20Rng;

/// The twelve components of an encoded proof, in wire order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProofField {
    C1,
    C2,
    RHat,
    S,
    T,
    BlindedUpk,
    Challenge,
    ZR,
    ZS,
    ZUsk,
    ZAlpha,
    ZBeta,
}

impl ProofField {
    pub const ALL: [ProofField; 12] = [
        ProofField::C1,
        ProofField::C2,
        ProofField::RHat,
        ProofField::S,
        ProofField::T,
        ProofField::BlindedUpk,
        ProofField::Challenge,
        ProofField::ZR,
        ProofField::ZS,
        ProofField::ZUsk,
        ProofField::ZAlpha,
        ProofField::ZBeta,
    ];

    pub fn random(rng: &mut ChaCha20Rng) -> Self {
        *Self::ALL.choose(rng).expect("nonempty")
    }

    /// Replaces this component of `proof` with a fresh random value.
    pub fn randomize(self, proof: &mut NymProof, rng: &mut ChaCha20Rng) {
        let tr = &mut proof.transcript;
        match self {
            ProofField::C1 => proof.ciphertext.c1 = G1Point::random(rng),
            ProofField::C2 => proof.ciphertext.c2 = G1Point::random(rng),
            ProofField::RHat => proof.r_hat = G2Point::random(rng),
            ProofField::S => proof.s = G1Point::random(rng),
            ProofField::T => proof.t = G1Point::random(rng),
            ProofField::BlindedUpk => proof.blinded_upk = G1Point::random(rng),
            ProofField::Challenge => tr.challenge = Scalar::random(rng),
            ProofField::ZR => tr.z_r = Scalar::random(rng),
            ProofField::ZS => tr.z_s = Scalar::random(rng),
            ProofField::ZUsk => tr.z_usk = Scalar::random(rng),
            ProofField::ZAlpha => tr.z_alpha = Scalar::random(rng),
            ProofField::ZBeta => tr.z_beta = Scalar::random(rng),
        }
    }

    /// Copies this component from `from` into `to`.
    pub fn splice(self, to: &mut NymProof, from: &NymProof) {
        let (t, f) = (&mut to.transcript, &from.transcript);
        match self {
            ProofField::C1 => to.ciphertext.c1 = from.ciphertext.c1,
            ProofField::C2 => to.ciphertext.c2 = from.ciphertext.c2,
            ProofField::RHat => to.r_hat = from.r_hat,
            ProofField::S => to.s = from.s,
            ProofField::T => to.t = from.t,
            ProofField::BlindedUpk => to.blinded_upk = from.blinded_upk,
            ProofField::Challenge => t.challenge = f.challenge,
            ProofField::ZR => t.z_r = f.z_r,
            ProofField::ZS => t.z_s = f.z_s,
            ProofField::ZUsk => t.z_usk = f.z_usk,
            ProofField::ZAlpha => t.z_alpha = f.z_alpha,
            ProofField::ZBeta => t.z_beta = f.z_beta,
        }
    }
}
