//! The delegatable pseudonym scheme.
//!
//! The authority holds a signing key and an opening key. Users receive a
//! key-exchange secret together with an authority signature on the matching
//! public key, and derive the pseudonym for a service provider as the shared
//! key with that provider. Each user-side pseudonym carries a proof that it
//! was derived from a certified key and an encryption of the user's public
//! key that only the authority can open.
//!
//! Key material, signatures and key exchange are composed through the traits
//! in [`crate::primitives`]; pseudonym generation fixes the concrete
//! instantiation because the proof is specific to it.

use std::collections::HashSet;

use rand::{CryptoRng, RngCore};

use crate::algebra::{G1Point, G2Point, GroupParams, Scalar, G1_BYTES, G2_BYTES, SCALAR_BYTES};
use crate::error::{Error, Result};
use crate::nizk::{self, NymProofTranscript, NymStatement, NymWitness};
use crate::primitives::{
    elgamal, groth, DiffieHellman, ElGamal, ElGamalCiphertext, Groth1, GrothSignature, KeyExchange,
    PublicKeyEncryption, SignatureScheme,
};

pub const VERSION: &str = "bpk-sharp/v1";

/// The only supported security level, in bits.
pub const SECURITY_LEVEL: u32 = 128;

/// Length of an encoded [`NymProof`].
pub const PROOF_BYTES: usize = 5 * G1_BYTES + G2_BYTES + 6 * SCALAR_BYTES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicParams {
    pub version: String,
    pub security_level: u32,
    pub seed: Vec<u8>,
    pub group: GroupParams,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterSecretKey {
    pub sig: Scalar,
    pub enc: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MasterPublicKey {
    pub sig: G2Point,
    pub enc: G1Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterKeyPair {
    pub msk: MasterSecretKey,
    pub mpk: MasterPublicKey,
}

/// Key-exchange secret plus the authority's signature on the matching
/// public key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserSecretKey {
    pub nike_sk: Scalar,
    pub credential: GrothSignature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserKeyPair {
    pub usk: UserSecretKey,
    pub upk: G1Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpKeyPair {
    pub spsk: Scalar,
    pub sppk: G1Point,
}

/// A user's identifier within one service provider's domain. Equality is
/// group-element equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pseudonym(pub G1Point);

/// Proof accompanying a user-generated pseudonym.
///
/// Encoded as `c1 || c2 || R^'' || S'' || T'' || upk' || e || z_r || z_s ||
/// z_usk || z_alpha || z_beta` (528 bytes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NymProof {
    pub ciphertext: ElGamalCiphertext,
    pub r_hat: G2Point,
    pub s: G1Point,
    pub t: G1Point,
    pub blinded_upk: G1Point,
    pub transcript: NymProofTranscript,
}

impl PublicParams {
    /// Re-derives the group constants from the recorded seed.
    pub fn is_consistent(&self) -> bool {
        self.version == VERSION
            && self.security_level == SECURITY_LEVEL
            && self.group == GroupParams::derive(&self.seed)
    }
}

impl MasterSecretKey {
    pub fn public_key(&self, pp: &PublicParams) -> MasterPublicKey {
        MasterPublicKey {
            sig: pp.group.g_hat * self.sig,
            enc: pp.group.k * self.enc,
        }
    }
}

impl UserKeyPair {
    /// `upk = H · usk'` and the credential verifies on `upk`.
    pub fn check(&self, pp: &PublicParams, mpk: &MasterPublicKey) -> Result<()> {
        if self.usk.nike_sk.is_zero() {
            return Err(Error::Degenerate("zero user secret"));
        }
        if DiffieHellman::public_key(&pp.group, &self.usk.nike_sk) != self.upk {
            return Err(Error::Degenerate("user public key does not match secret"));
        }
        if !Groth1::verify(&pp.group, &mpk.sig, &self.usk.credential, &self.upk) {
            return Err(Error::Degenerate("credential does not verify"));
        }
        Ok(())
    }
}

impl NymProof {
    pub fn to_bytes(&self) -> [u8; PROOF_BYTES] {
        let mut out = [0u8; PROOF_BYTES];
        let mut at = 0;
        let mut put = |bytes: &[u8]| {
            out[at..at + bytes.len()].copy_from_slice(bytes);
            at += bytes.len();
        };
        put(&self.ciphertext.c1.to_bytes());
        put(&self.ciphertext.c2.to_bytes());
        put(&self.r_hat.to_bytes());
        put(&self.s.to_bytes());
        put(&self.t.to_bytes());
        put(&self.blinded_upk.to_bytes());
        let tr = &self.transcript;
        for z in [
            tr.challenge,
            tr.z_r,
            tr.z_s,
            tr.z_usk,
            tr.z_alpha,
            tr.z_beta,
        ] {
            put(&z.to_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != PROOF_BYTES {
            return Err(Error::Encoding("pseudonym proof"));
        }
        let mut rest = bytes;
        let mut take = |n: usize| {
            let (head, tail) = rest.split_at(n);
            rest = tail;
            head
        };
        let c1 = G1Point::from_bytes(take(G1_BYTES))?;
        let c2 = G1Point::from_bytes(take(G1_BYTES))?;
        let r_hat = G2Point::from_bytes(take(G2_BYTES))?;
        let s = G1Point::from_bytes(take(G1_BYTES))?;
        let t = G1Point::from_bytes(take(G1_BYTES))?;
        let blinded_upk = G1Point::from_bytes(take(G1_BYTES))?;
        let mut scalar = || Scalar::from_bytes(take(SCALAR_BYTES));
        let transcript = NymProofTranscript {
            challenge: scalar()?,
            z_r: scalar()?,
            z_s: scalar()?,
            z_usk: scalar()?,
            z_alpha: scalar()?,
            z_beta: scalar()?,
        };
        Ok(NymProof {
            ciphertext: ElGamalCiphertext { c1, c2 },
            r_hat,
            s,
            t,
            blinded_upk,
            transcript,
        })
    }

    /// Statement this proof claims to satisfy for `(mpk, sppk, nym)`.
    pub fn statement(
        &self,
        pp: &PublicParams,
        mpk: &MasterPublicKey,
        sppk: &G1Point,
        nym: &Pseudonym,
    ) -> NymStatement {
        NymStatement {
            params: pp.group.clone(),
            mpk_sig: mpk.sig,
            mpk_enc: mpk.enc,
            sppk: *sppk,
            nym: nym.0,
            ciphertext: self.ciphertext,
            r_hat: self.r_hat,
            s: self.s,
            t: self.t,
            blinded_upk: self.blinded_upk,
        }
    }
}

/// Derives the public parameters from `seed`.
pub fn setup(security_level: u32, seed: &[u8]) -> Result<PublicParams> {
    if security_level != SECURITY_LEVEL {
        return Err(Error::UnsupportedSecurityLevel(security_level));
    }
    Ok(PublicParams {
        version: VERSION.to_string(),
        security_level,
        seed: seed.to_vec(),
        group: GroupParams::derive(seed),
    })
}

/// Authority key generation: a signing pair and an opening pair.
pub fn keygen<R: RngCore + CryptoRng>(pp: &PublicParams, rng: &mut R) -> MasterKeyPair {
    let (sig_sk, sig_pk) = Groth1::keygen(&pp.group, rng);
    let (enc_sk, enc_pk) = ElGamal::keygen(&pp.group, rng);
    MasterKeyPair {
        msk: MasterSecretKey {
            sig: sig_sk,
            enc: enc_sk,
        },
        mpk: MasterPublicKey {
            sig: sig_pk,
            enc: enc_pk,
        },
    }
}

/// Issues a user key: a fresh key-exchange pair and a signature on its
/// public half.
pub fn keygen_user<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    msk: &MasterSecretKey,
    rng: &mut R,
) -> Result<UserKeyPair> {
    let (nike_sk, upk) = DiffieHellman::keygen(&pp.group, rng);
    let credential = Groth1::sign(&pp.group, &msk.sig, &upk, rng)?;
    Ok(UserKeyPair {
        usk: UserSecretKey {
            nike_sk,
            credential,
        },
        upk,
    })
}

/// Issues a service-provider key. `msk` only authorizes the call.
pub fn keygen_sp<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    _msk: &MasterSecretKey,
    rng: &mut R,
) -> SpKeyPair {
    let (spsk, sppk) = DiffieHellman::keygen(&pp.group, rng);
    SpKeyPair { spsk, sppk }
}

/// User-side pseudonym generation with a proof of well-formedness.
pub fn nymgen_user<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    usk: &UserSecretKey,
    mpk: &MasterPublicKey,
    sppk: &G1Point,
    rng: &mut R,
) -> Result<(Pseudonym, NymProof)> {
    if sppk.is_identity() {
        return Err(Error::Degenerate("identity service-provider key"));
    }
    let group = &pp.group;
    let upk = DiffieHellman::public_key(group, &usk.nike_sk);
    let nym = DiffieHellman::share_key(sppk, &usk.nike_sk)?;

    let r = Scalar::random_nonzero(rng);
    let ciphertext = elgamal::encrypt(group, &mpk.enc, &upk, &r)?;

    let sigma = groth::randomize(&usk.credential, rng);
    let alpha = Scalar::random_nonzero(rng);
    let beta = Scalar::random_nonzero(rng);
    let s = Scalar::random_nonzero(rng);
    let inv = |x: Scalar| x.invert().expect("sampled nonzero");

    let proof_shell = NymProof {
        ciphertext,
        r_hat: sigma.r_hat,
        s: sigma.s * inv(alpha),
        t: sigma.t * inv(beta),
        blinded_upk: upk * inv(s),
        transcript: NymProofTranscript {
            challenge: Scalar::ZERO,
            z_r: Scalar::ZERO,
            z_s: Scalar::ZERO,
            z_usk: Scalar::ZERO,
            z_alpha: Scalar::ZERO,
            z_beta: Scalar::ZERO,
        },
    };
    let nym = Pseudonym(nym);
    let statement = proof_shell.statement(pp, mpk, sppk, &nym);
    let witness = NymWitness {
        r,
        s,
        usk: usk.nike_sk,
        alpha,
        beta,
    };
    let transcript = nizk::prove(&statement, &witness, rng)?;
    Ok((
        nym,
        NymProof {
            transcript,
            ..proof_shell
        },
    ))
}

/// Service-provider-side pseudonym computation from the user's public key.
pub fn nymgen_sp(spsk: &Scalar, _mpk: &MasterPublicKey, upk: &G1Point) -> Result<Pseudonym> {
    DiffieHellman::share_key(upk, spsk).map(Pseudonym)
}

pub fn nymvf(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    sppk: &G1Point,
    nym: &Pseudonym,
    proof: &NymProof,
) -> bool {
    nizk::verify(&proof.statement(pp, mpk, sppk, nym), &proof.transcript)
}

/// As [`nymvf`] on an encoded proof; parse failures reject.
pub fn nymvf_bytes(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    sppk: &G1Point,
    nym: &Pseudonym,
    proof: &[u8],
) -> bool {
    match NymProof::from_bytes(proof) {
        Ok(p) => nymvf(pp, mpk, sppk, nym, &p),
        Err(e) => {
            log::debug!("nym proof rejected: {e}");
            false
        }
    }
}

/// Recovers the user public key escrowed in the proof.
pub fn open(proof: &NymProof, msk: &MasterSecretKey) -> G1Point {
    ElGamal::decrypt(&msk.enc, &proof.ciphertext)
}

pub fn open_bytes(proof: &[u8], msk: &MasterSecretKey) -> Result<G1Point> {
    Ok(open(&NymProof::from_bytes(proof)?, msk))
}

/// Lookup of registered user public keys.
pub trait UserDirectory {
    fn is_registered(&self, upk: &G1Point) -> bool;
}

impl UserDirectory for HashSet<G1Point> {
    fn is_registered(&self, upk: &G1Point) -> bool {
        self.contains(upk)
    }
}

impl UserDirectory for [G1Point] {
    fn is_registered(&self, upk: &G1Point) -> bool {
        self.contains(upk)
    }
}

/// A pseudonym with its proof, as presented at a service provider.
#[derive(Clone, Copy, Debug)]
pub struct PresentedNym<'a> {
    pub sppk: &'a G1Point,
    pub nym: &'a Pseudonym,
    pub proof: &'a NymProof,
}

/// Translates a presented pseudonym into another domain: verify, open, check
/// registration, then recompute under the target secret.
pub fn link<D: UserDirectory + ?Sized>(
    pp: &PublicParams,
    master: &MasterKeyPair,
    presented: PresentedNym<'_>,
    target_spsk: &Scalar,
    directory: &D,
) -> Result<Pseudonym> {
    if !nymvf(
        pp,
        &master.mpk,
        presented.sppk,
        presented.nym,
        presented.proof,
    ) {
        return Err(Error::ProofRejected);
    }
    let upk = open(presented.proof, &master.msk);
    if !directory.is_registered(&upk) {
        return Err(Error::UnknownUser);
    }
    nymgen_sp(target_spsk, &master.mpk, &upk)
}
