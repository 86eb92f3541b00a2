//! Fiat-Shamir proof that a pseudonym is well formed.
//!
//! The prover shows knowledge of `(r, s, usk, alpha, beta)` such that
//!
//! ```text
//! E1  e(S'', R^'')^alpha            = e(Y, G^) e(G, mpk_sig)
//! E2  e(T'', R^'')^beta             = e(Y, mpk_sig) e(upk', G^)^s
//! E3  c1                            = K^r
//! E4  c2                            = upk'^s mpk_enc^r
//! E5  upk'^s                        = H^usk
//! E6  nym                           = sppk^usk
//! ```
//!
//! i.e. that the blinded signature components certify `upk = upk'^s` under
//! the authority key, that `c` encrypts that same `upk` to the opening key,
//! and that `nym` is the key-exchange value between `usk` and `sppk`.
//!
//! Proofs are shipped compressed: the challenge and five responses. The
//! verifier recomputes all six commitments and re-derives the challenge.
//! Exponents applied to pairing values are pushed into G1 and combined into
//! one multi-pairing per equation.

use rand::{CryptoRng, RngCore};

use std::borrow::Cow;

use crate::algebra::{
    hash_to_scalar, multi_pairing_prepared, G1Point, G2Point, GroupParams, GtElement, PreparedG2,
    Scalar,
};
use crate::error::{Error, Result};
use crate::primitives::ElGamalCiphertext;

/// Domain tag fed to the challenge hash.
pub const PROOF_DOMAIN_TAG: &[u8] = b"bpk-sharp/v1/nym-proof";

/// Public side of the proved relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NymStatement {
    pub params: GroupParams,
    pub mpk_sig: G2Point,
    pub mpk_enc: G1Point,
    pub sppk: G1Point,
    pub nym: G1Point,
    pub ciphertext: ElGamalCiphertext,
    pub r_hat: G2Point,
    pub s: G1Point,
    pub t: G1Point,
    pub blinded_upk: G1Point,
}

/// Secret exponents. Also used for the prover's masks, which have the same
/// shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NymWitness {
    /// ElGamal randomness.
    pub r: Scalar,
    /// Blinding of the user public key: `upk = upk' · s`.
    pub s: Scalar,
    /// Key-exchange secret of the user.
    pub usk: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
}

/// Challenge and responses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NymProofTranscript {
    pub challenge: Scalar,
    pub z_r: Scalar,
    pub z_s: Scalar,
    pub z_usk: Scalar,
    pub z_alpha: Scalar,
    pub z_beta: Scalar,
}

/// The six first-move values of the sigma protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commitments {
    pub a1: GtElement,
    pub a2: GtElement,
    pub a3: G1Point,
    pub a4: G1Point,
    pub a5: G1Point,
    pub a6: G1Point,
}

impl NymWitness {
    pub fn random<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        NymWitness {
            r: Scalar::random(rng),
            s: Scalar::random(rng),
            usk: Scalar::random(rng),
            alpha: Scalar::random(rng),
            beta: Scalar::random(rng),
        }
    }
}

impl NymStatement {
    /// Structural checks performed before any cryptographic work.
    pub fn check_well_formed(&self) -> Result<()> {
        if self.sppk.is_identity() {
            return Err(Error::Degenerate("identity service-provider key"));
        }
        if self.nym.is_identity() {
            return Err(Error::Degenerate("identity pseudonym"));
        }
        if self.blinded_upk.is_identity() {
            return Err(Error::Degenerate("identity blinded user key"));
        }
        if self.r_hat.is_identity() {
            return Err(Error::Degenerate("identity signature component"));
        }
        Ok(())
    }

    /// Length-prefixed encoding of every public value, in the fixed order
    /// params digest, mpk_sig, mpk_enc, sppk, nym, c1, c2, R^'', S'', T'',
    /// upk'.
    pub fn transcript_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1024);
        push(&mut out, &self.params.digest());
        push(&mut out, &self.mpk_sig.to_bytes());
        push(&mut out, &self.mpk_enc.to_bytes());
        push(&mut out, &self.sppk.to_bytes());
        push(&mut out, &self.nym.to_bytes());
        push(&mut out, &self.ciphertext.c1.to_bytes());
        push(&mut out, &self.ciphertext.c2.to_bytes());
        push(&mut out, &self.r_hat.to_bytes());
        push(&mut out, &self.s.to_bytes());
        push(&mut out, &self.t.to_bytes());
        push(&mut out, &self.blinded_upk.to_bytes());
        out
    }
}

fn push(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(&(bytes.len() as u64).to_le_bytes());
    out.extend_from_slice(bytes);
}

/// Prepared forms of the three G2 elements every pairing equation uses.
struct PreparedSide {
    r_hat: PreparedG2,
    g_hat: Cow<'static, PreparedG2>,
    mpk_sig: PreparedG2,
}

impl PreparedSide {
    fn new(st: &NymStatement) -> Self {
        PreparedSide {
            r_hat: PreparedG2::new(&st.r_hat),
            g_hat: st.params.prepared_g_hat(),
            mpk_sig: PreparedG2::new(&st.mpk_sig),
        }
    }
}

impl Commitments {
    /// First move of the prover for the given masks.
    pub fn from_masks(st: &NymStatement, m: &NymWitness) -> Self {
        let p = &st.params;
        let r_hat = PreparedG2::new(&st.r_hat);
        let upk_ms = st.blinded_upk * m.s;
        Commitments {
            a1: multi_pairing_prepared(&[(st.s * m.alpha, &r_hat)]),
            a2: multi_pairing_prepared(&[(st.t * m.beta, &r_hat), (-upk_ms, &p.prepared_g_hat())]),
            a3: p.k * m.r,
            a4: upk_ms + st.mpk_enc * m.r,
            a5: upk_ms - p.h * m.usk,
            a6: st.sppk * m.usk,
        }
    }

    /// Commitments implied by a transcript; equal to the prover's on an
    /// accepting proof.
    pub fn recompute(st: &NymStatement, pi: &NymProofTranscript) -> Self {
        let p = &st.params;
        let e = pi.challenge;
        let y_neg_e = p.y * -e;
        let upk_zs = st.blinded_upk * pi.z_s;
        let g2 = PreparedSide::new(st);
        Commitments {
            a1: multi_pairing_prepared(&[
                (st.s * pi.z_alpha, &g2.r_hat),
                (y_neg_e, &g2.g_hat),
                (p.g * -e, &g2.mpk_sig),
            ]),
            a2: multi_pairing_prepared(&[
                (st.t * pi.z_beta, &g2.r_hat),
                (-upk_zs, &g2.g_hat),
                (y_neg_e, &g2.mpk_sig),
            ]),
            a3: p.k * pi.z_r - st.ciphertext.c1 * e,
            a4: upk_zs + st.mpk_enc * pi.z_r - st.ciphertext.c2 * e,
            a5: upk_zs - p.h * pi.z_usk,
            a6: st.sppk * pi.z_usk - st.nym * e,
        }
    }

    fn transcript_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * 584 + 4 * 56);
        push(&mut out, &self.a1.to_bytes());
        push(&mut out, &self.a2.to_bytes());
        push(&mut out, &self.a3.to_bytes());
        push(&mut out, &self.a4.to_bytes());
        push(&mut out, &self.a5.to_bytes());
        push(&mut out, &self.a6.to_bytes());
        out
    }
}

/// Fiat-Shamir challenge binding the full statement and the commitments.
pub fn challenge(st: &NymStatement, commitments: &Commitments) -> Scalar {
    let mut transcript = st.transcript_bytes();
    transcript.extend_from_slice(&commitments.transcript_bytes());
    hash_to_scalar(PROOF_DOMAIN_TAG, &transcript)
}

/// Checks E1 through E6 directly and reports the first violated relation.
///
/// The two pairing equations are first tested together as one product with
/// a statement-derived random weight on E2; only on failure are they
/// evaluated separately to name the culprit.
pub fn check_witness(st: &NymStatement, w: &NymWitness) -> Result<()> {
    let p = &st.params;
    for (v, what) in [
        (w.r, "zero r"),
        (w.s, "zero s"),
        (w.usk, "zero usk"),
        (w.alpha, "zero alpha"),
        (w.beta, "zero beta"),
    ] {
        if v.is_zero() {
            return Err(Error::WitnessMismatch(what));
        }
    }
    let upk = st.blinded_upk * w.s;
    if st.ciphertext.c1 != p.k * w.r {
        return Err(Error::WitnessMismatch("E3"));
    }
    if st.ciphertext.c2 != upk + st.mpk_enc * w.r {
        return Err(Error::WitnessMismatch("E4"));
    }
    if upk != p.h * w.usk {
        return Err(Error::WitnessMismatch("E5"));
    }
    if st.nym != st.sppk * w.usk {
        return Err(Error::WitnessMismatch("E6"));
    }

    let g2 = PreparedSide::new(st);
    let rho = hash_to_scalar(b"bpk-sharp/v1/witness-check", &st.transcript_bytes());
    let s_alpha = st.s * w.alpha;
    let t_beta = st.t * w.beta;
    // E1 + rho * E2, moved to one side.
    let combined = multi_pairing_prepared(&[
        (s_alpha + t_beta * rho, &g2.r_hat),
        (-(p.y + upk * rho), &g2.g_hat),
        (-(p.g + p.y * rho), &g2.mpk_sig),
    ]);
    if combined.is_identity() {
        return Ok(());
    }
    let e1 =
        multi_pairing_prepared(&[(s_alpha, &g2.r_hat), (-p.y, &g2.g_hat), (-p.g, &g2.mpk_sig)]);
    if !e1.is_identity() {
        return Err(Error::WitnessMismatch("E1"));
    }
    Err(Error::WitnessMismatch("E2"))
}

/// Proves the statement. Refuses when the witness does not satisfy it.
pub fn prove<R: RngCore + CryptoRng + ?Sized>(
    st: &NymStatement,
    w: &NymWitness,
    rng: &mut R,
) -> Result<NymProofTranscript> {
    st.check_well_formed()?;
    check_witness(st, w)?;
    let masks = NymWitness::random(rng);
    let commitments = Commitments::from_masks(st, &masks);
    let e = challenge(st, &commitments);
    Ok(respond(&masks, w, e))
}

/// `z = m + e · w` for each exponent.
pub fn respond(masks: &NymWitness, w: &NymWitness, e: Scalar) -> NymProofTranscript {
    NymProofTranscript {
        challenge: e,
        z_r: masks.r + e * w.r,
        z_s: masks.s + e * w.s,
        z_usk: masks.usk + e * w.usk,
        z_alpha: masks.alpha + e * w.alpha,
        z_beta: masks.beta + e * w.beta,
    }
}

pub fn verify(st: &NymStatement, pi: &NymProofTranscript) -> bool {
    if let Err(e) = st.check_well_formed() {
        log::debug!("nym proof rejected, malformed statement: {e}");
        return false;
    }
    let commitments = Commitments::recompute(st, pi);
    challenge(st, &commitments) == pi.challenge
}
