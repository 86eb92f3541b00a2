//! Groth's structure-preserving signature, one-message variant over G1.
//!
//! A signature on `m` under `pk = G^ · sk` is `(R^, S, T)` with
//! `R^ = G^ · r`, `S = (Y + G · sk) / r` and `T = (Y · sk + m) / r`. It
//! verifies when `e(S, R^) = e(Y, G^) e(G, pk)` and
//! `e(T, R^) = e(Y, pk) e(m, G^)`.

use rand::{CryptoRng, RngCore};

use super::SignatureScheme;
use crate::algebra::{
    multi_pairing_prepared, G1Point, G2Point, GroupParams, PreparedG2, Scalar, G1_BYTES, G2_BYTES,
};
use crate::error::{Error, Result};

pub const SIGNATURE_BYTES: usize = G2_BYTES + 2 * G1_BYTES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothKeyPair {
    pub sk: Scalar,
    pub pk: G2Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrothSignature {
    pub r_hat: G2Point,
    pub s: G1Point,
    pub t: G1Point,
}

impl GrothSignature {
    /// `R^ || S || T`, 192 bytes.
    pub fn to_bytes(&self) -> [u8; SIGNATURE_BYTES] {
        let mut out = [0u8; SIGNATURE_BYTES];
        out[..G2_BYTES].copy_from_slice(&self.r_hat.to_bytes());
        out[G2_BYTES..G2_BYTES + G1_BYTES].copy_from_slice(&self.s.to_bytes());
        out[G2_BYTES + G1_BYTES..].copy_from_slice(&self.t.to_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != SIGNATURE_BYTES {
            return Err(Error::Encoding("Groth signature"));
        }
        Ok(GrothSignature {
            r_hat: G2Point::from_bytes(&bytes[..G2_BYTES])?,
            s: G1Point::from_bytes(&bytes[G2_BYTES..G2_BYTES + G1_BYTES])?,
            t: G1Point::from_bytes(&bytes[G2_BYTES + G1_BYTES..])?,
        })
    }
}

pub fn keygen<R: RngCore + CryptoRng + ?Sized>(params: &GroupParams, rng: &mut R) -> GrothKeyPair {
    let sk = Scalar::random_nonzero(rng);
    GrothKeyPair {
        sk,
        pk: params.g_hat * sk,
    }
}

pub fn sign<R: RngCore + CryptoRng + ?Sized>(
    params: &GroupParams,
    sk: &Scalar,
    msg: &G1Point,
    rng: &mut R,
) -> Result<GrothSignature> {
    if sk.is_zero() {
        return Err(Error::Degenerate("zero signing key"));
    }
    let r = Scalar::random_nonzero(rng);
    let r_inv = r.invert().expect("r is nonzero");
    Ok(GrothSignature {
        r_hat: params.g_hat * r,
        s: (params.y + params.g * *sk) * r_inv,
        t: (params.y * *sk + *msg) * r_inv,
    })
}

/// Rerandomizes with a fresh nonzero `r'`.
pub fn randomize<R: RngCore + CryptoRng + ?Sized>(
    sig: &GrothSignature,
    rng: &mut R,
) -> GrothSignature {
    let r = Scalar::random_nonzero(rng);
    randomize_with(sig, &r).expect("r' is nonzero")
}

/// `(R^ · r', S / r', T / r')`.
pub fn randomize_with(sig: &GrothSignature, r_prime: &Scalar) -> Result<GrothSignature> {
    let inv = r_prime
        .invert()
        .ok_or(Error::Degenerate("zero rerandomization exponent"))?;
    Ok(GrothSignature {
        r_hat: sig.r_hat * *r_prime,
        s: sig.s * inv,
        t: sig.t * inv,
    })
}

pub fn verify(params: &GroupParams, pk: &G2Point, sig: &GrothSignature, msg: &G1Point) -> bool {
    if sig.r_hat.is_identity() {
        return false;
    }
    let r_hat = PreparedG2::new(&sig.r_hat);
    let pk = PreparedG2::new(pk);
    let g_hat = params.prepared_g_hat();
    // e(S, R^) e(-Y, G^) e(-G, pk) = 1
    let first = multi_pairing_prepared(&[(sig.s, &r_hat), (-params.y, &g_hat), (-params.g, &pk)]);
    if !first.is_identity() {
        return false;
    }
    // e(T, R^) e(-Y, pk) e(-m, G^) = 1
    multi_pairing_prepared(&[(sig.t, &r_hat), (-params.y, &pk), (-*msg, &g_hat)]).is_identity()
}

/// Marker type implementing [`SignatureScheme`].
pub struct Groth1;

impl SignatureScheme for Groth1 {
    type SecretKey = Scalar;
    type PublicKey = G2Point;
    type Message = G1Point;
    type Signature = GrothSignature;

    fn keygen<R: RngCore + CryptoRng>(params: &GroupParams, rng: &mut R) -> (Scalar, G2Point) {
        let kp = keygen(params, rng);
        (kp.sk, kp.pk)
    }

    fn sign<R: RngCore + CryptoRng>(
        params: &GroupParams,
        sk: &Scalar,
        msg: &G1Point,
        rng: &mut R,
    ) -> Result<GrothSignature> {
        sign(params, sk, msg, rng)
    }

    fn verify(params: &GroupParams, pk: &G2Point, sig: &GrothSignature, msg: &G1Point) -> bool {
        verify(params, pk, sig, msg)
    }
}
