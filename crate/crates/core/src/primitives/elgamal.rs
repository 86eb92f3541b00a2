//! ElGamal encryption of G1 elements with base `K`.

use rand::{CryptoRng, RngCore};

use super::PublicKeyEncryption;
use crate::algebra::{G1Point, GroupParams, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElGamalKeyPair {
    pub sk: Scalar,
    pub pk: G1Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElGamalCiphertext {
    pub c1: G1Point,
    pub c2: G1Point,
}

pub fn keygen<R: RngCore + CryptoRng + ?Sized>(
    params: &GroupParams,
    rng: &mut R,
) -> ElGamalKeyPair {
    let sk = Scalar::random_nonzero(rng);
    ElGamalKeyPair {
        sk,
        pk: params.k * sk,
    }
}

/// `(K · r, pk · r + msg)`.
pub fn encrypt(
    params: &GroupParams,
    pk: &G1Point,
    msg: &G1Point,
    r: &Scalar,
) -> Result<ElGamalCiphertext> {
    if r.is_zero() {
        return Err(Error::Degenerate("zero encryption randomness"));
    }
    Ok(ElGamalCiphertext {
        c1: params.k * *r,
        c2: *pk * *r + *msg,
    })
}

/// `c2 - c1 · sk`. Accepts any ciphertext, including `c1 = 0`.
pub fn decrypt(sk: &Scalar, c: &ElGamalCiphertext) -> G1Point {
    c.c2 - c.c1 * *sk
}

/// Marker type implementing [`PublicKeyEncryption`].
pub struct ElGamal;

impl PublicKeyEncryption for ElGamal {
    type SecretKey = Scalar;
    type PublicKey = G1Point;
    type Message = G1Point;
    type Randomness = Scalar;
    type Ciphertext = ElGamalCiphertext;

    fn keygen<R: RngCore + CryptoRng>(params: &GroupParams, rng: &mut R) -> (Scalar, G1Point) {
        let kp = keygen(params, rng);
        (kp.sk, kp.pk)
    }

    fn encrypt(
        params: &GroupParams,
        pk: &G1Point,
        msg: &G1Point,
        r: &Scalar,
    ) -> Result<ElGamalCiphertext> {
        encrypt(params, pk, msg, r)
    }

    fn decrypt(sk: &Scalar, c: &ElGamalCiphertext) -> G1Point {
        decrypt(sk, c)
    }
}
