//! Diffie-Hellman key exchange in G1 with base `H`.

use rand::{CryptoRng, RngCore};

use super::KeyExchange;
use crate::algebra::{G1Point, GroupParams, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NikeKeyPair {
    pub sk: Scalar,
    pub pk: G1Point,
}

/// `mu(sk) = H · sk`; injective on nonzero scalars since `H` has prime order.
pub fn public_key(params: &GroupParams, sk: &Scalar) -> G1Point {
    params.h * *sk
}

pub fn keygen<R: RngCore + CryptoRng + ?Sized>(params: &GroupParams, rng: &mut R) -> NikeKeyPair {
    let sk = Scalar::random_nonzero(rng);
    NikeKeyPair {
        sk,
        pk: public_key(params, &sk),
    }
}

/// `pk_other · sk`. Symmetric: both sides obtain `H · (sk_a sk_b)`.
pub fn share_key(pk_other: &G1Point, sk: &Scalar) -> Result<G1Point> {
    if pk_other.is_identity() {
        return Err(Error::Degenerate("identity public key"));
    }
    if sk.is_zero() {
        return Err(Error::Degenerate("zero key-exchange secret"));
    }
    Ok(*pk_other * *sk)
}

/// Marker type implementing [`KeyExchange`].
pub struct DiffieHellman;

impl KeyExchange for DiffieHellman {
    type SecretKey = Scalar;
    type PublicKey = G1Point;
    type SharedKey = G1Point;

    fn keygen<R: RngCore + CryptoRng>(params: &GroupParams, rng: &mut R) -> (Scalar, G1Point) {
        let kp = keygen(params, rng);
        (kp.sk, kp.pk)
    }

    fn public_key(params: &GroupParams, sk: &Scalar) -> G1Point {
        public_key(params, sk)
    }

    fn share_key(pk_other: &G1Point, sk: &Scalar) -> Result<G1Point> {
        share_key(pk_other, sk)
    }
}
