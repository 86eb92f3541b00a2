//! Building blocks composed by the pseudonym scheme.
//!
//! Each primitive is reachable both through free functions and through a
//! small trait, so the generic layer in [`crate::scheme`] can be written
//! against the interface alone.

pub mod elgamal;
pub mod groth;
pub mod nike;

use rand::{CryptoRng, RngCore};

use crate::algebra::GroupParams;
use crate::error::Result;

pub use elgamal::{ElGamal, ElGamalCiphertext, ElGamalKeyPair};
pub use groth::{Groth1, GrothKeyPair, GrothSignature};
pub use nike::{DiffieHellman, NikeKeyPair};

/// Digital signature scheme.
pub trait SignatureScheme {
    type SecretKey;
    type PublicKey;
    type Message;
    type Signature;

    fn keygen<R: RngCore + CryptoRng>(
        params: &GroupParams,
        rng: &mut R,
    ) -> (Self::SecretKey, Self::PublicKey);

    fn sign<R: RngCore + CryptoRng>(
        params: &GroupParams,
        sk: &Self::SecretKey,
        msg: &Self::Message,
        rng: &mut R,
    ) -> Result<Self::Signature>;

    fn verify(
        params: &GroupParams,
        pk: &Self::PublicKey,
        sig: &Self::Signature,
        msg: &Self::Message,
    ) -> bool;
}

/// Public-key encryption with explicit randomness.
pub trait PublicKeyEncryption {
    type SecretKey;
    type PublicKey;
    type Message;
    type Randomness;
    type Ciphertext;

    fn keygen<R: RngCore + CryptoRng>(
        params: &GroupParams,
        rng: &mut R,
    ) -> (Self::SecretKey, Self::PublicKey);

    fn encrypt(
        params: &GroupParams,
        pk: &Self::PublicKey,
        msg: &Self::Message,
        r: &Self::Randomness,
    ) -> Result<Self::Ciphertext>;

    fn decrypt(sk: &Self::SecretKey, c: &Self::Ciphertext) -> Self::Message;
}

/// Non-interactive key exchange whose secret-to-public map is injective.
pub trait KeyExchange {
    type SecretKey;
    type PublicKey;
    type SharedKey;

    fn keygen<R: RngCore + CryptoRng>(
        params: &GroupParams,
        rng: &mut R,
    ) -> (Self::SecretKey, Self::PublicKey);

    /// The injective map from secret to public key.
    fn public_key(params: &GroupParams, sk: &Self::SecretKey) -> Self::PublicKey;

    fn share_key(pk_other: &Self::PublicKey, sk: &Self::SecretKey) -> Result<Self::SharedKey>;
}
