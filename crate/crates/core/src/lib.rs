//! Delegatable sector-specific pseudonyms.
//!
//! A central authority issues user and service-provider keys. Users compute
//! their pseudonym for any provider locally, together with a proof that it
//! is well formed; providers holding their secret key compute the same value
//! from the user's public key. The authority can open a proof to the user's
//! public key and translate pseudonyms between domains.
//!
//! Modules, bottom-up:
//! - [`algebra`]: BLS12-381 scalars, groups, pairing and hashing.
//! - [`primitives`]: structure-preserving signatures, Diffie-Hellman key
//!   exchange, ElGamal.
//! - [`nizk`]: the proof of pseudonym well-formedness.
//! - [`scheme`]: setup, key generation, pseudonym generation, verification,
//!   opening and linking.
//! - [`envelope`]: JSON file formats.
//! - [`batch`]: data-parallel helpers.
//! - [`fixture`]: the deterministic set behind the conformance files.

pub mod algebra;
pub mod batch;
pub mod envelope;
pub mod error;
pub mod fixture;
pub mod nizk;
pub mod primitives;
pub mod scheme;

pub use algebra::{G1Point, G2Point, GroupParams, GtElement, Scalar};
pub use error::{Error, Result};
pub use scheme::{
    MasterKeyPair, MasterPublicKey, MasterSecretKey, NymProof, Pseudonym, PublicParams, SpKeyPair,
    UserKeyPair, UserSecretKey,
};
