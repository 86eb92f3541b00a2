//! Authentication of key requests.

use base64::engine::general_purpose::URL_SAFE_NO_PAD;
use base64::Engine;
use rand::RngCore;
use sha2::{Digest, Sha256};

/// Decides whether a key request for a user may proceed.
///
/// At registration the authenticator produces the evidence handed to the
/// user out of band and a verifier stored with the record; key requests
/// present the evidence again.
pub trait Authenticator: Send + Sync {
    /// Returns `(evidence for the user, verifier to store)`.
    fn enroll(&self, uid: &str) -> (String, Vec<u8>);

    fn check(&self, uid: &str, verifier: &[u8], evidence: &str) -> bool;
}

/// A random shared-secret token per user; only its SHA-256 is stored.
#[derive(Clone, Copy, Debug, Default)]
pub struct TokenAuthenticator;

impl Authenticator for TokenAuthenticator {
    fn enroll(&self, _uid: &str) -> (String, Vec<u8>) {
        let mut token = [0u8; 32];
        rand::rngs::OsRng.fill_bytes(&mut token);
        let token = URL_SAFE_NO_PAD.encode(token);
        let verifier = Sha256::digest(token.as_bytes()).to_vec();
        (token, verifier)
    }

    fn check(&self, _uid: &str, verifier: &[u8], evidence: &str) -> bool {
        let digest = Sha256::digest(evidence.as_bytes());
        verifier.len() == digest.len()
            && verifier
                .iter()
                .zip(digest.iter())
                .fold(0u8, |acc, (a, b)| acc | (a ^ b))
                == 0
    }
}
