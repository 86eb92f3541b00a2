//! Authenticated encryption of secrets at rest.
//!
//! The key is derived from the service passphrase with Argon2id; each
//! sealed blob is `nonce || ciphertext` under ChaCha20-Poly1305, with a
//! label naming the slot it belongs to as associated data, so a blob moved
//! to another record fails to open.

use argon2::Argon2;
use chacha20poly1305::aead::{Aead, AeadCore, KeyInit, OsRng, Payload};
use chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};

use crate::error::{Result, ServiceError};

const NONCE_BYTES: usize = 12;
pub const SALT_BYTES: usize = 16;

pub struct SecretBox {
    cipher: ChaCha20Poly1305,
}

impl SecretBox {
    pub fn derive(passphrase: &[u8], salt: &[u8]) -> Result<Self> {
        let mut key = [0u8; 32];
        Argon2::default()
            .hash_password_into(passphrase, salt, &mut key)
            .map_err(|_| ServiceError::Sealing("key derivation failed"))?;
        Ok(SecretBox {
            cipher: ChaCha20Poly1305::new(Key::from_slice(&key)),
        })
    }

    pub fn seal(&self, label: &str, plaintext: &[u8]) -> Vec<u8> {
        let nonce = ChaCha20Poly1305::generate_nonce(&mut OsRng);
        let payload = Payload {
            msg: plaintext,
            aad: label.as_bytes(),
        };
        let mut out = nonce.to_vec();
        out.extend(
            self.cipher
                .encrypt(&nonce, payload)
                .expect("encryption of in-memory data"),
        );
        out
    }

    pub fn open(&self, label: &str, sealed: &[u8]) -> Result<Vec<u8>> {
        if sealed.len() < NONCE_BYTES {
            return Err(ServiceError::Sealing("sealed blob too short"));
        }
        let (nonce, ct) = sealed.split_at(NONCE_BYTES);
        self.cipher
            .decrypt(
                Nonce::from_slice(nonce),
                Payload {
                    msg: ct,
                    aad: label.as_bytes(),
                },
            )
            .map_err(|_| ServiceError::Sealing("wrong passphrase or corrupted blob"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_binding() {
        let salt = [7u8; SALT_BYTES];
        let sb = SecretBox::derive(b"correct horse", &salt).unwrap();
        let sealed = sb.seal("user:1", b"secret");
        assert_eq!(sb.open("user:1", &sealed).unwrap(), b"secret");
        assert!(sb.open("user:2", &sealed).is_err());

        let other = SecretBox::derive(b"battery staple", &salt).unwrap();
        assert!(other.open("user:1", &sealed).is_err());

        let mut flipped = sealed.clone();
        *flipped.last_mut().unwrap() ^= 1;
        assert!(sb.open("user:1", &flipped).is_err());
        assert!(sb.open("user:1", &sealed[..5]).is_err());
    }

    #[test]
    fn nonces_are_fresh() {
        let sb = SecretBox::derive(b"pw", &[1u8; SALT_BYTES]).unwrap();
        assert_ne!(sb.seal("a", b"x"), sb.seal("a", b"x"));
    }
}
