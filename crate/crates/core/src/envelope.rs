//! JSON envelopes for parameters, keys, pseudonyms and proofs.
//!
//! Every file is `{"version", "role", "secret", "fields"}` where `fields`
//! maps names to base64 (standard alphabet, padded) of canonical encodings.
//! Field maps are ordered, so identical values serialize byte-identically.
//! Files with `"secret": true` should be stored with owner-only permissions.

use std::collections::BTreeMap;

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{G1Point, G2Point, Scalar};
use crate::error::{Error, Result};
use crate::primitives::GrothSignature;
use crate::scheme::{
    self, MasterKeyPair, MasterPublicKey, MasterSecretKey, NymProof, Pseudonym, PublicParams,
    SpKeyPair, UserKeyPair, UserSecretKey,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Params,
    MasterSecret,
    MasterPublic,
    UserSecret,
    SpSecret,
    SpPublic,
    Pseudonym,
    Proof,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub version: String,
    pub role: Role,
    pub secret: bool,
    pub fields: BTreeMap<String, String>,
}

/// Public key of a service provider, on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpPublicKey(pub G1Point);

/// A pseudonym together with the digest of the domain it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PseudonymRecord {
    pub nym: Pseudonym,
    pub sppk_digest: [u8; 32],
}

impl PseudonymRecord {
    pub fn new(nym: Pseudonym, sppk: &G1Point) -> Self {
        PseudonymRecord {
            nym,
            sppk_digest: sppk_digest(sppk),
        }
    }

    pub fn belongs_to(&self, sppk: &G1Point) -> bool {
        self.sppk_digest == sppk_digest(sppk)
    }
}

/// SHA-256 of the compressed service-provider key.
pub fn sppk_digest(sppk: &G1Point) -> [u8; 32] {
    Sha256::digest(sppk.to_bytes()).into()
}

pub fn b64(bytes: &[u8]) -> String {
    STANDARD.encode(bytes)
}

pub fn unb64(s: &str) -> Result<Vec<u8>> {
    STANDARD
        .decode(s)
        .map_err(|e| Error::Envelope(format!("bad base64: {e}")))
}

impl Envelope {
    fn new(role: Role, secret: bool) -> Self {
        Envelope {
            version: scheme::VERSION.to_string(),
            role,
            secret,
            fields: BTreeMap::new(),
        }
    }

    fn put(mut self, name: &str, bytes: &[u8]) -> Self {
        self.fields.insert(name.to_string(), b64(bytes));
        self
    }

    fn raw(&self, name: &str) -> Result<Vec<u8>> {
        let v = self
            .fields
            .get(name)
            .ok_or_else(|| Error::Envelope(format!("missing field {name:?}")))?;
        unb64(v)
    }

    fn scalar(&self, name: &str) -> Result<Scalar> {
        Scalar::from_bytes(&self.raw(name)?)
    }

    fn g1(&self, name: &str) -> Result<G1Point> {
        G1Point::from_bytes(&self.raw(name)?)
    }

    fn g2(&self, name: &str) -> Result<G2Point> {
        G2Point::from_bytes(&self.raw(name)?)
    }

    fn expect_role(&self, role: Role) -> Result<()> {
        if self.version != scheme::VERSION {
            return Err(Error::Envelope(format!(
                "unsupported version {:?}",
                self.version
            )));
        }
        if self.role != role {
            return Err(Error::Envelope(format!(
                "expected role {role:?}, found {:?}",
                self.role
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Envelope(e.to_string()))
    }
}

/// Types stored as envelopes.
pub trait Enveloped: Sized {
    const ROLE: Role;

    fn to_envelope(&self) -> Envelope;

    /// Parses fields after the version and role have been checked.
    fn from_fields(env: &Envelope) -> Result<Self>;

    fn from_envelope(env: &Envelope) -> Result<Self> {
        env.expect_role(Self::ROLE)?;
        Self::from_fields(env)
    }

    fn to_json(&self) -> String {
        self.to_envelope().to_json()
    }

    fn from_json(s: &str) -> Result<Self> {
        Self::from_envelope(&Envelope::from_json(s)?)
    }
}

impl Enveloped for PublicParams {
    const ROLE: Role = Role::Params;

    fn to_envelope(&self) -> Envelope {
        let g = &self.group;
        let mut env = Envelope::new(Role::Params, false)
            .put("seed", &self.seed)
            .put("g", &g.g.to_bytes())
            .put("g_hat", &g.g_hat.to_bytes())
            .put("y", &g.y.to_bytes())
            .put("h", &g.h.to_bytes())
            .put("k", &g.k.to_bytes());
        env.fields
            .insert("security_level".into(), self.security_level.to_string());
        env
    }

    /// Re-derives the constants from the seed and rejects files whose listed
    /// elements disagree.
    fn from_fields(env: &Envelope) -> Result<Self> {
        let level: u32 = env
            .fields
            .get("security_level")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Envelope("missing or bad security_level".into()))?;
        let pp = scheme::setup(level, &env.raw("seed")?)?;
        let g = &pp.group;
        let listed = [
            (env.g1("g")?, g.g),
            (env.g1("y")?, g.y),
            (env.g1("h")?, g.h),
            (env.g1("k")?, g.k),
        ];
        if listed.iter().any(|(a, b)| a != b) || env.g2("g_hat")? != g.g_hat {
            return Err(Error::Envelope(
                "group elements do not match the seed".into(),
            ));
        }
        Ok(pp)
    }
}

impl Enveloped for MasterKeyPair {
    const ROLE: Role = Role::MasterSecret;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::MasterSecret, true)
            .put("msk_sig", &self.msk.sig.to_bytes())
            .put("msk_enc", &self.msk.enc.to_bytes())
            .put("mpk_sig", &self.mpk.sig.to_bytes())
            .put("mpk_enc", &self.mpk.enc.to_bytes())
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        Ok(MasterKeyPair {
            msk: MasterSecretKey {
                sig: env.scalar("msk_sig")?,
                enc: env.scalar("msk_enc")?,
            },
            mpk: MasterPublicKey {
                sig: env.g2("mpk_sig")?,
                enc: env.g1("mpk_enc")?,
            },
        })
    }
}

impl Enveloped for MasterPublicKey {
    const ROLE: Role = Role::MasterPublic;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::MasterPublic, false)
            .put("mpk_sig", &self.sig.to_bytes())
            .put("mpk_enc", &self.enc.to_bytes())
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        Ok(MasterPublicKey {
            sig: env.g2("mpk_sig")?,
            enc: env.g1("mpk_enc")?,
        })
    }
}

impl Enveloped for UserKeyPair {
    const ROLE: Role = Role::UserSecret;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::UserSecret, true)
            .put("usk", &self.usk.nike_sk.to_bytes())
            .put("credential", &self.usk.credential.to_bytes())
            .put("upk", &self.upk.to_bytes())
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        Ok(UserKeyPair {
            usk: UserSecretKey {
                nike_sk: env.scalar("usk")?,
                credential: GrothSignature::from_bytes(&env.raw("credential")?)?,
            },
            upk: env.g1("upk")?,
        })
    }
}

impl Enveloped for SpKeyPair {
    const ROLE: Role = Role::SpSecret;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::SpSecret, true)
            .put("spsk", &self.spsk.to_bytes())
            .put("sppk", &self.sppk.to_bytes())
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        Ok(SpKeyPair {
            spsk: env.scalar("spsk")?,
            sppk: env.g1("sppk")?,
        })
    }
}

impl Enveloped for SpPublicKey {
    const ROLE: Role = Role::SpPublic;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::SpPublic, false).put("sppk", &self.0.to_bytes())
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        Ok(SpPublicKey(env.g1("sppk")?))
    }
}

impl Enveloped for PseudonymRecord {
    const ROLE: Role = Role::Pseudonym;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::Pseudonym, false)
            .put("nym", &self.nym.0.to_bytes())
            .put("sppk_digest", &self.sppk_digest)
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        let digest: [u8; 32] = env
            .raw("sppk_digest")?
            .try_into()
            .map_err(|_| Error::Envelope("sppk_digest must be 32 bytes".into()))?;
        Ok(PseudonymRecord {
            nym: Pseudonym(env.g1("nym")?),
            sppk_digest: digest,
        })
    }
}

impl Enveloped for NymProof {
    const ROLE: Role = Role::Proof;

    fn to_envelope(&self) -> Envelope {
        Envelope::new(Role::Proof, false).put("proof", &self.to_bytes())
    }

    fn from_fields(env: &Envelope) -> Result<Self> {
        NymProof::from_bytes(&env.raw("proof")?)
    }
}
