//! Persisted records and audit entries.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trust {
    /// Never holds its secret key; pseudonyms come from users or the
    /// authority.
    Plain,
    /// Holds its secret key (notionally in secure hardware) and may compute
    /// pseudonyms within its own domain.
    Trusted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserRecord {
    pub uid: String,
    /// Base64 of the compressed public key.
    pub upk: String,
    /// Sealed user key envelope, base64.
    pub sealed_usk: String,
    pub created_at_ms: u64,
    /// Hex of the authenticator's verifier.
    pub auth_verifier: String,
    /// Times at which the key was released.
    pub issued_at_ms: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpRecord {
    pub sp_id: String,
    pub sppk: String,
    pub trust: Trust,
    /// Sealed secret scalar, base64. Held by the authority for every
    /// provider, for linking.
    pub sealed_spsk: String,
    /// Where a trusted provider's copy of its key lives.
    pub custody: Option<String>,
    pub metadata: serde_json::Value,
    pub created_at_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditAction {
    Issue,
    ComputeNym,
    Open,
    Link,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub seq: u64,
    pub timestamp_ms: u64,
    pub actor: String,
    pub action: AuditAction,
    pub subject_uid: String,
    /// Provider whose domain the action concerns.
    pub target_domain: Option<String>,
    pub purpose: Option<String>,
}

pub(crate) fn now_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}
