//! JSON bodies of the HTTP interface.
//!
//! Curve points and proofs travel as standard base64 of their compressed
//! encodings; keys travel as the same envelopes used for files.

use bpk_core::envelope::Envelope;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::records::{AuditEntry, Trust};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegisterUserRequest {
    pub attributes: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegisterUserResponse {
    pub uid: String,
    pub upk: String,
    pub enrollment_token: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UserInfo {
    pub uid: String,
    pub upk: String,
    pub created_at_ms: u64,
    pub keys_issued: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeyRequest {
    pub token: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeyResponse {
    pub uid: String,
    pub user_key: Envelope,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegisterSpRequest {
    pub sp_id: String,
    #[serde(default = "plain")]
    pub trust: Trust,
    #[serde(default)]
    pub metadata: Value,
}

fn plain() -> Trust {
    Trust::Plain
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegisterSpResponse {
    pub sp_id: String,
    pub sppk: String,
    pub trust: Trust,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_key: Option<Envelope>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub custody: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpInfo {
    pub sp_id: String,
    pub sppk: String,
    pub trust: Trust,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Eligibility {
    pub purpose: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PseudonymRequest {
    pub uid: String,
    pub eligibility: Eligibility,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PseudonymResponse {
    pub sp_id: String,
    pub nym: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Justification {
    pub purpose: String,
    #[serde(default)]
    pub reference: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OpenRequest {
    pub proof: String,
    pub nym: String,
    pub sp_id: String,
    pub requester: String,
    pub justification: Justification,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OpenResponse {
    pub uid: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkRequest {
    pub proof: String,
    pub nym: String,
    pub source_sp: String,
    pub target_sp: String,
    pub requester: String,
    pub justification: Justification,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkResponse {
    pub target_sp: String,
    pub nym: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsResponse {
    pub params: Envelope,
    pub mpk: Envelope,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditResponse {
    pub entries: Vec<AuditEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}

impl From<Justification> for crate::authority::Justification {
    fn from(j: Justification) -> Self {
        crate::authority::Justification {
            purpose: j.purpose,
            reference: j.reference,
        }
    }
}
