//! Blocking client for the authority's HTTP API.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};

pub struct ServiceClient {
    base: String,
    http: reqwest::blocking::Client,
}

impl ServiceClient {
    pub fn new(base: &str) -> Self {
        ServiceClient {
            base: base.trim_end_matches('/').to_string(),
            http: reqwest::blocking::Client::new(),
        }
    }

    /// Sends a request and decodes the reply; error replies become
    /// [`CliError::Failed`] carrying the service's error code.
    pub fn call<T: DeserializeOwned>(&self, path: &str, body: Option<&impl Serialize>) -> Result<T> {
        let url = format!("{}{}", self.base, path);
        let req = match body {
            Some(b) => self.http.post(url).json(b),
            None => self.http.get(url),
        };
        let resp = req
            .send()
            .map_err(|e| CliError::Failed(format!("cannot reach {}: {e}", self.base)))?;
        let status = resp.status();
        let text = resp
            .text()
            .map_err(|e| CliError::Failed(format!("reading reply: {e}")))?;
        if !status.is_success() {
            let detail = serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|v| {
                    Some(format!(
                        "{}: {}",
                        v.get("error")?.as_str()?,
                        v.get("message")?.as_str()?
                    ))
                })
                .unwrap_or(text);
            return Err(CliError::Failed(format!("{status}: {detail}")));
        }
        serde_json::from_str(&text).map_err(|e| CliError::Failed(format!("unexpected reply: {e}")))
    }

    pub fn params(&self) -> Result<Value> {
        self.call("/v1/params", None::<&()>)
    }

    pub fn register_user(&self, attributes: Value) -> Result<Value> {
        self.call("/v1/users", Some(&json!({ "attributes": attributes })))
    }

    pub fn request_key(&self, uid: &str, token: &str) -> Result<Value> {
        self.call(&format!("/v1/users/{uid}/key"), Some(&json!({ "token": token })))
    }

    pub fn register_sp(&self, sp_id: &str, trusted: bool, metadata: Value) -> Result<Value> {
        let trust = if trusted { "trusted" } else { "plain" };
        self.call(
            "/v1/sps",
            Some(&json!({ "sp_id": sp_id, "trust": trust, "metadata": metadata })),
        )
    }

    pub fn pseudonym(&self, sp_id: &str, uid: &str, purpose: &str) -> Result<Value> {
        self.call(
            &format!("/v1/sps/{sp_id}/pseudonyms"),
            Some(&json!({ "uid": uid, "eligibility": { "purpose": purpose } })),
        )
    }

    pub fn open(&self, request: &Value) -> Result<Value> {
        self.call("/v1/open", Some(request))
    }

    pub fn link(&self, request: &Value) -> Result<Value> {
        self.call("/v1/link", Some(request))
    }

    pub fn audit(&self) -> Result<Value> {
        self.call("/v1/audit", None::<&()>)
    }
}
