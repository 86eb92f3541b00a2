//! Service configuration.
//!
//! One TOML or JSON file (chosen by extension), with `BPK_LISTEN` and
//! `BPK_DATA` overriding the listen address and the data path.
//!
//! ```toml
//! listen = "127.0.0.1:8700"
//! data = "authority.redb"
//! params_seed = "bpk-sharp/v1"
//!
//! [eligibility]
//! tax-office = ["tax-assessment"]
//!
//! [justifications]
//! open = ["court-order"]
//! link = ["court-order", "statutory-transfer"]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ServiceError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_listen")]
    pub listen: String,
    #[serde(default = "default_data")]
    pub data: PathBuf,
    /// Seed for the public parameters, used when the store is created.
    #[serde(default = "default_seed")]
    pub params_seed: String,
    /// Purposes for which each provider may request pseudonyms.
    #[serde(default)]
    pub eligibility: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub justifications: Justifications,
}

/// Purposes accepted as justification for opening and linking.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Justifications {
    #[serde(default)]
    pub open: Vec<String>,
    #[serde(default)]
    pub link: Vec<String>,
}

fn default_listen() -> String {
    "127.0.0.1:8700".into()
}

fn default_data() -> PathBuf {
    "authority.redb".into()
}

fn default_seed() -> String {
    bpk_core::scheme::VERSION.into()
}

impl Default for Config {
    fn default() -> Self {
        Config {
            listen: default_listen(),
            data: default_data(),
            params_seed: default_seed(),
            eligibility: BTreeMap::new(),
            justifications: Justifications::default(),
        }
    }
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e == "json");
        if is_json {
            serde_json::from_str(&text).map_err(|e| ServiceError::Config(e.to_string()))
        } else {
            toml::from_str(&text).map_err(|e| ServiceError::Config(e.to_string()))
        }
    }

    /// Applies `BPK_LISTEN` and `BPK_DATA` when set.
    pub fn apply_env(&mut self) {
        self.apply_overrides(
            std::env::var("BPK_LISTEN").ok(),
            std::env::var_os("BPK_DATA").map(PathBuf::from),
        );
    }

    pub fn apply_overrides(&mut self, listen: Option<String>, data: Option<PathBuf>) {
        if let Some(listen) = listen {
            self.listen = listen;
        }
        if let Some(data) = data {
            self.data = data;
        }
    }

    pub fn is_eligible(&self, sp_id: &str, purpose: &str) -> bool {
        self.eligibility
            .get(sp_id)
            .is_some_and(|ps| ps.iter().any(|p| p == purpose))
    }
}
