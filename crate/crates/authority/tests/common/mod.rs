#![allow(dead_code)]

use bpk_authority::{Authority, Config, Justification};
use tempfile::TempDir;

pub const PASSPHRASE: &[u8] = b"correct horse battery staple";

pub fn config(dir: &TempDir) -> Config {
    let mut config: Config = toml::from_str(
        r#"
        listen = "127.0.0.1:0"
        params_seed = "bpk-authority tests"
        [eligibility]
        tax = ["assessment", "refund"]
        health = ["treatment"]
        [justifications]
        open = ["court-order"]
        link = ["data-sharing-agreement"]
        "#,
    )
    .unwrap();
    config.data = dir.path().join("registry.redb");
    config
}

pub fn authority() -> (TempDir, Authority) {
    let dir = tempfile::tempdir().unwrap();
    let authority = Authority::open(config(&dir), PASSPHRASE).unwrap();
    (dir, authority)
}

pub fn justification(purpose: &str) -> Justification {
    Justification {
        purpose: purpose.into(),
        reference: "case 17/2026".into(),
    }
}
