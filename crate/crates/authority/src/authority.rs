//! The authority's operations, independent of transport.

use std::collections::BTreeMap;

use bpk_core::envelope::{b64, unb64, Enveloped};
use bpk_core::scheme::{self, PresentedNym, UserDirectory};
use bpk_core::{
    G1Point, MasterKeyPair, MasterPublicKey, NymProof, Pseudonym, PublicParams, Scalar,
    UserKeyPair,
};
use rand::rngs::OsRng;
use rand::RngCore;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::auth::{Authenticator, TokenAuthenticator};
use crate::config::Config;
use crate::error::{Result, ServiceError};
use crate::records::{now_ms, AuditAction, AuditEntry, SpRecord, Trust, UserRecord};
use crate::sealing::{SecretBox, SALT_BYTES};
use crate::store::{AuditEvent, Store};

const MASTER_LABEL: &str = "master";

pub struct Authority {
    config: Config,
    pp: PublicParams,
    master: MasterKeyPair,
    store: Store,
    secrets: SecretBox,
    auth: Box<dyn Authenticator>,
}

/// Result of a user registration. The token goes to the user out of band.
#[derive(Clone, Debug)]
pub struct Registration {
    pub uid: String,
    pub upk: G1Point,
    pub enrollment_token: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserView {
    pub uid: String,
    pub upk: G1Point,
    pub created_at_ms: u64,
    pub keys_issued: usize,
}

#[derive(Clone, Debug)]
pub struct SpRegistration {
    pub sp_id: String,
    pub sppk: G1Point,
    pub trust: Trust,
    /// Only for trusted providers.
    pub spsk: Option<Scalar>,
    pub custody: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpView {
    pub sp_id: String,
    pub sppk: G1Point,
    pub trust: Trust,
}

/// Reason given for opening or linking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Justification {
    pub purpose: String,
    pub reference: String,
}

struct Registry<'a>(&'a Store);

impl UserDirectory for Registry<'_> {
    fn is_registered(&self, upk: &G1Point) -> bool {
        match self.0.uid_for_upk(&upk.to_bytes()) {
            Ok(uid) => uid.is_some(),
            Err(e) => {
                log::error!("registry lookup failed: {e}");
                false
            }
        }
    }
}

fn valid_sp_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b"-_.".contains(&b))
}

/// Key-sorted serialization, so attribute order does not matter.
fn canonical(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let sorted: BTreeMap<_, _> = map.iter().map(|(k, v)| (k.clone(), canonical(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

fn parse_g1(s: &str) -> Result<G1Point> {
    Ok(G1Point::from_bytes(&unb64(s)?)?)
}

impl Authority {
    /// Opens the registry at `config.data`, creating parameters and a
    /// master key on first use, with the default token authenticator.
    pub fn open(config: Config, passphrase: &[u8]) -> Result<Self> {
        Self::open_with(config, passphrase, Box::new(TokenAuthenticator))
    }

    pub fn open_with(
        config: Config,
        passphrase: &[u8],
        auth: Box<dyn Authenticator>,
    ) -> Result<Self> {
        let store = Store::open(&config.data)?;
        if store.meta("params")?.is_none() {
            let mut salt = [0u8; SALT_BYTES];
            OsRng.fill_bytes(&mut salt);
            let secrets = SecretBox::derive(passphrase, &salt)?;
            let pp = scheme::setup(scheme::SECURITY_LEVEL, config.params_seed.as_bytes())?;
            let master = scheme::keygen(&pp, &mut OsRng);
            let sealed = secrets.seal(MASTER_LABEL, master.to_json().as_bytes());
            let params_json = pp.to_json();
            let mpk_json = master.mpk.to_json();
            let created = store.init_meta(
                "params",
                &[
                    ("salt", &salt),
                    ("master", &sealed),
                    ("mpk", mpk_json.as_bytes()),
                    ("params", params_json.as_bytes()),
                ],
            )?;
            if created {
                log::info!("initialized new registry at {}", config.data.display());
            }
        }

        let meta = |key: &str| {
            store
                .meta(key)?
                .ok_or_else(|| ServiceError::Storage(format!("registry lacks {key}")))
        };
        let secrets = SecretBox::derive(passphrase, &meta("salt")?)?;
        let master_json = secrets.open(MASTER_LABEL, &meta("master")?)?;
        let master = MasterKeyPair::from_json(&String::from_utf8_lossy(&master_json))?;
        let pp = PublicParams::from_json(&String::from_utf8_lossy(&meta("params")?))?;
        if master.msk.public_key(&pp) != master.mpk {
            return Err(ServiceError::Storage("master key pair is inconsistent".into()));
        }
        if pp.seed != config.params_seed.as_bytes() {
            log::warn!("params_seed in config differs from the registry's; the registry wins");
        }
        Ok(Authority {
            config,
            pp,
            master,
            store,
            secrets,
            auth,
        })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn pp(&self) -> &PublicParams {
        &self.pp
    }

    pub fn mpk(&self) -> &MasterPublicKey {
        &self.master.mpk
    }

    /// The master key pair, for the operator's own tooling. Never part of
    /// any API response.
    pub fn master_key(&self) -> &MasterKeyPair {
        &self.master
    }

    pub fn register_user(&self, attributes: &Value) -> Result<Registration> {
        match attributes {
            Value::Object(map) if !map.is_empty() => {}
            _ => {
                return Err(ServiceError::BadRequest(
                    "identity attributes must be a nonempty object".into(),
                ))
            }
        }
        let identity = Sha256::digest(serde_json::to_vec(&canonical(attributes))?);
        let mut raw = [0u8; 16];
        OsRng.fill_bytes(&mut raw);
        let uid = format!("u-{}", hex::encode(raw));

        let kp = scheme::keygen_user(&self.pp, &self.master.msk, &mut OsRng)?;
        let (token, verifier) = self.auth.enroll(&uid);
        let sealed = self
            .secrets
            .seal(&format!("usk:{uid}"), kp.to_json().as_bytes());
        let record = UserRecord {
            uid: uid.clone(),
            upk: b64(&kp.upk.to_bytes()),
            sealed_usk: b64(&sealed),
            created_at_ms: now_ms(),
            auth_verifier: hex::encode(verifier),
            issued_at_ms: Vec::new(),
        };
        self.store
            .insert_user(&record, &kp.upk.to_bytes(), &identity)?;
        log::info!("registered user {uid}");
        Ok(Registration {
            uid,
            upk: kp.upk,
            enrollment_token: token,
        })
    }

    pub fn user(&self, uid: &str) -> Result<UserView> {
        let rec = self.store.user(uid)?.ok_or(ServiceError::UnknownUid)?;
        Ok(UserView {
            upk: parse_g1(&rec.upk)?,
            uid: rec.uid,
            created_at_ms: rec.created_at_ms,
            keys_issued: rec.issued_at_ms.len(),
        })
    }

    /// Releases the user's key pair to a caller presenting valid evidence.
    pub fn request_user_key(&self, uid: &str, evidence: &str) -> Result<UserKeyPair> {
        let rec = self.store.user(uid)?.ok_or(ServiceError::UnknownUid)?;
        let verifier = hex::decode(&rec.auth_verifier)
            .map_err(|_| ServiceError::Storage("bad verifier encoding".into()))?;
        if !self.auth.check(uid, &verifier, evidence) {
            log::warn!("key request for {uid} failed authentication");
            return Err(ServiceError::AuthFailed);
        }
        let plain = self
            .secrets
            .open(&format!("usk:{uid}"), &unb64(&rec.sealed_usk)?)?;
        let kp = UserKeyPair::from_json(&String::from_utf8_lossy(&plain))?;
        self.store.record_issue(
            uid,
            &AuditEvent {
                actor: uid,
                action: AuditAction::Issue,
                subject_uid: uid,
                target_domain: None,
                purpose: None,
            },
        )?;
        Ok(kp)
    }

    pub fn register_sp(&self, sp_id: &str, trust: Trust, metadata: Value) -> Result<SpRegistration> {
        if !valid_sp_id(sp_id) {
            return Err(ServiceError::BadRequest(
                "sp_id must be 1-64 characters of [A-Za-z0-9-_.]".into(),
            ));
        }
        let kp = scheme::keygen_sp(&self.pp, &self.master.msk, &mut OsRng);
        let custody = (trust == Trust::Trusted).then(|| format!("simulated-hsm:{sp_id}"));
        let record = SpRecord {
            sp_id: sp_id.to_string(),
            sppk: b64(&kp.sppk.to_bytes()),
            trust,
            sealed_spsk: b64(&self.secrets.seal(&format!("spsk:{sp_id}"), &kp.spsk.to_bytes())),
            custody: custody.clone(),
            metadata,
            created_at_ms: now_ms(),
        };
        self.store.insert_sp(&record)?;
        log::info!("registered {trust:?} service provider {sp_id}");
        Ok(SpRegistration {
            sp_id: sp_id.to_string(),
            sppk: kp.sppk,
            trust,
            spsk: (trust == Trust::Trusted).then_some(kp.spsk),
            custody,
        })
    }

    pub fn sp(&self, sp_id: &str) -> Result<SpView> {
        let rec = self.sp_record(sp_id)?;
        Ok(SpView {
            sppk: parse_g1(&rec.sppk)?,
            sp_id: rec.sp_id,
            trust: rec.trust,
        })
    }

    fn sp_record(&self, sp_id: &str) -> Result<SpRecord> {
        self.store
            .sp(sp_id)?
            .ok_or_else(|| ServiceError::UnknownSp(sp_id.to_string()))
    }

    /// A provider's secret key as held in custody by the authority, for the
    /// operator's own tooling. Never part of any API response for a plain
    /// provider.
    pub fn sp_secret_key(&self, sp_id: &str) -> Result<Scalar> {
        self.spsk(&self.sp_record(sp_id)?)
    }

    fn spsk(&self, rec: &SpRecord) -> Result<Scalar> {
        let plain = self
            .secrets
            .open(&format!("spsk:{}", rec.sp_id), &unb64(&rec.sealed_spsk)?)?;
        Ok(Scalar::from_bytes(&plain)?)
    }

    /// The pseudonym of `uid` at `sp_id`, for a provider with a permitted
    /// purpose.
    pub fn compute_pseudonym(&self, sp_id: &str, uid: &str, purpose: &str) -> Result<Pseudonym> {
        let sp = self.sp_record(sp_id)?;
        if !self.config.is_eligible(sp_id, purpose) {
            log::warn!("{sp_id} is not eligible for purpose {purpose:?}");
            return Err(ServiceError::PolicyDenied(format!(
                "{sp_id} may not request pseudonyms for {purpose:?}"
            )));
        }
        let user = self.store.user(uid)?.ok_or(ServiceError::UnknownUid)?;
        let nym = scheme::nymgen_sp(&self.spsk(&sp)?, &self.master.mpk, &parse_g1(&user.upk)?)?;
        self.store.audit(&AuditEvent {
            actor: sp_id,
            action: AuditAction::ComputeNym,
            subject_uid: uid,
            target_domain: Some(sp_id),
            purpose: Some(purpose),
        })?;
        Ok(nym)
    }

    fn check_justification(&self, allowed: &[String], j: &Justification, what: &str) -> Result<()> {
        if allowed.contains(&j.purpose) {
            Ok(())
        } else {
            log::warn!("{what} refused for purpose {:?}", j.purpose);
            Err(ServiceError::PolicyDenied(format!(
                "{:?} does not justify {what}",
                j.purpose
            )))
        }
    }

    fn verified_proof(&self, sppk: &G1Point, nym: &Pseudonym, proof: &[u8]) -> Result<NymProof> {
        let proof = NymProof::from_bytes(proof).map_err(|_| ServiceError::ProofRejected)?;
        if !scheme::nymvf(&self.pp, &self.master.mpk, sppk, nym, &proof) {
            return Err(ServiceError::ProofRejected);
        }
        Ok(proof)
    }

    fn uid_of(&self, upk: &G1Point) -> Result<String> {
        self.store.uid_for_upk(&upk.to_bytes())?.ok_or_else(|| {
            log::warn!("verifying proof opened to an unregistered key");
            ServiceError::UnknownUser
        })
    }

    /// Identifies the user behind a verifying pseudonym presented at
    /// `sp_id`.
    pub fn open_pseudonym(
        &self,
        proof: &[u8],
        nym: &Pseudonym,
        sp_id: &str,
        requester: &str,
        justification: &Justification,
    ) -> Result<String> {
        self.check_justification(&self.config.justifications.open, justification, "opening")?;
        let sppk = parse_g1(&self.sp_record(sp_id)?.sppk)?;
        let proof = self.verified_proof(&sppk, nym, proof)?;
        let uid = self.uid_of(&scheme::open(&proof, &self.master.msk))?;
        self.store.audit(&AuditEvent {
            actor: requester,
            action: AuditAction::Open,
            subject_uid: &uid,
            target_domain: Some(sp_id),
            purpose: Some(&justification.purpose),
        })?;
        Ok(uid)
    }

    /// Translates a verifying pseudonym at `source_sp` into the same user's
    /// pseudonym at `target_sp`.
    pub fn link_pseudonym(
        &self,
        proof: &[u8],
        nym: &Pseudonym,
        source_sp: &str,
        target_sp: &str,
        requester: &str,
        justification: &Justification,
    ) -> Result<Pseudonym> {
        self.check_justification(&self.config.justifications.link, justification, "linking")?;
        let sppk = parse_g1(&self.sp_record(source_sp)?.sppk)?;
        let target = self.sp_record(target_sp)?;
        let parsed = NymProof::from_bytes(proof).map_err(|_| ServiceError::ProofRejected)?;
        let presented = PresentedNym {
            sppk: &sppk,
            nym,
            proof: &parsed,
        };
        let linked = scheme::link(
            &self.pp,
            &self.master,
            presented,
            &self.spsk(&target)?,
            &Registry(&self.store),
        )
        .map_err(|e| match e {
            bpk_core::Error::ProofRejected => ServiceError::ProofRejected,
            bpk_core::Error::UnknownUser => ServiceError::UnknownUser,
            other => other.into(),
        })?;
        let uid = self.uid_of(&scheme::open(&parsed, &self.master.msk))?;
        self.store.audit(&AuditEvent {
            actor: requester,
            action: AuditAction::Link,
            subject_uid: &uid,
            target_domain: Some(target_sp),
            purpose: Some(&justification.purpose),
        })?;
        Ok(linked)
    }

    pub fn audit_log(&self) -> Result<Vec<AuditEntry>> {
        self.store.audit_log()
    }

    /// Public contents of the registry, for inspection.
    pub fn export_json(&self) -> Result<Value> {
        let users: Vec<Value> = self
            .store
            .users()?
            .into_iter()
            .map(|u| {
                json!({
                    "uid": u.uid,
                    "upk": u.upk,
                    "created_at_ms": u.created_at_ms,
                    "keys_issued": u.issued_at_ms.len(),
                })
            })
            .collect();
        let sps: Vec<Value> = self
            .store
            .sps()?
            .into_iter()
            .map(|s| {
                json!({
                    "sp_id": s.sp_id,
                    "sppk": s.sppk,
                    "trust": s.trust,
                    "custody": s.custody,
                    "metadata": s.metadata,
                })
            })
            .collect();
        Ok(json!({
            "params": self.pp.to_envelope(),
            "mpk": self.master.mpk.to_envelope(),
            "users": users,
            "sps": sps,
            "audit": self.audit_log()?,
        }))
    }
}
