//! The registry file.
//!
//! A single redb database. Write transactions are serialized by redb and
//! commit atomically, so uniqueness checks and the writes they guard happen
//! in one step.

use std::path::Path;

use redb::{Database, ReadableTable, TableDefinition};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Result, ServiceError};
use crate::records::{AuditAction, AuditEntry, SpRecord, UserRecord};

const META: TableDefinition<&str, &[u8]> = TableDefinition::new("meta");
const USERS: TableDefinition<&str, &[u8]> = TableDefinition::new("users");
const UPK_INDEX: TableDefinition<&[u8], &str> = TableDefinition::new("upk_index");
const IDENTITIES: TableDefinition<&[u8], &str> = TableDefinition::new("identities");
const SPS: TableDefinition<&str, &[u8]> = TableDefinition::new("sps");
const AUDIT: TableDefinition<u64, &[u8]> = TableDefinition::new("audit");

pub struct Store {
    db: Database,
}

fn decode<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    Ok(serde_json::from_slice(bytes)?)
}

fn encode<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    Ok(serde_json::to_vec(value)?)
}

/// What an audit entry records, before it is numbered and timestamped.
pub struct AuditEvent<'a> {
    pub actor: &'a str,
    pub action: AuditAction,
    pub subject_uid: &'a str,
    pub target_domain: Option<&'a str>,
    pub purpose: Option<&'a str>,
}

fn append_audit(txn: &redb::WriteTransaction, event: &AuditEvent<'_>) -> Result<AuditEntry> {
    let mut table = txn.open_table(AUDIT)?;
    let seq = match table.last()? {
        Some((k, _)) => k.value() + 1,
        None => 1,
    };
    let entry = AuditEntry {
        seq,
        timestamp_ms: crate::records::now_ms(),
        actor: event.actor.to_string(),
        action: event.action,
        subject_uid: event.subject_uid.to_string(),
        target_domain: event.target_domain.map(str::to_string),
        purpose: event.purpose.map(str::to_string),
    };
    table.insert(seq, encode(&entry)?.as_slice())?;
    Ok(entry)
}

impl Store {
    pub fn open(path: &Path) -> Result<Self> {
        let db = Database::create(path)?;
        let txn = db.begin_write()?;
        txn.open_table(META)?;
        txn.open_table(USERS)?;
        txn.open_table(UPK_INDEX)?;
        txn.open_table(IDENTITIES)?;
        txn.open_table(SPS)?;
        txn.open_table(AUDIT)?;
        txn.commit()?;
        Ok(Store { db })
    }

    pub fn meta(&self, key: &str) -> Result<Option<Vec<u8>>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(META)?;
        Ok(table.get(key)?.map(|v| v.value().to_vec()))
    }

    /// Stores all `entries` unless `guard` already exists; returns whether
    /// they were written.
    pub fn init_meta(&self, guard: &str, entries: &[(&str, &[u8])]) -> Result<bool> {
        let txn = self.db.begin_write()?;
        {
            let mut table = txn.open_table(META)?;
            if table.get(guard)?.is_some() {
                return Ok(false);
            }
            for (k, v) in entries {
                table.insert(*k, *v)?;
            }
        }
        txn.commit()?;
        Ok(true)
    }

    pub fn insert_user(&self, record: &UserRecord, upk: &[u8], identity: &[u8]) -> Result<()> {
        let txn = self.db.begin_write()?;
        {
            let mut identities = txn.open_table(IDENTITIES)?;
            let mut upks = txn.open_table(UPK_INDEX)?;
            let mut users = txn.open_table(USERS)?;
            if identities.get(identity)?.is_some() || upks.get(upk)?.is_some() {
                return Err(ServiceError::DuplicateRegistration);
            }
            if users.get(record.uid.as_str())?.is_some() {
                return Err(ServiceError::Storage("uid collision".into()));
            }
            identities.insert(identity, record.uid.as_str())?;
            upks.insert(upk, record.uid.as_str())?;
            users.insert(record.uid.as_str(), encode(record)?.as_slice())?;
        }
        txn.commit()?;
        Ok(())
    }

    pub fn user(&self, uid: &str) -> Result<Option<UserRecord>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(USERS)?;
        table.get(uid)?.map(|v| decode(v.value())).transpose()
    }

    pub fn uid_for_upk(&self, upk: &[u8]) -> Result<Option<String>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(UPK_INDEX)?;
        Ok(table.get(upk)?.map(|v| v.value().to_string()))
    }

    /// Appends a release time to the user's record and audits it, in one
    /// transaction.
    pub fn record_issue(&self, uid: &str, event: &AuditEvent<'_>) -> Result<AuditEntry> {
        let txn = self.db.begin_write()?;
        let entry = {
            let mut users = txn.open_table(USERS)?;
            let mut record: UserRecord = match users.get(uid)? {
                Some(v) => decode(v.value())?,
                None => return Err(ServiceError::UnknownUid),
            };
            let entry = append_audit(&txn, event)?;
            record.issued_at_ms.push(entry.timestamp_ms);
            users.insert(uid, encode(&record)?.as_slice())?;
            entry
        };
        txn.commit()?;
        Ok(entry)
    }

    pub fn insert_sp(&self, record: &SpRecord) -> Result<()> {
        let txn = self.db.begin_write()?;
        {
            let mut sps = txn.open_table(SPS)?;
            if sps.get(record.sp_id.as_str())?.is_some() {
                return Err(ServiceError::SpIdTaken(record.sp_id.clone()));
            }
            sps.insert(record.sp_id.as_str(), encode(record)?.as_slice())?;
        }
        txn.commit()?;
        Ok(())
    }

    pub fn sp(&self, sp_id: &str) -> Result<Option<SpRecord>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(SPS)?;
        table.get(sp_id)?.map(|v| decode(v.value())).transpose()
    }

    pub fn audit(&self, event: &AuditEvent<'_>) -> Result<AuditEntry> {
        let txn = self.db.begin_write()?;
        let entry = append_audit(&txn, event)?;
        txn.commit()?;
        Ok(entry)
    }

    pub fn audit_log(&self) -> Result<Vec<AuditEntry>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(AUDIT)?;
        table.iter()?.map(|item| decode(item?.1.value())).collect()
    }

    pub fn users(&self) -> Result<Vec<UserRecord>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(USERS)?;
        table.iter()?.map(|item| decode(item?.1.value())).collect()
    }

    pub fn sps(&self) -> Result<Vec<SpRecord>> {
        let txn = self.db.begin_read()?;
        let table = txn.open_table(SPS)?;
        table.iter()?.map(|item| decode(item?.1.value())).collect()
    }
}
