mod common;

use std::collections::HashSet;
use std::sync::Arc;

use bpk_authority::{AuditAction, Authority, ServiceError, Trust};
use bpk_core::scheme;
use common::{authority, justification, PASSPHRASE};
use rand::rngs::OsRng;
use serde_json::json;

fn alice() -> serde_json::Value {
    json!({"name": "Alice Example", "birth_date": "1990-02-03", "id_number": "A123"})
}

fn count(a: &Authority, action: AuditAction) -> usize {
    a.audit_log()
        .unwrap()
        .iter()
        .filter(|e| e.action == action)
        .count()
}

#[test]
fn registered_user_is_visible_without_secret() {
    let (_dir, a) = authority();
    let reg = a.register_user(&alice()).unwrap();
    let view = a.user(&reg.uid).unwrap();
    assert_eq!(view.upk, reg.upk);
    assert_eq!(view.keys_issued, 0);
    assert!(matches!(a.user("u-missing"), Err(ServiceError::UnknownUid)));
}

#[test]
fn duplicate_identity_is_rejected_regardless_of_attribute_order() {
    let (_dir, a) = authority();
    a.register_user(&alice()).unwrap();
    let reordered = json!({"id_number": "A123", "name": "Alice Example", "birth_date": "1990-02-03"});
    assert!(matches!(
        a.register_user(&reordered),
        Err(ServiceError::DuplicateRegistration)
    ));
    assert!(matches!(
        a.register_user(&json!({})),
        Err(ServiceError::BadRequest(_))
    ));
}

#[test]
fn issued_key_matches_the_registry_and_verifies() {
    let (_dir, a) = authority();
    let reg = a.register_user(&alice()).unwrap();
    let kp = a.request_user_key(&reg.uid, &reg.enrollment_token).unwrap();
    assert_eq!(kp.upk, reg.upk);
    kp.check(a.pp(), a.mpk()).unwrap();
    assert_eq!(a.user(&reg.uid).unwrap().keys_issued, 1);
    assert_eq!(count(&a, AuditAction::Issue), 1);

    let sp = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
    let (nym, proof) = scheme::nymgen_user(a.pp(), &kp.usk, a.mpk(), &sp.sppk, &mut OsRng).unwrap();
    assert!(scheme::nymvf(a.pp(), a.mpk(), &sp.sppk, &nym, &proof));
}

#[test]
fn bad_evidence_is_denied_without_issue_entry() {
    let (_dir, a) = authority();
    let reg = a.register_user(&alice()).unwrap();
    assert!(matches!(
        a.request_user_key(&reg.uid, "not the token"),
        Err(ServiceError::AuthFailed)
    ));
    assert!(matches!(
        a.request_user_key("u-missing", &reg.enrollment_token),
        Err(ServiceError::UnknownUid)
    ));
    assert_eq!(count(&a, AuditAction::Issue), 0);
    assert_eq!(a.user(&reg.uid).unwrap().keys_issued, 0);
}

#[test]
fn provider_classes_and_collisions() {
    let (_dir, a) = authority();
    let plain = a.register_sp("tax", Trust::Plain, json!({"name": "Tax office"})).unwrap();
    assert!(plain.spsk.is_none() && plain.custody.is_none());
    assert!(matches!(
        a.register_sp("tax", Trust::Trusted, json!({})),
        Err(ServiceError::SpIdTaken(_))
    ));
    assert!(matches!(
        a.register_sp("bad id!", Trust::Plain, json!({})),
        Err(ServiceError::BadRequest(_))
    ));

    let trusted = a.register_sp("health", Trust::Trusted, json!({})).unwrap();
    let spsk = trusted.spsk.expect("trusted providers receive their key");
    assert!(trusted.custody.unwrap().contains("health"));

    // A trusted provider computes the same pseudonym the authority would.
    let reg = a.register_user(&alice()).unwrap();
    let local = scheme::nymgen_sp(&spsk, a.mpk(), &reg.upk).unwrap();
    assert_eq!(local, a.compute_pseudonym("health", &reg.uid, "treatment").unwrap());
    assert_eq!(a.sp("health").unwrap().sppk, trusted.sppk);
}

#[test]
fn computed_pseudonym_agrees_with_the_user() {
    let (_dir, a) = authority();
    let reg = a.register_user(&alice()).unwrap();
    let kp = a.request_user_key(&reg.uid, &reg.enrollment_token).unwrap();
    let sp = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
    let (nym, _) = scheme::nymgen_user(a.pp(), &kp.usk, a.mpk(), &sp.sppk, &mut OsRng).unwrap();

    let before = count(&a, AuditAction::ComputeNym);
    assert_eq!(a.compute_pseudonym("tax", &reg.uid, "refund").unwrap(), nym);
    assert_eq!(count(&a, AuditAction::ComputeNym), before + 1);

    assert!(matches!(
        a.compute_pseudonym("tax", &reg.uid, "marketing"),
        Err(ServiceError::PolicyDenied(_))
    ));
    assert!(matches!(
        a.compute_pseudonym("tax", "u-missing", "refund"),
        Err(ServiceError::UnknownUid)
    ));
    assert!(matches!(
        a.compute_pseudonym("police", &reg.uid, "refund"),
        Err(ServiceError::UnknownSp(_))
    ));
    assert_eq!(count(&a, AuditAction::ComputeNym), before + 1);
}

#[test]
fn opening_identifies_the_user() {
    let (_dir, a) = authority();
    let reg = a.register_user(&alice()).unwrap();
    let kp = a.request_user_key(&reg.uid, &reg.enrollment_token).unwrap();
    let sp = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
    let (nym, proof) = scheme::nymgen_user(a.pp(), &kp.usk, a.mpk(), &sp.sppk, &mut OsRng).unwrap();
    let bytes = proof.to_bytes();
    let court = justification("court-order");

    assert_eq!(a.open_pseudonym(&bytes, &nym, "tax", "court", &court).unwrap(), reg.uid);
    let entry = a.audit_log().unwrap().pop().unwrap();
    assert_eq!(entry.action, AuditAction::Open);
    assert_eq!(entry.subject_uid, reg.uid);
    assert_eq!(entry.actor, "court");

    let mut tampered = bytes;
    tampered[500] ^= 1;
    assert!(matches!(
        a.open_pseudonym(&tampered, &nym, "tax", "court", &court),
        Err(ServiceError::ProofRejected)
    ));
    assert!(matches!(
        a.open_pseudonym(&bytes[..100], &nym, "tax", "court", &court),
        Err(ServiceError::ProofRejected)
    ));
    assert!(matches!(
        a.open_pseudonym(&bytes, &nym, "tax", "court", &justification("curiosity")),
        Err(ServiceError::PolicyDenied(_))
    ));
    assert_eq!(count(&a, AuditAction::Open), 1);
}

#[test]
fn opening_an_unregistered_key_reports_unknown_user() {
    let (_dir, a) = authority();
    a.register_user(&alice()).unwrap();
    let sp = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
    // A valid credential that never went through registration.
    let stray = scheme::keygen_user(a.pp(), &a.master_key().msk, &mut OsRng).unwrap();
    let (nym, proof) = scheme::nymgen_user(a.pp(), &stray.usk, a.mpk(), &sp.sppk, &mut OsRng).unwrap();
    let court = justification("court-order");
    assert!(matches!(
        a.open_pseudonym(&proof.to_bytes(), &nym, "tax", "court", &court),
        Err(ServiceError::UnknownUser)
    ));
    assert!(matches!(
        a.link_pseudonym(
            &proof.to_bytes(),
            &nym,
            "tax",
            "tax",
            "court",
            &justification("data-sharing-agreement")
        ),
        Err(ServiceError::UnknownUser)
    ));
    assert_eq!(count(&a, AuditAction::Open) + count(&a, AuditAction::Link), 0);
}

#[test]
fn linking_translates_between_domains() {
    let (_dir, a) = authority();
    let reg = a.register_user(&alice()).unwrap();
    let kp = a.request_user_key(&reg.uid, &reg.enrollment_token).unwrap();
    let tax = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
    let health = a.register_sp("health", Trust::Plain, json!({})).unwrap();
    let (nym, proof) = scheme::nymgen_user(a.pp(), &kp.usk, a.mpk(), &tax.sppk, &mut OsRng).unwrap();
    let (at_health, _) =
        scheme::nymgen_user(a.pp(), &kp.usk, a.mpk(), &health.sppk, &mut OsRng).unwrap();
    let bytes = proof.to_bytes();
    let dsa = justification("data-sharing-agreement");

    let linked = a.link_pseudonym(&bytes, &nym, "tax", "health", "tax", &dsa).unwrap();
    assert_eq!(linked, at_health);
    let same = a.link_pseudonym(&bytes, &nym, "tax", "tax", "tax", &dsa).unwrap();
    assert_eq!(same, nym);

    assert!(matches!(
        a.link_pseudonym(&bytes, &nym, "tax", "health", "tax", &justification("court-order")),
        Err(ServiceError::PolicyDenied(_))
    ));
    assert!(matches!(
        a.link_pseudonym(&bytes, &at_health, "tax", "health", "tax", &dsa),
        Err(ServiceError::ProofRejected)
    ));
    assert!(matches!(
        a.link_pseudonym(&bytes, &nym, "tax", "police", "tax", &dsa),
        Err(ServiceError::UnknownSp(_))
    ));
    let links: Vec<_> = a
        .audit_log()
        .unwrap()
        .into_iter()
        .filter(|e| e.action == AuditAction::Link)
        .collect();
    assert_eq!(links.len(), 2);
    assert_eq!(links[0].target_domain.as_deref(), Some("health"));
    assert_eq!(links[0].subject_uid, reg.uid);
}

#[test]
fn registry_survives_restart_and_needs_the_passphrase() {
    let dir = tempfile::tempdir().unwrap();
    let (uid, mpk, sppk) = {
        let a = Authority::open(common::config(&dir), PASSPHRASE).unwrap();
        let reg = a.register_user(&alice()).unwrap();
        let sp = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
        (reg.uid, *a.mpk(), sp.sppk)
    };
    assert!(matches!(
        Authority::open(common::config(&dir), b"wrong"),
        Err(ServiceError::Sealing(_))
    ));
    let a = Authority::open(common::config(&dir), PASSPHRASE).unwrap();
    assert_eq!(*a.mpk(), mpk);
    assert_eq!(a.sp("tax").unwrap().sppk, sppk);
    let user = a.user(&uid).unwrap();
    let nym = a.compute_pseudonym("tax", &uid, "assessment").unwrap();
    assert_eq!(nym, scheme::nymgen_sp(&a.sp_secret_key("tax").unwrap(), &mpk, &user.upk).unwrap());
}

#[test]
fn concurrent_registrations_keep_the_registry_bijective() {
    let (_dir, a) = authority();
    let a = Arc::new(a);
    let threads: Vec<_> = (0..6)
        .map(|t| {
            let a = Arc::clone(&a);
            std::thread::spawn(move || {
                let mut outcomes = Vec::new();
                for i in 0..4 {
                    outcomes.push(a.register_user(&json!({"id_number": format!("{t}-{i}")})));
                }
                // Every thread also races for one shared identity.
                outcomes.push(a.register_user(&json!({"id_number": "shared"})));
                outcomes
            })
        })
        .collect();
    let outcomes: Vec<_> = threads.into_iter().flat_map(|t| t.join().unwrap()).collect();

    let duplicates = outcomes
        .iter()
        .filter(|o| matches!(o, Err(ServiceError::DuplicateRegistration)))
        .count();
    let registered: Vec<_> = outcomes.into_iter().filter_map(Result::ok).collect();
    assert_eq!(duplicates, 5);
    assert_eq!(registered.len(), 25);
    let uids: HashSet<_> = registered.iter().map(|r| r.uid.clone()).collect();
    let upks: HashSet<_> = registered.iter().map(|r| r.upk).collect();
    assert_eq!((uids.len(), upks.len()), (25, 25));
    for r in &registered {
        assert_eq!(a.user(&r.uid).unwrap().upk, r.upk);
    }
}

#[test]
fn audit_counts_exactly_the_successful_privileged_calls() {
    let (_dir, a) = authority();
    let tax = a.register_sp("tax", Trust::Plain, json!({})).unwrap();
    a.register_sp("health", Trust::Plain, json!({})).unwrap();
    let mut successes = 0;
    for i in 0..3 {
        let reg = a.register_user(&json!({"id_number": i})).unwrap();
        let kp = a.request_user_key(&reg.uid, &reg.enrollment_token).unwrap();
        let (nym, proof) =
            scheme::nymgen_user(a.pp(), &kp.usk, a.mpk(), &tax.sppk, &mut OsRng).unwrap();
        let bytes = proof.to_bytes();
        let attempts = [
            a.compute_pseudonym("tax", &reg.uid, "refund").map(drop),
            a.compute_pseudonym("tax", &reg.uid, "gossip").map(drop),
            a.compute_pseudonym("health", &reg.uid, "treatment").map(drop),
            a.open_pseudonym(&bytes, &nym, "tax", "court", &justification("court-order")).map(drop),
            a.open_pseudonym(&bytes, &nym, "health", "court", &justification("court-order")).map(drop),
            a.link_pseudonym(&bytes, &nym, "tax", "health", "tax", &justification("data-sharing-agreement")).map(drop),
            a.link_pseudonym(&bytes, &nym, "tax", "health", "tax", &justification("whim")).map(drop),
        ];
        successes += attempts.iter().filter(|r| r.is_ok()).count();
    }
    let privileged = count(&a, AuditAction::ComputeNym)
        + count(&a, AuditAction::Open)
        + count(&a, AuditAction::Link);
    assert_eq!(successes, 12);
    assert_eq!(privileged, successes);

    let seqs: Vec<u64> = a.audit_log().unwrap().iter().map(|e| e.seq).collect();
    assert!(seqs.windows(2).all(|w| w[1] == w[0] + 1));
}
