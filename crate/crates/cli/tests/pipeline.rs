use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bpk_core::envelope::{b64, Enveloped};
use bpk_core::UserKeyPair;
use serde_json::Value;

fn bpk(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpk"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("bpk runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = bpk(dir, args);
    assert!(
        out.status.success(),
        "bpk {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// setup → keygen → keygen-user → keygen-sp (twice) → nymgen, all seeded.
fn pipeline(dir: &Path) {
    ok(dir, &["setup", "--out", "params.json"]);
    ok(dir, &["keygen", "--params", "params.json", "--seed", "1", "--out", "msk.json", "--mpk", "mpk.json"]);
    ok(dir, &["keygen-user", "--params", "params.json", "--msk", "msk.json", "--seed", "2", "--out", "usk.json"]);
    for (name, seed) in [("a", "3"), ("b", "4")] {
        ok(dir, &[
            "keygen-sp", "--params", "params.json", "--msk", "msk.json", "--seed", seed,
            "--out", &format!("sp-{name}.json"), "--sppk", &format!("sppk-{name}.json"),
        ]);
    }
    for name in ["a", "b"] {
        ok(dir, &[
            "nymgen", "--params", "params.json", "--mpk", "mpk.json", "--usk", "usk.json",
            "--sppk", &format!("sppk-{name}.json"), "--seed", "5",
            "--nym", &format!("nym-{name}.json"), "--out", &format!("proof-{name}.json"),
        ]);
    }
}

fn presented(name: &str) -> Vec<String> {
    ["--params", "params.json", "--mpk", "mpk.json"]
        .into_iter()
        .map(String::from)
        .chain([
            "--sppk".into(),
            format!("sppk-{name}.json"),
            "--nym".into(),
            format!("nym-{name}.json"),
            "--proof".into(),
            format!("proof-{name}.json"),
        ])
        .collect()
}

fn args(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn pipeline_verifies_opens_and_links() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    pipeline(d);

    let mut verify = vec!["verify".to_string()];
    verify.extend(presented("a"));
    assert_eq!(ok(d, &args(&verify)).trim(), "valid");

    let user = UserKeyPair::from_json(&std::fs::read_to_string(d.join("usk.json")).unwrap()).unwrap();
    let mut open = vec!["open".to_string()];
    open.extend(presented("a"));
    open.extend(["--msk".into(), "msk.json".into()]);
    let upk = ok(d, &args(&open));
    assert_eq!(upk.trim(), b64(&user.upk.to_bytes()));

    std::fs::write(d.join("users.txt"), &upk).unwrap();
    let mut link = vec!["link".to_string()];
    link.extend(presented("a"));
    link.extend(["--msk", "msk.json", "--spsk", "sp-b.json", "--users", "users.txt", "--out", "linked.json"].map(String::from));
    ok(d, &args(&link));
    let linked: Value = serde_json::from_str(&std::fs::read_to_string(d.join("linked.json")).unwrap()).unwrap();
    let direct: Value = serde_json::from_str(&std::fs::read_to_string(d.join("nym-b.json")).unwrap()).unwrap();
    assert_eq!(linked, direct);

    // Unregistered users cannot be linked.
    std::fs::write(d.join("users.txt"), "").unwrap();
    assert_eq!(code(&bpk(d, &args(&link))), 1);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    pipeline(first.path());
    pipeline(second.path());
    let mut names: Vec<PathBuf> = std::fs::read_dir(first.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    assert_eq!(names.len(), 12);
    for path in names {
        let name = path.file_name().unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(second.path().join(name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    pipeline(d);

    // Corrupted proof: flip one base64 character inside the proof field.
    let text = std::fs::read_to_string(d.join("proof-a.json")).unwrap();
    let at = text.find("\"proof\": \"").unwrap() + 200;
    let mut bytes = text.into_bytes();
    bytes[at] = if bytes[at] == b'A' { b'B' } else { b'A' };
    std::fs::write(d.join("proof-a.json"), bytes).unwrap();
    let mut verify = vec!["verify".to_string()];
    verify.extend(presented("a"));
    assert_eq!(code(&bpk(d, &args(&verify))), 1);

    // A valid proof shown to the wrong provider.
    let mut crossed = vec!["verify".to_string()];
    crossed.extend(presented("b"));
    crossed[6] = "sppk-a.json".into();
    assert_eq!(code(&bpk(d, &args(&crossed))), 1);

    let missing = bpk(d, &["keygen", "--params", "absent.json"]);
    assert_eq!(code(&missing), 2);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("absent.json"));
    assert_eq!(code(&bpk(d, &["nymgen", "--bogus"])), 2);
    assert_eq!(code(&bpk(d, &["keygen", "--params", "msk.json"])), 2);
    assert_eq!(code(&bpk(d, &["bench", "--iterations", "5"])), 2);
}

#[test]
fn bench_reports_both_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = bpk(dir.path(), &["bench", "--iterations", "10", "--seed", "9"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["iterations"], 10);
    for row in ["nymgen", "nymvf"] {
        assert!(report[row]["mean_ms"].as_f64().unwrap() > 0.0);
        assert!(report[row]["stderr_ms"].as_f64().unwrap() >= 0.0);
    }
    assert_eq!(report["reference"]["nymgen"]["mean_ms"], 4.94);
    assert_eq!(report["reference"]["nymvf"]["mean_ms"], 7.61);
    let table = String::from_utf8(out.stderr).unwrap();
    assert_eq!(table.lines().count(), 3);
}
