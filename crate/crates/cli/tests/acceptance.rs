//! Acceptance suite. Runs each criterion in turn, sequentially so that
//! timings are not disturbed, and prints one PASS or FAIL line for each.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use bpk_authority::{http, Authority, Config};
use bpk_cli::bench;
use bpk_cli::client::ServiceClient;
use bpk_core::batch::{self, item_rng, Presentation};
use bpk_core::envelope::{b64, unb64, Envelope, Enveloped};
use bpk_core::scheme::{self, PresentedNym};
use bpk_core::{
    fixture, G1Point, G2Point, MasterKeyPair, MasterPublicKey, NymProof, Pseudonym, PublicParams,
    Scalar, SpKeyPair, UserKeyPair,
};
use bpk_harness::adversaries::{anonymity_battery, non_frameability_battery};
use bpk_harness::{anonymity_trials, non_frameability_trials};
use serde_json::json;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const USERS: usize = 20;
const SPS: usize = 10;

struct Grid {
    pp: PublicParams,
    master: MasterKeyPair,
    users: Vec<UserKeyPair>,
    sps: Vec<SpKeyPair>,
    /// Row-major by user.
    cells: Vec<Presentation>,
}

static GRID: OnceLock<Grid> = OnceLock::new();

fn grid() -> &'static Grid {
    GRID.get_or_init(|| {
        let pp = scheme::setup(scheme::SECURITY_LEVEL, b"acceptance").unwrap();
        let mut rng = item_rng(0xacce, 0);
        let master = scheme::keygen(&pp, &mut rng);
        let users: Vec<_> = (0..USERS)
            .map(|_| scheme::keygen_user(&pp, &master.msk, &mut rng).unwrap())
            .collect();
        let sps: Vec<_> = (0..SPS)
            .map(|_| scheme::keygen_sp(&pp, &master.msk, &mut rng))
            .collect();
        let usks: Vec<_> = users.iter().map(|u| u.usk.clone()).collect();
        let sppks: Vec<_> = sps.iter().map(|s| s.sppk).collect();
        let cells = batch::nymgen_grid(&pp, &master.mpk, &usks, &sppks, 0xacce).unwrap();
        Grid {
            pp,
            master,
            users,
            sps,
            cells,
        }
    })
}

fn commutativity() -> Verdict {
    let start = Instant::now();
    let g = grid();
    let mut agree = 0;
    for (i, user) in g.users.iter().enumerate() {
        for (j, sp) in g.sps.iter().enumerate() {
            let provider_side = scheme::nymgen_sp(&sp.spsk, &g.master.mpk, &user.upk).unwrap();
            agree += (g.cells[i * SPS + j].nym == provider_side) as usize;
        }
    }
    let elapsed = start.elapsed();
    ensure(agree == USERS * SPS, || format!("{agree}/200 pseudonyms agree"))?;
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:.1?}, limit 30 s")
    })?;
    Ok(format!("200/200 agree in {elapsed:.2?} (limit 30 s)"))
}

fn completeness() -> Verdict {
    let g = grid();
    let ok = batch::verify_all(&g.pp, &g.master.mpk, &g.cells)
        .into_iter()
        .filter(|v| *v)
        .count();
    ensure(ok == g.cells.len(), || format!("{ok}/{} verify", g.cells.len()))?;
    Ok(format!("{ok}/{} honest proofs verify", g.cells.len()))
}

/// One altered input to the verifier.
struct Case {
    mpk: MasterPublicKey,
    sppk: G1Point,
    nym: Pseudonym,
    proof: NymProof,
}

const STATEMENT_MUTATIONS: [&str; 10] = [
    "mpk_sig", "mpk_enc", "sppk", "nym", "c1", "c2", "r_hat", "s", "t", "upk'",
];
const TRANSCRIPT_MUTATIONS: [&str; 6] = ["c", "z_r", "z_s", "z_usk", "z_alpha", "z_beta"];

fn mutate(g: &Grid, cell: &Presentation, field: &str, rng: &mut rand_chacha::ChaCha20Rng) -> Case {
    let mut c = Case {
        mpk: g.master.mpk,
        sppk: cell.sppk,
        nym: cell.nym,
        proof: cell.proof,
    };
    let p = &mut c.proof;
    let tr = &mut p.transcript;
    let g1 = G1Point::random(rng);
    let g2 = G2Point::random(rng);
    let z = Scalar::random(rng);
    match field {
        "mpk_sig" => c.mpk.sig = g2,
        "mpk_enc" => c.mpk.enc = g1,
        "sppk" => c.sppk = g1,
        "nym" => c.nym = Pseudonym(g1),
        "c1" => p.ciphertext.c1 = g1,
        "c2" => p.ciphertext.c2 = g1,
        "r_hat" => p.r_hat = g2,
        "s" => p.s = g1,
        "t" => p.t = g1,
        "upk'" => p.blinded_upk = g1,
        "c" => tr.challenge = z,
        "z_r" => tr.z_r = z,
        "z_s" => tr.z_s = z,
        "z_usk" => tr.z_usk = z,
        "z_alpha" => tr.z_alpha = z,
        "z_beta" => tr.z_beta = z,
        other => unreachable!("{other}"),
    }
    c
}

fn tamper_suite() -> Verdict {
    const PROOFS: usize = 100;
    let g = grid();
    let fields: Vec<&str> = STATEMENT_MUTATIONS
        .iter()
        .chain(TRANSCRIPT_MUTATIONS.iter())
        .copied()
        .collect();
    let cases = PROOFS * fields.len();
    let accepted = batch::map_indexed(cases, 0x7a3b, |i, rng| {
        let cell = &g.cells[(i / fields.len()) * g.cells.len() / PROOFS];
        let field = fields[i % fields.len()];
        let c = mutate(g, cell, field, rng);
        scheme::nymvf(&g.pp, &c.mpk, &c.sppk, &c.nym, &c.proof).then_some(field)
    });
    let accepted: Vec<_> = accepted.into_iter().flatten().collect();
    ensure(cases >= 1500, || format!("only {cases} cases"))?;
    ensure(accepted.is_empty(), || {
        format!("{} of {cases} tampered inputs accepted: {accepted:?}", accepted.len())
    })?;
    Ok(format!(
        "{cases}/{cases} rejected ({} statement + {} transcript mutations x {PROOFS} proofs)",
        STATEMENT_MUTATIONS.len(),
        TRANSCRIPT_MUTATIONS.len()
    ))
}

fn open_and_link() -> Verdict {
    let g = grid();
    let opened = g
        .cells
        .iter()
        .enumerate()
        .filter(|(k, cell)| scheme::open(&cell.proof, &g.master.msk) == g.users[k / SPS].upk)
        .count();
    ensure(opened == g.cells.len(), || format!("open recovered {opened}/200"))?;

    let registry: HashSet<G1Point> = g.users.iter().map(|u| u.upk).collect();
    let mut linked = 0;
    for k in 0..50 {
        let user = k % USERS;
        let src = (k + k / USERS) % SPS;
        let dst = (src + 1 + k % (SPS - 1)) % SPS;
        let cell = &g.cells[user * SPS + src];
        let presented = PresentedNym {
            sppk: &cell.sppk,
            nym: &cell.nym,
            proof: &cell.proof,
        };
        let nym = scheme::link(&g.pp, &g.master, presented, &g.sps[dst].spsk, &registry)
            .map_err(|e| format!("link {user}:{src}->{dst}: {e}"))?;
        linked += (nym == g.cells[user * SPS + dst].nym) as usize;
    }
    ensure(linked == 50, || format!("link matched {linked}/50"))?;
    Ok("open recovered 200/200 keys; link matched 50/50 user-side pseudonyms".into())
}

fn benchmarks() -> Verdict {
    let report = bench::run(100, &mut item_rng(0xbe7c, 0)).map_err(|e| e.to_string())?;
    for line in report.table().lines() {
        println!("    {line}");
    }
    let detail = format!(
        "nymgen {:.2} ± {:.2} ms (limit 25; reference {:.2} ± {:.2}), \
         nymvf {:.2} ± {:.2} ms (limit 40; reference {:.2} ± {:.2})",
        report.nymgen.mean_ms,
        report.nymgen.stderr_ms,
        report.reference.nymgen.mean_ms,
        report.reference.nymgen.stderr_ms,
        report.nymvf.mean_ms,
        report.nymvf.stderr_ms,
        report.reference.nymvf.mean_ms,
        report.reference.nymvf.stderr_ms,
    );
    ensure(report.nymgen.mean_ms <= 25.0 && report.nymvf.mean_ms <= 40.0, || detail.clone())?;
    Ok(detail)
}

fn security_games() -> Verdict {
    const TRIALS: usize = 1000;
    let start = Instant::now();
    let mut failures = Vec::new();

    let pp = scheme::setup(scheme::SECURITY_LEVEL, b"non-frameability").unwrap();
    for (i, make) in non_frameability_battery().into_iter().enumerate() {
        let t = non_frameability_trials(&pp, make, TRIALS, 0x5eed + i as u64);
        println!(
            "    non-frameability {:<22} {} trials, win rate {:.3}",
            t.adversary,
            t.trials,
            t.win_rate()
        );
        if t.wins != 0 {
            failures.push(format!("{} won {} times", t.adversary, t.wins));
        }
    }

    let pp = scheme::setup(scheme::SECURITY_LEVEL, b"anonymity").unwrap();
    for (i, make) in anonymity_battery().into_iter().enumerate() {
        let t = anonymity_trials(&pp, make, TRIALS, 0xa707 + i as u64);
        let rate = t.guess_rate();
        println!(
            "    anonymity        {:<22} {} trials, guess rate {rate:.3}",
            t.adversary, t.trials
        );
        if !(0.45..=0.55).contains(&rate) || t.violating_runs != 0 {
            failures.push(format!(
                "{}: guess rate {rate:.3}, {} constraint violations",
                t.adversary, t.violating_runs
            ));
        }
    }

    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        failures.push(format!("took {elapsed:.0?}, limit 10 min"));
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{TRIALS} trials per adversary, no forgery, guess rates within [0.45, 0.55], {elapsed:.0?}"
    ))
}

fn service_flow() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut config: Config = serde_json::from_value(json!({
        "eligibility": {"tax": ["assessment"]},
    }))
    .unwrap();
    config.data = dir.path().join("registry.redb");
    let authority = Arc::new(Authority::open(config, b"acceptance").map_err(|e| e.to_string())?);
    let runtime = tokio::runtime::Runtime::new().unwrap();
    let listener = runtime
        .block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))
        .map_err(|e| e.to_string())?;
    let url = format!("http://{}", listener.local_addr().unwrap());
    std::thread::spawn(move || runtime.block_on(http::serve(authority, listener)));

    let client = ServiceClient::new(&url);
    let fail = |e: bpk_cli::CliError| e.to_string();
    let params = client.params().map_err(fail)?;
    let envelope = |v: &serde_json::Value| -> Envelope { serde_json::from_value(v.clone()).unwrap() };
    let pp = PublicParams::from_envelope(&envelope(&params["params"])).map_err(|e| e.to_string())?;
    let mpk = MasterPublicKey::from_envelope(&envelope(&params["mpk"])).map_err(|e| e.to_string())?;

    let reg = client
        .register_user(json!({"id_number": "acceptance-1"}))
        .map_err(fail)?;
    let uid = reg["uid"].as_str().unwrap();
    let key = client
        .request_key(uid, reg["enrollment_token"].as_str().unwrap())
        .map_err(fail)?;
    let user = UserKeyPair::from_envelope(&envelope(&key["user_key"])).map_err(|e| e.to_string())?;
    let sp = client.register_sp("tax", false, json!({})).map_err(fail)?;
    let sppk = G1Point::from_bytes(&unb64(sp["sppk"].as_str().unwrap()).unwrap()).unwrap();

    let (nym, proof) = scheme::nymgen_user(&pp, &user.usk, &mpk, &sppk, &mut item_rng(7, 7))
        .map_err(|e| e.to_string())?;
    ensure(scheme::nymvf(&pp, &mpk, &sppk, &nym, &proof), || {
        "provider rejected the user's proof".into()
    })?;
    let from_ca = client.pseudonym("tax", uid, "assessment").map_err(fail)?;
    ensure(from_ca["nym"] == b64(&nym.0.to_bytes()), || {
        format!("authority returned {}, user computed {}", from_ca["nym"], b64(&nym.0.to_bytes()))
    })?;
    Ok("register, key request, local nymgen, provider verify, authority pseudonym: values match".into())
}

fn golden_files() -> Verdict {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden");
    let fx = fixture::build().map_err(|e| e.to_string())?;
    let files = fx.files();
    let mut differing = Vec::new();
    for (name, contents) in &files {
        let on_disk = std::fs::read_to_string(dir.join(name)).unwrap_or_default();
        if on_disk != *contents {
            differing.push(*name);
        }
    }
    ensure(differing.is_empty(), || format!("differ: {differing:?}"))?;

    let bytes = hex::decode(std::fs::read_to_string(dir.join("proof.hex")).unwrap().trim())
        .map_err(|e| e.to_string())?;
    ensure(bytes.len() == 528, || format!("proof is {} bytes", bytes.len()))?;
    let p = &fx.proof;
    let tr = &p.transcript;
    let mut layout: Vec<Vec<u8>> = vec![
        p.ciphertext.c1.to_bytes().to_vec(),
        p.ciphertext.c2.to_bytes().to_vec(),
        p.r_hat.to_bytes().to_vec(),
        p.s.to_bytes().to_vec(),
        p.t.to_bytes().to_vec(),
        p.blinded_upk.to_bytes().to_vec(),
    ];
    for z in [tr.challenge, tr.z_r, tr.z_s, tr.z_usk, tr.z_alpha, tr.z_beta] {
        layout.push(z.to_bytes().to_vec());
    }
    ensure(layout.concat() == bytes, || "proof layout differs".into())?;
    let proof = NymProof::from_bytes(&bytes).map_err(|e| e.to_string())?;
    ensure(
        scheme::nymvf(&fx.pp, &fx.master.mpk, &fx.sp.sppk, &fx.nym, &proof),
        || "golden proof does not verify".into(),
    )?;
    Ok(format!(
        "{} files byte-identical, 528-byte proof layout pinned",
        files.len()
    ))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [Criterion; 8] = [
        ("commutativity grid", commutativity),
        ("honest proofs verify", completeness),
        ("tamper suite", tamper_suite),
        ("open and link", open_and_link),
        ("benchmarks", benchmarks),
        ("security games", security_games),
        ("service end-to-end", service_flow),
        ("golden files", golden_files),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{took:.1?}]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} [{took:.1?}]", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
