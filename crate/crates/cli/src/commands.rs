//! Subcommand definitions and their execution.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use bpk_core::envelope::{b64, unb64, Envelope, Enveloped, PseudonymRecord, SpPublicKey};
use bpk_core::scheme::{self, PresentedNym};
use bpk_core::{G1Point, MasterKeyPair, MasterPublicKey, NymProof, PublicParams, SpKeyPair, UserKeyPair};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::{json, Value};

use crate::bench;
use crate::client::ServiceClient;
use crate::error::{CliError, Result};
use crate::files;

#[derive(Parser, Debug)]
#[command(name = "bpk", version, about = "Delegatable sector-specific pseudonyms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Derive public parameters from a label.
    Setup {
        /// Label the group generators are hashed from.
        #[arg(long, default_value = scheme::VERSION)]
        label: String,
        #[arg(long, default_value_t = scheme::SECURITY_LEVEL)]
        security_level: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the authority's master key pair.
    Keygen {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Master key pair (secret).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to also write the master public key.
        #[arg(long)]
        mpk: Option<PathBuf>,
    },
    /// Issue a user key pair.
    KeygenUser {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        msk: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a service provider key pair.
    KeygenSp {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        msk: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Provider key pair (secret).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to also write the provider's public key.
        #[arg(long)]
        sppk: Option<PathBuf>,
    },
    /// Compute a pseudonym and its proof as the user.
    Nymgen {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        mpk: PathBuf,
        #[arg(long)]
        usk: PathBuf,
        #[arg(long)]
        sppk: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the pseudonym.
        #[arg(long)]
        nym: PathBuf,
        /// Where to write the proof.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a pseudonym proof. Exits 1 if it does not verify.
    Verify(Presented),
    /// Recover the user public key behind a verifying proof.
    Open {
        #[command(flatten)]
        presented: Presented,
        #[arg(long)]
        msk: PathBuf,
        /// Where to write the base64 user public key.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a verifying pseudonym into another provider's domain.
    Link {
        #[command(flatten)]
        presented: Presented,
        #[arg(long)]
        msk: PathBuf,
        /// Key pair of the target provider.
        #[arg(long)]
        spsk: PathBuf,
        /// Registered user public keys, one base64 key per line.
        #[arg(long)]
        users: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time pseudonym generation and verification.
    Bench {
        #[arg(long, default_value_t = 100)]
        iterations: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the JSON report; standard output otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Talk to a running authority.
    Service {
        #[arg(long, env = "BPK_SERVICE_URL", default_value = "http://127.0.0.1:8700")]
        service_url: String,
        #[command(subcommand)]
        request: ServiceRequest,
    },
}

/// A pseudonym as presented at a provider.
#[derive(Args, Debug)]
pub struct Presented {
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub mpk: PathBuf,
    /// Public key of the provider the pseudonym was presented to.
    #[arg(long)]
    pub sppk: PathBuf,
    #[arg(long)]
    pub nym: PathBuf,
    #[arg(long)]
    pub proof: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum ServiceRequest {
    /// Fetch the public parameters and master public key.
    Params {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        mpk: Option<PathBuf>,
    },
    RegisterUser {
        /// Identity attributes as a JSON object.
        #[arg(long)]
        attributes: String,
    },
    RequestKey {
        #[arg(long)]
        uid: String,
        #[arg(long)]
        token: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    RegisterSp {
        #[arg(long)]
        sp_id: String,
        #[arg(long)]
        trusted: bool,
        /// Where to write the public key (and, for trusted providers, the
        /// key pair next to it with a `.secret.json` suffix).
        #[arg(long)]
        sppk: Option<PathBuf>,
    },
    /// Ask for a user's pseudonym in a provider's domain.
    Pseudonym {
        #[arg(long)]
        sp_id: String,
        #[arg(long)]
        uid: String,
        #[arg(long)]
        purpose: String,
    },
    Open {
        #[arg(long)]
        sp_id: String,
        #[arg(long)]
        nym: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        requester: String,
        #[arg(long)]
        purpose: String,
        #[arg(long, default_value = "")]
        reference: String,
    },
    Link {
        #[arg(long)]
        source_sp: String,
        #[arg(long)]
        target_sp: String,
        #[arg(long)]
        nym: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        requester: String,
        #[arg(long)]
        purpose: String,
        #[arg(long, default_value = "")]
        reference: String,
    },
    Audit,
}

fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn params(path: &Path) -> Result<PublicParams> {
    files::read(path)
}

fn master(path: &Path) -> Result<MasterKeyPair> {
    files::read(path)
}

/// Loads a presented pseudonym and reports whether it verifies.
fn check(p: &Presented) -> Result<(PublicParams, G1Point, PseudonymRecord, NymProof, bool)> {
    let pp = params(&p.params)?;
    let mpk: MasterPublicKey = files::read(&p.mpk)?;
    let sppk = files::read::<SpPublicKey>(&p.sppk)?.0;
    let record: PseudonymRecord = files::read_presented(&p.nym)?;
    let proof: NymProof = files::read_presented(&p.proof)?;
    let ok = record.belongs_to(&sppk) && scheme::nymvf(&pp, &mpk, &sppk, &record.nym, &proof);
    Ok((pp, sppk, record, proof, ok))
}

fn users(path: &Path) -> Result<HashSet<G1Point>> {
    files::read_text(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            unb64(l)
                .and_then(|b| G1Point::from_bytes(&b))
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        })
        .collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Setup {
            label,
            security_level,
            out,
        } => {
            let pp = scheme::setup(security_level, label.as_bytes())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            files::write(out.as_deref(), &pp.to_json())
        }
        Command::Keygen {
            params: p,
            seed,
            out,
            mpk,
        } => {
            let kp = scheme::keygen(&params(&p)?, &mut rng(seed));
            if let Some(path) = mpk {
                files::write(Some(&path), &kp.mpk.to_json())?;
            }
            files::write(out.as_deref(), &kp.to_json())
        }
        Command::KeygenUser {
            params: p,
            msk,
            seed,
            out,
        } => {
            let kp = scheme::keygen_user(&params(&p)?, &master(&msk)?.msk, &mut rng(seed))?;
            files::write(out.as_deref(), &kp.to_json())
        }
        Command::KeygenSp {
            params: p,
            msk,
            seed,
            out,
            sppk,
        } => {
            let kp = scheme::keygen_sp(&params(&p)?, &master(&msk)?.msk, &mut rng(seed));
            if let Some(path) = sppk {
                files::write(Some(&path), &SpPublicKey(kp.sppk).to_json())?;
            }
            files::write(out.as_deref(), &kp.to_json())
        }
        Command::Nymgen {
            params: p,
            mpk,
            usk,
            sppk,
            seed,
            nym,
            out,
        } => {
            let pp = params(&p)?;
            let mpk: MasterPublicKey = files::read(&mpk)?;
            let user: UserKeyPair = files::read(&usk)?;
            let sppk = files::read::<SpPublicKey>(&sppk)?.0;
            let (pseudonym, proof) = scheme::nymgen_user(&pp, &user.usk, &mpk, &sppk, &mut rng(seed))?;
            files::write(Some(&nym), &PseudonymRecord::new(pseudonym, &sppk).to_json())?;
            files::write(out.as_deref(), &proof.to_json())
        }
        Command::Verify(presented) => {
            let (.., ok) = check(&presented)?;
            if ok {
                println!("valid");
                Ok(())
            } else {
                Err(CliError::Failed("invalid".into()))
            }
        }
        Command::Open {
            presented,
            msk,
            out,
        } => {
            let master = master(&msk)?;
            let (.., proof, ok) = check(&presented)?;
            if !ok {
                return Err(CliError::Failed("proof does not verify; refusing to open".into()));
            }
            let upk = scheme::open(&proof, &master.msk);
            files::write(out.as_deref(), &format!("{}\n", b64(&upk.to_bytes())))
        }
        Command::Link {
            presented,
            msk,
            spsk,
            users: registry,
            out,
        } => {
            let master = master(&msk)?;
            let target: SpKeyPair = files::read(&spsk)?;
            let directory = users(&registry)?;
            let (pp, sppk, record, proof, _) = check(&presented)?;
            if !record.belongs_to(&sppk) {
                return Err(CliError::Failed("pseudonym belongs to another provider".into()));
            }
            let presented = PresentedNym {
                sppk: &sppk,
                nym: &record.nym,
                proof: &proof,
            };
            let nym = scheme::link(&pp, &master, presented, &target.spsk, &directory)?;
            files::write(out.as_deref(), &PseudonymRecord::new(nym, &target.sppk).to_json())
        }
        Command::Bench {
            iterations,
            seed,
            out,
        } => {
            let report = bench::run(iterations, &mut rng(seed))?;
            eprint!("{}", report.table());
            let json = serde_json::to_value(&report).expect("report serializes");
            files::write(out.as_deref(), &pretty(&json))
        }
        Command::Service {
            service_url,
            request,
        } => service(&ServiceClient::new(&service_url), request),
    }
}

fn envelope_at(v: &Value, key: &str) -> Result<Envelope> {
    serde_json::from_value(v[key].clone())
        .map_err(|e| CliError::Failed(format!("reply lacks {key}: {e}")))
}

fn presented_json(nym: &Path, proof: &Path) -> Result<(String, String)> {
    let record: PseudonymRecord = files::read_presented(nym)?;
    let proof: NymProof = files::read_presented(proof)?;
    Ok((b64(&record.nym.0.to_bytes()), b64(&proof.to_bytes())))
}

fn service(client: &ServiceClient, request: ServiceRequest) -> Result<()> {
    let reply = match request {
        ServiceRequest::Params { out, mpk } => {
            let reply = client.params()?;
            if let Some(path) = mpk {
                files::write(Some(&path), &envelope_at(&reply, "mpk")?.to_json())?;
            }
            return files::write(out.as_deref(), &envelope_at(&reply, "params")?.to_json());
        }
        ServiceRequest::RegisterUser { attributes } => {
            let attrs: Value = serde_json::from_str(&attributes)
                .map_err(|e| CliError::Usage(format!("--attributes: {e}")))?;
            client.register_user(attrs)?
        }
        ServiceRequest::RequestKey { uid, token, out } => {
            let reply = client.request_key(&uid, &token)?;
            return files::write(out.as_deref(), &envelope_at(&reply, "user_key")?.to_json());
        }
        ServiceRequest::RegisterSp {
            sp_id,
            trusted,
            sppk,
        } => {
            let reply = client.register_sp(&sp_id, trusted, json!({}))?;
            if let Some(path) = sppk {
                let key = unb64(reply["sppk"].as_str().unwrap_or_default())
                    .and_then(|b| G1Point::from_bytes(&b))?;
                files::write(Some(&path), &SpPublicKey(key).to_json())?;
                if reply.get("sp_key").is_some() {
                    let secret = path.with_extension("secret.json");
                    files::write(Some(&secret), &envelope_at(&reply, "sp_key")?.to_json())?;
                }
            }
            let mut shown = reply;
            if let Some(obj) = shown.as_object_mut() {
                obj.remove("sp_key");
            }
            shown
        }
        ServiceRequest::Pseudonym {
            sp_id,
            uid,
            purpose,
        } => client.pseudonym(&sp_id, &uid, &purpose)?,
        ServiceRequest::Open {
            sp_id,
            nym,
            proof,
            requester,
            purpose,
            reference,
        } => {
            let (nym, proof) = presented_json(&nym, &proof)?;
            client.open(&json!({
                "proof": proof, "nym": nym, "sp_id": sp_id, "requester": requester,
                "justification": {"purpose": purpose, "reference": reference},
            }))?
        }
        ServiceRequest::Link {
            source_sp,
            target_sp,
            nym,
            proof,
            requester,
            purpose,
            reference,
        } => {
            let (nym, proof) = presented_json(&nym, &proof)?;
            client.link(&json!({
                "proof": proof, "nym": nym, "source_sp": source_sp, "target_sp": target_sp,
                "requester": requester,
                "justification": {"purpose": purpose, "reference": reference},
            }))?
        }
        ServiceRequest::Audit => client.audit()?,
    };
    files::write(None, &pretty(&reply))
}
