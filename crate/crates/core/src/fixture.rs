//! Deterministic key and proof sets for conformance files.
//!
//! Everything is derived from a ChaCha20 generator seeded with a fixed
//! value, so the output is stable across runs and platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::envelope::{Enveloped, PseudonymRecord, SpPublicKey};
use crate::error::Result;
use crate::scheme::{
    self, MasterKeyPair, NymProof, Pseudonym, PublicParams, SpKeyPair, UserKeyPair,
};

pub const SEED: u64 = 0x6270_6b23;
pub const PARAMS_SEED: &[u8] = b"bpk-sharp golden";

#[derive(Clone, Debug)]
pub struct Fixture {
    pub pp: PublicParams,
    pub master: MasterKeyPair,
    pub user: UserKeyPair,
    pub sp: SpKeyPair,
    pub nym: Pseudonym,
    pub proof: NymProof,
}

pub fn build() -> Result<Fixture> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    let pp = scheme::setup(scheme::SECURITY_LEVEL, PARAMS_SEED)?;
    let master = scheme::keygen(&pp, &mut rng);
    let user = scheme::keygen_user(&pp, &master.msk, &mut rng)?;
    let sp = scheme::keygen_sp(&pp, &master.msk, &mut rng);
    let (nym, proof) = scheme::nymgen_user(&pp, &user.usk, &master.mpk, &sp.sppk, &mut rng)?;
    Ok(Fixture {
        pp,
        master,
        user,
        sp,
        nym,
        proof,
    })
}

impl Fixture {
    /// `(file name, contents)` for every conformance file.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        let mut hex = String::with_capacity(2 * scheme::PROOF_BYTES + 1);
        for b in self.proof.to_bytes() {
            hex.push_str(&format!("{b:02x}"));
        }
        hex.push('\n');
        vec![
            ("params.json", self.pp.to_json()),
            ("master-secret.json", self.master.to_json()),
            ("master-public.json", self.master.mpk.to_json()),
            ("user-secret.json", self.user.to_json()),
            ("sp-secret.json", self.sp.to_json()),
            ("sp-public.json", SpPublicKey(self.sp.sppk).to_json()),
            (
                "pseudonym.json",
                PseudonymRecord::new(self.nym, &self.sp.sppk).to_json(),
            ),
            ("proof.json", self.proof.to_json()),
            ("proof.hex", hex),
        ]
    }
}
