use std::collections::{HashMap, HashSet};

use bpk_core::scheme::{self, MasterSecretKey, NymProof, Pseudonym, UserSecretKey};
use bpk_core::{G1Point, MasterPublicKey, PublicParams, Scalar};
use rand_chacha::ChaCha20Rng;

/// An unordered pair of user keys queried to the left-or-right oracle,
/// together with the provider it was queried for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LrEntry {
    users: [G1Point; 2],
    pub sppk: G1Point,
}

impl LrEntry {
    pub fn new(a: G1Point, b: G1Point, sppk: G1Point) -> Self {
        let users = if a.to_bytes() <= b.to_bytes() {
            [a, b]
        } else {
            [b, a]
        };
        LrEntry { users, sppk }
    }

    pub fn users(&self) -> &[G1Point; 2] {
        &self.users
    }

    pub fn contains(&self, upk: &G1Point) -> bool {
        self.users.contains(upk)
    }

    pub fn same_users(&self, other: &LrEntry) -> bool {
        self.users == other.users
    }

    pub fn disjoint(&self, other: &LrEntry) -> bool {
        !other.users.iter().any(|u| self.contains(u))
    }
}

/// One oracle query as the game saw it. `answered` is false for `⊥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleCall {
    GenU {
        upk: G1Point,
    },
    GenSp {
        sppk: G1Point,
    },
    Nym {
        upk: G1Point,
        sppk: G1Point,
        answered: bool,
    },
    CorruptU {
        upk: G1Point,
        answered: bool,
    },
    Lor {
        upk0: G1Point,
        upk1: G1Point,
        sppk: G1Point,
        answered: bool,
    },
    CorruptSp {
        sppk: G1Point,
        answered: bool,
    },
}

/// Sets and keys of one experiment instance.
///
/// Secret key sets are keyed by the matching public key, so `KP_u` and
/// `SK_u` share one map (and likewise for providers).
pub struct GameState {
    pp: PublicParams,
    mpk: MasterPublicKey,
    msk: MasterSecretKey,
    rng: ChaCha20Rng,
    kp_u: HashMap<G1Point, UserSecretKey>,
    pk_u: HashSet<G1Point>,
    kp_sp: HashMap<G1Point, Scalar>,
    pk_sp: HashSet<G1Point>,
    n: HashSet<(G1Point, G1Point)>,
    c_u: HashSet<G1Point>,
    c_sp: HashSet<G1Point>,
    lr: HashSet<LrEntry>,
    log: Vec<OracleCall>,
}

impl GameState {
    /// Fresh state with a newly generated master key pair.
    pub fn new(pp: &PublicParams, mut rng: ChaCha20Rng) -> Self {
        let master = scheme::keygen(pp, &mut rng);
        GameState {
            pp: pp.clone(),
            mpk: master.mpk,
            msk: master.msk,
            rng,
            kp_u: HashMap::new(),
            pk_u: HashSet::new(),
            kp_sp: HashMap::new(),
            pk_sp: HashSet::new(),
            n: HashSet::new(),
            c_u: HashSet::new(),
            c_sp: HashSet::new(),
            lr: HashSet::new(),
            log: Vec::new(),
        }
    }

    pub fn pp(&self) -> &PublicParams {
        &self.pp
    }

    pub fn mpk(&self) -> &MasterPublicKey {
        &self.mpk
    }

    /// `N`: `(upk, sppk)` pairs answered by the pseudonym oracle.
    pub fn n(&self) -> &HashSet<(G1Point, G1Point)> {
        &self.n
    }

    pub fn pk_u(&self) -> &HashSet<G1Point> {
        &self.pk_u
    }

    pub fn pk_sp(&self) -> &HashSet<G1Point> {
        &self.pk_sp
    }

    /// Public keys of corrupted users.
    pub fn c_u(&self) -> &HashSet<G1Point> {
        &self.c_u
    }

    /// Public keys of corrupted providers.
    pub fn c_sp(&self) -> &HashSet<G1Point> {
        &self.c_sp
    }

    pub fn lr(&self) -> &HashSet<LrEntry> {
        &self.lr
    }

    pub fn log(&self) -> &[OracleCall] {
        &self.log
    }

    pub(crate) fn is_registered_user(&self, upk: &G1Point) -> bool {
        self.kp_u.contains_key(upk)
    }

    pub(crate) fn open(&self, proof: &NymProof) -> G1Point {
        scheme::open(proof, &self.msk)
    }

    pub(crate) fn gen_u(&mut self) -> G1Point {
        let kp = scheme::keygen_user(&self.pp, &self.msk, &mut self.rng)
            .expect("master signing key is nonzero");
        self.pk_u.insert(kp.upk);
        self.kp_u.insert(kp.upk, kp.usk);
        self.log.push(OracleCall::GenU { upk: kp.upk });
        kp.upk
    }

    pub(crate) fn gen_sp(&mut self) -> G1Point {
        let kp = scheme::keygen_sp(&self.pp, &self.msk, &mut self.rng);
        self.pk_sp.insert(kp.sppk);
        self.kp_sp.insert(kp.sppk, kp.spsk);
        self.log.push(OracleCall::GenSp { sppk: kp.sppk });
        kp.sppk
    }

    pub(crate) fn nym(&mut self, upk: &G1Point, sppk: &G1Point) -> Option<(Pseudonym, NymProof)> {
        let answer = if self.pk_sp.contains(sppk) && self.pk_u.contains(upk) {
            let usk = &self.kp_u[upk];
            let out = scheme::nymgen_user(&self.pp, usk, &self.mpk, sppk, &mut self.rng)
                .expect("registered keys are well formed");
            self.n.insert((*upk, *sppk));
            Some(out)
        } else {
            None
        };
        self.log.push(OracleCall::Nym {
            upk: *upk,
            sppk: *sppk,
            answered: answer.is_some(),
        });
        answer
    }

    pub(crate) fn corrupt_u(&mut self, upk: &G1Point) -> Option<UserSecretKey> {
        let answer = if self.pk_u.contains(upk) {
            self.c_u.insert(*upk);
            Some(self.kp_u[upk].clone())
        } else {
            None
        };
        self.log.push(OracleCall::CorruptU {
            upk: *upk,
            answered: answer.is_some(),
        });
        answer
    }

    /// Computes both pseudonyms and returns the one selected by `b`.
    pub(crate) fn lor(
        &mut self,
        b: bool,
        upk0: &G1Point,
        upk1: &G1Point,
        sppk: &G1Point,
    ) -> Option<(Pseudonym, NymProof)> {
        let known =
            self.pk_u.contains(upk0) && self.pk_u.contains(upk1) && self.pk_sp.contains(sppk);
        let answer = if known {
            let [left, right] = [upk0, upk1].map(|upk| {
                scheme::nymgen_user(&self.pp, &self.kp_u[upk], &self.mpk, sppk, &mut self.rng)
                    .expect("registered keys are well formed")
            });
            self.lr.insert(LrEntry::new(*upk0, *upk1, *sppk));
            Some(if b { right } else { left })
        } else {
            None
        };
        self.log.push(OracleCall::Lor {
            upk0: *upk0,
            upk1: *upk1,
            sppk: *sppk,
            answered: answer.is_some(),
        });
        answer
    }

    pub(crate) fn corrupt_sp(&mut self, sppk: &G1Point) -> Option<Scalar> {
        let answer = if self.pk_sp.contains(sppk) {
            self.c_sp.insert(*sppk);
            Some(self.kp_sp[sppk])
        } else {
            None
        };
        self.log.push(OracleCall::CorruptSp {
            sppk: *sppk,
            answered: answer.is_some(),
        });
        answer
    }
}

#[cfg(test)]
impl GameState {
    /// Issues a user key without recording it anywhere.
    pub(crate) fn issue_unrecorded(&self, rng: &mut ChaCha20Rng) -> bpk_core::UserKeyPair {
        scheme::keygen_user(&self.pp, &self.msk, rng).unwrap()
    }

    pub(crate) fn secret_of(&self, upk: &G1Point) -> &UserSecretKey {
        &self.kp_u[upk]
    }
}
