//! What an adversary gets to see and call.

use bpk_core::scheme::{NymProof, Pseudonym, UserSecretKey};
use bpk_core::{G1Point, MasterPublicKey, PublicParams, Scalar};
use rand_chacha::ChaCha20Rng;

use crate::state::GameState;

/// Oracle access in the non-frameability experiment: user and provider
/// generation, pseudonyms, and user corruption.
pub struct NonFrameabilityOracles<'g> {
    game: &'g mut GameState,
}

/// Oracle access in the anonymity experiment: the non-frameability oracles
/// plus left-or-right and provider corruption.
pub struct AnonymityOracles<'g> {
    game: &'g mut GameState,
    b: bool,
}

/// A claimed pseudonym with proof, as output by a non-frameability
/// adversary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forgery {
    pub sppk: G1Point,
    pub nym: Pseudonym,
    pub proof: NymProof,
}

pub trait NonFrameabilityAdversary {
    fn name(&self) -> &'static str;

    /// Returns the adversary's output, or `None` to give up.
    fn attack(
        &mut self,
        oracles: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery>;
}

pub trait AnonymityAdversary {
    fn name(&self) -> &'static str;

    /// Returns the guess for the hidden bit.
    fn guess(&mut self, oracles: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool;
}

impl<'g> NonFrameabilityOracles<'g> {
    pub(crate) fn new(game: &'g mut GameState) -> Self {
        NonFrameabilityOracles { game }
    }

    pub fn pp(&self) -> &PublicParams {
        self.game.pp()
    }

    pub fn mpk(&self) -> &MasterPublicKey {
        self.game.mpk()
    }

    pub fn gen_u(&mut self) -> G1Point {
        self.game.gen_u()
    }

    pub fn gen_sp(&mut self) -> G1Point {
        self.game.gen_sp()
    }

    pub fn nym(&mut self, upk: &G1Point, sppk: &G1Point) -> Option<(Pseudonym, NymProof)> {
        self.game.nym(upk, sppk)
    }

    pub fn corrupt_u(&mut self, upk: &G1Point) -> Option<UserSecretKey> {
        self.game.corrupt_u(upk)
    }
}

impl<'g> AnonymityOracles<'g> {
    pub(crate) fn new(game: &'g mut GameState, b: bool) -> Self {
        AnonymityOracles { game, b }
    }

    pub fn pp(&self) -> &PublicParams {
        self.game.pp()
    }

    pub fn mpk(&self) -> &MasterPublicKey {
        self.game.mpk()
    }

    pub fn gen_u(&mut self) -> G1Point {
        self.game.gen_u()
    }

    pub fn gen_sp(&mut self) -> G1Point {
        self.game.gen_sp()
    }

    pub fn nym(&mut self, upk: &G1Point, sppk: &G1Point) -> Option<(Pseudonym, NymProof)> {
        self.game.nym(upk, sppk)
    }

    pub fn corrupt_u(&mut self, upk: &G1Point) -> Option<UserSecretKey> {
        self.game.corrupt_u(upk)
    }

    /// Pseudonym and proof of `upk0` if the hidden bit is 0, else of `upk1`.
    pub fn lor(
        &mut self,
        upk0: &G1Point,
        upk1: &G1Point,
        sppk: &G1Point,
    ) -> Option<(Pseudonym, NymProof)> {
        self.game.lor(self.b, upk0, upk1, sppk)
    }

    pub fn corrupt_sp(&mut self, sppk: &G1Point) -> Option<Scalar> {
        self.game.corrupt_sp(sppk)
    }
}

impl<T: NonFrameabilityAdversary + ?Sized> NonFrameabilityAdversary for Box<T> {
    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn attack(
        &mut self,
        oracles: &mut NonFrameabilityOracles<'_>,
        rng: &mut ChaCha20Rng,
    ) -> Option<Forgery> {
        (**self).attack(oracles, rng)
    }
}

impl<T: AnonymityAdversary + ?Sized> AnonymityAdversary for Box<T> {
    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn guess(&mut self, oracles: &mut AnonymityOracles<'_>, rng: &mut ChaCha20Rng) -> bool {
        (**self).guess(oracles, rng)
    }
}
