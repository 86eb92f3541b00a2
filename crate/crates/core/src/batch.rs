//! Data-parallel batch operations.
//!
//! With the `parallel` feature (default) the entry points fan out over the
//! rayon thread pool; without it they run on the calling thread. The
//! `*_sequential` variants are always single-threaded, for comparison.
//! Randomness for item `i` comes from its own ChaCha stream, so results do
//! not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algebra::G1Point;
use crate::error::Result;
use crate::scheme::{self, MasterPublicKey, NymProof, Pseudonym, PublicParams, UserSecretKey};

/// A pseudonym as presented to a service provider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub sppk: G1Point,
    pub nym: Pseudonym,
    pub proof: NymProof,
}

/// Independent generator for item `index` under `seed`.
pub fn item_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Applies `f` to `0..count` with a dedicated generator per index.
pub fn map_indexed<T, F>(count: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha20Rng) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count)
            .into_par_iter()
            .map(|i| f(i, &mut item_rng(seed, i as u64)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_sequential(count, seed, f)
    }
}

pub fn map_indexed_sequential<T, F>(count: usize, seed: u64, f: F) -> Vec<T>
where
    F: Fn(usize, &mut ChaCha20Rng) -> T,
{
    (0..count)
        .map(|i| f(i, &mut item_rng(seed, i as u64)))
        .collect()
}

pub fn verify_all(pp: &PublicParams, mpk: &MasterPublicKey, items: &[Presentation]) -> Vec<bool> {
    let check = |p: &Presentation| scheme::nymvf(pp, mpk, &p.sppk, &p.nym, &p.proof);
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(check).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(check).collect()
    }
}

pub fn verify_all_sequential(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    items: &[Presentation],
) -> Vec<bool> {
    items
        .iter()
        .map(|p| scheme::nymvf(pp, mpk, &p.sppk, &p.nym, &p.proof))
        .collect()
}

/// User-side pseudonyms for every (user, provider) pair, row-major by user.
pub fn nymgen_grid(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    users: &[UserSecretKey],
    sppks: &[G1Point],
    seed: u64,
) -> Result<Vec<Presentation>> {
    let cols = sppks.len();
    map_indexed(users.len() * cols, seed, |i, rng| {
        let sppk = sppks[i % cols];
        scheme::nymgen_user(pp, &users[i / cols], mpk, &sppk, rng)
            .map(|(nym, proof)| Presentation { sppk, nym, proof })
    })
    .into_iter()
    .collect()
}

pub fn nymgen_grid_sequential(
    pp: &PublicParams,
    mpk: &MasterPublicKey,
    users: &[UserSecretKey],
    sppks: &[G1Point],
    seed: u64,
) -> Result<Vec<Presentation>> {
    let cols = sppks.len();
    map_indexed_sequential(users.len() * cols, seed, |i, rng| {
        let sppk = sppks[i % cols];
        scheme::nymgen_user(pp, &users[i / cols], mpk, &sppk, rng)
            .map(|(nym, proof)| Presentation { sppk, nym, proof })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let pp = scheme::setup(128, b"batch").unwrap();
        let mut rng = item_rng(1, 0);
        let master = scheme::keygen(&pp, &mut rng);
        let users: Vec<_> = (0..2)
            .map(|_| scheme::keygen_user(&pp, &master.msk, &mut rng).unwrap().usk)
            .collect();
        let sppks: Vec<_> = (0..2)
            .map(|_| scheme::keygen_sp(&pp, &master.msk, &mut rng).sppk)
            .collect();
        let a = nymgen_grid(&pp, &master.mpk, &users, &sppks, 9).unwrap();
        let b = nymgen_grid_sequential(&pp, &master.mpk, &users, &sppks, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(verify_all(&pp, &master.mpk, &a), vec![true; 4]);
        assert_eq!(verify_all_sequential(&pp, &master.mpk, &a), vec![true; 4]);
    }

    #[test]
    fn item_streams_are_independent() {
        use rand::RngCore;
        let a = item_rng(5, 0).next_u64();
        let b = item_rng(5, 1).next_u64();
        assert_ne!(a, b);
        assert_eq!(a, item_rng(5, 0).next_u64());
    }
}
