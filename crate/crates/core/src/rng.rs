//! Randomness for diagram and path generation.
//!
//! Both seeded and unseeded generation run ChaCha20 (`rand_chacha::ChaCha20Rng`).
//! A seeded generator is keyed with `SHA-256("pathword/chacha20/v1" || seed_le64)`.
//! An unseeded one is keyed with 32 bytes from the operating system's
//! cryptographic source. Index sampling and shuffling are implemented here
//! rather than taken from `rand::seq`, so seeded output depends only on the
//! ChaCha20 keystream and not on sampling algorithms that may change between
//! `rand` releases.

use rand::{RngCore, SeedableRng, TryRngCore};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

const SEED_DOMAIN: &[u8] = b"pathword/chacha20/v1";

pub(crate) fn generator(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(seed) => ChaCha20Rng::from_seed(seed_key(seed)),
        None => {
            let mut key = [0u8; 32];
            rand::rngs::OsRng
                .try_fill_bytes(&mut key)
                .expect("operating system entropy source unavailable");
            ChaCha20Rng::from_seed(key)
        }
    }
}

fn seed_key(seed: u64) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(SEED_DOMAIN);
    hasher.update(seed.to_le_bytes());
    hasher.finalize().into()
}

/// Uniform integer in `0..bound` by rejection sampling on 64-bit draws.
pub(crate) fn below<R: RngCore + ?Sized>(rng: &mut R, bound: usize) -> usize {
    assert!(bound > 0, "empty sampling range");
    let bound = bound as u64;
    // largest multiple of `bound` that fits in u64 space
    let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return (x % bound) as usize;
        }
    }
}

/// Fisher-Yates shuffle.
pub(crate) fn shuffle<T, R: RngCore + ?Sized>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}

/// `count` distinct indices from `0..population`, in uniformly random order.
pub(crate) fn sample_distinct<R: RngCore + ?Sized>(
    rng: &mut R,
    population: usize,
    count: usize,
) -> Vec<usize> {
    assert!(count <= population);
    let mut pool: Vec<usize> = (0..population).collect();
    for i in 0..count {
        let j = i + below(rng, population - i);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}
