//! Seeded random streams.
//!
//! Every simulation derives one ChaCha8 stream per replicate from the master
//! seed, a domain tag and the replicate index. ChaCha is counter based, so
//! a replicate's draws never depend on which thread evaluates it or on how
//! many replicates ran before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent purposes sharing a master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u32)]
pub enum Domain {
    LnNull = 1,
    KsNull = 2,
    Samples = 3,
    Bootstrap = 4,
    Resample = 5,
    Subsample = 6,
    Kde = 7,
}

pub fn stream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..12].copy_from_slice(&(domain as u32).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Stream for a nested replicate: `outer` selects a sub-seed, `index` the stream.
pub fn nested_stream(seed: u64, domain: Domain, outer: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..12].copy_from_slice(&(domain as u32).to_le_bytes());
    key[12..20].copy_from_slice(&outer.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}
