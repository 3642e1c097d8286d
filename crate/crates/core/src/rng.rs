//! Seeded randomness.
//!
//! Every random stream is identified by a root seed, a label naming the
//! experiment or operation, and an index (sample number, tensor number, ...).
//! The three are mixed into a 256-bit ChaCha seed, so each stream is
//! independent of how many values other streams consumed and of the order
//! in which parallel workers run.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type Rng = ChaCha8Rng;

pub fn rng_for(seed: u64, label: &str, index: u64) -> Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((label.len() as u64).to_le_bytes());
    h.update(label.as_bytes());
    h.update(index.to_le_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// Derives a child seed, for handing a sub-task its own root.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    use rand::RngCore;
    rng_for(seed, label, index).next_u64()
}
