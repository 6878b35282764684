//! Shared instance generation for the benchmarks.

use blm_core::{Alphabet, ProbeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `side * side` uniform DNA probes of the given length.
pub fn dna_instance(side: usize, length: usize, seed: u64) -> ProbeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strings: Vec<Vec<u8>> = (0..side * side)
        .map(|_| (0..length).map(|_| rng.random_range(0..4u8)).collect())
        .collect();
    ProbeSet::new(Alphabet::dna(), length, strings).expect("valid DNA instance")
}
