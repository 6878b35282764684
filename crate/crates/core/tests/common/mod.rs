#![allow(dead_code)]

use blm_core::{Alphabet, ProbeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_probes(rng: &mut impl Rng, alphabet: &Alphabet, count: usize, length: usize) -> ProbeSet {
    let words: Vec<Vec<u8>> = (0..count)
        .map(|_| (0..length).map(|_| rng.random_range(0..alphabet.len()) as u8).collect())
        .collect();
    ProbeSet::new(alphabet.clone(), length, words).unwrap()
}

/// Hamming distance straight from the decoded text.
pub fn text_distance(a: &str, b: &str) -> u64 {
    a.chars().zip(b.chars()).filter(|(x, y)| x != y).count() as u64
}

/// Border length by enumerating every pair of cells at Manhattan distance 1.
pub fn naive_cost(probes: &ProbeSet, side: usize, cells: &[usize]) -> u64 {
    let n = side * side;
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            let (ra, ca) = ((a / side) as i64, (a % side) as i64);
            let (rb, cb) = ((b / side) as i64, (b % side) as i64);
            if (ra - rb).abs() + (ca - cb).abs() == 1 {
                total += text_distance(&probes.probe_string(cells[a]), &probes.probe_string(cells[b]));
            }
        }
    }
    total
}

/// Minimum border length over all `n!` orderings (no symmetry reduction).
pub fn naive_opt(probes: &ProbeSet, side: usize) -> u64 {
    use itertools::Itertools;
    (0..side * side)
        .permutations(side * side)
        .map(|cells| naive_cost(probes, side, &cells))
        .min()
        .unwrap()
}

/// Minimum closed tour over all orderings that start with probe 0.
pub fn naive_htsp(probes: &ProbeSet) -> u64 {
    use itertools::Itertools;
    let n = probes.len();
    let text: Vec<String> = (0..n).map(|i| probes.probe_string(i)).collect();
    (1..n)
        .permutations(n - 1)
        .map(|rest| {
            let order: Vec<usize> = std::iter::once(0).chain(rest).collect();
            (0..n)
                .map(|i| text_distance(&text[order[i]], &text[order[(i + 1) % n]]))
                .sum()
        })
        .min()
        .unwrap()
}

/// Sum of the `count` smallest pairwise distances, by sorting all pairs.
pub fn naive_lower_bound(probes: &ProbeSet, count: usize) -> u64 {
    let n = probes.len();
    let mut all = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            all.push(text_distance(&probes.probe_string(i), &probes.probe_string(j)));
        }
    }
    all.sort_unstable();
    all.iter().take(count).sum()
}
