//! Command-line front end: instance files, solver pipelines and CSV reports.

pub mod args;
pub mod commands;
pub mod files;
pub mod pipeline;

use anyhow::Result;
use blm_core::{Alphabet, ProbeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command};

/// `count` probes of `length` symbols drawn uniformly and independently.
pub fn random_probes(alphabet: &Alphabet, count: usize, length: usize, seed: u64) -> Result<ProbeSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = alphabet.len() as u8;
    let words: Vec<Vec<u8>> = (0..count)
        .map(|_| (0..length).map(|_| rng.random_range(0..k)).collect())
        .collect();
    Ok(ProbeSet::new(alphabet.clone(), length, words)?)
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Solve(a) => commands::solve(a),
        Command::Refine(a) => commands::refine(a),
        Command::Bench(a) => commands::bench(a),
        Command::Bound(a) => commands::bound(a),
    }
}

/// Process exit status for a failed command: 3 when an exhaustive search was
/// refused for exceeding its budget, 1 for I/O failures, 2 for invalid input.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<blm_core::Error>() {
            return if matches!(e, blm_core::Error::BudgetExceeded { .. }) {
                3
            } else {
                2
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 1;
        }
    }
    2
}
