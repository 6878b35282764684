//! Epitaxial growth.
//!
//! A seed probe goes to the center cell; then, repeatedly, the (empty cell
//! next to the placed region, unplaced probe) pair with the lowest mean
//! distance to the cell's placed neighbors is placed. Ties prefer cells with
//! more placed neighbors, then the lower cell index, then the lower probe id.
//!
//! Each frontier cell caches its best candidate. A cache is rebuilt only when
//! the cell gains a placed neighbor or its cached probe gets used elsewhere,
//! which keeps the total work near `O(n^2)` distance evaluations.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_square, HeuristicConfig};
use crate::cost::DistanceOracle;
use crate::error::Result;
use crate::probe::Placement;

const EMPTY: usize = usize::MAX;

pub fn place_epx(oracle: &DistanceOracle, side: usize, config: &HeuristicConfig) -> Result<Placement> {
    check_square(oracle.len(), side)?;
    let ids: Vec<usize> = (0..oracle.len()).collect();
    let cells = grow(oracle, &ids, side, side, config.seed);
    Placement::new(side, cells)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    sum: u64,
    placed_neighbors: u64,
    /// Index into the block's id list.
    local: usize,
    probe: usize,
}

/// Lower is better.
fn rank(a_cell: usize, a: &Candidate, b_cell: usize, b: &Candidate) -> Ordering {
    (a.sum * b.placed_neighbors)
        .cmp(&(b.sum * a.placed_neighbors))
        .then(b.placed_neighbors.cmp(&a.placed_neighbors))
        .then(a_cell.cmp(&b_cell))
        .then(a.probe.cmp(&b.probe))
}

/// Grows a `rows x cols` block from the probes `ids`; returns the probe ids
/// in row-major order. The seed probe is drawn from `ids` with `seed`.
pub(crate) fn grow(oracle: &DistanceOracle, ids: &[usize], rows: usize, cols: usize, seed: u64) -> Vec<usize> {
    let m = ids.len();
    debug_assert_eq!(m, rows * cols);
    if m == 0 {
        return Vec::new();
    }
    let mut state = Growth {
        oracle,
        ids,
        rows,
        cols,
        grid: vec![EMPTY; m],
        unplaced: (0..m).collect(),
        slot: (0..m).collect(),
        frontier: Vec::new(),
        frontier_slot: vec![EMPTY; m],
        cache: vec![None; m],
    };

    let first = ChaCha8Rng::seed_from_u64(seed).random_range(0..m);
    state.place((rows / 2) * cols + cols / 2, first);

    for _ in 1..m {
        for i in 0..state.frontier.len() {
            let cell = state.frontier[i];
            if state.cache[cell].is_none() {
                state.cache[cell] = Some(state.best_for(cell));
            }
        }
        let (cell, cand) = state
            .frontier
            .iter()
            .map(|&c| (c, state.cache[c].expect("frontier caches are filled")))
            .min_by(|(ca, a), (cb, b)| rank(*ca, a, *cb, b))
            .expect("frontier is non-empty until the block is full");
        state.place(cell, cand.local);
    }
    state.grid
}

struct Growth<'a, 'o> {
    oracle: &'a DistanceOracle<'o>,
    ids: &'a [usize],
    rows: usize,
    cols: usize,
    grid: Vec<usize>,
    unplaced: Vec<usize>,
    /// Position of each local probe in `unplaced`.
    slot: Vec<usize>,
    frontier: Vec<usize>,
    frontier_slot: Vec<usize>,
    cache: Vec<Option<Candidate>>,
}

impl Growth<'_, '_> {
    fn neighbors(&self, cell: usize) -> impl Iterator<Item = usize> {
        let (r, c, cols) = (cell / self.cols, cell % self.cols, self.cols);
        [
            (r > 0).then(|| cell - cols),
            (r + 1 < self.rows).then(|| cell + cols),
            (c > 0).then(|| cell - 1),
            (c + 1 < cols).then(|| cell + 1),
        ]
        .into_iter()
        .flatten()
    }

    fn best_for(&self, cell: usize) -> Candidate {
        let placed: Vec<usize> = self
            .neighbors(cell)
            .map(|nb| self.grid[nb])
            .filter(|&id| id != EMPTY)
            .collect();
        let mut best: Option<Candidate> = None;
        for &local in &self.unplaced {
            let probe = self.ids[local];
            let mut sum = 0u64;
            let bound = best.map_or(u64::MAX, |b| b.sum);
            for &other in &placed {
                sum += u64::from(self.oracle.dist(probe, other));
                if sum > bound {
                    break;
                }
            }
            let better = match best {
                None => true,
                Some(b) => sum < b.sum || (sum == b.sum && probe < b.probe),
            };
            if better {
                best = Some(Candidate {
                    sum,
                    placed_neighbors: placed.len() as u64,
                    local,
                    probe,
                });
            }
        }
        best.expect("called only while probes remain")
    }

    fn place(&mut self, cell: usize, local: usize) {
        let probe = self.ids[local];
        self.grid[cell] = probe;

        let s = self.slot[local];
        self.unplaced.swap_remove(s);
        if let Some(&moved) = self.unplaced.get(s) {
            self.slot[moved] = s;
        }

        if self.frontier_slot[cell] != EMPTY {
            let s = self.frontier_slot[cell];
            self.frontier.swap_remove(s);
            if let Some(&moved) = self.frontier.get(s) {
                self.frontier_slot[moved] = s;
            }
            self.frontier_slot[cell] = EMPTY;
        }
        self.cache[cell] = None;

        let fresh: Vec<usize> = self.neighbors(cell).filter(|&nb| self.grid[nb] == EMPTY).collect();
        for nb in fresh {
            if self.frontier_slot[nb] == EMPTY {
                self.frontier_slot[nb] = self.frontier.len();
                self.frontier.push(nb);
            }
            self.cache[nb] = None;
        }
        for &f in &self.frontier {
            if self.cache[f].is_some_and(|c| c.probe == probe) {
                self.cache[f] = None;
            }
        }
    }
}
