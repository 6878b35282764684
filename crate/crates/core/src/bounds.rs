//! Lower bound on the optimal border length, and exact exhaustive oracles
//! (grid placement, Hamming TSP, k-segment Hamming TSP) for tiny instances.
//!
//! The exhaustive searches collapse identical probes into one class, so a
//! grid holding many copies of the same string only enumerates distinct
//! arrangements. They refuse, rather than approximate, when the search space
//! is larger than the budget.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::cost::DistanceOracle;
use crate::error::{Error, Result};
use crate::probe::Placement;

/// Default cap on the number of states an exhaustive search may enumerate.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Sum of the `2N(N-1)` smallest pairwise distances among the `N^2` probes.
///
/// Every placement uses exactly `2N(N-1)` distinct probe pairs as edges, so
/// this never exceeds the optimum. Distances are bucketed by value, so memory
/// stays `O(length)` even when the pair count is in the billions.
pub fn lower_bound(oracle: &DistanceOracle, side: usize) -> Result<u64> {
    let n = oracle.len();
    if side == 0 || side * side != n {
        return Err(Error::SizeMismatch(format!(
            "{n} probes do not fill a {side}x{side} grid"
        )));
    }
    let max_dist = oracle.probes().length();
    let histogram = (0..n)
        .into_par_iter()
        .fold(
            || vec![0u64; max_dist + 1],
            |mut h, i| {
                for j in i + 1..n {
                    h[oracle.dist(i, j) as usize] += 1;
                }
                h
            },
        )
        .reduce(
            || vec![0u64; max_dist + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let mut needed = 2 * side as u64 * (side as u64 - 1);
    let mut total = 0u64;
    for (d, &count) in histogram.iter().enumerate() {
        if needed == 0 {
            break;
        }
        let take = count.min(needed);
        total += take * d as u64;
        needed -= take;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Maximum number of distinct placements (or tours) to enumerate.
    pub budget: u64,
    /// Treat identical probes as interchangeable.
    pub collapse_duplicates: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            collapse_duplicates: true,
        }
    }
}

impl BruteForceOptions {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }
}

/// Groups probe ids into classes of identical strings, ordered by smallest id.
/// Without collapsing every probe is its own class.
pub fn probe_classes(oracle: &DistanceOracle, collapse: bool) -> Vec<Vec<usize>> {
    let probes = oracle.probes();
    if !collapse {
        return (0..probes.len()).map(|i| vec![i]).collect();
    }
    let mut index: HashMap<&[u8], usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (id, probe) in probes.iter().enumerate() {
        let class = *index.entry(probe).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[class].push(id);
    }
    classes
}

/// Number of distinct placements of a multiset with the given class sizes,
/// `n! / prod(m_i!)`, or `None` if it does not fit in 128 bits.
pub fn distinct_arrangements(class_sizes: &[usize]) -> Option<u128> {
    let mut placed = 0u128;
    let mut count = 1u128;
    for &m in class_sizes {
        // multiply by C(placed + m, m) one factor at a time; each partial
        // product is itself a binomial coefficient, so the division is exact
        for k in 1..=m as u128 {
            placed += 1;
            count = count.checked_mul(placed)? / k;
        }
    }
    Some(count)
}

fn refuse(required: Option<u128>, budget: u64) -> Error {
    Error::BudgetExceeded {
        required: required.map_or_else(|| "more than 2^128".to_string(), |r| r.to_string()),
        budget,
    }
}

/// Exact minimum border length and the lexicographically smallest optimal
/// placement, using the default budget and duplicate collapsing.
pub fn brute_force_opt(oracle: &DistanceOracle, side: usize, budget: u64) -> Result<(u64, Placement)> {
    brute_force_opt_with(oracle, side, BruteForceOptions::with_budget(budget))
}

pub fn brute_force_opt_with(
    oracle: &DistanceOracle,
    side: usize,
    options: BruteForceOptions,
) -> Result<(u64, Placement)> {
    let n = oracle.len();
    if side == 0 || side * side != n {
        return Err(Error::SizeMismatch(format!(
            "{n} probes do not fill a {side}x{side} grid"
        )));
    }
    let classes = probe_classes(oracle, options.collapse_duplicates);
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let required = distinct_arrangements(&sizes);
    if required.is_none_or(|r| r > u128::from(options.budget)) {
        return Err(refuse(required, options.budget));
    }

    let m = classes.len();
    let mut class_dist = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            class_dist[a * m + b] = oracle.dist(classes[a][0], classes[b][0]);
        }
    }
    let mut search = GridSearch {
        side,
        classes: &classes,
        class_dist,
        used: vec![0; m],
        assign: vec![0; n],
        best_cost: u64::MAX,
        best_assign: Vec::new(),
    };
    search.descend(0, 0);

    // materialize: each class hands out its ids in increasing order
    let mut next = vec![0usize; m];
    let cells = search
        .best_assign
        .iter()
        .map(|&c| {
            let id = classes[c][next[c]];
            next[c] += 1;
            id
        })
        .collect();
    Ok((search.best_cost, Placement::new(side, cells)?))
}

struct GridSearch<'c> {
    side: usize,
    classes: &'c [Vec<usize>],
    class_dist: Vec<u32>,
    used: Vec<usize>,
    assign: Vec<usize>,
    best_cost: u64,
    best_assign: Vec<usize>,
}

impl GridSearch<'_> {
    fn descend(&mut self, cell: usize, partial: u64) {
        let n = self.assign.len();
        if cell == n {
            if partial < self.best_cost {
                self.best_cost = partial;
                self.best_assign.clone_from(&self.assign);
            }
            return;
        }
        let m = self.classes.len();
        // Visit classes by the id they would place next: this enumerates the
        // materialized `cells` vectors in lexicographic order, so the first
        // optimum found is the lexicographically smallest.
        let mut candidates: Vec<(usize, usize)> = (0..m)
            .filter(|&c| self.used[c] < self.classes[c].len())
            .map(|c| (self.classes[c][self.used[c]], c))
            .collect();
        candidates.sort_unstable();

        let (row, col) = (cell / self.side, cell % self.side);
        for (_, c) in candidates {
            let mut inc = 0u64;
            if col > 0 {
                inc += u64::from(self.class_dist[self.assign[cell - 1] * m + c]);
            }
            if row > 0 {
                inc += u64::from(self.class_dist[self.assign[cell - self.side] * m + c]);
            }
            if partial + inc >= self.best_cost {
                continue;
            }
            self.assign[cell] = c;
            self.used[c] += 1;
            self.descend(cell + 1, partial + inc);
            self.used[c] -= 1;
        }
    }
}

/// Exact optimal Hamming TSP tour (cycle) over all probes.
///
/// Returns the cycle cost and a visiting order over all probe ids; copies of
/// the same string are visited consecutively.
pub fn brute_force_htsp(oracle: &DistanceOracle, budget: u64) -> Result<(u64, Vec<usize>)> {
    brute_force_htsp_with(oracle, BruteForceOptions::with_budget(budget))
}

pub fn brute_force_htsp_with(oracle: &DistanceOracle, options: BruteForceOptions) -> Result<(u64, Vec<usize>)> {
    let classes = probe_classes(oracle, options.collapse_duplicates);
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let (cost, order) = optimal_cycle(oracle, &reps, options.budget)?;
    let tour = order.into_iter().flat_map(|k| classes[k].iter().copied()).collect();
    Ok((cost, tour))
}

/// Number of distinct cycles through `m` items, `(m-1)!/2` for `m >= 3`.
fn cycle_count(m: usize) -> Option<u128> {
    if m < 3 {
        return Some(1);
    }
    (1..m as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .map(|f| f / 2)
}

/// Optimal cycle over the probes `ids`. Returns the cost and a visiting order
/// given as indices into `ids`.
fn optimal_cycle(oracle: &DistanceOracle, ids: &[usize], budget: u64) -> Result<(u64, Vec<usize>)> {
    let m = ids.len();
    match m {
        0 | 1 => return Ok((0, (0..m).collect())),
        2 => return Ok((2 * u64::from(oracle.dist(ids[0], ids[1])), vec![0, 1])),
        _ => {}
    }
    let required = cycle_count(m);
    if required.is_none_or(|r| r > u128::from(budget)) {
        return Err(refuse(required, budget));
    }

    struct CycleSearch<'a, 'o> {
        oracle: &'a DistanceOracle<'o>,
        ids: &'a [usize],
        order: Vec<usize>,
        taken: Vec<bool>,
        best_cost: u64,
        best_order: Vec<usize>,
    }

    impl CycleSearch<'_, '_> {
        fn descend(&mut self, partial: u64) {
            let m = self.ids.len();
            let last = *self.order.last().unwrap();
            if self.order.len() == m {
                // each cycle appears twice (once per direction); keep the
                // orientation whose second item is smaller than its last
                if self.order[1] > self.order[m - 1] {
                    return;
                }
                let total = partial + u64::from(self.oracle.dist(self.ids[last], self.ids[0]));
                if total < self.best_cost {
                    self.best_cost = total;
                    self.best_order.clone_from(&self.order);
                }
                return;
            }
            for next in 1..m {
                if self.taken[next] {
                    continue;
                }
                let step = partial + u64::from(self.oracle.dist(self.ids[last], self.ids[next]));
                if step >= self.best_cost {
                    continue;
                }
                self.taken[next] = true;
                self.order.push(next);
                self.descend(step);
                self.order.pop();
                self.taken[next] = false;
            }
        }
    }

    let mut search = CycleSearch {
        oracle,
        ids,
        order: vec![0],
        taken: vec![false; m],
        best_cost: u64::MAX,
        best_order: Vec::new(),
    };
    search.taken[0] = true;
    search.descend(0);
    Ok((search.best_cost, search.best_order))
}

/// Exact k-segments Hamming TSP: split all probes into `k` non-empty parts
/// minimizing the sum of the parts' optimal cycle costs.
///
/// A part of one string costs 0 and a part of two strings costs twice their
/// distance. The budget bounds both the number of partitions and each
/// per-part cycle search. Returns the total and the parts (sorted ids,
/// ordered by smallest member).
pub fn brute_force_k_segments(oracle: &DistanceOracle, k: usize, budget: u64) -> Result<(u64, Vec<Vec<usize>>)> {
    let n = oracle.len();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "cannot split {n} strings into {k} non-empty parts"
        )));
    }
    if n > 64 {
        return Err(refuse(None, budget));
    }
    let required = stirling2(n, k);
    if required.is_none_or(|r| r > u128::from(budget)) {
        return Err(refuse(required, budget));
    }

    let mut memo: HashMap<u64, u64> = HashMap::new();
    let mut part_cost = |mask: u64| -> Result<u64> {
        if let Some(&c) = memo.get(&mask) {
            return Ok(c);
        }
        let ids: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let c = optimal_cycle(oracle, &ids, budget)?.0;
        memo.insert(mask, c);
        Ok(c)
    };

    struct Partitioner<'f, F> {
        n: usize,
        k: usize,
        labels: Vec<usize>,
        part_cost: &'f mut F,
        best: Option<(u64, Vec<usize>)>,
    }

    impl<F: FnMut(u64) -> Result<u64>> Partitioner<'_, F> {
        // restricted growth strings: label[i] <= max(label[..i]) + 1
        fn descend(&mut self, i: usize, used: usize) -> Result<()> {
            if i == self.n {
                if used != self.k {
                    return Ok(());
                }
                let mut masks = vec![0u64; self.k];
                for (id, &l) in self.labels.iter().enumerate() {
                    masks[l] |= 1 << id;
                }
                let mut total = 0;
                for mask in masks {
                    total += (self.part_cost)(mask)?;
                }
                if self.best.as_ref().is_none_or(|(b, _)| total < *b) {
                    self.best = Some((total, self.labels.clone()));
                }
                return Ok(());
            }
            for l in 0..(used + 1).min(self.k) {
                let now_used = used.max(l + 1);
                // enough strings left to open the missing parts
                if self.k - now_used > self.n - i - 1 {
                    continue;
                }
                self.labels[i] = l;
                self.descend(i + 1, now_used)?;
            }
            Ok(())
        }
    }

    let mut search = Partitioner {
        n,
        k,
        labels: vec![0; n],
        part_cost: &mut part_cost,
        best: None,
    };
    search.descend(0, 0)?;
    let (total, labels) = search
        .best
        .ok_or_else(|| Error::InvalidParameter("no partition enumerated".into()))?;
    let mut parts = vec![Vec::new(); k];
    for (id, &l) in labels.iter().enumerate() {
        parts[l].push(id);
    }
    Ok((total, parts))
}

/// Stirling number of the second kind, `S(n, k)`.
fn stirling2(n: usize, k: usize) -> Option<u128> {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        let mut next = vec![0u128; k + 1];
        for j in 1..=k.min(i) {
            next[j] = (j as u128).checked_mul(row[j])?.checked_add(row[j - 1])?;
        }
        row = next;
    }
    Some(row[k])
}
