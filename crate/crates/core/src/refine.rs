//! Hierarchical refinement (HRA) and its randomized variant (RHRA).
//!
//! HRA tiles the grid into `d x d` blocks and replaces each block by the best
//! of all `(d^2)!` permutations of its probes. It then treats every `d x d`
//! block as a rigid unit, groups `d x d` units into super-blocks and again
//! tries every permutation of the units, and so on until a single block
//! covers the grid. Each sub-problem is scored together with the edges that
//! connect it to the rest of the grid, and the identity permutation is always
//! a candidate, so the border length never increases.
//!
//! RHRA repeatedly picks a random square of side `d^j` anywhere in the grid
//! and runs the same procedure inside it with everything outside frozen.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::DEFAULT_BUDGET;
use crate::cost::DistanceOracle;
use crate::error::{Error, Result};
use crate::probe::Placement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefinementConfig {
    /// Block side `d`; every sub-problem has `d^2` items.
    pub degree: usize,
    pub rhra_iterations: usize,
    pub seed: u64,
    /// Largest permutation count a single sub-problem may enumerate.
    pub subproblem_budget: u64,
}

impl Default for RefinementConfig {
    fn default() -> Self {
        Self {
            degree: 2,
            rhra_iterations: 350,
            seed: 0,
            subproblem_budget: DEFAULT_BUDGET,
        }
    }
}

impl RefinementConfig {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 2 {
            return Err(Error::InvalidParameter(format!(
                "refinement degree must be at least 2, got {}",
                self.degree
            )));
        }
        let items = self.degree * self.degree;
        let perms = (1..=items as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
        match perms {
            Some(p) if p <= self.subproblem_budget => Ok(()),
            _ => Err(Error::BudgetExceeded {
                required: perms.map_or_else(|| format!("({items})!"), |p| p.to_string()),
                budget: self.subproblem_budget,
            }),
        }
    }
}

/// Result of a refinement run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefineOutcome {
    pub placement: Placement,
    /// Sub-problems solved.
    pub subproblems: u64,
    /// Complete permutations reached by the pruned search.
    pub evaluations: u64,
}

/// `m` with `degree^m == side`, if any.
pub fn exact_power(side: usize, degree: usize) -> Option<u32> {
    let mut size = 1usize;
    let mut m = 0;
    while size < side {
        size = size.checked_mul(degree)?;
        m += 1;
    }
    (size == side).then_some(m)
}

pub fn hra(p: &Placement, oracle: &DistanceOracle, config: &RefinementConfig) -> Result<Placement> {
    hra_observed(p, oracle, config, &mut |_| {}).map(|o| o.placement)
}

/// HRA, calling `observer` after every sub-problem.
pub fn hra_observed(
    p: &Placement,
    oracle: &DistanceOracle,
    config: &RefinementConfig,
    observer: &mut dyn FnMut(&Placement),
) -> Result<RefineOutcome> {
    config.validate()?;
    p.validate_for(oracle.len())?;
    let side = p.side();
    let levels = exact_power(side, config.degree).filter(|&m| m >= 1).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "grid side {side} is not a power of the degree {}",
            config.degree
        ))
    })?;
    let mut refiner = Refiner::new(p.clone(), oracle, config.degree);
    refiner.refine_square(0, 0, levels, observer);
    Ok(refiner.finish())
}

pub fn rhra(p: &Placement, oracle: &DistanceOracle, config: &RefinementConfig) -> Result<Placement> {
    rhra_observed(p, oracle, config, &mut |_| {}).map(|o| o.placement)
}

/// RHRA, calling `observer` after every iteration.
pub fn rhra_observed(
    p: &Placement,
    oracle: &DistanceOracle,
    config: &RefinementConfig,
    observer: &mut dyn FnMut(&Placement),
) -> Result<RefineOutcome> {
    config.validate()?;
    p.validate_for(oracle.len())?;
    let side = p.side();
    let d = config.degree;
    let mut max_level = 0u32;
    while d.pow(max_level + 1) <= side {
        max_level += 1;
    }
    if max_level == 0 {
        return Err(Error::InvalidParameter(format!(
            "degree {d} does not fit in a {side}x{side} grid"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut refiner = Refiner::new(p.clone(), oracle, d);
    for _ in 0..config.rhra_iterations {
        let levels = rng.random_range(1..=max_level);
        let square = d.pow(levels);
        let r0 = rng.random_range(0..=side - square);
        let c0 = rng.random_range(0..=side - square);
        refiner.refine_square(r0, c0, levels, &mut |_| {});
        observer(&refiner.placement);
    }
    Ok(refiner.finish())
}

/// `100 (init - refined) / init`; zero when `init` is zero.
pub fn refinement_percent(init_cost: u64, refined_cost: u64) -> f64 {
    if init_cost == 0 {
        return 0.0;
    }
    100.0 * (init_cost as f64 - refined_cost as f64) / init_cost as f64
}

struct Refiner<'a, 'o> {
    placement: Placement,
    oracle: &'a DistanceOracle<'o>,
    degree: usize,
    subproblems: u64,
    evaluations: u64,
}

impl<'a, 'o> Refiner<'a, 'o> {
    fn new(placement: Placement, oracle: &'a DistanceOracle<'o>, degree: usize) -> Self {
        Self {
            placement,
            oracle,
            degree,
            subproblems: 0,
            evaluations: 0,
        }
    }

    fn finish(self) -> RefineOutcome {
        RefineOutcome {
            placement: self.placement,
            subproblems: self.subproblems,
            evaluations: self.evaluations,
        }
    }

    /// All levels of HRA on the square of side `degree^levels` at `(r0, c0)`.
    fn refine_square(&mut self, r0: usize, c0: usize, levels: u32, observer: &mut dyn FnMut(&Placement)) {
        let d = self.degree;
        let square = d.pow(levels);
        for level in 0..levels {
            let unit = d.pow(level);
            let block = unit * d;
            for br in (r0..r0 + square).step_by(block) {
                for bc in (c0..c0 + square).step_by(block) {
                    self.solve(br, bc, unit);
                    observer(&self.placement);
                }
            }
        }
    }

    /// Best arrangement of the `d x d` units of side `unit` in the block at
    /// `(r0, c0)`, edges to the outside included.
    fn solve(&mut self, r0: usize, c0: usize, unit: usize) {
        let d = self.degree;
        let k = d * d;
        let side = self.placement.side();
        let cells = self.placement.cells();
        let oracle = self.oracle;
        let dist = |a: usize, b: usize| u64::from(oracle.dist(a, b));

        let slot_origin = |s: usize| (r0 + (s / d) * unit, c0 + (s % d) * unit);
        let units: Vec<Vec<usize>> = (0..k)
            .map(|s| {
                let (r, c) = slot_origin(s);
                (0..unit)
                    .flat_map(|i| cells[(r + i) * side + c..(r + i) * side + c + unit].iter().copied())
                    .collect()
            })
            .collect();
        let at = |u: &Vec<usize>, r: usize, c: usize| u[r * unit + c];

        // beside[a][b]: a left of b; above[a][b]: a on top of b
        let mut beside = vec![0u64; k * k];
        let mut above = vec![0u64; k * k];
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    beside[a * k + b] = (0..unit)
                        .map(|i| dist(at(&units[a], i, unit - 1), at(&units[b], i, 0)))
                        .sum();
                    above[a * k + b] = (0..unit)
                        .map(|i| dist(at(&units[a], unit - 1, i), at(&units[b], 0, i)))
                        .sum();
                }
            }
        }

        // outside[a][s]: edges from unit a, put in slot s, to cells outside the block
        let block = unit * d;
        let mut outside = vec![0u64; k * k];
        for s in 0..k {
            let (sr, sc) = slot_origin(s);
            let (row, col) = (s / d, s % d);
            for a in 0..k {
                let u = &units[a];
                let mut total = 0;
                if row == 0 && r0 > 0 {
                    total += (0..unit)
                        .map(|i| dist(at(u, 0, i), cells[(sr - 1) * side + sc + i]))
                        .sum::<u64>();
                }
                if row == d - 1 && r0 + block < side {
                    total += (0..unit)
                        .map(|i| dist(at(u, unit - 1, i), cells[(sr + unit) * side + sc + i]))
                        .sum::<u64>();
                }
                if col == 0 && c0 > 0 {
                    total += (0..unit)
                        .map(|i| dist(at(u, i, 0), cells[(sr + i) * side + sc - 1]))
                        .sum::<u64>();
                }
                if col == d - 1 && c0 + block < side {
                    total += (0..unit)
                        .map(|i| dist(at(u, i, unit - 1), cells[(sr + i) * side + sc + unit]))
                        .sum::<u64>();
                }
                outside[a * k + s] = total;
            }
        }

        // floor[a][s]: least that unit a can add in slot s, counting its outside
        // edges and the cheapest seams to whatever lands left of and above it
        let cheapest_into = |m: &[u64], a: usize| (0..k).filter(|&b| b != a).map(|b| m[b * k + a]).min().unwrap_or(0);
        let mut floor = vec![0u64; k * k];
        for a in 0..k {
            let (left, up) = (cheapest_into(&beside, a), cheapest_into(&above, a));
            for s in 0..k {
                floor[a * k + s] = outside[a * k + s] + if s % d > 0 { left } else { 0 } + if s >= d { up } else { 0 };
            }
        }

        let mut search = PermutationSearch {
            d,
            beside: &beside,
            above: &above,
            outside: &outside,
            floor: &floor,
            assign: vec![0; k],
            taken: vec![false; k],
            best_cost: u64::MAX,
            best: Vec::new(),
            leaves: 0,
        };
        search.descend(0, 0);
        self.subproblems += 1;
        self.evaluations += search.leaves;
        let best = search.best;

        // The identity is the lexicographically first permutation, so it is
        // kept whenever nothing is strictly better.
        if best.iter().enumerate().all(|(s, &a)| s == a) {
            return;
        }
        let cells = self.placement.cells_mut();
        for (s, &a) in best.iter().enumerate() {
            let (r, c) = slot_origin(s);
            for i in 0..unit {
                cells[(r + i) * side + c..(r + i) * side + c + unit]
                    .copy_from_slice(&units[a][i * unit..(i + 1) * unit]);
            }
        }
    }
}

/// Lexicographic enumeration of unit-to-slot permutations, skipping
/// prefixes whose cost plus a lower bound on the remaining slots already
/// reaches the best complete one. Only strictly cheaper permutations replace
/// the best, so the result is the lexicographically first optimum.
struct PermutationSearch<'t> {
    d: usize,
    beside: &'t [u64],
    above: &'t [u64],
    outside: &'t [u64],
    floor: &'t [u64],
    assign: Vec<usize>,
    taken: Vec<bool>,
    best_cost: u64,
    best: Vec<usize>,
    leaves: u64,
}

impl PermutationSearch<'_> {
    fn descend(&mut self, slot: usize, partial: u64) {
        let k = self.assign.len();
        if slot == k {
            self.leaves += 1;
            if partial < self.best_cost {
                self.best_cost = partial;
                self.best.clone_from(&self.assign);
            }
            return;
        }
        // every later slot gets some unit that is still free now
        let ahead: u64 = (slot + 1..k)
            .map(|s| {
                (0..k)
                    .filter(|&a| !self.taken[a])
                    .map(|a| self.floor[a * k + s])
                    .min()
                    .unwrap_or(0)
            })
            .sum();
        let (row, col) = (slot / self.d, slot % self.d);
        for a in 0..k {
            if self.taken[a] {
                continue;
            }
            let mut cost = partial + self.outside[a * k + slot];
            if col > 0 {
                cost += self.beside[self.assign[slot - 1] * k + a];
            }
            if row > 0 {
                cost += self.above[self.assign[slot - self.d] * k + a];
            }
            if cost + ahead >= self.best_cost {
                continue;
            }
            self.taken[a] = true;
            self.assign[slot] = a;
            self.descend(slot + 1, cost);
            self.taken[a] = false;
        }
    }
}
