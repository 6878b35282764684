//! Tour construction and threading: the TSP-based approximation.
//!
//! A Hamming TSP tour is laid out on the grid boustrophedon style (even rows
//! left to right, odd rows right to left), so consecutive tour entries are
//! always grid neighbors. With an MST-doubling tour (at most twice the optimal
//! tour) the threaded placement costs at most `4(N + 1)` times the optimum.

use std::fmt;
use std::str::FromStr;

use crate::cost::DistanceOracle;
use crate::error::{Error, Result};
use crate::probe::Placement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    order: Vec<usize>,
    cycle_cost: u64,
}

impl Tour {
    /// Validates `order` as a permutation of the oracle's probes and prices
    /// the closed cycle.
    pub fn new(order: Vec<usize>, oracle: &DistanceOracle) -> Result<Self> {
        let n = oracle.len();
        if order.len() != n {
            return Err(Error::SizeMismatch(format!("tour of {} for {n} probes", order.len())));
        }
        let mut seen = vec![false; n];
        for &id in &order {
            if id >= n || std::mem::replace(&mut seen[id], true) {
                return Err(Error::InvalidParameter(format!("tour is not a permutation (at {id})")));
            }
        }
        let cycle_cost = cycle_cost(&order, oracle);
        Ok(Self { order, cycle_cost })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn cycle_cost(&self) -> u64 {
        self.cycle_cost
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn cycle_cost(order: &[usize], oracle: &DistanceOracle) -> u64 {
    let n = order.len();
    (0..n)
        .map(|i| u64::from(oracle.dist(order[i], order[(i + 1) % n])))
        .sum::<u64>()
        * u64::from(n > 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TourMethod {
    /// Preorder walk of a minimum spanning tree; at most twice the optimum.
    MstDouble,
    /// Nearest neighbor from probe 0, then 2-opt to a local optimum.
    NearestNeighbor2Opt,
}

impl TourMethod {
    pub fn name(self) -> &'static str {
        match self {
            TourMethod::MstDouble => "mst_double",
            TourMethod::NearestNeighbor2Opt => "nn_2opt",
        }
    }
}

impl fmt::Display for TourMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TourMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mst_double" | "mst" => Ok(TourMethod::MstDouble),
            "nn_2opt" | "2opt" => Ok(TourMethod::NearestNeighbor2Opt),
            _ => Err(Error::InvalidParameter(format!("unknown tour method {s:?}"))),
        }
    }
}

pub fn build_tour(oracle: &DistanceOracle, method: TourMethod) -> Result<Tour> {
    let n = oracle.len();
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "a tour needs at least 3 probes, got {n}"
        )));
    }
    let order = match method {
        TourMethod::MstDouble => mst_preorder(oracle),
        TourMethod::NearestNeighbor2Opt => {
            let mut order = nearest_neighbor(oracle);
            two_opt(&mut order, oracle);
            order
        }
    };
    Tour::new(order, oracle)
}

/// Dense Prim from probe 0, then a preorder walk visiting children by id.
fn mst_preorder(oracle: &DistanceOracle) -> Vec<usize> {
    let n = oracle.len();
    let mut in_tree = vec![false; n];
    let mut key = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    key[0] = 0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by_key(|&v| (key[v], v))
            .expect("vertices remain");
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            children[parent[u]].push(u);
        }
        for v in 0..n {
            if !in_tree[v] {
                let d = oracle.dist(u, v);
                if d < key[v] {
                    key[v] = d;
                    parent[v] = u;
                }
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        order.push(u);
        children[u].sort_unstable();
        stack.extend(children[u].iter().rev());
    }
    order
}

fn nearest_neighbor(oracle: &DistanceOracle) -> Vec<usize> {
    let n = oracle.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = 0;
    visited[0] = true;
    order.push(0);
    for _ in 1..n {
        let next = (0..n)
            .filter(|&v| !visited[v])
            .min_by_key(|&v| (oracle.dist(current, v), v))
            .expect("vertices remain");
        visited[next] = true;
        order.push(next);
        current = next;
    }
    order
}

/// First-improvement 2-opt until no exchange of two edges shortens the cycle.
fn two_opt(order: &mut [usize], oracle: &DistanceOracle) {
    let n = order.len();
    if n < 4 {
        return;
    }
    let d = |a: usize, b: usize| i64::from(oracle.dist(a, b));
    loop {
        let mut improved = false;
        for i in 0..n - 2 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (order[i], order[i + 1]);
                let (c, e) = (order[j], order[(j + 1) % n]);
                if d(a, c) + d(b, e) < d(a, b) + d(c, e) {
                    order[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// True when no single 2-opt exchange improves the tour.
pub fn is_two_opt_optimal(tour: &Tour, oracle: &DistanceOracle) -> bool {
    let order = tour.order();
    let n = order.len();
    let d = |a: usize, b: usize| i64::from(oracle.dist(a, b));
    (0..n.saturating_sub(2)).all(|i| {
        (i + 2..n).all(|j| {
            (i == 0 && j == n - 1)
                || d(order[i], order[j]) + d(order[i + 1], order[(j + 1) % n])
                    >= d(order[i], order[i + 1]) + d(order[j], order[(j + 1) % n])
        })
    })
}

/// Serpentine position of tour step `k` on a grid of side `side`.
#[inline]
fn serpentine_cell(k: usize, side: usize) -> usize {
    let (row, offset) = (k / side, k % side);
    let col = if row % 2 == 0 { offset } else { side - 1 - offset };
    row * side + col
}

/// Lays the tour onto the grid row by row, reversing every odd row.
pub fn thread_tour(tour: &Tour, side: usize) -> Result<Placement> {
    if side * side != tour.len() {
        return Err(Error::SizeMismatch(format!(
            "tour of {} does not fill a {side}x{side} grid",
            tour.len()
        )));
    }
    let mut cells = vec![0; tour.len()];
    for (k, &id) in tour.order().iter().enumerate() {
        cells[serpentine_cell(k, side)] = id;
    }
    Placement::new(side, cells)
}

/// Reads a placement back in serpentine order (inverse of [`thread_tour`]).
pub fn unthread(p: &Placement) -> Vec<usize> {
    let side = p.side();
    (0..p.len()).map(|k| p.cells()[serpentine_cell(k, side)]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxSolution {
    pub placement: Placement,
    pub tour: Tour,
    pub method: TourMethod,
    /// A-priori bound on `cost / OPT`: `4(N + 1)` for MST doubling; `None`
    /// when the tour carries no guarantee.
    pub ratio_bound: Option<u64>,
}

/// Builds a tour and threads it onto the grid.
pub fn approx_solve(oracle: &DistanceOracle, side: usize, method: TourMethod) -> Result<ApproxSolution> {
    let tour = build_tour(oracle, method)?;
    let placement = thread_tour(&tour, side)?;
    let ratio_bound = match method {
        TourMethod::MstDouble => Some(4 * (side as u64 + 1)),
        TourMethod::NearestNeighbor2Opt => None,
    };
    Ok(ApproxSolution {
        placement,
        tour,
        method,
        ratio_bound,
    })
}
