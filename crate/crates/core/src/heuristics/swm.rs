//! Sliding window matching.
//!
//! A `w x w` window sweeps the grid row-major in steps of `s`. Inside each
//! window the cells of one checkerboard color are pairwise non-adjacent, so
//! the cost of putting a probe on such a cell depends only on its (fixed)
//! neighbors. The probes on those cells are lifted and reassigned with an
//! exact minimum-cost assignment, first for one color and then the other.
//! The identity assignment is always feasible, so no step can raise the cost.

use super::assignment::min_cost_assignment;
use super::HeuristicConfig;
use crate::cost::{cost_unchecked, DistanceOracle};
use crate::error::Result;
use crate::probe::{neighbor_indices, Placement};

pub fn place_swm(initial: &Placement, oracle: &DistanceOracle, config: &HeuristicConfig) -> Result<Placement> {
    place_swm_traced(initial, oracle, config).map(|(p, _)| p)
}

/// Like [`place_swm`], also returning the border length after every window.
pub fn place_swm_traced(
    initial: &Placement,
    oracle: &DistanceOracle,
    config: &HeuristicConfig,
) -> Result<(Placement, Vec<u64>)> {
    config.validate()?;
    initial.validate_for(oracle.len())?;
    let side = initial.side();
    let window = config.swm_window.min(side);
    let starts = window_starts(side, window, config.swm_step);

    let mut p = initial.clone();
    let mut cost = cost_unchecked(p.cells(), side, oracle);
    let mut trace = Vec::new();
    for &r0 in &starts {
        for &c0 in &starts {
            for color in 0..2 {
                cost -= rematch(p.cells_mut(), side, oracle, r0, c0, window, color);
            }
            trace.push(cost);
        }
    }
    Ok((p, trace))
}

/// `0, s, 2s, ...` while the window fits, plus a final flush position so the
/// last rows and columns are covered too.
fn window_starts(side: usize, window: usize, step: usize) -> Vec<usize> {
    let last = side - window;
    let mut starts: Vec<usize> = (0..=last).step_by(step).collect();
    if starts.last() != Some(&last) {
        starts.push(last);
    }
    starts
}

/// Reassigns the probes on one color class of a window; returns the saving.
fn rematch(
    cells: &mut [usize],
    side: usize,
    oracle: &DistanceOracle,
    r0: usize,
    c0: usize,
    window: usize,
    color: usize,
) -> u64 {
    let slots: Vec<usize> = (r0..r0 + window)
        .flat_map(|r| (c0..c0 + window).map(move |c| (r, c)))
        .filter(|(r, c)| (r + c) % 2 == color)
        .map(|(r, c)| r * side + c)
        .collect();
    if slots.len() < 2 {
        return 0;
    }
    let items: Vec<usize> = slots.iter().map(|&s| cells[s]).collect();
    let costs: Vec<Vec<i64>> = items
        .iter()
        .map(|&probe| {
            slots
                .iter()
                .map(|&slot| {
                    neighbor_indices(slot, side)
                        .map(|nb| i64::from(oracle.dist(probe, cells[nb])))
                        .sum()
                })
                .collect()
        })
        .collect();
    let current: i64 = (0..items.len()).map(|i| costs[i][i]).sum();
    let (best, assignment) = min_cost_assignment(&costs);
    if best >= current {
        return 0;
    }
    for (i, &slot_index) in assignment.iter().enumerate() {
        cells[slots[slot_index]] = items[i];
    }
    (current - best) as u64
}
