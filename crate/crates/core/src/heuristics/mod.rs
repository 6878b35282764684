//! Initial placement heuristics: input order (RAND), lexicographic order
//! (SORT), sliding window matching (SWM), epitaxial growth (EPX), row
//! epitaxial (REPX) and quad epitaxial (QEPX).

mod assignment;
mod epx;
mod qepx;
mod repx;
mod swm;

use std::fmt;
use std::str::FromStr;

pub use assignment::min_cost_assignment;
pub use epx::place_epx;
pub use qepx::{arrange_quadrants, epx_quadrants, place_qepx, QuadrantBlock, QuadrantSplit};
pub use repx::place_repx;
pub use swm::{place_swm, place_swm_traced};

use crate::cost::DistanceOracle;
use crate::error::{Error, Result};
use crate::probe::{Placement, ProbeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicConfig {
    /// Side of the SWM window.
    pub swm_window: usize,
    /// Distance between consecutive SWM window positions.
    pub swm_step: usize,
    /// Rows (current one included) REPX may draw candidates from.
    pub repx_lookahead_rows: usize,
    /// Let QEPX also rotate quadrants when arranging them.
    pub qepx_orientations: bool,
    /// How QEPX deals the probes to its quadrants.
    pub qepx_split: QuadrantSplit,
    pub seed: u64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Self {
            swm_window: 6,
            swm_step: 3,
            repx_lookahead_rows: 3,
            qepx_orientations: false,
            qepx_split: QuadrantSplit::Sorted,
            seed: 0,
        }
    }
}

impl HeuristicConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.swm_window < 2 {
            return Err(Error::InvalidParameter("SWM window must be at least 2".into()));
        }
        if self.swm_step == 0 || self.swm_step > self.swm_window {
            return Err(Error::InvalidParameter(format!(
                "SWM step {} must be in 1..={}",
                self.swm_step, self.swm_window
            )));
        }
        if self.repx_lookahead_rows == 0 {
            return Err(Error::InvalidParameter("REPX look-ahead must be at least 1 row".into()));
        }
        Ok(())
    }
}

/// Probe `i` at cell `i`: the order in which the probes were given.
pub fn place_rand(probes: &ProbeSet, side: usize) -> Result<Placement> {
    check_square(probes.len(), side)?;
    Ok(Placement::identity(side))
}

/// Probes in lexicographic order of their symbol sequences, row-major.
/// Equal probes keep their input order.
pub fn place_sort(probes: &ProbeSet, side: usize) -> Result<Placement> {
    check_square(probes.len(), side)?;
    let mut ids: Vec<usize> = (0..probes.len()).collect();
    ids.sort_by(|&a, &b| probes.probe(a).cmp(probes.probe(b)));
    Placement::new(side, ids)
}

pub(crate) fn check_square(count: usize, side: usize) -> Result<()> {
    if side == 0 || side * side != count {
        return Err(Error::SizeMismatch(format!(
            "{count} probes do not fill a {side}x{side} grid"
        )));
    }
    Ok(())
}

/// The heuristic roster, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    Rand,
    Sort,
    Swm,
    Repx,
    Epx,
    Qepx,
}

impl Heuristic {
    pub const ALL: [Heuristic; 6] = [
        Heuristic::Rand,
        Heuristic::Sort,
        Heuristic::Swm,
        Heuristic::Repx,
        Heuristic::Epx,
        Heuristic::Qepx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Rand => "rand",
            Heuristic::Sort => "sort",
            Heuristic::Swm => "swm",
            Heuristic::Repx => "repx",
            Heuristic::Epx => "epx",
            Heuristic::Qepx => "qepx",
        }
    }

    /// Runs the heuristic. SWM and REPX improve the sorted placement.
    pub fn place(self, oracle: &DistanceOracle, side: usize, config: &HeuristicConfig) -> Result<Placement> {
        config.validate()?;
        let probes = oracle.probes();
        match self {
            Heuristic::Rand => place_rand(probes, side),
            Heuristic::Sort => place_sort(probes, side),
            Heuristic::Swm => place_swm(&place_sort(probes, side)?, oracle, config),
            Heuristic::Repx => place_repx(&place_sort(probes, side)?, oracle, config),
            Heuristic::Epx => place_epx(oracle, side, config),
            Heuristic::Qepx => place_qepx(oracle, side, config),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown heuristic {s:?}")))
    }
}
