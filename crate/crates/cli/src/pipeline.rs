//! Named solver pipelines: a placement heuristic or the threaded tour,
//! optionally followed by HRA and/or RHRA.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use blm_core::refine::{hra, rhra};
use blm_core::{
    approx_solve, placement_cost, DistanceOracle, Heuristic, HeuristicConfig, Placement, RefinementConfig, TourMethod,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Heuristic(Heuristic),
    /// Tour threaded onto the grid.
    Tsp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pipeline {
    pub base: Base,
    pub hra: bool,
    pub rhra: bool,
}

impl Pipeline {
    pub fn needs_seed(&self) -> bool {
        self.rhra || matches!(self.base, Base::Heuristic(Heuristic::Epx | Heuristic::Qepx))
    }

    pub fn is_refined(&self) -> bool {
        self.hra || self.rhra
    }
}

impl FromStr for Pipeline {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('+');
        let head = parts.next().unwrap_or_default();
        let base = if head.eq_ignore_ascii_case("tsp") {
            Base::Tsp
        } else {
            Base::Heuristic(head.parse()?)
        };
        let mut pipeline = Pipeline {
            base,
            hra: false,
            rhra: false,
        };
        for step in parts {
            match step.to_ascii_lowercase().as_str() {
                "hra" if !pipeline.hra && !pipeline.rhra => pipeline.hra = true,
                "rhra" if !pipeline.rhra => pipeline.rhra = true,
                _ => bail!("bad algorithm {s:?}: expected NAME, NAME+hra, NAME+rhra or NAME+hra+rhra"),
            }
        }
        Ok(pipeline)
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::Heuristic(h) => write!(f, "{h}")?,
            Base::Tsp => f.write_str("tsp")?,
        }
        if self.hra {
            f.write_str("+hra")?;
        }
        if self.rhra {
            f.write_str("+rhra")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    pub heuristic: HeuristicConfig,
    pub refinement: RefinementConfig,
    pub tour: Option<TourMethod>,
}

impl Settings {
    pub fn tour_method(&self) -> TourMethod {
        self.tour.unwrap_or(TourMethod::MstDouble)
    }
}

#[derive(Debug, Clone)]
pub struct Run {
    pub placement: Placement,
    /// Cost of the base placement, before any refinement.
    pub base_cost: u64,
    pub final_cost: u64,
    /// Time spent in the algorithms, excluding cost evaluation.
    pub elapsed: Duration,
}

pub fn place(oracle: &DistanceOracle, side: usize, base: Base, settings: &Settings) -> Result<Placement> {
    Ok(match base {
        Base::Heuristic(h) => h.place(oracle, side, &settings.heuristic)?,
        Base::Tsp => approx_solve(oracle, side, settings.tour_method())?.placement,
    })
}

/// Refines `p` with HRA and/or RHRA as requested.
pub fn refine(
    p: Placement,
    oracle: &DistanceOracle,
    hra_step: bool,
    rhra_step: bool,
    config: &RefinementConfig,
) -> Result<Placement> {
    let mut p = p;
    if hra_step {
        p = hra(&p, oracle, config)?;
    }
    if rhra_step {
        p = rhra(&p, oracle, config)?;
    }
    Ok(p)
}

pub fn run(pipeline: Pipeline, oracle: &DistanceOracle, side: usize, settings: &Settings) -> Result<Run> {
    let start = Instant::now();
    let base = place(oracle, side, pipeline.base, settings)?;
    let mut elapsed = start.elapsed();
    let base_cost = placement_cost(&base, oracle)?;
    let start = Instant::now();
    let placement = refine(base, oracle, pipeline.hra, pipeline.rhra, &settings.refinement)?;
    elapsed += start.elapsed();
    let final_cost = placement_cost(&placement, oracle)?;
    Ok(Run {
        placement,
        base_cost,
        final_cost,
        elapsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in ["rand", "epx+hra", "qepx+rhra", "sort+hra+rhra", "tsp", "tsp+hra"] {
            assert_eq!(name.parse::<Pipeline>().unwrap().to_string(), name);
        }
        assert!("epx+rhra+hra".parse::<Pipeline>().is_err());
        assert!("epx+hra+hra".parse::<Pipeline>().is_err());
        assert!("greedy".parse::<Pipeline>().is_err());
        assert!("EPX".parse::<Pipeline>().unwrap().needs_seed());
        assert!(!"sort+hra".parse::<Pipeline>().unwrap().needs_seed());
    }
}
