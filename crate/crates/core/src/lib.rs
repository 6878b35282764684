//! Border length minimization on square probe arrays.
//!
//! `N^2` equal-length strings are placed on an `N x N` grid so that the sum
//! of Hamming distances between grid neighbors (the border length) is small.
//! This crate provides the cost model, the classic placement heuristics,
//! monotone hierarchical refinement, a TSP threading approximation, a simple
//! lower bound, exhaustive oracles for tiny instances and generators for the
//! hardness-reduction gadgets.
//!
//! ```
//! use blm_core::{Alphabet, DistanceOracle, Heuristic, HeuristicConfig, ProbeSet, placement_cost};
//!
//! let probes = ProbeSet::from_strs(Alphabet::binary(), &["00", "11", "01", "10"]).unwrap();
//! let oracle = DistanceOracle::auto(&probes);
//! let p = Heuristic::Epx.place(&oracle, 2, &HeuristicConfig::default()).unwrap();
//! assert_eq!(placement_cost(&p, &oracle).unwrap(), 4);
//! ```

pub mod bounds;
pub mod cost;
mod error;
pub mod heuristics;
pub mod probe;
pub mod reductions;
pub mod refine;
pub mod report;
pub mod tour;

pub use bounds::{brute_force_htsp, brute_force_opt, lower_bound, BruteForceOptions, DEFAULT_BUDGET};
pub use cost::{placement_cost, region_cost, swap_delta, DistanceOracle, Window};
pub use error::{Error, Result};
pub use heuristics::{Heuristic, HeuristicConfig};
pub use probe::{code_set, concat, hamming, neighbors, rep, square_side, Alphabet, GridCoord, Placement, ProbeSet};
pub use reductions::{ReductionInstance, ReductionKind};
pub use refine::{hra, refinement_percent, rhra, RefinementConfig};
pub use report::{SolveReport, REPORT_COLUMNS};
pub use tour::{approx_solve, build_tour, thread_tour, Tour, TourMethod};
