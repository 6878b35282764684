//! Row epitaxial placement.
//!
//! Cells are filled row-major. The candidates for a cell are the probes
//! currently sitting between that cell and the end of the look-ahead band
//! (the current row plus the next `lookahead - 1` rows); the one closest to
//! the already fixed left and upper neighbors is swapped in.

use super::HeuristicConfig;
use crate::cost::DistanceOracle;
use crate::error::Result;
use crate::probe::Placement;

pub fn place_repx(initial: &Placement, oracle: &DistanceOracle, config: &HeuristicConfig) -> Result<Placement> {
    config.validate()?;
    initial.validate_for(oracle.len())?;
    let side = initial.side();
    let n = initial.len();
    let mut p = initial.clone();
    let cells = p.cells_mut();

    for idx in 0..n {
        let (row, col) = (idx / side, idx % side);
        let band_end = ((row + config.repx_lookahead_rows) * side).min(n);
        let left = (col > 0).then(|| cells[idx - 1]);
        let up = (row > 0).then(|| cells[idx - side]);

        let mut best = (u64::MAX, usize::MAX, idx);
        for (pos, &probe) in cells.iter().enumerate().take(band_end).skip(idx) {
            let score = left.map_or(0, |l| u64::from(oracle.dist(probe, l)))
                + up.map_or(0, |u| u64::from(oracle.dist(probe, u)));
            if (score, probe) < (best.0, best.1) {
                best = (score, probe, pos);
            }
        }
        cells.swap(idx, best.2);
    }
    Ok(p)
}
