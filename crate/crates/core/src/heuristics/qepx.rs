//! Quad epitaxial placement: EPX on four quadrants, then the best
//! arrangement of the four grown blocks.
//!
//! The probes are dealt to the quadrants in four contiguous runs, either of
//! the input order or of the lexicographically sorted order. Every
//! arrangement of the blocks keeps their internal cost, so the search only
//! compares the two seams (the middle row boundary and the middle column
//! boundary).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::epx::grow;
use super::{check_square, place_sort, HeuristicConfig};
use crate::cost::DistanceOracle;
use crate::error::{Error, Result};
use crate::probe::Placement;

/// Which probes go to which quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadrantSplit {
    /// Consecutive runs of the input order.
    InputOrder,
    /// Consecutive runs of the lexicographic order, so each quadrant gets
    /// probes that share their leading symbols.
    Sorted,
}

impl QuadrantSplit {
    pub fn name(self) -> &'static str {
        match self {
            QuadrantSplit::InputOrder => "input",
            QuadrantSplit::Sorted => "sorted",
        }
    }
}

impl fmt::Display for QuadrantSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadrantSplit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "input" => Ok(QuadrantSplit::InputOrder),
            "sorted" => Ok(QuadrantSplit::Sorted),
            _ => Err(Error::InvalidParameter(format!("unknown quadrant split {s:?}"))),
        }
    }
}

/// A rectangular block of probe ids, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrantBlock {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<usize>,
}

impl QuadrantBlock {
    /// The block turned a quarter turn clockwise, `times` times.
    pub fn rotated(&self, times: usize) -> QuadrantBlock {
        let mut block = self.clone();
        for _ in 0..times % 4 {
            let (rows, cols) = (block.rows, block.cols);
            let mut cells = vec![0; rows * cols];
            // new (r, c) comes from old (rows - 1 - c, r)
            for r in 0..cols {
                for c in 0..rows {
                    cells[r * rows + c] = block.cells[(rows - 1 - c) * cols + r];
                }
            }
            block = QuadrantBlock {
                rows: cols,
                cols: rows,
                cells,
            };
        }
        block
    }
}

pub fn place_qepx(oracle: &DistanceOracle, side: usize, config: &HeuristicConfig) -> Result<Placement> {
    let blocks = epx_quadrants(oracle, side, config)?;
    arrange_quadrants(oracle, side, &blocks, config.qepx_orientations)
}

/// Runs EPX independently on the four quadrants: top-left, top-right,
/// bottom-left, bottom-right. For odd sides the top and left parts get the
/// extra row and column. Quadrant `q` receives the `q`-th run of probes in
/// the order chosen by `config.qepx_split`.
pub fn epx_quadrants(oracle: &DistanceOracle, side: usize, config: &HeuristicConfig) -> Result<Vec<QuadrantBlock>> {
    check_square(oracle.len(), side)?;
    if side < 2 {
        return Err(Error::InvalidParameter("QEPX needs a grid side of at least 2".into()));
    }
    let big = side.div_ceil(2);
    let small = side / 2;
    let shapes = [(big, big), (big, small), (small, big), (small, small)];

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let seeds: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();

    let order: Vec<usize> = match config.qepx_split {
        QuadrantSplit::InputOrder => (0..oracle.len()).collect(),
        QuadrantSplit::Sorted => place_sort(oracle.probes(), side)?.into_cells(),
    };
    let mut start = 0;
    let jobs: Vec<(usize, usize, Vec<usize>, u64)> = shapes
        .iter()
        .zip(&seeds)
        .map(|(&(rows, cols), &seed)| {
            let ids = order[start..start + rows * cols].to_vec();
            start += rows * cols;
            (rows, cols, ids, seed)
        })
        .collect();

    Ok(jobs
        .into_par_iter()
        .map(|(rows, cols, ids, seed)| QuadrantBlock {
            rows,
            cols,
            cells: grow(oracle, &ids, rows, cols, seed),
        })
        .collect())
}

/// Places four blocks in the corners of the grid minimizing the seam cost.
///
/// Arrangements are the permutations of blocks over the corners (top-left,
/// top-right, bottom-left, bottom-right) in lexicographic order, each with
/// all quarter-turn combinations when `orientations` is set. Arrangements
/// whose block shapes do not tile the grid are skipped. The first minimum
/// wins, so with equal seams the identity arrangement is kept.
pub fn arrange_quadrants(
    oracle: &DistanceOracle,
    side: usize,
    blocks: &[QuadrantBlock],
    orientations: bool,
) -> Result<Placement> {
    if blocks.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "expected 4 blocks, got {}",
            blocks.len()
        )));
    }
    let turns = if orientations { 256 } else { 1 };
    let rotations: Vec<[QuadrantBlock; 4]> = blocks
        .iter()
        .map(|b| [b.rotated(0), b.rotated(1), b.rotated(2), b.rotated(3)])
        .collect();

    let mut grid = vec![0usize; side * side];
    let mut best: Option<(u64, Vec<usize>)> = None;
    for perm in (0..4).permutations(4) {
        for code in 0..turns {
            let oriented: Vec<&QuadrantBlock> = (0..4)
                .map(|slot| &rotations[perm[slot]][(code >> (2 * (3 - slot))) & 3])
                .collect();
            let [tl, tr, bl, br] = [oriented[0], oriented[1], oriented[2], oriented[3]];
            let fits = tl.rows == tr.rows
                && bl.rows == br.rows
                && tl.cols == bl.cols
                && tr.cols == br.cols
                && tl.rows + bl.rows == side
                && tl.cols + tr.cols == side;
            if !fits {
                continue;
            }
            let (split_row, split_col) = (tl.rows, tl.cols);
            for (block, (r0, c0)) in
                [tl, tr, bl, br]
                    .into_iter()
                    .zip([(0, 0), (0, split_col), (split_row, 0), (split_row, split_col)])
            {
                for r in 0..block.rows {
                    let dst = (r0 + r) * side + c0;
                    grid[dst..dst + block.cols].copy_from_slice(&block.cells[r * block.cols..(r + 1) * block.cols]);
                }
            }
            let seam = seam_cost(&grid, side, split_row, split_col, oracle);
            if best.as_ref().is_none_or(|(b, _)| seam < *b) {
                best = Some((seam, grid.clone()));
            }
        }
    }
    let (_, cells) = best.ok_or_else(|| Error::InvalidParameter("blocks do not tile the grid".into()))?;
    Placement::new(side, cells)
}

fn seam_cost(grid: &[usize], side: usize, split_row: usize, split_col: usize, oracle: &DistanceOracle) -> u64 {
    let mut total = 0u64;
    for c in 0..side {
        total += u64::from(oracle.dist(grid[(split_row - 1) * side + c], grid[split_row * side + c]));
    }
    for r in 0..side {
        total += u64::from(oracle.dist(grid[r * side + split_col - 1], grid[r * side + split_col]));
    }
    total
}
