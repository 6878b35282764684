//! Border length of a placement, and the incremental costs local moves need.
//!
//! Every grid edge is counted once, oriented right and down from its upper
//! left endpoint.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::probe::{distance, neighbor_indices, GridCoord, Placement, ProbeSet};

/// Largest probe count for which [`DistanceOracle::auto`] materializes the
/// full distance matrix.
pub const DEFAULT_MATRIX_CAP: usize = 8192;

/// Hamming distances between the probes of a [`ProbeSet`].
///
/// In full-matrix mode the `n(n-1)/2` distances are stored in a flat upper
/// triangular array; otherwise each query recomputes the distance.
#[derive(Debug, Clone)]
pub struct DistanceOracle<'a> {
    probes: &'a ProbeSet,
    matrix: Option<Vec<u32>>,
}

impl<'a> DistanceOracle<'a> {
    pub fn on_demand(probes: &'a ProbeSet) -> Self {
        Self { probes, matrix: None }
    }

    /// Builds the full matrix, refusing when there are more than `cap` probes.
    pub fn full_matrix(probes: &'a ProbeSet, cap: usize) -> Result<Self> {
        let n = probes.len();
        if n > cap {
            return Err(Error::InvalidParameter(format!(
                "{n} probes exceed the full-matrix cap of {cap}"
            )));
        }
        let matrix: Vec<u32> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let a = probes.probe(i);
                (i + 1..n).map(move |j| distance(a, probes.probe(j)))
            })
            .collect();
        debug_assert_eq!(matrix.len(), n * n.saturating_sub(1) / 2);
        Ok(Self {
            probes,
            matrix: Some(matrix),
        })
    }

    /// Full matrix up to [`DEFAULT_MATRIX_CAP`] probes, on demand above.
    pub fn auto(probes: &'a ProbeSet) -> Self {
        Self::full_matrix(probes, DEFAULT_MATRIX_CAP).unwrap_or_else(|_| Self::on_demand(probes))
    }

    pub fn probes(&self) -> &'a ProbeSet {
        self.probes
    }

    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }

    pub fn is_materialized(&self) -> bool {
        self.matrix.is_some()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        match &self.matrix {
            Some(m) => {
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                let n = self.probes.len();
                m[i * (2 * n - i - 1) / 2 + (j - i - 1)]
            }
            None => distance(self.probes.probe(i), self.probes.probe(j)),
        }
    }
}

/// An axis-aligned rectangle of cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub row: usize,
    pub col: usize,
    pub height: usize,
    pub width: usize,
}

impl Window {
    pub const fn new(row: usize, col: usize, height: usize, width: usize) -> Self {
        Self {
            row,
            col,
            height,
            width,
        }
    }

    pub const fn square(row: usize, col: usize, side: usize) -> Self {
        Self::new(row, col, side, side)
    }

    #[inline]
    pub fn contains(&self, r: usize, c: usize) -> bool {
        r >= self.row && r < self.row + self.height && c >= self.col && c < self.col + self.width
    }

    fn check(&self, side: usize) -> Result<()> {
        if self.height == 0 || self.width == 0 {
            return Err(Error::InvalidParameter("empty window".into()));
        }
        if self.row + self.height > side || self.col + self.width > side {
            return Err(Error::InvalidParameter(format!(
                "window {self:?} exceeds a {side}x{side} grid"
            )));
        }
        Ok(())
    }
}

/// Total border length: the sum of distances over all `2N(N-1)` grid edges.
pub fn placement_cost(p: &Placement, oracle: &DistanceOracle) -> Result<u64> {
    p.validate_for(oracle.len())?;
    Ok(cost_unchecked(p.cells(), p.side(), oracle))
}

pub(crate) fn cost_unchecked(cells: &[usize], side: usize, oracle: &DistanceOracle) -> u64 {
    let mut total = 0u64;
    for r in 0..side {
        let row = &cells[r * side..(r + 1) * side];
        for c in 0..side {
            let id = row[c];
            if c + 1 < side {
                total += u64::from(oracle.dist(id, row[c + 1]));
            }
            if r + 1 < side {
                total += u64::from(oracle.dist(id, cells[(r + 1) * side + c]));
            }
        }
    }
    total
}

/// `Cost(after) - Cost(before)` for exchanging the probes at `a` and `b`.
pub fn swap_delta(p: &Placement, a: GridCoord, b: GridCoord, oracle: &DistanceOracle) -> Result<i64> {
    let side = p.side();
    if !a.in_bounds(side) || !b.in_bounds(side) {
        return Err(Error::InvalidParameter(format!("{a} or {b} out of bounds")));
    }
    if a == b {
        return Err(Error::InvalidParameter(format!("cannot swap {a} with itself")));
    }
    let (ia, ib) = (a.index(side), b.index(side));
    let cells = p.cells();
    let (pa, pb) = (cells[ia], cells[ib]);
    let mut delta = 0i64;
    // The a-b edge itself (if any) keeps its distance.
    for x in neighbor_indices(ia, side).filter(|&x| x != ib) {
        delta += i64::from(oracle.dist(pb, cells[x])) - i64::from(oracle.dist(pa, cells[x]));
    }
    for y in neighbor_indices(ib, side).filter(|&y| y != ia) {
        delta += i64::from(oracle.dist(pa, cells[y])) - i64::from(oracle.dist(pb, cells[y]));
    }
    Ok(delta)
}

/// Cost of the edges inside `window`, plus the edges crossing its border when
/// `include_boundary` is set.
pub fn region_cost(p: &Placement, window: Window, oracle: &DistanceOracle, include_boundary: bool) -> Result<u64> {
    p.validate_for(oracle.len())?;
    let side = p.side();
    window.check(side)?;
    let cells = p.cells();
    let mut total = 0u64;
    for r in window.row..window.row + window.height {
        for c in window.col..window.col + window.width {
            let here = cells[r * side + c];
            // right and down edges: count when the other end is inside, or
            // crosses out and boundary edges are wanted
            if c + 1 < side && (include_boundary || window.contains(r, c + 1)) {
                total += u64::from(oracle.dist(here, cells[r * side + c + 1]));
            }
            if r + 1 < side && (include_boundary || window.contains(r + 1, c)) {
                total += u64::from(oracle.dist(here, cells[(r + 1) * side + c]));
            }
            // left and up edges only matter when they leave the window
            if include_boundary {
                if c > 0 && !window.contains(r, c - 1) {
                    total += u64::from(oracle.dist(here, cells[r * side + c - 1]));
                }
                if r > 0 && !window.contains(r - 1, c) {
                    total += u64::from(oracle.dist(here, cells[(r - 1) * side + c]));
                }
            }
        }
    }
    Ok(total)
}
