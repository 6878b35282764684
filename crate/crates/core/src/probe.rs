//! Probe strings, alphabets, grid placements and the elementary string
//! operations (Hamming distance, concatenation, replication, one-hot codes).
//!
//! Strings are stored as symbol-index buffers: symbol `i` of an [`Alphabet`]
//! is the byte `i`. All operations below work on those buffers directly.

use std::fmt;

use crate::error::{Error, Result};

/// An ordered set of at least two distinct single-character symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        let symbols: Vec<char> = symbols.chars().collect();
        if symbols.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 2 symbols, got {}",
                symbols.len()
            )));
        }
        if symbols.len() > 255 {
            return Err(Error::InvalidAlphabet(format!(
                "at most 255 symbols supported, got {}",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if c.is_whitespace() {
                return Err(Error::InvalidAlphabet("whitespace symbol".into()));
            }
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Self { symbols })
    }

    /// The alphabet `{0, 1}`, where symbol index equals the bit value.
    pub fn binary() -> Self {
        Self {
            symbols: vec!['0', '1'],
        }
    }

    /// `ACGT`, the nucleotide alphabet.
    pub fn dna() -> Self {
        Self {
            symbols: vec!['A', 'C', 'G', 'T'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn is_binary(&self) -> bool {
        self.symbols == ['0', '1']
    }

    pub fn encode(&self, text: &str) -> Result<Vec<u8>> {
        text.chars()
            .map(|c| {
                self.symbols
                    .iter()
                    .position(|&s| s == c)
                    .map(|i| i as u8)
                    .ok_or(Error::UnknownSymbol { symbol: c })
            })
            .collect()
    }

    pub fn decode(&self, symbols: &[u8]) -> String {
        symbols.iter().map(|&s| self.symbols[s as usize]).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// The input of a placement problem: `count` strings of identical length.
///
/// Duplicates are allowed. Probes are stored back to back in one buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeSet {
    alphabet: Alphabet,
    length: usize,
    data: Vec<u8>,
}

impl ProbeSet {
    pub fn new<I, P>(alphabet: Alphabet, length: usize, probes: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u8]>,
    {
        if length == 0 {
            return Err(Error::InvalidParameter("probe length must be positive".into()));
        }
        let mut data = Vec::new();
        for (index, probe) in probes.into_iter().enumerate() {
            let probe = probe.as_ref();
            if probe.len() != length {
                return Err(Error::ProbeLength {
                    index,
                    expected: length,
                    found: probe.len(),
                });
            }
            if let Some(&bad) = probe.iter().find(|&&s| s as usize >= alphabet.len()) {
                return Err(Error::InvalidParameter(format!(
                    "probe {index} uses symbol index {bad} outside an alphabet of {}",
                    alphabet.len()
                )));
            }
            data.extend_from_slice(probe);
        }
        Ok(Self { alphabet, length, data })
    }

    /// Parses textual probes. The common length is taken from the first one.
    pub fn from_strs<S: AsRef<str>>(alphabet: Alphabet, probes: &[S]) -> Result<Self> {
        let encoded = probes
            .iter()
            .map(|p| alphabet.encode(p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let length = encoded.first().map_or(0, Vec::len);
        Self::new(alphabet, length, encoded)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Length of every probe.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of probes.
    pub fn len(&self) -> usize {
        self.data.len() / self.length
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn probe(&self, id: usize) -> &[u8] {
        &self.data[id * self.length..(id + 1) * self.length]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.length)
    }

    pub fn probe_string(&self, id: usize) -> String {
        self.alphabet.decode(self.probe(id))
    }

    /// Side of the square grid holding these probes, if the count is a
    /// perfect square.
    pub fn grid_side(&self) -> Option<usize> {
        square_side(self.len())
    }
}

/// The side of a square grid with `n` cells, if `n` is a positive square.
pub fn square_side(n: usize) -> Option<usize> {
    let side = isqrt(n);
    (side * side == n && n > 0).then_some(side)
}

pub(crate) fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// A cell of the `N x N` grid, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridCoord {
    pub row: usize,
    pub col: usize,
}

impl GridCoord {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub const fn from_index(index: usize, side: usize) -> Self {
        Self {
            row: index / side,
            col: index % side,
        }
    }

    /// Row-major cell index.
    pub const fn index(self, side: usize) -> usize {
        self.row * side + self.col
    }

    pub const fn in_bounds(self, side: usize) -> bool {
        self.row < side && self.col < side
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// A bijection from the cells of an `N x N` grid to probe ids.
///
/// `cells[r * N + c]` is the probe placed at row `r`, column `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    side: usize,
    cells: Vec<usize>,
}

impl Placement {
    pub fn new(side: usize, cells: Vec<usize>) -> Result<Self> {
        if side == 0 {
            return Err(Error::InvalidPlacement("grid side must be positive".into()));
        }
        if cells.len() != side * side {
            return Err(Error::InvalidPlacement(format!(
                "{} cells for a {side}x{side} grid",
                cells.len()
            )));
        }
        let mut seen = vec![false; cells.len()];
        for (cell, &id) in cells.iter().enumerate() {
            if id >= cells.len() {
                return Err(Error::InvalidPlacement(format!(
                    "cell {cell} holds probe {id}, out of range"
                )));
            }
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::InvalidPlacement(format!("probe {id} placed twice")));
            }
        }
        Ok(Self { side, cells })
    }

    /// Probe `i` at cell `i`, row-major.
    pub fn identity(side: usize) -> Self {
        Self {
            side,
            cells: (0..side * side).collect(),
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<usize> {
        self.cells
    }

    #[inline]
    pub fn at(&self, coord: GridCoord) -> usize {
        self.cells[coord.index(self.side)]
    }

    /// Cell index of every probe (the inverse map).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.cells.len()];
        for (cell, &id) in self.cells.iter().enumerate() {
            pos[id] = cell;
        }
        pos
    }

    pub fn swap(&mut self, a: GridCoord, b: GridCoord) {
        self.cells.swap(a.index(self.side), b.index(self.side));
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [usize] {
        &mut self.cells
    }

    /// Checks that this placement fits a probe set of `count` probes.
    pub fn validate_for(&self, count: usize) -> Result<()> {
        if self.cells.len() != count {
            return Err(Error::SizeMismatch(format!(
                "placement has {} cells but there are {count} probes",
                self.cells.len()
            )));
        }
        Ok(())
    }
}

/// Number of positions at which `a` and `b` differ.
pub fn hamming(a: &[u8], b: &[u8]) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(distance(a, b))
}

#[inline]
pub(crate) fn distance(a: &[u8], b: &[u8]) -> u32 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| u32::from(x != y)).sum()
}

/// `x + y`.
pub fn concat(x: &[u8], y: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    out.extend_from_slice(x);
    out.extend_from_slice(y);
    out
}

/// Every symbol of `x` repeated `times` times in place: `rep("01", 2) = "0011"`.
pub fn rep(x: &[u8], times: usize) -> Result<Vec<u8>> {
    if times == 0 {
        return Err(Error::InvalidParameter("replication factor must be >= 1".into()));
    }
    Ok(x.iter().flat_map(|&s| std::iter::repeat_n(s, times)).collect())
}

/// The one-hot code `A_n`: string `i` has a single `1` at position `i`.
/// Any two strings are at distance exactly 2.
pub fn code_set(n: usize) -> Result<ProbeSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("code set needs n >= 2, got {n}")));
    }
    let words = (0..n).map(|i| {
        let mut w = vec![0u8; n];
        w[i] = 1;
        w
    });
    ProbeSet::new(Alphabet::binary(), n, words)
}

/// Orthogonal neighbors of `coord`, in the order up, down, left, right.
pub fn neighbors(coord: GridCoord, side: usize) -> Vec<GridCoord> {
    neighbor_indices(coord.index(side), side)
        .map(|i| GridCoord::from_index(i, side))
        .collect()
}

/// Row-major indices of the neighbors of `index` (up, down, left, right).
#[inline]
pub(crate) fn neighbor_indices(index: usize, side: usize) -> impl Iterator<Item = usize> {
    let (row, col) = (index / side, index % side);
    [
        (row > 0).then(|| index - side),
        (row + 1 < side).then(|| index + side),
        (col > 0).then(|| index - 1),
        (col + 1 < side).then(|| index + 1),
    ]
    .into_iter()
    .flatten()
}
