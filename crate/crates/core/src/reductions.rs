//! Gadget instances from the NP-hardness reductions (Hamming TSP to border
//! length minimization), with the constants needed to check their distance
//! identities and optimal costs.
//!
//! Strings are binary and read left to right: "prepend" puts symbols on the
//! left, and the "low" part of a string is its rightmost symbols.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::probe::{code_set, concat, rep, Alphabet, Placement, ProbeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    /// Hamming TSP input padded to a multiple of four strings.
    Padded4nHtsp,
    /// Grid instance `t_1..t_4N` plus `(N-1)^2` copies of `t`.
    MainBlmp,
    /// 4-segments Hamming TSP instance of `n + 3` strings.
    FourSegmentHtsp,
    /// Grid instance `q_1..q_n` plus `n^2 - n` copies of `t`.
    AlternateBlmp,
    /// `n` strings at mutual distance 16 plus `n^2 - n` copies of a string
    /// at distance 9 from each of them.
    AlternateSpecial,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 5] = [
        ReductionKind::Padded4nHtsp,
        ReductionKind::MainBlmp,
        ReductionKind::FourSegmentHtsp,
        ReductionKind::AlternateBlmp,
        ReductionKind::AlternateSpecial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Padded4nHtsp => "padded_4n_htsp",
            ReductionKind::MainBlmp => "main_blmp",
            ReductionKind::FourSegmentHtsp => "four_segment_htsp",
            ReductionKind::AlternateBlmp => "alternate_blmp",
            ReductionKind::AlternateSpecial => "alternate_special",
        }
    }

    /// Whether the instance is a grid placement input (square count).
    pub fn is_grid(self) -> bool {
        matches!(
            self,
            ReductionKind::MainBlmp | ReductionKind::AlternateBlmp | ReductionKind::AlternateSpecial
        )
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown reduction kind {s:?}")))
    }
}

/// Construction constants. Fields that a construction does not use are zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReductionParams {
    /// Number of source strings (`4N` for the main reduction).
    pub n: usize,
    /// `N` of the main reduction (grid side `N + 1`).
    pub big_n: usize,
    /// Length of the source strings.
    pub l: usize,
    /// Replication factor of the one-hot part (`8l`).
    pub h: usize,
    /// Copies of the filler string `t` (or of the last padded string).
    pub copies: usize,
    /// Side of the grid, for grid instances.
    pub side: usize,
    /// Length of every generated string.
    pub string_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub kind: ReductionKind,
    pub probes: ProbeSet,
    pub params: ReductionParams,
    /// Ids of the gadget strings, i.e. everything that is not a filler copy.
    pub special: Vec<usize>,
}

fn binary_input(input: &ProbeSet, min: usize) -> Result<()> {
    if !input.alphabet().is_binary() {
        return Err(Error::InvalidParameter(
            "reductions need binary (01) input strings".into(),
        ));
    }
    if input.len() < min {
        return Err(Error::InvalidParameter(format!(
            "need at least {min} input strings, got {}",
            input.len()
        )));
    }
    Ok(())
}

fn fill(len: usize, bit: u8) -> Vec<u8> {
    vec![bit; len]
}

/// `0101...01` with `l` repetitions of `01`.
fn alternating(l: usize) -> Vec<u8> {
    (0..2 * l).map(|i| (i % 2) as u8).collect()
}

/// Pads a Hamming TSP input to `4 ceil(n/4)` strings: `2nl` zeros are
/// prepended to `s_1..s_{n-1}`, `2nl` ones to `s_n`, and `s_n'` is repeated
/// to fill up the count.
pub fn pad_to_4n(input: &ProbeSet) -> Result<ReductionInstance> {
    binary_input(input, 2)?;
    let n = input.len();
    let l = input.length();
    let pad = 2 * n * l;
    let target = 4 * n.div_ceil(4);
    let copies = target - (n - 1);

    let mut strings: Vec<Vec<u8>> = (0..n - 1).map(|i| concat(&fill(pad, 0), input.probe(i))).collect();
    let last = concat(&fill(pad, 1), input.probe(n - 1));
    strings.extend(std::iter::repeat_n(last, copies));
    Ok(ReductionInstance {
        kind: ReductionKind::Padded4nHtsp,
        probes: ProbeSet::new(Alphabet::binary(), pad + l, strings)?,
        params: ReductionParams {
            n,
            big_n: target / 4,
            l,
            copies,
            string_length: pad + l,
            ..ReductionParams::default()
        },
        special: (0..n - 1).collect(),
    })
}

/// The main reduction from a `4N`-string Hamming TSP input: with `h = 8l`,
/// `t_i = rep_h(a_i) + rep_2(s_i)` and `t = 0^{4Nh} + (01)^l`, on an
/// `(N+1) x (N+1)` grid.
pub fn build_main_blmp(input: &ProbeSet) -> Result<ReductionInstance> {
    binary_input(input, 4)?;
    if !input.len().is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "main reduction needs 4N strings, got {}",
            input.len()
        )));
    }
    let count = input.len();
    let big_n = count / 4;
    let l = input.length();
    let h = 8 * l;
    let codes = code_set(count)?;

    let mut strings = Vec::with_capacity((big_n + 1) * (big_n + 1));
    for i in 0..count {
        strings.push(concat(&rep(codes.probe(i), h)?, &rep(input.probe(i), 2)?));
    }
    let filler = concat(&fill(count * h, 0), &alternating(l));
    let copies = (big_n - 1) * (big_n - 1);
    strings.extend(std::iter::repeat_n(filler, copies));
    let string_length = count * h + 2 * l;

    Ok(ReductionInstance {
        kind: ReductionKind::MainBlmp,
        probes: ProbeSet::new(Alphabet::binary(), string_length, strings)?,
        params: ReductionParams {
            n: count,
            big_n,
            l,
            h,
            copies,
            side: big_n + 1,
            string_length,
        },
        special: (0..count).collect(),
    })
}

/// 4-segments instance: `q_i = t_1 + s_i` for `i <= n`, and
/// `q_{n+1..n+3} = t_{2..4} + 0^l`, where `t_1..t_4` are `1110`, `1101`,
/// `1011`, `0111` with every symbol repeated `nl` times.
pub fn build_four_segment_htsp(input: &ProbeSet) -> Result<ReductionInstance> {
    binary_input(input, 2)?;
    let n = input.len();
    let l = input.length();
    let base: [[u8; 4]; 4] = [[1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]];
    let blocks: Vec<Vec<u8>> = base.iter().map(|b| rep(b, n * l)).collect::<Result<_>>()?;

    let mut strings: Vec<Vec<u8>> = (0..n).map(|i| concat(&blocks[0], input.probe(i))).collect();
    strings.extend(blocks[1..].iter().map(|b| concat(b, &fill(l, 0))));
    let string_length = 4 * n * l + l;
    Ok(ReductionInstance {
        kind: ReductionKind::FourSegmentHtsp,
        probes: ProbeSet::new(Alphabet::binary(), string_length, strings)?,
        params: ReductionParams {
            n,
            l,
            string_length,
            ..ReductionParams::default()
        },
        special: (n..n + 3).collect(),
    })
}

/// The `n + 1` base strings of the alternate construction, each of length
/// `8n + 1`: `t_i` (for `i < n`) is `0` followed by `1^{8n}` with eight
/// zeros in block `i`; the last one is `1^{8n+1}`. Any two of the
/// first `n` differ in 16 places; each of them differs from the last in 9.
fn alternate_base(n: usize) -> Vec<Vec<u8>> {
    let mut strings: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut word = vec![1u8; n];
            word[i] = 0;
            // each symbol becomes eight copies of itself
            concat(&[0], &rep(&word, 8).expect("factor is positive"))
        })
        .collect();
    strings.push(vec![1u8; 8 * n + 1]);
    strings
}

/// The special grid instance of the alternate proof on an `n x n` grid.
pub fn build_alternate_special(n: usize) -> Result<ReductionInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let mut strings = alternate_base(n);
    let filler = strings.pop().expect("base has n + 1 strings");
    let copies = n * n - n;
    strings.extend(std::iter::repeat_n(filler, copies));
    Ok(ReductionInstance {
        kind: ReductionKind::AlternateSpecial,
        probes: ProbeSet::new(Alphabet::binary(), 8 * n + 1, strings)?,
        params: ReductionParams {
            n,
            copies,
            side: n,
            string_length: 8 * n + 1,
            ..ReductionParams::default()
        },
        special: (0..n).collect(),
    })
}

/// The alternate reduction: the base strings scaled by `nl` form the high
/// part; `q_i` gets `rep_2(s_i)` as its low `2l` symbols and the filler `t`
/// gets `(01)^l`.
pub fn build_alternate_blmp(input: &ProbeSet) -> Result<ReductionInstance> {
    binary_input(input, 2)?;
    let n = input.len();
    let l = input.length();
    let base: Vec<Vec<u8>> = alternate_base(n).iter().map(|b| rep(b, n * l)).collect::<Result<_>>()?;

    let mut strings: Vec<Vec<u8>> = (0..n)
        .map(|i| Ok(concat(&base[i], &rep(input.probe(i), 2)?)))
        .collect::<Result<_>>()?;
    let filler = concat(&base[n], &alternating(l));
    let copies = n * n - n;
    strings.extend(std::iter::repeat_n(filler, copies));
    let string_length = (8 * n + 1) * n * l + 2 * l;
    Ok(ReductionInstance {
        kind: ReductionKind::AlternateBlmp,
        probes: ProbeSet::new(Alphabet::binary(), string_length, strings)?,
        params: ReductionParams {
            n,
            l,
            copies,
            side: n,
            string_length,
            ..ReductionParams::default()
        },
        special: (0..n).collect(),
    })
}

/// Where the gadget strings of a grid instance sit in a placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryReport {
    /// True iff every gadget string is on the outer ring of the grid.
    pub on_boundary: bool,
    /// Gadget probe ids placed in the interior.
    pub violators: Vec<usize>,
    /// Maximal runs of consecutive gadget strings along the outer ring
    /// (clockwise from the top-left corner), as probe ids.
    pub segments: Vec<Vec<usize>>,
    /// Whether each segment covers a corner cell.
    pub segment_has_corner: Vec<bool>,
}

/// Checks that all gadget strings of `instance` lie on the grid boundary.
pub fn check_special_boundary(instance: &ReductionInstance, placement: &Placement) -> Result<BoundaryReport> {
    if !instance.kind.is_grid() {
        return Err(Error::InvalidParameter(format!(
            "{} is not a grid instance",
            instance.kind
        )));
    }
    placement.validate_for(instance.probes.len())?;
    let side = placement.side();
    let mut is_special = vec![false; instance.probes.len()];
    for &id in &instance.special {
        is_special[id] = true;
    }

    let violators: Vec<usize> = (0..placement.len())
        .filter(|&cell| {
            let (r, c) = (cell / side, cell % side);
            r > 0 && c > 0 && r + 1 < side && c + 1 < side
        })
        .map(|cell| placement.cells()[cell])
        .filter(|&id| is_special[id])
        .collect();

    let ring = boundary_ring(side);
    let corners = [0, side - 1, side * side - 1, side * (side - 1)];
    let flags: Vec<bool> = ring.iter().map(|&cell| is_special[placement.cells()[cell]]).collect();
    let mut segments = Vec::new();
    let mut segment_has_corner = Vec::new();
    if flags.iter().all(|&f| f) {
        segments.push(ring.iter().map(|&cell| placement.cells()[cell]).collect());
        segment_has_corner.push(true);
    } else if flags.iter().any(|&f| f) {
        // start right after a non-gadget cell so no run wraps around
        let len = ring.len();
        let start = (0..len).find(|&i| !flags[i]).unwrap_or(0);
        let mut current: Vec<usize> = Vec::new();
        let mut corner = false;
        for step in 1..=len {
            let i = (start + step) % len;
            if flags[i] {
                current.push(placement.cells()[ring[i]]);
                corner |= corners.contains(&ring[i]);
            } else if !current.is_empty() {
                segments.push(std::mem::take(&mut current));
                segment_has_corner.push(std::mem::replace(&mut corner, false));
            }
        }
        if !current.is_empty() {
            segments.push(current);
            segment_has_corner.push(corner);
        }
    }

    Ok(BoundaryReport {
        on_boundary: violators.is_empty(),
        violators,
        segments,
        segment_has_corner,
    })
}

/// Cells of the outer ring, clockwise from the top-left corner.
fn boundary_ring(side: usize) -> Vec<usize> {
    if side == 1 {
        return vec![0];
    }
    let mut ring = Vec::with_capacity(4 * (side - 1));
    ring.extend(0..side);
    ring.extend((1..side).map(|r| r * side + side - 1));
    ring.extend((0..side - 1).rev().map(|c| (side - 1) * side + c));
    ring.extend((1..side - 1).rev().map(|r| r * side));
    ring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::hamming;

    fn bin(words: &[&str]) -> ProbeSet {
        ProbeSet::from_strs(Alphabet::binary(), words).unwrap()
    }

    #[test]
    fn padding_example() {
        let inst = pad_to_4n(&bin(&["101", "000", "111", "010"])).unwrap();
        assert_eq!(inst.probes.len(), 4);
        assert_eq!(inst.probes.probe_string(0), format!("{}101", "0".repeat(24)));
        assert_eq!(inst.probes.length(), 27);
        assert_eq!(inst.probes.probe_string(3), format!("{}010", "1".repeat(24)));
        assert_eq!(inst.params.copies, 1);

        let five = pad_to_4n(&bin(&["10", "01", "11", "00", "10"])).unwrap();
        assert_eq!(five.probes.len(), 8);
        assert_eq!(five.params.copies, 4);
        for i in 5..8 {
            assert_eq!(five.probes.probe(i), five.probes.probe(4));
        }
    }

    #[test]
    fn main_blmp_shape() {
        let inst = build_main_blmp(&bin(&["0", "1", "0", "1", "1", "1", "0", "0"])).unwrap();
        let p = inst.params;
        assert_eq!((p.big_n, p.h, p.copies, p.side), (2, 8, 1, 3));
        assert_eq!(inst.probes.len(), 9);
        assert_eq!(inst.probes.length(), 4 * 2 * 8 + 2);
        assert!(build_main_blmp(&bin(&["0", "1", "0"])).is_err());
    }

    #[test]
    fn alternate_special_distances() {
        let inst = build_alternate_special(3).unwrap();
        assert_eq!(inst.probes.length(), 25);
        assert_eq!(inst.probes.len(), 9);
        let t = inst.probes.probe(3);
        for i in 0..3 {
            assert_eq!(hamming(inst.probes.probe(i), t).unwrap(), 9);
            for j in i + 1..3 {
                assert_eq!(hamming(inst.probes.probe(i), inst.probes.probe(j)).unwrap(), 16);
            }
        }
    }

    #[test]
    fn ring_order() {
        assert_eq!(boundary_ring(3), vec![0, 1, 2, 5, 8, 7, 6, 3]);
        assert_eq!(boundary_ring(2), vec![0, 1, 3, 2]);
    }

    #[test]
    fn center_violation_is_reported() {
        let inst = build_main_blmp(&bin(&["0", "1", "0", "1", "1", "1", "0", "0"])).unwrap();
        // t_0 in the center, the filler (id 8) on the ring
        let p = Placement::new(3, vec![8, 1, 2, 3, 0, 4, 5, 6, 7]).unwrap();
        let report = check_special_boundary(&inst, &p).unwrap();
        assert!(!report.on_boundary);
        assert_eq!(report.violators, vec![0]);
        let ok = Placement::new(3, vec![0, 1, 2, 3, 8, 4, 5, 6, 7]).unwrap();
        let report = check_special_boundary(&inst, &ok).unwrap();
        assert!(report.on_boundary);
        assert_eq!(report.segments.len(), 1);
    }

    #[test]
    fn segments_are_split_by_filler() {
        let inst = build_alternate_special(4).unwrap();
        // gadgets 0..4 in the four corners
        let mut cells: Vec<usize> = (4..16).collect();
        for (corner, id) in [(0, 0), (3, 1), (12, 3), (15, 2)] {
            cells.insert(corner, id);
        }
        let p = Placement::new(4, cells).unwrap();
        let report = check_special_boundary(&inst, &p).unwrap();
        assert!(report.on_boundary);
        assert_eq!(report.segments.len(), 4);
        assert!(report.segment_has_corner.iter().all(|&c| c));
    }

    #[test]
    fn kinds_parse() {
        for k in ReductionKind::ALL {
            assert_eq!(k.name().parse::<ReductionKind>().unwrap(), k);
        }
        let htsp = pad_to_4n(&bin(&["0", "1"])).unwrap();
        assert!(check_special_boundary(&htsp, &Placement::identity(2)).is_err());
    }
}
