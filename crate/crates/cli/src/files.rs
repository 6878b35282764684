//! Plain-text instance and placement files.
//!
//! An instance file starts with a header line `N L ALPHABET` followed by
//! `N^2` probe lines in input order. Hamming TSP inputs, which need not fill
//! a square, use `M L ALPHABET ring` and list `M` probes. A placement file
//! holds the `N^2` probe ids of the grid row-major, one per line.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use blm_core::{Alphabet, Placement, ProbeSet};

/// How the probes of an instance are meant to be laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Grid { side: usize },
    Ring,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub layout: Layout,
    pub probes: ProbeSet,
}

impl Instance {
    pub fn grid(probes: ProbeSet) -> Result<Self> {
        let side = probes
            .grid_side()
            .with_context(|| format!("{} probes do not fill a square grid", probes.len()))?;
        Ok(Self {
            layout: Layout::Grid { side },
            probes,
        })
    }

    pub fn ring(probes: ProbeSet) -> Self {
        Self {
            layout: Layout::Ring,
            probes,
        }
    }

    /// The grid side, or an error for ring instances.
    pub fn side(&self) -> Result<usize> {
        match self.layout {
            Layout::Grid { side } => Ok(side),
            Layout::Ring => bail!("this is a ring (Hamming TSP) instance, not a grid"),
        }
    }

    pub fn to_text(&self) -> String {
        let alphabet: String = self.probes.alphabet().symbols().iter().collect();
        let mut out = match self.layout {
            Layout::Grid { side } => format!("{side} {} {alphabet}\n", self.probes.length()),
            Layout::Ring => format!("{} {} {alphabet} ring\n", self.probes.len(), self.probes.length()),
        };
        for id in 0..self.probes.len() {
            out.push_str(&self.probes.probe_string(id));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().context("empty instance file")?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (count_field, length, alphabet, ring) = match fields.as_slice() {
            [n, l, a] => (*n, *l, *a, false),
            [n, l, a, "ring"] => (*n, *l, *a, true),
            _ => bail!("malformed header {header:?}, expected `N L ALPHABET`"),
        };
        let count: usize = count_field
            .parse()
            .with_context(|| format!("bad count {count_field:?}"))?;
        let length: usize = length
            .parse()
            .with_context(|| format!("bad string length {length:?}"))?;
        let alphabet = Alphabet::new(alphabet)?;
        let expected = if ring {
            count
        } else {
            count.checked_mul(count).context("grid side too large")?
        };

        let body: Vec<&str> = lines.collect();
        ensure!(
            body.len() == expected,
            "expected {expected} probe lines, found {}",
            body.len()
        );
        let mut words = Vec::with_capacity(expected);
        for (i, line) in body.iter().enumerate() {
            ensure!(
                line.chars().count() == length,
                "probe line {} has length {}, expected {length}",
                i + 2,
                line.chars().count()
            );
            words.push(alphabet.encode(line).with_context(|| format!("probe line {}", i + 2))?);
        }
        let probes = ProbeSet::new(alphabet, length, words)?;
        Ok(if ring { Self::ring(probes) } else { Self::grid(probes)? })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_text())
    }
}

pub fn placement_text(p: &Placement) -> String {
    let mut out = String::with_capacity(p.len() * 6);
    for id in p.cells() {
        out.push_str(&id.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_placement(text: &str, side: usize) -> Result<Placement> {
    let cells = text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            line.trim()
                .parse::<usize>()
                .with_context(|| format!("placement line {}: {line:?} is not a probe id", i + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    ensure!(
        cells.len() == side * side,
        "placement has {} ids, the grid needs {}",
        cells.len(),
        side * side
    );
    Ok(Placement::new(side, cells)?)
}

pub fn read_placement(path: &Path, side: usize) -> Result<Placement> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_placement(&text, side).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_placement(path: &Path, p: &Placement) -> Result<()> {
    write_text(path, &placement_text(p))
}

/// Writes to `path`, or to stdout when the path is `-`.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return Ok(out.flush()?);
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
