//! Sequence loading and helix-turn windowing.
//!
//! Coordinates are 1-based and inclusive, as in sequence databases. A
//! backward walk moves window boundaries toward coordinate 1; the bases
//! inside each window always stay in genome order and are never
//! complemented. Composition classes are invariant both to within-window
//! order and to complementation (A<->T, G<->C only permutes the four
//! counts), so neither choice changes any downstream tally.

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How non-ACGT IUPAC ambiguity codes are handled while loading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmbiguityMode {
    /// Fail on the first ambiguity code, reporting its position.
    #[default]
    Reject,
    /// Keep ambiguity codes (stored as `N`) so coordinates are preserved;
    /// windows containing them are dropped by [`drop_ambiguous`].
    Skip,
}

const IUPAC_AMBIGUOUS: &[u8] = b"NRYKMSWBDHV";

/// A validated nucleotide sequence.
///
/// Under [`AmbiguityMode::Reject`] every stored symbol is one of `ACGT`.
/// Under [`AmbiguityMode::Skip`] ambiguity codes are stored as `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenomeSequence {
    id: String,
    bases: Vec<u8>,
    ambiguous: usize,
}

impl GenomeSequence {
    /// Builds a sequence from raw symbols, applying the same validation as
    /// [`load_fasta`] (case folding, ambiguity handling). Whitespace is an
    /// error here.
    pub fn new(id: impl Into<String>, symbols: &[u8], mode: AmbiguityMode) -> Result<Self> {
        let mut seq = GenomeSequence { id: id.into(), bases: Vec::with_capacity(symbols.len()), ambiguous: 0 };
        for &b in symbols {
            seq.push_symbol(b, mode)?;
        }
        if seq.bases.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(seq)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn bases(&self) -> &[u8] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Number of ambiguity codes retained in skip mode.
    pub fn ambiguous_count(&self) -> usize {
        self.ambiguous
    }

    /// Bases at 1-based inclusive coordinates `[start, end]`.
    pub fn slice(&self, start: usize, end: usize) -> &[u8] {
        &self.bases[start - 1..end]
    }

    /// Serializes as a single FASTA record wrapped at `width` columns.
    pub fn to_fasta(&self, width: usize) -> String {
        let width = width.max(1);
        let mut out = String::with_capacity(self.bases.len() + self.bases.len() / width + self.id.len() + 4);
        out.push('>');
        out.push_str(&self.id);
        out.push('\n');
        for line in self.bases.chunks(width) {
            // bases are ASCII by construction
            out.push_str(std::str::from_utf8(line).expect("ascii bases"));
            out.push('\n');
        }
        out
    }

    fn push_symbol(&mut self, symbol: u8, mode: AmbiguityMode) -> Result<()> {
        let upper = symbol.to_ascii_uppercase();
        match upper {
            b'A' | b'C' | b'G' | b'T' => self.bases.push(upper),
            _ if mode == AmbiguityMode::Skip && IUPAC_AMBIGUOUS.contains(&upper) => {
                self.bases.push(b'N');
                self.ambiguous += 1;
            }
            _ => {
                return Err(Error::InvalidSymbol { position: self.bases.len() + 1, symbol: symbol as char });
            }
        }
        Ok(())
    }
}

/// Result of reading a FASTA stream: the first record plus the identifiers of
/// any further records that were ignored.
#[derive(Debug, Clone)]
pub struct FastaLoad {
    pub genome: GenomeSequence,
    pub skipped_records: Vec<String>,
}

/// Reads the first record of a FASTA stream, or a raw base string with no
/// header. Line breaks and whitespace are stripped and bases uppercased.
/// Error positions are 1-based sequence coordinates.
pub fn load_fasta<R: Read>(mut source: R, mode: AmbiguityMode) -> Result<FastaLoad> {
    let mut raw = Vec::new();
    source.read_to_end(&mut raw)?;
    parse_fasta(&raw, mode)
}

pub fn parse_fasta(raw: &[u8], mode: AmbiguityMode) -> Result<FastaLoad> {
    let mut genome = GenomeSequence { id: String::new(), bases: Vec::with_capacity(raw.len()), ambiguous: 0 };
    let mut skipped_records = Vec::new();
    let mut seen_header = false;
    let mut in_first = true;

    for line in raw.split(|&b| b == b'\n') {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if let Some(header) = line.strip_prefix(b">") {
            let name = record_id(header);
            if !seen_header && genome.bases.is_empty() {
                genome.id = name;
                seen_header = true;
            } else {
                in_first = false;
                skipped_records.push(name);
            }
            continue;
        }
        if !in_first {
            continue;
        }
        for &b in line {
            if b.is_ascii_whitespace() {
                continue;
            }
            genome.push_symbol(b, mode)?;
        }
    }

    if genome.bases.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !seen_header {
        genome.id = "raw".to_string();
    }
    Ok(FastaLoad { genome, skipped_records })
}

fn record_id(header: &[u8]) -> String {
    let text = String::from_utf8_lossy(header);
    text.split_whitespace().next().unwrap_or("").to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            other => Err(Error::InvalidParameter(format!("direction must be forward or backward, got {other:?}"))),
        }
    }
}

/// Where and how to cut turn windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WindowSpec {
    /// 1-based coordinate: the upper end of the first window when walking
    /// backward, the lower end when walking forward.
    pub anchor: usize,
    pub count: usize,
    pub direction: Direction,
    pub size: usize,
}

impl WindowSpec {
    pub const TURN_SIZE: usize = 10;

    pub fn backward(anchor: usize, count: usize) -> Self {
        WindowSpec { anchor, count, direction: Direction::Backward, size: Self::TURN_SIZE }
    }

    pub fn forward(anchor: usize, count: usize) -> Self {
        WindowSpec { anchor, count, direction: Direction::Forward, size: Self::TURN_SIZE }
    }

    /// Inclusive coordinate range `(low, high)` covered by all windows.
    /// May extend outside the genome; callers check bounds.
    pub fn span(&self) -> (i64, i64) {
        let anchor = self.anchor as i64;
        let total = (self.count * self.size) as i64;
        match self.direction {
            Direction::Backward => (anchor - total + 1, anchor),
            Direction::Forward => (anchor, anchor + total - 1),
        }
    }
}

/// One helix turn: `size` consecutive bases starting at a 1-based coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurnWindow<'a> {
    pub start: usize,
    pub bases: &'a [u8],
}

impl<'a> TurnWindow<'a> {
    pub fn size(&self) -> usize {
        self.bases.len()
    }

    /// Inclusive upper coordinate.
    pub fn end(&self) -> usize {
        self.start + self.bases.len() - 1
    }

    pub fn is_ambiguous(&self) -> bool {
        self.bases.contains(&b'N')
    }
}

/// Cuts `spec.count` contiguous, non-overlapping windows.
///
/// Backward emission order is `[anchor-size+1, anchor]`, then the window
/// immediately below it, and so on; forward is the mirror image starting at
/// `anchor`.
pub fn extract_windows<'a>(seq: &'a GenomeSequence, spec: &WindowSpec) -> Result<Vec<TurnWindow<'a>>> {
    if spec.count == 0 {
        return Ok(Vec::new());
    }
    if spec.size == 0 {
        return Err(Error::InvalidParameter("window size must be at least 1".into()));
    }
    if spec.anchor == 0 {
        return Err(Error::InvalidParameter("anchor is a 1-based coordinate and must be at least 1".into()));
    }
    let (low, high) = spec.span();
    if low < 1 || high > seq.len() as i64 {
        return Err(Error::InsufficientBases {
            anchor: spec.anchor,
            count: spec.count,
            size: spec.size,
            direction: spec.direction,
            first: low,
            last: high,
            length: seq.len(),
        });
    }

    let size = spec.size;
    let windows = (0..spec.count).map(|i| {
        let start = match spec.direction {
            Direction::Backward => spec.anchor + 1 - (i + 1) * size,
            Direction::Forward => spec.anchor + i * size,
        };
        TurnWindow { start, bases: &seq.bases[start - 1..start - 1 + size] }
    });
    Ok(windows.collect())
}

/// Splits off windows containing ambiguity codes, returning the clean windows
/// (order preserved) and the number dropped.
pub fn drop_ambiguous<'a>(windows: Vec<TurnWindow<'a>>) -> (Vec<TurnWindow<'a>>, usize) {
    let before = windows.len();
    let clean: Vec<_> = windows.into_iter().filter(|w| !w.is_ambiguous()).collect();
    let dropped = before - clean.len();
    (clean, dropped)
}
