//! Per-turn base counts and their permutation-invariant classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genome_io::TurnWindow;

/// Base tallies within one window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TurnComposition {
    pub a: u32,
    pub t: u32,
    pub g: u32,
    pub c: u32,
}

impl TurnComposition {
    pub fn total(&self) -> u32 {
        self.a + self.t + self.g + self.c
    }

    pub fn classify(&self) -> CompositionClass {
        CompositionClass::from_counts([self.a, self.t, self.g, self.c])
    }
}

// A=0 T=1 G=2 C=3, anything else ignored.
const BASE_SLOT: [u8; 256] = {
    let mut table = [4u8; 256];
    table[b'A' as usize] = 0;
    table[b'T' as usize] = 1;
    table[b'G' as usize] = 2;
    table[b'C' as usize] = 3;
    table
};

pub fn compose_bases(bases: &[u8]) -> TurnComposition {
    let mut slots = [0u32; 5];
    for &b in bases {
        slots[BASE_SLOT[b as usize] as usize] += 1;
    }
    TurnComposition { a: slots[0], t: slots[1], g: slots[2], c: slots[3] }
}

pub fn compose(window: &TurnWindow<'_>) -> TurnComposition {
    compose_bases(window.bases)
}

pub fn classify(comp: &TurnComposition) -> CompositionClass {
    comp.classify()
}

/// The multiset of four per-base counts, stored sorted ascending.
///
/// Rendered as a digit string (`0055`) when every count is at most 9, else
/// as a dash-joined tuple (`0-0-0-10`). Ordering compares the sorted counts
/// numerically, component by component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionClass([u32; 4]);

impl CompositionClass {
    pub fn from_counts(mut counts: [u32; 4]) -> Self {
        counts.sort_unstable();
        CompositionClass(counts)
    }

    pub fn counts(&self) -> [u32; 4] {
        self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_count(&self) -> u32 {
        self.0[3]
    }
}

impl fmt::Display for CompositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        if d <= 9 {
            write!(f, "{a}{b}{c}{d}")
        } else {
            write!(f, "{a}-{b}-{c}-{d}")
        }
    }
}

impl FromStr for CompositionClass {
    type Err = Error;

    /// Accepts `0055`, `0-0-0-10` or `0,0,0,10`; components need not be sorted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("not a composition class: {s:?}"));
        let s = s.trim();
        let mut counts = [0u32; 4];
        if s.len() == 4 && s.bytes().all(|b| b.is_ascii_digit()) {
            for (slot, b) in counts.iter_mut().zip(s.bytes()) {
                *slot = u32::from(b - b'0');
            }
        } else {
            let parts: Vec<&str> = s.split(['-', ',']).collect();
            if parts.len() != 4 {
                return Err(bad());
            }
            for (slot, p) in counts.iter_mut().zip(parts) {
                *slot = p.trim().parse().map_err(|_| bad())?;
            }
        }
        Ok(CompositionClass::from_counts(counts))
    }
}

impl Serialize for CompositionClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CompositionClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every class of four non-negative counts, each at most `max_count`,
/// summing to `window_size`, in ascending order.
pub fn enumerate_classes(window_size: u32, max_count: u32) -> Result<Vec<CompositionClass>> {
    if window_size == 0 {
        return Err(Error::InvalidParameter("window size must be at least 1".into()));
    }
    if max_count == 0 || max_count > window_size {
        return Err(Error::InvalidParameter(format!(
            "max count must lie in 1..={window_size}, got {max_count}"
        )));
    }
    if 4 * max_count < window_size {
        return Err(Error::InvalidParameter(format!(
            "no class of 4 counts each <= {max_count} sums to {window_size}"
        )));
    }

    let mut out = Vec::new();
    for a in 0..=max_count {
        for b in a..=max_count {
            for c in b..=max_count {
                let used = a + b + c;
                if used > window_size {
                    break;
                }
                let d = window_size - used;
                if d >= c && d <= max_count {
                    out.push(CompositionClass([a, b, c, d]));
                }
            }
        }
    }
    Ok(out)
}

/// Number of distinct ordered 4-tuples realizing `class`:
/// 4! divided by the factorial of each value's multiplicity.
pub fn permutation_count(class: &CompositionClass) -> u32 {
    const FACT: [u32; 5] = [1, 1, 2, 6, 24];
    let c = class.0;
    let mut denom = 1;
    let mut run = 1;
    for i in 1..4 {
        if c[i] == c[i - 1] {
            run += 1;
        } else {
            denom *= FACT[run];
            run = 1;
        }
    }
    denom *= FACT[run];
    24 / denom
}
