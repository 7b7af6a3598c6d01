//! Probable-word search over decoded letter text.
//!
//! Exact scanning finds every dictionary word as a contiguous substring.
//! Reconstruction scanning finds near-words within a small edit budget, and
//! phrase assembly chains hits that sit next to each other.

mod dictionary;
pub mod edit;
mod exact;
mod phrases;
mod reconstruction;

use serde::Serialize;

pub use dictionary::{load_dictionary, Dictionary, DEFAULT_WORDS};
pub use edit::EditOp;
pub use exact::{scan_exact, ExactScanner, YieldCounts};
pub use phrases::{assemble_phrases, PhraseMatch};
pub use reconstruction::{scan_reconstruction, scan_reconstruction_with, ReconstructionOptions};

/// A dictionary hit. `cost == 0` exactly when `surface == word`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WordMatch {
    /// 0-based offset into the decoded text.
    pub start: usize,
    pub surface: String,
    pub word: String,
    pub cost: usize,
    pub ops: Vec<EditOp>,
}

impl WordMatch {
    /// Exclusive end offset.
    pub fn end(&self) -> usize {
        self.start + self.surface.len()
    }

    pub fn ops_string(&self) -> String {
        if self.ops.is_empty() {
            return "-".to_string();
        }
        self.ops.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
    }
}
