//! Helix-turn composition analysis of genomes.
//!
//! The pipeline cuts a genome into fixed-size turns, reduces each turn's
//! base counts to a permutation-invariant composition class, pairs classes
//! with letters by ascending frequency rank, and searches the resulting
//! letter stream for dictionary words. A Monte Carlo null model measures how
//! many of those words are expected by chance.

pub mod cli;
pub mod composition;
pub mod error;
pub mod fixtures;
pub mod frequency;
pub mod genome_io;
pub mod report;
pub mod significance;
pub mod substitution;
pub mod word_search;

pub use composition::{compose, enumerate_classes, permutation_count, CompositionClass, TurnComposition};
pub use error::{Error, ErrorKind, Result};
pub use frequency::{rank_ascending, tally_classes, tally_letters, FrequencyTable, Letter, LetterSet, RankedKeys, TieBreakPolicy};
pub use genome_io::{extract_windows, load_fasta, AmbiguityMode, Direction, GenomeSequence, TurnWindow, WindowSpec};
pub use significance::{run_null_model, NullModel, NullModelResult};
pub use substitution::{build_mapping, SubstitutionTable};
pub use word_search::{assemble_phrases, scan_exact, scan_reconstruction, Dictionary, EditOp, PhraseMatch, WordMatch};
