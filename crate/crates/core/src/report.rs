//! Diffable TSV/JSON report rendering.
//!
//! Every report starts with `#` header lines naming the tool version, the
//! run configuration (as JSON), its SHA-256, and the SHA-256 of every input
//! file, so two reports that differ always differ in a named input.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::composition::{enumerate_classes, permutation_count, CompositionClass};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::frequency::{rank_ascending, tally_classes, FrequencyTable, Letter, TieBreakPolicy};
use crate::genome_io::{extract_windows, Direction, GenomeSequence, WindowSpec};
use crate::substitution::SubstitutionTable;
use crate::word_search::{PhraseMatch, WordMatch};

pub const TOOL: &str = concat!("helixtext ", env!("CARGO_PKG_VERSION"));

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Named input file and its digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: PathBuf,
    pub sha256: String,
}

/// Reads a file, recording its digest.
pub fn read_input(role: &str, path: &Path, digests: &mut Vec<InputDigest>) -> Result<Vec<u8>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    digests.push(InputDigest { role: role.to_string(), path: path.to_path_buf(), sha256: sha256_hex(&bytes) });
    Ok(bytes)
}

/// Header shared by every report of one run.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub config_sha256: String,
    pub inputs: Vec<InputDigest>,
}

impl Provenance {
    pub fn new<C: Serialize>(command: &str, config: &C, inputs: Vec<InputDigest>) -> Self {
        let config = serde_json::to_value(config).expect("config serializes");
        let config_sha256 = sha256_hex(config.to_string().as_bytes());
        Provenance { tool: TOOL, command: command.to_string(), config, config_sha256, inputs }
    }

    pub fn tsv_header(&self) -> String {
        let mut out = format!("# tool\t{}\n# command\t{}\n# config\t{}\n# config-sha256\t{}\n", self.tool, self.command, self.config, self.config_sha256);
        for input in &self.inputs {
            out.push_str(&format!("# input\t{}\t{}\tsha256={}\n", input.role, input.path.display(), input.sha256));
        }
        out
    }
}

/// Class table in ascending rank order with computed and published
/// permutation counts side by side.
pub fn class_table_tsv(table: &FrequencyTable<CompositionClass>) -> String {
    let mut out = String::from("class\tpermutations\tpaper_claimed\tdiff\tcount\tprobability\n");
    let mut perm_total = 0;
    for class in rank_ascending(table, TieBreakPolicy::default()).iter() {
        let perms = permutation_count(class);
        perm_total += perms;
        let (claimed, diff) = claimed_columns(class, perms);
        out.push_str(&format!(
            "{class}\t{perms}\t{claimed}\t{diff}\t{}\t{}\n",
            table.count(class),
            table.probability_str(class)
        ));
    }
    out.push_str(&format!("# total\t{}\tclasses\t{}\tpermutations\t{perm_total}\n", table.total(), table.len()));
    out
}

fn claimed_columns(class: &CompositionClass, perms: u32) -> (String, &'static str) {
    match fixtures::paper_claimed_permutations(class) {
        Some(c) if c == perms => (c.to_string(), "same"),
        Some(c) => (c.to_string(), "DIFF"),
        None => ("-".to_string(), "-"),
    }
}

pub fn letter_table_tsv(table: &FrequencyTable<Letter>) -> String {
    let mut out = String::from("letter\tcount\tprobability\n");
    for letter in rank_ascending(table, TieBreakPolicy::default()).iter() {
        out.push_str(&format!("{letter}\t{}\t{}\n", table.count(letter), table.probability_str(letter)));
    }
    out.push_str(&format!("# total\t{}\tletters\t{}\n", table.total(), table.len()));
    out
}

pub fn substitution_tsv(mapping: &SubstitutionTable) -> String {
    mapping.to_tsv()
}

/// The class space for a window size, with permutation counts.
pub fn enumeration_tsv(window_size: u32, max_count: u32) -> Result<String> {
    let classes = enumerate_classes(window_size, max_count)?;
    let mut out = String::from("class\tpermutations\tpaper_claimed\tdiff\n");
    let mut total = 0;
    for class in &classes {
        let perms = permutation_count(class);
        total += perms;
        let (claimed, diff) = claimed_columns(class, perms);
        out.push_str(&format!("{class}\t{perms}\t{claimed}\t{diff}\n"));
    }
    out.push_str(&format!("# total\tclasses\t{}\tpermutations\t{total}\n", classes.len()));
    Ok(out)
}

pub const MATCH_COLUMNS: &str = "kind\toffset\tsurface\tword\tcost\tops\n";

pub fn match_row(kind: &str, m: &WordMatch) -> String {
    format!("{kind}\t{}\t{}\t{}\t{}\t{}\n", m.start, m.surface, m.word, m.cost, m.ops_string())
}

pub fn phrase_row(text: &str, p: &PhraseMatch) -> String {
    let cost: usize = p.members.iter().map(|m| m.cost).sum();
    format!("phrase\t{}\t{}\t{}\t{cost}\tgap={}\n", p.start, &text[p.start..p.end], p.words().join("+"), p.gap)
}

/// Per-length hit counts, `# length` comment lines.
pub fn length_summary(exact: &[WordMatch], fuzzy: &[WordMatch]) -> String {
    use std::collections::BTreeMap;
    let mut by_len: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for m in exact {
        by_len.entry(m.word.len()).or_default().0 += 1;
    }
    for m in fuzzy {
        by_len.entry(m.word.len()).or_default().1 += 1;
    }
    let mut out = String::from("# length\texact\treconstruction\n");
    for (len, (e, f)) in by_len {
        out.push_str(&format!("# {len}\t{e}\t{f}\n"));
    }
    out
}

/// One way of cutting the published turn range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowingVariant {
    pub name: String,
    pub spec: WindowSpec,
}

/// Direction x frame variants around `anchor`.
///
/// Backward variants end at `anchor` (frame 0) or `anchor + 1` (frame 1,
/// for a 0-based reading of the coordinate). Forward variants read the same
/// coordinate on the opposite strand, i.e. start at `len - anchor + 1`
/// (minus the frame offset) and walk toward the end of the sequence.
pub fn windowing_variants(genome_len: usize, anchor: usize, count: usize, size: usize) -> Vec<WindowingVariant> {
    let mut out = Vec::new();
    for frame in 0..=1usize {
        out.push(WindowingVariant {
            name: format!("backward-frame{frame}"),
            spec: WindowSpec { anchor: anchor + frame, count, direction: Direction::Backward, size },
        });
    }
    for frame in 0..=1usize {
        let mirrored = (genome_len + 1).saturating_sub(anchor + frame).max(1);
        out.push(WindowingVariant {
            name: format!("forward-mirror-frame{frame}"),
            spec: WindowSpec { anchor: mirrored, count, direction: Direction::Forward, size },
        });
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct VariantOutcome {
    pub variant: WindowingVariant,
    /// `None` when the genome is too short for this variant.
    pub table: Option<Vec<(String, u64)>>,
    /// Sum of absolute count differences against the reference table.
    pub l1_distance: Option<u64>,
    pub exact_match: bool,
}

/// Tallies every variant and compares it against `reference`.
pub fn compare_variants(
    genome: &GenomeSequence,
    variants: &[WindowingVariant],
    reference: &FrequencyTable<CompositionClass>,
) -> Vec<VariantOutcome> {
    variants
        .iter()
        .map(|v| match extract_windows(genome, &v.spec) {
            Ok(windows) => {
                let table = tally_classes(windows.iter());
                let keys: std::collections::BTreeSet<&CompositionClass> = table.keys().chain(reference.keys()).collect();
                let l1 = keys.iter().map(|k| table.count(k).abs_diff(reference.count(k))).sum();
                VariantOutcome {
                    variant: v.clone(),
                    table: Some(table.iter().map(|(k, n)| (k.to_string(), n)).collect()),
                    l1_distance: Some(l1),
                    exact_match: l1 == 0,
                }
            }
            Err(_) => VariantOutcome { variant: v.clone(), table: None, l1_distance: None, exact_match: false },
        })
        .collect()
}

pub fn variants_tsv(outcomes: &[VariantOutcome], reference: &FrequencyTable<CompositionClass>) -> String {
    let mut out = String::from("variant\tdirection\tanchor\tstatus\tl1_distance\tclass\tobserved\treference\tdelta\n");
    for o in outcomes {
        let v = &o.variant;
        let (Some(rows), Some(l1)) = (&o.table, o.l1_distance) else {
            out.push_str(&format!("{}\t{}\t{}\tinsufficient-bases\t-\t-\t-\t-\t-\n", v.name, v.spec.direction, v.spec.anchor));
            continue;
        };
        let status = if o.exact_match { "exact" } else { "differs" };
        let observed: FrequencyTable<CompositionClass> =
            FrequencyTable::from_counts(rows.iter().map(|(k, n)| (k.parse().expect("own key"), *n)));
        let keys: std::collections::BTreeSet<&CompositionClass> = observed.keys().chain(reference.keys()).collect();
        for k in keys {
            let (a, b) = (observed.count(k), reference.count(k));
            out.push_str(&format!(
                "{}\t{}\t{}\t{status}\t{l1}\t{k}\t{a}\t{b}\t{}\n",
                v.name,
                v.spec.direction,
                v.spec.anchor,
                a as i64 - b as i64
            ));
        }
    }
    if let Some(best) = outcomes.iter().filter(|o| o.l1_distance.is_some()).min_by_key(|o| o.l1_distance) {
        out.push_str(&format!("# closest\t{}\tl1_distance={}\n", best.variant.name, best.l1_distance.unwrap_or(0)));
    }
    out
}
