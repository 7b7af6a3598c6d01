use rayon::prelude::*;

use super::edit::{edit_script, prefix_distances};
use super::{Dictionary, WordMatch};

/// Settings for [`scan_reconstruction_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReconstructionOptions {
    /// Largest edit cost reported.
    pub budget: usize,
    /// Surfaces may be up to this many letters shorter or longer than the word.
    pub window_slack: usize,
    /// Dictionary words shorter than this are not fuzzy-matched.
    pub min_word_len: usize,
    /// Report cost-0 hits too (normally those belong to the exact scan).
    pub include_exact: bool,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        ReconstructionOptions { budget: 2, window_slack: 2, min_word_len: 3, include_exact: false }
    }
}

/// Near-word hits with `0 < cost <= budget`, words of length 3 or more.
pub fn scan_reconstruction(text: &str, dict: &Dictionary, budget: usize, window_slack: usize) -> Vec<WordMatch> {
    scan_reconstruction_with(text, dict, &ReconstructionOptions { budget, window_slack, ..Default::default() })
}

/// Candidate hit before scripts are attached.
#[derive(Clone, Copy)]
struct Candidate {
    word: usize,
    start: usize,
    len: usize,
    cost: usize,
}

impl Candidate {
    fn overlaps(&self, other: &Candidate) -> bool {
        self.start < other.start + other.len && other.start < self.start + self.len
    }
}

/// Scans every start offset and every surface length within the slack.
///
/// A hit is pruned when an overlapping hit of the same word is strictly
/// better on `(cost, |surface length - word length|)`; this keeps one
/// local optimum per cluster and lets an exact occurrence suppress its
/// near-miss neighbours. Raising the budget only adds candidates of cost
/// above every earlier hit, so hit sets grow monotonically with it.
pub fn scan_reconstruction_with(text: &str, dict: &Dictionary, opts: &ReconstructionOptions) -> Vec<WordMatch> {
    if opts.budget == 0 || text.is_empty() {
        return Vec::new();
    }
    let bytes = text.as_bytes();
    let words: Vec<&str> = dict.iter().filter(|w| w.len() >= opts.min_word_len.max(1)).collect();

    let per_word: Vec<Vec<Candidate>> = words
        .par_iter()
        .enumerate()
        .map(|(wi, word)| {
            let w = word.as_bytes();
            let shortest = w.len().saturating_sub(opts.window_slack).max(1);
            let longest = w.len() + opts.window_slack;
            let mut table = Vec::new();
            let mut found = Vec::new();
            let mut cands = Vec::new();
            for start in 0..bytes.len() {
                let surface = &bytes[start..(start + longest).min(bytes.len())];
                if surface.len() < shortest {
                    break;
                }
                prefix_distances(surface, w, shortest..=longest, opts.budget, &mut table, &mut found);
                cands.extend(found.iter().map(|&(len, cost)| Candidate { word: wi, start, len, cost }));
            }
            prune(cands, w.len(), longest)
        })
        .collect();

    let mut hits: Vec<WordMatch> = per_word
        .into_iter()
        .flatten()
        .filter(|c| opts.include_exact || c.cost > 0)
        .map(|c| {
            let surface = &text[c.start..c.start + c.len];
            let word = words[c.word];
            let (cost, ops) = edit_script(surface.as_bytes(), word.as_bytes());
            debug_assert_eq!(cost, c.cost);
            WordMatch { start: c.start, surface: surface.to_string(), word: word.to_string(), cost, ops }
        })
        .collect();
    hits.sort_by(|a, b| (a.start, a.end(), &a.word).cmp(&(b.start, b.end(), &b.word)));
    hits
}

fn prune(cands: Vec<Candidate>, word_len: usize, longest: usize) -> Vec<Candidate> {
    let score = |c: &Candidate| (c.cost, c.len.abs_diff(word_len));
    // candidates arrive sorted by start, so overlap partners are nearby
    let mut kept = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let dominated = cands[..i]
            .iter()
            .rev()
            .take_while(|o| o.start + longest > c.start)
            .chain(cands[i + 1..].iter().take_while(|o| o.start < c.start + c.len))
            .any(|o| o.overlaps(c) && score(o) < score(c));
        if !dominated {
            kept.push(*c);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_search::{edit, scan_exact, EditOp};
    use proptest::prelude::*;

    fn dict(words: &[&str]) -> Dictionary {
        Dictionary::from_words(words, 1).unwrap()
    }

    fn best_cost(text: &str, word: &str, budget: usize) -> Option<usize> {
        scan_reconstruction(text, &dict(&[word]), budget, 2).iter().map(|m| m.cost).min()
    }

    #[test]
    fn published_reconstructions() {
        assert_eq!(best_cost("REAML", "REALM", 2), Some(1));
        assert_eq!(best_cost("SEDN", "SEND", 2), Some(1));
        assert_eq!(best_cost("ADEEENOSINE", "ADENOSINE", 2), Some(2));
        assert_eq!(best_cost("TWROH", "THROW", 2), Some(2));
        assert_eq!(best_cost("ROTEN", "ROTTEN", 2), Some(1));
        assert_eq!(best_cost("SADEN", "SADDEN", 2), Some(1));
        // the whole surface costs 3, but the EEARD suffix is a cheaper local hit
        assert_eq!(edit::distance(b"HEAEEARD", b"HEARD"), 3);
        let hits = scan_reconstruction("HEAEEARD", &dict(&["HEARD"]), 3, 3);
        assert!(hits.iter().any(|m| m.surface == "EEARD" && m.cost == 1));
        assert!(hits.iter().all(|m| m.surface != "HEAEEARD"));
    }

    #[test]
    fn full_surface_hit_is_reported_with_ops() {
        let hits = scan_reconstruction("REAML", &dict(&["REALM"]), 2, 2);
        let full = hits.iter().find(|m| m.surface == "REAML").expect("REAML hit");
        assert_eq!(full.cost, 1);
        assert_eq!(full.ops, vec![EditOp::Transpose { first: 3, second: 4 }]);
    }

    #[test]
    fn exact_word_excluded() {
        assert!(scan_reconstruction("XXREALMXX", &dict(&["REALM"]), 2, 2).is_empty());
        let opts = ReconstructionOptions { include_exact: true, ..Default::default() };
        let hits = scan_reconstruction_with("XXREALMXX", &dict(&["REALM"]), &opts);
        assert_eq!(hits.len(), 1);
        assert_eq!((hits[0].start, hits[0].cost), (2, 0));
    }

    #[test]
    fn short_words_skipped() {
        assert!(scan_reconstruction("HOXHAHI", &dict(&["HO", "HI"]), 2, 1).is_empty());
    }

    #[test]
    fn zero_budget_is_empty() {
        assert!(scan_reconstruction("REAML", &dict(&["REALM"]), 0, 2).is_empty());
    }

    proptest! {
        #[test]
        fn hits_respect_budget_and_cost(text in "[A-D]{0,60}", words in proptest::collection::vec("[A-D]{3,6}", 1..8), budget in 1usize..3) {
            let d = Dictionary::from_words(&words, 1).unwrap();
            for m in scan_reconstruction(&text, &d, budget, 1) {
                prop_assert!(m.cost >= 1 && m.cost <= budget);
                prop_assert_eq!(m.cost, edit::distance(m.surface.as_bytes(), m.word.as_bytes()));
                prop_assert_eq!(&text[m.start..m.end()], m.surface.as_str());
                prop_assert!(m.surface.len().abs_diff(m.word.len()) <= 1);
            }
        }

        #[test]
        fn budget_monotone_and_covers_exact(text in "[A-D]{0,60}", words in proptest::collection::vec("[A-D]{3,5}", 1..8)) {
            let d = Dictionary::from_words(&words, 1).unwrap();
            let with = |budget| {
                let opts = ReconstructionOptions { budget, window_slack: 1, min_word_len: 3, include_exact: true };
                scan_reconstruction_with(&text, &d, &opts)
                    .into_iter()
                    .map(|m| (m.start, m.surface, m.word))
                    .collect::<std::collections::BTreeSet<_>>()
            };
            let (b1, b2, b3) = (with(1), with(2), with(3));
            prop_assert!(b1.is_subset(&b2));
            prop_assert!(b2.is_subset(&b3));
            for m in scan_exact(&text, &d) {
                prop_assert!(b1.contains(&(m.start, m.surface, m.word)));
            }
        }
    }
}
