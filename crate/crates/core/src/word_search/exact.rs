use aho_corasick::{AhoCorasick, MatchKind};
use serde::Serialize;

use super::{Dictionary, WordMatch};

/// Hit counts split by word length: 3, 4, 5 and 6-or-more letters.
/// `total` also includes words shorter than 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct YieldCounts {
    pub total: u64,
    pub len3: u64,
    pub len4: u64,
    pub len5: u64,
    pub len6_plus: u64,
}

impl YieldCounts {
    pub const CLASS_LABELS: [&'static str; 5] = ["total", "3", "4", "5", ">=6"];

    pub fn record(&mut self, word_len: usize) {
        self.total += 1;
        match word_len {
            0..=2 => {}
            3 => self.len3 += 1,
            4 => self.len4 += 1,
            5 => self.len5 += 1,
            _ => self.len6_plus += 1,
        }
    }

    /// Values in the order of [`YieldCounts::CLASS_LABELS`].
    pub fn as_array(&self) -> [u64; 5] {
        [self.total, self.len3, self.len4, self.len5, self.len6_plus]
    }
}

/// Multi-pattern automaton over a dictionary, reusable across texts.
pub struct ExactScanner {
    automaton: AhoCorasick,
    words: Vec<String>,
}

impl ExactScanner {
    pub fn new(dict: &Dictionary) -> Self {
        let words: Vec<String> = dict.iter().map(str::to_string).collect();
        let automaton = AhoCorasick::builder()
            .match_kind(MatchKind::Standard)
            .build(&words)
            .expect("dictionary automaton");
        ExactScanner { automaton, words }
    }

    /// Every occurrence of every word, overlaps included, ordered by
    /// `(start, length)`.
    pub fn scan(&self, text: &str) -> Vec<WordMatch> {
        let mut hits: Vec<WordMatch> = self
            .automaton
            .find_overlapping_iter(text)
            .map(|m| {
                let word = &self.words[m.pattern().as_usize()];
                WordMatch { start: m.start(), surface: word.clone(), word: word.clone(), cost: 0, ops: Vec::new() }
            })
            .collect();
        hits.sort_by_key(|m| (m.start, m.word.len()));
        hits
    }

    pub fn count(&self, text: &[u8]) -> YieldCounts {
        let mut counts = YieldCounts::default();
        for m in self.automaton.find_overlapping_iter(text) {
            counts.record(m.len());
        }
        counts
    }
}

/// Every dictionary word occurring in `text`, with all offsets.
pub fn scan_exact(text: &str, dict: &Dictionary) -> Vec<WordMatch> {
    ExactScanner::new(dict).scan(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(text: &str, dict: &Dictionary) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        for start in 0..text.len() {
            for w in dict.iter() {
                if text[start..].starts_with(w) {
                    out.push((start, w.to_string()));
                }
            }
        }
        out.sort_by_key(|h| (h.0, h.1.len()));
        out
    }

    #[test]
    fn seal_sentence() {
        let dict = Dictionary::from_words(["HO", "A", "SEA", "SEAL"], 1).unwrap();
        let hits = scan_exact("HOASEAL", &dict);
        let got: Vec<(usize, &str)> = hits.iter().map(|m| (m.start, m.word.as_str())).collect();
        assert_eq!(got, vec![(0, "HO"), (2, "A"), (3, "SEA"), (3, "SEAL"), (5, "A")]);
        assert!(hits.iter().all(|m| m.cost == 0 && m.surface == m.word));
    }

    #[test]
    fn empty_text() {
        let dict = Dictionary::from_words(["HO"], 1).unwrap();
        assert!(scan_exact("", &dict).is_empty());
    }

    #[test]
    fn counts_by_length() {
        let dict = Dictionary::from_words(["HO", "A", "SEA", "SEAL", "SEALED"], 1).unwrap();
        let c = ExactScanner::new(&dict).count(b"HOASEALED");
        assert_eq!(c, YieldCounts { total: 6, len3: 1, len4: 1, len5: 0, len6_plus: 1 });
    }

    proptest! {
        #[test]
        fn matches_naive_oracle(text in "[A-E]{0,200}", words in proptest::collection::vec("[A-E]{1,4}", 1..50)) {
            let dict = Dictionary::from_words(&words, 1).unwrap();
            let got: Vec<(usize, String)> = scan_exact(&text, &dict).into_iter().map(|m| (m.start, m.word)).collect();
            prop_assert_eq!(got, naive(&text, &dict));
        }
    }
}
