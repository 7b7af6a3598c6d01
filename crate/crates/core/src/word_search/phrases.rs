use serde::Serialize;

use super::WordMatch;

/// A chain of non-overlapping word hits in increasing offset order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhraseMatch {
    pub members: Vec<WordMatch>,
    /// 0-based start of the first member.
    pub start: usize,
    /// Exclusive end of the last member.
    pub end: usize,
    /// Largest number of letters skipped between consecutive members.
    pub gap: usize,
}

impl PhraseMatch {
    pub fn words(&self) -> Vec<&str> {
        self.members.iter().map(|m| m.word.as_str()).collect()
    }
}

/// Chains hits left to right. From the current chain end, the next member
/// is the hit with the smallest start in `[end, end + max_gap]`, longest
/// first on ties. A chain ends when no hit fits; chains of fewer than two
/// members are discarded and the scan resumes one letter after their start.
pub fn assemble_phrases(matches: &[WordMatch], max_gap: usize) -> Vec<PhraseMatch> {
    let mut sorted: Vec<&WordMatch> = matches.iter().collect();
    sorted.sort_by(|a, b| a.start.cmp(&b.start).then(b.end().cmp(&a.end())));

    let mut phrases = Vec::new();
    let mut pos = 0;
    let mut idx = 0;
    while idx < sorted.len() {
        if sorted[idx].start < pos {
            idx += 1;
            continue;
        }
        let mut chain = vec![idx];
        let mut gap = 0;
        let mut cursor = idx + 1;
        loop {
            let end = sorted[*chain.last().unwrap()].end();
            while cursor < sorted.len() && sorted[cursor].start < end {
                cursor += 1;
            }
            match sorted.get(cursor) {
                Some(next) if next.start <= end + max_gap => {
                    gap = gap.max(next.start - end);
                    chain.push(cursor);
                    cursor += 1;
                }
                _ => break,
            }
        }
        if chain.len() >= 2 {
            let members: Vec<WordMatch> = chain.iter().map(|&i| sorted[i].clone()).collect();
            let start = members[0].start;
            let end = members.last().unwrap().end();
            phrases.push(PhraseMatch { members, start, end, gap });
            pos = end;
        } else {
            pos = sorted[idx].start + 1;
        }
        idx += 1;
    }
    phrases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_search::{scan_exact, Dictionary};
    use proptest::prelude::*;

    fn exact(text: &str, words: &[&str]) -> Vec<WordMatch> {
        scan_exact(text, &Dictionary::from_words(words, 1).unwrap())
    }

    #[test]
    fn seal_sentence_chain() {
        let phrases = assemble_phrases(&exact("HOASEAL", &["HO", "A", "SEA", "SEAL"]), 0);
        assert_eq!(phrases.len(), 1);
        assert_eq!(phrases[0].words(), vec!["HO", "A", "SEAL"]);
        assert_eq!((phrases[0].start, phrases[0].end, phrases[0].gap), (0, 7, 0));
    }

    #[test]
    fn single_match_is_not_a_phrase() {
        assert!(assemble_phrases(&exact("XXSEAXX", &["SEA"]), 3).is_empty());
    }

    #[test]
    fn gap_bridging() {
        let m = exact("ITXXDIE", &["IT", "DIE"]);
        let p = assemble_phrases(&m, 2);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].words(), vec!["IT", "DIE"]);
        assert_eq!(p[0].gap, 2);
        assert!(assemble_phrases(&m, 1).is_empty());
    }

    #[test]
    fn interleaved_junk_needs_wider_gap() {
        let words = ["WE", "HE", "EAT", "A", "TREE"];
        let p = assemble_phrases(&exact("WERRHHEEATEEATREE", &words), 3);
        // greedy takes EAT@11, which overlaps TREE@13
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].words(), vec!["WE", "HE", "EAT", "EAT"]);
        assert_eq!((p[0].start, p[0].end, p[0].gap), (0, 14, 3));
    }

    proptest! {
        #[test]
        fn chains_are_disjoint_and_gap_bounded(text in "[A-D]{0,80}", words in proptest::collection::vec("[A-D]{1,3}", 1..10), max_gap in 0usize..4) {
            let d = Dictionary::from_words(&words, 1).unwrap();
            let phrases = assemble_phrases(&scan_exact(&text, &d), max_gap);
            let mut last_end = 0;
            for p in &phrases {
                prop_assert!(p.members.len() >= 2);
                prop_assert!(p.start >= last_end);
                last_end = p.end;
                for pair in p.members.windows(2) {
                    prop_assert!(pair[1].start >= pair[0].end());
                    prop_assert!(pair[1].start - pair[0].end() <= max_gap);
                }
                prop_assert!(p.gap <= max_gap);
            }
        }
    }
}
