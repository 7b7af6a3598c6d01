use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read};

use crate::error::{Error, Result};

/// Built-in English word list used when no dictionary file is given.
pub const DEFAULT_WORDS: &str = include_str!("../../data/words.txt");

/// Uppercase A-Z words, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    words: BTreeSet<String>,
}

impl Dictionary {
    /// Builds a dictionary from words, uppercasing them and dropping any that
    /// are shorter than `min_len` or contain anything but ASCII letters.
    pub fn from_words<I, S>(words: I, min_len: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words: BTreeSet<String> = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_ascii_uppercase())
            .filter(|w| !w.is_empty() && w.len() >= min_len && w.bytes().all(|b| b.is_ascii_uppercase()))
            .collect();
        if words.is_empty() {
            return Err(Error::EmptyDictionary { min_len });
        }
        Ok(Dictionary { words })
    }

    /// The built-in word list.
    pub fn builtin(min_len: usize) -> Result<Self> {
        Self::from_words(DEFAULT_WORDS.lines(), min_len)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn min_len(&self) -> usize {
        self.words.iter().map(String::len).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(String::len).max().unwrap_or(0)
    }
}

/// Reads one word per line. Words are uppercased and deduplicated; entries
/// shorter than `min_len` or containing non-letters are dropped.
pub fn load_dictionary<R: Read>(source: R, min_len: usize) -> Result<Dictionary> {
    let mut lines = Vec::new();
    for line in BufReader::new(source).lines() {
        lines.push(line?);
    }
    Dictionary::from_words(lines, min_len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_uppercases() {
        let d = load_dictionary(&b"seal\nho\na\n"[..], 1).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec!["A", "HO", "SEAL"]);
        assert_eq!((d.min_len(), d.max_len()), (1, 4));
    }

    #[test]
    fn empty_after_filtering() {
        assert!(matches!(load_dictionary(&b"a\nan\n"[..], 3), Err(Error::EmptyDictionary { min_len: 3 })));
    }

    #[test]
    fn drops_duplicates_and_non_letters() {
        let d = load_dictionary(&b"Seal\nSEAL\ndon't\n\n  tree  \nx1\r\n"[..], 1).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec!["SEAL", "TREE"]);
    }

    #[test]
    fn builtin_list_has_expected_entries() {
        let d = Dictionary::builtin(2).unwrap();
        assert!(d.len() >= 300, "{}", d.len());
        for w in ["HO", "SEA", "SEAL", "REALM", "SEND", "THROW", "ADENOSINE", "ROTTEN", "TREE", "HEARD"] {
            assert!(d.contains(w), "{w}");
        }
        assert!(!d.contains("A"));
    }
}
