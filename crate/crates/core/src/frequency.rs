//! Frequency tables for composition classes and letters, and ascending
//! rankings with deterministic tie-breaking.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::{compose, CompositionClass};
use crate::error::{Error, Result};
use crate::genome_io::TurnWindow;

/// An uppercase ASCII letter `A`..=`Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Option<Self> {
        let c = c.to_ascii_uppercase();
        c.is_ascii_uppercase().then_some(Letter(c as u8))
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        let b = b.to_ascii_uppercase();
        b.is_ascii_uppercase().then_some(Letter(b))
    }

    pub fn byte(self) -> u8 {
        self.0
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }

    /// Vowels are A, E, I, O, U; Y counts as a consonant.
    pub fn is_vowel(self) -> bool {
        matches!(self.0, b'A' | b'E' | b'I' | b'O' | b'U')
    }

    fn index(self) -> u32 {
        u32::from(self.0 - b'A')
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::new(c).ok_or_else(|| Error::InvalidParameter(format!("not a letter: {s:?}"))),
            _ => Err(Error::InvalidParameter(format!("not a single letter: {s:?}"))),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_char(self.as_char())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let c = char::deserialize(deserializer)?;
        Letter::new(c).ok_or_else(|| serde::de::Error::custom(format!("not a letter: {c:?}")))
    }
}

/// A set of letters, e.g. the omission set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const fn empty() -> Self {
        LetterSet(0)
    }

    /// C, Q, V, X, Z.
    pub fn default_omitted() -> Self {
        "C,Q,V,X,Z".parse().expect("static letter list")
    }

    pub fn insert(&mut self, letter: Letter) {
        self.0 |= 1 << letter.index();
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0 & (1 << letter.index()) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (b'A'..=b'Z').map(Letter).filter(move |l| self.contains(*l))
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        f.write_str(&letters.join(","))
    }
}

impl FromStr for LetterSet {
    type Err = Error;

    /// Comma-separated letters; an empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let mut set = LetterSet::empty();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            set.insert(part.parse()?);
        }
        Ok(set)
    }
}

/// Decides order among keys with equal counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreakPolicy {
    /// Consonants before vowels, then lexicographic. Keys that are not
    /// letters are never vowels, so for classes this is plain lexicographic.
    #[default]
    ConsonantBeforeVowel,
    Lexicographic,
}

/// Keys that can be ranked.
pub trait RankKey: Ord + Clone {
    fn is_vowel(&self) -> bool {
        false
    }
}

impl RankKey for Letter {
    fn is_vowel(&self) -> bool {
        Letter::is_vowel(*self)
    }
}

impl RankKey for CompositionClass {}

/// Exact counts per key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable<K: Ord> {
    counts: BTreeMap<K, u64>,
    total: u64,
}

impl<K: Ord> Default for FrequencyTable<K> {
    fn default() -> Self {
        FrequencyTable { counts: BTreeMap::new(), total: 0 }
    }
}

impl<K: Ord + Clone> FrequencyTable<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keys with zero count are dropped.
    pub fn from_counts<I: IntoIterator<Item = (K, u64)>>(pairs: I) -> Self {
        let mut table = Self::new();
        for (k, n) in pairs {
            table.add_n(k, n);
        }
        table
    }

    pub fn add(&mut self, key: K) {
        self.add_n(key, 1);
    }

    pub fn add_n(&mut self, key: K, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(key).or_insert(0) += n;
        self.total += n;
    }

    pub fn merge(&mut self, other: &FrequencyTable<K>) {
        for (k, n) in &other.counts {
            self.add_n(k.clone(), *n);
        }
    }

    pub fn count(&self, key: &K) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct keys.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn probability(&self, key: &K) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(key) as f64 / self.total as f64
    }

    /// Probability rounded half-up to 4 decimals, e.g. `0.2514`.
    pub fn probability_str(&self, key: &K) -> String {
        format_probability(self.count(key), self.total)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u64)> {
        self.counts.iter().map(|(k, n)| (k, *n))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.counts.keys()
    }

    /// Multiplies every count by `factor`; ranking is unchanged.
    pub fn scaled(&self, factor: u64) -> Self {
        Self::from_counts(self.counts.iter().map(|(k, n)| (k.clone(), n * factor)))
    }
}

impl<K: Ord + Clone + fmt::Display> FrequencyTable<K> {
    /// Two-column `key<TAB>count` lines in key order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (k, n) in &self.counts {
            out.push_str(&format!("{k}\t{n}\n"));
        }
        out
    }
}

impl<K: Ord + Clone + FromStr> FrequencyTable<K> {
    /// Parses `key<TAB>count` lines. Blank lines and `#` comments are skipped;
    /// a first row whose count column is not a number is treated as a header.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut table = Self::new();
        let mut first_row = true;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (Some(key), Some(count)) = (cols.next(), cols.next()) else {
                return Err(Error::Malformed { line: line_no, reason: "expected key<TAB>count".into() });
            };
            let Ok(count) = count.trim().parse::<u64>() else {
                if first_row {
                    first_row = false;
                    continue;
                }
                return Err(Error::Malformed { line: line_no, reason: format!("bad count {count:?}") });
            };
            first_row = false;
            let key = key
                .trim()
                .parse::<K>()
                .map_err(|_| Error::Malformed { line: line_no, reason: format!("bad key {key:?}") })?;
            table.add_n(key, count);
        }
        Ok(table)
    }
}

/// Rounds `count / total` half-up to 4 decimal places using integer
/// arithmetic.
pub fn format_probability(count: u64, total: u64) -> String {
    if total == 0 {
        return "0.0000".to_string();
    }
    let scaled = (u128::from(count) * 20_000 + u128::from(total)) / (2 * u128::from(total));
    format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
}

/// Keys in ascending probability order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedKeys<K> {
    pub keys: Vec<K>,
}

impl<K> RankedKeys<K> {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, K> {
        self.keys.iter()
    }
}

/// Orders keys by increasing count (all keys share one total, so this is
/// increasing probability); ties are settled by `policy`.
pub fn rank_ascending<K: RankKey>(table: &FrequencyTable<K>, policy: TieBreakPolicy) -> RankedKeys<K> {
    let mut entries: Vec<(&K, u64)> = table.iter().collect();
    entries.sort_by(|(ka, na), (kb, nb)| {
        na.cmp(nb).then_with(|| match policy {
            TieBreakPolicy::ConsonantBeforeVowel => ka.is_vowel().cmp(&kb.is_vowel()).then_with(|| ka.cmp(kb)),
            TieBreakPolicy::Lexicographic => ka.cmp(kb),
        })
    });
    RankedKeys { keys: entries.into_iter().map(|(k, _)| k.clone()).collect() }
}

/// Tallies the composition class of every window.
pub fn tally_classes<'a, I>(windows: I) -> FrequencyTable<CompositionClass>
where
    I: IntoIterator<Item = &'a TurnWindow<'a>>,
{
    let mut table = FrequencyTable::new();
    for w in windows {
        table.add(compose(w).classify());
    }
    table
}

/// Counts case-folded ASCII letters, skipping anything in `omit` and every
/// non-letter byte (digits, punctuation, whitespace, non-ASCII).
pub fn tally_letters(corpus: &[u8], omit: &LetterSet) -> Result<FrequencyTable<Letter>> {
    let mut counts = [0u64; 26];
    for &b in corpus {
        if let Some(l) = Letter::from_byte(b) {
            counts[l.index() as usize] += 1;
        }
    }
    let table = FrequencyTable::from_counts(
        (b'A'..=b'Z')
            .map(Letter)
            .zip(counts)
            .filter(|(l, _)| !omit.contains(*l)),
    );
    if table.total() == 0 {
        return Err(Error::NoCountableLetters);
    }
    Ok(table)
}

impl<K: RankKey> FrequencyTable<K> {
    pub fn ranked(&self, policy: TieBreakPolicy) -> RankedKeys<K> {
        rank_ascending(self, policy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn letter(c: char) -> Letter {
        Letter::new(c).unwrap()
    }

    #[test]
    fn tally_letters_basic() {
        let t = tally_letters(b"aab.", &LetterSet::empty()).unwrap();
        assert_eq!(t.count(&letter('A')), 2);
        assert_eq!(t.count(&letter('B')), 1);
        assert_eq!(t.total(), 3);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn omission_covering_everything_is_error() {
        let omit = LetterSet::default_omitted();
        assert!(matches!(tally_letters(b"CQVXZ", &omit), Err(Error::NoCountableLetters)));
        assert!(matches!(tally_letters(b"123 ,.", &LetterSet::empty()), Err(Error::NoCountableLetters)));
    }

    #[test]
    fn accented_letters_are_skipped() {
        let t = tally_letters("héllo".as_bytes(), &LetterSet::empty()).unwrap();
        assert_eq!(t.total(), 4);
    }

    #[test]
    fn omit_set_parsing() {
        let s: LetterSet = "c, q,V,x,Z".parse().unwrap();
        assert_eq!(s, LetterSet::default_omitted());
        assert_eq!(s.to_string(), "C,Q,V,X,Z");
        assert_eq!(s.len(), 5);
        assert!("".parse::<LetterSet>().unwrap().is_empty());
        assert!("CC".parse::<LetterSet>().is_err());
    }

    #[test]
    fn letter_ranking_breaks_tie_consonant_first() {
        let ranked = rank_ascending(&fixtures::fig1b_letters(), TieBreakPolicy::ConsonantBeforeVowel);
        let s: String = ranked.iter().map(|l| l.as_char()).collect();
        assert_eq!(s, "JKPFGYBWMULDROSNTHIAE");
    }

    #[test]
    fn consonant_tie_is_lexicographic() {
        let t = FrequencyTable::from_counts([(letter('Y'), 1), (letter('X'), 1)]);
        let ranked = rank_ascending(&t, TieBreakPolicy::ConsonantBeforeVowel);
        assert_eq!(ranked.keys, vec![letter('X'), letter('Y')]);
        let t = FrequencyTable::from_counts([(letter('A'), 1), (letter('Z'), 1)]);
        assert_eq!(rank_ascending(&t, TieBreakPolicy::ConsonantBeforeVowel).keys, vec![letter('Z'), letter('A')]);
        assert_eq!(rank_ascending(&t, TieBreakPolicy::Lexicographic).keys, vec![letter('A'), letter('Z')]);
    }

    #[test]
    fn class_ranking_matches_fixture_order() {
        let ranked = rank_ascending(&fixtures::fig1a_classes(), TieBreakPolicy::ConsonantBeforeVowel);
        let keys: Vec<String> = ranked.iter().map(|k| k.to_string()).collect();
        let expected = [
            "0055", "0028", "0118", "1117", "0037", "0046", "0226", "0127", "0136", "1144", "0244", "0145", "1126",
            "0334", "1333", "2224", "1135", "0235", "1225", "2233", "1234",
        ];
        assert_eq!(keys, expected);
    }

    #[test]
    fn probability_formatting() {
        assert_eq!(format_probability(800, 3182), "0.2514");
        assert_eq!(format_probability(800, 3183), "0.2513");
        assert_eq!(format_probability(382, 3183), "0.1200");
        assert_eq!(format_probability(5, 3183), "0.0016");
        assert_eq!(format_probability(1, 1), "1.0000");
        assert_eq!(format_probability(1, 20_000), "0.0001");
        assert_eq!(format_probability(0, 0), "0.0000");
    }

    #[test]
    fn tally_classes_examples() {
        use crate::genome_io::TurnWindow;
        let w = TurnWindow { start: 1, bases: b"ACACACACAC" };
        let t = tally_classes([w, w].iter());
        assert_eq!(t.total(), 2);
        assert_eq!(t.count(&"0055".parse().unwrap()), 2);
        assert_eq!(t.len(), 1);
        let empty: Vec<TurnWindow<'_>> = Vec::new();
        let t = tally_classes(empty.iter());
        assert_eq!(t.total(), 0);
        assert!(t.is_empty());
    }

    #[test]
    fn tsv_round_trip_with_header() {
        let t = fixtures::fig1b_letters();
        let text = format!("# comment\nletter\tcount\n{}", t.to_tsv());
        assert_eq!(FrequencyTable::<Letter>::from_tsv(&text).unwrap(), t);
        assert!(FrequencyTable::<Letter>::from_tsv("A\t1\nB\tx\n").is_err());
        assert!(FrequencyTable::<Letter>::from_tsv("A 1\n").is_err());
    }

    proptest! {
        #[test]
        fn probabilities_sum_to_one(counts in proptest::collection::vec(1u64..5000, 1..26)) {
            let t = FrequencyTable::from_counts(counts.iter().enumerate().map(|(i, n)| (Letter(b'A' + i as u8), *n)));
            let exact: f64 = t.keys().map(|k| t.probability(k)).sum();
            prop_assert!((exact - 1.0).abs() < 1e-9);
            let rounded: f64 = t.keys().map(|k| t.probability_str(k).parse::<f64>().unwrap()).sum();
            // each rounded term is off by at most 5e-5
            prop_assert!((rounded - 1.0).abs() <= 5e-5 * t.len() as f64 + 1e-12);
        }

        #[test]
        fn ranking_ignores_insertion_order(counts in proptest::collection::vec(0u64..6, 26), rot in 0usize..26) {
            let pairs: Vec<(Letter, u64)> = counts.iter().enumerate().map(|(i, n)| (Letter(b'A' + i as u8), *n)).collect();
            let mut rotated = pairs.clone();
            rotated.rotate_left(rot);
            let a = FrequencyTable::from_counts(pairs);
            let b = FrequencyTable::from_counts(rotated);
            let ra = rank_ascending(&a, TieBreakPolicy::ConsonantBeforeVowel);
            prop_assert_eq!(&ra, &rank_ascending(&b, TieBreakPolicy::ConsonantBeforeVowel));
            prop_assert_eq!(&ra, &rank_ascending(&a, TieBreakPolicy::ConsonantBeforeVowel));
            for pair in ra.keys.windows(2) {
                prop_assert!(a.count(&pair[0]) <= a.count(&pair[1]));
            }
        }

        #[test]
        fn trailing_non_letter_is_ignored(c in any::<u8>().prop_filter("non-letter", |b| !b.is_ascii_alphabetic())) {
            let base = tally_letters(b"X", &LetterSet::empty()).unwrap();
            prop_assert_eq!(tally_letters(&[b'X', c], &LetterSet::empty()).unwrap(), base);
        }
    }
}
