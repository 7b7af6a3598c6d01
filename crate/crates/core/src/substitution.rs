//! Rank-order substitution from composition classes to letters.

use std::collections::HashMap;

use crate::composition::CompositionClass;
use crate::error::{Error, Result};
use crate::frequency::{rank_ascending, FrequencyTable, Letter, TieBreakPolicy};

/// Ordered bijection class -> letter; pair `i` joins the `i`-th least
/// frequent class with the `i`-th least frequent letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionTable {
    pairs: Vec<(CompositionClass, Letter)>,
    forward: HashMap<CompositionClass, Letter>,
    inverse: [Option<CompositionClass>; 26],
}

impl SubstitutionTable {
    /// Builds a table from explicit pairs, rejecting repeated classes or
    /// letters.
    pub fn from_pairs(pairs: Vec<(CompositionClass, Letter)>) -> Result<Self> {
        let mut forward = HashMap::with_capacity(pairs.len());
        let mut inverse = [None; 26];
        for &(class, letter) in &pairs {
            if forward.insert(class, letter).is_some() {
                return Err(Error::DuplicateKey(class.to_string()));
            }
            let slot = &mut inverse[usize::from(letter.byte() - b'A')];
            if slot.is_some() {
                return Err(Error::DuplicateKey(letter.to_string()));
            }
            *slot = Some(class);
        }
        Ok(SubstitutionTable { pairs, forward, inverse })
    }

    pub fn pairs(&self) -> &[(CompositionClass, Letter)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn letter_for(&self, class: &CompositionClass) -> Option<Letter> {
        self.forward.get(class).copied()
    }

    pub fn class_for(&self, letter: Letter) -> Option<CompositionClass> {
        self.inverse[usize::from(letter.byte() - b'A')]
    }

    /// Maps a class stream to uppercase letters, one per class.
    pub fn apply(&self, classes: &[CompositionClass]) -> Result<String> {
        let mut out = String::with_capacity(classes.len());
        for (position, class) in classes.iter().enumerate() {
            let letter = self
                .letter_for(class)
                .ok_or_else(|| Error::UnmappedClass { class: class.to_string(), position })?;
            out.push(letter.as_char());
        }
        Ok(out)
    }

    /// Maps decoded text back to its class stream.
    pub fn invert(&self, text: &str) -> Result<Vec<CompositionClass>> {
        text.chars()
            .enumerate()
            .map(|(position, c)| {
                Letter::new(c)
                    .and_then(|l| self.class_for(l))
                    .ok_or(Error::UnmappedLetter { letter: c, position })
            })
            .collect()
    }

    /// `class<TAB>letter` rows in rank order, preceded by a column header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("class\tletter\n");
        for (class, letter) in &self.pairs {
            out.push_str(&format!("{class}\t{letter}\n"));
        }
        out
    }

    /// Reads the format written by [`SubstitutionTable::to_tsv`]; `#` lines
    /// and the header row are ignored.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') || line == "class\tletter" {
                continue;
            }
            let malformed = |reason: String| Error::Malformed { line: i + 1, reason };
            let (class, letter) =
                line.split_once('\t').ok_or_else(|| malformed("expected class<TAB>letter".into()))?;
            let class = class.parse().map_err(|e: Error| malformed(e.to_string()))?;
            let letter = letter.parse().map_err(|e: Error| malformed(e.to_string()))?;
            pairs.push((class, letter));
        }
        Self::from_pairs(pairs)
    }
}

/// Pairs classes and letters by ascending frequency rank.
///
/// Both tables must have the same number of keys; a mismatch is an error
/// rather than being repaired by admitting or dropping letters.
pub fn build_mapping(
    class_table: &FrequencyTable<CompositionClass>,
    letter_table: &FrequencyTable<Letter>,
    policy: TieBreakPolicy,
) -> Result<SubstitutionTable> {
    if class_table.is_empty() {
        return Err(Error::EmptyTable("class"));
    }
    if letter_table.is_empty() {
        return Err(Error::EmptyTable("letter"));
    }
    if class_table.len() != letter_table.len() {
        return Err(Error::CardinalityMismatch { classes: class_table.len(), letters: letter_table.len() });
    }
    let classes = rank_ascending(class_table, policy);
    let letters = rank_ascending(letter_table, policy);
    SubstitutionTable::from_pairs(classes.keys.into_iter().zip(letters.keys).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn class(s: &str) -> CompositionClass {
        s.parse().unwrap()
    }

    fn letter(c: char) -> Letter {
        Letter::new(c).unwrap()
    }

    fn fig2() -> SubstitutionTable {
        build_mapping(&fixtures::fig1a_classes(), &fixtures::fig1b_letters(), TieBreakPolicy::default()).unwrap()
    }

    #[test]
    fn fixture_tables_give_published_mapping() {
        let expected = [
            ("0055", 'J'), ("0028", 'K'), ("0118", 'P'), ("1117", 'F'), ("0037", 'G'), ("0046", 'Y'),
            ("0226", 'B'), ("0127", 'W'), ("0136", 'M'), ("1144", 'U'), ("0244", 'L'), ("0145", 'D'),
            ("1126", 'R'), ("0334", 'O'), ("1333", 'S'), ("2224", 'N'), ("1135", 'T'), ("0235", 'H'),
            ("1225", 'I'), ("2233", 'A'), ("1234", 'E'),
        ];
        let got: Vec<(String, char)> = fig2().pairs().iter().map(|(k, l)| (k.to_string(), l.as_char())).collect();
        let expected: Vec<(String, char)> = expected.iter().map(|(k, l)| (k.to_string(), *l)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn singleton_mapping() {
        let m = build_mapping(
            &FrequencyTable::from_counts([(class("0055"), 7)]),
            &FrequencyTable::from_counts([(letter('Q'), 3)]),
            TieBreakPolicy::default(),
        )
        .unwrap();
        assert_eq!(m.pairs(), &[(class("0055"), letter('Q'))]);
    }

    #[test]
    fn cardinality_mismatch() {
        let mut classes = fixtures::fig1a_classes();
        classes.add(class("0019"));
        let err = build_mapping(&classes, &fixtures::fig1b_letters(), TieBreakPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::CardinalityMismatch { classes: 22, letters: 21 }));
        assert!(err.to_string().contains("omission set"));
        assert!(matches!(
            build_mapping(&FrequencyTable::new(), &fixtures::fig1b_letters(), TieBreakPolicy::default()),
            Err(Error::EmptyTable("class"))
        ));
    }

    #[test]
    fn apply_examples() {
        let m = fig2();
        assert_eq!(m.apply(&[class("1234"), class("2233"), class("1135")]).unwrap(), "EAT");
        assert_eq!(m.apply(&[]).unwrap(), "");
        match m.apply(&[class("1234"), class("0019")]) {
            Err(Error::UnmappedClass { class, position }) => assert_eq!((class.as_str(), position), ("0019", 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_pairs_rejected() {
        assert!(SubstitutionTable::from_pairs(vec![(class("0055"), letter('A')), (class("0055"), letter('B'))]).is_err());
        assert!(SubstitutionTable::from_pairs(vec![(class("0055"), letter('A')), (class("1234"), letter('A'))]).is_err());
    }

    #[test]
    fn tsv_round_trip() {
        let m = fig2();
        let text = m.to_tsv();
        assert!(text.starts_with("class\tletter\n0055\tJ\n"));
        assert_eq!(SubstitutionTable::from_tsv(&text).unwrap(), m);
        assert!(SubstitutionTable::from_tsv("0055 J\n").is_err());
    }

    proptest! {
        #[test]
        fn apply_then_invert(idx in proptest::collection::vec(0usize..21, 0..200)) {
            let m = fig2();
            let stream: Vec<CompositionClass> = idx.iter().map(|&i| m.pairs()[i].0).collect();
            let text = m.apply(&stream).unwrap();
            prop_assert_eq!(text.len(), stream.len());
            prop_assert_eq!(m.invert(&text).unwrap(), stream);
        }

        #[test]
        fn scaling_preserves_mapping(factor in 1u64..1000) {
            let scaled = build_mapping(
                &fixtures::fig1a_classes().scaled(factor),
                &fixtures::fig1b_letters().scaled(factor),
                TieBreakPolicy::default(),
            ).unwrap();
            prop_assert_eq!(scaled, fig2());
        }
    }
}
