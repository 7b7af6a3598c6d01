//! Published reference tables shipped as named fixtures.
//!
//! `fig1a` holds the T4 composition-class counts together with the
//! permutation counts printed alongside them (`paper_claimed`); those claimed
//! values are kept only for diffing and are never used in computation.
//! `fig1b` holds the letter counts of a 3183-letter English excerpt with
//! C, Q, V, X, Z omitted.

use crate::composition::CompositionClass;
use crate::error::{Error, Result};
use crate::frequency::{FrequencyTable, Letter};

/// One row of the class fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFixtureRow {
    pub key: &'static str,
    pub paper_claimed_permutations: u32,
    pub count: u64,
}

const fn row(key: &'static str, paper_claimed_permutations: u32, count: u64) -> ClassFixtureRow {
    ClassFixtureRow { key, paper_claimed_permutations, count }
}

pub const FIG1A: [ClassFixtureRow; 21] = [
    row("0055", 6, 5),
    row("0028", 12, 7),
    row("0118", 12, 11),
    row("1117", 4, 15),
    row("0037", 12, 16),
    row("0046", 12, 23),
    row("0226", 12, 63),
    row("0127", 16, 76),
    row("0136", 16, 109),
    row("1144", 6, 119),
    row("0244", 12, 135),
    row("0145", 16, 140),
    row("1126", 12, 144),
    row("0334", 12, 145),
    row("1333", 4, 181),
    row("2224", 4, 188),
    row("1135", 12, 195),
    row("0235", 16, 225),
    row("1225", 12, 290),
    row("2233", 6, 295),
    row("1234", 16, 800),
];

pub const FIG1B: [(char, u64); 21] = [
    ('J', 5),
    ('K', 26),
    ('P', 52),
    ('F', 53),
    ('G', 69),
    ('Y', 70),
    ('B', 83),
    ('W', 86),
    ('M', 91),
    ('U', 92),
    ('L', 131),
    ('D', 149),
    ('R', 183),
    ('O', 219),
    ('S', 221),
    ('N', 235),
    ('T', 239),
    ('H', 253),
    ('I', 253),
    ('A', 291),
    ('E', 382),
];

pub fn fig1a_classes() -> FrequencyTable<CompositionClass> {
    FrequencyTable::from_counts(FIG1A.iter().map(|r| (r.key.parse().expect("fixture key"), r.count)))
}

pub fn fig1b_letters() -> FrequencyTable<Letter> {
    FrequencyTable::from_counts(FIG1B.iter().map(|&(c, n)| (Letter::new(c).expect("fixture letter"), n)))
}

/// Permutation count printed for `class` in the class fixture, if listed.
pub fn paper_claimed_permutations(class: &CompositionClass) -> Option<u32> {
    FIG1A
        .iter()
        .find(|r| r.key.parse::<CompositionClass>().ok().as_ref() == Some(class))
        .map(|r| r.paper_claimed_permutations)
}

pub fn letter_fixture(name: &str) -> Result<FrequencyTable<Letter>> {
    match name {
        "fig1b" => Ok(fig1b_letters()),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

pub fn class_fixture(name: &str) -> Result<FrequencyTable<CompositionClass>> {
    match name {
        "fig1a" => Ok(fig1a_classes()),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}
