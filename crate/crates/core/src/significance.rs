//! Monte Carlo null models for the dictionary-word yield of a decoded text.
//!
//! Trial `i` draws from its own ChaCha8 stream: the generator is seeded
//! with the run seed and switched to stream `i`, so a trial's randomness
//! does not depend on which thread runs it or how many trials there are.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composition::CompositionClass;
use crate::error::{Error, Result};
use crate::substitution::SubstitutionTable;
use crate::word_search::{Dictionary, ExactScanner, YieldCounts};

pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64-stream-per-trial";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullModel {
    /// Permute the observed class stream; the letter histogram is kept exactly.
    ShuffleStream,
    /// Draw letters i.i.d. from the decoded text's letter frequencies.
    ResampleLetters,
}

impl fmt::Display for NullModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NullModel::ShuffleStream => "shuffle-stream",
            NullModel::ResampleLetters => "resample-letters",
        })
    }
}

impl FromStr for NullModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shuffle-stream" => Ok(NullModel::ShuffleStream),
            "resample-letters" => Ok(NullModel::ResampleLetters),
            other => Err(Error::InvalidParameter(format!(
                "model must be shuffle-stream or resample-letters, got {other:?}"
            ))),
        }
    }
}

/// Add-one corrected upper-tail p-values, one per yield class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YieldPValues {
    pub total: f64,
    pub len3: f64,
    pub len4: f64,
    pub len5: f64,
    pub len6_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullModelResult {
    pub model: NullModel,
    pub rng: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub observed: YieldCounts,
    pub null_counts: Vec<YieldCounts>,
    pub p_values: YieldPValues,
}

impl NullModelResult {
    /// Null totals in trial order.
    pub fn null_totals(&self) -> Vec<u64> {
        self.null_counts.iter().map(|c| c.total).collect()
    }
}

/// `(1 + #{null >= observed}) / (trials + 1)`.
pub fn p_value(observed: u64, null: impl IntoIterator<Item = u64>) -> f64 {
    let mut trials = 0u64;
    let mut at_least = 0u64;
    for n in null {
        trials += 1;
        if n >= observed {
            at_least += 1;
        }
    }
    (1 + at_least) as f64 / (trials + 1) as f64
}

/// Empirical quantile by the nearest-rank rule on a sorted copy.
pub fn quantile(values: &[u64], q: f64) -> u64 {
    assert!(!values.is_empty(), "quantile of empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let rank = (q.clamp(0.0, 1.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.saturating_sub(1).min(sorted.len() - 1)]
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Scores the observed decoding and `trials` randomized controls.
pub fn run_null_model(
    classes: &[CompositionClass],
    mapping: &SubstitutionTable,
    dict: &Dictionary,
    model: NullModel,
    trials: usize,
    seed: u64,
) -> Result<NullModelResult> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let text = mapping.apply(classes)?.into_bytes();
    let scanner = ExactScanner::new(dict);
    let observed = scanner.count(&text);

    let null_counts: Vec<YieldCounts> = match model {
        NullModel::ShuffleStream => (0..trials as u64)
            .into_par_iter()
            .map_init(
                || text.clone(),
                |buf, i| {
                    // shuffling letters equals shuffling classes then mapping
                    buf.copy_from_slice(&text);
                    buf.shuffle(&mut trial_rng(seed, i));
                    scanner.count(buf)
                },
            )
            .collect(),
        NullModel::ResampleLetters => {
            let mut hist = [0u64; 26];
            for &b in &text {
                hist[usize::from(b - b'A')] += 1;
            }
            let letters: Vec<u8> = (b'A'..=b'Z').filter(|b| hist[usize::from(b - b'A')] > 0).collect();
            let weights: Vec<u64> = letters.iter().map(|b| hist[usize::from(b - b'A')]).collect();
            if letters.is_empty() {
                vec![YieldCounts::default(); trials]
            } else {
                let dist = WeightedIndex::new(&weights).expect("positive weights");
                (0..trials as u64)
                    .into_par_iter()
                    .map_init(
                        || vec![0u8; text.len()],
                        |buf, i| {
                            let mut rng = trial_rng(seed, i);
                            for slot in buf.iter_mut() {
                                *slot = letters[dist.sample(&mut rng)];
                            }
                            scanner.count(buf)
                        },
                    )
                    .collect()
            }
        }
    };

    let p = |pick: fn(&YieldCounts) -> u64| p_value(pick(&observed), null_counts.iter().map(pick));
    let p_values = YieldPValues {
        total: p(|c| c.total),
        len3: p(|c| c.len3),
        len4: p(|c| c.len4),
        len5: p(|c| c.len5),
        len6_plus: p(|c| c.len6_plus),
    };
    Ok(NullModelResult { model, rng: RNG_ALGORITHM, seed, trials, observed, null_counts, p_values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::frequency::TieBreakPolicy;
    use crate::substitution::build_mapping;
    use rand::Rng;

    fn mapping() -> SubstitutionTable {
        build_mapping(&fixtures::fig1a_classes(), &fixtures::fig1b_letters(), TieBreakPolicy::default()).unwrap()
    }

    fn random_stream(m: &SubstitutionTable, len: usize, seed: u64) -> Vec<CompositionClass> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..len).map(|_| m.pairs()[rng.gen_range(0..m.len())].0).collect()
    }

    #[test]
    fn deterministic_for_seed() {
        let m = mapping();
        let stream = random_stream(&m, 500, 1);
        let dict = Dictionary::builtin(3).unwrap();
        for model in [NullModel::ShuffleStream, NullModel::ResampleLetters] {
            let a = run_null_model(&stream, &m, &dict, model, 50, 42).unwrap();
            let b = run_null_model(&stream, &m, &dict, model, 50, 42).unwrap();
            assert_eq!(a, b);
            let c = run_null_model(&stream, &m, &dict, model, 50, 43).unwrap();
            assert_ne!(a.null_counts, c.null_counts);
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let m = mapping();
        let dict = Dictionary::builtin(3).unwrap();
        assert!(matches!(run_null_model(&[], &m, &dict, NullModel::ShuffleStream, 0, 1), Err(Error::ZeroTrials)));
    }

    #[test]
    fn zero_observed_gives_p_one() {
        let m = mapping();
        let dict = Dictionary::from_words(["QQQ"], 1).unwrap();
        let stream = random_stream(&m, 100, 3);
        let r = run_null_model(&stream, &m, &dict, NullModel::ResampleLetters, 20, 9).unwrap();
        assert_eq!(r.observed.total, 0);
        assert_eq!(r.p_values.total, 1.0);
        assert_eq!(p_value(0, [0, 0, 5]), 1.0);
    }

    #[test]
    fn p_value_formula() {
        assert_eq!(p_value(5, [1, 2, 5, 9]), 3.0 / 5.0);
        assert_eq!(p_value(10, [1, 2, 5, 9]), 1.0 / 5.0);
    }

    #[test]
    fn p_value_monotone_in_observed() {
        let null = [3u64, 7, 7, 9, 12, 15, 20];
        let mut prev = f64::INFINITY;
        for obs in 0..25 {
            let p = p_value(obs, null);
            assert!(p <= prev && p > 0.0 && p <= 1.0);
            prev = p;
        }
    }

    #[test]
    fn shuffle_preserves_histogram() {
        let m = mapping();
        let stream = random_stream(&m, 300, 5);
        let text = m.apply(&stream).unwrap().into_bytes();
        let mut expected = text.clone();
        expected.sort_unstable();
        for i in 0..20 {
            let mut buf = text.clone();
            buf.shuffle(&mut trial_rng(11, i));
            buf.sort_unstable();
            assert_eq!(buf, expected);
        }
    }

    #[test]
    fn more_trials_extend_the_same_sequence() {
        let m = mapping();
        let stream = random_stream(&m, 400, 8);
        let dict = Dictionary::builtin(3).unwrap();
        let short = run_null_model(&stream, &m, &dict, NullModel::ShuffleStream, 30, 77).unwrap();
        let long = run_null_model(&stream, &m, &dict, NullModel::ShuffleStream, 60, 77).unwrap();
        assert_eq!(short.observed, long.observed);
        assert_eq!(&long.null_counts[..30], &short.null_counts[..]);
    }

    #[test]
    fn quantiles() {
        let v = [5u64, 1, 4, 2, 3];
        assert_eq!(quantile(&v, 0.0), 1);
        assert_eq!(quantile(&v, 0.5), 3);
        assert_eq!(quantile(&v, 1.0), 5);
    }

    #[test]
    fn model_names() {
        assert_eq!("shuffle-stream".parse::<NullModel>().unwrap(), NullModel::ShuffleStream);
        assert_eq!(NullModel::ResampleLetters.to_string(), "resample-letters");
        assert!("bogus".parse::<NullModel>().is_err());
    }
}
