//! Unit-cost Damerau-Levenshtein distance (Lowrance-Wagner) over A-Z.
//!
//! Operations turn a text surface into a dictionary word: delete a surface
//! letter, insert a word letter, substitute, or transpose two letters that
//! become adjacent once the letters between them are deleted. Each costs 1.
//! With unit costs the result is the true minimum number of operations, so
//! the distance is a metric.

use std::fmt;

use serde::{Serialize, Serializer};

/// One edit applied to the surface. Offsets are 0-based positions in the
/// surface; `Insert::at` is the surface offset the letter goes before.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EditOp {
    Transpose { first: usize, second: usize },
    Delete { at: usize, letter: char },
    Insert { at: usize, letter: char },
    Substitute { at: usize, from: char, to: char },
}

impl EditOp {
    fn position(&self) -> usize {
        match *self {
            EditOp::Transpose { first, .. } => first,
            EditOp::Delete { at, .. } | EditOp::Insert { at, .. } | EditOp::Substitute { at, .. } => at,
        }
    }
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EditOp::Transpose { first, second } => write!(f, "transpose@{first}:{second}"),
            EditOp::Delete { at, letter } => write!(f, "delete@{at}:{letter}"),
            EditOp::Insert { at, letter } => write!(f, "insert@{at}:{letter}"),
            EditOp::Substitute { at, from, to } => write!(f, "substitute@{at}:{from}>{to}"),
        }
    }
}

impl Serialize for EditOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy)]
enum Step {
    Origin,
    Match,
    Substitute,
    Delete,
    Insert,
    Transpose { k: usize, l: usize },
}

fn slot(b: u8) -> usize {
    usize::from(b.wrapping_sub(b'A')).min(26)
}

/// Edit distance from `surface` to `word`.
pub fn distance(surface: &[u8], word: &[u8]) -> usize {
    let mut table = Vec::new();
    fill_table(surface, word, &mut table);
    table[(surface.len() + 1) * (word.len() + 2) + word.len() + 1]
}

// Row/column 0 of `table` is the sentinel; cell (i+1, j+1) holds the
// distance between surface[..i] and word[..j].
fn fill_table(surface: &[u8], word: &[u8], table: &mut Vec<usize>) {
    let (n, m) = (surface.len(), word.len());
    let width = m + 2;
    let inf = n + m;
    table.clear();
    table.resize((n + 2) * width, 0);
    let idx = |i: usize, j: usize| i * width + j;
    table[idx(0, 0)] = inf;
    for i in 0..=n {
        table[idx(i + 1, 0)] = inf;
        table[idx(i + 1, 1)] = i;
    }
    for j in 0..=m {
        table[idx(0, j + 1)] = inf;
        table[idx(1, j + 1)] = j;
    }
    let mut last_row = [0usize; 27];
    for i in 1..=n {
        let mut last_col = 0;
        for j in 1..=m {
            let k = last_row[slot(word[j - 1])];
            let l = last_col;
            let cost = if surface[i - 1] == word[j - 1] {
                last_col = j;
                0
            } else {
                1
            };
            table[idx(i + 1, j + 1)] = (table[idx(i, j)] + cost)
                .min(table[idx(i + 1, j)] + 1)
                .min(table[idx(i, j + 1)] + 1)
                .min(table[idx(k, l)] + (i - k - 1) + 1 + (j - l - 1));
        }
        last_row[slot(surface[i - 1])] = i;
    }
}

/// Distances from every prefix `surface[..i]` (for `i` in `lengths`) to
/// `word`, stopping once no prefix can come within `budget`.
///
/// Returns `(i, distance)` pairs with `distance <= budget`.
pub(crate) fn prefix_distances(
    surface: &[u8],
    word: &[u8],
    lengths: std::ops::RangeInclusive<usize>,
    budget: usize,
    table: &mut Vec<usize>,
    out: &mut Vec<(usize, usize)>,
) {
    out.clear();
    let (n, m) = (surface.len(), word.len());
    let width = m + 2;
    let inf = n + m;
    table.clear();
    table.resize((n + 2) * width, 0);
    let idx = |i: usize, j: usize| i * width + j;
    table[idx(0, 0)] = inf;
    for i in 0..=n {
        table[idx(i + 1, 0)] = inf;
        table[idx(i + 1, 1)] = i;
    }
    for j in 0..=m {
        table[idx(0, j + 1)] = inf;
        table[idx(1, j + 1)] = j;
    }
    let mut last_row = [0usize; 27];
    for i in 1..=n {
        let mut last_col = 0;
        // row minima never decrease, so once a row is over budget every
        // longer prefix is too
        let mut row_min = table[idx(i + 1, 1)];
        for j in 1..=m {
            let k = last_row[slot(word[j - 1])];
            let l = last_col;
            let cost = if surface[i - 1] == word[j - 1] {
                last_col = j;
                0
            } else {
                1
            };
            let best = (table[idx(i, j)] + cost)
                .min(table[idx(i + 1, j)] + 1)
                .min(table[idx(i, j + 1)] + 1)
                .min(table[idx(k, l)] + (i - k - 1) + 1 + (j - l - 1));
            table[idx(i + 1, j + 1)] = best;
            row_min = row_min.min(best);
        }
        last_row[slot(surface[i - 1])] = i;
        let d = table[idx(i + 1, m + 1)];
        if lengths.contains(&i) && d <= budget {
            out.push((i, d));
        }
        if row_min > budget || i >= *lengths.end() {
            break;
        }
    }
}

/// Distance plus one minimal operation script, ordered by surface position.
pub fn edit_script(surface: &[u8], word: &[u8]) -> (usize, Vec<EditOp>) {
    let (n, m) = (surface.len(), word.len());
    let mut table = Vec::new();
    fill_table(surface, word, &mut table);
    let width = m + 2;
    let idx = |i: usize, j: usize| i * width + j;

    // recover the step taken at each cell by re-checking the recurrence
    let mut steps = vec![Step::Origin; (n + 1) * (m + 1)];
    let mut last_row = [0usize; 27];
    steps[1..=m].fill(Step::Insert);
    for i in 1..=n {
        steps[i * (m + 1)] = Step::Delete;
    }
    for i in 1..=n {
        let mut last_col = 0;
        for j in 1..=m {
            let k = last_row[slot(word[j - 1])];
            let l = last_col;
            let same = surface[i - 1] == word[j - 1];
            if same {
                last_col = j;
            }
            let here = table[idx(i + 1, j + 1)];
            let step = if here == table[idx(i, j)] + usize::from(!same) {
                if same { Step::Match } else { Step::Substitute }
            } else if here == table[idx(i, j + 1)] + 1 {
                Step::Delete
            } else if here == table[idx(i + 1, j)] + 1 {
                Step::Insert
            } else {
                debug_assert_eq!(here, table[idx(k, l)] + (i - k - 1) + 1 + (j - l - 1));
                Step::Transpose { k, l }
            };
            steps[i * (m + 1) + j] = step;
        }
        last_row[slot(surface[i - 1])] = i;
    }

    let mut ops = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        match steps[i * (m + 1) + j] {
            Step::Origin => break,
            Step::Match => {
                i -= 1;
                j -= 1;
            }
            Step::Substitute => {
                ops.push(EditOp::Substitute { at: i - 1, from: surface[i - 1] as char, to: word[j - 1] as char });
                i -= 1;
                j -= 1;
            }
            Step::Delete => {
                ops.push(EditOp::Delete { at: i - 1, letter: surface[i - 1] as char });
                i -= 1;
            }
            Step::Insert => {
                ops.push(EditOp::Insert { at: i, letter: word[j - 1] as char });
                j -= 1;
            }
            Step::Transpose { k, l } => {
                // surface[k-1] == word[j-1] and surface[i-1] == word[l-1]
                for jj in (l + 1..j).rev() {
                    ops.push(EditOp::Insert { at: i - 1, letter: word[jj - 1] as char });
                }
                ops.push(EditOp::Transpose { first: k - 1, second: i - 1 });
                for ii in (k + 1..i).rev() {
                    ops.push(EditOp::Delete { at: ii - 1, letter: surface[ii - 1] as char });
                }
                i = k - 1;
                j = l - 1;
            }
        }
    }
    ops.reverse();
    ops.sort_by_key(EditOp::position);
    let cost = table[idx(n + 1, m + 1)];
    debug_assert_eq!(cost, ops.len());
    (cost, ops)
}
