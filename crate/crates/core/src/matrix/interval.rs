use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use super::{check_order, span_mask, BandConfig, BinaryMatrix, DenseBinaryMatrix};
use crate::{Error, Result};

/// Closed column range `[lo, hi]`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Interval { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, col: usize) -> bool {
        self.lo <= col && col <= self.hi
    }
}

impl From<(usize, usize)> for Interval {
    fn from((lo, hi): (usize, usize)) -> Self {
        Interval { lo, hi }
    }
}

impl From<Interval> for (usize, usize) {
    fn from(iv: Interval) -> Self {
        (iv.lo, iv.hi)
    }
}

/// Square (0,1)-matrix whose every row is a single contiguous block, or empty.
///
/// JSON form: `{"n": 4, "rows": [[1,2],[2,3],null,[3,4]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIntervalMatrix")]
pub struct IntervalMatrix {
    n: usize,
    rows: Vec<Option<Interval>>,
}

#[derive(Deserialize)]
struct RawIntervalMatrix {
    n: usize,
    rows: Vec<Option<Interval>>,
}

impl TryFrom<RawIntervalMatrix> for IntervalMatrix {
    type Error = Error;
    fn try_from(raw: RawIntervalMatrix) -> Result<Self> {
        IntervalMatrix::new(raw.n, raw.rows)
    }
}

impl IntervalMatrix {
    pub fn new(n: usize, rows: Vec<Option<Interval>>) -> Result<Self> {
        check_order(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: rows.len(),
            });
        }
        for iv in rows.iter().flatten() {
            if iv.lo < 1 || iv.lo > iv.hi || iv.hi > n {
                return Err(Error::OutOfRange {
                    what: "interval endpoint",
                    value: if iv.lo < 1 { iv.lo as i64 } else { iv.hi as i64 },
                    min: 1,
                    max: n as i64,
                });
            }
        }
        Ok(IntervalMatrix { n, rows })
    }

    /// Builds from `(lo, hi)` pairs with no empty rows.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&p| Some(p.into())).collect())
    }

    pub fn empty() -> Self {
        IntervalMatrix { n: 0, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        IntervalMatrix {
            n,
            rows: (1..=n).map(|i| Some(Interval::new(i, i))).collect(),
        }
    }

    /// The all-ones matrix `1_{n×n}`.
    pub fn all_ones(n: usize) -> Self {
        IntervalMatrix {
            n,
            rows: vec![Some(Interval::new(1, n)); n],
        }
    }

    /// Band of half-width `radius` around the diagonal, clipped at the borders.
    /// Its permanent counts permutations within ℓ∞ distance `radius` of the identity.
    pub fn ball(n: usize, radius: usize) -> Self {
        IntervalMatrix {
            n,
            rows: (1..=n)
                .map(|i| Some(Interval::new(i.saturating_sub(radius).max(1), (i + radius).min(n))))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Option<Interval>] {
        &self.rows
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> Option<Interval> {
        self.rows[i - 1]
    }

    pub fn has_empty_row(&self) -> bool {
        self.rows.iter().any(Option::is_none)
    }

    /// Longest row block.
    pub fn max_row_len(&self) -> usize {
        self.rows.iter().flatten().map(Interval::len).max().unwrap_or(0)
    }

    /// Largest number of row blocks covering one column.
    pub fn max_column_overlap(&self) -> usize {
        let mut delta = vec![0i64; self.n + 2];
        for iv in self.rows.iter().flatten() {
            delta[iv.lo] += 1;
            delta[iv.hi + 1] -= 1;
        }
        let mut best = 0i64;
        let mut cur = 0i64;
        for v in &delta {
            cur += v;
            best = best.max(cur);
        }
        best as usize
    }

    /// Rows covering column `col` (1-based), as 1-based row indices.
    pub fn column_support(&self, col: usize) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some_and(|iv| iv.contains(col)))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Reads the matrix back as a band configuration when every row has length `d`.
    pub fn as_band_config(&self, d: usize) -> Option<BandConfig> {
        let x = self
            .rows
            .iter()
            .map(|r| r.filter(|iv| iv.len() == d).map(|iv| iv.lo))
            .collect::<Option<Vec<_>>>()?;
        BandConfig::new(self.n, d, x).ok()
    }

    pub fn to_dense(&self) -> DenseBinaryMatrix {
        DenseBinaryMatrix::from_masks(self.n, (0..self.n).map(|i| self.row_mask(i)).collect())
            .expect("interval matrix order is already validated")
    }

    /// Returns a copy with one extra 1-entry at (`row`, `col`) if that keeps
    /// the row contiguous.
    pub fn with_entry(&self, row: usize, col: usize) -> Option<IntervalMatrix> {
        let mut rows = self.rows.clone();
        let slot = &mut rows[row - 1];
        *slot = match *slot {
            None => Some(Interval::new(col, col)),
            Some(iv) if iv.contains(col) => return None,
            Some(iv) if col + 1 == iv.lo => Some(Interval::new(col, iv.hi)),
            Some(iv) if col == iv.hi + 1 => Some(Interval::new(iv.lo, col)),
            Some(_) => return None,
        };
        Some(IntervalMatrix { n: self.n, rows })
    }

    /// Reverses the row order and the column order (a 180° rotation).
    pub fn rotated(&self) -> IntervalMatrix {
        let n = self.n;
        IntervalMatrix {
            n,
            rows: self
                .rows
                .iter()
                .rev()
                .map(|r| r.map(|iv| Interval::new(n + 1 - iv.hi, n + 1 - iv.lo)))
                .collect(),
        }
    }

    /// Applies a row permutation: row `i` of the result is row `perm[i]` of `self`
    /// (both 0-based).
    pub fn permute_rows(&self, perm: &[usize]) -> IntervalMatrix {
        IntervalMatrix {
            n: self.n,
            rows: perm.iter().map(|&p| self.rows[p]).collect(),
        }
    }
}

impl BinaryMatrix for IntervalMatrix {
    fn order(&self) -> usize {
        self.n
    }

    fn row_mask(&self, row: usize) -> u64 {
        match self.rows[row] {
            Some(iv) => span_mask(iv.lo, iv.hi),
            None => 0,
        }
    }

    fn as_interval_matrix(&self) -> Option<Cow<'_, IntervalMatrix>> {
        Some(Cow::Borrowed(self))
    }
}

/// Deletes row `i` and column `j` (1-based); the remaining blocks are clipped
/// at column `j` and columns to its right shift left by one.
pub fn minor(m: &IntervalMatrix, i: usize, j: usize) -> Result<IntervalMatrix> {
    let n = m.n;
    for idx in [i, j] {
        if idx < 1 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, order: n });
        }
    }
    let rows = m
        .rows
        .iter()
        .enumerate()
        .filter(|&(k, _)| k + 1 != i)
        .map(|(_, r)| {
            r.and_then(|iv| {
                if j < iv.lo {
                    Some(Interval::new(iv.lo - 1, iv.hi - 1))
                } else if j > iv.hi {
                    Some(iv)
                } else if iv.lo == iv.hi {
                    None
                } else {
                    Some(Interval::new(iv.lo, iv.hi - 1))
                }
            })
        })
        .collect();
    Ok(IntervalMatrix { n: n - 1, rows })
}

/// Block-diagonal composition `a ⊕ b`.
pub fn direct_sum(a: &IntervalMatrix, b: &IntervalMatrix) -> Result<IntervalMatrix> {
    let n = a.n + b.n;
    check_order(n)?;
    let shift = a.n;
    let rows = a
        .rows
        .iter()
        .copied()
        .chain(
            b.rows
                .iter()
                .map(|r| r.map(|iv| Interval::new(iv.lo + shift, iv.hi + shift))),
        )
        .collect();
    Ok(IntervalMatrix { n, rows })
}
