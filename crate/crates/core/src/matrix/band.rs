use serde::{Deserialize, Serialize};

use super::{check_order, Interval, IntervalMatrix};
use crate::{Error, Result};

/// A matrix in which every row carries exactly `d` contiguous ones, stored as
/// the vector of left-most block columns.
///
/// JSON form: `{"n": 5, "d": 3, "x": [1,1,1,3,3]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBandConfig")]
pub struct BandConfig {
    n: usize,
    d: usize,
    x: Vec<usize>,
}

#[derive(Deserialize)]
struct RawBandConfig {
    n: usize,
    d: usize,
    x: Vec<usize>,
}

impl TryFrom<RawBandConfig> for BandConfig {
    type Error = Error;
    fn try_from(raw: RawBandConfig) -> Result<Self> {
        BandConfig::new(raw.n, raw.d, raw.x)
    }
}

impl BandConfig {
    /// Validates `1 <= d <= n` and `1 <= x_i <= n - d + 1`. Does not sort `x`.
    pub fn new(n: usize, d: usize, x: Vec<usize>) -> Result<Self> {
        check_order(n)?;
        if d < 1 || d > n {
            return Err(Error::OutOfRange {
                what: "block length d",
                value: d as i64,
                min: 1,
                max: n as i64,
            });
        }
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        let max = n - d + 1;
        if let Some(&bad) = x.iter().find(|&&v| v < 1 || v > max) {
            return Err(Error::OutOfRange {
                what: "block start x_i",
                value: bad as i64,
                min: 1,
                max: max as i64,
            });
        }
        Ok(BandConfig { n, d, x })
    }

    pub(crate) fn new_unchecked(n: usize, d: usize, x: Vec<usize>) -> Self {
        debug_assert!(BandConfig::new(n, d, x.clone()).is_ok());
        BandConfig { n, d, x }
    }

    /// `t` copies of `1_{d×d}` on the diagonal.
    pub fn full_blocks(t: usize, d: usize) -> Result<Self> {
        let x = (0..t).flat_map(|b| std::iter::repeat_n(b * d + 1, d)).collect();
        BandConfig::new(t * d, d, x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `n - d`, the number of positions a block can move.
    pub fn r(&self) -> usize {
        self.n - self.d
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn is_sorted(&self) -> bool {
        self.x.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn sorted(&self) -> BandConfig {
        let mut x = self.x.clone();
        x.sort_unstable();
        BandConfig { x, ..*self }
    }

    /// The 180° rotation: row `i` moves to row `n + 1 - i` and its block
    /// start becomes `n - d + 2 - x_i`.
    pub fn reflected(&self) -> BandConfig {
        let top = self.n - self.d + 2;
        BandConfig {
            x: self.x.iter().rev().map(|&v| top - v).collect(),
            ..*self
        }
    }

    /// `self ⊕ 1_{d×d}`, with the new block appended after the last row.
    pub fn with_full_block(&self) -> Result<BandConfig> {
        let mut x = self.x.clone();
        x.extend(std::iter::repeat_n(self.n + 1, self.d));
        BandConfig::new(self.n + self.d, self.d, x)
    }

    /// Column support of column `col` (1-based) as a row bit mask.
    pub fn column_rows(&self, col: usize) -> u64 {
        self.x
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v <= col && col < v + self.d)
            .fold(0u64, |acc, (i, _)| acc | 1 << i)
    }

    pub fn to_interval_matrix(&self) -> IntervalMatrix {
        to_interval_matrix(self)
    }
}

/// Row `i` becomes the block `[x_i, x_i + d - 1]`.
pub fn to_interval_matrix(cfg: &BandConfig) -> IntervalMatrix {
    let rows = cfg.x.iter().map(|&v| Some(Interval::new(v, v + cfg.d - 1))).collect();
    IntervalMatrix::new(cfg.n, rows).expect("band config blocks fit by construction")
}

/// Representative of `cfg` under row sorting and the 180° rotation: the
/// lexicographically smaller of the sorted vector and its sorted reflection.
pub fn canonical_form(cfg: &BandConfig) -> BandConfig {
    let a = cfg.sorted();
    let b = cfg.reflected().sorted();
    if b.x < a.x {
        b
    } else {
        a
    }
}
