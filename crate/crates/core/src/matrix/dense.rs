use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use super::{check_order, BinaryMatrix, Interval, IntervalMatrix};
use crate::{Error, Result};

/// General square (0,1)-matrix.
///
/// JSON form: `{"n": 3, "entries": [[1,0,1],[0,1,0],[1,1,1]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDense", into = "RawDense")]
pub struct DenseBinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawDense {
    n: usize,
    entries: Vec<Vec<u8>>,
}

impl TryFrom<RawDense> for DenseBinaryMatrix {
    type Error = Error;
    fn try_from(raw: RawDense) -> Result<Self> {
        DenseBinaryMatrix::from_entries(raw.n, &raw.entries)
    }
}

impl From<DenseBinaryMatrix> for RawDense {
    fn from(m: DenseBinaryMatrix) -> Self {
        let entries = m
            .rows
            .iter()
            .map(|&mask| (0..m.n).map(|c| (mask >> c & 1) as u8).collect())
            .collect();
        RawDense { n: m.n, entries }
    }
}

impl DenseBinaryMatrix {
    pub fn from_entries(n: usize, entries: &[Vec<u8>]) -> Result<Self> {
        check_order(n)?;
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: entries.len(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for row in entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            let mut mask = 0u64;
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => mask |= 1 << c,
                    other => return Err(Error::Invalid(format!("entry {other} is not 0 or 1"))),
                }
            }
            rows.push(mask);
        }
        Ok(DenseBinaryMatrix { n, rows })
    }

    /// Rows given as column bit masks (bit `c` is column `c + 1`).
    pub fn from_masks(n: usize, rows: Vec<u64>) -> Result<Self> {
        check_order(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: rows.len(),
            });
        }
        let allowed = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if rows.iter().any(|&r| r & !allowed != 0) {
            return Err(Error::Invalid("row mask has bits beyond the order".into()));
        }
        Ok(DenseBinaryMatrix { n, rows })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_masks(n, vec![0; n])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u64] {
        &self.rows
    }

    /// Sets entry (`row`, `col`), 1-based.
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let bit = 1u64 << (col - 1);
        if value {
            self.rows[row - 1] |= bit;
        } else {
            self.rows[row - 1] &= !bit;
        }
    }

    /// Whether every nonzero entry lies within `width` of the diagonal.
    pub fn within_band(&self, width: usize) -> bool {
        self.rows.iter().enumerate().all(|(i, &mask)| {
            (0..self.n)
                .filter(|c| mask >> c & 1 == 1)
                .all(|c| c.abs_diff(i) <= width)
        })
    }

    /// Whether the support of `self` is contained in the support of `other`.
    pub fn support_within<M: BinaryMatrix + ?Sized>(&self, other: &M) -> bool {
        self.n == other.order() && (0..self.n).all(|i| self.rows[i] & !other.row_mask(i) == 0)
    }
}

impl BinaryMatrix for DenseBinaryMatrix {
    fn order(&self) -> usize {
        self.n
    }

    fn row_mask(&self, row: usize) -> u64 {
        self.rows[row]
    }

    fn as_interval_matrix(&self) -> Option<Cow<'_, IntervalMatrix>> {
        let rows = self
            .rows
            .iter()
            .map(|&mask| {
                if mask == 0 {
                    return Some(None);
                }
                let lo = mask.trailing_zeros() as usize;
                let shifted = mask >> lo;
                // contiguous iff shifted is of the form 2^k - 1
                (shifted & shifted.wrapping_add(1) == 0).then(|| {
                    let len = shifted.count_ones() as usize;
                    Some(Interval::new(lo + 1, lo + len))
                })
            })
            .collect::<Option<Vec<_>>>()?;
        IntervalMatrix::new(self.n, rows).ok().map(Cow::Owned)
    }
}
