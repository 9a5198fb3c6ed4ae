use crate::matrix::BinaryMatrix;
use crate::{Error, PermanentValue, Result};

/// Permanent by recursive expansion along rows, pruning as soon as a pending
/// row has no free column. The reference oracle for the other engines.
pub fn permanent_naive<M: BinaryMatrix + ?Sized>(m: &M) -> Result<PermanentValue> {
    permanent_naive_with(m, 12)
}

pub(crate) fn permanent_naive_with<M: BinaryMatrix + ?Sized>(m: &M, cap: usize) -> Result<PermanentValue> {
    let n = m.order();
    if n > cap {
        return Err(Error::TooLarge {
            engine: "naive",
            order: n,
            cap,
        });
    }
    let rows: Vec<u64> = (0..n).map(|i| m.row_mask(i)).collect();
    Ok(PermanentValue::from(expand(&rows, 0, 0)))
}

fn expand(rows: &[u64], row: usize, used: u64) -> u128 {
    if row == rows.len() {
        return 1;
    }
    if rows[row..].iter().any(|&r| r & !used == 0) {
        return 0;
    }
    let mut free = rows[row] & !used;
    let mut total = 0;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        total += expand(rows, row + 1, used | bit);
        free &= free - 1;
    }
    total
}
