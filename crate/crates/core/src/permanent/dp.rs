use std::collections::HashMap;
use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::EngineLimits;
use crate::matrix::IntervalMatrix;
use crate::{Error, PermanentValue, Result};

/// Permanent of an interval matrix by sweeping columns left to right.
///
/// The state after column `j` is the set of rows whose block has started but
/// which are not yet matched; each column is matched to one such row, and a
/// state dies as soon as an unmatched row's block ends. The number of states
/// is bounded by the subsets of rows open at a single column.
pub fn permanent_interval_dp(m: &IntervalMatrix) -> Result<PermanentValue> {
    permanent_interval_dp_with(m, &EngineLimits::default())
}

pub(crate) fn permanent_interval_dp_with(m: &IntervalMatrix, limits: &EngineLimits) -> Result<PermanentValue> {
    let longest = m.max_row_len();
    if longest > limits.dp_max_row_len {
        return Err(Error::WidthExceeded {
            detail: format!("row block of length {longest} exceeds {}", limits.dp_max_row_len),
        });
    }
    let open = m.max_column_overlap();
    if open > limits.dp_max_open_rows {
        return Err(Error::WidthExceeded {
            detail: format!("{open} rows open at one column exceeds {}", limits.dp_max_open_rows),
        });
    }
    if m.has_empty_row() {
        return Ok(PermanentValue::zero());
    }
    // every 0/1 permanent of order <= 34 is at most 34! < 2^128
    if m.order() <= 34 {
        Ok(PermanentValue::from(sweep::<u128>(m)))
    } else {
        Ok(PermanentValue::from(sweep::<BigUint>(m)))
    }
}

fn sweep<C>(m: &IntervalMatrix) -> C
where
    C: Clone + Zero + One + for<'a> AddAssign<&'a C>,
{
    let n = m.order();
    let mut rows: Vec<_> = m.rows().iter().map(|r| r.expect("no empty rows")).collect();
    rows.sort_unstable();
    let mut starting = vec![0u64; n + 1];
    let mut ending = vec![0u64; n + 1];
    for (k, iv) in rows.iter().enumerate() {
        starting[iv.lo] |= 1 << k;
        ending[iv.hi] |= 1 << k;
    }

    let mut states: HashMap<u64, C> = HashMap::from([(0, C::one())]);
    for col in 1..=n {
        let mut next: HashMap<u64, C> = HashMap::with_capacity(states.len() * 2);
        for (mask, count) in &states {
            let pending = mask | starting[col];
            let mut choices = pending;
            while choices != 0 {
                let bit = choices & choices.wrapping_neg();
                choices &= choices - 1;
                let rest = pending & !bit;
                if rest & ending[col] != 0 {
                    continue;
                }
                *next.entry(rest).or_insert_with(C::zero) += count;
            }
        }
        if next.is_empty() {
            return C::zero();
        }
        states = next;
    }
    states.remove(&0).unwrap_or_else(C::zero)
}
