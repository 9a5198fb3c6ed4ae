use num_bigint::{BigInt, BigUint, Sign};
use rayon::prelude::*;

use crate::matrix::BinaryMatrix;
use crate::{Error, PermanentValue, Result};

/// Ryser's formula `per(A) = (-1)^n Σ_S (-1)^{|S|} ∏_i Σ_{j∈S} a_ij`, with the
/// column subsets `S` visited in Gray-code order so each step updates the row
/// sums in O(n).
pub fn permanent_ryser<M: BinaryMatrix + ?Sized>(m: &M) -> Result<PermanentValue> {
    permanent_ryser_with(m, 28)
}

/// Columns above this many are split off into independently swept chunks.
const SEQUENTIAL_BITS: usize = 14;
const MAX_CHUNK_BITS: usize = 10;

pub(crate) fn permanent_ryser_with<M: BinaryMatrix + ?Sized>(m: &M, cap: usize) -> Result<PermanentValue> {
    let n = m.order();
    if n > cap {
        return Err(Error::TooLarge {
            engine: "ryser",
            order: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(PermanentValue::one());
    }
    let rows: Vec<u64> = (0..n).map(|i| m.row_mask(i)).collect();
    if rows.contains(&0) {
        return Ok(PermanentValue::zero());
    }
    // columns[j] lists the rows with a 1 in column j
    let columns: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..n).filter(|&i| rows[i] >> j & 1 == 1).collect())
        .collect();

    let high = n.saturating_sub(SEQUENTIAL_BITS).min(MAX_CHUNK_BITS);
    let low = n - high;
    let chunks = 1usize << high;
    let sweep = |chunk: usize| sweep_chunk(n, &columns, low, chunk);
    let partials: Vec<(BigUint, BigUint)> = if chunks == 1 {
        vec![sweep(0)]
    } else {
        (0..chunks).into_par_iter().map(sweep).collect()
    };

    let mut total = BigInt::default();
    for (pos, neg) in partials {
        total += BigInt::from(pos);
        total -= BigInt::from(neg);
    }
    if n % 2 == 1 {
        total = -total;
    }
    match total.sign() {
        Sign::Minus => Err(Error::InternalInconsistency("Ryser sum came out negative".into())),
        _ => Ok(PermanentValue::from(total.magnitude().clone())),
    }
}

/// Positive and negative parts of the Ryser sum over all subsets whose high
/// columns (`low..n`) are fixed by `chunk`.
fn sweep_chunk(n: usize, columns: &[Vec<usize>], low: usize, chunk: usize) -> (BigUint, BigUint) {
    let mut sums = vec![0u32; n];
    let mut size = 0u32;
    for (k, col) in columns.iter().enumerate().skip(low) {
        if chunk >> (k - low) & 1 == 1 {
            size += 1;
            for &i in col {
                sums[i] += 1;
            }
        }
    }
    let mut acc = SplitAccumulator::default();
    let mut gray = 0usize;
    for t in 0..1usize << low {
        if t > 0 {
            let j = t.trailing_zeros() as usize;
            gray ^= 1 << j;
            if gray >> j & 1 == 1 {
                size += 1;
                for &i in &columns[j] {
                    sums[i] += 1;
                }
            } else {
                size -= 1;
                for &i in &columns[j] {
                    sums[i] -= 1;
                }
            }
        }
        if size == 0 || sums.contains(&0) {
            continue;
        }
        acc.add(size % 2 == 1, &sums);
    }
    acc.finish()
}

/// Sums nonnegative terms into separate positive and negative parts, using
/// `u128` until it would overflow.
#[derive(Default)]
struct SplitAccumulator {
    pos: u128,
    neg: u128,
    pos_big: BigUint,
    neg_big: BigUint,
}

impl SplitAccumulator {
    fn add(&mut self, negative: bool, factors: &[u32]) {
        let (small, big) = if negative {
            (&mut self.neg, &mut self.neg_big)
        } else {
            (&mut self.pos, &mut self.pos_big)
        };
        match checked_product(factors) {
            Some(term) => match small.checked_add(term) {
                Some(s) => *small = s,
                None => {
                    *big += *small;
                    *small = term;
                }
            },
            None => {
                *big += factors.iter().fold(BigUint::from(1u32), |p, &f| p * f);
            }
        }
    }

    fn finish(self) -> (BigUint, BigUint) {
        (self.pos_big + self.pos, self.neg_big + self.neg)
    }
}

fn checked_product(factors: &[u32]) -> Option<u128> {
    factors.iter().try_fold(1u128, |p, &f| p.checked_mul(f as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{direct_sum, factorial, BandConfig, IntervalMatrix};

    #[test]
    fn examples() {
        assert_eq!(permanent_ryser(&IntervalMatrix::all_ones(4)).unwrap(), 24u64);
        let b = IntervalMatrix::all_ones(3);
        assert_eq!(permanent_ryser(&direct_sum(&b, &b).unwrap()).unwrap(), 36u64);
        let cfg = BandConfig::new(4, 3, vec![1, 1, 2, 2]).unwrap();
        assert_eq!(permanent_ryser(&cfg.to_interval_matrix()).unwrap(), 8u64);
    }

    #[test]
    fn chunked_sweep_matches_factorial() {
        // 18 columns forces the parallel chunked path
        assert_eq!(permanent_ryser(&IntervalMatrix::all_ones(18)).unwrap(), factorial(18));
        assert_eq!(permanent_ryser(&IntervalMatrix::identity(17)).unwrap(), 1u64);
    }

    #[test]
    fn products_beyond_u128_fall_back_to_bigints() {
        // 28^28 overflows u128; the permanent 28! still fits but the terms do not
        assert_eq!(permanent_ryser(&IntervalMatrix::all_ones(28)).unwrap(), factorial(28));
    }

    #[test]
    fn cap_and_trivial_cases() {
        assert!(matches!(
            permanent_ryser(&IntervalMatrix::identity(29)),
            Err(Error::TooLarge { cap: 28, .. })
        ));
        assert_eq!(permanent_ryser(&IntervalMatrix::empty()).unwrap(), 1u64);
        let m = IntervalMatrix::new(2, vec![None, Some((1, 2).into())]).unwrap();
        assert_eq!(permanent_ryser(&m).unwrap(), 0u64);
    }
}
