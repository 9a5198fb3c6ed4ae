use super::BinaryMatrix;
use crate::{factorial, PermanentValue};

/// Upper bound `∏ (d_i!)^{1/d_i}` on the permanent over row sums `d_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BregmanBound {
    /// Natural log of the bound; `-inf` when some row is zero.
    pub log_bound: f64,
    /// The bound as an integer, available when all row sums equal some `d`
    /// dividing `n` (then it is `(d!)^{n/d}`), or when the bound is zero.
    pub exact: Option<PermanentValue>,
}

impl BregmanBound {
    /// `per <= bound` with relative slack `tol` in the log domain.
    pub fn admits(&self, per: &PermanentValue, tol: f64) -> bool {
        if per.is_zero() {
            return true;
        }
        per.ln() <= self.log_bound + tol
    }
}

/// `ln(k!)` as a sum of logs.
pub fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|v| (v as f64).ln()).sum()
}

pub fn bregman_bound<M: BinaryMatrix + ?Sized>(m: &M) -> BregmanBound {
    let n = m.order();
    let sums: Vec<usize> = (0..n).map(|i| m.row_sum(i) as usize).collect();
    if sums.contains(&0) {
        return BregmanBound {
            log_bound: f64::NEG_INFINITY,
            exact: Some(PermanentValue::zero()),
        };
    }
    let log_bound = sums.iter().map(|&d| ln_factorial(d) / d as f64).sum();
    let exact = match sums.first() {
        None => Some(PermanentValue::one()),
        Some(&d) if sums.iter().all(|&s| s == d) && n.is_multiple_of(d) => {
            Some((0..n / d).map(|_| factorial(d)).product())
        }
        _ => None,
    };
    BregmanBound { log_bound, exact }
}
