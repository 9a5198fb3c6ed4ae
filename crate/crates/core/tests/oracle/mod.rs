//! Test oracles written independently of the library engines.

#![allow(dead_code)]

use anticode_core::matrix::{BinaryMatrix, Interval, IntervalMatrix};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Next permutation in lexicographic order; `false` after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every permutation of `0..n` as 0-based image vectors, lexicographically.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut all = vec![p.clone()];
    while next_permutation(&mut p) {
        all.push(p.clone());
    }
    all
}

/// The defining sum over `S_n`, by reading entries through `get`.
pub fn brute_permanent<M: BinaryMatrix + ?Sized>(m: &M) -> u64 {
    let n = m.order();
    let mut p: Vec<usize> = (0..n).collect();
    let mut total = 0u64;
    loop {
        if (0..n).all(|i| m.get(i + 1, p[i] + 1)) {
            total += 1;
        }
        if !next_permutation(&mut p) {
            return total;
        }
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u8);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Random interval matrices of order `1..=n_max`, with occasional empty rows.
pub fn interval_matrix(n_max: usize) -> impl Strategy<Value = IntervalMatrix> {
    (1..=n_max).prop_flat_map(|n| {
        let row = prop_oneof![
            1 => Just(None),
            12 => (1..=n, 1..=n).prop_map(|(a, b)| Some(Interval::new(a.min(b), a.max(b)))),
        ];
        proptest::collection::vec(row, n).prop_map(move |rows| IntervalMatrix::new(n, rows).expect("valid rows"))
    })
}

/// Random banded matrices: row `i` covers a window around column `i`.
pub fn banded_matrix(n_max: usize) -> impl Strategy<Value = IntervalMatrix> {
    (1..=n_max).prop_flat_map(|n| {
        proptest::collection::vec((0..=3usize, 0..=3usize), n).prop_map(move |reach| {
            let rows = reach
                .iter()
                .enumerate()
                .map(|(i, &(left, right))| {
                    Some(Interval::new(
                        (i + 1).saturating_sub(left).max(1),
                        (i + 1 + right).min(n),
                    ))
                })
                .collect();
            IntervalMatrix::new(n, rows).expect("valid rows")
        })
    })
}

/// Random (not necessarily sorted) band configurations.
pub fn band_config(n_max: usize) -> impl Strategy<Value = anticode_core::BandConfig> {
    (1..=n_max)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, d)| (Just(n), Just(d), proptest::collection::vec(1..=n - d + 1, n)))
        .prop_map(|(n, d, x)| anticode_core::BandConfig::new(n, d, x).expect("valid config"))
}
