//! Block pushes, closed-form optimal configurations and the auxiliary
//! real-valued functions of the asymptotic analysis.
//!
//! The closed forms apply when blocks are long, `n <= 2d`. Writing `r = n - d`,
//! the boundary cases are accepted on both ends: `r = 0` is the all-ones
//! matrix and `r = d` (`n = 2d`) is `1_{d×d} ⊕ 1_{d×d}`.

use serde::{Deserialize, Serialize};

use crate::matrix::{direct_sum, ln_factorial, BandConfig, IntervalMatrix};
use crate::{binomial, factorial, Error, PermanentValue, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PushDirection {
    Right,
    Left,
}

impl PushDirection {
    fn name(self) -> &'static str {
        match self {
            PushDirection::Right => "right",
            PushDirection::Left => "left",
        }
    }
}

fn check_row(cfg: &BandConfig, i: usize) -> Result<()> {
    if i < 1 || i > cfg.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            order: cfg.n(),
        });
    }
    Ok(())
}

/// Last and first row (1-based) sharing row `i`'s block start, in a sorted
/// configuration.
pub fn run_bounds(cfg: &BandConfig, i: usize) -> Result<(usize, usize)> {
    if !cfg.is_sorted() {
        return Err(Error::NotSorted);
    }
    check_row(cfg, i)?;
    let x = cfg.x();
    let v = x[i - 1];
    let last = i + x[i..].iter().take_while(|&&w| w == v).count();
    let first = i - x[..i - 1].iter().rev().take_while(|&&w| w == v).count();
    Ok((last, first))
}

/// Moves one block of row `i`'s run by one column, keeping the vector sorted:
/// `Right` shifts the last row of the run, `Left` the first.
///
/// `Right` needs `x_i <= r`, `Left` needs `x_i >= 2`.
pub fn push_block(cfg: &BandConfig, i: usize, dir: PushDirection) -> Result<BandConfig> {
    let (last, first) = run_bounds(cfg, i)?;
    let v = cfg.x()[i - 1];
    let blocked = match dir {
        PushDirection::Right => v > cfg.r(),
        PushDirection::Left => v < 2,
    };
    if blocked {
        return Err(Error::PushBlocked {
            row: i,
            direction: dir.name(),
        });
    }
    let mut x = cfg.x().to_vec();
    match dir {
        PushDirection::Right => x[last - 1] += 1,
        PushDirection::Left => x[first - 1] -= 1,
    }
    BandConfig::new(cfg.n(), cfg.d(), x)
}

fn check_long_blocks(n: usize, d: usize) -> Result<()> {
    if d < 1 || d > n || 2 * d < n {
        return Err(Error::Range(format!(
            "closed forms need n/2 <= d <= n, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// The first `⌊n/2⌋` blocks flush left, the rest flush right.
pub fn optimal_config(n: usize, d: usize) -> Result<BandConfig> {
    check_long_blocks(n, d)?;
    let r = n - d;
    let x = (1..=n).map(|i| if i <= n / 2 { 1 } else { r + 1 }).collect();
    BandConfig::new(n, d, x)
}

/// Every configuration of the optimal shape: for even `n` just
/// [`optimal_config`]; for odd `n` the middle block may start anywhere in
/// `1..=r+1`, giving `r + 1` sorted configurations (not deduplicated up to
/// symmetry).
pub fn optimal_family(n: usize, d: usize) -> Result<Vec<BandConfig>> {
    check_long_blocks(n, d)?;
    if n.is_multiple_of(2) {
        return Ok(vec![optimal_config(n, d)?]);
    }
    let r = n - d;
    let half = n / 2;
    (1..=r + 1)
        .map(|mid| {
            let x = std::iter::repeat_n(1, half)
                .chain(std::iter::once(mid))
                .chain(std::iter::repeat_n(r + 1, half))
                .collect();
            BandConfig::new(n, d, x)
        })
        .collect()
}

/// `C(d - r, ⌊(d - r)/2⌋) · ⌊n/2⌋! · ⌈n/2⌉!` with `r = n - d`.
pub fn max_permanent_formula(n: usize, d: usize) -> Result<PermanentValue> {
    check_long_blocks(n, d)?;
    let s = d - (n - d);
    Ok(&(&binomial(s, s / 2) * &factorial(n / 2)) * &factorial(n.div_ceil(2)))
}

/// Conjectured optimal shape for arbitrary `d`: `⌊n/d⌋ - 1` copies of
/// `1_{d×d}` followed by the optimal order-`(d + n mod d)` block.
pub fn conjecture_band_config(n: usize, d: usize) -> Result<BandConfig> {
    check_conjecture(n, d)?;
    let (q, r) = (n / d, n % d);
    let tail = optimal_config(d + r, d)?;
    let offset = (q - 1) * d;
    let x = (0..q - 1)
        .flat_map(|b| std::iter::repeat_n(b * d + 1, d))
        .chain(tail.x().iter().map(|&v| v + offset))
        .collect();
    BandConfig::new(n, d, x)
}

/// [`conjecture_band_config`] assembled as an explicit direct sum.
pub fn conjecture_config(n: usize, d: usize) -> Result<IntervalMatrix> {
    check_conjecture(n, d)?;
    let (q, r) = (n / d, n % d);
    let block = IntervalMatrix::all_ones(d);
    let mut m = IntervalMatrix::empty();
    for _ in 0..q - 1 {
        m = direct_sum(&m, &block)?;
    }
    direct_sum(&m, &optimal_config(d + r, d)?.to_interval_matrix())
}

/// `(d!)^{⌊n/d⌋ - 1} · C(d - r, ⌊(d - r)/2⌋) · ⌊(d + r)/2⌋! · ⌈(d + r)/2⌉!`, `r = n mod d`.
pub fn conjecture_size_formula(n: usize, d: usize) -> Result<PermanentValue> {
    check_conjecture(n, d)?;
    let (q, r) = (n / d, n % d);
    let full: PermanentValue = (0..q - 1).map(|_| factorial(d)).product();
    Ok(full * max_permanent_formula(d + r, d)?)
}

fn check_conjecture(n: usize, d: usize) -> Result<()> {
    if d < 1 || d > n {
        return Err(Error::Range(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
    }
    Ok(())
}

// Real-valued helpers, all evaluated through log-factorials.

/// `F(a, b) = (a!)^{b/a}`, `a >= 1`.
pub fn f_power(a: usize, b: f64) -> Result<f64> {
    Ok(ln_f_power(a, b)?.exp())
}

fn ln_f_power(a: usize, b: f64) -> Result<f64> {
    if a < 1 {
        return Err(Error::Range(format!("F(a, b) needs a >= 1, got {a}")));
    }
    Ok(b * ln_factorial(a) / a as f64)
}

fn ln_d_ratio(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Range(format!("D(k) needs k >= 2, got {k}")));
    }
    Ok(ln_f_power(k, 1.0)? - ln_f_power(k - 1, 1.0)?)
}

/// `D(k) = F(k, 1) / F(k - 1, 1)`, `k >= 2`.
pub fn d_ratio(k: usize) -> Result<f64> {
    Ok(ln_d_ratio(k)?.exp())
}

/// `C(k) = D(k) / D(k - 1)`, `k >= 3`.
pub fn c_ratio(k: usize) -> Result<f64> {
    if k < 3 {
        return Err(Error::Range(format!("C(k) needs k >= 3, got {k}")));
    }
    Ok((ln_d_ratio(k)? - ln_d_ratio(k - 1)?).exp())
}

/// `B(k, v) = C(k)^v ((k - v)^2 + 2v(k - v)D(k - 1) + v(v - 1)D(k - 1)^2)`
/// for `k >= 3`, `0 < v < k`.
pub fn wanless_b(k: usize, v: usize) -> Result<f64> {
    if k < 3 || v == 0 || v >= k {
        return Err(Error::Range(format!(
            "B(k, v) needs k >= 3 and 0 < v < k, got k = {k}, v = {v}"
        )));
    }
    let c = c_ratio(k)?;
    let dk = d_ratio(k - 1)?;
    let (kf, vf) = (k as f64, v as f64);
    let poly = (kf - vf).powi(2) + 2.0 * vf * (kf - vf) * dk + vf * (vf - 1.0) * dk * dk;
    Ok(c.powi(v as i32) * poly)
}

/// Gaps `k^2 - B(k, v)` for `v = 1..k-1` and their minimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WanlessMargin {
    pub k: usize,
    pub margins: Vec<f64>,
    pub min_margin: f64,
}

pub fn wanless_margin(k: usize) -> Result<WanlessMargin> {
    if k < 3 {
        return Err(Error::Range(format!("margins need k >= 3, got {k}")));
    }
    let k2 = (k * k) as f64;
    let margins = (1..k)
        .map(|v| wanless_b(k, v).map(|b| k2 - b))
        .collect::<Result<Vec<_>>>()?;
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(WanlessMargin { k, margins, min_margin })
}

/// `ln` of the right side minus `ln` of the left side of
/// `(a!)^{1/a} (b!)^{1/b} < ((a+1)!)^{1/(a+1)} ((b-1)!)^{1/(b-1)}`.
/// Requires `b >= a + 2 > 3`.
pub fn factorial_inequality_margin(a: usize, b: usize) -> Result<f64> {
    if a + 2 <= 3 || b < a + 2 {
        return Err(Error::Range(format!("need b >= a + 2 > 3, got a = {a}, b = {b}")));
    }
    let term = |k: usize| ln_factorial(k) / k as f64;
    Ok(term(a + 1) + term(b - 1) - term(a) - term(b))
}

/// Whether the factorial smoothing inequality holds strictly at double precision.
pub fn factorial_inequality_holds(a: usize, b: usize) -> Result<bool> {
    Ok(factorial_inequality_margin(a, b)? > 0.0)
}
