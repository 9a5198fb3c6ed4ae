//! Matrix representations and structural operations.
//!
//! All row and column indices in the public API are 1-based.

mod band;
mod bregman;
mod components;
mod dense;
mod interval;

use std::borrow::Cow;

pub use band::{canonical_form, to_interval_matrix, BandConfig};
pub use bregman::{bregman_bound, ln_factorial, BregmanBound};
pub use components::{contains_full_block, decompose_components, ComponentDecomposition};
pub use dense::DenseBinaryMatrix;
pub use interval::{direct_sum, minor, Interval, IntervalMatrix};

/// Largest supported matrix order. Rows are stored as 64-bit column masks.
pub const MAX_ORDER: usize = 64;

/// Common read access to square (0,1)-matrices.
pub trait BinaryMatrix {
    fn order(&self) -> usize;

    /// Columns of 0-based row `row` as a bit mask, bit `c` standing for column `c + 1`.
    fn row_mask(&self, row: usize) -> u64;

    /// The matrix as an [`IntervalMatrix`] when every row support is contiguous.
    fn as_interval_matrix(&self) -> Option<Cow<'_, IntervalMatrix>>;

    fn row_sum(&self, row: usize) -> u32 {
        self.row_mask(row).count_ones()
    }

    fn get(&self, row: usize, col: usize) -> bool {
        (1..=self.order()).contains(&row)
            && (1..=self.order()).contains(&col)
            && self.row_mask(row - 1) >> (col - 1) & 1 == 1
    }
}

/// Mask with bits `lo - 1 ..= hi - 1` set.
pub(crate) fn span_mask(lo: usize, hi: usize) -> u64 {
    debug_assert!(1 <= lo && lo <= hi && hi <= MAX_ORDER);
    let len = hi - lo + 1;
    (u64::MAX >> (64 - len)) << (lo - 1)
}

pub(crate) fn check_order(n: usize) -> crate::Result<()> {
    if n > MAX_ORDER {
        return Err(crate::Error::TooLarge {
            engine: "matrix",
            order: n,
            cap: MAX_ORDER,
        });
    }
    Ok(())
}
