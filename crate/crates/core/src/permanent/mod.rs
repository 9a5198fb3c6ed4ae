//! Exact permanents of (0,1)-matrices.
//!
//! Three independent engines are provided so that every computed value can
//! be cross-checked: plain row expansion, Ryser's inclusion–exclusion formula
//! and a column-sweep dynamic program specialised to interval matrices.

mod dp;
mod naive;
mod ryser;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use dp::permanent_interval_dp;
pub use naive::permanent_naive;
pub use ryser::permanent_ryser;

use crate::matrix::BinaryMatrix;
use crate::{Error, PermanentValue, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Naive,
    Ryser,
    #[serde(rename = "dp")]
    IntervalDp,
    #[default]
    Auto,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Naive => "naive",
            EngineKind::Ryser => "ryser",
            EngineKind::IntervalDp => "dp",
            EngineKind::Auto => "auto",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(EngineKind::Naive),
            "ryser" => Ok(EngineKind::Ryser),
            "dp" | "interval-dp" => Ok(EngineKind::IntervalDp),
            "auto" => Ok(EngineKind::Auto),
            other => Err(Error::Invalid(format!("unknown engine {other:?}"))),
        }
    }
}

/// Size caps for the engines and the thresholds used by [`EngineKind::Auto`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineLimits {
    pub naive_max_order: usize,
    pub ryser_max_order: usize,
    /// Longest row block accepted by the interval DP.
    pub dp_max_row_len: usize,
    /// Most rows the interval DP may hold open at one column.
    pub dp_max_open_rows: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits {
            naive_max_order: 12,
            ryser_max_order: 28,
            dp_max_row_len: 20,
            dp_max_open_rows: 24,
        }
    }
}

/// The engine [`EngineKind::Auto`] would run on `m`: the interval DP when `m`
/// is an interval matrix within the DP caps, else Ryser within its cap, else
/// the naive expansion.
pub fn select_engine<M: BinaryMatrix + ?Sized>(m: &M, limits: &EngineLimits) -> Result<EngineKind> {
    if let Some(iv) = m.as_interval_matrix() {
        if iv.max_row_len() <= limits.dp_max_row_len && iv.max_column_overlap() <= limits.dp_max_open_rows {
            return Ok(EngineKind::IntervalDp);
        }
    }
    let n = m.order();
    if n <= limits.ryser_max_order {
        Ok(EngineKind::Ryser)
    } else if n <= limits.naive_max_order {
        Ok(EngineKind::Naive)
    } else {
        Err(Error::TooLarge {
            engine: "auto",
            order: n,
            cap: limits.ryser_max_order.max(limits.naive_max_order),
        })
    }
}

/// Permanent with default limits.
pub fn permanent<M: BinaryMatrix + ?Sized>(m: &M, kind: EngineKind) -> Result<PermanentValue> {
    permanent_with(m, kind, &EngineLimits::default())
}

pub fn permanent_with<M: BinaryMatrix + ?Sized>(
    m: &M,
    kind: EngineKind,
    limits: &EngineLimits,
) -> Result<PermanentValue> {
    match kind {
        EngineKind::Naive => naive::permanent_naive_with(m, limits.naive_max_order),
        EngineKind::Ryser => ryser::permanent_ryser_with(m, limits.ryser_max_order),
        EngineKind::IntervalDp => {
            let iv = m
                .as_interval_matrix()
                .ok_or_else(|| Error::Invalid("interval DP needs contiguous row supports".into()))?;
            dp::permanent_interval_dp_with(&iv, limits)
        }
        EngineKind::Auto => permanent_with(m, select_engine(m, limits)?, limits),
    }
}
