//! Exact combinatorics for optimal anticodes over permutations under the
//! ℓ∞ metric.
//!
//! An anticode of maximal distance `d - 1` in `S_n` corresponds to a
//! (0,1)-matrix whose rows each carry a contiguous block of `d` ones, and its
//! size is the permanent of that matrix. This crate provides:
//!
//! * [`matrix`]: band configurations, interval matrices, minors, direct sums,
//!   component decomposition, canonical forms and the Brégman bound;
//! * [`permanent`]: three independent exact permanent engines;
//! * [`theory`]: block pushes, the closed-form optimal configurations and
//!   their permanent, the conjectured structure for `d <= n/2`, and the
//!   auxiliary real-valued functions used in the asymptotic analysis;
//! * [`search`]: exhaustive maximizer search, classification, structure and
//!   periodicity reports;
//! * [`perm_space`]: permutations, the ℓ∞ distance, anticode
//!   materialization, ball sizes and the set–antiset code bound;
//! * [`verify`]: exhaustive checkers for the structural identities and
//!   inequalities, shared by the CLI self-test and the acceptance suite.

pub mod error;
pub mod matrix;
pub mod perm_space;
pub mod permanent;
pub mod search;
pub mod theory;
pub mod verify;

mod clique;
mod value;

pub use error::{Error, Result};
pub use matrix::{
    bregman_bound, canonical_form, decompose_components, direct_sum, minor, to_interval_matrix, BandConfig,
    BinaryMatrix, BregmanBound, ComponentDecomposition, DenseBinaryMatrix, Interval, IntervalMatrix,
};
pub use permanent::{permanent, permanent_with, EngineKind, EngineLimits};
pub use value::{binomial, factorial, PermanentValue};
