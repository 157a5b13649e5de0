//! Exact tools for quasi-contractive fixed-point conditions.
//!
//! - [`ring`]: arithmetic in ℤ[i√3] and exact rationals.
//! - [`metric`]: the powers-of-two and `z`-power spaces, plus a rational demo line.
//! - [`condition`]: contractive conditions as sets of distance terms, and the
//!   family of candidate relaxation terms.
//! - [`solver`]: Picard iteration and contraction-factor estimation.
//! - [`lab`]: case certificates and grid oracles for the two counterexamples.
//!
//! Distances are always handled squared, and contraction factors as `q²`,
//! so every comparison is an integer or rational comparison.

pub mod condition;
pub mod error;
pub mod exec;
pub mod lab;
pub mod metric;
pub mod ring;
pub mod solver;

pub use error::{Error, Result};
pub use exec::Exec;
