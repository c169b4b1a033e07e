//! Exact bound states of the pseudoharmonic potential
//! `V(r) = D₀ (r/r₀ − r₀/r)²`, an independent Numerov shooting check of the
//! closed-form spectrum, and the diatomic-molecule data that drive both.

// `!(x > 0.0)` is used throughout so that NaN is rejected along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod moldb;
pub mod oracle;
pub mod quadrature;
pub mod spectrum;
pub mod units;
pub mod wavefunc;

pub use error::{Error, Result};
pub use spectrum::{Molecule, QuantumState};
