//! Dense operators for A_n spin chains and spin ladders, the Markov chains
//! built from them, and residual-based checks of their algebraic identities.
//!
//! States are 1-based and site 1 is the most significant digit. Chain
//! matrices follow the column convention: `m[(i, j)]` is the probability
//! or rate of moving to `i` from `j`.

pub mod algebra;
pub mod braid;
pub mod chain;
pub mod error;
pub mod ladder;
pub mod linalg;
pub mod markov;
pub mod report;
pub mod simulate;

pub use error::{Error, Result};
pub use report::VerificationReport;
