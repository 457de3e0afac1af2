//! Dense real linear algebra for operators, Hamiltonians and chains.

mod eigen;
mod expm;
pub mod io;
mod matrix;
mod ops;

pub use eigen::{symmetric_eigen, symmetric_eigenvalues, SymmetricEigen};
pub use expm::{check_intensity, intensity_defects, intensity_exp};
pub use matrix::Matrix;
pub use ops::{
    add_embedded, commutator, embed_local, embed_two_site, frobenius_norm, inverse, kron, kron_all,
    moment_mismatch, null_space, solve, trace_moments, Tolerance,
};
