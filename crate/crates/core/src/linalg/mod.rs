//! Dense complex Hermitian linear algebra sized for truncated Fock spaces.

mod eigen;
mod matrix;

pub use eigen::{
    eigenvalues_hermitian, eigh, matrix_exponential_action, trace_norm, HermitianEigen,
};
pub use matrix::{CMatrix, HermitianMatrix, HERMITICITY_TOLERANCE};
