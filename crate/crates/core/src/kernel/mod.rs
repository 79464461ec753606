//! Self-contained dense linear algebra: quaternion arithmetic, symmetric
//! eigendecomposition, orthonormalization and Haar-distributed sampling.
//! No algebra semantics live here.

mod eigen;
mod haar;
mod matrix;
mod ortho;
mod quaternion;
pub mod quatmat;

pub use eigen::{cluster_eigenvalues, sym_eigen, sym_eigenvalues, EigenSystem};
pub use haar::{derive_seed, haar_structured, haar_unitary, rng_for};
pub use matrix::DenseMatrix;
pub use ortho::{dot, gram_schmidt, norm, orthonormal_complement, symmetric_nullspace};
pub use quaternion::{Quaternion, Q_I, Q_J, Q_K, Q_ONE, Q_ZERO};
pub use quatmat::{outer, quat_gram_schmidt, quat_inner, quat_norm, QuatMatrix, QuatVector, Ring};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: max asymmetry {asymmetry:.3e}")]
    Asymmetric { asymmetry: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid dimension {n}")]
    InvalidDimension { n: usize },
}
