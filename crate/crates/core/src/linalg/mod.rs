//! Exact dense linear algebra over a [`Scalar`](crate::exactmath::Scalar) field.
//!
//! Subspaces are kept in reduced row-echelon form, which is unique, so
//! subspace equality is structural equality.

mod closure;
mod decomposition;
mod echelon;
mod matrix;
mod spectrum;
mod subspace;

use thiserror::Error;

pub use closure::algebra_closure_dim;
pub use decomposition::{flags_opposite, induced_flag, is_decomposition, Decomposition, Flag};
pub use echelon::{row_reduce, Echelon, EchelonBasis};
pub use matrix::Matrix;
pub use spectrum::{q_eigenspaces, standard_spectrum, QEigenspace, SpectrumError, StandardSpectrum};
pub use subspace::{eigenspace, intersect, kernel, subspace_sum, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ragged rows: expected {expected} entries, found {found}")]
    RaggedRows { expected: usize, found: usize },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("diameter mismatch: {left} vs {right}")]
    DiameterMismatch { left: usize, right: usize },
    #[error("not a decomposition: {0}")]
    NotDecomposition(String),
    #[error("not a flag: {0}")]
    NotFlag(String),
    #[error("empty input list")]
    Empty,
}
