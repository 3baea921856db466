//! Exact dense linear algebra over the rationals.

pub mod algebra;
pub mod eigen;
pub mod matrix;
pub mod rational;
pub mod solve;
pub mod subspace;

pub use algebra::generated_algebra_dimension;
pub use eigen::{char_poly, eigen_decompose, rational_roots, EigenDecomposition, EigenPair};
pub use matrix::{commutator, inverse, rank, rref, RMatrix, RVector};
pub use rational::{format_rational, frac, int, parse_rational, Rational};
pub use solve::{solve_linear_matrix_system, MatrixConstraint, MatrixSolution};
pub use subspace::{kernel_basis, restricted_power_bijective, RestrictedMap, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error(
        "spectrum is not rational: {rational_roots_with_multiplicity} of {degree} roots found"
    )]
    IrrationalSpectrum {
        rational_roots_with_multiplicity: usize,
        degree: usize,
    },
    #[error("image of domain basis vector {basis_index} is not in the codomain: {image:?}")]
    ImageNotContained {
        basis_index: usize,
        image: Vec<String>,
    },
    #[error("linear system is inconsistent")]
    Inconsistent,
}
