use super::matrix::{rref_in_place, RMatrix};
use super::rational::Rational;
use super::LinalgError;
use num_traits::{One, Zero};

/// One affine constraint `Σ_k left_k · B · right_k = rhs` on an unknown
/// square matrix `B`.
#[derive(Debug, Clone)]
pub struct MatrixConstraint {
    pub terms: Vec<(RMatrix, RMatrix)>,
    pub rhs: RMatrix,
}

impl MatrixConstraint {
    /// `B = rhs`.
    pub fn equals(rhs: RMatrix) -> Self {
        let n = rhs.rows();
        Self {
            terms: vec![(RMatrix::identity(n), RMatrix::identity(n))],
            rhs,
        }
    }

    /// `[x, B] + coeff · B = rhs`.
    pub fn bracket_left(x: &RMatrix, coeff: Rational, rhs: RMatrix) -> Self {
        let n = x.rows();
        let id = RMatrix::identity(n);
        Self {
            terms: vec![
                (x.clone(), id.clone()),
                (-&id, x.clone()),
                (RMatrix::scalar(n, coeff), id),
            ],
            rhs,
        }
    }

    /// `[B, x] + coeff · B = rhs`.
    pub fn bracket_right(x: &RMatrix, coeff: Rational, rhs: RMatrix) -> Self {
        let n = x.rows();
        let id = RMatrix::identity(n);
        Self {
            terms: vec![
                (id.clone(), x.clone()),
                (-x, id.clone()),
                (RMatrix::scalar(n, coeff), id),
            ],
            rhs,
        }
    }

    /// Left-hand side evaluated at a candidate.
    pub fn evaluate(&self, b: &RMatrix) -> RMatrix {
        let n = b.rows();
        self.terms
            .iter()
            .fold(RMatrix::zeros(n, n), |acc, (l, r)| &acc + &(&(l * b) * r))
    }

    pub fn is_satisfied_by(&self, b: &RMatrix) -> bool {
        self.evaluate(b) == self.rhs
    }
}

/// A particular solution plus a basis of the homogeneous solution space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSolution {
    pub particular: RMatrix,
    pub homogeneous: Vec<RMatrix>,
}

/// Solves a system of affine constraints on an unknown `n × n` matrix by
/// flattening to an exact `(m·n²) × n²` linear system.
pub fn solve_linear_matrix_system(
    n: usize,
    constraints: &[MatrixConstraint],
) -> Result<MatrixSolution, LinalgError> {
    let unknowns = n * n;
    let mut aug = RMatrix::zeros(constraints.len() * unknowns, unknowns + 1);
    for (c_idx, c) in constraints.iter().enumerate() {
        if c.rhs.rows() != n || c.rhs.cols() != n {
            return Err(LinalgError::DimensionMismatch {
                left: (n, n),
                right: (c.rhs.rows(), c.rhs.cols()),
            });
        }
        for (l, r) in &c.terms {
            if l.rows() != n || l.cols() != n || r.rows() != n || r.cols() != n {
                return Err(LinalgError::DimensionMismatch {
                    left: (n, n),
                    right: (l.rows(), r.cols()),
                });
            }
        }
        let base = c_idx * unknowns;
        // (L B R)[i][j] = Σ_{p,q} L[i][p] B[p][q] R[q][j]
        for i in 0..n {
            for j in 0..n {
                let row = base + i * n + j;
                for (l, r) in &c.terms {
                    for p in 0..n {
                        let lv = &l[(i, p)];
                        if lv.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let rv = &r[(q, j)];
                            if !rv.is_zero() {
                                aug[(row, p * n + q)] += lv * rv;
                            }
                        }
                    }
                }
                aug[(row, unknowns)] = c.rhs[(i, j)].clone();
            }
        }
    }
    let pivots = rref_in_place(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return Err(LinalgError::Inconsistent);
    }
    let mut particular = RMatrix::zeros(n, n);
    for (r, &p) in pivots.iter().enumerate() {
        particular[(p / n, p % n)] = aug[(r, unknowns)].clone();
    }
    let homogeneous = (0..unknowns)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut h = RMatrix::zeros(n, n);
            h[(free / n, free % n)] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                h[(p / n, p % n)] = -aug[(r, free)].clone();
            }
            h
        })
        .collect();
    Ok(MatrixSolution {
        particular,
        homogeneous,
    })
}
