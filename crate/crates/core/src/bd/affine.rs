use crate::linalg::{RMatrix, Rational};
use num_traits::Zero;

/// Solves `x = r·y + s·I` exactly. Returns `(r, s)` with `r ≠ 0`, or `None`.
///
/// When `y` is scalar the coefficient `r` is not determined; `r = 1` is
/// returned, which requires `x` to be scalar as well.
pub fn affine_witness_matrices(x: &RMatrix, y: &RMatrix) -> Option<(Rational, Rational)> {
    if x.rows() != y.rows() || x.cols() != y.cols() || !x.is_square() || x.rows() == 0 {
        return None;
    }
    let n = x.rows();
    let off_diag = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !y[(i, j)].is_zero());
    let r = if let Some((i, j)) = off_diag {
        &x[(i, j)] / &y[(i, j)]
    } else if let Some(i) = (1..n).find(|&i| y[(i, i)] != y[(0, 0)]) {
        (&x[(i, i)] - &x[(0, 0)]) / (&y[(i, i)] - &y[(0, 0)])
    } else {
        Rational::from_integer(1.into())
    };
    if r.is_zero() {
        return None;
    }
    let s = &x[(0, 0)] - &r * &y[(0, 0)];
    (y.affine(&r, &s) == *x).then_some((r, s))
}

/// Result of comparing two triads component by component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEquivalence {
    /// `(r, s)`, `(t, u)`, `(v, w)` when equivalent.
    pub witness: Option<[(Rational, Rational); 3]>,
    /// First component (0, 1 or 2) with no solution.
    pub failed_component: Option<usize>,
}

impl AffineEquivalence {
    pub fn equivalent(&self) -> bool {
        self.witness.is_some()
    }
}

/// Tests `A₁ = rA₂ + sI`, `A′₁ = tA′₂ + uI`, `A″₁ = vA″₂ + wI` with `r, t, v ≠ 0`.
pub fn affine_equivalent_triads(t1: [&RMatrix; 3], t2: [&RMatrix; 3]) -> AffineEquivalence {
    let mut out = Vec::with_capacity(3);
    for k in 0..3 {
        match affine_witness_matrices(t1[k], t2[k]) {
            Some(w) => out.push(w),
            None => {
                return AffineEquivalence {
                    witness: None,
                    failed_component: Some(k),
                }
            }
        }
    }
    let [a, b, c]: [(Rational, Rational); 3] = out.try_into().expect("three components");
    AffineEquivalence {
        witness: Some([a, b, c]),
        failed_component: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn d1() -> [RMatrix; 3] {
        [
            RMatrix::from_i64(&[&[-1, 0], &[1, 1]]),
            RMatrix::from_i64(&[&[-1, 0], &[2, 1]]),
            RMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
        ]
    }

    #[test]
    fn identical_triads() {
        let t = d1();
        let r = affine_equivalent_triads([&t[0], &t[1], &t[2]], [&t[0], &t[1], &t[2]]);
        let one = (int(1), int(0));
        assert_eq!(r.witness, Some([one.clone(), one.clone(), one]));
    }

    #[test]
    fn shifted_first_component() {
        let t = d1();
        let a2 = t[0].affine(&int(2), &int(3));
        let r = affine_equivalent_triads([&a2, &t[1], &t[2]], [&t[0], &t[1], &t[2]]);
        assert_eq!(
            r.witness,
            Some([(int(2), int(3)), (int(1), int(0)), (int(1), int(0))])
        );
    }

    #[test]
    fn nilpotent_perturbation_breaks_equivalence() {
        let t = d1();
        let n = RMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let perturbed = &t[0] + &n;
        let r = affine_equivalent_triads([&t[0], &t[1], &t[2]], [&perturbed, &t[1], &t[2]]);
        assert!(!r.equivalent());
        assert_eq!(r.failed_component, Some(0));
    }

    #[test]
    fn scalar_targets() {
        let x = RMatrix::scalar(2, int(5));
        assert_eq!(
            affine_witness_matrices(&x, &RMatrix::zeros(2, 2)),
            Some((int(1), int(5)))
        );
        assert_eq!(
            affine_witness_matrices(&RMatrix::from_i64(&[&[1, 1], &[0, 1]]), &x),
            None
        );
    }
}
