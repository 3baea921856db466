use super::matrix::{rref_in_place, RMatrix, RVector};
use super::rational::Rational;
use super::LinalgError;
use num_traits::{One, Zero};

/// A subspace of `Q^n`, stored as the nonzero rows of a reduced echelon
/// basis. Equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<RVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[RVector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let mut m = RMatrix::zeros(vectors.len(), ambient_dim);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            for (j, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        let pivots = rref_in_place(&mut m);
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[RVector] {
        &self.basis
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is not in the
    /// subspace. With a reduced basis the coordinates are the entries of `v`
    /// at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Option<RVector> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let coords: RVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= c * x;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, &vs)
    }

    /// Images of the basis vectors under `m`.
    pub fn image_vectors(&self, m: &RMatrix) -> Vec<RVector> {
        self.basis.iter().map(|b| m.apply(b)).collect()
    }

    pub fn image(&self, m: &RMatrix) -> Self {
        Self::span(m.rows(), &self.image_vectors(m))
    }

    /// Matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> RMatrix {
        RMatrix::from_columns(self.ambient_dim, &self.basis)
    }
}

/// The null space of `m`.
pub fn kernel_basis(m: &RMatrix) -> Subspace {
    let mut a = m.clone();
    let pivots = rref_in_place(&mut a);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<RVector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[(r, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}

/// Outcome of restricting `x^k` to a subspace with a prescribed codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedMap {
    pub bijective: bool,
    /// Column `j` holds the coordinates, in the codomain basis, of the image
    /// of the `j`-th domain basis vector.
    pub witness: RMatrix,
}

/// Checks that `x^k` maps `dom` into `cod` and whether the induced map is a
/// bijection. Fails with `ImageNotContained` when some image leaves `cod`.
pub fn restricted_power_bijective(
    x: &RMatrix,
    k: usize,
    dom: &Subspace,
    cod: &Subspace,
) -> Result<RestrictedMap, LinalgError> {
    if !x.is_square() {
        return Err(LinalgError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if dom.ambient_dim() != x.rows() || cod.ambient_dim() != x.rows() {
        return Err(LinalgError::DimensionMismatch {
            left: (x.rows(), x.cols()),
            right: (dom.ambient_dim(), cod.ambient_dim()),
        });
    }
    let mut columns = Vec::with_capacity(dom.dim());
    for (j, b) in dom.basis().iter().enumerate() {
        let image = (0..k).fold(b.clone(), |v, _| x.apply(&v));
        match cod.coordinates(&image) {
            Some(c) => columns.push(c),
            None => {
                return Err(LinalgError::ImageNotContained {
                    basis_index: j,
                    image: image.iter().map(super::rational::format_rational).collect(),
                })
            }
        }
    }
    let witness = RMatrix::from_columns(cod.dim(), &columns);
    let bijective = dom.dim() == cod.dim() && super::matrix::rank(&witness) == dom.dim();
    Ok(RestrictedMap { bijective, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    fn v(xs: &[i64]) -> RVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RMatrix::identity(3)).is_zero());
        let k = kernel_basis(&RMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, Subspace::span(2, &[v(&[-2, 1])]));
        assert_eq!(kernel_basis(&RMatrix::zeros(2, 2)), Subspace::full(2));
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[2, 3, 1]), v(&[1, 0, -1]), v(&[1, 2, 1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[1, 2, 1])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn restricted_power_examples() {
        let full = Subspace::full(2);
        let id =
            restricted_power_bijective(&RMatrix::from_i64(&[&[3, 1], &[0, 2]]), 0, &full, &full)
                .unwrap();
        assert!(id.bijective);
        assert_eq!(id.witness, RMatrix::identity(2));

        let x = RMatrix::from_i64(&[&[0, 0], &[-2, 0]]);
        let dom = Subspace::span(2, &[v(&[2, -1])]);
        let cod = Subspace::span(2, &[v(&[0, 1])]);
        let r = restricted_power_bijective(&x, 1, &dom, &cod).unwrap();
        assert!(r.bijective);
        // dom is stored as (1, -1/2); x maps it to (0, -2).
        assert_eq!(r.witness, RMatrix::from_i64(&[&[-2]]));

        let nil = RMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let r = restricted_power_bijective(&nil, 2, &full, &full).unwrap();
        assert!(!r.bijective);

        let e1 = Subspace::span(2, &[v(&[1, 0])]);
        let err = restricted_power_bijective(&nil, 1, &full, &e1.image(&RMatrix::zeros(2, 2)));
        assert!(matches!(err, Err(LinalgError::ImageNotContained { .. })));
    }
}
