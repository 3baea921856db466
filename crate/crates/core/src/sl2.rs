//! The sl₂-modules `V(d)`, the equitable presentation, and segregation.

use crate::linalg::{
    commutator, eigen_decompose, generated_algebra_dimension, int, LinalgError, RMatrix, Rational,
};
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("matrices must be square of a common size")]
    Shape,
    #[error("relation {relation} fails")]
    RelationViolated {
        relation: &'static str,
        defect: RMatrix,
    },
    #[error("h is not diagonalizable")]
    NotDiagonalizable,
    #[error("h has non-integer eigenvalue {0}")]
    NonIntegerEigenvalue(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Action {
    pub h: RMatrix,
    pub e: RMatrix,
    pub f: RMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableTriple {
    pub x: RMatrix,
    pub y: RMatrix,
    pub z: RMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segregation {
    Even,
    Odd,
    Mixed,
}

fn two() -> Rational {
    int(2)
}

fn common_size(ms: [&RMatrix; 3]) -> Result<usize, Sl2Error> {
    let n = ms[0].rows();
    if ms.iter().all(|m| m.rows() == n && m.cols() == n) {
        Ok(n)
    } else {
        Err(Sl2Error::Shape)
    }
}

/// Checks `[x, y] = p·x + q·y`, returning the defect on failure.
fn check_bracket(
    relation: &'static str,
    x: &RMatrix,
    y: &RMatrix,
    p: i64,
    q: i64,
) -> Result<(), Sl2Error> {
    let lhs = commutator(x, y)?;
    let rhs = &x.scale(&int(p)) + &y.scale(&int(q));
    if lhs == rhs {
        Ok(())
    } else {
        Err(Sl2Error::RelationViolated {
            relation,
            defect: &lhs - &rhs,
        })
    }
}

impl Sl2Action {
    /// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn check(&self) -> Result<(), Sl2Error> {
        common_size([&self.h, &self.e, &self.f])?;
        check_bracket("[h,e]=2e", &self.h, &self.e, 0, 2)?;
        check_bracket("[h,f]=-2f", &self.h, &self.f, 0, -2)?;
        let ef = commutator(&self.e, &self.f)?;
        if ef != self.h {
            return Err(Sl2Error::RelationViolated {
                relation: "[e,f]=h",
                defect: &ef - &self.h,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// Dimension of the unital algebra generated by `h`, `e`, `f`.
    pub fn generated_algebra_dimension(&self) -> usize {
        generated_algebra_dimension(self.dim(), &[&self.h, &self.e, &self.f])
    }
}

impl EquitableTriple {
    /// `[X,Y] = 2X+2Y`, `[Y,Z] = 2Y+2Z`, `[Z,X] = 2Z+2X`.
    pub fn check(&self) -> Result<(), Sl2Error> {
        common_size([&self.x, &self.y, &self.z])?;
        check_bracket("[X,Y]=2X+2Y", &self.x, &self.y, 2, 2)?;
        check_bracket("[Y,Z]=2Y+2Z", &self.y, &self.z, 2, 2)?;
        check_bracket("[Z,X]=2Z+2X", &self.z, &self.x, 2, 2)
    }
}

/// The irreducible module `V(d)` in the basis `v_0, ..., v_d` with
/// `h v_i = (d-2i) v_i`, `f v_i = (i+1) v_{i+1}`, `e v_i = (d-i+1) v_{i-1}`.
pub fn make_vd(d: usize) -> Sl2Action {
    let n = d + 1;
    let di = d as i64;
    let h = RMatrix::diagonal(&(0..=di).map(|i| int(di - 2 * i)).collect::<Vec<_>>());
    let mut e = RMatrix::zeros(n, n);
    let mut f = RMatrix::zeros(n, n);
    for i in 0..d {
        f[(i + 1, i)] = int(i as i64 + 1);
        e[(i, i + 1)] = int(di - i as i64);
    }
    Sl2Action { h, e, f }
}

pub fn equitable_from_standard(s: &Sl2Action) -> Result<EquitableTriple, Sl2Error> {
    s.check()?;
    let t = EquitableTriple {
        x: &s.e.scale(&two()) - &s.h,
        y: &s.f.scale(&int(-2)) - &s.h,
        z: s.h.clone(),
    };
    t.check()?;
    Ok(t)
}

pub fn standard_from_equitable(t: &EquitableTriple) -> Result<Sl2Action, Sl2Error> {
    t.check()?;
    let half = Rational::one() / two();
    let s = Sl2Action {
        e: (&t.x + &t.z).scale(&half),
        f: (&t.y + &t.z).scale(&-half),
        h: t.z.clone(),
    };
    s.check()?;
    Ok(s)
}

/// Parity class of the eigenvalues of `h`.
pub fn segregation(h: &RMatrix) -> Result<Segregation, Sl2Error> {
    let eig = eigen_decompose(h)?;
    if !eig.diagonalizable {
        return Err(Sl2Error::NotDiagonalizable);
    }
    let (mut even, mut odd) = (false, false);
    for v in eig.eigenvalues() {
        if !v.is_integer() {
            return Err(Sl2Error::NonIntegerEigenvalue(
                crate::linalg::format_rational(&v),
            ));
        }
        if v.to_integer().is_even() {
            even = true;
        } else {
            odd = true;
        }
    }
    Ok(match (even, odd) {
        (true, true) => Segregation::Mixed,
        (false, true) => Segregation::Odd,
        _ => Segregation::Even,
    })
}
