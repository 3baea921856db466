//! Characteristic polynomials and rational spectra.
//!
//! Eigenvalues are found exactly: the characteristic polynomial is computed
//! with the Faddeev-LeVerrier recurrence, cleared to a primitive integer
//! polynomial, reduced to its square-free part, and searched for roots `p/q`
//! with `p` dividing the constant term and `q` dividing the leading
//! coefficient. If the rational roots do not account for the full degree the
//! spectrum is reported as irrational.

use super::matrix::RMatrix;
use super::rational::Rational;
use super::subspace::{kernel_basis, Subspace};
use super::LinalgError;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Coefficients of `det(λI - m)`, lowest degree first; the last entry is 1.
pub fn char_poly(m: &RMatrix) -> Result<Vec<Rational>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    // Faddeev-LeVerrier on the integer matrix `l * m`, where `l` clears all
    // denominators; every division by `k` is exact there.
    let n = m.rows();
    let l = m
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let a: Vec<BigInt> = m.entries().iter().map(|c| (c * &l).to_integer()).collect();
    let mul = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = &x[i * n + k];
                if xik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += xik * &y[k * n + j];
                }
            }
        }
        out
    };
    let mut ints = vec![BigInt::zero(); n + 1];
    ints[n] = BigInt::one();
    let mut acc = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        let mut next = mul(&a, &acc);
        for i in 0..n {
            next[i * n + i] += &ints[n + 1 - k];
        }
        let am = mul(&a, &next);
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        ints[n - k] = -trace / BigInt::from(k);
        acc = next;
    }
    // Coefficient of λ^j in det(λI - m) is that of l*m divided by l^(n-j).
    let mut scale = BigInt::one();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for j in (0..=n).rev() {
        coeffs[j] = Rational::new(ints[j].clone(), scale.clone());
        scale *= &l;
    }
    Ok(coeffs)
}

/// Evaluates a rational polynomial (lowest degree first) at a matrix.
pub fn poly_at_matrix(coeffs: &[Rational], m: &RMatrix) -> RMatrix {
    let n = m.rows();
    let mut acc = RMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient and remainder of rational polynomial division.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() <= dd {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        quot[i] = c;
    }
    rem.truncate(dd.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn monic(p: &[Rational]) -> Vec<Rational> {
    let lead = p.last().expect("nonempty polynomial").clone();
    p.iter().map(|c| c / &lead).collect()
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
        .collect()
}

/// Scales a rational polynomial to a primitive integer polynomial.
fn primitive_integer(p: &[Rational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    if n.is_one() {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize(n.clone())
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut ds = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}

/// `q^deg * poly(p/q)` for an integer polynomial, evaluated exactly.
fn eval_scaled(poly: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let deg = poly.len() - 1;
    let mut acc = poly[deg].clone();
    let mut qpow = BigInt::one();
    for k in (0..deg).rev() {
        qpow *= q;
        acc = acc * p + &poly[k] * &qpow;
    }
    acc
}

/// Distinct rational roots of a rational polynomial, ascending.
/// Floating-point approximations of the real parts of all complex roots
/// (Durand-Kerner). Only used to propose candidates that are then checked
/// exactly.
fn approximate_roots(ints: &[BigInt]) -> Vec<f64> {
    let n = ints.len() - 1;
    let lead = ints[n].to_f64().unwrap_or(f64::NAN);
    let coeffs: Vec<f64> = ints
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Vec::new();
    }
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius.min(1e6))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den *= zs[i] - zs[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(zs[i]) / den;
            zs[i] -= step;
            moved = moved.max(step.norm() / (1.0 + zs[i].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    zs.iter().map(|z| z.re).filter(|x| x.is_finite()).collect()
}

/// Exact root `p/q` closest to `x` among denominators dividing the leading
/// coefficient, if any.
fn root_near(ints: &[BigInt], x: f64) -> Option<(BigInt, BigInt)> {
    let lead = ints.last().unwrap().abs().to_biguint().unwrap();
    for q in divisors(&lead) {
        let qf = q.to_f64()?;
        let Some(p) = BigInt::from_f64((x * qf).round()) else {
            continue;
        };
        let q = BigInt::from(q);
        if !p.gcd(&q).is_one() {
            continue;
        }
        if eval_scaled(ints, &p, &q).is_zero() {
            return Some((p, q));
        }
    }
    None
}

/// Smallest-denominator rational root of a primitive integer polynomial with
/// nonzero constant term, as `(p, q)`.
fn first_root(ints: &[BigInt]) -> Option<(BigInt, BigInt)> {
    let lead = ints.last().unwrap().abs().to_biguint().unwrap();
    let constant = ints[0].abs().to_biguint().unwrap();
    // Cauchy bound on root magnitude.
    let bound = ints[..ints.len() - 1]
        .iter()
        .map(|c| Rational::new(c.abs(), lead.clone().into()))
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let nums = divisors(&constant);
    for q in divisors(&lead) {
        let q = BigInt::from(q);
        for num in &nums {
            let num = BigInt::from(num.clone());
            if !num.gcd(&q).is_one() {
                continue;
            }
            if Rational::new(num.clone(), q.clone()) > bound {
                break;
            }
            for p in [num.clone(), -num] {
                if eval_scaled(ints, &p, &q).is_zero() {
                    return Some((p, q));
                }
            }
        }
    }
    None
}

/// Exact quotient of `ints` by `qx - p`.
fn deflate(ints: &[BigInt], p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let n = ints.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    out[n - 1] = &ints[n] / q;
    for k in (1..n).rev() {
        out[k - 1] = (&ints[k] + p * &out[k]) / q;
    }
    out
}

pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let g = poly_gcd(&p, &derivative(&p));
    let (squarefree, _) = poly_divmod(&p, &g);
    let mut ints = primitive_integer(&squarefree);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        ints.remove(0);
    }
    // Each root found is divided out, which shrinks the divisor search for
    // the next one.
    for x in approximate_roots(&ints) {
        if ints.len() <= 1 {
            break;
        }
        if let Some((p, q)) = root_near(&ints, x) {
            ints = deflate(&ints, &p, &q);
            roots.push(Rational::new(p, q));
        }
    }
    while ints.len() > 1 {
        match first_root(&ints) {
            Some((p, q)) => {
                ints = deflate(&ints, &p, &q);
                roots.push(Rational::new(p, q));
            }
            None => break,
        }
    }
    roots.sort();
    roots
}

/// Multiplicity of `root` in `p`.
fn multiplicity(p: &[Rational], root: &Rational) -> usize {
    let factor = vec![-root.clone(), Rational::one()];
    let mut cur = p.to_vec();
    trim(&mut cur);
    let mut k = 0;
    while cur.len() > 1 {
        let (q, r) = poly_divmod(&cur, &factor);
        if !is_zero_poly(&r) {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub value: Rational,
    pub algebraic_multiplicity: usize,
    pub eigenspace: Subspace,
}

impl EigenPair {
    pub fn geometric_multiplicity(&self) -> usize {
        self.eigenspace.dim()
    }
}

/// Rational eigenvalues (ascending) with multiplicities and eigenspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenDecomposition {
    pub pairs: Vec<EigenPair>,
    pub diagonalizable: bool,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> Vec<Rational> {
        self.pairs.iter().map(|p| p.value.clone()).collect()
    }

    pub fn eigenspace(&self, value: &Rational) -> Option<&Subspace> {
        self.pairs
            .iter()
            .find(|p| &p.value == value)
            .map(|p| &p.eigenspace)
    }
}

pub fn eigen_decompose(m: &RMatrix) -> Result<EigenDecomposition, LinalgError> {
    let poly = char_poly(m)?;
    let n = m.rows();
    let mut pairs = Vec::new();
    let mut total = 0;
    for value in rational_roots(&poly) {
        let mult = multiplicity(&poly, &value);
        let shifted = m.affine(&Rational::one(), &-value.clone());
        let eigenspace = kernel_basis(&shifted);
        total += mult;
        pairs.push(EigenPair {
            value,
            algebraic_multiplicity: mult,
            eigenspace,
        });
    }
    if total != n {
        return Err(LinalgError::IrrationalSpectrum {
            rational_roots_with_multiplicity: total,
            degree: n,
        });
    }
    let geometric: usize = pairs.iter().map(EigenPair::geometric_multiplicity).sum();
    Ok(EigenDecomposition {
        pairs,
        diagonalizable: geometric == n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, int};

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn char_poly_small_cases() {
        let d = RMatrix::diagonal(&ints(&[1, 2]));
        assert_eq!(char_poly(&d).unwrap(), ints(&[2, -3, 1]));
        let n = RMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(char_poly(&n).unwrap(), ints(&[0, 0, 1]));
        assert!(char_poly(&RMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cayley_hamilton_on_dense_matrix() {
        let m = RMatrix::from_i64(&[
            &[2, -1, 0, 3],
            &[1, 0, 4, -2],
            &[0, 5, 1, 1],
            &[-3, 2, 2, 0],
        ]);
        let p = char_poly(&m).unwrap();
        assert!(poly_at_matrix(&p, &m).is_zero());
    }

    #[test]
    fn finds_fractional_roots() {
        // (x - 1/2)(x + 3)^2 (x - 7/3)
        let mut p = vec![Rational::one()];
        for r in [frac(1, 2), int(-3), int(-3), frac(7, 3)] {
            let mut next = vec![Rational::zero(); p.len() + 1];
            for (k, c) in p.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &r;
            }
            p = next;
        }
        assert_eq!(rational_roots(&p), vec![int(-3), frac(1, 2), frac(7, 3)]);
        assert_eq!(multiplicity(&p, &int(-3)), 2);
    }

    #[test]
    fn eigen_examples() {
        let e = eigen_decompose(&RMatrix::diagonal(&ints(&[-1, 1]))).unwrap();
        assert_eq!(e.eigenvalues(), ints(&[-1, 1]));
        assert!(e.diagonalizable);

        let j = eigen_decompose(&RMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(j.pairs.len(), 1);
        assert_eq!(j.pairs[0].algebraic_multiplicity, 2);
        assert_eq!(j.pairs[0].geometric_multiplicity(), 1);
        assert!(!j.diagonalizable);
    }

    #[test]
    fn irrational_spectrum_is_rejected() {
        let m = RMatrix::from_i64(&[&[0, 2], &[1, 0]]);
        assert!(matches!(
            eigen_decompose(&m),
            Err(LinalgError::IrrationalSpectrum {
                rational_roots_with_multiplicity: 0,
                degree: 2
            })
        ));
    }
}
