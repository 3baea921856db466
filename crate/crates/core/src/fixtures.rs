//! Generated example data: thin reduced triads on `V(d)` and a non-thin
//! reduced triad of shape `(1,2,2,1)` together with a candidate `X02`.

use crate::bd::{Refutation, Triad};
use crate::io::{Metadata, TriadDocument};
use crate::linalg::{format_rational, RMatrix, Rational};
use crate::sl2::make_vd;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("beta and gamma must be nonzero and distinct")]
    Parameters,
    #[error("generated triad failed verification: {0}")]
    Refuted(Refutation),
    #[error("generated triad is not thin and reduced of diameter {0}")]
    WrongCertificate(usize),
}

/// `A″ = −h`, `A = −h + βf`, `A′ = −h + γf` on `V(d)`, re-verified as a thin
/// reduced triad of diameter `d`.
pub fn fixture_vd_triad(
    d: usize,
    beta: &Rational,
    gamma: &Rational,
) -> Result<TriadDocument, FixtureError> {
    if beta.is_zero() || gamma.is_zero() || beta == gamma {
        return Err(FixtureError::Parameters);
    }
    let v = make_vd(d);
    let minus_h = -&v.h;
    let triad = Triad::new(
        &minus_h + &v.f.scale(beta),
        &minus_h + &v.f.scale(gamma),
        minus_h,
    );
    let cert = triad.verify().map_err(FixtureError::Refuted)?;
    if !(cert.thin && cert.is_reduced() && cert.diameter == d) {
        return Err(FixtureError::WrongCertificate(d));
    }
    Ok(TriadDocument {
        triad,
        metadata: Some(Metadata {
            source: Some("vd-triad".to_string()),
            parameters: [
                ("d".to_string(), d.to_string()),
                ("beta".to_string(), format_rational(beta)),
                ("gamma".to_string(), format_rational(gamma)),
            ]
            .into(),
        }),
    })
}

/// A reduced BD triad of diameter 3 and shape `(1,2,2,1)` and the candidate
/// matrix for `X02` that fails the Dolan-Grady relation against `X13 = A′`.
pub fn fixture_counterexample() -> (TriadDocument, RMatrix) {
    let a = RMatrix::from_i64(&[
        &[-3, 0, 0, 0, 0, 0],
        &[1, -1, 0, 0, 0, 0],
        &[1, 0, -1, 0, 0, 0],
        &[0, 2, 0, 1, 0, 0],
        &[0, 1, 2, 0, 1, 0],
        &[0, 0, 0, 3, 0, 3],
    ]);
    let a_prime = RMatrix::from_i64(&[
        &[-3, 0, 0, 0, 0, 0],
        &[-2, -1, 0, 0, 0, 0],
        &[0, 0, -1, 0, 0, 0],
        &[0, -4, 0, 1, 0, 0],
        &[0, 0, -2, 0, 1, 0],
        &[0, 0, 0, -6, 0, 3],
    ]);
    let a_dprime = RMatrix::from_i64(&[
        &[-3, 0, 0, 0, 0, 0],
        &[0, -1, 0, 0, 0, 0],
        &[0, 0, -1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 3],
    ]);
    let x02 = RMatrix::from_i64(&[
        &[3, 12, 0, 0, 0, 0],
        &[0, 1, 0, 8, 0, 0],
        &[0, 0, 1, 5, 2, 0],
        &[0, 0, 0, -1, 0, 4],
        &[0, 0, 0, 0, -1, 6],
        &[0, 0, 0, 0, 0, -3],
    ]);
    let doc = TriadDocument {
        triad: Triad::new(a, a_prime, a_dprime),
        metadata: Some(Metadata {
            source: Some("counterexample".to_string()),
            parameters: Default::default(),
        }),
    };
    (doc, x02)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    #[test]
    fn vd_d1_values() {
        let doc = fixture_vd_triad(1, &int(1), &int(2)).unwrap();
        assert_eq!(doc.triad.a, RMatrix::from_i64(&[&[-1, 0], &[1, 1]]));
        assert_eq!(doc.triad.a_prime, RMatrix::from_i64(&[&[-1, 0], &[2, 1]]));
        assert_eq!(doc.triad.a_dprime, RMatrix::from_i64(&[&[-1, 0], &[0, 1]]));
    }

    #[test]
    fn vd_d0_and_d2() {
        let doc = fixture_vd_triad(0, &int(1), &int(2)).unwrap();
        assert!(doc.triad.maps().iter().all(|m| *m == &RMatrix::zeros(1, 1)));
        let doc = fixture_vd_triad(2, &int(1), &int(2)).unwrap();
        for m in doc.triad.maps() {
            for i in 0..3 {
                assert_eq!(m[(i, i)], int(2 * i as i64 - 2));
                for j in i + 1..3 {
                    assert!(m[(i, j)].is_zero());
                }
            }
        }
        let cert = doc.triad.verify().unwrap();
        assert!(cert.thin && cert.is_reduced());
    }

    #[test]
    fn vd_parameter_checks() {
        assert_eq!(
            fixture_vd_triad(2, &int(0), &int(1)),
            Err(FixtureError::Parameters)
        );
        assert_eq!(
            fixture_vd_triad(2, &frac(1, 2), &frac(1, 2)),
            Err(FixtureError::Parameters)
        );
    }

    #[test]
    fn counterexample_data() {
        let (doc, x02) = fixture_counterexample();
        assert_eq!(doc.triad.a.column(0), [-3, 1, 1, 0, 0, 0].map(int).to_vec());
        assert_eq!(x02.row(0), &[3, 12, 0, 0, 0, 0].map(int));
        let cert = doc.triad.verify().unwrap();
        assert_eq!(cert.diameter, 3);
        assert_eq!(cert.shape, vec![1, 2, 2, 1]);
        assert!(!cert.thin);
        assert!(cert.is_reduced());
    }
}
