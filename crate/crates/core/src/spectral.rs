//! Eigenvalue sequences: the recurrence check, 1-recurrence, affine
//! witnesses between sequences, and reduction of triads to the sequence
//! `2i - d`.

use crate::bd::{reduced_sequence, Refutation, Triad, TriadCertificate};
use crate::linalg::{format_rational, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("sequence entries must be pairwise distinct")]
    RepeatedEntry,
    #[error("1-recurrence needs at least three terms, got {0}")]
    TooShort(usize),
    #[error("sequence {component} ({values:?}) is not affine equivalent to 2i-d")]
    NoWitness {
        component: usize,
        values: Vec<String>,
    },
    #[error("reduced output failed verification: {0}")]
    Reverification(Refutation),
}

/// A sequence of pairwise distinct eigenvalues `θ_0, ..., θ_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigSequence(Vec<Rational>);

impl EigSequence {
    pub fn new(values: Vec<Rational>) -> Result<Self, SpectralError> {
        for (i, x) in values.iter().enumerate() {
            if values[..i].contains(x) {
                return Err(SpectralError::RepeatedEntry);
            }
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn diameter(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// `(θ_{i+1} - θ_i) / (θ_i - θ_{i-1})` for `1 ≤ i ≤ d-1`.
    pub fn difference_ratios(&self) -> Vec<Rational> {
        self.0
            .windows(3)
            .map(|w| (&w[2] - &w[1]) / (&w[1] - &w[0]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub holds: bool,
    /// Ratios for the first, second and third sequences.
    pub ratios: [Vec<Rational>; 3],
}

/// Computes all `3(d-1)` difference ratios; holds iff each equals 1.
pub fn check_recurrence(cert: &TriadCertificate) -> RecurrenceReport {
    let ratios: [Vec<Rational>; 3] = std::array::from_fn(|k| {
        EigSequence(cert.orderings[k].eigenvalues.clone()).difference_ratios()
    });
    let holds = ratios.iter().flatten().all(One::is_one);
    RecurrenceReport { holds, ratios }
}

pub fn is_one_recurrent(s: &EigSequence) -> Result<bool, SpectralError> {
    if s.0.len() < 3 {
        return Err(SpectralError::TooShort(s.0.len()));
    }
    Ok(s.difference_ratios().iter().all(One::is_one))
}

/// Solves `σ_i = r·τ_i + s₀` for all `i`, with `r ≠ 0`.
pub fn affine_witness_sequences(
    sigma: &EigSequence,
    tau: &EigSequence,
) -> Option<(Rational, Rational)> {
    let (s, t) = (&sigma.0, &tau.0);
    if s.len() != t.len() || s.is_empty() {
        return None;
    }
    if s.len() == 1 {
        return Some((Rational::one(), &s[0] - &t[0]));
    }
    let r = (&s[1] - &s[0]) / (&t[1] - &t[0]);
    if r.is_zero() {
        return None;
    }
    let shift = &s[0] - &r * &t[0];
    s.iter()
        .zip(t)
        .all(|(x, y)| *x == &r * y + &shift)
        .then_some((r, shift))
}

/// A reduced triad together with the witnesses `(r, s)`, `(t, u)`, `(v, w)`
/// such that the output is `(rA + sI, tA′ + uI, vA″ + wI)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub triad: Triad,
    pub witnesses: [(Rational, Rational); 3],
    pub certificate: TriadCertificate,
}

/// Maps each eigenvalue sequence of a certified triad onto `2i - d` and
/// re-verifies the result.
pub fn reduce_triad(triad: &Triad, cert: &TriadCertificate) -> Result<Reduction, SpectralError> {
    let target = EigSequence(reduced_sequence(cert.diameter));
    let mut witnesses = Vec::with_capacity(3);
    for (k, ord) in cert.orderings.iter().enumerate() {
        let seq = EigSequence(ord.eigenvalues.clone());
        let w =
            affine_witness_sequences(&target, &seq).ok_or_else(|| SpectralError::NoWitness {
                component: k,
                values: ord.eigenvalues.iter().map(format_rational).collect(),
            })?;
        witnesses.push(w);
    }
    let witnesses: [(Rational, Rational); 3] = witnesses.try_into().expect("three sequences");
    let maps = triad.maps();
    let reduced = Triad::new(
        maps[0].affine(&witnesses[0].0, &witnesses[0].1),
        maps[1].affine(&witnesses[1].0, &witnesses[1].1),
        maps[2].affine(&witnesses[2].0, &witnesses[2].1),
    );
    let certificate = reduced.verify().map_err(SpectralError::Reverification)?;
    if !certificate.is_reduced() {
        // Affine maps preserve standard orderings, so this signals a bug.
        return Err(SpectralError::NoWitness {
            component: 0,
            values: Vec::new(),
        });
    }
    Ok(Reduction {
        triad: reduced,
        witnesses,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int, RMatrix};

    fn seq(xs: &[i64]) -> EigSequence {
        EigSequence::new(xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn one_recurrence_examples() {
        assert!(is_one_recurrent(&seq(&[1, 4, 7])).unwrap());
        assert!(!is_one_recurrent(&seq(&[0, 1, 3])).unwrap());
        assert!(is_one_recurrent(&EigSequence::new(reduced_sequence(5)).unwrap()).unwrap());
        assert_eq!(
            is_one_recurrent(&seq(&[0, 1])),
            Err(SpectralError::TooShort(2))
        );
        assert_eq!(seq(&[0, 1, 3]).difference_ratios(), vec![int(2)]);
    }

    #[test]
    fn repeated_entries_rejected() {
        assert_eq!(
            EigSequence::new(vec![int(1), int(1)]),
            Err(SpectralError::RepeatedEntry)
        );
    }

    #[test]
    fn sequence_witnesses() {
        assert_eq!(
            affine_witness_sequences(&seq(&[1, 4, 7]), &seq(&[-2, 0, 2])),
            Some((frac(3, 2), int(4)))
        );
        assert_eq!(
            affine_witness_sequences(&seq(&[5]), &seq(&[0])),
            Some((int(1), int(5)))
        );
        assert_eq!(
            affine_witness_sequences(&seq(&[0, 1, 3]), &seq(&[0, 1, 2])),
            None
        );
        assert_eq!(
            affine_witness_sequences(&seq(&[-2, 0, 2]), &seq(&[1, 4, 7])),
            Some((frac(2, 3), frac(-8, 3)))
        );
    }

    #[test]
    fn reduce_shifted_d1_triad() {
        let base = Triad::new(
            RMatrix::from_i64(&[&[-1, 0], &[1, 1]]),
            RMatrix::from_i64(&[&[-1, 0], &[2, 1]]),
            RMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
        );
        let shifted = Triad::new(
            base.a.affine(&int(2), &int(3)),
            base.a_prime.clone(),
            base.a_dprime.clone(),
        );
        let cert = shifted.verify().unwrap();
        assert!(!cert.is_reduced());
        let red = reduce_triad(&shifted, &cert).unwrap();
        assert_eq!(red.triad, base);
        assert_eq!(red.witnesses[0], (frac(1, 2), frac(-3, 2)));
        assert!(red.certificate.is_reduced());

        let again = reduce_triad(&red.triad, &red.certificate).unwrap();
        assert_eq!(again.triad, red.triad);
        assert!(again
            .witnesses
            .iter()
            .all(|(r, s)| r.is_one() && s.is_zero()));
    }
}
