//! Bidiagonal pairs, triples and triads.

pub mod affine;
pub mod ordering;
pub mod verify;

pub use affine::{affine_equivalent_triads, affine_witness_matrices, AffineEquivalence};
pub use ordering::{find_standard_ordering, Direction, OrderingError, StandardOrdering};
pub use verify::{
    reduced_sequence, shape_of, verify_bd_pair, verify_bd_triad, verify_bd_triple, BdCertificate,
    BijectionWitness, CertificateReport, PairCertificate, Refutation, TriadCertificate,
    TripleCertificate,
};

use crate::linalg::RMatrix;

/// An ordered triple of maps `A, A′, A″` on a common space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triad {
    pub a: RMatrix,
    pub a_prime: RMatrix,
    pub a_dprime: RMatrix,
}

impl Triad {
    pub fn new(a: RMatrix, a_prime: RMatrix, a_dprime: RMatrix) -> Self {
        Self {
            a,
            a_prime,
            a_dprime,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn maps(&self) -> [&RMatrix; 3] {
        [&self.a, &self.a_prime, &self.a_dprime]
    }

    pub fn verify(&self) -> Result<TriadCertificate, Refutation> {
        verify_bd_triad(&self.a, &self.a_prime, &self.a_dprime)
    }
}
