//! Verifiers for bidiagonal pairs, triples and triads.
//!
//! Each verifier checks, in order: diagonalizability of every map, existence
//! and uniqueness of the standard orderings, bijectivity of the restricted
//! commutator powers, equality of the diameters, and equality of the
//! eigenspace dimensions that define the shape. The first failing clause is
//! reported with its witness.

use super::ordering::{find_standard_ordering, Direction, OrderingError, StandardOrdering};
use crate::linalg::{
    commutator, eigen_decompose, format_rational, restricted_power_bijective, LinalgError, RMatrix,
    Rational,
};
use serde::Serialize;
use thiserror::Error;

pub(crate) const NAMES: [&str; 3] = ["A", "A'", "A''"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Refutation {
    #[error("the underlying space must have positive dimension")]
    EmptySpace,
    #[error("{which} is {rows}x{cols}; all maps must be square of size {expected}")]
    BadShape {
        which: &'static str,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("{which} has an irrational spectrum")]
    IrrationalSpectrum { which: &'static str },
    #[error("{which} is not diagonalizable (eigenvalue {eigenvalue}: algebraic {algebraic}, geometric {geometric})")]
    NotDiagonalizable {
        which: &'static str,
        eigenvalue: String,
        algebraic: usize,
        geometric: usize,
    },
    #[error("condition (ii) fails for the eigenspaces of {which}: {reason}")]
    Ordering {
        which: &'static str,
        reason: OrderingError,
        eigenvalues: Vec<String>,
    },
    #[error("condition (iii): {family}^{power} does not map eigenspace {domain_index} into eigenspace {codomain_index} (image {image:?})")]
    ImageNotContained {
        family: &'static str,
        power: usize,
        domain_index: usize,
        codomain_index: usize,
        image: Vec<String>,
    },
    #[error("condition (iii): {family}^{power} restricted to eigenspace {domain_index} is not a bijection onto eigenspace {codomain_index}; witness {witness}")]
    NotBijective {
        family: &'static str,
        power: usize,
        domain_index: usize,
        codomain_index: usize,
        witness: RMatrix,
    },
    #[error("diameters differ: {diameters:?}")]
    DiameterMismatch { diameters: Vec<usize> },
    #[error("eigenspace dimensions at index {index} disagree: {dims:?}")]
    DimensionMismatch { index: usize, dims: Vec<usize> },
}

/// Evidence that a restricted commutator power is a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionWitness {
    pub family: &'static str,
    pub index: usize,
    pub power: usize,
    pub domain_index: usize,
    pub codomain_index: usize,
    pub matrix: RMatrix,
}

/// Shared certificate data for pairs, triples and triads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdCertificate {
    pub diameter: usize,
    pub orderings: Vec<StandardOrdering>,
    pub shape: Vec<usize>,
    pub thin: bool,
    pub bijection_witnesses: Vec<BijectionWitness>,
}

impl BdCertificate {
    /// Eigenvalue sequences along the standard orderings.
    pub fn sequences(&self) -> Vec<Vec<Rational>> {
        self.orderings
            .iter()
            .map(|o| o.eigenvalues.clone())
            .collect()
    }

    /// True when every sequence is `2i - d`.
    pub fn is_reduced(&self) -> bool {
        let target = reduced_sequence(self.diameter);
        self.orderings.iter().all(|o| o.eigenvalues == target)
    }

    pub fn to_report(&self) -> CertificateReport {
        CertificateReport {
            diameter: self.diameter,
            sequences: self
                .sequences()
                .iter()
                .map(|s| s.iter().map(format_rational).collect())
                .collect(),
            shape: self.shape.clone(),
            thin: self.thin,
            reduced: self.is_reduced(),
            orderings: self
                .orderings
                .iter()
                .map(|o| {
                    o.eigenspaces
                        .iter()
                        .map(|s| {
                            s.basis()
                                .iter()
                                .map(|v| v.iter().map(format_rational).collect())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            bijections: self
                .bijection_witnesses
                .iter()
                .map(|w| WitnessReport {
                    family: w.family.to_string(),
                    index: w.index,
                    power: w.power,
                    domain: w.domain_index,
                    codomain: w.codomain_index,
                    matrix: w.matrix.to_strings(),
                })
                .collect(),
        }
    }
}

pub type PairCertificate = BdCertificate;
pub type TripleCertificate = BdCertificate;
pub type TriadCertificate = BdCertificate;

/// Machine-readable certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub diameter: usize,
    pub sequences: Vec<Vec<String>>,
    pub shape: Vec<usize>,
    pub thin: bool,
    pub reduced: bool,
    /// Per map, per eigenspace, the reduced basis vectors.
    pub orderings: Vec<Vec<Vec<Vec<String>>>>,
    pub bijections: Vec<WitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub family: String,
    pub index: usize,
    pub power: usize,
    pub domain: usize,
    pub codomain: usize,
    pub matrix: Vec<Vec<String>>,
}

/// `2i - d` for `0 ≤ i ≤ d`.
pub fn reduced_sequence(d: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| Rational::from_integer((2 * i as i64 - d as i64).into()))
        .collect()
}

struct OrderingSpec {
    target: usize,
    actors: &'static [(usize, Direction)],
}

/// `[maps[left], maps[right]]^(d-2i)` restricted to `U_i → U_{d-i}` of the
/// `ordering`-th standard ordering, or `U_{d-i} → U_i` when `reversed`.
struct FamilySpec {
    label: &'static str,
    ordering: usize,
    left: usize,
    right: usize,
    reversed: bool,
}

use Direction::{Lowering, Raising};

const PAIR_ORDERINGS: [OrderingSpec; 2] = [
    OrderingSpec {
        target: 0,
        actors: &[(1, Raising)],
    },
    OrderingSpec {
        target: 1,
        actors: &[(0, Raising)],
    },
];

const PAIR_FAMILIES: [FamilySpec; 2] = [
    FamilySpec {
        label: "[A',A]",
        ordering: 0,
        left: 1,
        right: 0,
        reversed: false,
    },
    FamilySpec {
        label: "[A,A']",
        ordering: 1,
        left: 0,
        right: 1,
        reversed: false,
    },
];

const TRIPLE_ORDERINGS: [OrderingSpec; 3] = [
    OrderingSpec {
        target: 0,
        actors: &[(1, Raising), (2, Lowering)],
    },
    OrderingSpec {
        target: 1,
        actors: &[(2, Raising), (0, Lowering)],
    },
    OrderingSpec {
        target: 2,
        actors: &[(0, Raising), (1, Lowering)],
    },
];

const TRIPLE_FAMILIES: [FamilySpec; 6] = [
    FamilySpec {
        label: "[A',A]",
        ordering: 0,
        left: 1,
        right: 0,
        reversed: false,
    },
    FamilySpec {
        label: "[A'',A]",
        ordering: 0,
        left: 2,
        right: 0,
        reversed: true,
    },
    FamilySpec {
        label: "[A'',A']",
        ordering: 1,
        left: 2,
        right: 1,
        reversed: false,
    },
    FamilySpec {
        label: "[A,A']",
        ordering: 1,
        left: 0,
        right: 1,
        reversed: true,
    },
    FamilySpec {
        label: "[A,A'']",
        ordering: 2,
        left: 0,
        right: 2,
        reversed: false,
    },
    FamilySpec {
        label: "[A',A'']",
        ordering: 2,
        left: 1,
        right: 2,
        reversed: true,
    },
];

const TRIAD_ORDERINGS: [OrderingSpec; 3] = [
    OrderingSpec {
        target: 0,
        actors: &[(1, Raising), (2, Raising)],
    },
    OrderingSpec {
        target: 1,
        actors: &[(2, Raising), (0, Raising)],
    },
    OrderingSpec {
        target: 2,
        actors: &[(0, Raising), (1, Raising)],
    },
];

const TRIAD_FAMILIES: [FamilySpec; 6] = [
    FamilySpec {
        label: "[A',A]",
        ordering: 0,
        left: 1,
        right: 0,
        reversed: false,
    },
    FamilySpec {
        label: "[A'',A]",
        ordering: 0,
        left: 2,
        right: 0,
        reversed: false,
    },
    FamilySpec {
        label: "[A'',A']",
        ordering: 1,
        left: 2,
        right: 1,
        reversed: false,
    },
    FamilySpec {
        label: "[A,A']",
        ordering: 1,
        left: 0,
        right: 1,
        reversed: false,
    },
    FamilySpec {
        label: "[A,A'']",
        ordering: 2,
        left: 0,
        right: 2,
        reversed: false,
    },
    FamilySpec {
        label: "[A',A'']",
        ordering: 2,
        left: 1,
        right: 2,
        reversed: false,
    },
];

fn check_shapes(maps: &[&RMatrix]) -> Result<usize, Refutation> {
    let n = maps[0].rows();
    for (k, m) in maps.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(Refutation::BadShape {
                which: NAMES[k],
                rows: m.rows(),
                cols: m.cols(),
                expected: n,
            });
        }
    }
    if n == 0 {
        return Err(Refutation::EmptySpace);
    }
    Ok(n)
}

fn verify_structure(
    maps: &[&RMatrix],
    orderings: &[OrderingSpec],
    families: &[FamilySpec],
) -> Result<BdCertificate, Refutation> {
    check_shapes(maps)?;

    // (i) diagonalizability
    let mut decomps = Vec::with_capacity(maps.len());
    for (k, m) in maps.iter().enumerate() {
        let e = eigen_decompose(m).map_err(|e| match e {
            LinalgError::IrrationalSpectrum { .. } => {
                Refutation::IrrationalSpectrum { which: NAMES[k] }
            }
            other => unreachable!("square input rejected by eigen_decompose: {other}"),
        })?;
        if let Some(p) = e
            .pairs
            .iter()
            .find(|p| p.geometric_multiplicity() < p.algebraic_multiplicity)
        {
            return Err(Refutation::NotDiagonalizable {
                which: NAMES[k],
                eigenvalue: format_rational(&p.value),
                algebraic: p.algebraic_multiplicity,
                geometric: p.geometric_multiplicity(),
            });
        }
        decomps.push(e);
    }

    // (ii) standard orderings
    let mut ords = Vec::with_capacity(orderings.len());
    for spec in orderings {
        let actors: Vec<(&RMatrix, Direction)> =
            spec.actors.iter().map(|&(k, dir)| (maps[k], dir)).collect();
        let o = find_standard_ordering(&decomps[spec.target], &actors).map_err(|reason| {
            Refutation::Ordering {
                which: NAMES[spec.target],
                reason,
                eigenvalues: decomps[spec.target]
                    .eigenvalues()
                    .iter()
                    .map(format_rational)
                    .collect(),
            }
        })?;
        ords.push(o);
    }

    // (iii) bijections
    let mut witnesses = Vec::new();
    for fam in families {
        let ord = &ords[fam.ordering];
        let d = ord.diameter();
        let bracket = commutator(maps[fam.left], maps[fam.right]).expect("shapes checked above");
        for i in 0..=d / 2 {
            let power = d - 2 * i;
            let (dom, cod) = if fam.reversed { (d - i, i) } else { (i, d - i) };
            match restricted_power_bijective(
                &bracket,
                power,
                &ord.eigenspaces[dom],
                &ord.eigenspaces[cod],
            ) {
                Ok(r) if r.bijective => witnesses.push(BijectionWitness {
                    family: fam.label,
                    index: i,
                    power,
                    domain_index: dom,
                    codomain_index: cod,
                    matrix: r.witness,
                }),
                Ok(r) => {
                    return Err(Refutation::NotBijective {
                        family: fam.label,
                        power,
                        domain_index: dom,
                        codomain_index: cod,
                        witness: r.witness,
                    })
                }
                Err(LinalgError::ImageNotContained { image, .. }) => {
                    return Err(Refutation::ImageNotContained {
                        family: fam.label,
                        power,
                        domain_index: dom,
                        codomain_index: cod,
                        image,
                    })
                }
                Err(other) => unreachable!("shapes checked above: {other}"),
            }
        }
    }

    let diameters: Vec<usize> = ords.iter().map(StandardOrdering::diameter).collect();
    if diameters.iter().any(|&d| d != diameters[0]) {
        return Err(Refutation::DiameterMismatch { diameters });
    }
    let diameter = diameters[0];
    let shape = shape_from_orderings(&ords)?;
    let thin = shape.iter().all(|&r| r == 1);
    Ok(BdCertificate {
        diameter,
        orderings: ords,
        shape,
        thin,
        bijection_witnesses: witnesses,
    })
}

fn shape_from_orderings(ords: &[StandardOrdering]) -> Result<Vec<usize>, Refutation> {
    let d = ords[0].diameter();
    (0..=d)
        .map(|i| {
            let dims: Vec<usize> = ords
                .iter()
                .flat_map(|o| [o.eigenspaces[i].dim(), o.eigenspaces[d - i].dim()])
                .collect();
            if dims.iter().all(|&x| x == dims[0]) {
                Ok(dims[0])
            } else {
                Err(Refutation::DimensionMismatch { index: i, dims })
            }
        })
        .collect()
}

/// Shape `{ρ_i}` and thin flag recomputed from a certificate's orderings.
pub fn shape_of(cert: &BdCertificate) -> Result<(Vec<usize>, bool), Refutation> {
    let shape = shape_from_orderings(&cert.orderings)?;
    let thin = shape.iter().all(|&r| r == 1);
    Ok((shape, thin))
}

pub fn verify_bd_pair(a: &RMatrix, a_prime: &RMatrix) -> Result<PairCertificate, Refutation> {
    verify_structure(&[a, a_prime], &PAIR_ORDERINGS, &PAIR_FAMILIES)
}

pub fn verify_bd_triple(
    a: &RMatrix,
    a_prime: &RMatrix,
    a_dprime: &RMatrix,
) -> Result<TripleCertificate, Refutation> {
    verify_structure(&[a, a_prime, a_dprime], &TRIPLE_ORDERINGS, &TRIPLE_FAMILIES)
}

pub fn verify_bd_triad(
    a: &RMatrix,
    a_prime: &RMatrix,
    a_dprime: &RMatrix,
) -> Result<TriadCertificate, Refutation> {
    verify_structure(&[a, a_prime, a_dprime], &TRIAD_ORDERINGS, &TRIAD_FAMILIES)
}
