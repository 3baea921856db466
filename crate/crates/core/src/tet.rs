//! Candidate modules for the tetrahedron algebra: twelve generators `X_ij`
//! (`i ≠ j` in `0..4`) stored as six canonical matrices with `X_ji = -X_ij`.

use crate::bd::{reduced_sequence, Refutation, Triad, TriadCertificate};
use crate::linalg::{
    commutator, eigen_decompose, format_rational, generated_algebra_dimension, int, RMatrix,
};
use crate::sl2::{EquitableTriple, Sl2Error};
use std::fmt;
use thiserror::Error;

/// Index pairs of the stored generators, in storage order.
pub const CANONICAL_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TetError {
    #[error("generator X{i}{j} is {rows}x{cols}, expected {dim}x{dim}")]
    Shape {
        i: usize,
        j: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("invalid vertex or vertex tuple {0:?}")]
    InvalidVertex(Vec<usize>),
    #[error("X{i}{j} has spectrum {spectrum:?}, which is not {{d-2k}} for a common d")]
    NonConformingSpectrum {
        i: usize,
        j: usize,
        spectrum: Vec<String>,
        diagonalizable: bool,
    },
    #[error("face ({h},{i},{j}) is not an equitable triple: {source}")]
    Face {
        h: usize,
        i: usize,
        j: usize,
        source: Sl2Error,
    },
    #[error("corner triad at vertex {u} is not a BD triad: {source}")]
    CornerRefuted { u: usize, source: Refutation },
    #[error("corner triad at vertex {u} is a BD triad but not reduced")]
    CornerNotReduced { u: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetModule {
    dim: usize,
    gens: [RMatrix; 6],
}

fn slot(i: usize, j: usize) -> Option<(usize, bool)> {
    if i >= 4 || j >= 4 || i == j {
        return None;
    }
    let (lo, hi, flip) = if i < j { (i, j, false) } else { (j, i, true) };
    CANONICAL_PAIRS
        .iter()
        .position(|&p| p == (lo, hi))
        .map(|k| (k, flip))
}

impl TetModule {
    /// Builds a module from `X01, X02, X03, X12, X13, X23`.
    pub fn new(dim: usize, gens: [RMatrix; 6]) -> Result<Self, TetError> {
        for (k, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                let (i, j) = CANONICAL_PAIRS[k];
                return Err(TetError::Shape {
                    i,
                    j,
                    rows: g.rows(),
                    cols: g.cols(),
                    dim,
                });
            }
        }
        Ok(Self { dim, gens })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            gens: std::array::from_fn(|_| RMatrix::zeros(dim, dim)),
        }
    }

    /// Places a triad and its completion around vertex `u` of the permutation
    /// `(r, s, t, u)`: `X_ru = A`, `X_su = A′`, `X_tu = A″`, `X_ts = B`,
    /// `X_rt = B′`, `X_sr = B″`.
    pub fn from_assignment(
        perm: [usize; 4],
        triad: &Triad,
        b: &RMatrix,
        b_prime: &RMatrix,
        b_dprime: &RMatrix,
    ) -> Result<Self, TetError> {
        let mut seen = [false; 4];
        for &v in &perm {
            if v >= 4 || seen[v] {
                return Err(TetError::InvalidVertex(perm.to_vec()));
            }
            seen[v] = true;
        }
        let [r, s, t, u] = perm;
        let mut m = Self::zero(triad.dim());
        let placements = [
            ((r, u), &triad.a),
            ((s, u), &triad.a_prime),
            ((t, u), &triad.a_dprime),
            ((t, s), b),
            ((r, t), b_prime),
            ((s, r), b_dprime),
        ];
        for ((i, j), x) in placements {
            let (k, flip) = slot(i, j).expect("distinct vertices");
            m.gens[k] = if flip { -x } else { x.clone() };
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn canonical(&self) -> &[RMatrix; 6] {
        &self.gens
    }

    pub fn generator(&self, i: usize, j: usize) -> Result<RMatrix, TetError> {
        let (k, flip) = slot(i, j).ok_or_else(|| TetError::InvalidVertex(vec![i, j]))?;
        Ok(if flip {
            -&self.gens[k]
        } else {
            self.gens[k].clone()
        })
    }

    fn gen(&self, i: usize, j: usize) -> RMatrix {
        self.generator(i, j).expect("valid pair")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    /// `X_ij + X_ji = 0`.
    Antisymmetry { i: usize, j: usize },
    /// `[X_hi, X_ij] = 2X_hi + 2X_ij`.
    Corner { h: usize, i: usize, j: usize },
    /// `[X_hi, [X_hi, [X_hi, X_jk]]] = 4[X_hi, X_jk]`.
    DolanGrady {
        h: usize,
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Antisymmetry { i, j } => write!(f, "X{i}{j} + X{j}{i} = 0"),
            Self::Corner { h, i, j } => {
                write!(f, "[X{h}{i}, X{i}{j}] = 2X{h}{i} + 2X{i}{j}")
            }
            Self::DolanGrady { h, i, j, k } => write!(
                f,
                "[X{h}{i}, [X{h}{i}, [X{h}{i}, X{j}{k}]]] = 4[X{h}{i}, X{j}{k}]"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub antisymmetry_ok: bool,
    pub corner_ok: bool,
    pub dolan_grady_ok: bool,
    pub checked: usize,
    /// Sorted by relation id; each defect is LHS − RHS.
    pub violations: Vec<(RelationId, RMatrix)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `[x, [x, [x, y]]] - 4[x, y]`.
pub fn dolan_grady_defect(x: &RMatrix, y: &RMatrix) -> RMatrix {
    let xy = commutator(x, y).expect("square matrices of equal size");
    let xxy = commutator(x, &xy).expect("same shape");
    let xxxy = commutator(x, &xxy).expect("same shape");
    &xxxy - &xy.scale(&int(4))
}

fn distinct(ids: &[usize]) -> bool {
    ids.iter()
        .enumerate()
        .all(|(p, a)| ids[..p].iter().all(|b| a != b))
}

/// Checks all 6 antisymmetry, 24 corner and 24 Dolan-Grady identities.
pub fn verify_tet_relations(m: &TetModule) -> RelationReport {
    let mut violations = Vec::new();
    let mut checked = 0;
    for &(i, j) in &CANONICAL_PAIRS {
        checked += 1;
        let defect = &m.gen(i, j) + &m.gen(j, i);
        if !defect.is_zero() {
            violations.push((RelationId::Antisymmetry { i, j }, defect));
        }
    }
    for h in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                if !distinct(&[h, i, j]) {
                    continue;
                }
                checked += 1;
                let (x, y) = (m.gen(h, i), m.gen(i, j));
                let lhs = commutator(&x, &y).expect("module generators share a shape");
                let rhs = &x.scale(&int(2)) + &y.scale(&int(2));
                let defect = &lhs - &rhs;
                if !defect.is_zero() {
                    violations.push((RelationId::Corner { h, i, j }, defect));
                }
            }
        }
    }
    for h in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    if !distinct(&[h, i, j, k]) {
                        continue;
                    }
                    checked += 1;
                    let defect = dolan_grady_defect(&m.gen(h, i), &m.gen(j, k));
                    if !defect.is_zero() {
                        violations.push((RelationId::DolanGrady { h, i, j, k }, defect));
                    }
                }
            }
        }
    }
    violations.sort_by_key(|v| v.0);
    let any = |pred: fn(&RelationId) -> bool| violations.iter().any(|(id, _)| pred(id));
    RelationReport {
        antisymmetry_ok: !any(|id| matches!(id, RelationId::Antisymmetry { .. })),
        corner_ok: !any(|id| matches!(id, RelationId::Corner { .. })),
        dolan_grady_ok: !any(|id| matches!(id, RelationId::DolanGrady { .. })),
        checked,
        violations,
    }
}

/// The common diameter `d` when every generator is diagonalizable with
/// eigenvalues exactly `{d - 2k : 0 ≤ k ≤ d}`.
pub fn spectrum_diameter(m: &TetModule) -> Result<usize, TetError> {
    let mut common = None;
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let x = m.gen(i, j);
            let refute = |spectrum: Vec<String>, diagonalizable| TetError::NonConformingSpectrum {
                i,
                j,
                spectrum,
                diagonalizable,
            };
            let eig = eigen_decompose(&x).map_err(|_| refute(Vec::new(), false))?;
            let values = eig.eigenvalues();
            let shown = values.iter().map(format_rational).collect();
            if !eig.diagonalizable {
                return Err(refute(shown, false));
            }
            let d = values.len().saturating_sub(1);
            if values != reduced_sequence(d) || common.is_some_and(|c| c != d) {
                return Err(refute(shown, true));
            }
            common = Some(d);
        }
    }
    Ok(common.unwrap_or(0))
}

/// `(X_ru, X_su, X_tu)` where `r < s < t` is the complement of `u`.
pub fn corner_triad(m: &TetModule, u: usize) -> Result<Triad, TetError> {
    if u >= 4 {
        return Err(TetError::InvalidVertex(vec![u]));
    }
    let rest: Vec<usize> = (0..4).filter(|&v| v != u).collect();
    Ok(Triad::new(
        m.gen(rest[0], u),
        m.gen(rest[1], u),
        m.gen(rest[2], u),
    ))
}

/// `(X_hi, X_ij, X_jh)`, checked against the equitable relations.
pub fn face_triple(
    m: &TetModule,
    h: usize,
    i: usize,
    j: usize,
) -> Result<EquitableTriple, TetError> {
    if h >= 4 || i >= 4 || j >= 4 || !distinct(&[h, i, j]) {
        return Err(TetError::InvalidVertex(vec![h, i, j]));
    }
    let t = EquitableTriple {
        x: m.gen(h, i),
        y: m.gen(i, j),
        z: m.gen(j, h),
    };
    t.check()
        .map_err(|source| TetError::Face { h, i, j, source })?;
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityReport {
    /// True when the generators span the full matrix algebra. False means
    /// "not certified", not "reducible".
    pub certified: bool,
    pub algebra_dimension: usize,
}

pub fn irreducible_sufficient(m: &TetModule) -> IrreducibilityReport {
    let gens: Vec<&RMatrix> = m.gens.iter().collect();
    let algebra_dimension = generated_algebra_dimension(m.dim, &gens);
    IrreducibilityReport {
        certified: algebra_dimension == m.dim * m.dim,
        algebra_dimension,
    }
}

/// Verifies the corner triad at each vertex as a reduced BD triad.
pub fn corner_triads_are_bd_triads(m: &TetModule) -> Result<[TriadCertificate; 4], TetError> {
    let mut certs = Vec::with_capacity(4);
    for u in 0..4 {
        let cert = corner_triad(m, u)?
            .verify()
            .map_err(|source| TetError::CornerRefuted { u, source })?;
        if !cert.is_reduced() {
            return Err(TetError::CornerNotReduced { u });
        }
        certs.push(cert);
    }
    Ok(certs.try_into().expect("four vertices"))
}
