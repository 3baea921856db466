//! Builds a tetrahedron-algebra module from a thin reduced BD triad.
//!
//! Pipeline: raising maps `R = A − A″`, `r = A′ − A″` and the scalar `c` with
//! `r = cR`; `a = 1 − 1/c`; the unique `B` with `[A″,B] = 2A″ − 2B` and
//! `[B,A′] = 2B + 2A′`; then `B′`, `B″` by formula; then the assembled module
//! is verified in full.

use crate::bd::{reduced_sequence, verify_bd_triple, Refutation, Triad, TriadCertificate};
use crate::linalg::{
    commutator, eigen_decompose, format_rational, int, restricted_power_bijective,
    solve_linear_matrix_system, LinalgError, MatrixConstraint, RMatrix, Rational, Subspace,
};
use crate::tet::{
    corner_triads_are_bd_triads, dolan_grady_defect, irreducible_sufficient, spectrum_diameter,
    verify_tet_relations, IrreducibilityReport, RelationReport, TetError, TetModule,
};
use num_traits::{One, Zero};
use thiserror::Error;

pub const DEFAULT_ASSIGNMENT: [usize; 4] = [0, 1, 2, 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("input is not a BD triad: {0}")]
    Triad(Refutation),
    #[error("triad is not reduced (sequences {sequences:?})")]
    NotReduced { sequences: Vec<Vec<String>> },
    #[error("triad is not thin (shape {shape:?})")]
    NotThin { shape: Vec<usize> },
    #[error("diameter 0 has no raising maps")]
    DiameterZero,
    #[error("raising map {which} is zero")]
    ZeroRaisingMap { which: &'static str },
    #[error("raising maps R and r coincide")]
    RaisingMapsEqual,
    #[error("{which} does not send V''_{index} into V''_{next}", next = index + 1)]
    NotRaising { which: &'static str, index: usize },
    #[error("{which} restricted to V''_{index} is not a bijection onto V''_{next}", next = index + 1)]
    RestrictionNotBijective { which: &'static str, index: usize },
    #[error("R and r do not commute")]
    NotCommuting { defect: RMatrix },
    #[error("r is not a scalar multiple of R")]
    NotProportional,
    #[error("scalar a = {a} is 0 or 1")]
    DegenerateScalar { a: String },
    #[error("the bracket constraints on B have no solution")]
    NoB,
    #[error("the bracket constraints on B leave a {dimension}-dimensional family")]
    AmbiguousB { dimension: usize },
    #[error("(A', -A'', B) is not a BD triple: {0}")]
    BNotTriple(Refutation),
    #[error("B has spectrum {spectrum:?} (diagonalizable: {diagonalizable}), expected 2i-d")]
    BSpectrum {
        spectrum: Vec<String>,
        diagonalizable: bool,
    },
    #[error("identity {id} fails")]
    Identity { id: &'static str },
    #[error("assembled module fails {count} relations, first: {first}")]
    Relations { count: usize, first: String },
    #[error("assembled module: {0}")]
    Module(TetError),
    #[error("module diameter {found} differs from triad diameter {expected}")]
    DiameterChanged { expected: usize, found: usize },
    #[error("irreducibility not certified (generated algebra has dimension {0})")]
    NotCertifiedIrreducible(usize),
    #[error("corner triad at vertex {0} does not return the input triad")]
    CornerMismatch(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaisingData {
    pub big_r: RMatrix,
    pub small_r: RMatrix,
    pub c: Rational,
    pub a: Rational,
}

fn require_thin_reduced(cert: &TriadCertificate) -> Result<(), SynthError> {
    if !cert.is_reduced() {
        return Err(SynthError::NotReduced {
            sequences: cert
                .sequences()
                .iter()
                .map(|s| s.iter().map(format_rational).collect())
                .collect(),
        });
    }
    if !cert.thin {
        return Err(SynthError::NotThin {
            shape: cert.shape.clone(),
        });
    }
    Ok(())
}

/// Computes and checks the raising maps of a thin reduced triad.
pub fn raising_maps(triad: &Triad, cert: &TriadCertificate) -> Result<RaisingData, SynthError> {
    require_thin_reduced(cert)?;
    let d = cert.diameter;
    if d == 0 {
        return Err(SynthError::DiameterZero);
    }
    let big_r = &triad.a - &triad.a_dprime;
    let small_r = &triad.a_prime - &triad.a_dprime;
    if big_r.is_zero() {
        return Err(SynthError::ZeroRaisingMap { which: "R" });
    }
    if small_r.is_zero() {
        return Err(SynthError::ZeroRaisingMap { which: "r" });
    }
    if big_r == small_r {
        return Err(SynthError::RaisingMapsEqual);
    }

    let flag = &cert.orderings[2].eigenspaces;
    let n = triad.dim();
    for (which, x) in [("R", &big_r), ("r", &small_r)] {
        for i in 0..=d {
            let next = flag
                .get(i + 1)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(n));
            if !flag[i].image(x).is_subspace_of(&next) {
                return Err(SynthError::NotRaising { which, index: i });
            }
            if i < d && !restricted_power_bijective(x, 1, &flag[i], &next)?.bijective {
                return Err(SynthError::RestrictionNotBijective { which, index: i });
            }
        }
    }
    let rr = &big_r * &small_r;
    let rr_swapped = &small_r * &big_r;
    if rr != rr_swapped {
        return Err(SynthError::NotCommuting {
            defect: &rr - &rr_swapped,
        });
    }

    // Probe with V''_0, then confirm on the whole space.
    let v = &flag[0].basis()[0];
    let (rv_big, rv_small) = (big_r.apply(v), small_r.apply(v));
    let k = rv_big
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(SynthError::NotProportional)?;
    let c = &rv_small[k] / &rv_big[k];
    if big_r.scale(&c) != small_r {
        return Err(SynthError::NotProportional);
    }
    let a = Rational::one() - c.recip();
    if a.is_zero() || a.is_one() {
        return Err(SynthError::DegenerateScalar {
            a: format_rational(&a),
        });
    }
    Ok(RaisingData {
        big_r,
        small_r,
        c,
        a,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BConstruction {
    pub b: RMatrix,
    /// Dimension of the solution space of the bracket system (0 when unique).
    pub solution_dimension: usize,
}

/// Solves `[A″,B] = 2A″ − 2B`, `[B,A′] = 2B + 2A′` for `B` and checks that
/// `(A′, −A″, B)` is a BD triple with `B` having eigenvalues `2i − d`.
pub fn construct_b(triad: &Triad, d: usize) -> Result<BConstruction, SynthError> {
    let n = triad.dim();
    let constraints = [
        MatrixConstraint::bracket_left(&triad.a_dprime, int(2), triad.a_dprime.scale(&int(2))),
        MatrixConstraint::bracket_right(&triad.a_prime, int(-2), triad.a_prime.scale(&int(2))),
    ];
    let sol = match solve_linear_matrix_system(n, &constraints) {
        Err(LinalgError::Inconsistent) => return Err(SynthError::NoB),
        other => other?,
    };
    if !sol.homogeneous.is_empty() {
        return Err(SynthError::AmbiguousB {
            dimension: sol.homogeneous.len(),
        });
    }
    let b = sol.particular;
    verify_bd_triple(&triad.a_prime, &-&triad.a_dprime, &b).map_err(SynthError::BNotTriple)?;
    let eig = eigen_decompose(&b)?;
    let values = eig.eigenvalues();
    if !eig.diagonalizable || values != reduced_sequence(d) {
        return Err(SynthError::BSpectrum {
            spectrum: values.iter().map(format_rational).collect(),
            diagonalizable: eig.diagonalizable,
        });
    }
    Ok(BConstruction {
        b,
        solution_dimension: 0,
    })
}

fn expect_eq(id: &'static str, lhs: &RMatrix, rhs: &RMatrix) -> Result<(), SynthError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(SynthError::Identity { id })
    }
}

/// `[x, y] = p·x + q·y`.
fn expect_bracket(
    id: &'static str,
    x: &RMatrix,
    y: &RMatrix,
    p: i64,
    q: i64,
) -> Result<(), SynthError> {
    let rhs = &x.scale(&int(p)) + &y.scale(&int(q));
    expect_eq(id, &commutator(x, y)?, &rhs)
}

/// `B′ = (a⁻¹ − 1)⁻¹A″ + (a − 1)⁻¹B` and `B″ = (1 − a⁻¹)A′ − a⁻¹B`, followed by
/// the ten linear identities and seven bracket identities they satisfy.
/// Without raising data (diameter 0) every map is zero and so are `B′`, `B″`.
pub fn construct_b_prime_dprime(
    triad: &Triad,
    rd: Option<&RaisingData>,
    b: &RMatrix,
) -> Result<(RMatrix, RMatrix), SynthError> {
    let Some(rd) = rd else {
        let n = triad.dim();
        if triad.maps().iter().all(|m| m.is_zero()) && b.is_zero() {
            return Ok((RMatrix::zeros(n, n), RMatrix::zeros(n, n)));
        }
        return Err(SynthError::DiameterZero);
    };
    let (aa, ap, app) = (&triad.a, &triad.a_prime, &triad.a_dprime);
    let a = &rd.a;
    let one = Rational::one();
    let inv = a.recip();
    let lin = |p: &Rational, x: &RMatrix, q: &Rational, y: &RMatrix| &x.scale(p) + &y.scale(q);

    let bp = lin(&(&inv - &one).recip(), app, &(a - &one).recip(), b);
    let bpp = lin(&(&one - &inv), ap, &-inv.clone(), b);

    expect_eq("A = (1-a)A' + aA''", aa, &lin(&(&one - a), ap, a, app))?;
    expect_eq(
        "A' = (1-1/a)^-1 A'' + (1-a)^-1 A",
        ap,
        &lin(&(&one - &inv).recip(), app, &(&one - a).recip(), aa),
    )?;
    expect_eq(
        "A'' = A/a + (1-1/a)A'",
        app,
        &lin(&inv, aa, &(&one - &inv), ap),
    )?;
    expect_eq("B = (a-1)B' + aA''", b, &lin(&(a - &one), &bp, a, app))?;
    expect_eq(
        "A'' = B/a + (1/a-1)B'",
        app,
        &lin(&inv, b, &(&inv - &one), &bp),
    )?;
    expect_eq(
        "B = -aB'' + (a-1)A'",
        b,
        &lin(&-a.clone(), &bpp, &(a - &one), ap),
    )?;
    expect_eq(
        "A' = (a-1)^-1 B + (1-1/a)^-1 B''",
        ap,
        &lin(&(a - &one).recip(), b, &(&one - &inv).recip(), &bpp),
    )?;
    expect_eq(
        "A = (1-a)B' - aB''",
        aa,
        &lin(&(&one - a), &bp, &-a.clone(), &bpp),
    )?;
    expect_eq(
        "B' = (1/a-1)^-1 B'' + (1-a)^-1 A",
        &bp,
        &lin(&(&inv - &one).recip(), &bpp, &(&one - a).recip(), aa),
    )?;
    expect_eq(
        "B'' = -A/a + (1/a-1)B'",
        &bpp,
        &lin(&-inv.clone(), aa, &(&inv - &one), &bp),
    )?;

    expect_bracket("[B',A''] = 2B' + 2A''", &bp, app, 2, 2)?;
    expect_bracket("[B',B] = 2B' + 2B", &bp, b, 2, 2)?;
    expect_bracket("[B,B''] = 2B + 2B''", b, &bpp, 2, 2)?;
    expect_bracket("[A',B''] = 2A' - 2B''", ap, &bpp, 2, -2)?;
    expect_bracket("[B'',B'] = 2B'' + 2B'", &bpp, &bp, 2, 2)?;
    expect_bracket("[B'',A] = 2B'' + 2A", &bpp, aa, 2, 2)?;
    expect_bracket("[A,B'] = 2A - 2B'", aa, &bp, 2, -2)?;
    Ok((bp, bpp))
}

/// The six Dolan-Grady identities pairing each of `A, A′, A″` with its
/// opposite among `B, B′, B″`, each reported individually.
pub fn dolan_grady_lemmas(
    triad: &Triad,
    b: &RMatrix,
    bp: &RMatrix,
    bpp: &RMatrix,
) -> [(&'static str, bool); 6] {
    let (aa, ap, app) = (&triad.a, &triad.a_prime, &triad.a_dprime);
    let holds = |x: &RMatrix, y: &RMatrix| dolan_grady_defect(x, y).is_zero();
    [
        ("[A,[A,[A,B]]] = 4[A,B]", holds(aa, b)),
        ("[B,[B,[B,A]]] = 4[B,A]", holds(b, aa)),
        ("[A',[A',[A',B']]] = 4[A',B']", holds(ap, bp)),
        ("[B',[B',[B',A']]] = 4[B',A']", holds(bp, ap)),
        ("[A'',[A'',[A'',B'']]] = 4[A'',B'']", holds(app, bpp)),
        ("[B'',[B'',[B'',A'']]] = 4[B'',A'']", holds(bpp, app)),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    pub triad_certificate: TriadCertificate,
    pub raising: Option<RaisingData>,
    pub b: RMatrix,
    pub b_prime: RMatrix,
    pub b_dprime: RMatrix,
    pub b_solution_dimension: usize,
    pub assignment: [usize; 4],
    pub module: TetModule,
    pub relations: RelationReport,
    pub diameter: usize,
    pub irreducibility: IrreducibilityReport,
    pub corner_certificates: [TriadCertificate; 4],
    pub dolan_grady_lemmas: [(&'static str, bool); 6],
}

/// Runs the full pipeline on `triad` and verifies the resulting module.
pub fn synthesize_tet(
    triad: &Triad,
    assignment: [usize; 4],
) -> Result<SynthesisResult, SynthError> {
    let cert = triad.verify().map_err(SynthError::Triad)?;
    require_thin_reduced(&cert)?;
    let d = cert.diameter;
    let raising = if d == 0 {
        None
    } else {
        Some(raising_maps(triad, &cert)?)
    };
    let bc = construct_b(triad, d)?;
    let (b_prime, b_dprime) = construct_b_prime_dprime(triad, raising.as_ref(), &bc.b)?;
    let module = TetModule::from_assignment(assignment, triad, &bc.b, &b_prime, &b_dprime)
        .map_err(SynthError::Module)?;

    let relations = verify_tet_relations(&module);
    if let Some((id, _)) = relations.violations.first() {
        return Err(SynthError::Relations {
            count: relations.violations.len(),
            first: id.to_string(),
        });
    }
    let diameter = spectrum_diameter(&module).map_err(SynthError::Module)?;
    if diameter != d {
        return Err(SynthError::DiameterChanged {
            expected: d,
            found: diameter,
        });
    }
    let irreducibility = irreducible_sufficient(&module);
    if !irreducibility.certified {
        return Err(SynthError::NotCertifiedIrreducible(
            irreducibility.algebra_dimension,
        ));
    }
    let corner_certificates = corner_triads_are_bd_triads(&module).map_err(SynthError::Module)?;
    let [r, s, t, u] = assignment;
    let at_corner = Triad::new(
        module.generator(r, u).map_err(SynthError::Module)?,
        module.generator(s, u).map_err(SynthError::Module)?,
        module.generator(t, u).map_err(SynthError::Module)?,
    );
    if at_corner != *triad {
        return Err(SynthError::CornerMismatch(u));
    }
    let dolan_grady_lemmas = dolan_grady_lemmas(triad, &bc.b, &b_prime, &b_dprime);
    Ok(SynthesisResult {
        triad_certificate: cert,
        raising,
        b: bc.b,
        b_prime,
        b_dprime,
        b_solution_dimension: bc.solution_dimension,
        assignment,
        module,
        relations,
        diameter,
        irreducibility,
        corner_certificates,
        dolan_grady_lemmas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;
    use crate::tet::corner_triad;

    fn m(rows: &[&[i64]]) -> RMatrix {
        RMatrix::from_i64(rows)
    }

    fn d1() -> Triad {
        Triad::new(
            m(&[&[-1, 0], &[1, 1]]),
            m(&[&[-1, 0], &[2, 1]]),
            m(&[&[-1, 0], &[0, 1]]),
        )
    }

    #[test]
    fn d1_raising_data() {
        let t = d1();
        let rd = raising_maps(&t, &t.verify().unwrap()).unwrap();
        assert_eq!(rd.big_r, m(&[&[0, 0], &[1, 0]]));
        assert_eq!(rd.small_r, m(&[&[0, 0], &[2, 0]]));
        assert_eq!(rd.c, int(2));
        assert_eq!(rd.a, frac(1, 2));
    }

    #[test]
    fn d1_b_family() {
        let t = d1();
        let bc = construct_b(&t, 1).unwrap();
        assert_eq!(bc.b, m(&[&[-1, -2], &[0, 1]]));
        assert_eq!(bc.solution_dimension, 0);
        let rd = raising_maps(&t, &t.verify().unwrap()).unwrap();
        let (bp, bpp) = construct_b_prime_dprime(&t, Some(&rd), &bc.b).unwrap();
        assert_eq!(bp, m(&[&[1, 4], &[0, -1]]));
        assert_eq!(bpp, m(&[&[3, 4], &[-2, -3]]));
        let lhs = commutator(&t.a, &bp).unwrap();
        assert_eq!(lhs, m(&[&[-4, -8], &[2, 4]]));
        assert_eq!(lhs, &t.a.scale(&int(2)) - &bp.scale(&int(2)));
    }

    #[test]
    fn d1_full_synthesis() {
        let res = synthesize_tet(&d1(), DEFAULT_ASSIGNMENT).unwrap();
        assert!(res.relations.passed());
        assert_eq!(res.diameter, 1);
        assert_eq!(res.irreducibility.algebra_dimension, 4);
        assert!(res.dolan_grady_lemmas.iter().all(|(_, ok)| *ok));
        let md = &res.module;
        assert_eq!(md.generator(0, 3).unwrap(), d1().a);
        assert_eq!(md.generator(1, 3).unwrap(), d1().a_prime);
        assert_eq!(md.generator(2, 3).unwrap(), d1().a_dprime);
        assert_eq!(md.generator(2, 1).unwrap(), res.b);
        assert_eq!(md.generator(0, 2).unwrap(), res.b_prime);
        assert_eq!(md.generator(1, 0).unwrap(), res.b_dprime);
    }

    #[test]
    fn other_corner_assignment() {
        let res = synthesize_tet(&d1(), [3, 0, 2, 1]).unwrap();
        assert_eq!(res.module.generator(3, 1).unwrap(), d1().a);
        let c1 = corner_triad(&res.module, 1).unwrap();
        assert_eq!(
            (c1.a, c1.a_prime, c1.a_dprime),
            (d1().a_prime, d1().a_dprime, d1().a)
        );
        assert!(synthesize_tet(&d1(), [0, 1, 1, 3]).is_err());
    }

    #[test]
    fn d0_synthesis_is_zero_module() {
        let z = RMatrix::zeros(1, 1);
        let t = Triad::new(z.clone(), z.clone(), z.clone());
        assert_eq!(construct_b(&t, 0).unwrap().b, z);
        let res = synthesize_tet(&t, DEFAULT_ASSIGNMENT).unwrap();
        assert!(res.raising.is_none());
        assert!(res.module.canonical().iter().all(RMatrix::is_zero));
        assert_eq!(res.diameter, 0);
        assert!(matches!(
            raising_maps(&t, &t.verify().unwrap()),
            Err(SynthError::DiameterZero)
        ));
    }

    #[test]
    fn degenerate_raising_maps_refuted() {
        let t = d1();
        let cert = t.verify().unwrap();
        let same = Triad::new(t.a_dprime.clone(), t.a_prime.clone(), t.a_dprime.clone());
        assert_eq!(
            raising_maps(&same, &cert),
            Err(SynthError::ZeroRaisingMap { which: "R" })
        );
        let equal = Triad::new(t.a.clone(), t.a.clone(), t.a_dprime.clone());
        assert_eq!(
            raising_maps(&equal, &cert),
            Err(SynthError::RaisingMapsEqual)
        );
    }

    #[test]
    fn non_reduced_input_rejected() {
        let t = d1();
        let shifted = Triad::new(t.a.affine(&int(1), &int(5)), t.a_prime, t.a_dprime);
        assert!(matches!(
            synthesize_tet(&shifted, DEFAULT_ASSIGNMENT),
            Err(SynthError::NotReduced { .. })
        ));
    }
}
