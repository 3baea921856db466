use bdtet::bd::{affine_equivalent_triads, Triad};
use bdtet::fixtures::fixture_vd_triad;
use bdtet::io::{TetModuleDocument, TriadDocument};
use bdtet::linalg::{
    char_poly, commutator, eigen::poly_at_matrix, format_rational, frac, int, kernel_basis,
    parse_rational, RMatrix, Rational,
};
use bdtet::sl2::{equitable_from_standard, make_vd, standard_from_equitable};
use bdtet::spectral::reduce_triad;
use bdtet::tet::TetModule;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(p, q, neg)| frac(if neg { -p } else { p }, q))
}

fn matrix(n: usize) -> impl Strategy<Value = RMatrix> {
    proptest::collection::vec(small_rational(), n * n).prop_map(move |xs| {
        RMatrix::from_rows(xs.chunks(n).map(<[Rational]>::to_vec).collect()).unwrap()
    })
}

fn square() -> impl Strategy<Value = RMatrix> {
    (1usize..=4).prop_flat_map(matrix)
}

fn square_triple() -> impl Strategy<Value = (RMatrix, RMatrix, RMatrix)> {
    (1usize..=4).prop_flat_map(|n| (matrix(n), matrix(n), matrix(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_is_bilinear_and_antisymmetric(
        (x, y, z) in square_triple(),
        s in small_rational(),
    ) {
        let lhs = commutator(&(&x.scale(&s) + &y), &z).unwrap();
        let rhs = &commutator(&x, &z).unwrap().scale(&s) + &commutator(&y, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(commutator(&x, &y).unwrap(), -&commutator(&y, &x).unwrap());
        // Jacobi identity.
        let jacobi = &(&commutator(&x, &commutator(&y, &z).unwrap()).unwrap()
            + &commutator(&y, &commutator(&z, &x).unwrap()).unwrap())
            + &commutator(&z, &commutator(&x, &y).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn kernel_basis_spans_the_null_space(m in square()) {
        let k = kernel_basis(&m);
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(|x| *x == int(0)));
        }
        prop_assert_eq!(k.dim() + bdtet::linalg::rank(&m), m.cols());
    }

    #[test]
    fn cayley_hamilton(m in square()) {
        let p = char_poly(&m).unwrap();
        prop_assert_eq!(p.len(), m.rows() + 1);
        prop_assert!(poly_at_matrix(&p, &m).is_zero());
    }

    #[test]
    fn rational_text_round_trip(x in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn sl2_equitable_round_trip(d in 0usize..=8) {
        let s = make_vd(d);
        let t = equitable_from_standard(&s).unwrap();
        prop_assert_eq!(standard_from_equitable(&t).unwrap(), s);
        let back = equitable_from_standard(&standard_from_equitable(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn triad_document_round_trip((a, b, c) in square_triple()) {
        let doc = TriadDocument::new(Triad::new(a, b, c));
        prop_assert_eq!(TriadDocument::from_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn module_document_round_trip(n in 1usize..=3, seed in proptest::collection::vec(small_rational(), 54)) {
        let gens: [RMatrix; 6] = std::array::from_fn(|k| {
            let xs = &seed[k * 9..k * 9 + n * n];
            RMatrix::from_rows(xs.chunks(n).map(<[Rational]>::to_vec).collect()).unwrap()
        });
        let doc = TetModuleDocument::new(TetModule::new(n, gens).unwrap());
        prop_assert_eq!(TetModuleDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Verification, shape and thinness are invariant under componentwise
    /// affine maps, and reduction undoes them.
    #[test]
    fn affine_invariance_of_triads(
        d in 1usize..=4,
        ws in proptest::collection::vec((nonzero_rational(), small_rational()), 3),
    ) {
        let base = fixture_vd_triad(d, &int(1), &int(2)).unwrap().triad;
        let maps = base.maps();
        let moved = Triad::new(
            maps[0].affine(&ws[0].0, &ws[0].1),
            maps[1].affine(&ws[1].0, &ws[1].1),
            maps[2].affine(&ws[2].0, &ws[2].1),
        );
        let cert = moved.verify().unwrap();
        prop_assert_eq!(cert.diameter, d);
        prop_assert!(cert.thin);
        let eq = affine_equivalent_triads(base.maps(), moved.maps());
        prop_assert!(eq.equivalent());
        let red = reduce_triad(&moved, &cert).unwrap();
        prop_assert_eq!(red.triad, base);
    }
}
