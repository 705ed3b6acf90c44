use fanodef::deformation::{hilbert_function_of_presentation, HullPresentation, HullVariable};
use fanodef::lattice_algebra::{
    add, hermite_normal_form, int, ivec, kernel_basis, rank_and_det, smith_normal_form,
    solve_integer,
};
use fanodef::{
    classical_period, classical_period_split, Cone, IntMatrix, IntVector, LatticePolytope,
    LaurentPolynomial,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n), m).prop_map(move |rows| {
            let rows: Vec<IntVector> = rows.iter().map(|r| ivec(r)).collect();
            IntMatrix::from_rows(&rows, n)
        })
    })
}

fn laurent(dim: usize, max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(
        (prop::collection::vec(-2i64..=2, dim), -3i64..=3),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        LaurentPolynomial::from_terms(dim, terms.into_iter().map(|(e, c)| (e, int(c)))).unwrap()
    })
}

/// Unimodular 3×3 matrices as products of elementary moves.
fn unimodular() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2, 0u8..3), 0..8).prop_map(|moves| {
        let mut g = IntMatrix::identity(3);
        for (a, b, k, kind) in moves {
            match kind {
                0 if a != b => g.add_row_multiple(a, b, &int(k)),
                1 => g.swap_rows(a, b),
                _ => g.negate_row(a),
            }
        }
        g
    })
}

fn is_unimodular(u: &IntMatrix) -> bool {
    rank_and_det(u).1.is_some_and(|d| d.abs().is_one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_identity(a in matrix(5, 5)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.left * &a) * &s.right, s.diagonal.clone());
        prop_assert!(is_unimodular(&s.left) && is_unimodular(&s.right));
        let d = s.invariant_factors();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert_eq!(s.rank(), rank_and_det(&a).0);
    }

    #[test]
    fn hermite_form_identity(a in matrix(5, 5)) {
        let h = hermite_normal_form(&a);
        prop_assert_eq!(&h.transform * &a, h.hnf.clone());
        prop_assert!(is_unimodular(&h.transform));
        for (r, &c) in h.pivots.iter().enumerate() {
            prop_assert!(h.hnf[(r, c)].is_positive());
            for above in 0..r {
                let x = &h.hnf[(above, c)];
                prop_assert!(!x.is_negative() && x < &h.hnf[(r, c)]);
            }
        }
    }

    #[test]
    fn kernel_is_annihilated_and_saturated(a in matrix(4, 5)) {
        let k = kernel_basis(&a);
        prop_assert_eq!(k.nrows() + rank_and_det(&a).0, a.ncols());
        for row in k.to_rows() {
            prop_assert!(a.mul_vec(&row).iter().all(Zero::is_zero));
        }
        if k.nrows() > 0 {
            prop_assert!(smith_normal_form(&k).invariant_factors().iter().all(One::is_one));
        }
    }

    #[test]
    fn integer_solutions_solve(a in matrix(4, 4), x in prop::collection::vec(-5i64..=5, 4)) {
        let x: IntVector = ivec(&x[..a.ncols()]);
        let b = a.mul_vec(&x);
        let y = solve_integer(&a, &b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn multiplication_is_commutative(f in laurent(2, 5), g in laurent(2, 5)) {
        prop_assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap());
    }

    #[test]
    fn period_routes_agree(f in laurent(2, 5)) {
        prop_assert_eq!(classical_period(&f, 6), classical_period_split(&f, 6));
    }

    #[test]
    fn newton_polytope_of_product_is_minkowski_sum(f in laurent(2, 4), g in laurent(2, 4)) {
        let fg = f.multiply(&g).unwrap();
        prop_assume!(!fg.is_zero());
        let (pf, pg) = (f.newton_polytope().unwrap(), g.newton_polytope().unwrap());
        let sums: Vec<IntVector> = pf
            .vertices()
            .iter()
            .flat_map(|u| pg.vertices().iter().map(move |v| add(u, v)))
            .collect();
        prop_assert_eq!(fg.newton_polytope().unwrap(), LatticePolytope::hull(&sums).unwrap());
    }

    #[test]
    fn period_is_gl_invariant(f in laurent(3, 4), g in unimodular()) {
        let gf = f.transform(&g).unwrap();
        prop_assert_eq!(classical_period(&f, 4), classical_period(&gf, 4));
    }

    #[test]
    fn laurent_json_round_trips(f in laurent(3, 6)) {
        prop_assert_eq!(LaurentPolynomial::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn free_ring_hilbert_function(k in 1usize..5) {
        let vars = (0..k).map(|i| HullVariable::new(&format!("t{i}"), ivec(&[0]), 1)).collect();
        let h = hilbert_function_of_presentation(&HullPresentation::new(vars, vec![]).unwrap(), 5);
        // stars and bars
        for (d, &n) in h.iter().enumerate() {
            let mut want = 1usize;
            for i in 0..k - 1 {
                want = want * (d + i + 1) / (i + 1);
            }
            prop_assert_eq!(n, want);
        }
    }

    #[test]
    fn volume_and_lattice_points_are_gl_invariant(g in unimodular()) {
        let p = fanodef::fixtures::polytope_p();
        let gp = p.transform(&g).unwrap();
        prop_assert_eq!(gp.normalized_volume().unwrap(), p.normalized_volume().unwrap());
        prop_assert_eq!(gp.lattice_points().len(), p.lattice_points().len());
        prop_assert_eq!(gp.fano_classify(), p.fano_classify());
    }

    #[test]
    fn hilbert_basis_contains_primitive_rays(
        rays in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)
    ) {
        let rays: Vec<IntVector> = rays.iter().map(|r| ivec(r)).collect();
        let det = rank_and_det(&IntMatrix::from_rows(&rays, 3)).1.unwrap();
        prop_assume!(!det.is_zero());
        let cone = Cone::new(3, &rays).unwrap();
        let hb = cone.hilbert_basis();
        for r in cone.rays() {
            prop_assert!(hb.contains(r));
        }
        prop_assert!(hb.iter().all(|h| cone.contains(h)));
        // a smooth cone has exactly its rays
        if det.abs().is_one() {
            prop_assert_eq!(hb.len(), 3);
        }
    }
}
