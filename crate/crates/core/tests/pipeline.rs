use fanodef::lattice_algebra::{int, solve_integer};
use fanodef::{
    fixtures, global_t1, hull_for_polytope, Error, IntMatrix, IntVector, LatticePolytope,
};

fn sorted(mut v: Vec<IntVector>) -> Vec<IntVector> {
    v.sort();
    v
}

/// Moving N by `g` moves M by `g^{-T}`, so the T¹ degrees of `g·P` are
/// the solutions `w'` of `gᵀ w' = w`.
#[test]
fn t1_degrees_are_covariant() {
    let p = fixtures::polytope_p();
    let base = global_t1(&p).unwrap();
    for g in [
        IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 1]]),
        IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[2, -1, 1]]),
    ] {
        let gt = g.transpose();
        let expected: Vec<IntVector> = base
            .weights
            .iter()
            .map(|w| solve_integer(&gt, w).expect("unimodular"))
            .collect();
        let moved = global_t1(&p.transform(&g).unwrap()).unwrap();
        assert_eq!(sorted(moved.weights), sorted(expected));
        assert!(moved.cohomology.h1.is_zero());
        assert!(moved.cohomology.euler_holds());
    }
}

#[test]
fn hull_shape_survives_a_change_of_basis() {
    let g = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
    let p = fixtures::polytope_p().transform(&g).unwrap();
    let r = hull_for_polytope(&p, true).unwrap();
    assert_eq!(r.hull.ideal_string(), "(t1^2, t1t2, t3^2, t3t4)");
    assert_eq!(r.obstructed.len(), 2);
}

#[test]
fn smooth_fano_threefolds_are_rigid() {
    // P³ and P¹×P¹×P¹
    let simplex =
        LatticePolytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]).unwrap();
    let octa = LatticePolytope::from_i64(&[
        &[1, 0, 0],
        &[-1, 0, 0],
        &[0, 1, 0],
        &[0, -1, 0],
        &[0, 0, 1],
        &[0, 0, -1],
    ])
    .unwrap();
    for p in [simplex, octa] {
        let r = hull_for_polytope(&p, true).unwrap();
        assert_eq!(r.hull.nvars(), 0);
        assert!(r.obstructed.is_empty());
    }
}

#[test]
fn unsupported_charts_are_named() {
    let cube = LatticePolytope::from_i64(&[
        &[1, 1, 1],
        &[1, 1, -1],
        &[1, -1, 1],
        &[1, -1, -1],
        &[-1, 1, 1],
        &[-1, 1, -1],
        &[-1, -1, 1],
        &[-1, -1, -1],
    ])
    .unwrap();
    match global_t1(&cube) {
        Err(Error::UnsupportedChart { chart, .. }) => assert_eq!(chart, "F1"),
        other => panic!("expected an unsupported chart, got {other:?}"),
    }
}

/// Every facet restriction of the mirror polynomial is nonzero and every
/// vertex carries coefficient 1.
#[test]
fn facet_restrictions_of_the_mirror_polynomial() {
    let f = fixtures::laurent_f();
    let p = f.newton_polytope().unwrap();
    for facet in p.facets().unwrap() {
        let verts: Vec<IntVector> = facet
            .vertex_indices
            .iter()
            .map(|&i| p.vertices()[i].clone())
            .collect();
        let r = f.restrict_to_face(&verts).unwrap();
        assert!(r.num_terms() >= verts.len());
        for v in &verts {
            let e: Vec<i64> = v.iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert_eq!(r.coefficient(&e), int(1));
        }
    }
}
