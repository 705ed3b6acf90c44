//! Built-in data: the centrally symmetric canonical Fano polytope with ten
//! vertices and the objects derived from it.

use crate::deformation::{
    build_group_action, ActionGenerator, GroupAction, HullPresentation, HullVariable,
};
use crate::lattice_algebra::{ivec, IntMatrix};
use crate::period::LaurentPolynomial;
use crate::polytope::LatticePolytope;

/// The pentagon `a, b, c, d, e` at height 1.
pub const PENTAGON: [[i64; 3]; 5] = [[1, 0, 1], [1, 1, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]];

/// `conv(±a, ±b, ±c, ±d, ±e)`.
pub fn polytope_p() -> LatticePolytope {
    let mut pts = Vec::new();
    for v in PENTAGON {
        pts.push(ivec(&v));
        pts.push(ivec(&[-v[0], -v[1], -v[2]]));
    }
    LatticePolytope::hull(&pts).expect("fixture polytope is valid")
}

/// `C⟦t₁…t₈⟧/(t₁², t₁t₂, t₃², t₃t₄)` with the weights of `H⁰` of the qG-T¹
/// sheaf of the toric 3-fold of [`polytope_p`].
pub fn hull_a() -> HullPresentation {
    let weights: [[i64; 3]; 8] = [
        [0, 0, 1],
        [0, 0, 1],
        [0, 0, -1],
        [0, 0, -1],
        [-1, 1, 0],
        [-2, 2, 0],
        [1, -1, 0],
        [2, -2, 0],
    ];
    let variables = weights
        .iter()
        .enumerate()
        .map(|(i, w)| HullVariable::new(&format!("t{}", i + 1), ivec(w), 1))
        .collect();
    let mut ideal = Vec::new();
    for (a, b) in [(0, 0), (0, 1), (2, 2), (2, 3)] {
        let mut e = vec![0; 8];
        e[a] += 1;
        e[b] += 1;
        ideal.push(e);
    }
    HullPresentation::new(variables, ideal).expect("fixture hull is valid")
}

/// The involutions `σ = −id` and `τ` swapping the first two coordinates of
/// N, with their permutations of `t₁…t₈`.
pub fn action_generators_g() -> Vec<ActionGenerator> {
    vec![
        ActionGenerator {
            matrix: IntMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            permutation: vec![2, 3, 0, 1, 6, 7, 4, 5],
        },
        ActionGenerator {
            matrix: IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
            permutation: vec![0, 1, 2, 3, 6, 7, 4, 5],
        },
    ]
}

pub fn action_g() -> GroupAction {
    build_group_action(&hull_a(), &action_generators_g()).expect("fixture action is valid")
}

/// `C⟦u₁…u₆⟧/(u₁², u₂², u₁u₂, u₁u₃, u₂u₃)` with `u₄` in degree 3 and the
/// others in degree 2.
pub fn claimed_invariant_ring() -> HullPresentation {
    let variables = [2, 2, 2, 3, 2, 2]
        .iter()
        .enumerate()
        .map(|(i, &d)| HullVariable::new(&format!("u{}", i + 1), ivec(&[0, 0, 0]), d))
        .collect();
    let ideal = [(0, 0), (1, 1), (0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| {
            let mut e = vec![0; 6];
            e[a] += 1;
            e[b] += 1;
            e
        })
        .collect();
    HullPresentation::new(variables, ideal).expect("fixture ring is valid")
}

/// `(x + y + xy)(1 + x⁻¹y⁻¹)z + (x⁻¹ + y⁻¹ + x⁻¹y⁻¹)(1 + xy)z⁻¹`, a
/// Laurent polynomial with Newton polytope [`polytope_p`].
pub fn laurent_f() -> LaurentPolynomial {
    let p = |e: &[&[i64]]| LaurentPolynomial::from_exponents(3, e).expect("three variables");
    let up = p(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])
        .multiply(&p(&[&[0, 0, 0], &[-1, -1, 0]]))
        .and_then(|q| q.multiply(&p(&[&[0, 0, 1]])));
    let down = p(&[&[-1, 0, 0], &[0, -1, 0], &[-1, -1, 0]])
        .multiply(&p(&[&[0, 0, 0], &[1, 1, 0]]))
        .and_then(|q| q.multiply(&p(&[&[0, 0, -1]])));
    up.and_then(|u| u.add(&down?)).expect("three variables")
}
