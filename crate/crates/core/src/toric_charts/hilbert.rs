//! Hilbert bases of pointed full-dimensional cones in `Zᵏ`.
//!
//! The cone is triangulated without new rays. Every irreducible element is
//! either a ray or a nonzero lattice point of the half-open fundamental
//! parallelepiped of some simplex, and those points are listed exactly via
//! the Smith form of the simplex's ray matrix. Reducible candidates are then
//! discarded.

use num_traits::{Signed, Zero};

use crate::lattice_algebra::rational::solve;
use crate::lattice_algebra::{
    dot, is_zero_vec, smith_normal_form, solve_integer, sub, to_q, IntMatrix, IntVector, Integer,
    QVector, Rational,
};

pub(super) fn local_hilbert_basis(rays: &[IntVector], normals: &[IntVector]) -> Vec<IntVector> {
    let Some(k) = rays.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut candidates: Vec<IntVector> = rays.to_vec();
    for simplex in triangulate(rays, normals) {
        let sr: Vec<IntVector> = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(&sr, k));
    }
    candidates.sort();
    candidates.dedup();
    let inside = |x: &IntVector| normals.iter().all(|u| !dot(u, x).is_negative());
    candidates
        .iter()
        .filter(|x| !candidates.iter().any(|y| y != *x && inside(&sub(x, y))))
        .cloned()
        .collect()
}

/// Maximal simplices (as ray index lists) of a triangulation using only the
/// given rays.
pub(super) fn triangulate(rays: &[IntVector], normals: &[IntVector]) -> Vec<Vec<usize>> {
    let k = rays[0].len();
    if rays.len() == k {
        return vec![(0..k).collect()];
    }
    let mut g = vec![Integer::zero(); k];
    for u in normals {
        for (a, b) in g.iter_mut().zip(u) {
            *a += b;
        }
    }
    let pts: Vec<QVector> = rays
        .iter()
        .map(|r| {
            let h = Rational::from_integer(dot(&g, r));
            to_q(r).into_iter().map(|x| x / &h).collect()
        })
        .collect();
    crate::polytope::Geometry::new(pts).triangulate()
}

/// Nonzero lattice points `Σ λᵢ rᵢ` with every `λᵢ ∈ [0, 1)`.
fn parallelepiped_points(rays: &[IntVector], k: usize) -> Vec<IntVector> {
    let a = IntMatrix::from_rows(rays, k).transpose();
    let snf = smith_normal_form(&a);
    let d = snf.invariant_factors();
    let inv_cols: Vec<IntVector> = (0..k)
        .map(|j| {
            let mut e = vec![Integer::zero(); k];
            e[j] = Integer::from(1);
            solve_integer(&snf.left, &e).expect("unimodular")
        })
        .collect();
    let a_rows: Vec<QVector> = a.to_rows().iter().map(|r| to_q(r)).collect();
    let mut out = Vec::new();
    let mut y = vec![Integer::zero(); k];
    loop {
        let mut x = vec![Integer::zero(); k];
        for (yj, col) in y.iter().zip(&inv_cols) {
            for (xi, c) in x.iter_mut().zip(col) {
                *xi += yj * c;
            }
        }
        let lambda = solve(&a_rows, &to_q(&x), k).expect("simplex rays are independent");
        let frac_q: QVector = lambda.iter().map(|l| l - l.floor()).collect();
        let exact: QVector = (0..k)
            .map(|c| {
                frac_q
                    .iter()
                    .zip(rays)
                    .map(|(f, r)| f * Rational::from_integer(r[c].clone()))
                    .sum()
            })
            .collect();
        let p: IntVector = exact.iter().map(|v| v.to_integer()).collect();
        if !is_zero_vec(&p) {
            out.push(p);
        }
        let mut c = 0;
        loop {
            if c == k {
                return out;
            }
            y[c] += 1;
            if y[c] < d[c].abs() {
                break;
            }
            y[c] = Integer::zero();
            c += 1;
        }
    }
}
