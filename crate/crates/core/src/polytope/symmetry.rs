use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed};

use super::LatticePolytope;
use crate::lattice_algebra::rational::{rank, solve};
use crate::lattice_algebra::{q_to_int, rank_and_det, to_q, IntMatrix, IntVector, QVector};
use crate::{Error, Result};

/// A finite group of unimodular matrices, sorted for deterministic output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    elements: Vec<IntMatrix>,
}

impl MatrixGroup {
    /// Closure of `generators` under multiplication. Every generator must
    /// have finite order.
    pub fn generated_by(dim: usize, generators: &[IntMatrix]) -> Self {
        let mut seen: BTreeSet<Vec<IntVector>> = BTreeSet::new();
        let id = IntMatrix::identity(dim);
        seen.insert(id.to_rows());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for s in generators {
                let h = &g * s;
                if seen.insert(h.to_rows()) {
                    frontier.push(h);
                }
            }
        }
        MatrixGroup {
            elements: seen
                .into_iter()
                .map(|rows| IntMatrix::from_rows(&rows, dim))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn contains(&self, g: &IntMatrix) -> bool {
        self.elements.contains(g)
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&(a * b))))
    }
}

impl LatticePolytope {
    /// Every unimodular `g` with `g · vertices = vertices`.
    ///
    /// A linearly independent vertex tuple is fixed; each injective choice
    /// of image vertices determines at most one candidate matrix.
    pub fn automorphisms(&self) -> Result<MatrixGroup> {
        let n = self.ambient_dim;
        let verts: Vec<QVector> = self.vertices.iter().map(|v| to_q(v)).collect();
        let mut basis: Vec<usize> = Vec::new();
        for i in 0..verts.len() {
            let mut trial: Vec<QVector> = basis.iter().map(|&b| verts[b].clone()).collect();
            trial.push(verts[i].clone());
            if rank(&trial, n) == trial.len() {
                basis.push(i);
                if basis.len() == n {
                    break;
                }
            }
        }
        if basis.len() < n {
            return Err(Error::NotFullDimensional {
                dim: basis.len(),
                ambient: n,
            });
        }
        // g B = I  ⇔  Bᵀ gᵀ = Iᵀ; solve row by row of g.
        let bt: Vec<QVector> = basis.iter().map(|&b| verts[b].clone()).collect();
        let vertex_set: BTreeSet<&IntVector> = self.vertices.iter().collect();
        let mut found = Vec::new();
        for images in (0..verts.len()).permutations(n) {
            let mut rows = Vec::with_capacity(n);
            let mut ok = true;
            #[allow(clippy::needless_range_loop)]
            for r in 0..n {
                let rhs: QVector = images.iter().map(|&j| verts[j][r].clone()).collect();
                let Some(row) = solve(&bt, &rhs, n).and_then(|x| q_to_int(&x)) else {
                    ok = false;
                    break;
                };
                rows.push(row);
            }
            if !ok {
                continue;
            }
            let g = IntMatrix::from_rows(&rows, n);
            if !rank_and_det(&g).1.is_some_and(|d| d.abs().is_one()) {
                continue;
            }
            if self
                .vertices
                .iter()
                .all(|v| vertex_set.contains(&g.mul_vec(v)))
            {
                found.push(g);
            }
        }
        found.sort_by_key(|g| g.to_rows());
        Ok(MatrixGroup { elements: found })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice_algebra::ivec;

    #[test]
    fn fixture_automorphisms() {
        let g = fixtures::polytope_p().automorphisms().unwrap();
        assert_eq!(g.order(), 4);
        let sigma = IntMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let tau = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(g.contains(&sigma));
        assert!(g.contains(&tau));
        assert!(g.contains(&(&sigma * &tau)));
        assert!(g.is_closed());
        assert_eq!(MatrixGroup::generated_by(3, &[sigma, tau]), g);
    }

    #[test]
    fn cube_has_48() {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(ivec(&[x, y, z]));
                }
            }
        }
        let g = LatticePolytope::hull(&pts)
            .unwrap()
            .automorphisms()
            .unwrap();
        assert_eq!(g.order(), 48);
    }

    #[test]
    fn asymmetric_simplex_is_rigid() {
        let verts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-2, -3, -5]];
        let p = LatticePolytope::from_i64(&verts.iter().map(|v| v.as_slice()).collect::<Vec<_>>())
            .unwrap();
        // oracle: a linear map permuting the vertices is fixed by the images
        // of e1, e2, e3; count the permutations whose map also sends the
        // fourth vertex correctly
        let mut count = 0;
        for perm in (0..4).permutations(4) {
            let cols: Vec<[i64; 3]> = perm[..3].iter().map(|&i| verts[i]).collect();
            let image: Vec<i64> = (0..3)
                .map(|r| cols.iter().zip(verts[3]).map(|(c, x)| c[r] * x).sum())
                .collect();
            if image == verts[perm[3]] {
                count += 1;
            }
        }
        assert_eq!(count, 1);
        let g = p.automorphisms().unwrap();
        assert_eq!(g.order(), count);
        assert!(g.contains(&IntMatrix::identity(3)));

        let swappable =
            LatticePolytope::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3], &[-1, -1, -1]])
                .unwrap();
        assert_eq!(swappable.automorphisms().unwrap().order(), 2);
    }
}
