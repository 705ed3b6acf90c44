//! Affine toric charts: cones over faces of a Fano polytope, their duals,
//! Hilbert bases, cyclic quotient types, Gorenstein data and binomial
//! hypersurface presentations.
//!
//! Cones that are not full-dimensional are handled in intrinsic
//! coordinates: a basis of the saturated lattice `span(C) ∩ Zⁿ` is fixed
//! once at construction and every computation that needs a full-dimensional
//! cone runs there.

mod atlas;
mod hilbert;
mod presentation;

pub use atlas::{chart_atlas, cone_over_face, ChartAtlas, ChartEntry, ChartKind, ChartReport};
pub use presentation::{binomial_presentation, Binomial, ChartPresentation, PresentationVariable};

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::lattice_algebra::rational::{kernel, rank, solve};
use crate::lattice_algebra::{
    clear_denominators, dot, is_zero_vec, kernel_basis, primitive, smith_normal_form,
    solve_integer, to_q, IntMatrix, IntVector, Integer, QVector, Rational,
};
use crate::{Error, Result};

/// A pointed rational polyhedral cone, stored by its primitive extremal
/// rays in lexicographic order.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IntVector>,
    /// Rows: basis of `span(C) ∩ Zⁿ`.
    basis: IntMatrix,
    /// Rays in the coordinates of `basis`.
    local_rays: Vec<IntVector>,
    /// Inward primitive facet normals, in the coordinates of `basis`.
    local_normals: Vec<IntVector>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Cone {
    /// Cone generated by `generators`; zero vectors are ignored and
    /// redundant generators dropped.
    pub fn new(ambient_dim: usize, generators: &[IntVector]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        let gens: Vec<IntVector> = generators
            .iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| primitive(g))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let basis = lattice_basis(ambient_dim, &gens);
        let k = basis.nrows();
        let local: Vec<IntVector> = gens.iter().map(|g| coordinates_in(&basis, g)).collect();
        let normals = inward_normals(k, &local);
        let nq: Vec<QVector> = normals.iter().map(|u| to_q(u)).collect();
        if k > 0 && rank(&nq, k) < k {
            return Err(Error::NotPointed);
        }
        let keep: Vec<usize> = (0..gens.len())
            .filter(|&i| {
                let on: Vec<QVector> = normals
                    .iter()
                    .filter(|u| dot(u, &local[i]).is_zero())
                    .map(|u| to_q(u))
                    .collect();
                rank(&on, k) + 1 == k
            })
            .collect();
        Ok(Cone {
            ambient_dim,
            rays: keep.iter().map(|&i| gens[i].clone()).collect(),
            basis,
            local_rays: keep.iter().map(|&i| local[i].clone()).collect(),
            local_normals: normals,
        })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Self> {
        let n = rays.first().map_or(0, |r| r.len());
        let gens: Vec<IntVector> = rays
            .iter()
            .map(|r| crate::lattice_algebra::ivec(r))
            .collect();
        Self::new(n, &gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Basis of `span(C) ∩ Zⁿ`, one vector per row.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Rays expressed in the basis returned by [`Cone::lattice_basis`].
    pub fn local_rays(&self) -> &[IntVector] {
        &self.local_rays
    }

    /// Inward primitive facet normals, sorted. Requires a full-dimensional
    /// cone.
    pub fn facet_normals(&self) -> Result<Vec<IntVector>> {
        self.require_full()?;
        Ok(self.local_normals.clone())
    }

    fn require_full(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::NotFullDimensional {
                dim: self.dim(),
                ambient: self.ambient_dim,
            })
        }
    }

    /// The cone spanned by the local rays, as a full-dimensional cone in
    /// `Zᵏ`.
    pub fn local_cone(&self) -> Cone {
        let k = self.dim();
        Cone {
            ambient_dim: k,
            rays: self.local_rays.clone(),
            basis: IntMatrix::identity(k),
            local_rays: self.local_rays.clone(),
            local_normals: self.local_normals.clone(),
        }
    }

    pub fn contains(&self, x: &[Integer]) -> bool {
        let Some(c) = self.local_coordinates(x) else {
            return false;
        };
        self.local_normals.iter().all(|u| !dot(u, &c).is_negative())
    }

    /// Coordinates of a lattice point of `span(C)` in the basis of
    /// [`Cone::lattice_basis`].
    pub fn local_coordinates(&self, x: &[Integer]) -> Option<IntVector> {
        if x.len() != self.ambient_dim {
            return None;
        }
        let c = solve_integer(&self.basis.transpose(), x)?;
        (self.basis.transpose().mul_vec(&c) == x).then_some(c)
    }

    /// `{m : ⟨m, x⟩ ≥ 0 for all x ∈ C}`.
    pub fn dual(&self) -> Result<Cone> {
        self.require_full()?;
        Cone::new(self.ambient_dim, &self.local_normals)
    }

    /// Whether the rays extend to a basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && unimodular_rows(&self.local_rays)
    }

    /// Gorenstein degree and index, computed in intrinsic coordinates.
    pub fn gorenstein_data(&self) -> Result<GorensteinData> {
        let k = self.dim();
        let rows: Vec<QVector> = self.local_rays.iter().map(|r| to_q(r)).collect();
        let ones = vec![Rational::one(); rows.len()];
        let m = solve(&rows, &ones, k).ok_or(Error::NotQGorenstein)?;
        if rank(&rows, k) < k {
            return Err(Error::NotQGorenstein);
        }
        let index = m.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        Ok(GorensteinData {
            gorenstein: index.is_one(),
            degree: self.is_full_dimensional().then_some(m),
            index,
        })
    }

    /// Cyclic quotient type of a simplicial cone.
    pub fn quotient_type(&self) -> Result<QuotientType> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        let k = self.dim();
        let a = IntMatrix::from_rows(&self.local_rays, k).transpose();
        let snf = smith_normal_form(&a);
        let factors = snf.invariant_factors();
        if factors[..k.saturating_sub(1)].iter().any(|d| !d.is_one()) {
            return Err(Error::NonCyclicQuotient(
                factors.iter().map(ToString::to_string).collect(),
            ));
        }
        let r = factors.last().cloned().unwrap_or_else(Integer::one);
        if r.is_one() {
            return Ok(QuotientType {
                r,
                weights: vec![Integer::zero(); k],
            });
        }
        let mut e = vec![Integer::zero(); k];
        e[k - 1] = Integer::one();
        let x = solve_integer(&snf.left, &e).expect("unimodular");
        let rows: Vec<QVector> = a.to_rows().iter().map(|r| to_q(r)).collect();
        let lambda = solve(&rows, &to_q(&x), k).expect("nonsingular");
        let rq = Rational::from_integer(r.clone());
        let weights: Vec<Integer> = lambda
            .iter()
            .map(|l| (l * &rq).to_integer().mod_floor(&r))
            .collect();
        Ok(QuotientType::canonical(r, &weights))
    }

    /// Hilbert basis of the monoid `C ∩ Zⁿ`, sorted.
    pub fn hilbert_basis(&self) -> Vec<IntVector> {
        let mut out: Vec<IntVector> =
            hilbert::local_hilbert_basis(&self.local_rays, &self.local_normals)
                .iter()
                .map(|c| self.basis.transpose().mul_vec(c))
                .collect();
        out.sort();
        out
    }

    /// Whether every lattice point of `conv(0, rays)` is the origin or a
    /// ray.
    pub fn is_terminal(&self) -> bool {
        let mut pts = self.local_rays.clone();
        pts.push(vec![Integer::zero(); self.dim()]);
        let Ok(p) = crate::LatticePolytope::hull(&pts) else {
            return false;
        };
        p.lattice_points().len() == self.local_rays.len() + 1
    }

    /// Proper faces of dimension ≥ 2, each as a list of ray indices.
    pub fn proper_faces(&self) -> Vec<Vec<usize>> {
        let k = self.dim();
        if k < 3 {
            return Vec::new();
        }
        let g = self.cross_section();
        g.faces()
            .into_iter()
            .filter(|f| f.dim >= 1 && f.dim + 2 <= k)
            .map(|f| f.vertices)
            .collect()
    }

    /// Whether every proper face of dimension ≥ 2 is smooth.
    pub fn is_isolated(&self) -> bool {
        self.proper_faces().iter().all(|f| {
            let rays: Vec<IntVector> = f.iter().map(|&i| self.local_rays[i].clone()).collect();
            let q: Vec<QVector> = rays.iter().map(|r| to_q(r)).collect();
            rank(&q, self.dim()) == rays.len() && unimodular_rows(&rays)
        })
    }

    /// Lattice lengths of the edges of `conv(rays)`.
    pub fn base_edge_lengths(&self) -> Vec<Integer> {
        if self.dim() < 2 {
            return Vec::new();
        }
        let pts: Vec<IntVector> = self.rays.clone();
        let Ok(p) = crate::LatticePolytope::hull(&pts) else {
            return Vec::new();
        };
        p.edge_lattice_lengths().into_values().collect()
    }

    /// Points `ray / ⟨g, ray⟩` for a grading `g` positive on the cone.
    fn cross_section(&self) -> crate::polytope::Geometry {
        let k = self.dim();
        let mut g = vec![Integer::zero(); k];
        for u in &self.local_normals {
            for (a, b) in g.iter_mut().zip(u) {
                *a += b;
            }
        }
        let pts: Vec<QVector> = self
            .local_rays
            .iter()
            .map(|r| {
                let h = Rational::from_integer(dot(&g, r));
                to_q(r).into_iter().map(|x| x / &h).collect()
            })
            .collect();
        crate::polytope::Geometry::new(pts)
    }
}

fn lattice_basis(n: usize, gens: &[IntVector]) -> IntMatrix {
    if gens.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    let perp = kernel_basis(&IntMatrix::from_rows(gens, n));
    if perp.nrows() == 0 {
        return IntMatrix::identity(n);
    }
    kernel_basis(&perp)
}

fn coordinates_in(basis: &IntMatrix, x: &[Integer]) -> IntVector {
    solve_integer(&basis.transpose(), x).expect("generator lies in its own span")
}

/// Inward primitive normals of the facets of the full-dimensional cone in
/// `Zᵏ` spanned by `gens`. Empty if the cone is not pointed.
fn inward_normals(k: usize, gens: &[IntVector]) -> Vec<IntVector> {
    let mut out = BTreeSet::new();
    let q: Vec<QVector> = gens.iter().map(|g| to_q(g)).collect();
    for subset in (0..gens.len()).combinations(k.saturating_sub(1)) {
        let rows: Vec<QVector> = subset.iter().map(|&i| q[i].clone()).collect();
        let ker = kernel(&rows, k);
        if ker.len() != 1 {
            continue;
        }
        let u = clear_denominators(&ker[0]);
        let vals: Vec<Integer> = gens.iter().map(|g| dot(&u, g)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            out.insert(u);
        } else if vals.iter().all(|v| !v.is_positive()) {
            out.insert(u.iter().map(|x| -x).collect());
        }
    }
    out.into_iter().collect()
}

/// Whether the rows extend to a lattice basis (all invariant factors 1).
fn unimodular_rows(rows: &[IntVector]) -> bool {
    let k = rows.first().map_or(0, |r| r.len());
    let snf = smith_normal_form(&IntMatrix::from_rows(rows, k));
    snf.invariant_factors().iter().all(One::is_one)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinData {
    pub gorenstein: bool,
    /// The `m` with `⟨m, ray⟩ = 1` on every ray; only for full-dimensional
    /// cones, where it is unique.
    pub degree: Option<QVector>,
    pub index: Integer,
}

/// Cyclic quotient `1/r(a₁,…,aₖ)`, canonicalized: weights reduced mod `r`,
/// sorted, and lexicographically minimal over rescalings by units mod `r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuotientType {
    pub r: Integer,
    pub weights: Vec<Integer>,
}

impl QuotientType {
    pub fn canonical(r: Integer, weights: &[Integer]) -> Self {
        let mut best: Option<Vec<Integer>> = None;
        let mut k = Integer::one();
        loop {
            if k.gcd(&r).is_one() {
                let mut w: Vec<Integer> = weights.iter().map(|a| (a * &k).mod_floor(&r)).collect();
                w.sort();
                if best.as_ref().is_none_or(|b| w < *b) {
                    best = Some(w);
                }
            }
            k += 1;
            if k >= r {
                break;
            }
        }
        QuotientType {
            r,
            weights: best.unwrap_or_default(),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.r.is_one()
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}({})", self.r, self.weights.iter().join(","))
    }
}

impl Serialize for QuotientType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
