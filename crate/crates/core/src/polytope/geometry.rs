//! Exact convex-hull kernel shared by lattice and rational polytopes.
//!
//! Points are first projected onto a coordinate subset on which the affine
//! hull maps isomorphically; supporting hyperplanes are then found by
//! enumerating affinely independent point tuples.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::lattice_algebra::rational::{kernel, rank, rref};
use crate::lattice_algebra::{clear_denominators, dot_q, IntVector, QVector, Rational};

/// Supporting inequality `⟨normal, x⟩ ≤ level` together with the indices of
/// the points attaining equality.
#[derive(Clone, Debug)]
pub(crate) struct RawFacet {
    pub normal: QVector,
    pub level: Rational,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    /// Indices into the polytope's vertex list, ascending.
    pub vertices: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Geometry {
    pub points: Vec<QVector>,
    pub affine_dim: usize,
    /// `⟨a, x⟩ = b` cutting out the affine hull.
    pub equations: Vec<(QVector, Rational)>,
    pub facets: Vec<RawFacet>,
}

pub(crate) fn affine_rank(points: &[QVector], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let base = &points[idx[0]];
    let diffs: Vec<QVector> = idx[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    rank(&diffs, base.len())
}

impl Geometry {
    /// Hull data for a nonempty set of distinct points.
    pub fn new(points: Vec<QVector>) -> Self {
        let n = points[0].len();
        let base = points[0].clone();
        let diffs: Vec<QVector> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&base).map(|(x, y)| x - y).collect())
            .collect();
        let (_, coords) = rref(&diffs, n);
        let k = coords.len();

        let equations = kernel(&diffs, n)
            .into_iter()
            .map(|a| {
                let b = dot_q(&a, &base);
                (a, b)
            })
            .collect();

        let projected: Vec<QVector> = points
            .iter()
            .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
            .collect();

        let mut facets = Vec::new();
        if k >= 1 {
            let mut seen = BTreeSet::new();
            for tuple in (0..points.len()).combinations(k) {
                let rows: Vec<QVector> = tuple
                    .iter()
                    .map(|&i| {
                        let mut r = projected[i].clone();
                        r.push(-Rational::from_integer(1.into()));
                        r
                    })
                    .collect();
                let ker = kernel(&rows, k + 1);
                if ker.len() != 1 {
                    continue;
                }
                let key: IntVector = clear_denominators(&ker[0]);
                let (a, b) = key.split_at(k);
                let a: QVector = a.iter().cloned().map(Rational::from_integer).collect();
                let b = Rational::from_integer(b[0].clone());
                let sides: Vec<Rational> = projected.iter().map(|p| dot_q(&a, p) - &b).collect();
                let (a, b, sides) = if sides.iter().any(|s| s.is_positive()) {
                    if sides.iter().any(|s| s.is_negative()) {
                        continue;
                    }
                    let a: QVector = a.iter().map(|x| -x).collect();
                    let s: Vec<Rational> = sides.iter().map(|x| -x).collect();
                    (a, -b, s)
                } else {
                    (a, b, sides)
                };
                if !seen.insert((a.clone(), b.clone())) {
                    continue;
                }
                let on: Vec<usize> = sides
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_zero())
                    .map(|(i, _)| i)
                    .collect();
                let mut normal = vec![Rational::zero(); n];
                for (c, v) in coords.iter().zip(a) {
                    normal[*c] = v;
                }
                facets.push(RawFacet {
                    normal,
                    level: b,
                    vertices: on,
                });
            }
        }
        Geometry {
            points,
            affine_dim: k,
            equations,
            facets,
        }
    }

    /// Indices of the extreme points.
    pub fn extreme_points(&self) -> Vec<usize> {
        if self.affine_dim == 0 {
            return vec![0];
        }
        (0..self.points.len())
            .filter(|&i| {
                let normals: Vec<QVector> = self
                    .facets
                    .iter()
                    .filter(|f| f.vertices.contains(&i))
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&normals, self.points[0].len()) == self.affine_dim
            })
            .collect()
    }

    /// Whether `x` lies in the hull.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot_q(a, x) == *b)
            && self.facets.iter().all(|f| dot_q(&f.normal, x) <= f.level)
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_relative_interior(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot_q(a, x) == *b)
            && self.facets.iter().all(|f| dot_q(&f.normal, x) < f.level)
    }

    /// All faces (including the polytope itself), sorted by dimension and
    /// then vertex set.
    pub fn faces(&self) -> Vec<Face> {
        let all: BTreeSet<usize> = (0..self.points.len()).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        found.insert(all);
        let mut frontier: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| f.vertices.iter().copied().collect())
            .collect();
        let facet_sets = frontier.clone();
        while let Some(face) = frontier.pop() {
            if face.is_empty() || !found.insert(face.clone()) {
                continue;
            }
            for f in &facet_sets {
                let meet: BTreeSet<usize> = face.intersection(f).copied().collect();
                if !meet.is_empty() && !found.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|s| {
                let vertices: Vec<usize> = s.into_iter().collect();
                let dim = affine_rank(&self.points, &vertices);
                Face { vertices, dim }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    /// Pulling triangulation: every maximal simplex as a list of
    /// `affine_dim + 1` point indices.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        let faces = self.faces();
        let mut by_dim: BTreeMap<usize, Vec<&Face>> = BTreeMap::new();
        for f in &faces {
            by_dim.entry(f.dim).or_default().push(f);
        }
        let top = faces.last().expect("nonempty polytope has a top face");
        triangulate_face(top, &by_dim)
    }
}

fn triangulate_face(face: &Face, by_dim: &BTreeMap<usize, Vec<&Face>>) -> Vec<Vec<usize>> {
    if face.dim == 0 {
        return vec![vec![face.vertices[0]]];
    }
    let apex = face.vertices[0];
    let mut out = Vec::new();
    let subfaces = by_dim
        .get(&(face.dim - 1))
        .map(Vec::as_slice)
        .unwrap_or(&[]);
    for sub in subfaces {
        if sub.vertices.contains(&apex) || !sub.vertices.iter().all(|v| face.vertices.contains(v)) {
            continue;
        }
        for mut simplex in triangulate_face(sub, by_dim) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}
