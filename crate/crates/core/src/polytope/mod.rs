//! Lattice and rational polytopes.
//!
//! A [`Polytope`] stores its vertices deduplicated and in lexicographic
//! order, together with the exact hull data (supporting hyperplanes and
//! faces) computed at construction. Polar duality uses the convention
//! `{m : ⟨m, x⟩ ≤ 1 for all x ∈ P}`.

mod classify;
mod geometry;
mod json;
pub use json::JsonCoordinate;
mod symmetry;

pub use classify::{FanoReport, KPolystability};
pub use geometry::Face;
pub use symmetry::MatrixGroup;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::lattice_algebra::{
    clear_denominators, dot_iq, gcd_all, sub, to_q, IntMatrix, IntVector, Integer, QVector,
    Rational,
};
use crate::{Error, Result};
pub(crate) use geometry::Geometry;

/// Largest ambient dimension accepted by [`Polytope::hull`].
pub const MAX_HULL_DIM: usize = 4;

/// Coordinate ring of a polytope: integers for lattice polytopes, rationals
/// for rational ones.
pub trait Coordinate: Clone + Ord + fmt::Debug + fmt::Display {
    fn to_rational(&self) -> Rational;
    fn from_rational(q: &Rational) -> Option<Self>;
}

impl Coordinate for Integer {
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        q.is_integer().then(|| q.to_integer())
    }
}

impl Coordinate for Rational {
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
}

#[derive(Clone)]
pub struct Polytope<T: Coordinate> {
    ambient_dim: usize,
    vertices: Vec<Vec<T>>,
    geometry: Option<Geometry>,
}

pub type LatticePolytope = Polytope<Integer>;
pub type RationalPolytope = Polytope<Rational>;

/// Supporting inequality `⟨normal, x⟩ ≤ level` of a facet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Facet {
    /// Primitive outer normal in the dual lattice.
    #[serde(serialize_with = "crate::serde_util::int_vec")]
    pub normal: IntVector,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub level: Rational,
    /// Indices into [`Polytope::vertices`].
    pub vertex_indices: Vec<usize>,
}

impl<T: Coordinate> PartialEq for Polytope<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl<T: Coordinate> Eq for Polytope<T> {}

impl<T: Coordinate> fmt::Debug for Polytope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("ambient_dim", &self.ambient_dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl<T: Coordinate> Polytope<T> {
    /// Convex hull of `points`, keeping only the extreme points.
    pub fn hull(points: &[Vec<T>]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty)?;
        let n = first.len();
        Self::hull_in(n, points)
    }

    /// Like [`Polytope::hull`], but accepts an empty point list.
    pub fn hull_in(ambient_dim: usize, points: &[Vec<T>]) -> Result<Self> {
        if ambient_dim > MAX_HULL_DIM {
            return Err(Error::UnsupportedDimension(ambient_dim));
        }
        if let Some(bad) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        let mut pts: Vec<Vec<T>> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Ok(Polytope {
                ambient_dim,
                vertices: Vec::new(),
                geometry: None,
            });
        }
        let q: Vec<QVector> = pts
            .iter()
            .map(|p| p.iter().map(Coordinate::to_rational).collect())
            .collect();
        let g = Geometry::new(q);
        let keep = g.extreme_points();
        let vertices: Vec<Vec<T>> = keep.iter().map(|&i| pts[i].clone()).collect();
        let geometry = if keep.len() == pts.len() {
            g
        } else {
            Geometry::new(keep.iter().map(|&i| g.points[i].clone()).collect())
        };
        Ok(Polytope {
            ambient_dim,
            vertices,
            geometry: Some(geometry),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.geometry.as_ref().map(|g| g.affine_dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.ambient_dim)
    }

    fn full_geometry(&self) -> Result<&Geometry> {
        match &self.geometry {
            Some(g) if g.affine_dim == self.ambient_dim => Ok(g),
            Some(g) => Err(Error::NotFullDimensional {
                dim: g.affine_dim,
                ambient: self.ambient_dim,
            }),
            None => Err(Error::Empty),
        }
    }

    pub fn rational_vertices(&self) -> Vec<QVector> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(Coordinate::to_rational).collect())
            .collect()
    }

    pub fn vertex_index(&self, v: &[T]) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).ok()
    }

    /// Complete irredundant facet list, sorted by normal.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        let g = self.full_geometry()?;
        let mut out: Vec<Facet> = g
            .facets
            .iter()
            .map(|f| {
                let normal = clear_denominators(&f.normal);
                let level = dot_iq(&normal, &g.points[f.vertices[0]]);
                Facet {
                    normal,
                    level,
                    vertex_indices: f.vertices.clone(),
                }
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// All nonempty faces, including the polytope itself, sorted by
    /// dimension.
    pub fn faces(&self) -> Vec<Face> {
        self.geometry
            .as_ref()
            .map(Geometry::faces)
            .unwrap_or_default()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim == 1)
            .map(|f| (f.vertices[0], f.vertices[1]))
            .collect()
    }

    /// Whether the given vertex set (as indices) is exactly the vertex set
    /// of some face.
    pub fn is_face(&self, vertex_indices: &[usize]) -> bool {
        let mut want = vertex_indices.to_vec();
        want.sort_unstable();
        want.dedup();
        self.faces().iter().any(|f| f.vertices == want)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.geometry.as_ref().is_some_and(|g| g.contains(x))
    }

    pub fn contains_in_interior(&self, x: &[Rational]) -> bool {
        self.is_full_dimensional()
            && self
                .geometry
                .as_ref()
                .is_some_and(|g| g.contains_relative_interior(x))
    }

    pub fn origin_is_interior(&self) -> bool {
        self.contains_in_interior(&vec![Rational::zero(); self.ambient_dim])
    }

    /// Polar body `{m : ⟨m, x⟩ ≤ 1 ∀x ∈ P}`.
    pub fn polar(&self) -> Result<RationalPolytope> {
        let facets = self.facets()?;
        if facets.iter().any(|f| !f.level.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let verts: Vec<QVector> = facets
            .iter()
            .map(|f| {
                f.normal
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &f.level)
                    .collect()
            })
            .collect();
        RationalPolytope::hull(&verts)
    }

    /// Simplices (as vertex-index tuples) of a pulling triangulation.
    pub fn triangulation(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self.full_geometry()?.triangulate())
    }

    /// n! times the Euclidean volume.
    pub fn normalized_volume(&self) -> Result<Rational> {
        let g = self.full_geometry()?;
        Ok(g.triangulate()
            .iter()
            .map(|s| simplex_volume(&g.points, s))
            .sum())
    }

    pub fn barycentre(&self) -> Result<QVector> {
        let g = self.full_geometry()?;
        let n = self.ambient_dim;
        let mut total = Rational::zero();
        let mut acc = vec![Rational::zero(); n];
        for s in g.triangulate() {
            let w = simplex_volume(&g.points, &s);
            let k = Rational::from_integer(Integer::from(s.len()));
            for (c, a) in acc.iter_mut().enumerate() {
                let centroid: Rational =
                    s.iter().map(|&i| g.points[i][c].clone()).sum::<Rational>() / &k;
                *a += &w * centroid;
            }
            total += w;
        }
        Ok(acc.into_iter().map(|a| a / &total).collect())
    }

    /// All lattice points, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let Some(g) = &self.geometry else {
            return Vec::new();
        };
        let n = self.ambient_dim;
        let ranges: Vec<(Integer, Integer)> = (0..n)
            .map(|c| {
                let lo = g.points.iter().map(|p| p[c].clone()).min().unwrap();
                let hi = g.points.iter().map(|p| p[c].clone()).max().unwrap();
                (lo.ceil().to_integer(), hi.floor().to_integer())
            })
            .collect();
        let mut out = Vec::new();
        let mut cur: IntVector = ranges.iter().map(|r| r.0.clone()).collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return out;
        }
        loop {
            if g.contains(&to_q(&cur)) {
                out.push(cur.clone());
            }
            let mut c = n;
            loop {
                if c == 0 {
                    return out;
                }
                c -= 1;
                if cur[c] < ranges[c].1 {
                    cur[c] += 1;
                    for (d, r) in ranges.iter().enumerate().skip(c + 1) {
                        cur[d] = r.0.clone();
                    }
                    break;
                }
            }
            if n == 0 {
                return out;
            }
        }
    }

    /// Intersection with the hyperplane `x[axis] = level`.
    pub fn slice(&self, axis: usize, level: &Rational) -> Result<RationalPolytope> {
        if axis >= self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: axis,
            });
        }
        let Some(g) = &self.geometry else {
            return RationalPolytope::hull_in(self.ambient_dim, &[]);
        };
        let mut pts: Vec<QVector> = g
            .points
            .iter()
            .filter(|p| p[axis] == *level)
            .cloned()
            .collect();
        for f in g.faces().iter().filter(|f| f.dim == 1) {
            let (u, v) = (&g.points[f.vertices[0]], &g.points[f.vertices[1]]);
            let (du, dv) = (&u[axis] - level, &v[axis] - level);
            if (du.is_positive() && dv.is_negative()) || (du.is_negative() && dv.is_positive()) {
                let t = (level - &u[axis]) / (&v[axis] - &u[axis]);
                pts.push(u.iter().zip(v).map(|(a, b)| a + (b - a) * &t).collect());
            }
        }
        RationalPolytope::hull_in(self.ambient_dim, &pts)
    }

    /// Image under `x ↦ g x`.
    pub fn transform(&self, g: &IntMatrix) -> Result<Self> {
        let pts: Vec<Vec<T>> = self
            .rational_vertices()
            .iter()
            .map(|v| {
                (0..g.nrows())
                    .map(|i| T::from_rational(&dot_iq(g.row(i), v)).expect("closed under Z-maps"))
                    .collect()
            })
            .collect();
        Self::hull_in(g.nrows(), &pts)
    }
}

fn simplex_volume(points: &[QVector], s: &[usize]) -> Rational {
    let base = &points[s[0]];
    let rows: Vec<QVector> = s[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    crate::lattice_algebra::rational::det(&rows).abs()
}

impl LatticePolytope {
    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<IntVector> = points
            .iter()
            .map(|p| crate::lattice_algebra::ivec(p))
            .collect();
        Self::hull(&pts)
    }

    /// Lattice length of every edge, keyed by vertex-index pair.
    pub fn edge_lattice_lengths(&self) -> BTreeMap<(usize, usize), Integer> {
        self.edges()
            .into_iter()
            .map(|(a, b)| {
                let d = sub(&self.vertices[b], &self.vertices[a]);
                ((a, b), gcd_all(&d))
            })
            .collect()
    }

    pub fn to_rational(&self) -> RationalPolytope {
        Polytope {
            ambient_dim: self.ambient_dim,
            vertices: self.rational_vertices(),
            geometry: self.geometry.clone(),
        }
    }

    /// Whether every vertex is primitive.
    pub fn has_primitive_vertices(&self) -> bool {
        self.vertices.iter().all(|v| gcd_all(v) == Integer::from(1))
    }
}

impl RationalPolytope {
    /// The polytope as a lattice polytope, if all vertices are integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        let vertices: Option<Vec<IntVector>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(Integer::from_rational).collect())
            .collect();
        Some(Polytope {
            ambient_dim: self.ambient_dim,
            vertices: vertices?,
            geometry: self.geometry.clone(),
        })
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }
}

/// Smallest common denominator of the coordinates.
pub fn denominator_lcm(v: &[Rational]) -> Integer {
    v.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice_algebra::{ivec, rat};

    fn qv(v: &[(i64, i64)]) -> QVector {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn cube() -> LatticePolytope {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(ivec(&[x, y, z]));
                }
            }
        }
        LatticePolytope::hull(&pts).unwrap()
    }

    #[test]
    fn hull_discards_interior_points() {
        let mut pts = cube().vertices().to_vec();
        pts.push(ivec(&[0, 0, 0]));
        pts.push(ivec(&[1, 0, 0]));
        let p = LatticePolytope::hull(&pts).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert!(p.is_full_dimensional());
    }

    #[test]
    fn single_point_and_mismatch() {
        let p = LatticePolytope::from_i64(&[&[3, 4]]).unwrap();
        assert_eq!(p.dim(), Some(0));
        assert_eq!(p.vertices().len(), 1);
        let err = LatticePolytope::hull(&[ivec(&[1, 2]), ivec(&[1])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(matches!(
            LatticePolytope::from_i64(&[&[1, 2, 3, 4, 5]]),
            Err(Error::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn polytope_p_vertices_and_facets() {
        let p = fixtures::polytope_p();
        assert_eq!(p.vertices().len(), 10);
        let facets = p.facets().unwrap();
        assert_eq!(facets.len(), 10);
        let pentagon = facets
            .iter()
            .find(|f| f.normal == ivec(&[0, 0, 1]))
            .unwrap();
        assert_eq!(pentagon.level, rat(1, 1));
        assert_eq!(pentagon.vertex_indices.len(), 5);
        // (ii): the vertical rectangle a, e, -c, -d
        let rect: Vec<IntVector> = [[1, 0, 1], [0, -1, 1], [0, -1, -1], [1, 0, -1]]
            .iter()
            .map(|v| ivec(v))
            .collect();
        let f = facets
            .iter()
            .find(|f| {
                f.vertex_indices.len() == 4
                    && rect
                        .iter()
                        .all(|v| f.vertex_indices.contains(&p.vertex_index(v).unwrap()))
            })
            .expect("rectangle facet");
        assert_eq!(f.normal, ivec(&[1, -1, 0]));
    }

    #[test]
    fn cube_facets_and_polar() {
        let c = cube();
        let facets = c.facets().unwrap();
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|f| f.level == rat(1, 1)));
        let octa = c.polar().unwrap();
        assert_eq!(octa.vertices().len(), 6);
        assert!(octa.is_lattice_polytope());
        let back = octa.polar().unwrap();
        assert_eq!(back, c.to_rational());
    }

    #[test]
    fn fixture_polar() {
        let q = fixtures::polytope_p().polar().unwrap();
        assert_eq!(q.vertices().len(), 10);
        assert!(q.vertex_index(&qv(&[(2, 3), (2, 3), (-1, 3)])).is_some());
        assert!(q.vertex_index(&qv(&[(-2, 3), (-2, 3), (1, 3)])).is_some());
        assert_eq!(q.lattice_points().len(), 9);
        assert_eq!(q.normalized_volume().unwrap(), rat(40, 3));
        assert_eq!(q.barycentre().unwrap(), qv(&[(0, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn fixture_lattice_points_by_box_scan() {
        // independent scan: all integer points in [-1,1]^3 satisfying every
        // facet inequality
        let p = fixtures::polytope_p();
        let facets = p.facets().unwrap();
        let mut expected = Vec::new();
        for x in -1..=1 {
            for y in -1..=1 {
                for z in -1..=1 {
                    let v = ivec(&[x, y, z]);
                    if facets.iter().all(|f| {
                        rat(
                            crate::lattice_algebra::dot(&f.normal, &v)
                                .try_into()
                                .unwrap(),
                            1,
                        ) <= f.level
                    }) {
                        expected.push(v);
                    }
                }
            }
        }
        assert_eq!(expected.len(), 17);
        assert_eq!(p.lattice_points(), expected);
    }

    #[test]
    fn volumes() {
        let simplex =
            LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(simplex.normalized_volume().unwrap(), rat(1, 1));
        assert_eq!(simplex.lattice_points().len(), 4);
        assert_eq!(cube().normalized_volume().unwrap(), rat(48, 1));
    }

    #[test]
    fn barycentre_of_triangle_and_translate() {
        let t = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(t.barycentre().unwrap(), qv(&[(1, 3), (1, 3)]));
        let moved = LatticePolytope::from_i64(&[&[2, -1], &[3, -1], &[2, 0]]).unwrap();
        assert_eq!(moved.barycentre().unwrap(), qv(&[(7, 3), (-2, 3)]));
    }

    #[test]
    fn not_full_dimensional_errors() {
        let seg = LatticePolytope::from_i64(&[&[0, 0], &[1, 1]]).unwrap();
        assert!(matches!(
            seg.facets(),
            Err(Error::NotFullDimensional { .. })
        ));
        assert!(seg.normalized_volume().is_err());
        assert_eq!(seg.lattice_points().len(), 2);
        let off = LatticePolytope::from_i64(&[&[1, 0], &[2, 0], &[1, 1]]).unwrap();
        assert_eq!(off.polar().unwrap_err(), Error::OriginNotInterior);
    }

    #[test]
    fn slices() {
        let q = fixtures::polytope_p().polar().unwrap();
        let hex = q.slice(2, &rat(0, 1)).unwrap();
        let mut expected: Vec<QVector> = [[1, 0], [-1, 0], [0, 1], [0, -1], [-1, 1], [1, -1]]
            .iter()
            .map(|v| qv(&[(v[0], 1), (v[1], 1), (0, 1)]))
            .collect();
        expected.sort();
        assert_eq!(hex.vertices(), expected.as_slice());

        let p = fixtures::polytope_p();
        let top = p.slice(2, &rat(1, 1)).unwrap();
        assert_eq!(top.vertices().len(), 5);
        assert_eq!(top.dim(), Some(2));

        let c = cube();
        assert_eq!(c.slice(0, &rat(1, 1)).unwrap().vertices().len(), 4);
        assert!(c.slice(0, &rat(2, 1)).unwrap().is_empty());
    }

    #[test]
    fn edge_lengths() {
        let p = fixtures::polytope_p();
        let lengths = p.edge_lattice_lengths();
        let idx = |v: &[i64]| p.vertex_index(&ivec(v)).unwrap();
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        // [a, -d] and [e, -c]
        assert_eq!(
            lengths[&key(idx(&[1, 0, 1]), idx(&[1, 0, -1]))],
            Integer::from(2)
        );
        assert_eq!(
            lengths[&key(idx(&[0, -1, 1]), idx(&[0, -1, -1]))],
            Integer::from(2)
        );
        // pentagon edges: consecutive differences of a, b, c, d, e
        let pent = [[1, 0, 1], [1, 1, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]];
        for i in 0..5 {
            let (u, v) = (pent[i], pent[(i + 1) % 5]);
            let g = num_integer::gcd(num_integer::gcd(u[0] - v[0], u[1] - v[1]), u[2] - v[2]);
            assert_eq!(g, 1);
            assert_eq!(lengths[&key(idx(&u), idx(&v))], Integer::from(1));
        }
        assert!(cube()
            .edge_lattice_lengths()
            .values()
            .all(|l| *l == Integer::from(2)));
    }
}
