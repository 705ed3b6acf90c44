use num_traits::Zero;
use serde::Serialize;

use super::{LatticePolytope, RationalPolytope};
use crate::lattice_algebra::{format_rational, neg, to_q, QVector, Rational};
use crate::Result;

/// Fano-type flags of a lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoReport {
    pub origin_interior: bool,
    pub primitive_vertices: bool,
    pub fano: bool,
    pub canonical: bool,
    pub terminal: bool,
    pub reflexive: bool,
    pub centrally_symmetric: bool,
    pub interior_lattice_points: usize,
    pub lattice_points: usize,
}

/// Berman's toric criterion: K-polystable iff the polar's barycentre is the
/// origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPolystability {
    pub barycentre: QVector,
    pub polystable: bool,
}

impl Serialize for KPolystability {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("KPolystability", 2)?;
        let b: Vec<String> = self.barycentre.iter().map(format_rational).collect();
        st.serialize_field("barycentre", &b)?;
        st.serialize_field("polystable", &self.polystable)?;
        st.end()
    }
}

impl LatticePolytope {
    pub fn is_centrally_symmetric(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| self.vertex_index(&neg(v)).is_some())
    }

    pub fn fano_classify(&self) -> FanoReport {
        let origin_interior = self.origin_is_interior();
        let primitive_vertices = self.has_primitive_vertices();
        let fano = origin_interior && primitive_vertices;
        let points = self.lattice_points();
        let interior = points
            .iter()
            .filter(|p| self.contains_in_interior(&to_q(p)))
            .count();
        let canonical = fano && interior == 1;
        let terminal = fano && points.len() == self.vertices.len() + 1;
        let reflexive = origin_interior
            && self
                .polar()
                .map(|q| q.is_lattice_polytope())
                .unwrap_or(false);
        FanoReport {
            origin_interior,
            primitive_vertices,
            fano,
            canonical,
            terminal,
            reflexive,
            centrally_symmetric: self.is_centrally_symmetric(),
            interior_lattice_points: interior,
            lattice_points: points.len(),
        }
    }

    pub fn k_polystable_toric(&self) -> Result<KPolystability> {
        let q: RationalPolytope = self.polar()?;
        let barycentre = q.barycentre()?;
        let polystable = barycentre.iter().all(Rational::is_zero);
        Ok(KPolystability {
            barycentre,
            polystable,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::lattice_algebra::rat;
    use crate::polytope::LatticePolytope;

    #[test]
    fn fixture_flags() {
        let r = fixtures::polytope_p().fano_classify();
        assert!(r.fano && r.canonical && r.centrally_symmetric);
        assert!(!r.reflexive);
        assert!(!r.terminal);
        assert_eq!(r.interior_lattice_points, 1);
    }

    #[test]
    fn cube_is_reflexive_and_octahedron_terminal() {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(crate::lattice_algebra::ivec(&[x, y, z]));
                }
            }
        }
        let cube = LatticePolytope::hull(&pts).unwrap();
        assert!(cube.fano_classify().reflexive);
        let octa = LatticePolytope::from_i64(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ])
        .unwrap();
        let r = octa.fano_classify();
        assert!(r.terminal && r.reflexive);
    }

    #[test]
    fn non_fano_is_flagged() {
        let p = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let r = p.fano_classify();
        assert!(!r.origin_interior && !r.fano && !r.canonical);
    }

    #[test]
    fn k_polystability() {
        let p = fixtures::polytope_p();
        let k = p.k_polystable_toric().unwrap();
        assert!(k.polystable);
        // dim-2 triangle (1,0), (0,1), (-1,-1): polar is the triangle with
        // vertices (1,1), (-2,1), (1,-2), whose centroid is the origin
        let t = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let q = t.polar().unwrap();
        let mut verts: Vec<_> = q.vertices().to_vec();
        verts.sort();
        assert_eq!(
            verts,
            vec![
                vec![rat(-2, 1), rat(1, 1)],
                vec![rat(1, 1), rat(-2, 1)],
                vec![rat(1, 1), rat(1, 1)]
            ]
        );
        assert!(t.k_polystable_toric().unwrap().polystable);
        // a non-symmetric Fano triangle is not
        let u = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -2]]).unwrap();
        assert!(!u.k_polystable_toric().unwrap().polystable);
    }
}
