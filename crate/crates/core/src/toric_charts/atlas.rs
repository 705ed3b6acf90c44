use num_traits::One;
use serde::Serialize;

use super::{binomial_presentation, ChartPresentation, Cone, QuotientType};
use crate::lattice_algebra::{kernel_basis, IntMatrix, IntVector, Integer, QVector};
use crate::polytope::LatticePolytope;
use crate::serde_util;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    Smooth,
    /// Isolated terminal cyclic quotient singularity.
    TerminalQuotient,
    /// Binomial hypersurface, possibly times a torus.
    Hypersurface,
    /// Gorenstein 3-fold cone over a lattice polygon with unit edges.
    GorensteinPolygon,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub dim: usize,
    pub smooth: bool,
    pub gorenstein: bool,
    #[serde(serialize_with = "serde_util::integer")]
    pub gorenstein_index: Integer,
    /// The `m` with `⟨m, ray⟩ = 1` for all rays, for full-dimensional cones.
    #[serde(serialize_with = "serde_util::opt_rat_vec")]
    pub gorenstein_degree: Option<QVector>,
    pub quotient_type: Option<QuotientType>,
    pub terminal: bool,
    pub isolated: bool,
    /// Size of the Hilbert basis of the dual cone, modulo invertible
    /// directions for cones that are not full-dimensional.
    pub hilbert_basis_size: usize,
    #[serde(serialize_with = "serde_util::int_vec")]
    pub base_edge_lengths: Vec<Integer>,
    pub presentation: Option<ChartPresentation>,
    pub qg_rigid: bool,
    pub kind: ChartKind,
}

impl ChartReport {
    pub fn of_cone(cone: &Cone) -> Result<Self> {
        let g = cone.gorenstein_data()?;
        let smooth = cone.is_smooth();
        let quotient_type = if cone.is_simplicial() {
            cone.quotient_type().ok()
        } else {
            None
        };
        let terminal = cone.is_terminal();
        let isolated = cone.is_isolated();
        let hilbert_basis_size = if cone.dim() == 0 {
            0
        } else {
            cone.local_cone().dual()?.hilbert_basis().len()
        };
        let lineality =
            kernel_basis(&IntMatrix::from_rows(cone.rays(), cone.ambient_dim())).to_rows();
        let presentation = if smooth {
            None
        } else {
            binomial_presentation(cone, &lineality).ok()
        };
        let base_edge_lengths = cone.base_edge_lengths();
        let qg_rigid = smooth || (quotient_type.is_some() && terminal && isolated);
        let kind = if smooth {
            ChartKind::Smooth
        } else if qg_rigid {
            ChartKind::TerminalQuotient
        } else if presentation.is_some() {
            ChartKind::Hypersurface
        } else if g.gorenstein
            && cone.dim() == 3
            && cone.is_full_dimensional()
            && base_edge_lengths.iter().all(One::is_one)
        {
            ChartKind::GorensteinPolygon
        } else {
            ChartKind::Unclassified
        };
        Ok(ChartReport {
            dim: cone.dim(),
            smooth,
            gorenstein: g.gorenstein,
            gorenstein_index: g.index,
            gorenstein_degree: g.degree,
            quotient_type,
            terminal,
            isolated,
            hilbert_basis_size,
            base_edge_lengths,
            presentation,
            qg_rigid,
            kind,
        })
    }
}

/// A chart of the face fan: a facet, or a face shared by two facets.
#[derive(Clone, Debug, Serialize)]
pub struct ChartEntry {
    pub id: String,
    /// Indices into the polytope's vertex list.
    pub face: Vec<usize>,
    #[serde(serialize_with = "serde_util::int_vecs")]
    pub vertices: Vec<IntVector>,
    /// Primitive outer facet normal, for facet charts.
    #[serde(serialize_with = "serde_util::opt_int_vec")]
    pub normal: Option<IntVector>,
    /// Ids of the two facets meeting in this face, for intersection charts.
    pub between: Option<[String; 2]>,
    pub report: ChartReport,
    #[serde(skip)]
    pub cone: Cone,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartAtlas {
    /// Facet charts, in the order of [`LatticePolytope::facets`].
    pub facets: Vec<ChartEntry>,
    /// Singular charts over faces of codimension 2 shared by two facets.
    pub intersections: Vec<ChartEntry>,
}

impl ChartAtlas {
    pub fn get(&self, id: &str) -> Option<&ChartEntry> {
        self.facets
            .iter()
            .chain(&self.intersections)
            .find(|c| c.id == id)
    }

    pub fn facet_index(&self, id: &str) -> Option<usize> {
        self.facets.iter().position(|c| c.id == id)
    }
}

/// The cone spanned by the vertices of a face.
pub fn cone_over_face(p: &LatticePolytope, face: &[usize]) -> Result<Cone> {
    if !p.is_face(face) {
        return Err(Error::NotAFace);
    }
    let rays: Vec<IntVector> = face.iter().map(|&i| p.vertices()[i].clone()).collect();
    Cone::new(p.ambient_dim(), &rays)
}

/// Reports for every facet chart and every singular intersection chart of
/// a Fano polytope's face fan. Faces where three or more facets meet have
/// codimension ≥ 3 and are not listed.
pub fn chart_atlas(p: &LatticePolytope) -> Result<ChartAtlas> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let n = p.ambient_dim();
    let facets = p.facets()?;
    let mut facet_entries = Vec::with_capacity(facets.len());
    for (i, f) in facets.iter().enumerate() {
        let cone = cone_over_face(p, &f.vertex_indices)?;
        facet_entries.push(ChartEntry {
            id: format!("F{}", i + 1),
            face: f.vertex_indices.clone(),
            vertices: f
                .vertex_indices
                .iter()
                .map(|&v| p.vertices()[v].clone())
                .collect(),
            normal: Some(f.normal.clone()),
            between: None,
            report: ChartReport::of_cone(&cone)?,
            cone,
        });
    }
    let ridges: Vec<Vec<usize>> = p
        .faces()
        .into_iter()
        .filter(|f| f.dim + 2 == n)
        .map(|f| f.vertices)
        .collect();
    let mut intersections = Vec::new();
    for (i, fi) in facets.iter().enumerate() {
        for (j, fj) in facets.iter().enumerate().skip(i + 1) {
            let meet: Vec<usize> = fi
                .vertex_indices
                .iter()
                .filter(|v| fj.vertex_indices.contains(v))
                .copied()
                .collect();
            if !ridges.contains(&meet) {
                continue;
            }
            let cone = cone_over_face(p, &meet)?;
            if cone.is_smooth() {
                continue;
            }
            intersections.push(ChartEntry {
                id: format!("E{}", intersections.len() + 1),
                vertices: meet.iter().map(|&v| p.vertices()[v].clone()).collect(),
                face: meet,
                normal: None,
                between: Some([facet_entries[i].id.clone(), facet_entries[j].id.clone()]),
                report: ChartReport::of_cone(&cone)?,
                cone,
            });
        }
    }
    Ok(ChartAtlas {
        facets: facet_entries,
        intersections,
    })
}
