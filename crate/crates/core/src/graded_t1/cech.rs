use serde::Serialize;

use super::{
    partition, restriction, t1_for_chart, DegreeClass, GradedLinearMap, Label, Ray,
    RayFamilyModule, RayRange, Sporadic,
};
use crate::lattice_algebra::rational::rank;
use crate::lattice_algebra::{rat, IntVector, Integer, QVector};
use crate::polytope::LatticePolytope;
use crate::serde_util;
use crate::toric_charts::{chart_atlas, ChartAtlas};
use crate::{Error, Result};

/// The cover data `C⁰ = ⊕ charts`, `C¹ = ⊕ intersections`, with the
/// restriction of both adjacent charts into every intersection.
#[derive(Clone, Debug)]
pub struct CechData {
    charts: Vec<(String, RayFamilyModule)>,
    intersections: Vec<((usize, usize), RayFamilyModule)>,
    restrictions: Vec<[GradedLinearMap; 2]>,
}

/// The differential `d(m): C⁰(m) → C¹(m)`.
#[derive(Clone, Debug)]
pub struct DifferentialBlock {
    pub degree: IntVector,
    /// Chart index and basis label of each column.
    pub columns: Vec<(usize, Label)>,
    /// Intersection index and basis label of each row.
    pub rows: Vec<(usize, Label)>,
    pub matrix: Vec<Vec<i64>>,
}

impl DifferentialBlock {
    pub fn rank(&self) -> usize {
        let rows: Vec<QVector> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect();
        rank(&rows, self.columns.len())
    }
}

impl CechData {
    /// `intersections` name their two charts by id; the pair is reordered to
    /// follow the chart order.
    pub fn new(
        charts: Vec<(String, RayFamilyModule)>,
        intersections: Vec<((String, String), RayFamilyModule)>,
    ) -> Result<Self> {
        let index = |id: &str| {
            charts
                .iter()
                .position(|(c, _)| c == id)
                .ok_or_else(|| Error::UnsupportedConfiguration(format!("unknown chart {id}")))
        };
        let mut inters = Vec::with_capacity(intersections.len());
        let mut restrictions = Vec::with_capacity(intersections.len());
        for ((a, b), module) in intersections {
            let (i, j) = (index(&a)?, index(&b)?);
            if i == j {
                return Err(Error::UnsupportedConfiguration(format!(
                    "intersection of chart {a} with itself"
                )));
            }
            let (i, j) = (i.min(j), i.max(j));
            restrictions.push([
                restriction(&charts[i].1, &module)?,
                restriction(&charts[j].1, &module)?,
            ]);
            inters.push(((i, j), module));
        }
        Ok(CechData {
            charts,
            intersections: inters,
            restrictions,
        })
    }

    /// Facet charts in atlas order and the singular intersections.
    pub fn from_atlas(atlas: &ChartAtlas) -> Result<Self> {
        let charts = atlas
            .facets
            .iter()
            .map(|e| Ok((e.id.clone(), t1_for_chart(e)?)))
            .collect::<Result<Vec<_>>>()?;
        let intersections = atlas
            .intersections
            .iter()
            .map(|e| {
                let [a, b] = e
                    .between
                    .clone()
                    .expect("intersection charts name their facets");
                Ok(((a, b), t1_for_chart(e)?))
            })
            .collect::<Result<Vec<_>>>()?;
        CechData::new(charts, intersections)
    }

    pub fn charts(&self) -> &[(String, RayFamilyModule)] {
        &self.charts
    }

    pub fn intersections(&self) -> &[((usize, usize), RayFamilyModule)] {
        &self.intersections
    }

    pub fn restrictions(&self) -> &[[GradedLinearMap; 2]] {
        &self.restrictions
    }

    /// `d(s)_{ij} = s_j − s_i` on the intersection of charts `i < j`.
    pub fn differential_at(&self, m: &[Integer]) -> Result<DifferentialBlock> {
        let mut columns = Vec::new();
        let mut offsets = Vec::with_capacity(self.charts.len());
        for (c, (_, module)) in self.charts.iter().enumerate() {
            offsets.push(columns.len());
            columns.extend(module.basis_at(m).into_iter().map(|l| (c, l)));
        }
        let mut rows = Vec::new();
        let mut matrix = Vec::new();
        for (q, ((i, j), module)) in self.intersections.iter().enumerate() {
            let labels = module.basis_at(m);
            if labels.is_empty() {
                continue;
            }
            let mut block = vec![vec![0i64; columns.len()]; labels.len()];
            for (chart, map, sign) in [
                (*i, &self.restrictions[q][0], -1),
                (*j, &self.restrictions[q][1], 1),
            ] {
                let part = map.matrix_at(m)?;
                for (r, row) in part.iter().enumerate() {
                    for (k, &x) in row.iter().enumerate() {
                        block[r][offsets[chart] + k] += sign * x;
                    }
                }
            }
            rows.extend(labels.into_iter().map(|l| (q, l)));
            matrix.extend(block);
        }
        Ok(DifferentialBlock {
            degree: m.to_vec(),
            columns,
            rows,
            matrix,
        })
    }
}

/// Ranks of `d` on one degree class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub class: DegreeClass,
    pub c0: usize,
    pub c1: usize,
    pub rank: usize,
    pub h0: usize,
    pub h1: usize,
}

impl ClassRecord {
    pub fn is_bijective(&self) -> bool {
        self.rank == self.c0 && self.rank == self.c1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CechCohomology {
    pub h0: RayFamilyModule,
    pub h1: RayFamilyModule,
    /// Every class carrying a nonzero cochain group.
    pub classes: Vec<ClassRecord>,
    /// Indices into `classes` where `d` is not bijective. Together with the
    /// class list this certifies that `H⁰` and `H¹` are supported on them.
    pub exceptional: Vec<usize>,
}

impl CechCohomology {
    /// `h⁰ − h¹ = c⁰ − c¹` on every class.
    pub fn euler_holds(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.h0 as i64 - c.h1 as i64 == c.c0 as i64 - c.c1 as i64)
    }
}

/// Kernel and cokernel of `d`, computed on the classes of a partition of
/// the degrees on which all cochain modules and restrictions are constant.
pub fn cech_h0_h1(data: &CechData) -> Result<CechCohomology> {
    let n = data
        .charts
        .first()
        .map(|(_, m)| m.ambient_dim())
        .ok_or(Error::Empty)?;
    let modules: Vec<&RayFamilyModule> = data
        .charts
        .iter()
        .map(|(_, m)| m)
        .chain(data.intersections.iter().map(|(_, m)| m))
        .collect();
    let mut classes = Vec::new();
    let mut h0 = (Vec::new(), Vec::new());
    let mut h1 = (Vec::new(), Vec::new());
    for class in partition(&modules)? {
        let block = data.differential_at(class.representative())?;
        let (c0, c1) = (block.columns.len(), block.rows.len());
        if c0 == 0 && c1 == 0 {
            continue;
        }
        let rank = block.rank();
        let record = ClassRecord {
            class,
            c0,
            c1,
            rank,
            h0: c0 - rank,
            h1: c1 - rank,
        };
        emit(&record.class, record.h0, &mut h0);
        emit(&record.class, record.h1, &mut h1);
        classes.push(record);
    }
    let exceptional = (0..classes.len())
        .filter(|&i| !classes[i].is_bijective())
        .collect();
    Ok(CechCohomology {
        h0: RayFamilyModule::new(n, h0.0, h0.1)?,
        h1: RayFamilyModule::new(n, h1.0, h1.1)?,
        classes,
        exceptional,
    })
}

fn emit(class: &DegreeClass, dim: usize, out: &mut (Vec<Sporadic>, Vec<Ray>)) {
    for _ in 0..dim {
        let label = Label::Class(out.0.len() + out.1.len());
        match class {
            DegreeClass::Point { degree } => out.0.push(Sporadic {
                degree: degree.clone(),
                label,
            }),
            DegreeClass::Tail { start, dir } => out.1.push(Ray {
                base: start.clone(),
                dir: dir.clone(),
                range: RayRange::FromBase,
                label,
                step: None,
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalT1 {
    #[serde(skip)]
    pub atlas: ChartAtlas,
    #[serde(flatten)]
    pub cohomology: CechCohomology,
    /// Degrees of `H⁰` with multiplicity, sorted.
    #[serde(serialize_with = "serde_util::int_vecs")]
    pub weights: Vec<IntVector>,
}

/// `H⁰` and `H¹` of the qG-T¹ sheaf of the toric 3-fold of a Fano polytope,
/// with the degrees of `H⁰` as coordinate weights.
pub fn global_t1(p: &LatticePolytope) -> Result<GlobalT1> {
    if p.ambient_dim() != 3 {
        return Err(Error::UnsupportedConfiguration(
            "global T¹ is implemented for 3-folds".into(),
        ));
    }
    let atlas = chart_atlas(p)?;
    let data = CechData::from_atlas(&atlas)?;
    let cohomology = cech_h0_h1(&data)?;
    let dims = cohomology.h0.graded_dims().ok_or_else(|| {
        Error::UnsupportedConfiguration("H⁰ of the qG-T¹ sheaf is infinite-dimensional".into())
    })?;
    let weights = dims
        .into_iter()
        .flat_map(|(d, k)| std::iter::repeat_n(d, k))
        .collect();
    Ok(GlobalT1 {
        atlas,
        cohomology,
        weights,
    })
}
