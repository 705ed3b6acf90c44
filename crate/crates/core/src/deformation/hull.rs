use serde::Serialize;

use super::{HullPresentation, HullVariable, Monomial};
use crate::graded_t1::{global_t1, t1_for_chart, GlobalT1};
use crate::lattice_algebra::{gcd_all, primitive, IntVector};
use crate::polytope::LatticePolytope;
use crate::toric_charts::{ChartEntry, ChartKind};
use crate::{Error, Result};

/// A chart whose deformations are obstructed, with the hull of its local
/// deformation functor.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructedChart {
    pub chart: String,
    pub hull: HullPresentation,
}

/// Vanishing statements the hull assembly relies on. `h1_t1` is computed
/// by the Čech complex; `h2_t0` is an input and never computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VanishingAssumptions {
    pub h1_t1: bool,
    pub h2_t0: bool,
}

/// The hull of the local deformation functor of an obstructed chart, or
/// `None` for charts that are smooth, qG-rigid or complete intersections.
///
/// Only one obstructed type is known: the Gorenstein cone over a pentagon
/// with unit edges (the cone over the degree 7 del Pezzo surface), with hull
/// `C⟦u,v⟧/(u², uv)` and both coordinates in degree `−m_C`.
pub fn local_hull(entry: &ChartEntry) -> Result<Option<HullPresentation>> {
    if entry.report.kind != ChartKind::GorensteinPolygon {
        return Ok(None);
    }
    let t1 = t1_for_chart(entry)?;
    if t1.is_zero() {
        return Ok(None);
    }
    if entry.cone.rays().len() != 5 {
        return Err(Error::HullAssembly(format!(
            "no local hull registered for chart {} (cone over a {}-gon)",
            entry.id,
            entry.cone.rays().len()
        )));
    }
    let degree = t1.sporadic()[0].degree.clone();
    debug_assert!(t1.sporadic().iter().all(|s| s.degree == degree));
    let hull = HullPresentation::new(
        vec![
            HullVariable::new("u", degree.clone(), 1),
            HullVariable::new("v", degree, 1),
        ],
        vec![vec![2, 0], vec![1, 1]],
    )?;
    Ok(Some(hull))
}

/// The hull `C⟦t₁…t_k⟧/I` of the global functor when the map to the product
/// of the obstructed local functors is smooth.
///
/// Coordinates of the obstructed charts come first, in the given chart
/// order, each matched to a global weight of the same degree. The remaining
/// weights follow, grouped by primitive direction and then by multiple.
pub fn assemble_hull(
    global_weights: &[IntVector],
    obstructed: &[ObstructedChart],
    assumptions: VanishingAssumptions,
) -> Result<HullPresentation> {
    if !assumptions.h1_t1 {
        return Err(Error::HullAssembly(
            "H¹ of the qG-T¹ sheaf must vanish for local obstructions to determine global ones"
                .into(),
        ));
    }
    if !assumptions.h2_t0 {
        return Err(Error::HullAssembly(
            "H² of the tangent sheaf must be declared zero; it is an assumption and is not computed".into(),
        ));
    }
    for (i, a) in obstructed.iter().enumerate() {
        for b in &obstructed[i + 1..] {
            if let Some(v) = a
                .hull
                .variables()
                .iter()
                .find(|v| b.hull.variables().iter().any(|w| w.weight == v.weight))
            {
                return Err(Error::HullAssembly(format!(
                    "charts {} and {} share the degree {:?}; an explicit matching of coordinates is needed",
                    a.chart,
                    b.chart,
                    v.weight.iter().map(ToString::to_string).collect::<Vec<_>>()
                )));
            }
        }
    }

    let mut pool: Vec<Option<IntVector>> = global_weights.iter().cloned().map(Some).collect();
    let mut weights: Vec<IntVector> = Vec::new();
    let mut local_ideals: Vec<(Vec<usize>, &[Monomial])> = Vec::new();
    for oc in obstructed {
        let mut positions = Vec::new();
        for v in oc.hull.variables() {
            let slot = pool
                .iter()
                .position(|w| w.as_ref() == Some(&v.weight))
                .ok_or_else(|| {
                    Error::HullAssembly(format!(
                        "a local coordinate of chart {} has a degree missing from the global weights",
                        oc.chart
                    ))
                })?;
            pool[slot] = None;
            positions.push(weights.len());
            weights.push(v.weight.clone());
        }
        local_ideals.push((positions, oc.hull.ideal()));
    }
    let mut rest: Vec<IntVector> = pool.into_iter().flatten().collect();
    rest.sort_by_key(|w| (primitive(w), gcd_all(w)));
    weights.extend(rest);

    let k = weights.len();
    let mut ideal = Vec::new();
    for (positions, gens) in local_ideals {
        for g in gens {
            let mut e = vec![0; k];
            for (&p, &x) in positions.iter().zip(g) {
                e[p] = x;
            }
            ideal.push(e);
        }
    }
    let variables = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| HullVariable::new(&format!("t{}", i + 1), w, 1))
        .collect();
    HullPresentation::new(variables, ideal)
}

#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    pub t1: GlobalT1,
    pub obstructed: Vec<ObstructedChart>,
    pub assumptions: VanishingAssumptions,
    pub hull: HullPresentation,
}

/// Global T¹, the obstructed charts and the assembled hull of a Fano
/// polytope's toric 3-fold. `h2_t0_vanishes` declares `H²(X, T⁰) = 0`.
pub fn hull_for_polytope(p: &LatticePolytope, h2_t0_vanishes: bool) -> Result<HullReport> {
    let t1 = global_t1(p)?;
    let mut obstructed = Vec::new();
    for e in &t1.atlas.facets {
        if let Some(hull) = local_hull(e)? {
            obstructed.push(ObstructedChart {
                chart: e.id.clone(),
                hull,
            });
        }
    }
    let assumptions = VanishingAssumptions {
        h1_t1: t1.cohomology.h1.is_zero(),
        h2_t0: h2_t0_vanishes,
    };
    let hull = assemble_hull(&t1.weights, &obstructed, assumptions)?;
    Ok(HullReport {
        t1,
        obstructed,
        assumptions,
        hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice_algebra::ivec;

    const BOTH: VanishingAssumptions = VanishingAssumptions {
        h1_t1: true,
        h2_t0: true,
    };

    fn uv(degree: &[i64]) -> HullPresentation {
        HullPresentation::new(
            vec![
                HullVariable::new("u", ivec(degree), 1),
                HullVariable::new("v", ivec(degree), 1),
            ],
            vec![vec![2, 0], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn hull_a_from_polytope() {
        let r = hull_for_polytope(&fixtures::polytope_p(), true).unwrap();
        assert_eq!(r.hull, fixtures::hull_a());
        let ids: Vec<&str> = r.obstructed.iter().map(|o| o.chart.as_str()).collect();
        assert_eq!(ids.len(), 2);
        assert!(hull_for_polytope(&fixtures::polytope_p(), false).is_err());
    }

    #[test]
    fn free_ring_without_obstructions() {
        let w = vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, 0])];
        let h = assemble_hull(&w, &[], BOTH).unwrap();
        assert_eq!(h.nvars(), 3);
        assert!(h.ideal().is_empty());
    }

    #[test]
    fn one_chart_padded_by_a_free_variable() {
        let w = vec![ivec(&[0, 0, 1]), ivec(&[1, 0, 0]), ivec(&[0, 0, 1])];
        let oc = ObstructedChart {
            chart: "F1".into(),
            hull: uv(&[0, 0, 1]),
        };
        let h = assemble_hull(&w, &[oc], BOTH).unwrap();
        assert_eq!(h.ideal_string(), "(t1^2, t1t2)");
        assert_eq!(h.variables()[2].weight, ivec(&[1, 0, 0]));
    }

    #[test]
    fn refusals() {
        let w = vec![ivec(&[0, 0, 1]); 4];
        let a = ObstructedChart {
            chart: "F1".into(),
            hull: uv(&[0, 0, 1]),
        };
        let b = ObstructedChart {
            chart: "F2".into(),
            hull: uv(&[0, 0, 1]),
        };
        assert!(matches!(
            assemble_hull(&w, &[a.clone(), b], BOTH),
            Err(Error::HullAssembly(_))
        ));
        let missing = VanishingAssumptions {
            h1_t1: true,
            h2_t0: false,
        };
        assert!(matches!(
            assemble_hull(&w, std::slice::from_ref(&a), missing),
            Err(Error::HullAssembly(_))
        ));
        let short = vec![ivec(&[0, 0, 1])];
        assert!(assemble_hull(&short, &[a], BOTH).is_err());
    }

    /// Setting the obstructed coordinates to zero leaves a free ring.
    #[test]
    fn complement_is_smooth() {
        let h = fixtures::hull_a();
        let used: Vec<usize> = (0..h.nvars())
            .filter(|&i| h.ideal().iter().any(|g| g[i] > 0))
            .collect();
        assert_eq!(used, vec![0, 1, 2, 3]);
    }
}
