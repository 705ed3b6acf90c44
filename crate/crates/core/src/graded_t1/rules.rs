use itertools::Itertools;
use num_traits::{One, Zero};

use super::{Label, MonomialData, Ray, RayFamilyModule, RayRange, Sporadic};
use crate::lattice_algebra::rational::rank;
use crate::lattice_algebra::{add, int, neg, q_to_int, to_q, IntVector, Integer, QVector};
use crate::toric_charts::{ChartEntry, ChartKind, ChartPresentation, Cone};
use crate::{Error, Result};

fn unsupported(reason: &str) -> Error {
    Error::UnsupportedChart {
        chart: String::new(),
        reason: reason.to_string(),
    }
}

/// T¹ of a binomial hypersurface `f = 0` (times a torus), as the monomial
/// quotient `C[vars]/(∂f)` shifted by `−deg f`.
///
/// The partial derivatives of a binomial are monomials; the quotient is
/// accepted only if `f` itself lies in the ideal they generate.
pub fn t1_binomial_hypersurface(pres: &ChartPresentation) -> Result<RayFamilyModule> {
    if pres.relations.len() != 1 || pres.variables.is_empty() {
        return Err(unsupported("not a single binomial relation"));
    }
    let f = &pres.relations[0];
    let nv = pres.variables.len();
    let n = pres.variables[0].degree.len();
    let invertible = pres.invertible();
    let strip = |e: &IntVector| -> IntVector {
        e.iter()
            .zip(&invertible)
            .map(|(x, &inv)| if inv { Integer::zero() } else { x.clone() })
            .collect()
    };

    let mut gens: Vec<IntVector> = Vec::new();
    for i in 0..nv {
        let terms: Vec<&IntVector> = [&f.plus, &f.minus]
            .into_iter()
            .filter(|s| !s[i].is_zero())
            .collect();
        match terms.as_slice() {
            [] => {}
            [t] => {
                let mut e = (*t).clone();
                e[i] -= 1;
                gens.push(strip(&e));
            }
            _ => return Err(unsupported("a partial derivative is not a monomial")),
        }
    }
    gens.sort();
    gens.dedup();
    let minimal: Vec<IntVector> = gens
        .iter()
        .filter(|g| {
            !gens
                .iter()
                .any(|h| h != *g && h.iter().zip(g.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();
    let data = MonomialData {
        degrees: pres.variables.iter().map(|v| v.degree.clone()).collect(),
        invertible: invertible.clone(),
        ideal: minimal,
    };
    if !data.in_ideal(&f.plus) || !data.in_ideal(&f.minus) {
        return Err(unsupported(
            "the relation is not in its monomial Jacobian ideal",
        ));
    }
    let shift = neg(&pres.degree_of(&f.plus));
    let degree = |e: &IntVector| add(&shift, &pres.degree_of(e));
    let stable_after = usize::try_from(&data.max_exponent()).unwrap_or(usize::MAX) + 1;

    let free: Vec<usize> = (0..nv).filter(|&i| !invertible[i]).collect();
    let units: Vec<usize> = (0..nv).filter(|&i| invertible[i]).collect();
    let bound: Vec<i64> = free
        .iter()
        .map(|&i| {
            let d = data
                .ideal
                .iter()
                .map(|g| &g[i])
                .max()
                .cloned()
                .unwrap_or_default();
            i64::try_from(&d).expect("small exponent") + 1
        })
        .collect();

    // standard monomials: box points, a coordinate at its bound standing
    // for every larger exponent
    let mut sporadic: Vec<IntVector> = Vec::new();
    let mut rays: Vec<(IntVector, usize)> = Vec::new();
    for a in bound.iter().map(|&b| 0..=b).multi_cartesian_product() {
        let mut e = vec![Integer::zero(); nv];
        for (k, &i) in free.iter().enumerate() {
            e[i] = int(a[k]);
        }
        if data.in_ideal(&e) {
            continue;
        }
        let at_bound: Vec<usize> = (0..free.len())
            .filter(|&k| a[k] == bound[k])
            .map(|k| free[k])
            .collect();
        match at_bound.as_slice() {
            [] => sporadic.push(e),
            [j] => rays.push((e, *j)),
            _ => return Err(unsupported("T¹ has a family of dimension ≥ 2")),
        }
    }

    let mut out_sporadic = Vec::new();
    let mut out_rays = Vec::new();
    if units.is_empty() {
        absorb(&mut sporadic, &mut rays);
        for e in sporadic {
            out_sporadic.push(Sporadic {
                degree: degree(&e),
                label: Label::Monomial(e),
            });
        }
        for (e, j) in rays {
            out_rays.push(Ray {
                base: degree(&e),
                dir: data.degrees[j].clone(),
                range: RayRange::FromBase,
                label: Label::Monomial(e),
                step: Some(j),
            });
        }
    } else if !sporadic.is_empty() || !rays.is_empty() {
        if units.len() > 1 || !rays.is_empty() {
            return Err(unsupported("T¹ has a family of dimension ≥ 2"));
        }
        let w = units[0];
        for e in sporadic {
            out_rays.push(Ray {
                base: degree(&e),
                dir: data.degrees[w].clone(),
                range: RayRange::All,
                label: Label::Monomial(e),
                step: Some(w),
            });
        }
    }
    let mut m = RayFamilyModule::new(n, out_sporadic, out_rays)?;
    m.monomials = Some(data);
    m.stable_after = stable_after;
    Ok(m)
}

/// Moves ray bases back over sporadic monomials they extend, as long as no
/// other ray competes for the same monomial.
fn absorb(sporadic: &mut Vec<IntVector>, rays: &mut [(IntVector, usize)]) {
    loop {
        let mut changed = false;
        for r in 0..rays.len() {
            let (e, j) = &rays[r];
            if e[*j].is_zero() {
                continue;
            }
            let mut prev = e.clone();
            prev[*j] -= 1;
            let Some(pos) = sporadic.iter().position(|s| *s == prev) else {
                continue;
            };
            let competing = rays.iter().enumerate().any(|(q, (e2, j2))| {
                q != r && !e2[*j2].is_zero() && {
                    let mut p2 = e2.clone();
                    p2[*j2] -= 1;
                    p2 == prev
                }
            });
            if competing {
                continue;
            }
            sporadic.remove(pos);
            rays[r].0 = prev;
            changed = true;
        }
        if !changed {
            return;
        }
    }
}

/// T¹ of a Gorenstein 3-dimensional cone over a lattice polygon with unit
/// edges: `k − 3` dimensions in degree `−m_C` for a `k`-gon.
pub fn t1_polygon_cone(cone: &Cone) -> Result<RayFamilyModule> {
    let out_of_scope = || unsupported("general Altmann formula out of scope");
    if cone.ambient_dim() != 3 || !cone.is_full_dimensional() {
        return Err(out_of_scope());
    }
    let g = cone.gorenstein_data()?;
    if !g.gorenstein || !cone.base_edge_lengths().iter().all(One::is_one) {
        return Err(out_of_scope());
    }
    let k = cone.rays().len();
    let m = g
        .degree
        .as_ref()
        .and_then(|d| q_to_int(d))
        .ok_or_else(out_of_scope)?;
    let degree = neg(&m);
    let sporadic = (0..k.saturating_sub(3))
        .map(|i| Sporadic {
            degree: degree.clone(),
            label: Label::Isolated(i),
        })
        .collect();
    RayFamilyModule::new(3, sporadic, Vec::new())
}

/// qG-T¹ of an isolated terminal cyclic quotient singularity, which is zero.
pub fn t1_qg_quotient(cone: &Cone) -> Result<RayFamilyModule> {
    if !cone.is_smooth()
        && !(cone.is_simplicial()
            && cone.quotient_type().is_ok()
            && cone.is_terminal()
            && cone.is_isolated())
    {
        return Err(unsupported("not an isolated terminal cyclic quotient"));
    }
    Ok(RayFamilyModule::zero(cone.ambient_dim()))
}

/// The T¹ module of an atlas chart, by the rule matching its kind.
pub fn t1_for_chart(entry: &ChartEntry) -> Result<RayFamilyModule> {
    let n = entry.cone.ambient_dim();
    let r = &entry.report;
    let module = match r.kind {
        ChartKind::Smooth => Ok(RayFamilyModule::zero(n)),
        ChartKind::TerminalQuotient => t1_qg_quotient(&entry.cone),
        ChartKind::Hypersurface => match &r.presentation {
            Some(p) => t1_binomial_hypersurface(p),
            None => Err(unsupported("missing presentation")),
        },
        ChartKind::GorensteinPolygon => t1_polygon_cone(&entry.cone),
        ChartKind::Unclassified => Err(unsupported(
            "not smooth, a terminal quotient, a binomial hypersurface or a unit-edge polygon cone",
        )),
    };
    module
        .map(|m| m.with_chart(&entry.id))
        .map_err(|e| match e {
            Error::UnsupportedChart { reason, .. } => Error::UnsupportedChart {
                chart: entry.id.clone(),
                reason,
            },
            e => e,
        })
}

/// Restriction of T¹ classes from a chart to a localization of it.
#[derive(Clone, Debug)]
pub struct GradedLinearMap {
    source: RayFamilyModule,
    target: RayFamilyModule,
    /// Source variables that become invertible on the target.
    localizing: Vec<usize>,
}

/// The restriction map from `source` to `target`, where `target` is the T¹
/// module of a localization of the source chart.
///
/// A source variable becomes invertible when its degree lies in the span of
/// the target's invertible degrees. A monomial class survives when it stays
/// outside the ideal after multiplying by a high power of those variables;
/// surviving classes map with coefficient 1.
pub fn restriction(source: &RayFamilyModule, target: &RayFamilyModule) -> Result<GradedLinearMap> {
    if source.ambient_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: source.ambient_dim(),
            found: target.ambient_dim(),
        });
    }
    let mut localizing = Vec::new();
    if let (Some(s), false) = (&source.monomials, target.is_zero()) {
        let t = target.monomials.as_ref().ok_or_else(|| {
            Error::UnsupportedConfiguration("target is not a monomial localization".into())
        })?;
        let units: Vec<QVector> = t
            .degrees
            .iter()
            .zip(&t.invertible)
            .filter(|(_, &inv)| inv)
            .map(|(d, _)| to_q(d))
            .collect();
        let r = rank(&units, target.ambient_dim());
        for (i, d) in s.degrees.iter().enumerate() {
            if s.invertible[i] {
                continue;
            }
            let mut with = units.clone();
            with.push(to_q(d));
            if rank(&with, target.ambient_dim()) == r {
                localizing.push(i);
            }
        }
        if localizing.is_empty() {
            return Err(Error::UnsupportedConfiguration(
                "target is not a localization of the source chart".into(),
            ));
        }
    }
    Ok(GradedLinearMap {
        source: source.clone(),
        target: target.clone(),
        localizing,
    })
}

impl GradedLinearMap {
    pub fn source(&self) -> &RayFamilyModule {
        &self.source
    }

    pub fn target(&self) -> &RayFamilyModule {
        &self.target
    }

    /// Whether the class with this label is nonzero after localization.
    pub fn survives(&self, label: &Label) -> bool {
        let (Label::Monomial(e), Some(data)) = (label, &self.source.monomials) else {
            return false;
        };
        if self.localizing.is_empty() {
            return false;
        }
        let k = data.max_exponent() + 1;
        let mut e = e.clone();
        for &i in &self.localizing {
            e[i] += &k;
        }
        !data.in_ideal(&e)
    }

    /// Matrix of the map in degree `m`: rows index the target basis, columns
    /// the source basis, in the order of [`RayFamilyModule::basis_at`].
    pub fn matrix_at(&self, m: &[Integer]) -> Result<Vec<Vec<i64>>> {
        let src = self.source.basis_at(m);
        let tgt = self.target.basis_at(m);
        let mut mat = vec![vec![0; src.len()]; tgt.len()];
        let surviving: Vec<usize> = (0..src.len()).filter(|&i| self.survives(&src[i])).collect();
        if surviving.is_empty() {
            return Ok(mat);
        }
        let ambiguous = || {
            Error::UnsupportedConfiguration(format!(
                "ambiguous restriction in degree {:?}",
                m.iter().map(ToString::to_string).collect::<Vec<_>>()
            ))
        };
        match (tgt.len(), surviving.as_slice()) {
            (0, _) => Err(Error::Internal(format!(
                "a class of degree {:?} survives localization but the target vanishes there",
                m.iter().map(ToString::to_string).collect::<Vec<_>>()
            ))),
            (1, [i]) => {
                mat[0][*i] = 1;
                Ok(mat)
            }
            _ => Err(ambiguous()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_algebra::ivec;
    use crate::toric_charts::binomial_presentation;

    fn chart_ii() -> Cone {
        Cone::from_i64(&[&[1, 0, 1], &[0, -1, 1], &[0, -1, -1], &[1, 0, -1]]).unwrap()
    }

    fn chart_iii() -> Cone {
        Cone::from_i64(&[&[0, -1, 1], &[-1, -1, -1], &[0, -1, -1]]).unwrap()
    }

    fn edge_ii_iii() -> Cone {
        Cone::from_i64(&[&[0, -1, 1], &[0, -1, -1]]).unwrap()
    }

    fn module(c: &Cone, units: &[IntVector]) -> RayFamilyModule {
        t1_binomial_hypersurface(&binomial_presentation(c, units).unwrap()).unwrap()
    }

    /// Brute-force oracle: standard monomials of the quotient up to an
    /// exponent bound, by degree.
    fn oracle_dim(pres: &ChartPresentation, ideal: &[Vec<i64>], m: &[i64], bound: i64) -> usize {
        let nv = pres.variables.len();
        let shift = neg(&pres.degree_of(&pres.relations[0].plus));
        (0..nv)
            .map(|_| 0..=bound)
            .multi_cartesian_product()
            .filter(|e| !ideal.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b)))
            .filter(|e| {
                let e: IntVector = e.iter().map(|&x| int(x)).collect();
                add(&shift, &pres.degree_of(&e)) == ivec(m)
            })
            .count()
    }

    #[test]
    fn chart_ii_module() {
        let m = module(&chart_ii(), &[]);
        let degs: Vec<IntVector> = m.sporadic().iter().map(|s| s.degree.clone()).collect();
        assert_eq!(degs, vec![ivec(&[-2, 2, 0]), ivec(&[-1, 1, 0])]);
        let mut rays: Vec<(IntVector, IntVector)> = m
            .rays()
            .iter()
            .map(|r| (r.base.clone(), r.dir.clone()))
            .collect();
        rays.sort();
        assert_eq!(
            rays,
            vec![
                (ivec(&[-2, 1, 0]), ivec(&[0, -1, 0])),
                (ivec(&[-1, 2, 0]), ivec(&[1, 0, 0])),
            ]
        );
        // the quotient by (xy², x²y, z, w)
        let pres = binomial_presentation(&chart_ii(), &[]).unwrap();
        let ideal = [
            vec![1, 2, 0, 0],
            vec![2, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ];
        for x in -6..=2 {
            for y in -2..=6 {
                let d = [x, y, 0];
                assert_eq!(
                    m.dim_at(&ivec(&d)),
                    oracle_dim(&pres, &ideal, &d, 10),
                    "{d:?}"
                );
            }
        }
    }

    #[test]
    fn chart_iii_module() {
        let m = module(&chart_iii(), &[]);
        assert!(m.sporadic().is_empty());
        assert_eq!(m.rays().len(), 1);
        let r = &m.rays()[0];
        assert_eq!(
            (r.base.clone(), r.dir.clone()),
            (ivec(&[-2, 2, 0]), ivec(&[-1, 0, 0]))
        );
        assert_eq!(r.range, RayRange::FromBase);
    }

    #[test]
    fn intersection_module() {
        let m = module(&edge_ii_iii(), &[ivec(&[1, 0, 0])]);
        assert!(m.sporadic().is_empty());
        assert_eq!(m.rays().len(), 1);
        let r = &m.rays()[0];
        assert_eq!(r.range, RayRange::All);
        assert!(r.param(&ivec(&[-2, 2, 0])).is_some());
        assert!(r.param(&ivec(&[40, 2, 0])).is_some());
        assert!(r.param(&ivec(&[0, 0, 0])).is_none());
    }

    #[test]
    fn square_cone_agrees_with_polygon_rule() {
        let c = Cone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]).unwrap();
        let a = module(&c, &[]);
        let b = t1_polygon_cone(&c).unwrap();
        assert_eq!(a.total_dim(), Some(1));
        assert!(a.same_dimensions(&b));
        assert_eq!(b.sporadic()[0].degree, ivec(&[0, 0, -1]));
    }

    #[test]
    fn polygon_rule_scope() {
        let pent = Cone::from_i64(&[&[1, 0, 1], &[1, 1, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])
            .unwrap();
        let m = t1_polygon_cone(&pent).unwrap();
        assert_eq!(m.total_dim(), Some(2));
        assert_eq!(m.sporadic()[0].degree, ivec(&[0, 0, -1]));
        let tri = Cone::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        assert!(t1_polygon_cone(&tri).unwrap().is_zero());
        // an edge of length 2
        let long = Cone::from_i64(&[&[0, 0, 1], &[2, 0, 1], &[0, 1, 1]]).unwrap();
        assert!(matches!(
            t1_polygon_cone(&long),
            Err(Error::UnsupportedChart { .. })
        ));
    }

    #[test]
    fn quotient_rule_scope() {
        // chart (v), of type 1/3(1,1,2)
        let c = Cone::from_i64(&[&[-1, -1, -1], &[-1, 0, 1], &[0, -1, 1]]).unwrap();
        assert!(t1_qg_quotient(&c).unwrap().is_zero());
        // 1/2(1,1,0) is not isolated
        let d = Cone::from_i64(&[&[1, 0, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap();
        assert!(t1_qg_quotient(&d).is_err());
        let smooth = Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(t1_qg_quotient(&smooth).unwrap().is_zero());
    }

    #[test]
    fn restriction_iii_to_edge_is_identity() {
        let src = module(&chart_iii(), &[]);
        let tgt = module(&edge_ii_iii(), &[ivec(&[1, 0, 0])]);
        let r = restriction(&src, &tgt).unwrap();
        for n in 0..6 {
            let m = ivec(&[-2 - n, 2, 0]);
            assert_eq!(r.matrix_at(&m).unwrap(), vec![vec![1]]);
        }
        assert_eq!(r.matrix_at(&ivec(&[1, 2, 0])).unwrap(), vec![vec![0; 0]]);
    }

    #[test]
    fn restriction_kills_isolated_class_of_ii() {
        let src = module(&chart_ii(), &[]);
        let to_iii = module(&edge_ii_iii(), &[ivec(&[1, 0, 0])]);
        let r = restriction(&src, &to_iii).unwrap();
        let m = ivec(&[-1, 1, 0]);
        assert_eq!(r.matrix_at(&m).unwrap(), Vec::<Vec<i64>>::new());
        // the y-ray (−2+n, 2, 0) restricts to the intersection line
        for n in 0..5 {
            assert_eq!(r.matrix_at(&ivec(&[-2 + n, 2, 0])).unwrap(), vec![vec![1]]);
        }
    }

    #[test]
    fn polygon_classes_never_survive() {
        let pent = Cone::from_i64(&[&[1, 0, 1], &[1, 1, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])
            .unwrap();
        let src = t1_polygon_cone(&pent).unwrap();
        let r = restriction(&src, &RayFamilyModule::zero(3)).unwrap();
        assert_eq!(
            r.matrix_at(&ivec(&[0, 0, -1])).unwrap(),
            Vec::<Vec<i64>>::new()
        );
        assert!(!r.survives(&Label::Isolated(0)));
    }
}
