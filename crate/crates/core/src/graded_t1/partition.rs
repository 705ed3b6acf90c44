use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{RayFamilyModule, RayRange};
use crate::lattice_algebra::rational::solve;
use crate::lattice_algebra::{add, int, q_to_int, scale, sub, to_q, IntVector, Integer, QVector};
use crate::serde_util;
use crate::Result;

/// A set of degrees on which every module in a family has constant
/// dimension and constant restriction behaviour.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeClass {
    Point {
        #[serde(serialize_with = "serde_util::int_vec")]
        degree: IntVector,
    },
    /// `start + n·dir` for `n ≥ 0`.
    Tail {
        #[serde(serialize_with = "serde_util::int_vec")]
        start: IntVector,
        #[serde(serialize_with = "serde_util::int_vec")]
        dir: IntVector,
    },
}

impl DegreeClass {
    pub fn representative(&self) -> &IntVector {
        match self {
            DegreeClass::Point { degree } => degree,
            DegreeClass::Tail { start, .. } => start,
        }
    }

    pub fn contains(&self, m: &[Integer]) -> bool {
        match self {
            DegreeClass::Point { degree } => degree == m,
            DegreeClass::Tail { start, dir } => {
                let i = dir
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero direction");
                let (n, r) = (&m[i] - &start[i]).div_rem(&dir[i]);
                r.is_zero() && !n.is_negative() && add(start, &scale(dir, &n)) == m
            }
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DegreeClass::Tail { .. })
    }
}

/// A lattice line `p0 + t·v` with `v` primitive, its first nonzero entry
/// positive, and `0 ≤ p0[i] < v[i]` at that entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Line {
    v: IntVector,
    p0: IntVector,
}

impl Line {
    fn through(base: &[Integer], dir: &[Integer]) -> (Line, Integer) {
        let i = dir
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero direction");
        let (v, sign) = if dir[i].is_negative() {
            (dir.iter().map(|x| -x).collect::<IntVector>(), int(-1))
        } else {
            (dir.to_vec(), int(1))
        };
        let t = base[i].div_floor(&v[i]);
        let p0 = sub(base, &scale(&v, &t));
        (Line { v, p0 }, sign)
    }

    fn param(&self, m: &[Integer]) -> Option<Integer> {
        let i = self.v.iter().position(|x| !x.is_zero())?;
        let (t, r) = (&m[i] - &self.p0[i]).div_rem(&self.v[i]);
        (r.is_zero() && self.point(&t) == m).then_some(t)
    }

    fn point(&self, t: &Integer) -> IntVector {
        add(&self.p0, &scale(&self.v, t))
    }

    fn meet(&self, other: &Line) -> Option<IntVector> {
        let n = self.v.len();
        let rows: Vec<QVector> = (0..n)
            .map(|r| to_q(&[self.v[r].clone(), -other.v[r].clone()]))
            .collect();
        if crate::lattice_algebra::rational::rank(&rows, 2) < 2 {
            return None;
        }
        let rhs = to_q(&sub(&other.p0, &self.p0));
        let st = solve(&rows, &rhs, 2)?;
        let st = q_to_int(&st)?;
        Some(self.point(&st[0]))
    }
}

/// Splits M into finitely many point and tail classes on which every given
/// module has constant dimension, and on which localization of monomial
/// labels behaves uniformly. Degrees outside all classes carry no module.
pub fn partition(modules: &[&RayFamilyModule]) -> Result<Vec<DegreeClass>> {
    let cut = modules.iter().map(|m| m.stable_after).max().unwrap_or(0) as i64;
    let mut lines: BTreeMap<Line, BTreeSet<Integer>> = BTreeMap::new();
    let mut special: BTreeSet<IntVector> = BTreeSet::new();
    for m in modules {
        for s in m.sporadic() {
            special.insert(s.degree.clone());
        }
        for r in m.rays() {
            let (line, sign) = Line::through(&r.base, &r.dir);
            let tb = line.param(&r.base).expect("base lies on its line");
            let lo = match r.range {
                RayRange::FromBase => 0,
                RayRange::All => -cut,
            };
            let ts = lines.entry(line).or_default();
            for n in lo..=cut {
                ts.insert(&tb + &sign * int(n));
            }
        }
    }
    let keys: Vec<Line> = lines.keys().cloned().collect();
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            if let Some(p) = a.meet(b) {
                special.insert(p);
            }
        }
    }
    for (line, ts) in lines.iter_mut() {
        for p in &special {
            if let Some(t) = line.param(p) {
                ts.insert(t);
            }
        }
    }
    let mut points = special;
    let mut tails = BTreeSet::new();
    for (line, ts) in &lines {
        let (Some(lo), Some(hi)) = (ts.first(), ts.last()) else {
            continue;
        };
        let mut t = lo.clone();
        while &t <= hi {
            points.insert(line.point(&t));
            t += 1;
        }
        tails.insert(DegreeClass::Tail {
            start: line.point(&(hi + 1)),
            dir: line.v.clone(),
        });
        tails.insert(DegreeClass::Tail {
            start: line.point(&(lo - 1)),
            dir: line.v.iter().map(|x| -x).collect(),
        });
    }
    let mut out: Vec<DegreeClass> = points
        .into_iter()
        .map(|degree| DegreeClass::Point { degree })
        .collect();
    out.extend(tails);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_t1::{Label, Ray, Sporadic};
    use crate::lattice_algebra::ivec;

    fn ray(base: &[i64], dir: &[i64], range: RayRange) -> Ray {
        Ray {
            base: ivec(base),
            dir: ivec(dir),
            range,
            label: Label::Isolated(0),
            step: None,
        }
    }

    /// Every degree in a box lies in exactly one class or carries nothing,
    /// and dimensions are constant on each tail.
    #[test]
    fn classes_cover_and_are_constant() {
        let a = RayFamilyModule::new(
            2,
            vec![Sporadic {
                degree: ivec(&[1, 1]),
                label: Label::Isolated(0),
            }],
            vec![
                ray(&[0, 0], &[1, 0], RayRange::FromBase),
                ray(&[2, -3], &[0, 1], RayRange::All),
            ],
        )
        .unwrap();
        let b = RayFamilyModule::new(2, vec![], vec![ray(&[-1, 1], &[1, -1], RayRange::FromBase)])
            .unwrap();
        let classes = partition(&[&a, &b]).unwrap();
        for x in -12..=12 {
            for y in -12..=12 {
                let m = ivec(&[x, y]);
                let owners: Vec<&DegreeClass> = classes.iter().filter(|c| c.contains(&m)).collect();
                let carried = a.dim_at(&m) + b.dim_at(&m) > 0;
                assert!(owners.len() <= 1, "{m:?} in {owners:?}");
                if carried {
                    assert_eq!(owners.len(), 1, "{m:?} uncovered");
                    let rep = owners[0].representative();
                    assert_eq!(a.dim_at(rep), a.dim_at(&m));
                    assert_eq!(b.dim_at(rep), b.dim_at(&m));
                }
            }
        }
    }

    #[test]
    fn crossing_point_is_special() {
        let a =
            RayFamilyModule::new(2, vec![], vec![ray(&[-5, 3], &[1, 0], RayRange::All)]).unwrap();
        let b =
            RayFamilyModule::new(2, vec![], vec![ray(&[7, -9], &[0, 1], RayRange::All)]).unwrap();
        let classes = partition(&[&a, &b]).unwrap();
        assert!(classes.contains(&DegreeClass::Point {
            degree: ivec(&[7, 3])
        }));
    }
}
