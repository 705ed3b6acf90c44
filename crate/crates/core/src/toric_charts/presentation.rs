use std::fmt;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Cone;
use crate::lattice_algebra::{
    add, hermite_normal_form, kernel_basis, scale, solve_integer, IntMatrix, IntVector, Integer,
};
use crate::serde_util;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationVariable {
    pub name: String,
    #[serde(serialize_with = "serde_util::int_vec")]
    pub degree: IntVector,
    pub invertible: bool,
}

/// `x^plus − x^minus`, exponents indexed like the presentation's variables.
/// Invertible variables may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Binomial {
    #[serde(serialize_with = "serde_util::int_vec")]
    pub plus: IntVector,
    #[serde(serialize_with = "serde_util::int_vec")]
    pub minus: IntVector,
}

/// `C[variables] / (relations)` with every variable carrying its M-degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartPresentation {
    pub variables: Vec<PresentationVariable>,
    pub relations: Vec<Binomial>,
}

impl ChartPresentation {
    pub fn degree_of(&self, exponents: &[Integer]) -> IntVector {
        let n = self.variables.first().map_or(0, |v| v.degree.len());
        self.variables
            .iter()
            .zip(exponents)
            .fold(vec![Integer::zero(); n], |acc, (v, e)| {
                add(&acc, &scale(&v.degree, e))
            })
    }

    /// Whether both sides of every relation have the same degree.
    pub fn is_homogeneous(&self) -> bool {
        self.relations
            .iter()
            .all(|b| self.degree_of(&b.plus) == self.degree_of(&b.minus))
    }

    pub fn invertible(&self) -> Vec<bool> {
        self.variables.iter().map(|v| v.invertible).collect()
    }

    pub fn monomial_string(&self, exponents: &[Integer]) -> String {
        let mut s = String::new();
        for (v, e) in self.variables.iter().zip(exponents) {
            if e.is_zero() {
                continue;
            }
            s.push_str(&v.name);
            if *e != Integer::from(1) {
                s.push_str(&format!("^{e}"));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl fmt::Display for ChartPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|b| {
                format!(
                    "{} - {}",
                    self.monomial_string(&b.plus),
                    self.monomial_string(&b.minus)
                )
            })
            .collect();
        write!(f, "({})", rels.join(", "))
    }
}

const NAMES: [&str; 7] = ["x", "y", "z", "w", "v", "u", "s"];

/// Presentation of `C[C^∨ ∩ M]` as a binomial hypersurface, with a basis of
/// `C^⊥ ∩ M` as invertible variables.
///
/// `invertible_directions` must span `C^⊥ ∩ M` (empty for full-dimensional
/// cones). The leading monomial is the one of larger total degree, then
/// larger support. Variables are ordered by the leading monomial,
/// then the trailing one, then the rest, ties broken lexicographically by
/// degree; invertible variables come last.
pub fn binomial_presentation(
    cone: &Cone,
    invertible_directions: &[IntVector],
) -> Result<ChartPresentation> {
    let n = cone.ambient_dim();
    let k = cone.dim();
    if k == 0 {
        return Err(Error::PresentationUnsupported("zero cone".into()));
    }
    let lineality = kernel_basis(&IntMatrix::from_rows(cone.rays(), n));
    let given = hermite_normal_form(&IntMatrix::from_rows(invertible_directions, n));
    let given_rows: Vec<IntVector> = given.hnf.to_rows()[..given.rank()].to_vec();
    if given_rows != lineality.to_rows() {
        return Err(Error::PresentationUnsupported(
            "invertible directions must span the lineality lattice of the dual cone".into(),
        ));
    }
    let hb = cone.local_cone().dual()?.hilbert_basis();
    if hb.len() != k + 1 {
        return Err(Error::PresentationUnsupported(format!(
            "dual Hilbert basis has {} elements, a hypersurface needs {}",
            hb.len(),
            k + 1
        )));
    }
    let rel = kernel_basis(&IntMatrix::from_rows(&hb, k).transpose());
    debug_assert_eq!(rel.nrows(), 1);
    let mut u = rel.row_vec(0);
    let (pos, neg) = split(&u);
    let key = |v: &IntVector| {
        let support = v.iter().filter(|x| !x.is_zero()).count();
        (v.iter().sum::<Integer>(), support, v.clone())
    };
    if key(&neg) > key(&pos) {
        u = u.iter().map(|x| -x).collect();
    }
    let (pos, neg) = split(&u);

    let basis = cone.lattice_basis();
    let mut lifts: Vec<IntVector> = hb
        .iter()
        .map(|h| solve_integer(basis, h).expect("span lattice is saturated"))
        .collect();
    let w = lineality.to_rows();
    let mut c = residual(&u, &lifts, &lineality, n);
    for j in 0..w.len() {
        if c[j].is_zero() {
            continue;
        }
        if let Some(i) = (0..u.len()).find(|&i| !u[i].is_zero() && c[j].is_multiple_of(&u[i])) {
            let t = -(&c[j] / &u[i]);
            lifts[i] = add(&lifts[i], &scale(&w[j], &t));
        }
        c = residual(&u, &lifts, &lineality, n);
    }

    let group = |i: usize| {
        if pos[i].is_positive() {
            0
        } else if neg[i].is_positive() {
            1
        } else {
            2
        }
    };
    let mut order: Vec<usize> = (0..hb.len()).collect();
    order.sort_by(|&a, &b| (group(a), &hb[a]).cmp(&(group(b), &hb[b])));

    let total = order.len() + w.len();
    let name = |i: usize| {
        NAMES
            .get(i)
            .map_or_else(|| format!("x{i}"), |s| s.to_string())
    };
    let mut variables = Vec::with_capacity(total);
    let mut plus = Vec::with_capacity(total);
    let mut minus = Vec::with_capacity(total);
    for &i in &order {
        variables.push(PresentationVariable {
            name: name(variables.len()),
            degree: lifts[i].clone(),
            invertible: false,
        });
        plus.push(pos[i].clone());
        minus.push(neg[i].clone());
    }
    for (j, wj) in w.iter().enumerate() {
        variables.push(PresentationVariable {
            name: name(variables.len()),
            degree: wj.clone(),
            invertible: true,
        });
        plus.push(Integer::zero());
        minus.push(c[j].clone());
    }
    let pres = ChartPresentation {
        variables,
        relations: vec![Binomial { plus, minus }],
    };
    debug_assert!(pres.is_homogeneous());
    Ok(pres)
}

fn split(u: &[Integer]) -> (IntVector, IntVector) {
    let pos = u
        .iter()
        .map(|x| {
            if x.is_positive() {
                x.clone()
            } else {
                Integer::zero()
            }
        })
        .collect();
    let neg = u
        .iter()
        .map(|x| if x.is_negative() { -x } else { Integer::zero() })
        .collect();
    (pos, neg)
}

/// Coefficients `c` with `Σ uᵢ liftᵢ = Σ cⱼ wⱼ`.
fn residual(u: &[Integer], lifts: &[IntVector], lineality: &IntMatrix, n: usize) -> IntVector {
    let r = u
        .iter()
        .zip(lifts)
        .fold(vec![Integer::zero(); n], |acc, (ui, m)| {
            add(&acc, &scale(m, ui))
        });
    if lineality.nrows() == 0 {
        return Vec::new();
    }
    solve_integer(&lineality.transpose(), &r).expect("relation lies in the lineality lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_algebra::ivec;

    fn exps(b: &Binomial) -> (Vec<i64>, Vec<i64>) {
        let f = |v: &IntVector| v.iter().map(|x| i64::try_from(x).unwrap()).collect();
        (f(&b.plus), f(&b.minus))
    }

    #[test]
    fn rectangle_chart() {
        // a, e, −c, −d
        let c = Cone::from_i64(&[&[1, 0, 1], &[0, -1, 1], &[0, -1, -1], &[1, 0, -1]]).unwrap();
        let p = binomial_presentation(&c, &[]).unwrap();
        assert_eq!(p.to_string(), "(x^2y^2 - zw)");
        assert!(p.is_homogeneous());
        let degs: Vec<IntVector> = p.variables.iter().map(|v| v.degree.clone()).collect();
        assert_eq!(
            degs,
            vec![
                ivec(&[0, -1, 0]),
                ivec(&[1, 0, 0]),
                ivec(&[1, -1, -1]),
                ivec(&[1, -1, 1])
            ]
        );
        assert_eq!(exps(&p.relations[0]), (vec![2, 2, 0, 0], vec![0, 0, 1, 1]));
    }

    #[test]
    fn triangle_chart() {
        // e, −b, −c
        let c = Cone::from_i64(&[&[0, -1, 1], &[-1, -1, -1], &[0, -1, -1]]).unwrap();
        let p = binomial_presentation(&c, &[]).unwrap();
        assert_eq!(p.to_string(), "(xy - z^2)");
        assert!(p.is_homogeneous());
        assert!(p.variables.iter().all(|v| !v.invertible));
    }

    #[test]
    fn edge_chart_with_invertible_direction() {
        // edge [e, −c]
        let c = Cone::from_i64(&[&[0, -1, 1], &[0, -1, -1]]).unwrap();
        assert!(binomial_presentation(&c, &[]).is_err());
        let p = binomial_presentation(&c, &[ivec(&[-1, 0, 0])]).unwrap();
        assert_eq!(p.to_string(), "(xy - z^2)");
        assert!(p.variables[3].invertible);
        assert_eq!(p.variables[3].degree, ivec(&[1, 0, 0]));
        assert!(p.is_homogeneous());
        assert_eq!(p.relations[0].minus[3], Integer::zero());
    }

    #[test]
    fn non_hypersurface_rejected() {
        let c = Cone::from_i64(&[&[1, 0, 1], &[1, 1, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])
            .unwrap();
        assert!(matches!(
            binomial_presentation(&c, &[]),
            Err(Error::PresentationUnsupported(_))
        ));
    }
}
