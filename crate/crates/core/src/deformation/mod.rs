//! Hulls of deformation functors presented as power series rings modulo
//! monomial ideals, the action of a torus times a finite group on them,
//! and Hilbert functions of invariant rings.

mod action;
mod hull;

pub use action::{
    averaging_operator, build_group_action, invariant_generators, invariant_hilbert_function,
    torus_invariant_basis, verify_invariant_presentation, ActionGenerator, GroupAction,
    InvariantCertificate,
};
pub use hull::{
    assemble_hull, hull_for_polytope, local_hull, HullReport, ObstructedChart, VanishingAssumptions,
};

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::lattice_algebra::{add, scale, IntVector, Integer};
use crate::serde_util::{int_value, parse_int_vec};
use crate::{Error, Result};

/// Exponent vector over the variables of a presentation.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullVariable {
    pub name: String,
    /// Torus weight in M.
    pub weight: IntVector,
    /// Degree for Hilbert functions.
    pub tdeg: u32,
}

impl HullVariable {
    pub fn new(name: &str, weight: IntVector, tdeg: u32) -> Self {
        HullVariable {
            name: name.to_string(),
            weight,
            tdeg,
        }
    }
}

/// `C⟦variables⟧ / (ideal)` with a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPresentation {
    variables: Vec<HullVariable>,
    ideal: Vec<Monomial>,
}

impl HullPresentation {
    pub fn new(variables: Vec<HullVariable>, ideal: Vec<Monomial>) -> Result<Self> {
        let names: BTreeSet<&str> = variables.iter().map(|v| v.name.as_str()).collect();
        if names.len() != variables.len() {
            return Err(Error::Parse("variable names must be distinct".into()));
        }
        if let Some(v) = variables.first() {
            let n = v.weight.len();
            if let Some(w) = variables.iter().find(|w| w.weight.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.weight.len(),
                });
            }
        }
        if variables.iter().any(|v| v.tdeg == 0) {
            return Err(Error::Parse("variable degrees must be positive".into()));
        }
        for g in &ideal {
            if g.len() != variables.len() {
                return Err(Error::DimensionMismatch {
                    expected: variables.len(),
                    found: g.len(),
                });
            }
        }
        Ok(HullPresentation { variables, ideal })
    }

    pub fn variables(&self) -> &[HullVariable] {
        &self.variables
    }

    pub fn ideal(&self) -> &[Monomial] {
        &self.ideal
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn weight_dim(&self) -> usize {
        self.variables.first().map_or(0, |v| v.weight.len())
    }

    pub fn in_ideal(&self, e: &[u32]) -> bool {
        self.ideal
            .iter()
            .any(|g| g.iter().zip(e).all(|(a, b)| a <= b))
    }

    pub fn weight(&self, e: &[u32]) -> IntVector {
        self.variables
            .iter()
            .zip(e)
            .fold(vec![Integer::from(0); self.weight_dim()], |acc, (v, &k)| {
                add(&acc, &scale(&v.weight, &Integer::from(k)))
            })
    }

    pub fn tdegree(&self, e: &[u32]) -> u32 {
        self.variables.iter().zip(e).map(|(v, &k)| v.tdeg * k).sum()
    }

    /// All monomials of degree `d`, in lexicographic order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let degs: Vec<u32> = self.variables.iter().map(|v| v.tdeg).collect();
        let mut out = Vec::new();
        let mut cur = vec![0; degs.len()];
        fill(&degs, 0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Monomials of degree `d` outside the ideal.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.monomials_of_degree(d)
            .into_iter()
            .filter(|e| !self.in_ideal(e))
            .collect()
    }

    pub fn monomial_string(&self, e: &[u32]) -> String {
        let mut s = String::new();
        for (v, &k) in self.variables.iter().zip(e) {
            match k {
                0 => {}
                1 => s.push_str(&v.name),
                k => s.push_str(&format!("{}^{k}", v.name)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn ideal_string(&self) -> String {
        let gens: Vec<String> = self.ideal.iter().map(|g| self.monomial_string(g)).collect();
        format!("({})", gens.join(", "))
    }

    pub fn to_json(&self) -> Value {
        let vars: Vec<Value> = self
            .variables
            .iter()
            .map(|v| {
                let w: Vec<Value> = v.weight.iter().map(int_value).collect();
                json!({"name": v.name, "weight": w, "tdeg": v.tdeg})
            })
            .collect();
        json!({"vars": vars, "ideal": self.ideal})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("hull presentation: {what}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let vars = obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"vars\" array"))?;
        let variables = vars
            .iter()
            .map(|x| {
                let name = x
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("variable without a name"))?;
                let weight = parse_int_vec(
                    x.get("weight")
                        .ok_or_else(|| bad("variable without a weight"))?,
                )?;
                let tdeg = match x.get("tdeg") {
                    None => 1,
                    Some(t) => t
                        .as_u64()
                        .and_then(|t| u32::try_from(t).ok())
                        .ok_or_else(|| bad("tdeg must be a small positive integer"))?,
                };
                Ok(HullVariable::new(name, weight, tdeg))
            })
            .collect::<Result<Vec<_>>>()?;
        let ideal = match obj.get("ideal") {
            None => Vec::new(),
            Some(i) => serde_json::from_value::<Vec<Monomial>>(i.clone())
                .map_err(|e| bad(&format!("ideal: {e}")))?,
        };
        HullPresentation::new(variables, ideal)
    }
}

fn fill(degs: &[u32], i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    if i == degs.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let mut k = 0;
    while k * degs[i] <= left {
        cur[i] = k;
        fill(degs, i + 1, left - k * degs[i], cur, out);
        k += 1;
    }
    cur[i] = 0;
}

impl Serialize for HullPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Number of monomials outside the ideal in each degree `0..=max_degree`.
pub fn hilbert_function_of_presentation(pres: &HullPresentation, max_degree: u32) -> Vec<usize> {
    (0..=max_degree)
        .map(|d| pres.standard_monomials(d).len())
        .collect()
}
