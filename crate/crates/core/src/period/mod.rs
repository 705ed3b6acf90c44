//! Sparse Laurent polynomials with integer coefficients and their classical
//! periods `Σ_d const(f^d) t^d`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::lattice_algebra::rational::solve;
use crate::lattice_algebra::{int, sub, to_q, IntMatrix, IntVector, Integer, QVector};
use crate::polytope::LatticePolytope;
use crate::serde_util::parse_int;
use crate::{Error, Result};

pub type Exponent = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Integer>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        LaurentPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(vec![0; dim], Integer::one())
    }

    pub fn monomial(e: Exponent, c: Integer) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    /// Sum of the given terms; repeated exponents are added up.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Exponent, Integer)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// `Σ xᵉ` over the given exponents, each with coefficient 1.
    pub fn from_exponents(dim: usize, exps: &[&[i64]]) -> Result<Self> {
        Self::from_terms(dim, exps.iter().map(|e| (e.to_vec(), Integer::one())))
    }

    fn add_term(&mut self, e: Exponent, c: Integer) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Integer> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[i64]) -> Integer {
        self.terms.get(e).cloned().unwrap_or_else(Integer::zero)
    }

    pub fn constant_term(&self) -> Integer {
        self.coefficient(&vec![0; self.dim])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<Exponent, Integer> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Integer::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPolynomial {
            dim: self.dim,
            terms: acc,
        })
    }

    pub fn pow(&self, d: u32) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..d {
            out = out.multiply(self).expect("same dimension");
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn exponents(&self) -> Vec<IntVector> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| int(x)).collect())
            .collect()
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        if self.is_zero() {
            return Err(Error::Empty);
        }
        LatticePolytope::hull_in(self.dim, &self.exponents())
    }

    /// The terms whose exponents lie on the face of the Newton polytope
    /// spanned by the given vertices.
    pub fn restrict_to_face(&self, face: &[IntVector]) -> Result<Self> {
        let np = self.newton_polytope()?;
        let mut idx = face
            .iter()
            .map(|v| np.vertex_index(v).ok_or(Error::NotAFace))
            .collect::<Result<Vec<usize>>>()?;
        idx.sort_unstable();
        idx.dedup();
        if idx.len() == np.vertices().len() {
            return Ok(self.clone());
        }
        if idx.is_empty() || !np.is_face(&idx) {
            return Err(Error::NotAFace);
        }
        let base = &face[0];
        let dirs: Vec<QVector> = face[1..].iter().map(|v| to_q(&sub(v, base))).collect();
        // columns are the edge directions from the base vertex
        let cols: Vec<QVector> = (0..self.dim)
            .map(|r| dirs.iter().map(|d| d[r].clone()).collect())
            .collect();
        let on_face = |e: &Exponent| {
            let x: IntVector = e.iter().map(|&x| int(x)).collect();
            let rhs = to_q(&sub(&x, base));
            if dirs.is_empty() {
                return rhs.iter().all(Zero::is_zero);
            }
            solve(&cols, &rhs, dirs.len()).is_some()
        };
        Ok(LaurentPolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| on_face(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// `f(x^{g·e})`: exponents transformed by an integer matrix.
    pub fn transform(&self, g: &IntMatrix) -> Result<Self> {
        if g.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.ncols(),
            });
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let x: IntVector = e.iter().map(|&x| int(x)).collect();
            let y: Exponent = g
                .mul_vec(&x)
                .iter()
                .map(|v| i64::try_from(v).expect("exponent fits in i64"))
                .collect();
            (y, c.clone())
        });
        Self::from_terms(g.nrows(), terms)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"e": e, "c": c.to_string()}))
            .collect();
        json!({"dim": self.dim, "terms": terms})
    }

    /// Parses `{"dim": n, "terms": [{"e": […], "c": "…"}]}`; coefficients
    /// may also be JSON integers.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("Laurent polynomial: {what}"));
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing \"dim\""))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?
            .iter()
            .map(|t| {
                let e = serde_json::from_value::<Exponent>(
                    t.get("e")
                        .cloned()
                        .ok_or_else(|| bad("term without \"e\""))?,
                )
                .map_err(|err| bad(&err.to_string()))?;
                let c = parse_int(t.get("c").ok_or_else(|| bad("term without \"c\""))?)?;
                Ok((e, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(dim, terms)
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            for (i, &x) in e.iter().enumerate() {
                let v = VARS
                    .get(i)
                    .map_or_else(|| format!("x{}", i + 1), |s| s.to_string());
                match x {
                    0 => {}
                    1 => mono.push_str(&v),
                    x => mono.push_str(&format!("{v}^{x}")),
                }
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (a.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}{mono}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `c_d = const(f^d)` for `d = 0…N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSeries {
    pub coefficients: Vec<Integer>,
}

impl PeriodSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for PeriodSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_strings().join(", "))
    }
}

impl Serialize for PeriodSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Constant terms of `f⁰, f¹, …, f^N` by iterated multiplication.
pub fn classical_period(f: &LaurentPolynomial, n: u32) -> PeriodSeries {
    let mut coefficients = Vec::with_capacity(n as usize + 1);
    let mut power = LaurentPolynomial::one(f.dim());
    coefficients.push(power.constant_term());
    for _ in 0..n {
        power = power.multiply(f).expect("same dimension");
        coefficients.push(power.constant_term());
    }
    PeriodSeries { coefficients }
}

/// The same coefficients as `c_d = Σ_e [f^a]_e [f^b]_{−e}` with
/// `a = ⌈d/2⌉`, `b = ⌊d/2⌋`, needing powers only up to `⌈N/2⌉`.
pub fn classical_period_split(f: &LaurentPolynomial, n: u32) -> PeriodSeries {
    let mut powers = vec![LaurentPolynomial::one(f.dim())];
    for _ in 0..n.div_ceil(2) {
        let next = powers
            .last()
            .expect("nonempty")
            .multiply(f)
            .expect("same dimension");
        powers.push(next);
    }
    let coefficients = (0..=n as usize)
        .map(|d| {
            let (a, b) = (&powers[d.div_ceil(2)], &powers[d / 2]);
            a.terms()
                .iter()
                .map(|(e, c)| {
                    let m: Exponent = e.iter().map(|x| -x).collect();
                    c * b.coefficient(&m)
                })
                .sum()
        })
        .collect();
    PeriodSeries { coefficients }
}
