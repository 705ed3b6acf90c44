//! M-graded T¹ modules of affine charts, restriction maps between them, and
//! the two-term Čech complex computing `H⁰` and `H¹`.
//!
//! Modules are finite unions of sporadic degrees and lattice rays, each ray
//! contributing one dimension in every degree it passes through.

mod cech;
mod partition;
mod rules;

pub use cech::{
    cech_h0_h1, global_t1, CechCohomology, CechData, ClassRecord, DifferentialBlock, GlobalT1,
};
pub use partition::{partition, DegreeClass};
pub use rules::{
    restriction, t1_binomial_hypersurface, t1_for_chart, t1_polygon_cone, t1_qg_quotient,
    GradedLinearMap,
};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::lattice_algebra::{add, gcd_all, is_zero_vec, scale, sub, IntVector, Integer};
use crate::serde_util::int_value;
use crate::{Error, Result};

/// Name of a basis element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Exponent vector over the chart presentation's variables.
    Monomial(IntVector),
    /// A class not represented by a monomial, such as the `k − 3` deformation
    /// classes of a polygon cone.
    Isolated(usize),
    /// A cohomology class, numbered within its module.
    Class(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sporadic {
    pub degree: IntVector,
    pub label: Label,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RayRange {
    /// `base + n·dir` for `n ≥ 0`.
    FromBase,
    /// `base + n·dir` for all `n ∈ Z`.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub base: IntVector,
    pub dir: IntVector,
    pub range: RayRange,
    /// Label of the element at `base`.
    pub label: Label,
    /// Variable whose exponent grows along the ray, for monomial labels.
    pub step: Option<usize>,
}

impl Ray {
    /// The `n` with `m = base + n·dir` inside the range.
    pub fn param(&self, m: &[Integer]) -> Option<Integer> {
        let i = self.dir.iter().position(|x| !x.is_zero())?;
        let diff = sub(m, &self.base);
        let (n, r) = diff[i].div_rem(&self.dir[i]);
        if !r.is_zero() || add(&self.base, &scale(&self.dir, &n)) != m {
            return None;
        }
        match self.range {
            RayRange::FromBase if n.is_negative() => None,
            _ => Some(n),
        }
    }

    pub fn point(&self, n: &Integer) -> IntVector {
        add(&self.base, &scale(&self.dir, n))
    }

    pub fn label_at(&self, n: &Integer) -> Label {
        match (&self.label, self.step) {
            (Label::Monomial(e), Some(j)) => {
                let mut e = e.clone();
                e[j] += n;
                Label::Monomial(e)
            }
            (l, _) => l.clone(),
        }
    }
}

/// Data of the monomial quotient a hypersurface module was built from,
/// used to decide which classes survive a localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MonomialData {
    pub degrees: Vec<IntVector>,
    pub invertible: Vec<bool>,
    /// Minimal monomial generators, zero in invertible positions.
    pub ideal: Vec<IntVector>,
}

impl MonomialData {
    pub fn max_exponent(&self) -> Integer {
        self.ideal
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Integer::zero)
    }

    pub fn in_ideal(&self, e: &[Integer]) -> bool {
        self.ideal.iter().any(|g| {
            g.iter()
                .zip(e)
                .zip(&self.invertible)
                .all(|((gi, ei), &inv)| inv || gi <= ei)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayFamilyModule {
    ambient_dim: usize,
    chart: String,
    sporadic: Vec<Sporadic>,
    rays: Vec<Ray>,
    pub(crate) monomials: Option<MonomialData>,
    /// Ray parameter after which membership questions stop changing.
    pub(crate) stable_after: usize,
}

impl RayFamilyModule {
    pub fn zero(ambient_dim: usize) -> Self {
        RayFamilyModule {
            ambient_dim,
            chart: String::new(),
            sporadic: Vec::new(),
            rays: Vec::new(),
            monomials: None,
            stable_after: 0,
        }
    }

    /// Builds a module, checking dimensions and that ray directions are
    /// primitive.
    pub fn new(ambient_dim: usize, sporadic: Vec<Sporadic>, rays: Vec<Ray>) -> Result<Self> {
        for d in sporadic
            .iter()
            .map(|s| &s.degree)
            .chain(rays.iter().map(|r| &r.base))
        {
            if d.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: d.len(),
                });
            }
        }
        for r in &rays {
            if r.dir.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: r.dir.len(),
                });
            }
            if is_zero_vec(&r.dir) || !gcd_all(&r.dir).is_one() {
                return Err(Error::Internal("ray direction must be primitive".into()));
            }
        }
        let mut m = RayFamilyModule {
            ambient_dim,
            chart: String::new(),
            sporadic,
            rays,
            monomials: None,
            stable_after: 0,
        };
        m.sort();
        Ok(m)
    }

    fn sort(&mut self) {
        self.sporadic
            .sort_by(|a, b| (&a.degree, &a.label).cmp(&(&b.degree, &b.label)));
        self.rays.sort_by(|a, b| {
            (a.range, &a.dir, &a.base, &a.label).cmp(&(b.range, &b.dir, &b.base, &b.label))
        });
    }

    pub fn with_chart(mut self, id: &str) -> Self {
        self.chart = id.to_string();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Id of the chart the basis labels refer to.
    pub fn chart(&self) -> &str {
        &self.chart
    }

    pub fn sporadic(&self) -> &[Sporadic] {
        &self.sporadic
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.sporadic.is_empty() && self.rays.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rays.is_empty()
    }

    /// Basis labels in degree `m`: sporadic elements first, then rays.
    pub fn basis_at(&self, m: &[Integer]) -> Vec<Label> {
        let mut out: Vec<Label> = self
            .sporadic
            .iter()
            .filter(|s| s.degree == m)
            .map(|s| s.label.clone())
            .collect();
        for r in &self.rays {
            if let Some(n) = r.param(m) {
                out.push(r.label_at(&n));
            }
        }
        out
    }

    pub fn dim_at(&self, m: &[Integer]) -> usize {
        self.sporadic.iter().filter(|s| s.degree == m).count()
            + self.rays.iter().filter(|r| r.param(m).is_some()).count()
    }

    /// Total dimension, or `None` when some ray makes it infinite.
    pub fn total_dim(&self) -> Option<usize> {
        self.is_finite().then_some(self.sporadic.len())
    }

    /// Degrees with their dimensions, sorted, when the module is finite.
    pub fn graded_dims(&self) -> Option<Vec<(IntVector, usize)>> {
        if !self.is_finite() {
            return None;
        }
        let mut out: Vec<(IntVector, usize)> = Vec::new();
        for s in &self.sporadic {
            match out.last_mut() {
                Some((d, k)) if *d == s.degree => *k += 1,
                _ => out.push((s.degree.clone(), 1)),
            }
        }
        Some(out)
    }

    /// Whether both modules have the same dimension in every degree.
    pub fn same_dimensions(&self, other: &RayFamilyModule) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        let Ok(classes) = partition(&[self, other]) else {
            return false;
        };
        classes.iter().all(|c| {
            let m = c.representative();
            self.dim_at(m) == other.dim_at(m)
        })
    }

    pub fn to_json(&self) -> Value {
        let mut sporadic: Vec<Value> = Vec::new();
        let mut i = 0;
        while i < self.sporadic.len() {
            let d = &self.sporadic[i].degree;
            let k = self.sporadic[i..]
                .iter()
                .take_while(|s| &s.degree == d)
                .count();
            sporadic.push(json!({"degree": ints(d), "dim": k}));
            i += k;
        }
        let rays: Vec<Value> = self
            .rays
            .iter()
            .map(|r| {
                let range = match r.range {
                    RayRange::FromBase => "n>=0",
                    RayRange::All => "all",
                };
                json!({"base": ints(&r.base), "dir": ints(&r.dir), "range": range})
            })
            .collect();
        json!({"sporadic": sporadic, "rays": rays})
    }
}

fn ints(v: &[Integer]) -> Vec<Value> {
    v.iter().map(int_value).collect()
}

impl Serialize for RayFamilyModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
