use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::{hilbert_function_of_presentation, HullPresentation, Monomial};
use crate::lattice_algebra::rational::{rank, rref};
use crate::lattice_algebra::{solve_integer, IntMatrix, QVector, Rational};
use crate::serde_util::{int_value, parse_int_vec};
use crate::{Error, Result};

/// A lattice automorphism of N together with the permutation it induces on
/// the hull coordinates: variable `i` is sent to variable `permutation[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionGenerator {
    pub matrix: IntMatrix,
    pub permutation: Vec<usize>,
}

impl ActionGenerator {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> = self
            .matrix
            .to_rows()
            .iter()
            .map(|r| r.iter().map(int_value).collect())
            .collect();
        json!({"matrix": rows, "perm": self.permutation})
    }

    /// Parses `{"generators": [{"matrix": [[…]], "perm": […]}]}`.
    pub fn list_from_json(v: &Value) -> Result<Vec<ActionGenerator>> {
        let bad = |what: &str| Error::Parse(format!("group action: {what}"));
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"generators\" array"))?;
        gens.iter()
            .map(|g| {
                let rows = g
                    .get("matrix")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("generator without a matrix"))?
                    .iter()
                    .map(parse_int_vec)
                    .collect::<Result<Vec<_>>>()?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(bad("matrix must be square"));
                }
                let permutation = serde_json::from_value::<Vec<usize>>(
                    g.get("perm")
                        .cloned()
                        .ok_or_else(|| bad("generator without a perm"))?,
                )
                .map_err(|e| bad(&e.to_string()))?;
                Ok(ActionGenerator {
                    matrix: IntMatrix::from_rows(&rows, n),
                    permutation,
                })
            })
            .collect()
    }
}

/// The finite part of a torus-times-finite-group action on a hull, as the
/// closed set of coordinate permutations. The identity comes first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAction {
    nvars: usize,
    elements: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn trivial(nvars: usize) -> Self {
        GroupAction {
            nvars,
            elements: vec![(0..nvars).collect()],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    /// Image of a monomial under a permutation of the variables.
    pub fn apply(perm: &[usize], e: &[u32]) -> Monomial {
        let mut out = vec![0; e.len()];
        for (i, &k) in e.iter().enumerate() {
            out[perm[i]] = k;
        }
        out
    }
}

/// The group generated by the given lattice automorphisms acting on the
/// hull, after checking that each generator maps weights by the contragredient
/// action and preserves the ideal.
pub fn build_group_action(
    hull: &HullPresentation,
    generators: &[ActionGenerator],
) -> Result<GroupAction> {
    let n = hull.nvars();
    let dim = hull.weight_dim();
    for (k, g) in generators.iter().enumerate() {
        let p = &g.permutation;
        let image: BTreeSet<usize> = p.iter().copied().collect();
        if p.len() != n || image.len() != n || image.iter().any(|&i| i >= n) {
            return Err(Error::InvalidAction(format!(
                "generator {k}: not a permutation of {n} variables"
            )));
        }
        if g.matrix.nrows() != dim || g.matrix.ncols() != dim {
            return Err(Error::InvalidAction(format!(
                "generator {k}: matrix must be {dim}×{dim}"
            )));
        }
        // ⟨g⁻ᵀw, g·x⟩ = ⟨w, x⟩
        let gt = g.matrix.transpose();
        for (i, v) in hull.variables().iter().enumerate() {
            let moved = solve_integer(&gt, &v.weight).ok_or_else(|| {
                Error::InvalidAction(format!("generator {k}: matrix is not invertible over Z"))
            })?;
            if hull.variables()[p[i]].weight != moved {
                return Err(Error::InvalidAction(format!(
                    "generator {k}: sends {} to {}, whose weight does not match",
                    v.name,
                    hull.variables()[p[i]].name
                )));
            }
        }
        for gen in hull.ideal() {
            if !hull.in_ideal(&GroupAction::apply(p, gen)) {
                return Err(Error::InvalidAction(format!(
                    "generator {k}: maps {} outside the ideal",
                    hull.monomial_string(gen)
                )));
            }
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let c: Vec<usize> = e.iter().map(|&i| g.permutation[i]).collect();
            if seen.insert(c.clone()) {
                elements.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    Ok(GroupAction { nvars: n, elements })
}

/// Monomials of degree `d` outside the ideal with zero torus weight.
pub fn torus_invariant_basis(hull: &HullPresentation, d: u32) -> Vec<Monomial> {
    hull.standard_monomials(d)
        .into_iter()
        .filter(|e| hull.weight(e).iter().all(Zero::is_zero))
        .collect()
}

/// `(1/|G|) Σ_g g` on the torus-invariant monomials of degree `d`, as a
/// square matrix whose column `i` is the average of the images of basis
/// monomial `i`.
pub fn averaging_operator(
    hull: &HullPresentation,
    action: &GroupAction,
    d: u32,
) -> Result<(Vec<Monomial>, Vec<QVector>)> {
    check(hull, action)?;
    let basis = torus_invariant_basis(hull, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let w = Rational::new(1.into(), action.order().into());
    let mut p = vec![vec![Rational::zero(); basis.len()]; basis.len()];
    for (i, e) in basis.iter().enumerate() {
        for g in action.elements() {
            let j = index[&GroupAction::apply(g, e)];
            p[j][i] += &w;
        }
    }
    Ok((basis, p))
}

fn check(hull: &HullPresentation, action: &GroupAction) -> Result<()> {
    if hull.nvars() != action.nvars() {
        return Err(Error::InvalidAction(format!(
            "action on {} variables, hull has {}",
            action.nvars(),
            hull.nvars()
        )));
    }
    Ok(())
}

/// Blocks of the averaging operator: the operator preserves the span of
/// every orbit, so its rank is the sum of the ranks of these blocks.
fn invariant_blocks(
    hull: &HullPresentation,
    action: &GroupAction,
    d: u32,
) -> (Vec<Monomial>, Vec<Vec<usize>>) {
    let basis = torus_invariant_basis(hull, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut seen = vec![false; basis.len()];
    let mut blocks = Vec::new();
    for i in 0..basis.len() {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = action
            .elements()
            .iter()
            .map(|g| index[&GroupAction::apply(g, &basis[i])])
            .collect();
        for &j in &orbit {
            seen[j] = true;
        }
        blocks.push(orbit.into_iter().collect());
    }
    (basis, blocks)
}

/// Averaging-operator rows restricted to one block, as invariant vectors
/// in block coordinates.
fn block_invariants(basis: &[Monomial], block: &[usize], action: &GroupAction) -> Vec<QVector> {
    let pos: HashMap<&Monomial, usize> = block
        .iter()
        .enumerate()
        .map(|(k, &i)| (&basis[i], k))
        .collect();
    let w = Rational::new(1.into(), action.order().into());
    let cols: Vec<QVector> = block
        .iter()
        .map(|&i| {
            let mut v = vec![Rational::zero(); block.len()];
            for g in action.elements() {
                v[pos[&GroupAction::apply(g, &basis[i])]] += &w;
            }
            v
        })
        .collect();
    rref(&cols, block.len()).0
}

/// Dimension of the invariants of the quotient ring in each degree
/// `0..=max_degree`, as the exact rank of the averaging operator.
pub fn invariant_hilbert_function(
    hull: &HullPresentation,
    action: &GroupAction,
    max_degree: u32,
) -> Result<Vec<usize>> {
    check(hull, action)?;
    Ok((0..=max_degree)
        .map(|d| {
            let (basis, blocks) = invariant_blocks(hull, action, d);
            blocks
                .iter()
                .map(|b| block_invariants(&basis, b, action).len())
                .sum()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCertificate {
    pub max_degree: u32,
    /// Dimensions of the invariant ring by degree.
    pub invariant: Vec<usize>,
    /// Hilbert function of the claimed presentation.
    pub claimed: Vec<usize>,
    pub holds: bool,
    pub first_mismatch: Option<u32>,
}

/// Compares the invariant ring with a claimed presentation degree by degree.
pub fn verify_invariant_presentation(
    hull: &HullPresentation,
    action: &GroupAction,
    claimed: &HullPresentation,
    max_degree: u32,
) -> Result<InvariantCertificate> {
    let invariant = invariant_hilbert_function(hull, action, max_degree)?;
    let claimed_hf = hilbert_function_of_presentation(claimed, max_degree);
    let first_mismatch =
        (0..=max_degree).find(|&d| invariant[d as usize] != claimed_hf[d as usize]);
    Ok(InvariantCertificate {
        max_degree,
        invariant,
        claimed: claimed_hf,
        holds: first_mismatch.is_none(),
        first_mismatch,
    })
}

type Poly = BTreeMap<Monomial, Rational>;

/// Number of minimal algebra generators of the invariant ring in each
/// degree up to `max_degree`: invariants modulo products of invariants of
/// lower degree. Degrees without new generators are omitted.
pub fn invariant_generators(
    hull: &HullPresentation,
    action: &GroupAction,
    max_degree: u32,
) -> Result<Vec<(u32, usize)>> {
    check(hull, action)?;
    let mut invariants: Vec<Vec<Poly>> = Vec::new();
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let (basis, blocks) = invariant_blocks(hull, action, d);
        let mut inv = Vec::new();
        for b in &blocks {
            for v in block_invariants(&basis, b, action) {
                let poly: Poly = b
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&i, c)| (basis[i].clone(), c))
                    .collect();
                inv.push(poly);
            }
        }
        if d > 0 && !inv.is_empty() {
            let index: HashMap<&Monomial, usize> =
                basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut products: Vec<QVector> = Vec::new();
            for d1 in 1..=d / 2 {
                let d2 = d - d1;
                for a in &invariants[d1 as usize] {
                    for b in &invariants[d2 as usize] {
                        let mut v = vec![Rational::zero(); basis.len()];
                        for (ea, ca) in a {
                            for (eb, cb) in b {
                                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                                if let Some(&k) = index.get(&e) {
                                    v[k] += ca * cb;
                                }
                            }
                        }
                        if v.iter().any(|x| !x.is_zero()) {
                            products.push(v);
                        }
                    }
                }
            }
            let new = inv.len() - rank(&products, basis.len());
            if new > 0 {
                out.push((d, new));
            }
        }
        invariants.push(inv);
    }
    Ok(out)
}

/// `true` when the averaging operator is idempotent with rank equal to its
/// trace.
#[cfg(test)]
#[allow(clippy::needless_range_loop)]
fn averaging_is_projection(p: &[QVector]) -> bool {
    let n = p.len();
    let mut sq = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if p[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                sq[i][j] += &p[i][k] * &p[k][j];
            }
        }
    }
    let trace: Rational = (0..n).map(|i| p[i][i].clone()).sum();
    sq == p && trace == Rational::from_integer(rank(p, n).into())
}
