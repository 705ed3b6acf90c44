use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVector, Integer};

/// `left * input * right == diagonal`, with `left` and `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries d₁ | d₂ | …, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<Integer> {
        let n = self.diagonal.nrows().min(self.diagonal.ncols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// `transform * input == hnf`, with `transform` unimodular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub hnf: IntMatrix,
    pub transform: IntMatrix,
    /// Column index of the pivot in each nonzero row.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn min_nonzero_in(
    m: &IntMatrix,
    rows: impl Iterator<Item = usize> + Clone,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Integer)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = m[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_nonzero_in(&d, t..m, t..n) else {
            break;
        };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &-&q);
                left.add_row_multiple(i, t, &-&q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                right.add_col_multiple(j, t, &-&q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // A remainder survived in the pivot row/column; it is smaller
                // than the pivot, so move it in and repeat.
                let col_min = min_nonzero_in(&d, t + 1..m, t..t + 1);
                let row_min = min_nonzero_in(&d, t..t + 1, t + 1..n);
                let pick = match (col_min, row_min) {
                    (Some(c), Some(r)) => {
                        if d[c].abs() <= d[r].abs() {
                            c
                        } else {
                            r
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!(),
                };
                d.swap_rows(t, pick.0);
                left.swap_rows(t, pick.0);
                d.swap_cols(t, pick.1);
                right.swap_cols(t, pick.1);
                continue;
            }
            // divisibility condition on the remaining block
            let pivot = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    d.add_row_multiple(t, i, &Integer::from(1));
                    left.add_row_multiple(t, i, &Integer::from(1));
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithForm {
        left,
        diagonal: d,
        right,
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.nrows(), a.ncols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;

    for col in 0..n {
        if row == m {
            break;
        }
        while let Some((pi, _)) = min_nonzero_in(&h, row..m, col..col + 1) {
            h.swap_rows(row, pi);
            u.swap_rows(row, pi);
            let mut clean = true;
            for i in row + 1..m {
                let q = h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-&q);
                clean &= h[(i, col)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &-&q);
            u.add_row_multiple(i, row, &-&q);
        }
        pivots.push(col);
        row += 1;
    }
    HermiteForm {
        hnf: h,
        transform: u,
        pivots,
    }
}

/// Basis (as rows) of the integer kernel `{x ∈ Zⁿ : A x = 0}`, in Hermite
/// normal form. The lattice spanned is saturated.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.ncols();
    let hf = hermite_normal_form(&a.transpose());
    let r = hf.rank();
    let rows: Vec<IntVector> = (r..n).map(|i| hf.transform.row_vec(i)).collect();
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    let reduced = hermite_normal_form(&IntMatrix::from_rows(&rows, n));
    let k = reduced.rank();
    IntMatrix::from_rows(&reduced.hnf.to_rows()[..k], n)
}

/// Exact rank, and the determinant when the matrix is square (fraction-free
/// Bareiss elimination).
pub fn rank_and_det(a: &IntMatrix) -> (usize, Option<Integer>) {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = a.clone();
    let mut prev = Integer::from(1);
    let mut sign_flip = false;
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !w[(i, col)].is_zero()) else {
            continue;
        };
        if p != row {
            w.swap_rows(p, row);
            sign_flip = !sign_flip;
        }
        for i in row + 1..m {
            for j in col + 1..n {
                let v = (&w[(row, col)] * &w[(i, j)] - &w[(i, col)] * &w[(row, j)]) / &prev;
                w[(i, j)] = v;
            }
            w[(i, col)] = Integer::zero();
        }
        prev = w[(row, col)].clone();
        row += 1;
        rank += 1;
    }
    let det = (m == n).then(|| {
        if rank < n {
            Integer::zero()
        } else if n == 0 {
            Integer::from(1)
        } else {
            let d = w[(n - 1, n - 1)].clone();
            if sign_flip {
                -d
            } else {
                d
            }
        }
    });
    (rank, det)
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Integer]) -> Option<IntVector> {
    assert_eq!(a.nrows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.left.mul_vec(b);
    let n = a.ncols();
    let mut y = vec![Integer::zero(); n];
    for (i, rhs) in ub.iter().enumerate() {
        let d = if i < n && i < a.nrows() {
            snf.diagonal[(i, i)].clone()
        } else {
            Integer::zero()
        };
        if d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, r) = rhs.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.right.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_algebra::ivec;

    fn det(m: &IntMatrix) -> Integer {
        rank_and_det(m).1.unwrap()
    }

    #[test]
    fn snf_identity_and_divisibility() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).diagonal, id);
        let a = IntMatrix::from_i64(&[&[4, 0], &[0, 2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), ivec(&[2, 4]));
        assert_eq!(&(&s.left * &a) * &s.right, s.diagonal);
    }

    #[test]
    fn snf_of_chart_v_rays() {
        let a = IntMatrix::from_i64(&[&[-1, -1, -1], &[-1, 0, 1], &[0, -1, 1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), ivec(&[1, 1, 3]));
        // gcd of 2x2 minors is 1 and |det| = 3
        assert_eq!(det(&a).abs(), Integer::from(3));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank(), 0);
        let a = IntMatrix::from_i64(&[&[2, 4, 6], &[4, 8, 13]]);
        let s = smith_normal_form(&a);
        assert_eq!(&(&s.left * &a) * &s.right, s.diagonal);
        assert_eq!(s.invariant_factors(), ivec(&[1, 2]));
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id).hnf, id);

        let row = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let h = hermite_normal_form(&row);
        assert_eq!(h.hnf, row);
        assert_eq!(h.transform, IntMatrix::identity(1));

        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(hermite_normal_form(&swap).hnf, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_pivot_is_gcd() {
        let row = IntMatrix::from_i64(&[&[6, 4, 2]]);
        let h = hermite_normal_form(&row);
        assert_eq!(h.hnf[(0, 0)], Integer::from(6));
        let col = IntMatrix::from_i64(&[&[6], &[4], &[10]]);
        let h = hermite_normal_form(&col);
        assert_eq!(h.hnf[(0, 0)], Integer::from(2));
        assert_eq!(&h.transform * &col, h.hnf);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k.nrows(), 2);
        for v in [ivec(&[1, -1, 0]), ivec(&[0, 1, -1])] {
            assert!(solve_integer(&k.transpose(), &v).is_some());
        }
        let k = kernel_basis(&IntMatrix::identity(3));
        assert_eq!(k.nrows(), 0);
    }

    #[test]
    fn kernel_of_weight_row() {
        let a = IntMatrix::from_i64(&[&[1, 2, -1, -2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.nrows(), 3);
        for v in [
            ivec(&[1, 0, 1, 0]),
            ivec(&[0, 1, 0, 1]),
            ivec(&[2, 0, 0, 1]),
        ] {
            assert!(solve_integer(&k.transpose(), &v).is_some(), "{v:?}");
        }
    }

    #[test]
    fn rank_det_examples() {
        assert_eq!(
            rank_and_det(&IntMatrix::identity(3)),
            (3, Some(Integer::from(1)))
        );
        let cech = IntMatrix::from_i64(&[&[1, -1, 0], &[1, 0, -1]]);
        assert_eq!(rank_and_det(&cech), (2, None));
        assert_eq!(
            rank_and_det(&IntMatrix::zeros(2, 2)),
            (0, Some(Integer::zero()))
        );
        let a = IntMatrix::from_i64(&[&[0, 2], &[3, 1]]);
        assert_eq!(rank_and_det(&a).1, Some(Integer::from(-6)));
    }

    #[test]
    fn solve_integer_cases() {
        let a = IntMatrix::from_i64(&[&[2, 4]]);
        assert!(solve_integer(&a, &ivec(&[3])).is_none());
        let x = solve_integer(&a, &ivec(&[6])).unwrap();
        assert_eq!(a.mul_vec(&x), ivec(&[6]));
    }
}
