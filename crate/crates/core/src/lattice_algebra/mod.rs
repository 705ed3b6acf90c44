//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`Integer`]) and
//! reduced fractions ([`Rational`]); no floating point is used anywhere in
//! the crate.

mod matrix;
mod normal_forms;
pub mod rational;

pub use matrix::IntMatrix;
pub use normal_forms::{
    hermite_normal_form, kernel_basis, rank_and_det, smith_normal_form, solve_integer, HermiteForm,
    SmithForm,
};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntVector = Vec<Integer>;
pub type QVector = Vec<Rational>;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn ivec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn to_q(v: &[Integer]) -> QVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dot product of an integer vector with a rational one.
pub fn dot_iq(a: &[Integer], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rational::from_integer(x.clone()))
        .sum()
}

pub fn gcd_all(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

/// Divide out the content of `v`. The zero vector is returned unchanged.
pub fn primitive(v: &[Integer]) -> IntVector {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive integer multiple of `v` that is integral, made primitive.
pub fn clear_denominators(v: &[Rational]) -> IntVector {
    let l = v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: IntVector = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn q_to_int(v: &[Rational]) -> Option<IntVector> {
    is_integral(v).then(|| v.iter().map(|x| x.to_integer()).collect())
}

pub fn neg(v: &[Integer]) -> IntVector {
    v.iter().map(|x| -x).collect()
}

pub fn sub(a: &[Integer], b: &[Integer]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Integer], b: &[Integer]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(v: &[Integer], k: &Integer) -> IntVector {
    v.iter().map(|x| x * k).collect()
}

pub fn is_zero_vec(v: &[Integer]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Render a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let err = || crate::Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().map_err(|_| err())?;
            let d: Integer = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn abs(x: &Integer) -> Integer {
    x.abs()
}
