//! Exact rational and Gaussian-rational scalars with their string encodings.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Complex, One, Signed, ToPrimitive, Zero};

use crate::error::{JetError, Result};

pub type Q = BigRational;

/// Gaussian rational `re + i·im`.
pub type GQ = Complex<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn gq(re: Q, im: Q) -> GQ {
    Complex::new(re, im)
}

pub fn gq_real(re: Q) -> GQ {
    Complex::new(re, Q::zero())
}

/// Parses `"p/q"`, `"p"` or a signed integer string.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || JetError::Parse(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(JetError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Canonical `"p/q"` encoding (denominator always present).
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational equal to the binary value of `x`.
pub fn f64_to_q(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

pub fn gq_to_c64(z: &GQ) -> Complex<f64> {
    Complex::new(q_to_f64(&z.re), q_to_f64(&z.im))
}

pub fn is_integer_q(x: &Q) -> bool {
    x.denom().is_one()
}

/// Square root of a nonnegative rational when it is itself rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let rn = x.numer().sqrt();
    let rd = x.denom().sqrt();
    if &(&rn * &rn) == x.numer() && &(&rd * &rd) == x.denom() {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
