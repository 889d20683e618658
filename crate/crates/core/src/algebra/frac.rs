//! Exact rational scalars.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Frac = BigRational;

pub fn frac(num: i64, den: i64) -> Frac {
    Frac::new(BigInt::from(num), BigInt::from(den))
}

pub fn fint(n: i64) -> Frac {
    Frac::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Frac) -> f64 {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational image of a finite double.
pub fn from_f64(x: f64) -> Frac {
    Frac::from_float(x).unwrap_or_else(Frac::zero)
}

/// Parses `"3"`, `"-12/7"` or a plain decimal such as `"0.25"`.
pub fn parse_frac(s: &str) -> Result<Frac> {
    let s = s.trim();
    let err = || Error::Parse(format!("invalid rational '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Frac::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Frac::from_integer(n));
    }
    // decimal literal, converted exactly from its digits
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(err)?;
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| err())?;
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = Frac::new(digits, scale);
    Ok(if neg { -q } else { q })
}

/// `"n/d"`, or `"n"` when the denominator is one.
pub fn frac_string(q: &Frac) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Minimal ring interface shared by exact coefficient types.
pub trait Coeff: Clone + PartialEq + Debug {
    fn ring_zero() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_scale(&self, by: &Frac) -> Self;

    fn ring_sub(&self, other: &Self) -> Self {
        self.ring_add(&other.ring_neg())
    }
}

impl Coeff for Frac {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, by: &Frac) -> Self {
        self * by
    }
}

pub fn is_negative(q: &Frac) -> bool {
    q.is_negative()
}
