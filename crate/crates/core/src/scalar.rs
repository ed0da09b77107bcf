//! Exact scalar fields.
//!
//! Every algorithm in the crate is written against [`Scalar`], a field with
//! exact equality and an involution (complex conjugation, or the identity on
//! real fields). Two fields are provided: [`Rational`] (ℚ, backed by
//! `num_rational::BigRational`) and [`GaussianRational`] (ℚ(i)).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// An exact field usable as matrix entries.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Field involution: complex conjugation, or the identity on real fields.
    fn conj(&self) -> Self;

    fn from_rational(r: Rational) -> Self;

    /// The imaginary unit, if the field contains one.
    fn imaginary_unit() -> Option<Self>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// True when the value is fixed by [`Scalar::conj`].
    fn is_self_conjugate(&self) -> bool {
        self.conj() == *self
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `p/q`, omitting `/q` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?,
        ),
    };
    Ok(parsed)
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(Rational::from_integer(BigInt::from(k))),
            None => Err(Error::Parse(format!("non-integer JSON number {n}; use a \"p/q\" string"))),
        },
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    rational_nth_root(r, 2)
}

/// Exact `n`-th root of a non-negative rational, if one exists in ℚ.
pub fn rational_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().nth_root(n);
    let q = r.denom().nth_root(n);
    if num_traits::pow(p.clone(), n as usize) == *r.numer()
        && num_traits::pow(q.clone(), n as usize) == *r.denom()
    {
        Some(Rational::new(p, q))
    } else {
        None
    }
}

impl Scalar for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

/// An element `re + im·i` of ℚ(i).
///
/// The derived order (lexicographic on `(re, im)`) carries no algebraic
/// meaning; it exists so subspaces can be sorted deterministically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    /// Small-integer convenience constructor `a + b·i`.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(rational(a, 1), rational(b, 1))
    }

    /// `|z|²`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    /// `|z|` when it is rational.
    pub fn modulus(&self) -> Option<Rational> {
        rational_sqrt(&self.norm_sqr())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", format_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{}", format_rational(&self.re), im)
        } else {
            write!(f, "{}+{}", format_rational(&self.re), im)
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(self.re * rhs.re);
        }
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in GaussianRational");
        if rhs.im.is_zero() {
            return Self::new(self.re / rhs.re.clone(), self.im / rhs.re);
        }
        let d = rhs.norm_sqr();
        let num = self * rhs.conj();
        Self::new(num.re / d.clone(), num.im / d)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn from_rational(r: Rational) -> Self {
        Self::real(r)
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Self::i())
    }

    fn to_json(&self) -> Value {
        serde_json::json!({
            "re": format_rational(&self.re),
            "im": format_rational(&self.im),
        })
    }

    /// Accepts `{"re": .., "im": ..}` or, for real values, a bare rational.
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let re = map.get("re").map(rational_from_json).transpose()?.unwrap_or_else(Rational::zero);
                let im = map.get("im").map(rational_from_json).transpose()?.unwrap_or_else(Rational::zero);
                Ok(Self::new(re, im))
            }
            other => Ok(Self::real(rational_from_json(other)?)),
        }
    }
}
