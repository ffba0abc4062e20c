//! Scalars of the min-plus semiring: exact rationals extended by `∞`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer used for coefficients and exponents.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer literal.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Builds a rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

/// Formats a rational in lowest terms, omitting a trivial denominator.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<Int>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// An element of `(Q ∪ {∞}, ⊕, ⊙)`.
///
/// `∞` is the identity of `⊕ = min` and absorbs under `⊙ = +`. The
/// multiplicative identity is the finite value `0`.
#[derive(Clone, PartialEq, Eq)]
pub enum TropScalar {
    Finite(Rational),
    Infinity,
}

/// Error raised by partial scalar operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    /// `∞` has no inverse with respect to `⊙`.
    NoInverseOfInfinity,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::NoInverseOfInfinity => write!(f, "no tropical inverse of INF"),
        }
    }
}

impl core::error::Error for ScalarError {}

impl TropScalar {
    /// The `⊕`-identity `∞`.
    pub fn zero() -> Self {
        TropScalar::Infinity
    }

    /// The `⊙`-identity `0`.
    pub fn one() -> Self {
        TropScalar::Finite(Rational::zero())
    }

    pub fn finite(r: Rational) -> Self {
        TropScalar::Finite(r)
    }

    pub fn from_int(n: i64) -> Self {
        TropScalar::Finite(rat(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropScalar::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            TropScalar::Finite(r) => Some(r),
            TropScalar::Infinity => None,
        }
    }

    /// Tropical addition `a ⊕ b = min(a, b)`.
    pub fn trop_add(&self, other: &Self) -> Self {
        match (self, other) {
            (TropScalar::Infinity, b) => b.clone(),
            (a, TropScalar::Infinity) => a.clone(),
            (TropScalar::Finite(a), TropScalar::Finite(b)) => {
                TropScalar::Finite(if a <= b { a.clone() } else { b.clone() })
            }
        }
    }

    /// Tropical multiplication `a ⊙ b = a + b`; `∞` absorbs.
    pub fn trop_mul(&self, other: &Self) -> Self {
        match (self, other) {
            (TropScalar::Infinity, _) | (_, TropScalar::Infinity) => TropScalar::Infinity,
            (TropScalar::Finite(a), TropScalar::Finite(b)) => TropScalar::Finite(a + b),
        }
    }

    /// The `⊙`-inverse `a⁻¹ = −a`, defined for finite values only.
    pub fn trop_inv(&self) -> Result<Self, ScalarError> {
        match self {
            TropScalar::Finite(a) => Ok(TropScalar::Finite(-a)),
            TropScalar::Infinity => Err(ScalarError::NoInverseOfInfinity),
        }
    }

    /// The `n`-th tropical power `a ⊙ ⋯ ⊙ a = n·a` for finite `a`.
    pub fn trop_pow(&self, n: i64) -> Result<Self, ScalarError> {
        match self {
            TropScalar::Finite(a) => Ok(TropScalar::Finite(a * rat(n))),
            TropScalar::Infinity if n > 0 => Ok(TropScalar::Infinity),
            TropScalar::Infinity => Err(ScalarError::NoInverseOfInfinity),
        }
    }

    /// Minimum of a sequence; empty input yields `∞`.
    pub fn trop_sum<I: IntoIterator<Item = TropScalar>>(values: I) -> Self {
        values
            .into_iter()
            .fold(TropScalar::Infinity, |acc, v| acc.trop_add(&v))
    }
}

impl Add for TropScalar {
    type Output = TropScalar;

    fn add(self, rhs: Self) -> Self {
        self.trop_add(&rhs)
    }
}

impl Mul for TropScalar {
    type Output = TropScalar;

    fn mul(self, rhs: Self) -> Self {
        self.trop_mul(&rhs)
    }
}

impl PartialOrd for TropScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropScalar::Infinity, TropScalar::Infinity) => Ordering::Equal,
            (TropScalar::Infinity, _) => Ordering::Greater,
            (_, TropScalar::Infinity) => Ordering::Less,
            (TropScalar::Finite(a), TropScalar::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::Finite(r) => write!(f, "{}", fmt_rational(r)),
            TropScalar::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for TropScalar {
    fn from(n: i64) -> Self {
        TropScalar::from_int(n)
    }
}

/// Formats a point as a comma-separated list of rationals.
pub fn fmt_point(point: &[Rational]) -> String {
    let parts: Vec<String> = point.iter().map(fmt_rational).collect();
    parts.join(",")
}

/// True if the rational is a (possibly negative) integer.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Absolute value helper used by the parser and tests.
pub fn rat_abs(r: &Rational) -> Rational {
    r.abs()
}
