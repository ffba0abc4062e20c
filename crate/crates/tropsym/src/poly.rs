//! Tropical monomials, polynomial expressions and quotients.
//!
//! A monomial `a ⊙ x₁^{i₁} ⋯ xₙ^{iₙ}` is the affine function
//! `a + Σ iₖ·xₖ`; exponents are arbitrary integers (Laurent monomials). A
//! polynomial expression is a finite `⊕`-sum of monomials and evaluates to
//! the minimum of its monomial values. Expressions are kept
//! dedup-normalized: exponent vectors are pairwise distinct (duplicates
//! merge keeping the minimum coefficient) and sorted lexicographically.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::scalar::{fmt_rational, Int, Rational, TropScalar};

/// Errors from polynomial construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Operands have different variable counts.
    DimensionMismatch { left: usize, right: usize },
    /// A polynomial expression must contain at least one monomial.
    EmptyPolynomial,
    /// A monomial's exponent vector does not match the variable count.
    BadExponentLength { expected: usize, found: usize },
    /// Variable index out of range.
    VarOutOfRange { index: usize, n_vars: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right} variables")
            }
            PolyError::EmptyPolynomial => write!(f, "polynomial expression has no monomials"),
            PolyError::BadExponentLength { expected, found } => {
                write!(f, "exponent vector of length {found}, expected {expected}")
            }
            PolyError::VarOutOfRange { index, n_vars } => {
                write!(f, "variable index {index} out of range for {n_vars} variables")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Errors from evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    DimensionMismatch { expected: usize, found: usize },
    /// An `∞` input met a negative exponent; `−∞` is not a semiring value.
    NegativeExponentAtInfinity { var: usize },
    /// A quotient's denominator evaluated to `∞`.
    InfiniteDenominator,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DimensionMismatch { expected, found } => {
                write!(f, "point has {found} coordinates, expected {expected}")
            }
            EvalError::NegativeExponentAtInfinity { var } => {
                write!(f, "negative exponent applied to INF input x{}", var + 1)
            }
            EvalError::InfiniteDenominator => write!(f, "denominator evaluates to INF"),
        }
    }
}

impl core::error::Error for EvalError {}

/// `coeff ⊙ x₁^{exps[0]} ⋯ xₙ^{exps[n−1]}` with a finite coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub coeff: Rational,
    pub exps: Vec<Int>,
}

impl Monomial {
    pub fn new(coeff: Rational, exps: Vec<Int>) -> Self {
        Monomial { coeff, exps }
    }

    /// Constant monomial `c ⊙ x⁰`.
    pub fn constant(n_vars: usize, coeff: Rational) -> Self {
        Monomial::new(coeff, vec![Int::zero(); n_vars])
    }

    /// Sum of the exponents (may be negative).
    pub fn total_degree(&self) -> Int {
        self.exps.iter().sum()
    }

    /// The affine value `coeff + Σ exps·x` at a finite point.
    pub fn value_at(&self, point: &[Rational]) -> Rational {
        let mut acc = self.coeff.clone();
        for (e, x) in self.exps.iter().zip(point) {
            if !e.is_zero() {
                acc += x * Rational::from_integer(e.clone());
            }
        }
        acc
    }

    /// Tropical product of two monomials: coefficients add, exponents add.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            &self.coeff + &other.coeff,
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Relabels variables: entry `k` of the result is `exps[perm[k]]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Monomial {
        Monomial::new(
            self.coeff.clone(),
            perm.iter().map(|&j| self.exps[j].clone()).collect(),
        )
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Monomial {
    /// Text form like `3/2⊙x1^2⊙x3^-1`; bare coefficient when constant.
    pub fn pretty(&self) -> String {
        self.pretty_with(|k| alloc::format!("x{}", k + 1))
    }

    /// Text form with caller-supplied variable names.
    pub fn pretty_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, e) in self.exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if e == &Int::from(1) {
                parts.push(name(k));
            } else {
                parts.push(alloc::format!("{}^{}", name(k), e));
            }
        }
        if parts.is_empty() {
            fmt_rational(&self.coeff)
        } else if self.coeff.is_zero() {
            parts.join("⊙")
        } else {
            alloc::format!("{}⊙{}", fmt_rational(&self.coeff), parts.join("⊙"))
        }
    }
}

/// A dedup-normalized tropical polynomial expression: a nonempty `⊕`-sum
/// of monomials over a fixed variable count.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    monomials: Vec<Monomial>,
}

impl Polynomial {
    /// Builds a polynomial, merging duplicate exponent vectors by keeping
    /// the minimum coefficient and sorting lexicographically.
    pub fn from_monomials<I>(n_vars: usize, monomials: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut map: BTreeMap<Vec<Int>, Rational> = BTreeMap::new();
        for m in monomials {
            if m.exps.len() != n_vars {
                return Err(PolyError::BadExponentLength {
                    expected: n_vars,
                    found: m.exps.len(),
                });
            }
            map.entry(m.exps)
                .and_modify(|c| {
                    if m.coeff < *c {
                        *c = m.coeff.clone();
                    }
                })
                .or_insert(m.coeff);
        }
        if map.is_empty() {
            return Err(PolyError::EmptyPolynomial);
        }
        Ok(Polynomial {
            n_vars,
            monomials: map
                .into_iter()
                .map(|(exps, coeff)| Monomial { coeff, exps })
                .collect(),
        })
    }

    /// Constant polynomial `c`.
    pub fn constant(n_vars: usize, c: Rational) -> Self {
        Polynomial {
            n_vars,
            monomials: vec![Monomial::constant(n_vars, c)],
        }
    }

    /// The multiplicative identity `0`.
    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Rational::zero())
    }

    /// The single-variable monomial `xᵢ` (0-based index).
    pub fn var(n_vars: usize, index: usize) -> Result<Self, PolyError> {
        if index >= n_vars {
            return Err(PolyError::VarOutOfRange { index, n_vars });
        }
        let mut exps = vec![Int::zero(); n_vars];
        exps[index] = Int::from(1);
        Ok(Polynomial {
            n_vars,
            monomials: vec![Monomial::new(Rational::zero(), exps)],
        })
    }

    /// A polynomial holding exactly one monomial.
    pub fn monomial(n_vars: usize, m: Monomial) -> Result<Self, PolyError> {
        Self::from_monomials(n_vars, [m])
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Total degree `max_j Σ_k exps`.
    pub fn degree(&self) -> Int {
        self.monomials
            .iter()
            .map(Monomial::total_degree)
            .max()
            .expect("polynomial is nonempty")
    }

    /// Smallest exponent appearing anywhere (used for Laurent shifts).
    pub fn min_exponent(&self) -> Int {
        self.monomials
            .iter()
            .flat_map(|m| m.exps.iter())
            .min()
            .cloned()
            .expect("polynomial is nonempty")
    }

    /// Evaluation at a finite rational point.
    pub fn value_at(&self, point: &[Rational]) -> Result<Rational, EvalError> {
        if point.len() != self.n_vars {
            return Err(EvalError::DimensionMismatch {
                expected: self.n_vars,
                found: point.len(),
            });
        }
        Ok(self
            .monomials
            .iter()
            .map(|m| m.value_at(point))
            .min()
            .expect("polynomial is nonempty"))
    }

    /// Evaluation over `Q ∪ {∞}`.
    ///
    /// If `x[i] = ∞` every monomial must have a nonnegative exponent in
    /// variable `i`; a positive exponent makes that monomial `∞`, a zero
    /// exponent leaves it unaffected.
    pub fn eval(&self, point: &[TropScalar]) -> Result<TropScalar, EvalError> {
        if point.len() != self.n_vars {
            return Err(EvalError::DimensionMismatch {
                expected: self.n_vars,
                found: point.len(),
            });
        }
        for (i, x) in point.iter().enumerate() {
            if x.is_infinite() {
                for m in &self.monomials {
                    if m.exps[i].is_negative() {
                        return Err(EvalError::NegativeExponentAtInfinity { var: i });
                    }
                }
            }
        }
        let mut best = TropScalar::Infinity;
        'mono: for m in &self.monomials {
            let mut acc = m.coeff.clone();
            for (e, x) in m.exps.iter().zip(point) {
                if e.is_zero() {
                    continue;
                }
                match x {
                    TropScalar::Infinity => continue 'mono, // positive exponent: term is ∞
                    TropScalar::Finite(v) => acc += v * Rational::from_integer(e.clone()),
                }
            }
            best = best.trop_add(&TropScalar::Finite(acc));
        }
        Ok(best)
    }

    fn check_dims(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.n_vars != other.n_vars {
            return Err(PolyError::DimensionMismatch {
                left: self.n_vars,
                right: other.n_vars,
            });
        }
        Ok(())
    }

    /// `⊕`: concatenates and dedup-normalizes.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dims(other)?;
        Polynomial::from_monomials(
            self.n_vars,
            self.monomials.iter().chain(&other.monomials).cloned(),
        )
    }

    /// `⊙`: expands by distributivity, then dedup-normalizes.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dims(other)?;
        Polynomial::from_monomials(
            self.n_vars,
            self.monomials
                .iter()
                .flat_map(|a| other.monomials.iter().map(move |b| a.mul(b))),
        )
    }

    /// Tropical product with a single monomial (translation in exponent
    /// space plus a coefficient shift).
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial, PolyError> {
        if m.exps.len() != self.n_vars {
            return Err(PolyError::BadExponentLength {
                expected: self.n_vars,
                found: m.exps.len(),
            });
        }
        Ok(Polynomial {
            n_vars: self.n_vars,
            monomials: self.monomials.iter().map(|a| a.mul(m)).collect(),
        })
    }

    /// `p^k` by repeated multiplication; `p⁰ = 0` (the `⊙`-identity).
    pub fn pow(&self, k: usize) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(self.n_vars);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The functional `k`-th power: coefficients and exponents scaled by
    /// `k`. Functionally equal to [`Polynomial::pow`] because
    /// `k · min_i ℓ_i = min_i k·ℓ_i`, but with no growth in the number of
    /// monomials.
    pub fn frobenius_pow(&self, k: usize) -> Polynomial {
        if k == 0 {
            return Polynomial::one(self.n_vars);
        }
        let factor = Rational::from_integer(Int::from(k as u64));
        let scale = Int::from(k as u64);
        Polynomial::from_monomials(
            self.n_vars,
            self.monomials.iter().map(|m| {
                Monomial::new(
                    &m.coeff * &factor,
                    m.exps.iter().map(|e| e * &scale).collect(),
                )
            }),
        )
        .expect("scaling preserves arity and nonemptiness")
    }

    /// Applies a variable relabeling to every monomial.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        debug_assert_eq!(perm.len(), self.n_vars);
        Polynomial::from_monomials(
            self.n_vars,
            self.monomials.iter().map(|m| m.permute_vars(perm)),
        )
        .expect("permutation preserves arity")
    }

    /// Componentwise minimum of all exponent vectors (the largest monomial
    /// dividing every term).
    pub fn exponent_gcd(&self) -> Vec<Int> {
        let mut gcd = self.monomials[0].exps.clone();
        for m in &self.monomials[1..] {
            for (g, e) in gcd.iter_mut().zip(&m.exps) {
                if e < g {
                    *g = e.clone();
                }
            }
        }
        gcd
    }

    /// Smallest coefficient.
    pub fn min_coeff(&self) -> Rational {
        self.monomials
            .iter()
            .map(|m| m.coeff.clone())
            .min()
            .expect("polynomial is nonempty")
    }

    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self.monomials.iter().map(Monomial::pretty).collect();
        parts.join(" ⊕ ")
    }

    /// Text form with caller-supplied variable names (block variables
    /// print as `x[i,j]`, for example).
    pub fn pretty_with<F: Fn(usize) -> String + Copy>(&self, name: F) -> String {
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|m| m.pretty_with(name))
            .collect();
        parts.join(" ⊕ ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// A quotient `num ⊙ den⁻¹` of polynomial expressions. The denominator
/// has finite coefficients by construction, so the quotient is defined on
/// all finite points.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFn {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        num.check_dims(&den)?;
        Ok(RationalFn { num, den })
    }

    /// Embeds a polynomial as `p ⊙ 0⁻¹`.
    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.n_vars());
        RationalFn { num: p, den }
    }

    pub fn n_vars(&self) -> usize {
        self.num.n_vars()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    /// `num(x) − den(x)` at a finite point.
    pub fn value_at(&self, point: &[Rational]) -> Result<Rational, EvalError> {
        Ok(self.num.value_at(point)? - self.den.value_at(point)?)
    }

    /// Evaluation over `Q ∪ {∞}`; errors if the denominator is `∞`.
    pub fn eval(&self, point: &[TropScalar]) -> Result<TropScalar, EvalError> {
        let n = self.num.eval(point)?;
        let d = self.den.eval(point)?;
        match d {
            TropScalar::Infinity => Err(EvalError::InfiniteDenominator),
            TropScalar::Finite(dv) => Ok(match n {
                TropScalar::Infinity => TropScalar::Infinity,
                TropScalar::Finite(nv) => TropScalar::Finite(nv - dv),
            }),
        }
    }

    /// `⊙`-inverse: swaps numerator and denominator.
    pub fn inv(&self) -> RationalFn {
        RationalFn {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> Result<RationalFn, PolyError> {
        Ok(RationalFn {
            num: self.num.mul(&other.num)?,
            den: self.den.mul(&other.den)?,
        })
    }

    /// `⊕` by the tropical common-denominator rule
    /// `(p₁, q₁) ⊕ (p₂, q₂) = (p₁⊙q₂ ⊕ p₂⊙q₁, q₁⊙q₂)`.
    pub fn add(&self, other: &RationalFn) -> Result<RationalFn, PolyError> {
        let num = self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?;
        let den = self.den.mul(&other.den)?;
        Ok(RationalFn { num, den })
    }

    /// Integer power (negative powers invert).
    pub fn pow(&self, k: i64) -> Result<RationalFn, PolyError> {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = RationalFn::from_poly(Polynomial::one(self.n_vars()));
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Functional integer power using [`Polynomial::frobenius_pow`] on
    /// both components; negative powers invert.
    pub fn frobenius_pow(&self, k: i64) -> RationalFn {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let k = usize::try_from(k.unsigned_abs()).expect("power fits usize");
        RationalFn {
            num: base.num.frobenius_pow(k),
            den: base.den.frobenius_pow(k),
        }
    }

    /// Removes the common monomial factor of numerator and denominator and
    /// normalizes the denominator's least coefficient to `0`. Purely
    /// cosmetic: the function is unchanged.
    pub fn reduce_common_factor(&self) -> RationalFn {
        let gn = self.num.exponent_gcd();
        let gd = self.den.exponent_gcd();
        let common: Vec<Int> = gn
            .iter()
            .zip(&gd)
            .map(|(a, b)| if a < b { a.clone() } else { b.clone() })
            .collect();
        let shift_coeff = self.den.min_coeff();
        let factor = Monomial::new(
            -shift_coeff,
            common.iter().map(|e| -e.clone()).collect(),
        );
        RationalFn {
            num: self.num.mul_monomial(&factor).expect("same arity"),
            den: self.den.mul_monomial(&factor).expect("same arity"),
        }
    }

    pub fn pretty(&self) -> String {
        alloc::format!("({}) ⊙ ({})⁻¹", self.num.pretty(), self.den.pretty())
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}
