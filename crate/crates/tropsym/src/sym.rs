//! Symmetric tropical polynomials: the symmetrization operator, the
//! elementary symmetric tropical polynomials `e_1 … e_n`, orbit
//! separation, and the constructive decomposition of symmetric
//! polynomials and rational functions into `e_1, …, e_n` and `e_n⁻¹`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::canon::{self, CanonError, Equivalence};
use crate::perm::{for_each_combination, for_each_distinct_permutation};
use crate::poly::{Monomial, PolyError, Polynomial, RationalFn};
use crate::scalar::{fmt_rational, Int, Rational};

/// Default bound on `n` for operations that enumerate permutations.
pub const DEFAULT_FACTORIAL_CAP: usize = 8;

/// A failed symmetry check: the adjacent transposition (0-based) and a
/// point where the permuted function differs.
pub type SwapWitness = ((usize, usize), Vec<Rational>);

#[derive(Clone, Debug)]
pub enum SymError {
    /// The input is not symmetric; carries the offending adjacent
    /// transposition (0-based variable indices) and a separating point.
    NotSymmetric {
        swap: (usize, usize),
        witness: Vec<Rational>,
    },
    /// `n` exceeds the permutation-enumeration cap.
    FactorialCap { n: usize, cap: usize },
    /// Argument out of range (e.g. `elementary(k, n)` with `k ∉ 1..=n`).
    OutOfRange { what: &'static str },
    Poly(PolyError),
    Canon(CanonError),
}

impl fmt::Display for SymError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymError::NotSymmetric { swap, witness: _ } => write!(
                f,
                "input is not symmetric: swapping x{} and x{} changes the function",
                swap.0 + 1,
                swap.1 + 1
            ),
            SymError::FactorialCap { n, cap } => {
                write!(f, "n = {n} exceeds the symmetrization cap {cap}")
            }
            SymError::OutOfRange { what } => write!(f, "argument out of range: {what}"),
            SymError::Poly(e) => write!(f, "{e}"),
            SymError::Canon(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SymError {}

impl From<PolyError> for SymError {
    fn from(e: PolyError) -> Self {
        SymError::Poly(e)
    }
}

impl From<CanonError> for SymError {
    fn from(e: CanonError) -> Self {
        SymError::Canon(e)
    }
}

/// `Sym(p) = ⊕_{π ∈ S_n} p ∘ π` with the default cap on `n`.
pub fn symmetrize(p: &Polynomial) -> Result<Polynomial, SymError> {
    symmetrize_with_cap(p, DEFAULT_FACTORIAL_CAP)
}

/// `Sym(p)` with an explicit cap on the number of variables.
pub fn symmetrize_with_cap(p: &Polynomial, cap: usize) -> Result<Polynomial, SymError> {
    let n = p.n_vars();
    if n > cap {
        return Err(SymError::FactorialCap { n, cap });
    }
    let mut out: Vec<Monomial> = Vec::new();
    for m in p.monomials() {
        // All distinct rearrangements of the exponent vector.
        for_each_distinct_permutation(&m.exps, |exps| {
            out.push(Monomial::new(m.coeff.clone(), exps.to_vec()));
        });
    }
    Ok(Polynomial::from_monomials(n, out)?)
}

/// The elementary symmetric tropical polynomial
/// `e_k = ⊕_{|S| = k} ⊙_{i ∈ S} x_i` (coefficient 0, `C(n, k)` monomials).
pub fn elementary(k: usize, n: usize) -> Result<Polynomial, SymError> {
    if k < 1 || k > n {
        return Err(SymError::OutOfRange {
            what: "elementary symmetric index k must satisfy 1 <= k <= n",
        });
    }
    let mut monos = Vec::new();
    for_each_combination(n, k, |subset| {
        let mut exps = vec![Int::zero(); n];
        for &i in subset {
            exps[i] = Int::from(1);
        }
        monos.push(Monomial::new(Rational::zero(), exps));
    });
    Ok(Polynomial::from_monomials(n, monos)?)
}

/// Tests invariance under every adjacent transposition (these generate
/// `S_n`, so this decides full symmetry).
pub fn is_symmetric(p: &Polynomial) -> Result<bool, SymError> {
    Ok(symmetry_witness(p)?.is_none())
}

/// `None` when `p` is symmetric; otherwise the failing transposition and
/// a point where the swapped function differs.
pub fn symmetry_witness(p: &Polynomial) -> Result<Option<SwapWitness>, SymError> {
    let n = p.n_vars();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        let swapped = p.permute_vars(&perm);
        if let Equivalence::Distinct { witness } = canon::poly_equiv(p, &swapped)? {
            return Ok(Some(((i, i + 1), witness)));
        }
    }
    Ok(None)
}

/// The fingerprint `(e_1(x), …, e_n(x))`. Two points have equal
/// fingerprints exactly when they are equal as multisets.
pub fn orbit_fingerprint(point: &[Rational]) -> Vec<Rational> {
    let n = point.len();
    (1..=n)
        .map(|k| {
            let e = elementary(k, n).expect("1 <= k <= n");
            e.value_at(point).expect("finite evaluation")
        })
        .collect()
}

/// A tropical polynomial in the generators `e_1, …, e_n` and `e_n⁻¹`:
/// a `⊕`-sum of terms `coeff ⊙ e_1^{g_1} ⊙ ⋯ ⊙ e_n^{g_n}` where every
/// `g_k` is a nonnegative integer except possibly `g_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorExpr {
    n_vars: usize,
    terms: Vec<GeneratorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeneratorTerm {
    pub e_exps: Vec<Int>,
    pub coeff: Rational,
}

impl GeneratorExpr {
    pub fn new(n_vars: usize, mut terms: Vec<GeneratorTerm>) -> Result<Self, SymError> {
        if terms.is_empty() {
            return Err(SymError::Poly(PolyError::EmptyPolynomial));
        }
        for t in &terms {
            if t.e_exps.len() != n_vars {
                return Err(SymError::Poly(PolyError::BadExponentLength {
                    expected: n_vars,
                    found: t.e_exps.len(),
                }));
            }
            if t.e_exps[..n_vars - 1].iter().any(Signed::is_negative) {
                return Err(SymError::OutOfRange {
                    what: "only the e_n exponent may be negative",
                });
            }
        }
        terms.sort();
        terms.dedup();
        Ok(GeneratorExpr { n_vars, terms })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &[GeneratorTerm] {
        &self.terms
    }

    /// Substitutes the elementary polynomials back for the generators.
    ///
    /// Each term `⊙_k e_k^{g_k}` is functionally equal (by the idempotent
    /// Frobenius identity) to the symmetrization of the single monomial
    /// `x^λ` with `λ_j = Σ_{k ≥ j} g_k`, and that collapsed form is what
    /// this returns; it keeps expansions small without changing the
    /// function.
    pub fn expand(&self) -> Polynomial {
        let n = self.n_vars;
        let mut monos: Vec<Monomial> = Vec::new();
        for t in &self.terms {
            // suffix sums of generator exponents: λ is sorted descending
            let mut lambda = vec![Int::zero(); n];
            let mut acc = Int::zero();
            for k in (0..n).rev() {
                acc += &t.e_exps[k];
                lambda[k] = acc.clone();
            }
            for_each_distinct_permutation(&lambda, |exps| {
                monos.push(Monomial::new(t.coeff.clone(), exps.to_vec()));
            });
        }
        Polynomial::from_monomials(n, monos).expect("at least one term")
    }

    /// Expansion by literal repeated multiplication of the elementary
    /// polynomials (no Frobenius collapse). Functionally equal to
    /// [`GeneratorExpr::expand`]; exponential in the generator powers, so
    /// only suitable for small inputs and cross-checks.
    pub fn expand_literal(&self) -> Result<Polynomial, SymError> {
        let n = self.n_vars;
        let mut acc: Option<Polynomial> = None;
        for t in &self.terms {
            let mut term = Polynomial::constant(n, t.coeff.clone());
            for (k, g) in t.e_exps.iter().enumerate() {
                if g.is_negative() {
                    debug_assert_eq!(k, n - 1);
                    let inv = Monomial::new(Rational::zero(), vec![Int::from(-1); n]);
                    for _ in 0..int_to_usize(&-g.clone()) {
                        term = term.mul_monomial(&inv)?;
                    }
                } else {
                    let base = elementary(k + 1, n)?;
                    for _ in 0..int_to_usize(g) {
                        term = term.mul(&base)?;
                    }
                }
            }
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.add(&term)?,
            });
        }
        Ok(acc.expect("at least one term"))
    }

    /// Rendering like `1/2 ⊙ e1^2 ⊙ e3^-1 ⊕ e2`.
    pub fn pretty(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for t in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            if !t.coeff.is_zero() {
                factors.push(fmt_rational(&t.coeff));
            }
            for (k, g) in t.e_exps.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                if g == &Int::from(1) {
                    factors.push(alloc::format!("e{}", k + 1));
                } else {
                    factors.push(alloc::format!("e{}^{}", k + 1, g));
                }
            }
            if factors.is_empty() {
                factors.push(String::from("0"));
            }
            parts.push(factors.join(" ⊙ "));
        }
        parts.join(" ⊕ ")
    }
}

pub(crate) fn int_to_usize(g: &Int) -> usize {
    usize::try_from(g).expect("exponent fits in usize")
}

impl fmt::Display for GeneratorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Writes a symmetric tropical polynomial as a tropical polynomial in
/// `e_1, …, e_n` and `e_n⁻¹`.
///
/// The algorithm works on the minimal representation: it clears negative
/// exponents with an `e_n^j` shift, splits the monomials into `S_n`
/// orbits, peels each orbit by repeatedly extracting `e_k^a` (where `k`
/// is the support size and `a` the least positive exponent), and removes
/// the shift from the `e_n` exponent at the end. Starting from a minimal
/// representation the result is minimal again: deleting any term changes
/// the expanded function.
pub fn decompose_symmetric(p: &Polynomial) -> Result<GeneratorExpr, SymError> {
    decompose_symmetric_with_cap(p, DEFAULT_FACTORIAL_CAP)
}

pub fn decompose_symmetric_with_cap(
    p: &Polynomial,
    cap: usize,
) -> Result<GeneratorExpr, SymError> {
    let n = p.n_vars();
    if n > cap {
        return Err(SymError::FactorialCap { n, cap });
    }
    if let Some((swap, witness)) = symmetry_witness(p)? {
        return Err(SymError::NotSymmetric { swap, witness });
    }

    let canon = canon::minimal_representation(p);

    // e_n^j shift making every exponent nonnegative.
    let min_exp = canon.min_exponent();
    let shift = if min_exp.is_negative() {
        -min_exp
    } else {
        Int::zero()
    };

    // Orbit representatives: exponent vectors sorted descending. The
    // canonical form of a symmetric function is orbit-closed with equal
    // coefficients, which the merge below relies on.
    let mut orbits: Vec<(Vec<Int>, Rational)> = Vec::new();
    for m in canon.monomials() {
        let mut key: Vec<Int> = m.exps.iter().map(|e| e + &shift).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        match orbits.iter().find(|(k, _)| *k == key) {
            Some((_, c)) => debug_assert_eq!(
                c, &m.coeff,
                "canonical symmetric forms carry one coefficient per orbit"
            ),
            None => orbits.push((key, m.coeff.clone())),
        }
    }

    let mut terms = Vec::with_capacity(orbits.len());
    for (mut lambda, coeff) in orbits {
        // Peel: with λ sorted descending, each pass extracts e_k^a where
        // k = |support| and a = min positive exponent = λ_k.
        let mut g = vec![Int::zero(); n];
        loop {
            let k = lambda.iter().filter(|e| e.is_positive()).count();
            if k == 0 {
                break;
            }
            let a = lambda[k - 1].clone();
            debug_assert!(a.is_positive());
            g[k - 1] += &a;
            for item in lambda.iter_mut().take(k) {
                *item -= &a;
            }
        }
        g[n - 1] -= &shift;
        terms.push(GeneratorTerm { e_exps: g, coeff });
    }
    GeneratorExpr::new(n, terms)
}

/// Decomposes a symmetric rational function as a quotient of generator
/// expressions: `r = Sym(num) ⊙ Sym(den)⁻¹`, each side decomposed by
/// [`decompose_symmetric`].
pub fn decompose_symmetric_rational(
    r: &RationalFn,
) -> Result<(GeneratorExpr, GeneratorExpr), SymError> {
    decompose_symmetric_rational_with_cap(r, DEFAULT_FACTORIAL_CAP)
}

pub fn decompose_symmetric_rational_with_cap(
    r: &RationalFn,
    cap: usize,
) -> Result<(GeneratorExpr, GeneratorExpr), SymError> {
    let n = r.n_vars();
    if n > cap {
        return Err(SymError::FactorialCap { n, cap });
    }
    if let Some((swap, witness)) = rational_symmetry_witness(r)? {
        return Err(SymError::NotSymmetric { swap, witness });
    }
    let num_sym = symmetrize_with_cap(r.num(), cap)?;
    let den_sym = symmetrize_with_cap(r.den(), cap)?;
    Ok((
        decompose_symmetric_with_cap(&num_sym, cap)?,
        decompose_symmetric_with_cap(&den_sym, cap)?,
    ))
}

/// `None` when `r` is symmetric as a function.
pub fn rational_symmetry_witness(r: &RationalFn) -> Result<Option<SwapWitness>, SymError> {
    let n = r.n_vars();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        let swapped = RationalFn::new(r.num().permute_vars(&perm), r.den().permute_vars(&perm))?;
        if let Equivalence::Distinct { witness } = canon::rational_equiv(r, &swapped)? {
            return Ok(Some(((i, i + 1), witness)));
        }
    }
    Ok(None)
}
