//! 2-symmetric tropical polynomials: variables come in `n` rows of two
//! (`x_{i,1}, x_{i,2}`) and the symmetric group permutes whole rows.
//!
//! Provides the orbit set `ℰ_n/S_n` of nonzero `{0,1}` exponent matrices,
//! the elementary 2-symmetric polynomials attached to orbits, the
//! row-symmetrization operator `Sym₂`, the `>_S` well-order on block
//! monomials, the decomposition of 2-symmetric rational functions into
//! elementary generators, orbit separation on `ℝ^{2n}/S_n` (persistence
//! barcode fingerprints), and the witness computation showing the
//! polynomial sub-semiring is not finitely generated.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::canon::{self, CanonError, Equivalence, EssentialityCertificate};
use crate::perm::for_each_distinct_permutation;
use crate::poly::{Monomial, PolyError, Polynomial, RationalFn};
use crate::scalar::{fmt_rational, Int, Rational};
use crate::sym::{SwapWitness, DEFAULT_FACTORIAL_CAP};

/// Default cap on `n` for the monomial decomposition recursion.
pub const DEFAULT_BLOCK_DECOMPOSITION_CAP: usize = 3;

#[derive(Clone, Debug)]
pub enum BlockError {
    /// Input is not invariant under row permutations; carries the failing
    /// adjacent row transposition (0-based) and a separating point.
    Not2Symmetric {
        swap: (usize, usize),
        witness: Vec<Rational>,
    },
    FactorialCap {
        n: usize,
        cap: usize,
    },
    DecompositionCap {
        n: usize,
        cap: usize,
    },
    /// Block monomials to decompose must have nonnegative exponents.
    NegativeExponent,
    /// The polynomial does not have an even number of variables.
    OddVariableCount {
        n_vars: usize,
    },
    /// The structural recursion has no sound rule for this input.
    Unsupported {
        reason: String,
    },
    InvalidOrbit {
        reason: String,
    },
    InvalidExpression {
        reason: &'static str,
    },
    /// The non-generation witness needs degree at least 2.
    DegreeTooSmall {
        d: i64,
    },
    Poly(PolyError),
    Canon(CanonError),
}

impl fmt::Display for BlockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockError::Not2Symmetric { swap, .. } => write!(
                f,
                "input is not 2-symmetric: swapping rows {} and {} changes the function",
                swap.0 + 1,
                swap.1 + 1
            ),
            BlockError::FactorialCap { n, cap } => {
                write!(f, "n = {n} exceeds the symmetrization cap {cap}")
            }
            BlockError::DecompositionCap { n, cap } => {
                write!(f, "n = {n} exceeds the decomposition cap {cap}")
            }
            BlockError::NegativeExponent => {
                write!(f, "block monomial has a negative exponent")
            }
            BlockError::OddVariableCount { n_vars } => {
                write!(f, "{n_vars} variables cannot be split into rows of two")
            }
            BlockError::Unsupported { reason } => write!(f, "unsupported decomposition: {reason}"),
            BlockError::InvalidOrbit { reason } => write!(f, "invalid orbit: {reason}"),
            BlockError::InvalidExpression { reason } => {
                write!(f, "invalid generator expression: {reason}")
            }
            BlockError::DegreeTooSmall { d } => {
                write!(f, "witness degree must be at least 2, got {d}")
            }
            BlockError::Poly(e) => write!(f, "{e}"),
            BlockError::Canon(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BlockError {}

impl From<PolyError> for BlockError {
    fn from(e: PolyError) -> Self {
        BlockError::Poly(e)
    }
}

impl From<CanonError> for BlockError {
    fn from(e: CanonError) -> Self {
        BlockError::Canon(e)
    }
}

/// A `{0,1}` exponent row.
pub type BitRow = (u8, u8);

/// Canonical representative of a row-permutation orbit of `ℰ_n`: the
/// multiset of rows, stored sorted descending. Trailing zero rows are
/// left implicit in the printed label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRep {
    rows: Vec<BitRow>,
}

impl OrbitRep {
    pub fn new(mut rows: Vec<BitRow>) -> Result<Self, BlockError> {
        if rows.is_empty() {
            return Err(BlockError::InvalidOrbit {
                reason: String::from("an orbit needs at least one row"),
            });
        }
        if rows.iter().any(|&(a, b)| a > 1 || b > 1) {
            return Err(BlockError::InvalidOrbit {
                reason: String::from("row entries must be 0 or 1"),
            });
        }
        if rows.iter().all(|&r| r == (0, 0)) {
            return Err(BlockError::InvalidOrbit {
                reason: String::from("the all-zero matrix is excluded"),
            });
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Ok(OrbitRep { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// Bracket label with zero rows omitted and repeats collapsed, e.g.
    /// `[(1,1)(1,0)^2]`.
    pub fn label(&self) -> String {
        let mut out = String::from("[");
        let mut i = 0;
        while i < self.rows.len() {
            let row = self.rows[i];
            if row == (0, 0) {
                break; // zero rows are sorted last and left implicit
            }
            let mut run = 1;
            while i + run < self.rows.len() && self.rows[i + run] == row {
                run += 1;
            }
            out.push_str(&format!("({},{})", row.0, row.1));
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out.push(']');
        out
    }

    /// Parses a bracket label against a known `n`, accepting rows in any
    /// order, `^k` repetition shorthand and omitted zero rows.
    pub fn parse_label(text: &str, n: usize) -> Result<Self, BlockError> {
        let bad = |reason: String| BlockError::InvalidOrbit { reason };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad(format!("label must be bracketed: {text}")))?;
        let bytes = inner.as_bytes();
        let mut rows: Vec<BitRow> = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos >= bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(bad(format!("expected '(' at byte {pos} of {inner:?}")));
            }
            let close = inner[pos..]
                .find(')')
                .map(|o| pos + o)
                .ok_or_else(|| bad(String::from("unclosed row")))?;
            let body = &inner[pos + 1..close];
            let (a, b) = body
                .split_once(',')
                .ok_or_else(|| bad(format!("row {body:?} must be a pair")))?;
            let a: u8 = a.trim().parse().map_err(|_| bad(format!("bad entry {a:?}")))?;
            let b: u8 = b.trim().parse().map_err(|_| bad(format!("bad entry {b:?}")))?;
            pos = close + 1;
            let mut count = 1usize;
            if pos < bytes.len() && bytes[pos] == b'^' {
                let start = pos + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                count = inner[start..end]
                    .parse()
                    .map_err(|_| bad(String::from("bad repetition count")))?;
                pos = end;
            }
            for _ in 0..count {
                rows.push((a, b));
            }
        }
        if rows.len() > n {
            return Err(bad(format!("{} rows exceed n = {n}", rows.len())));
        }
        rows.resize(n, (0, 0));
        OrbitRep::new(rows)
    }
}

impl fmt::Debug for OrbitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for OrbitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All orbits of `ℰ_n` under row permutation, in descending lexicographic
/// order of their sorted row vectors. There are `C(n+3, 3) − 1` of them.
pub fn enumerate_orbits(n: usize) -> Result<Vec<OrbitRep>, BlockError> {
    if n == 0 || n > DEFAULT_FACTORIAL_CAP {
        return Err(BlockError::FactorialCap {
            n,
            cap: DEFAULT_FACTORIAL_CAP,
        });
    }
    let mut out = Vec::new();
    for c11 in (0..=n).rev() {
        for c10 in (0..=n - c11).rev() {
            for c01 in (0..=n - c11 - c10).rev() {
                let c00 = n - c11 - c10 - c01;
                if c11 + c10 + c01 == 0 {
                    continue;
                }
                let mut rows = Vec::with_capacity(n);
                rows.extend(core::iter::repeat_n((1u8, 1u8), c11));
                rows.extend(core::iter::repeat_n((1, 0), c10));
                rows.extend(core::iter::repeat_n((0, 1), c01));
                rows.extend(core::iter::repeat_n((0, 0), c00));
                out.push(OrbitRep { rows });
            }
        }
    }
    Ok(out)
}

/// Flattens row pairs into the variable order `x_{1,1}, x_{1,2}, x_{2,1}, …`.
fn rows_to_exps(rows: &[(Int, Int)]) -> Vec<Int> {
    let mut exps = Vec::with_capacity(rows.len() * 2);
    for (a, b) in rows {
        exps.push(a.clone());
        exps.push(b.clone());
    }
    exps
}

fn exps_to_rows(exps: &[Int]) -> Vec<(Int, Int)> {
    exps.chunks_exact(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect()
}

/// The elementary 2-symmetric polynomial of an orbit: the `⊕`-sum of the
/// monomials of all distinct row placements, coefficient 0.
pub fn elementary2(orbit: &OrbitRep) -> Polynomial {
    let rows: Vec<(Int, Int)> = orbit
        .rows
        .iter()
        .map(|&(a, b)| (Int::from(a), Int::from(b)))
        .collect();
    block_symmetrize_monomial(&Rational::zero(), &rows)
}

/// `Sym₂` of the single block monomial `coeff ⊙ x^rows`.
pub fn block_symmetrize_monomial(coeff: &Rational, rows: &[(Int, Int)]) -> Polynomial {
    let n = rows.len();
    let mut monos = Vec::new();
    for_each_distinct_permutation(rows, |perm| {
        monos.push(Monomial::new(coeff.clone(), rows_to_exps(perm)));
    });
    Polynomial::from_monomials(2 * n, monos).expect("at least one row placement")
}

/// `Sym₂(p) = ⊕_{π ∈ S_n}` of the row-permuted polynomial.
pub fn symmetrize2(p: &Polynomial) -> Result<Polynomial, BlockError> {
    symmetrize2_with_cap(p, DEFAULT_FACTORIAL_CAP)
}

pub fn symmetrize2_with_cap(p: &Polynomial, cap: usize) -> Result<Polynomial, BlockError> {
    let n_vars = p.n_vars();
    if !n_vars.is_multiple_of(2) {
        return Err(BlockError::OddVariableCount { n_vars });
    }
    let n = n_vars / 2;
    if n > cap {
        return Err(BlockError::FactorialCap { n, cap });
    }
    let mut out: Vec<Monomial> = Vec::new();
    for m in p.monomials() {
        let rows = exps_to_rows(&m.exps);
        for_each_distinct_permutation(&rows, |perm| {
            out.push(Monomial::new(m.coeff.clone(), rows_to_exps(perm)));
        });
    }
    Ok(Polynomial::from_monomials(n_vars, out)?)
}

/// Permutation of flat variable indices swapping rows `i` and `i + 1`.
fn swap_rows_perm(n: usize, i: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..2 * n).collect();
    perm.swap(2 * i, 2 * i + 2);
    perm.swap(2 * i + 1, 2 * i + 3);
    perm
}

/// `None` when `p` is 2-symmetric as a function.
pub fn symmetry2_witness(p: &Polynomial) -> Result<Option<SwapWitness>, BlockError> {
    let n_vars = p.n_vars();
    if !n_vars.is_multiple_of(2) {
        return Err(BlockError::OddVariableCount { n_vars });
    }
    let n = n_vars / 2;
    for i in 0..n.saturating_sub(1) {
        let swapped = p.permute_vars(&swap_rows_perm(n, i));
        if let Equivalence::Distinct { witness } = canon::poly_equiv(p, &swapped)? {
            return Ok(Some(((i, i + 1), witness)));
        }
    }
    Ok(None)
}

pub fn is_2symmetric(p: &Polynomial) -> Result<bool, BlockError> {
    Ok(symmetry2_witness(p)?.is_none())
}

/// A block monomial `coeff ⊙ ∏ x_{i,j}^{rows[i].j}` with general integer
/// exponents stored row-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMonomial {
    pub coeff: Rational,
    pub rows: Vec<(Int, Int)>,
}

impl BlockMonomial {
    pub fn new(coeff: Rational, rows: Vec<(Int, Int)>) -> Self {
        BlockMonomial { coeff, rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Total degree: the sum of all entries.
    pub fn deg(&self) -> Int {
        self.rows.iter().map(|(a, b)| a + b).sum()
    }

    /// Spread `S(m)`: the number of nonzero entries.
    pub fn spread(&self) -> usize {
        self.rows
            .iter()
            .map(|(a, b)| usize::from(!a.is_zero()) + usize::from(!b.is_zero()))
            .sum()
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::new(self.coeff.clone(), rows_to_exps(&self.rows))
    }

    /// `Sym₂` of this monomial as a polynomial over `2n` variables.
    pub fn symmetrize(&self) -> Polynomial {
        block_symmetrize_monomial(&self.coeff, &self.rows)
    }
}

/// The `>_S` order on exponent matrices: larger degree first; for equal
/// degrees the *smaller* spread is the larger element; ties break
/// lexicographically on the flattened exponent tuple.
///
/// Returns `Greater` when `a >_S b`.
pub fn compare_s(a: &BlockMonomial, b: &BlockMonomial) -> Ordering {
    compare_s_rows(&a.rows, &b.rows)
}

fn compare_s_rows(a: &[(Int, Int)], b: &[(Int, Int)]) -> Ordering {
    let deg = |rows: &[(Int, Int)]| -> Int { rows.iter().map(|(x, y)| x + y).sum() };
    let spread = |rows: &[(Int, Int)]| -> usize {
        rows.iter()
            .map(|(x, y)| usize::from(!x.is_zero()) + usize::from(!y.is_zero()))
            .sum()
    };
    deg(a)
        .cmp(&deg(b))
        .then_with(|| spread(b).cmp(&spread(a)))
        .then_with(|| rows_to_exps(a).cmp(&rows_to_exps(b)))
}

/// A tropical rational expression over the elementary 2-symmetric
/// generators: constants, orbit generators, `⊕`, `⊙`, inversion and
/// integer powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen2Expr {
    Const(Rational),
    Gen(OrbitRep),
    Add(Vec<Gen2Expr>),
    Mul(Vec<Gen2Expr>),
    Inv(Box<Gen2Expr>),
    Pow(Box<Gen2Expr>, i64),
}

impl Gen2Expr {
    fn pow(self, k: i64) -> Gen2Expr {
        match k {
            1 => self,
            _ => Gen2Expr::Pow(Box::new(self), k),
        }
    }

    fn mul(parts: Vec<Gen2Expr>) -> Gen2Expr {
        let mut parts: Vec<Gen2Expr> = parts
            .into_iter()
            .filter(|p| !matches!(p, Gen2Expr::Const(c) if c.is_zero()))
            .collect();
        match parts.len() {
            0 => Gen2Expr::Const(Rational::zero()),
            1 => parts.pop().expect("one part"),
            _ => Gen2Expr::Mul(parts),
        }
    }

    /// Substitutes every orbit generator by its elementary polynomial and
    /// evaluates the tree into a single quotient over `2n` variables.
    ///
    /// Powers use the functional (Frobenius-collapsed) form and both
    /// components are pruned to their minimal representations after each
    /// combination; the resulting quotient is functionally equal to the
    /// literal substitution but stays small.
    pub fn expand(&self, n: usize) -> Result<RationalFn, BlockError> {
        let n_vars = 2 * n;
        match self {
            Gen2Expr::Const(c) => Ok(RationalFn::from_poly(Polynomial::constant(
                n_vars,
                c.clone(),
            ))),
            Gen2Expr::Gen(orbit) => {
                if orbit.n() != n {
                    return Err(BlockError::InvalidOrbit {
                        reason: format!("orbit {} has {} rows, expected {n}", orbit, orbit.n()),
                    });
                }
                Ok(RationalFn::from_poly(elementary2(orbit)))
            }
            Gen2Expr::Add(parts) => {
                let mut acc: Option<RationalFn> = None;
                for part in parts {
                    let r = part.expand(n)?;
                    acc = Some(match acc {
                        None => r,
                        Some(prev) => prune(prev.add(&r)?),
                    });
                }
                acc.ok_or(BlockError::InvalidExpression {
                    reason: "empty tropical sum",
                })
            }
            Gen2Expr::Mul(parts) => {
                let mut acc = RationalFn::from_poly(Polynomial::one(n_vars));
                for part in parts {
                    acc = prune(acc.mul(&part.expand(n)?)?);
                }
                Ok(acc)
            }
            Gen2Expr::Inv(inner) => Ok(inner.expand(n)?.inv()),
            Gen2Expr::Pow(inner, k) => Ok(inner.expand(n)?.frobenius_pow(*k)),
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            Gen2Expr::Const(c) => fmt_rational(c),
            Gen2Expr::Gen(o) => format!("e{}", o.label()),
            Gen2Expr::Add(parts) => {
                let inner: Vec<String> = parts.iter().map(Gen2Expr::pretty).collect();
                format!("({})", inner.join(" ⊕ "))
            }
            Gen2Expr::Mul(parts) => {
                let inner: Vec<String> = parts.iter().map(Gen2Expr::pretty).collect();
                inner.join(" ⊙ ")
            }
            Gen2Expr::Inv(inner) => format!("{}^-1", wrap(inner)),
            Gen2Expr::Pow(inner, k) => format!("{}^{}", wrap(inner), k),
        }
    }
}

fn wrap(e: &Gen2Expr) -> String {
    match e {
        // sums parenthesize themselves
        Gen2Expr::Const(_) | Gen2Expr::Gen(_) | Gen2Expr::Add(_) => e.pretty(),
        _ => format!("({})", e.pretty()),
    }
}

/// Replaces both components by their minimal representations. The
/// function is unchanged; intermediate expression growth is not.
fn prune(r: RationalFn) -> RationalFn {
    let (num, den) = r.into_parts();
    RationalFn::new(
        canon::minimal_representation(&num),
        canon::minimal_representation(&den),
    )
    .expect("components keep their arity")
}

impl fmt::Display for Gen2Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Instrumentation of the decomposition recursion: every recursive edge
/// is checked for strict `>_S` descent before it is taken.
#[derive(Clone, Copy, Debug, Default)]
pub struct DecomposeStats {
    pub calls: usize,
    pub max_depth: usize,
    pub descent_checks: usize,
}

/// Decomposes `Sym₂(m)` of a nonnegative block monomial into a rational
/// expression in the elementary 2-symmetric generators, so that
/// `expand()` of the result is functionally equal to `Sym₂(m)`.
pub fn decompose2_symmetric(m: &BlockMonomial) -> Result<Gen2Expr, BlockError> {
    decompose2_symmetric_with_stats(m, DEFAULT_BLOCK_DECOMPOSITION_CAP).map(|(g, _)| g)
}

/// As [`decompose2_symmetric`], returning the recursion instrumentation.
///
/// The recursion strictly descends in `>_S`: coefficient and invariant
/// column factors are peeled (degree drops), `{0,1}` matrices and
/// constant-exponent supports are generator powers, single-column
/// matrices reduce to the one-variable-per-row theory, and the remaining
/// two-row cases are closed forms over sorted row statistics. For `n = 3`
/// a support peel is attempted and the assembled result is verified;
/// inputs whose cross terms survive the peel are reported as unsupported
/// rather than silently mis-decomposed.
pub fn decompose2_symmetric_with_stats(
    m: &BlockMonomial,
    cap: usize,
) -> Result<(Gen2Expr, DecomposeStats), BlockError> {
    let n = m.n();
    if n == 0 || n > cap {
        return Err(BlockError::DecompositionCap { n, cap });
    }
    if m.rows.iter().any(|(a, b)| a.is_negative() || b.is_negative()) {
        return Err(BlockError::NegativeExponent);
    }
    let mut stats = DecomposeStats::default();
    let body = dec_rows(&m.rows, 0, &mut stats, None)?;
    let expr = if m.coeff.is_zero() {
        body
    } else {
        Gen2Expr::mul(vec![Gen2Expr::Const(m.coeff.clone()), body])
    };
    if n > 2 {
        // The two-row forms are exact by construction; larger blocks go
        // through the peel, so check the assembled result.
        let expanded = expr.expand(n)?;
        let target = RationalFn::from_poly(m.symmetrize());
        if !canon::rational_equiv(&expanded, &target)?.is_equivalent() {
            return Err(BlockError::Unsupported {
                reason: String::from(
                    "support peel leaves cross terms that are not dominated for this input",
                ),
            });
        }
    }
    Ok((expr, stats))
}

fn orbit_of_support(rows: &[(Int, Int)]) -> OrbitRep {
    OrbitRep::new(
        rows.iter()
            .map(|(a, b)| (u8::from(!a.is_zero()), u8::from(!b.is_zero())))
            .collect(),
    )
    .expect("support of a nonzero monomial is a valid orbit")
}

fn uniform_orbit(row: BitRow, count: usize, n: usize) -> OrbitRep {
    let mut rows = vec![row; count];
    rows.resize(n, (0, 0));
    OrbitRep::new(rows).expect("nonzero uniform rows")
}

fn int_i64(v: &Int) -> Result<i64, BlockError> {
    i64::try_from(v).map_err(|_| BlockError::Unsupported {
        reason: String::from("exponent too large"),
    })
}

fn dec_rows(
    rows: &[(Int, Int)],
    depth: usize,
    stats: &mut DecomposeStats,
    parent: Option<&[(Int, Int)]>,
) -> Result<Gen2Expr, BlockError> {
    stats.calls += 1;
    stats.max_depth = stats.max_depth.max(depth);
    if let Some(parent) = parent {
        assert_eq!(
            compare_s_rows(parent, rows),
            Ordering::Greater,
            "recursion must strictly descend in >_S"
        );
        stats.descent_checks += 1;
    }
    let n = rows.len();

    // Degree 0: the constant 0 (the ⊙-identity).
    if rows.iter().all(|(a, b)| a.is_zero() && b.is_zero()) {
        return Ok(Gen2Expr::Const(Rational::zero()));
    }

    // Invariant column factors: ∏ᵢ x_{i,1} and ∏ᵢ x_{i,2} are fixed by
    // every row permutation, so their powers split off.
    let c1 = rows.iter().map(|(a, _)| a.clone()).min().expect("nonempty");
    let c2 = rows.iter().map(|(_, b)| b.clone()).min().expect("nonempty");
    if c1.is_positive() || c2.is_positive() {
        let reduced: Vec<(Int, Int)> = rows.iter().map(|(a, b)| (a - &c1, b - &c2)).collect();
        let mut parts = Vec::new();
        if c1.is_positive() {
            parts.push(Gen2Expr::Gen(uniform_orbit((1, 0), n, n)).pow(int_i64(&c1)?));
        }
        if c2.is_positive() {
            parts.push(Gen2Expr::Gen(uniform_orbit((0, 1), n, n)).pow(int_i64(&c2)?));
        }
        parts.push(dec_rows(&reduced, depth + 1, stats, Some(rows))?);
        return Ok(Gen2Expr::mul(parts));
    }

    let one = Int::one();

    // {0,1} exponent matrix: an elementary generator by definition.
    if rows.iter().all(|(a, b)| a <= &one && b <= &one) {
        return Ok(Gen2Expr::Gen(orbit_of_support(rows)));
    }

    // Constant positive exponent a on the support: Sym₂(x^{aE}) = e_E^a by
    // the idempotent Frobenius identity.
    let a_min = rows
        .iter()
        .flat_map(|(a, b)| [a, b])
        .filter(|v| v.is_positive())
        .min()
        .cloned()
        .expect("degree > 0");
    let all_equal = rows
        .iter()
        .flat_map(|(a, b)| [a, b])
        .filter(|v| v.is_positive())
        .all(|v| *v == a_min);
    if all_equal {
        return Ok(Gen2Expr::Gen(orbit_of_support(rows)).pow(int_i64(&a_min)?));
    }

    // Single-column matrices: the function only involves one coordinate of
    // each row, so the one-variable elementary theory applies with
    // e_k = e_{[(1,0)^k]} (resp. e_{[(0,1)^k]}).
    let col2_zero = rows.iter().all(|(_, b)| b.is_zero());
    let col1_zero = rows.iter().all(|(a, _)| a.is_zero());
    if col2_zero || col1_zero {
        let mut lambda: Vec<Int> = rows
            .iter()
            .map(|(a, b)| if col2_zero { a.clone() } else { b.clone() })
            .collect();
        lambda.sort_unstable_by(|x, y| y.cmp(x));
        let row = if col2_zero { (1, 0) } else { (0, 1) };
        let mut parts = Vec::new();
        for k in 0..n {
            let next = if k + 1 < n {
                lambda[k + 1].clone()
            } else {
                Int::zero()
            };
            let g = &lambda[k] - next;
            if g.is_positive() {
                parts.push(Gen2Expr::Gen(uniform_orbit(row, k + 1, n)).pow(int_i64(&g)?));
            }
        }
        return Ok(Gen2Expr::mul(parts));
    }

    if n == 2 {
        return dec_two_rows(rows);
    }

    // n ≥ 3: peel the support; the assembled result is verified by the
    // caller, which rejects inputs whose cross terms are not absorbed.
    let e = Gen2Expr::Gen(orbit_of_support(rows));
    let reduced: Vec<(Int, Int)> = rows
        .iter()
        .map(|(a, b)| {
            (
                if a.is_positive() { a - &a_min } else { a.clone() },
                if b.is_positive() { b - &a_min } else { b.clone() },
            )
        })
        .collect();
    let sub = dec_rows(&reduced, depth + 1, stats, Some(rows))?;
    Ok(Gen2Expr::mul(vec![e.pow(int_i64(&a_min)?), sub]))
}

/// Closed forms for the two-row cases that remain after reduction: a
/// single nonzero row `(d, e)` or a crossed pair `(d, 0), (0, e)`.
///
/// Write `β ≤ β̄` for the sorted first coordinates, `γ ≤ γ̄` for the
/// sorted second coordinates, `Δu = β̄ − β`, `Δv = γ̄ − γ`. With
/// `α = e_{[(1,1)]}` and `δ = e_{[(1,0)(0,1)]}`, the gap
/// `t = max(α − δ, 0)` is zero exactly on the aligned region (where one
/// row realizes both column minima) and equals `min(Δu, Δv)` on the
/// anti-aligned region. For `K = max(d, e)`,
///
/// ```text
/// Sym₂(x₁₁^d ⊙ x₁₂^e) = β^d ⊙ γ^e ⊙ (Δv^e ⊕ Δu^d ⊕ t^K),
/// ```
///
/// since on the aligned region the minimum is `dβ + eγ` and the gate
/// closes the sum at 0, while on the anti-aligned region the minimum is
/// `dβ + eγ + min(eΔv, dΔu)` and `K·t ≥ min(eΔv, dΔu)` keeps the gate
/// inactive. The crossed case mirrors the regions with
/// `t̄ = max(δ − α, 0)`.
fn dec_two_rows(rows: &[(Int, Int)]) -> Result<Gen2Expr, BlockError> {
    let mut sorted = rows.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));

    let beta = Gen2Expr::Gen(OrbitRep::new(vec![(1, 0), (0, 0)])?);
    let gamma = Gen2Expr::Gen(OrbitRep::new(vec![(0, 1), (0, 0)])?);
    let p_full = Gen2Expr::Gen(OrbitRep::new(vec![(1, 0), (1, 0)])?);
    let q_full = Gen2Expr::Gen(OrbitRep::new(vec![(0, 1), (0, 1)])?);
    let alpha = Gen2Expr::Gen(OrbitRep::new(vec![(1, 1), (0, 0)])?);
    let delta = Gen2Expr::Gen(OrbitRep::new(vec![(1, 0), (0, 1)])?);

    let delta_u = Gen2Expr::mul(vec![p_full, Gen2Expr::Inv(Box::new(beta.clone().pow(2)))]);
    let delta_v = Gen2Expr::mul(vec![q_full, Gen2Expr::Inv(Box::new(gamma.clone().pow(2)))]);
    // max(α − δ, 0) and max(δ − α, 0) as rational expressions
    let gate_anti = Gen2Expr::Inv(Box::new(Gen2Expr::Add(vec![
        Gen2Expr::Const(Rational::zero()),
        Gen2Expr::mul(vec![delta.clone(), Gen2Expr::Inv(Box::new(alpha.clone()))]),
    ])));
    let gate_aligned = Gen2Expr::Inv(Box::new(Gen2Expr::Add(vec![
        Gen2Expr::Const(Rational::zero()),
        Gen2Expr::mul(vec![alpha, Gen2Expr::Inv(Box::new(delta))]),
    ])));

    let (d, e, gate) = if sorted[1] == (Int::zero(), Int::zero()) {
        // Sym₂(x₁₁^d ⊙ x₁₂^e): single nonzero row.
        (sorted[0].0.clone(), sorted[0].1.clone(), gate_anti)
    } else {
        // Sym₂(x₁₁^d ⊙ x₂₂^e): crossed placement.
        debug_assert!(sorted[0].1.is_zero() && sorted[1].0.is_zero());
        (sorted[0].0.clone(), sorted[1].1.clone(), gate_aligned)
    };
    let d_i = int_i64(&d)?;
    let e_i = int_i64(&e)?;
    debug_assert!(d_i >= 1 && e_i >= 1, "mixed cases are handled earlier");
    let cap = d_i.max(e_i);

    let correction = Gen2Expr::Add(vec![delta_v.pow(e_i), delta_u.pow(d_i), gate.pow(cap)]);
    Ok(Gen2Expr::mul(vec![
        beta.pow(d_i),
        gamma.pow(e_i),
        correction,
    ]))
}

/// Decomposes a 2-symmetric rational function into a quotient of
/// generator expressions via `r = Sym₂(num) ⊙ Sym₂(den)⁻¹` and the
/// per-orbit monomial decomposition. The result is verified by
/// functional equivalence before it is returned.
pub fn decompose2_symmetric_rational(r: &RationalFn) -> Result<Gen2Expr, BlockError> {
    decompose2_symmetric_rational_with_cap(r, DEFAULT_BLOCK_DECOMPOSITION_CAP)
}

pub fn decompose2_symmetric_rational_with_cap(
    r: &RationalFn,
    cap: usize,
) -> Result<Gen2Expr, BlockError> {
    let n_vars = r.n_vars();
    if !n_vars.is_multiple_of(2) {
        return Err(BlockError::OddVariableCount { n_vars });
    }
    let n = n_vars / 2;
    if n == 0 || n > cap {
        return Err(BlockError::DecompositionCap { n, cap });
    }
    if let Some((swap, witness)) = rational_symmetry2_witness(r)? {
        return Err(BlockError::Not2Symmetric { swap, witness });
    }

    // Clear negative exponents by the invariant monomial (∏ x_{i,j})^s.
    let min_exp = r.num().min_exponent().min(r.den().min_exponent());
    let shift = if min_exp.is_negative() {
        -min_exp
    } else {
        Int::zero()
    };
    let all = Monomial::new(Rational::zero(), vec![shift; n_vars]);
    let num = r.num().mul_monomial(&all)?;
    let den = r.den().mul_monomial(&all)?;

    let num_expr = decompose2_poly(&symmetrize2(&num)?, cap)?;
    let den_expr = decompose2_poly(&symmetrize2(&den)?, cap)?;
    let expr = match den_expr {
        // trivial denominator: the quotient is the numerator itself
        Gen2Expr::Const(c) if c.is_zero() => num_expr,
        den_expr => Gen2Expr::mul(vec![num_expr, Gen2Expr::Inv(Box::new(den_expr))]),
    };

    let expanded = expr.expand(n)?;
    if !canon::rational_equiv(&expanded, r)?.is_equivalent() {
        return Err(BlockError::Unsupported {
            reason: String::from("assembled decomposition failed verification"),
        });
    }
    Ok(expr)
}

/// Splits a 2-symmetric polynomial into `Sym₂`-orbits and decomposes each
/// orbit representative, joining the pieces with `⊕`.
fn decompose2_poly(p: &Polynomial, cap: usize) -> Result<Gen2Expr, BlockError> {
    let mut orbits: Vec<(Vec<(Int, Int)>, Rational)> = Vec::new();
    for m in p.monomials() {
        let mut rows = exps_to_rows(&m.exps);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        match orbits.iter_mut().find(|(k, _)| *k == rows) {
            Some((_, c)) => {
                if m.coeff < *c {
                    *c = m.coeff.clone();
                }
            }
            None => orbits.push((rows, m.coeff.clone())),
        }
    }
    let mut parts = Vec::with_capacity(orbits.len());
    for (rows, coeff) in orbits {
        let (g, _) = decompose2_symmetric_with_stats(&BlockMonomial::new(coeff, rows), cap)?;
        parts.push(g);
    }
    if parts.len() == 1 {
        Ok(parts.pop().expect("one part"))
    } else {
        Ok(Gen2Expr::Add(parts))
    }
}

/// `None` when `r` is 2-symmetric as a function.
pub fn rational_symmetry2_witness(r: &RationalFn) -> Result<Option<SwapWitness>, BlockError> {
    let n_vars = r.n_vars();
    if !n_vars.is_multiple_of(2) {
        return Err(BlockError::OddVariableCount { n_vars });
    }
    let n = n_vars / 2;
    for i in 0..n.saturating_sub(1) {
        let perm = swap_rows_perm(n, i);
        let swapped = RationalFn::new(r.num().permute_vars(&perm), r.den().permute_vars(&perm))?;
        if let Equivalence::Distinct { witness } = canon::rational_equiv(r, &swapped)? {
            return Ok(Some(((i, i + 1), witness)));
        }
    }
    Ok(None)
}

/// A persistence barcode: a finite multiset of (birth, death) intervals.
/// No ordering or `birth ≤ death` constraint is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barcode {
    pub intervals: Vec<(Rational, Rational)>,
}

impl Barcode {
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Self {
        Barcode { intervals }
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    /// Flat coordinates `(b₁, d₁, b₂, d₂, …)`.
    pub fn to_point(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(2 * self.intervals.len());
        for (b, d) in &self.intervals {
            out.push(b.clone());
            out.push(d.clone());
        }
        out
    }
}

/// Evaluates every elementary 2-symmetric polynomial at the barcode.
/// Two barcodes get equal fingerprints exactly when they are equal as
/// multisets of intervals.
pub fn orbit_fingerprint2(barcode: &Barcode) -> Result<Vec<(OrbitRep, Rational)>, BlockError> {
    let n = barcode.n();
    let point = barcode.to_point();
    let orbits = enumerate_orbits(n)?;
    orbits
        .into_iter()
        .map(|o| {
            let value = elementary2(&o)
                .value_at(&point)
                .expect("barcode point has 2n coordinates");
            Ok((o, value))
        })
        .collect()
}

/// One violated-domination witness for the non-finite-generation
/// argument.
#[derive(Clone, Debug)]
pub struct NonGenerationEntry {
    pub a: i64,
    /// `(x₁₁, x₁₂, x₂₁, x₂₂)` where the displayed minimum is positive.
    pub point: Vec<Rational>,
    /// `min((d−a)(x₁₁−x₂₁), a(x₂₁−x₁₁) + x₂₂−x₁₂)` at the point.
    pub margin: Rational,
}

/// Witness report: for every exponent `a < d` the cross term
/// `x₁₁^a x₁₂ x₂₁^{d−a}` fails to dominate `x₁₁^d x₁₂ ⊕ x₂₁^d x₂₂`, and
/// both monomials of that target are certified essential.
#[derive(Clone, Debug)]
pub struct NonGenerationReport {
    pub d: i64,
    pub entries: Vec<NonGenerationEntry>,
    pub target_certificates: Vec<EssentialityCertificate>,
}

pub fn non_generation_witness(d: i64) -> Result<NonGenerationReport, BlockError> {
    if d < 2 {
        return Err(BlockError::DegreeTooSmall { d });
    }
    let mut entries = Vec::with_capacity(d as usize);
    for a in 0..d {
        // x₁₁ − x₂₁ = 1 and x₂₂ − x₁₂ = a + 1 make both branches of the
        // displayed minimum at least 1.
        let point = vec![
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::from_integer(Int::from(a + 1)),
        ];
        let du = &point[0] - &point[2];
        let dv = &point[3] - &point[1];
        let branch1 = Rational::from_integer(Int::from(d - a)) * &du;
        let branch2 = Rational::from_integer(Int::from(a)) * (-&du) + dv;
        let margin = branch1.min(branch2);
        debug_assert!(margin.is_positive());
        entries.push(NonGenerationEntry { a, point, margin });
    }

    // The target x₁₁^d x₁₂ ⊕ x₂₁^d x₂₂ is its own minimal representation.
    let target = Polynomial::from_monomials(
        4,
        [
            Monomial::new(
                Rational::zero(),
                vec![Int::from(d), Int::one(), Int::zero(), Int::zero()],
            ),
            Monomial::new(
                Rational::zero(),
                vec![Int::zero(), Int::zero(), Int::from(d), Int::one()],
            ),
        ],
    )?;
    let target_certificates = canon::essentiality_certificates(&target);
    Ok(NonGenerationReport {
        d,
        entries,
        target_certificates,
    })
}
