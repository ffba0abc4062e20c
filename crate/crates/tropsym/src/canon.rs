//! Minimal representations and functional equivalence.
//!
//! A monomial of a dedup-normalized expression is *essential* when there
//! is a point where it is the strict unique minimizer among all
//! monomials. Dropping every inessential monomial never changes the
//! function, and two expressions are functionally equivalent exactly when
//! their essential sets coincide, so the essential set is a canonical
//! form. Essentiality of one monomial is strict feasibility of a system
//! of linear inequalities, decided here by one exact LP per monomial.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::poly::{Monomial, PolyError, Polynomial, RationalFn};
use crate::scalar::Rational;
use crate::simplex::{LpOutcome, StandardLp};

/// Outcome of the per-monomial strict-feasibility test.
#[derive(Clone, Debug)]
pub struct EssentialityCertificate {
    pub monomial_index: usize,
    pub essential: bool,
    /// A rational point where the monomial is the strict unique minimizer
    /// (present exactly when `essential`).
    pub witness: Option<Vec<Rational>>,
}

/// Result of an equivalence test; `Distinct` carries a point where the
/// two functions differ.
#[derive(Clone, Debug)]
pub enum Equivalence {
    Equivalent,
    Distinct { witness: Vec<Rational> },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Equivalence::Equivalent => None,
            Equivalence::Distinct { witness } => Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonError {
    MonomialIndexOutOfRange { index: usize, len: usize },
    Poly(PolyError),
}

impl fmt::Display for CanonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonError::MonomialIndexOutOfRange { index, len } => {
                write!(f, "monomial index {index} out of range (expression has {len})")
            }
            CanonError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CanonError {}

impl From<PolyError> for CanonError {
    fn from(e: PolyError) -> Self {
        CanonError::Poly(e)
    }
}

/// Per-polynomial certification context: exponent vectors converted to
/// rationals once, shared by probe evaluation and LP construction.
struct Ctx<'a> {
    p: &'a Polynomial,
    exps: Vec<Vec<Rational>>,
}

impl<'a> Ctx<'a> {
    fn new(p: &'a Polynomial) -> Self {
        let exps = p
            .monomials()
            .iter()
            .map(|m| {
                m.exps
                    .iter()
                    .map(|e| Rational::from_integer(e.clone()))
                    .collect()
            })
            .collect();
        Ctx { p, exps }
    }

    fn mono_value(&self, s: usize, x: &[Rational]) -> Rational {
        let mut acc = self.p.monomials()[s].coeff.clone();
        for (e, v) in self.exps[s].iter().zip(x) {
            if !e.is_zero() {
                acc += e * v;
            }
        }
        acc
    }

    /// Early-exiting strictness test: does monomial `j` beat every other
    /// monomial at `x`?
    fn strictly_minimal(&self, j: usize, x: &[Rational]) -> bool {
        let own = self.mono_value(j, x);
        for s in 0..self.p.len() {
            if s != j && self.mono_value(s, x) <= own {
                return false;
            }
        }
        true
    }

    /// Deterministic probe points adapted to monomial `j`: scaled
    /// opposites of its exponent vector with a small coordinate jitter to
    /// break ties. A strict win at any probe certifies essentiality
    /// without running the LP.
    fn probe(&self, j: usize) -> Option<Vec<Rational>> {
        let n = self.p.n_vars();
        let eps = Rational::new(1.into(), ((8 * (n + 1)) as i64).into());
        for t in [1i64, 16, 256] {
            let x: Vec<Rational> = (0..n)
                .map(|d| {
                    -&self.exps[j][d] * crate::scalar::rat(t)
                        + &eps * crate::scalar::rat((d + 1) as i64)
                })
                .collect();
            if self.strictly_minimal(j, &x) {
                return Some(x);
            }
        }
        None
    }

    fn certificate(&self, j: usize) -> EssentialityCertificate {
        let n = self.p.n_vars();
        if self.p.len() == 1 {
            return EssentialityCertificate {
                monomial_index: j,
                essential: true,
                witness: Some(vec![Rational::zero(); n]),
            };
        }
        if let Some(x) = self.probe(j) {
            return EssentialityCertificate {
                monomial_index: j,
                essential: true,
                witness: Some(x),
            };
        }
        self.lp_certificate(j)
    }

    /// Exact decision: the strict system
    /// `a_j + ⟨i_j, x⟩ < a_s + ⟨i_s, x⟩ (s ≠ j)` is strictly feasible iff
    /// the LP `max t s.t. t − ⟨i_s − i_j, x⟩ ≤ a_s − a_j, t ≤ 1` has a
    /// positive optimum. The LP is solved through its dual, whose
    /// constraint multipliers reproduce the maximizing point.
    fn lp_certificate(&self, j: usize) -> EssentialityCertificate {
        let n = self.p.n_vars();
        let own = &self.p.monomials()[j];
        // Columns: the cap row plus one per competing monomial.
        let mut cols: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(self.p.len());
        cols.push((vec![Rational::zero(); n], Rational::one()));
        for (s, m) in self.p.monomials().iter().enumerate() {
            if s == j {
                continue;
            }
            let g: Vec<Rational> = self.exps[s]
                .iter()
                .zip(&self.exps[j])
                .map(|(is, ij)| is - ij)
                .collect();
            cols.push((g, &m.coeff - &own.coeff));
        }

        let cols_n = cols.len();
        let mut constraints = vec![vec![Rational::zero(); cols_n]; n + 1];
        let mut objective = Vec::with_capacity(cols_n);
        for (c, (g, h)) in cols.into_iter().enumerate() {
            for (d, gd) in g.into_iter().enumerate() {
                constraints[d][c] = gd;
            }
            constraints[n][c] = Rational::one();
            objective.push(h);
        }
        let mut rhs = vec![Rational::zero(); n + 1];
        rhs[n] = Rational::one();

        let lp = StandardLp {
            constraints,
            rhs,
            objective,
        };
        let sol = match lp.solve() {
            LpOutcome::Optimal(sol) => sol,
            // The dual is feasible (all weight on the cap row) and the
            // primal is feasible and capped, so neither branch can occur.
            LpOutcome::Infeasible | LpOutcome::Unbounded => {
                unreachable!("essentiality LP is feasible and bounded")
            }
        };

        if sol.value > Rational::zero() {
            let witness: Vec<Rational> = sol.duals[..n].iter().map(|d| -d).collect();
            debug_assert!(
                self.strictly_minimal(j, &witness),
                "dual multipliers must reproduce a strict witness"
            );
            EssentialityCertificate {
                monomial_index: j,
                essential: true,
                witness: Some(witness),
            }
        } else {
            EssentialityCertificate {
                monomial_index: j,
                essential: false,
                witness: None,
            }
        }
    }
}

/// Decides whether monomial `j` of `p` is essential, returning a strict
/// witness point when it is.
pub fn is_essential(p: &Polynomial, j: usize) -> Result<EssentialityCertificate, CanonError> {
    if j >= p.len() {
        return Err(CanonError::MonomialIndexOutOfRange {
            index: j,
            len: p.len(),
        });
    }
    Ok(Ctx::new(p).certificate(j))
}

/// Essentiality certificates for every monomial of `p`.
///
/// When the monomial set is closed under permuting variables (or under
/// permuting rows of width two), essentiality is equivariant, so only one
/// representative per orbit is decided and the witnesses of the rest are
/// the permuted images.
pub fn essentiality_certificates(p: &Polynomial) -> Vec<EssentialityCertificate> {
    for chunk in [1usize, 2] {
        if let Some(certs) = equivariant_certificates(p, chunk) {
            return certs;
        }
    }
    let ctx = Ctx::new(p);
    (0..p.len()).map(|j| ctx.certificate(j)).collect()
}

/// Orbit-closure fast path: `None` unless the monomial set is invariant
/// (with equal coefficients) under all permutations of its width-`chunk`
/// blocks.
fn equivariant_certificates(
    p: &Polynomial,
    chunk: usize,
) -> Option<Vec<EssentialityCertificate>> {
    use alloc::collections::BTreeMap;

    let n_vars = p.n_vars();
    if !n_vars.is_multiple_of(chunk) {
        return None;
    }
    let blocks = n_vars / chunk;
    if blocks < 2 || p.len() < 2 {
        return None;
    }

    let rows_of = |exps: &[crate::scalar::Int]| -> Vec<Vec<crate::scalar::Int>> {
        exps.chunks_exact(chunk).map(<[_]>::to_vec).collect()
    };
    // group monomials by their sorted block multiset
    let mut groups: BTreeMap<Vec<Vec<crate::scalar::Int>>, Vec<usize>> = BTreeMap::new();
    for (idx, m) in p.monomials().iter().enumerate() {
        let mut key = rows_of(&m.exps);
        key.sort_unstable_by(|a, b| b.cmp(a));
        groups.entry(key).or_default().push(idx);
    }

    // closure check: each group holds the full orbit with one coefficient
    for (key, members) in &groups {
        let mut distinct = 0usize;
        crate::perm::for_each_distinct_permutation(key, |_| distinct += 1);
        if members.len() != distinct {
            return None;
        }
        let coeff = &p.monomials()[members[0]].coeff;
        if members
            .iter()
            .any(|&i| &p.monomials()[i].coeff != coeff)
        {
            return None;
        }
    }

    let ctx = Ctx::new(p);
    let mut certs: Vec<Option<EssentialityCertificate>> = vec![None; p.len()];
    for members in groups.values() {
        let rep = members[0];
        let rep_cert = ctx.certificate(rep);
        let rep_rows = rows_of(&p.monomials()[rep].exps);
        for &member in members {
            let cert = if member == rep {
                rep_cert.clone()
            } else if !rep_cert.essential {
                EssentialityCertificate {
                    monomial_index: member,
                    essential: false,
                    witness: None,
                }
            } else {
                let w = rep_cert.witness.as_ref().expect("essential has witness");
                let member_rows = rows_of(&p.monomials()[member].exps);
                // block permutation σ with rep_rows[σ(k)] = member_rows[k]
                let mut used = vec![false; blocks];
                let mut sigma = vec![0usize; blocks];
                for (k, row) in member_rows.iter().enumerate() {
                    let j = (0..blocks)
                        .find(|&j| !used[j] && &rep_rows[j] == row)
                        .expect("same multiset of blocks");
                    used[j] = true;
                    sigma[k] = j;
                }
                let mut x = vec![Rational::zero(); n_vars];
                for k in 0..blocks {
                    for c in 0..chunk {
                        x[chunk * k + c] = w[chunk * sigma[k] + c].clone();
                    }
                }
                debug_assert!(ctx.strictly_minimal(member, &x));
                EssentialityCertificate {
                    monomial_index: member,
                    essential: true,
                    witness: Some(x),
                }
            };
            certs[member] = Some(cert);
        }
    }
    Some(certs.into_iter().map(|c| c.expect("all slots filled")).collect())
}

/// The canonical minimal representation: the subsequence of essential
/// monomials. Functionally equal to `p`, idempotent, and unique up to the
/// (lexicographic) monomial order.
pub fn minimal_representation(p: &Polynomial) -> Polynomial {
    minimal_representation_with_certificates(p).0
}

/// Minimal representation together with the per-kept-monomial witnesses.
pub fn minimal_representation_with_certificates(
    p: &Polynomial,
) -> (Polynomial, Vec<EssentialityCertificate>) {
    let certs = essentiality_certificates(p);
    let kept: Vec<Monomial> = certs
        .iter()
        .filter(|c| c.essential)
        .map(|c| p.monomials()[c.monomial_index].clone())
        .collect();
    debug_assert!(!kept.is_empty(), "at least one monomial is essential");
    let canon = Polynomial::from_monomials(p.n_vars(), kept).expect("nonempty essential set");
    let witnesses = certs.into_iter().filter(|c| c.essential).collect();
    (canon, witnesses)
}

/// Functional equivalence of polynomial expressions, decided by comparing
/// canonical forms; inequivalence comes with an explicit separating point.
pub fn poly_equiv(p: &Polynomial, q: &Polynomial) -> Result<Equivalence, CanonError> {
    if p.n_vars() != q.n_vars() {
        return Err(CanonError::Poly(PolyError::DimensionMismatch {
            left: p.n_vars(),
            right: q.n_vars(),
        }));
    }
    if p == q {
        // identical dedup-normalized expressions
        return Ok(Equivalence::Equivalent);
    }
    let (cp, wp) = minimal_representation_with_certificates(p);
    let (cq, wq) = minimal_representation_with_certificates(q);
    if cp == cq {
        return Ok(Equivalence::Equivalent);
    }

    // Some essential monomial of one side is missing from the other; in a
    // neighborhood of its witness the functions cannot agree everywhere.
    let find_odd = |a: &Polynomial, b: &Polynomial, wits: &[EssentialityCertificate]| {
        a.monomials()
            .iter()
            .zip(wits)
            .find(|(m, _)| !b.monomials().contains(m))
            .map(|(_, c)| c.witness.clone().expect("kept monomials carry witnesses"))
    };
    let base = find_odd(&cp, &cq, &wp)
        .or_else(|| find_odd(&cq, &cp, &wq))
        .expect("distinct canonical forms differ in some monomial");

    let n = p.n_vars();
    let mut delta = Rational::one();
    let mut guard = 0usize;
    loop {
        let x: Vec<Rational> = if guard == 0 {
            base.clone()
        } else {
            let mut step = Rational::one();
            (0..n)
                .map(|d| {
                    step *= &delta;
                    &base[d] + &step
                })
                .collect()
        };
        let pv = p.value_at(&x).expect("dimensions already checked");
        let qv = q.value_at(&x).expect("dimensions already checked");
        if pv != qv {
            return Ok(Equivalence::Distinct { witness: x });
        }
        if guard > 0 {
            delta /= crate::scalar::rat(2);
        }
        guard += 1;
        assert!(
            guard < 10_000,
            "perturbation search must terminate: the agreement set is a null set near the witness"
        );
    }
}

/// Functional equivalence of quotients, via tropical cross-multiplication
/// `num_r ⊙ den_s ∼ num_s ⊙ den_r`.
pub fn rational_equiv(r: &RationalFn, s: &RationalFn) -> Result<Equivalence, CanonError> {
    let left = r.num().mul(s.den())?;
    let right = s.num().mul(r.den())?;
    poly_equiv(&left, &right)
}

/// Convenience: equivalence of a quotient against a plain polynomial.
pub fn rational_equiv_poly(r: &RationalFn, p: &Polynomial) -> Result<Equivalence, CanonError> {
    rational_equiv(r, &RationalFn::from_poly(p.clone()))
}
