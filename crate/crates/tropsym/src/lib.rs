//! Exact computer algebra for the min-plus (tropical) semiring.
//!
//! Values live in `(Q ∪ {∞}, ⊕, ⊙)` where `a ⊕ b = min(a, b)` and
//! `a ⊙ b = a + b`. All arithmetic is exact (arbitrary-precision
//! rationals), so functional equivalence of piecewise-linear tropical
//! expressions is decidable, not approximated.
//!
//! The crate provides:
//!
//! * [`scalar`] — the scalar semiring with `∞` as the additive identity;
//! * [`poly`] — Laurent tropical monomials, polynomial expressions and
//!   quotients of polynomial expressions;
//! * [`expr`] — a small `min`/`max`/`+` expression language with a parser
//!   and normalization to a single quotient `p ⊙ q⁻¹`;
//! * [`simplex`] — an exact rational simplex solver used to decide strict
//!   feasibility of linear inequality systems;
//! * [`canon`] — minimal representations (essential monomials) and
//!   functional-equivalence tests built on the simplex;
//! * [`sym`] — the symmetrization operator, elementary symmetric tropical
//!   polynomials and the decomposition of symmetric polynomials and
//!   rational functions into `e_1, …, e_n, e_n⁻¹`;
//! * [`blocksym`] — the analogous theory for variables grouped in pairs
//!   (row-permutation invariance), orbit enumeration, elementary
//!   2-symmetric polynomials, decomposition of 2-symmetric rational
//!   functions and persistence-barcode feature maps.
//!
//! The library is `no_std` (it requires `alloc`); IO, JSON formats and the
//! command line live in the companion `tropsym-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod blocksym;
pub mod canon;
pub mod expr;
pub(crate) mod perm;
pub mod poly;
pub mod scalar;
pub mod simplex;
pub mod sym;

pub use canon::{Equivalence, EssentialityCertificate};
pub use expr::{ExprAst, VarSpec};
pub use poly::{Monomial, Polynomial, RationalFn};
pub use scalar::{Int, Rational, TropScalar};
pub use sym::GeneratorExpr;

#[cfg(test)]
mod thread_safety {
    // Every value is immutable after construction; all operations are
    // pure functions, so sharing across threads is unrestricted.
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::TropScalar>();
        assert_send_sync::<crate::Polynomial>();
        assert_send_sync::<crate::RationalFn>();
        assert_send_sync::<crate::GeneratorExpr>();
        assert_send_sync::<crate::blocksym::Gen2Expr>();
        assert_send_sync::<crate::blocksym::OrbitRep>();
        assert_send_sync::<crate::blocksym::Barcode>();
        assert_send_sync::<crate::EssentialityCertificate>();
    }
}
