//! Semiring and evaluation laws for scalars, polynomials and the
//! expression normalizer.

mod common;

use common::{poly, rat, random_polynomial, Rng};
use proptest::prelude::*;
use tropsym::expr::{ExprAst, VarSpec};
use tropsym::poly::{Monomial, Polynomial};
use tropsym::scalar::{Int, Rational, TropScalar};

fn trop_scalar() -> impl Strategy<Value = TropScalar> {
    prop_oneof![
        9 => (any::<i32>(), 1u32..200).prop_map(|(n, d)| {
            TropScalar::finite(Rational::new(Int::from(n), Int::from(d)))
        }),
        1 => Just(TropScalar::Infinity),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn addition_is_commutative_and_idempotent(a in trop_scalar(), b in trop_scalar()) {
        prop_assert_eq!(a.trop_add(&b), b.trop_add(&a));
        prop_assert_eq!(a.trop_add(&a), a);
    }

    #[test]
    fn multiplication_is_commutative(a in trop_scalar(), b in trop_scalar()) {
        prop_assert_eq!(a.trop_mul(&b), b.trop_mul(&a));
    }

    #[test]
    fn operations_are_associative(a in trop_scalar(), b in trop_scalar(), c in trop_scalar()) {
        prop_assert_eq!(
            a.trop_add(&b).trop_add(&c),
            a.trop_add(&b.trop_add(&c))
        );
        prop_assert_eq!(
            a.trop_mul(&b).trop_mul(&c),
            a.trop_mul(&b.trop_mul(&c))
        );
    }

    #[test]
    fn multiplication_distributes(a in trop_scalar(), b in trop_scalar(), c in trop_scalar()) {
        prop_assert_eq!(
            a.trop_mul(&b.trop_add(&c)),
            a.trop_mul(&b).trop_add(&a.trop_mul(&c))
        );
    }

    #[test]
    fn identities_hold(a in trop_scalar()) {
        prop_assert_eq!(TropScalar::zero().trop_add(&a), a.clone());
        prop_assert_eq!(TropScalar::one().trop_mul(&a), a.clone());
        prop_assert_eq!(TropScalar::zero().trop_mul(&a), TropScalar::zero());
    }

    #[test]
    fn frobenius_identity_scalar(
        a in (any::<i32>(), 1u32..100),
        b in (any::<i32>(), 1u32..100),
        n in 1i64..=10,
    ) {
        let a = TropScalar::finite(Rational::new(Int::from(a.0), Int::from(a.1)));
        let b = TropScalar::finite(Rational::new(Int::from(b.0), Int::from(b.1)));
        let lhs = a.trop_add(&b).trop_pow(n).unwrap();
        let rhs = a.trop_pow(n).unwrap().trop_add(&b.trop_pow(n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn product_evaluation_is_multiplicative() {
    let mut rng = Rng::new(11);
    for _ in 0..200 {
        let n = rng.int_in(1, 4) as usize;
        let p = random_polynomial(&mut rng, n, 4, -3, 3);
        let q = random_polynomial(&mut rng, n, 4, -3, 3);
        let x = rng.point(n, 8, 5);
        let lhs = p.mul(&q).unwrap().value_at(&x).unwrap();
        let rhs = p.value_at(&x).unwrap() + q.value_at(&x).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn dedup_preserves_evaluation() {
    let mut rng = Rng::new(12);
    for _ in 0..200 {
        let n = rng.int_in(1, 3) as usize;
        // deliberately collide exponent vectors
        let mut monos: Vec<Monomial> = Vec::new();
        let count = rng.int_in(1, 6);
        for _ in 0..count {
            let exps: Vec<Int> = (0..n).map(|_| Int::from(rng.int_in(0, 1))).collect();
            monos.push(Monomial::new(rat(rng.int_in(-4, 4)), exps));
        }
        let p = Polynomial::from_monomials(n, monos.clone()).unwrap();
        for _ in 0..5 {
            let x = rng.point(n, 6, 4);
            let raw = monos.iter().map(|m| m.value_at(&x)).min().unwrap();
            assert_eq!(p.value_at(&x).unwrap(), raw);
        }
    }
}

/// Random expression trees for the normalizer oracle.
fn random_ast(rng: &mut Rng, n_vars: usize, depth: usize) -> ExprAst {
    if depth == 0 {
        return if rng.below(2) == 0 {
            ExprAst::Const(rng.rational(4, 3))
        } else {
            ExprAst::Var(rng.below(n_vars as u64) as usize)
        };
    }
    match rng.below(4) {
        0 => {
            let parts = (0..rng.int_in(2, 3))
                .map(|_| random_ast(rng, n_vars, depth - 1))
                .collect();
            ExprAst::Add(parts)
        }
        1 => ExprAst::Neg(Box::new(random_ast(rng, n_vars, depth - 1))),
        2 => {
            let parts = (0..rng.int_in(1, 3))
                .map(|_| random_ast(rng, n_vars, depth - 1))
                .collect();
            ExprAst::Min(parts)
        }
        _ => {
            let parts = (0..rng.int_in(1, 3))
                .map(|_| random_ast(rng, n_vars, depth - 1))
                .collect();
            ExprAst::Max(parts)
        }
    }
}

#[test]
fn normalization_agrees_with_ast_evaluation() {
    let mut rng = Rng::new(13);
    let mut points_checked = 0usize;
    for _ in 0..60 {
        let n = rng.int_in(1, 3) as usize;
        let ast = random_ast(&mut rng, n, 3);
        let r = ast.to_rational_fn(n);
        for _ in 0..4 {
            let x = rng.point(n, 6, 4);
            assert_eq!(r.value_at(&x).unwrap(), ast.value_at(&x), "{ast:?}");
            points_checked += 1;
        }
    }
    assert!(points_checked >= 100);
}

#[test]
fn normalizer_handles_the_grammar_examples() {
    // the three grammar shapes from the interface definition
    let flat = tropsym::expr::parse_expr("min(x1+x1, x2+x2)", VarSpec::Flat(2)).unwrap();
    assert_eq!(
        flat.to_rational_fn(2).num(),
        &poly(2, &[(0, &[2, 0]), (0, &[0, 2])])
    );
    let neg = tropsym::expr::parse_expr("-min(x2+x1, x1)", VarSpec::Flat(2)).unwrap();
    let r = neg.to_rational_fn(2);
    assert_eq!(r.den(), &poly(2, &[(0, &[1, 0]), (0, &[1, 1])]));
    let block = tropsym::expr::parse_expr("3/2 + x[1,2]", VarSpec::Blocks(2)).unwrap();
    let x = [rat(0), rat(4), rat(0), rat(0)];
    assert_eq!(
        block.to_rational_fn(4).value_at(&x).unwrap(),
        Rational::new(Int::from(11), Int::from(2))
    );
}
