//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its elapsed time and asserting the stated budget.

mod common;

use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use common::{poly, rat, random_polynomial, random_symmetric, Rng};
use tropsym::blocksym::{
    self, Barcode, BlockMonomial, OrbitRep,
};
use tropsym::canon::{self, Equivalence};
use tropsym::expr::{parse_expr, VarSpec};
use tropsym::poly::{Monomial, Polynomial, RationalFn};
use tropsym::scalar::{Int, Rational, TropScalar};
use tropsym::sym;

// The criteria carry wall-clock budgets, so they must not contend with
// each other for CPU when the harness runs tests in parallel.
static SERIAL: Mutex<()> = Mutex::new(());

fn start(name: &str) -> (MutexGuard<'static, ()>, Instant) {
    let guard = SERIAL.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    println!("{name}: running");
    (guard, Instant::now())
}

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("{name}: PASS ({elapsed:.2?})");
    assert!(
        elapsed < budget,
        "{name} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_nested_expression_normalization() {
    let (_guard, start) = start("criterion 01 (nested normalization)");
    let ast = parse_expr("min(-x1 + x2, -x2, -min(x2 + x1, x1))", VarSpec::Flat(2)).unwrap();
    let r = ast.to_rational_fn(2);
    // Common-denominator form of the same function:
    // (x2^3 ⊕ x1x2 ⊕ x1 ⊕ x2) ⊙ (x2^2 x1 ⊕ x1 x2)^-1.
    let expected = RationalFn::new(
        poly(2, &[(0, &[0, 3]), (0, &[1, 1]), (0, &[1, 0]), (0, &[0, 1])]),
        poly(2, &[(0, &[1, 2]), (0, &[1, 1])]),
    )
    .unwrap();
    assert!(canon::rational_equiv(&r, &expected).unwrap().is_equivalent());

    // The x1⊙x2 numerator term is load-bearing: dropping it changes the
    // function (e.g. at (−3, −1)), so the quotient without it must be
    // rejected.
    let dropped = RationalFn::new(
        poly(2, &[(0, &[0, 3]), (0, &[1, 0]), (0, &[0, 1])]),
        poly(2, &[(0, &[1, 2]), (0, &[1, 1])]),
    )
    .unwrap();
    match canon::rational_equiv(&r, &dropped).unwrap() {
        Equivalence::Distinct { witness } => {
            assert_ne!(
                r.value_at(&witness).unwrap(),
                dropped.value_at(&witness).unwrap()
            );
        }
        Equivalence::Equivalent => panic!("dropping x1⊙x2 must change the function"),
    }
    let probe = [rat(-3), rat(-1)];
    assert_eq!(r.value_at(&probe).unwrap(), ast.value_at(&probe));
    assert_eq!(r.value_at(&probe).unwrap(), rat(1));
    assert_eq!(dropped.value_at(&probe).unwrap(), rat(2));

    finish("criterion 01 (nested normalization)", start, Duration::from_secs(1));
}

#[test]
fn criterion_02_redundant_mixed_term() {
    let (_guard, start) = start("criterion 02 (mixed term redundancy)");
    let two_squares = poly(2, &[(0, &[2, 0]), (0, &[0, 2])]);
    let with_mixed = poly(2, &[(0, &[2, 0]), (0, &[0, 2]), (0, &[1, 1])]);
    assert!(canon::poly_equiv(&two_squares, &with_mixed)
        .unwrap()
        .is_equivalent());
    let j = with_mixed
        .monomials()
        .iter()
        .position(|m| m.exps == vec![Int::from(1), Int::from(1)])
        .unwrap();
    assert!(!canon::is_essential(&with_mixed, j).unwrap().essential);
    finish("criterion 02 (mixed term redundancy)", start, Duration::from_secs(1));
}

#[test]
fn criterion_03_frobenius_identity() {
    let (_guard, start) = start("criterion 03 (Frobenius suite)");
    let mut rng = Rng::new(0x03);

    for _ in 0..1000 {
        let a = TropScalar::finite(rng.rational(50, 12));
        let b = TropScalar::finite(rng.rational(50, 12));
        let n = rng.int_in(1, 10);
        let lhs = a.trop_add(&b).trop_pow(n).unwrap();
        let rhs = a.trop_pow(n).unwrap().trop_add(&b.trop_pow(n).unwrap());
        assert_eq!(lhs, rhs);
    }

    for case in 0..100 {
        let n_vars = rng.int_in(1, 3) as usize;
        let p = random_polynomial(&mut rng, n_vars, 3, 0, 2);
        let q = random_polynomial(&mut rng, n_vars, 3, 0, 2);
        let n = rng.int_in(1, 3) as usize;
        let sum_pow = p.add(&q).unwrap().pow(n).unwrap();
        let pow_sum = p.pow(n).unwrap().add(&q.pow(n).unwrap()).unwrap();
        assert!(
            canon::poly_equiv(&sum_pow, &pow_sum).unwrap().is_equivalent(),
            "case {case}: (p ⊕ q)^{n} vs p^{n} ⊕ q^{n}"
        );
    }
    finish("criterion 03 (Frobenius suite)", start, Duration::from_secs(10));
}

#[test]
fn criterion_04_symmetric_decomposition_round_trip() {
    let (_guard, start) = start("criterion 04 (decomposition round trip)");
    let mut rng = Rng::new(0x04);
    for case in 0..200 {
        let n = rng.int_in(1, 4) as usize;
        let p = random_symmetric(&mut rng, n, 6, -4, 4);
        let g = sym::decompose_symmetric(&p).unwrap();
        let expanded = g.expand();
        assert!(
            canon::poly_equiv(&expanded, &p).unwrap().is_equivalent(),
            "case {case}: round trip failed for {p:?}"
        );
    }
    finish("criterion 04 (decomposition round trip)", start, Duration::from_secs(60));
}

#[test]
fn criterion_05_minimality_preservation() {
    let (_guard, start) = start("criterion 05 (minimality preservation)");
    let mut rng = Rng::new(0x05);
    for case in 0..50 {
        let n = rng.int_in(1, 4) as usize;
        let p = canon::minimal_representation(&random_symmetric(&mut rng, n, 6, -4, 4));
        let g = sym::decompose_symmetric(&p).unwrap();
        if g.terms().len() < 2 {
            // Deleting the only term leaves the empty sum, which is not a
            // tropical polynomial at all; minimality is trivial.
            continue;
        }
        for skip in 0..g.terms().len() {
            let rest: Vec<_> = g
                .terms()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, t)| t.clone())
                .collect();
            let smaller = tropsym::sym::GeneratorExpr::new(g.n_vars(), rest).unwrap();
            match canon::poly_equiv(&smaller.expand(), &p).unwrap() {
                Equivalence::Distinct { witness } => {
                    assert_ne!(
                        smaller.expand().value_at(&witness).unwrap(),
                        p.value_at(&witness).unwrap(),
                        "case {case}: witness must separate"
                    );
                }
                Equivalence::Equivalent => {
                    panic!("case {case}: deleting term {skip} left the function unchanged")
                }
            }
        }
    }
    finish("criterion 05 (minimality preservation)", start, Duration::from_secs(60));
}

#[test]
fn criterion_06_orbit_separation() {
    let (_guard, start) = start("criterion 06 (orbit separation)");
    let mut rng = Rng::new(0x06);

    // flat orbits, n ≤ 5
    for case in 0..500 {
        let n = rng.int_in(1, 5) as usize;
        let x = rng.point(n, 6, 3);
        let y = if rng.below(2) == 0 {
            let mut y = x.clone();
            // random permutation (Fisher–Yates)
            for i in (1..n).rev() {
                let j = rng.below((i + 1) as u64) as usize;
                y.swap(i, j);
            }
            y
        } else {
            rng.point(n, 6, 3)
        };
        let same_orbit = {
            let mut a = x.clone();
            let mut b = y.clone();
            a.sort();
            b.sort();
            a == b
        };
        let fp_equal = sym::orbit_fingerprint(&x) == sym::orbit_fingerprint(&y);
        assert_eq!(fp_equal, same_orbit, "flat case {case}: {x:?} vs {y:?}");
    }

    // block orbits (barcodes), n ≤ 4
    for case in 0..500 {
        let n = rng.int_in(1, 4) as usize;
        let intervals: Vec<(Rational, Rational)> = (0..n)
            .map(|_| (rng.rational(4, 2), rng.rational(4, 2)))
            .collect();
        let other: Vec<(Rational, Rational)> = if rng.below(2) == 0 {
            let mut o = intervals.clone();
            for i in (1..n).rev() {
                let j = rng.below((i + 1) as u64) as usize;
                o.swap(i, j);
            }
            o
        } else {
            (0..n)
                .map(|_| (rng.rational(4, 2), rng.rational(4, 2)))
                .collect()
        };
        let same_orbit = {
            let mut a = intervals.clone();
            let mut b = other.clone();
            a.sort();
            b.sort();
            a == b
        };
        let f1 = blocksym::orbit_fingerprint2(&Barcode::new(intervals)).unwrap();
        let f2 = blocksym::orbit_fingerprint2(&Barcode::new(other)).unwrap();
        assert_eq!(f1 == f2, same_orbit, "block case {case}");
    }
    finish("criterion 06 (orbit separation)", start, Duration::from_secs(30));
}

#[test]
fn criterion_07_orbit_catalogue() {
    let (_guard, start) = start("criterion 07 (orbit catalogue)");
    let orbits = blocksym::enumerate_orbits(2).unwrap();
    assert_eq!(orbits.len(), 9);

    let displayed = [
        ("[(1,1)^2]", poly(4, &[(0, &[1, 1, 1, 1])])),
        (
            "[(1,0)(1,1)]",
            poly(4, &[(0, &[1, 0, 1, 1]), (0, &[1, 1, 1, 0])]),
        ),
        (
            "[(1,1)(0,1)]",
            poly(4, &[(0, &[1, 1, 0, 1]), (0, &[0, 1, 1, 1])]),
        ),
        ("[(1,0)]", poly(4, &[(0, &[1, 0, 0, 0]), (0, &[0, 0, 1, 0])])),
    ];
    for (label, expected) in displayed {
        let orbit = OrbitRep::parse_label(label, 2).unwrap();
        assert!(orbits.contains(&orbit), "{label} enumerated");
        let e = blocksym::elementary2(&orbit);
        assert_eq!(e, expected, "{label}");
        assert_eq!(e, canon::minimal_representation(&e), "{label} canonical");
    }
    finish("criterion 07 (orbit catalogue)", start, Duration::from_secs(1));
}

#[test]
fn criterion_08_block_decomposition_round_trip() {
    let (_guard, start) = start("criterion 08 (block round trip)");
    let mut checked = 0usize;
    let mut descent_edges = 0usize;
    for total in 0..=4i64 {
        for a in 0..=total {
            for b in 0..=total - a {
                for c in 0..=total - a - b {
                    let d = total - a - b - c;
                    let m = BlockMonomial::new(
                        Rational::from_integer(Int::from(0)),
                        vec![
                            (Int::from(a), Int::from(b)),
                            (Int::from(c), Int::from(d)),
                        ],
                    );
                    let (g, stats) =
                        blocksym::decompose2_symmetric_with_stats(&m, 3).unwrap();
                    let expanded = g.expand(2).unwrap();
                    let target = RationalFn::from_poly(m.symmetrize());
                    assert!(
                        canon::rational_equiv(&expanded, &target)
                            .unwrap()
                            .is_equivalent(),
                        "round trip failed for rows ({a},{b}),({c},{d})"
                    );
                    assert!(stats.calls >= 1);
                    descent_edges += stats.descent_checks;
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 70, "all entry-sum ≤ 4 matrices covered");
    assert!(descent_edges > 0, "recursion descended somewhere");
    println!("criterion 08: {checked} monomials, {descent_edges} strict descents verified");
    finish("criterion 08 (block round trip)", start, Duration::from_secs(120));
}

#[test]
fn criterion_09_order_axioms() {
    let (_guard, start) = start("criterion 09 (order axioms)");
    // m1 = x11 x12 x21, m2 = x11 x12²: equal degree, S(m2) < S(m1)
    let m1 = BlockMonomial::new(rat(0), vec![(Int::from(1), Int::from(1)), (Int::from(1), Int::from(0))]);
    let m2 = BlockMonomial::new(rat(0), vec![(Int::from(1), Int::from(2)), (Int::from(0), Int::from(0))]);
    assert_eq!(blocksym::compare_s(&m2, &m1), std::cmp::Ordering::Greater);

    let mut rng = Rng::new(0x09);
    for _ in 0..10_000 {
        let n = rng.int_in(1, 3) as usize;
        let make = |rng: &mut Rng| {
            BlockMonomial::new(
                rat(0),
                (0..n)
                    .map(|_| (Int::from(rng.int_in(0, 3)), Int::from(rng.int_in(0, 3))))
                    .collect(),
            )
        };
        let (a, b, c) = (make(&mut rng), make(&mut rng), make(&mut rng));
        // trichotomy: comparing both ways gives opposite results, and
        // equality happens exactly on equal exponent matrices
        let ab = blocksym::compare_s(&a, &b);
        assert_eq!(ab.reverse(), blocksym::compare_s(&b, &a));
        assert_eq!(ab == std::cmp::Ordering::Equal, a.rows == b.rows);
        // transitivity over the triple
        let bc = blocksym::compare_s(&b, &c);
        if ab == std::cmp::Ordering::Greater && bc == std::cmp::Ordering::Greater {
            assert_eq!(blocksym::compare_s(&a, &c), std::cmp::Ordering::Greater);
        }
        if ab == std::cmp::Ordering::Less && bc == std::cmp::Ordering::Less {
            assert_eq!(blocksym::compare_s(&a, &c), std::cmp::Ordering::Less);
        }
    }
    finish("criterion 09 (order axioms)", start, Duration::from_secs(10));
}

#[test]
fn criterion_10_non_generation_witness() {
    let (_guard, start) = start("criterion 10 (non-generation witness)");
    for d in [2i64, 3, 4] {
        let report = blocksym::non_generation_witness(d).unwrap();
        assert_eq!(report.entries.len(), d as usize);
        for entry in &report.entries {
            // recompute the displayed minimum directly from the point
            let x11 = &entry.point[0];
            let x12 = &entry.point[1];
            let x21 = &entry.point[2];
            let x22 = &entry.point[3];
            let branch1 = Rational::from_integer(Int::from(d - entry.a)) * (x11 - x21);
            let branch2 =
                Rational::from_integer(Int::from(entry.a)) * (x21 - x11) + (x22 - x12);
            let margin = branch1.min(branch2);
            assert!(margin > rat(0), "d={d}, a={}", entry.a);
            assert_eq!(margin, entry.margin);
        }
        // both monomials of x11^d x12 ⊕ x21^d x22 are essential
        assert_eq!(report.target_certificates.len(), 2);
        for cert in &report.target_certificates {
            assert!(cert.essential, "d={d}");
            let w = cert.witness.as_ref().unwrap();
            let target = Polynomial::from_monomials(
                4,
                [
                    Monomial::new(rat(0), vec![Int::from(d), Int::from(1), Int::from(0), Int::from(0)]),
                    Monomial::new(rat(0), vec![Int::from(0), Int::from(0), Int::from(d), Int::from(1)]),
                ],
            )
            .unwrap();
            let own = target.monomials()[cert.monomial_index].value_at(w);
            let other = target.monomials()[1 - cert.monomial_index].value_at(w);
            assert!(own < other);
        }
    }
    finish("criterion 10 (non-generation witness)", start, Duration::from_secs(5));
}
