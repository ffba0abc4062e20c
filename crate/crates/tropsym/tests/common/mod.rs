//! Shared helpers for the integration suites: a small deterministic RNG
//! and generators for rationals, monomials and polynomials.

#![allow(dead_code)]

use tropsym::poly::{Monomial, Polynomial};
use tropsym::scalar::{Int, Rational};

/// SplitMix64: tiny, seedable, deterministic across platforms.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small rational with numerator in `-num..=num`, denominator in `1..=den`.
    pub fn rational(&mut self, num: i64, den: i64) -> Rational {
        Rational::new(
            Int::from(self.int_in(-num, num)),
            Int::from(self.int_in(1, den)),
        )
    }

    pub fn point(&mut self, n: usize, num: i64, den: i64) -> Vec<Rational> {
        (0..n).map(|_| self.rational(num, den)).collect()
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn mono(c: i64, exps: &[i64]) -> Monomial {
    Monomial::new(rat(c), exps.iter().map(|&e| Int::from(e)).collect())
}

pub fn poly(n: usize, monos: &[(i64, &[i64])]) -> Polynomial {
    Polynomial::from_monomials(n, monos.iter().map(|(c, e)| mono(*c, e))).unwrap()
}

/// Random monomial with integer exponents in `lo..=hi` and a small
/// integer coefficient.
pub fn random_monomial(rng: &mut Rng, n: usize, lo: i64, hi: i64) -> Monomial {
    let coeff = rat(rng.int_in(-3, 3));
    let exps = (0..n).map(|_| Int::from(rng.int_in(lo, hi))).collect();
    Monomial::new(coeff, exps)
}

/// Random polynomial with `1..=max_monomials` monomials.
pub fn random_polynomial(
    rng: &mut Rng,
    n: usize,
    max_monomials: usize,
    lo: i64,
    hi: i64,
) -> Polynomial {
    let count = 1 + rng.below(max_monomials as u64) as usize;
    Polynomial::from_monomials(n, (0..count).map(|_| random_monomial(rng, n, lo, hi)))
        .expect("nonempty")
}

/// Random symmetric polynomial: a tropical sum of symmetrized monomials.
pub fn random_symmetric(rng: &mut Rng, n: usize, orbits: usize, lo: i64, hi: i64) -> Polynomial {
    let mut acc: Option<Polynomial> = None;
    let count = 1 + rng.below(orbits as u64) as usize;
    for _ in 0..count {
        let m = random_monomial(rng, n, lo, hi);
        let sym = tropsym::sym::symmetrize(&Polynomial::monomial(n, m).unwrap()).unwrap();
        acc = Some(match acc {
            None => sym,
            Some(prev) => prev.add(&sym).unwrap(),
        });
    }
    acc.expect("at least one orbit")
}
