//! A small expression language over `min`, `max`, `+` and unary `-`, with
//! rational constants and variables, plus normalization of any expression
//! to a single tropical quotient `p ⊙ q⁻¹`.
//!
//! Grammar (UTF-8 text):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | primary
//! primary := rational | variable | '(' expr ')'
//!          | ('min' | 'max') '(' expr (',' expr)* ')'
//! rational := integer ('/' integer)?
//! variable := 'x' digits            (flat mode,  x1 … xN)
//!           | 'x[' i ',' j ']'      (block mode, j ∈ {1, 2})
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::poly::{Polynomial, RationalFn};
use crate::scalar::{Int, Rational};

/// Declares the variable alphabet an expression may reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarSpec {
    /// `x1 … xN`, mapped to indices `0 … N−1`.
    Flat(usize),
    /// `x[i,j]` with `1 ≤ i ≤ n`, `j ∈ {1,2}`, mapped to `2(i−1) + (j−1)`.
    Blocks(usize),
}

impl VarSpec {
    pub fn n_vars(&self) -> usize {
        match self {
            VarSpec::Flat(n) => *n,
            VarSpec::Blocks(n) => 2 * n,
        }
    }
}

/// Abstract syntax tree for min/max/plus expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Const(Rational),
    Var(usize),
    Add(Vec<ExprAst>),
    Neg(Box<ExprAst>),
    Min(Vec<ExprAst>),
    Max(Vec<ExprAst>),
}

/// Parse failure with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: VarSpec,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == b => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => self.err(format!(
                "expected '{}', found '{}'",
                b as char, found as char
            )),
            None => self.err(format!("expected '{}', found end of input", b as char)),
        }
    }

    fn integer(&mut self) -> Result<Int, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a digit");
        }
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match text.parse::<Int>() {
            Ok(n) => Ok(n),
            Err(_) => self.err("invalid integer literal"),
        }
    }

    fn usize_literal(&mut self) -> Result<usize, ParseError> {
        let n = self.integer()?;
        u64::try_from(&n)
            .ok()
            .and_then(|v| usize::try_from(v).ok())
            .ok_or(ParseError {
                position: self.pos,
                message: String::from("index literal too large"),
            })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let p = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let q = self.integer()?;
            if q.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    fn variable(&mut self) -> Result<usize, ParseError> {
        // caller consumed 'x'
        match (self.vars, self.peek()) {
            (VarSpec::Blocks(n), Some(b'[')) => {
                self.pos += 1;
                let i = self.usize_literal()?;
                self.expect(b',')?;
                let j = self.usize_literal()?;
                self.expect(b']')?;
                if i < 1 || i > n {
                    return self.err(format!("unknown variable: block index {i} not in 1..={n}"));
                }
                if !(1..=2).contains(&j) {
                    return self.err(format!("unknown variable: column index {j} not in 1..=2"));
                }
                Ok(2 * (i - 1) + (j - 1))
            }
            (VarSpec::Blocks(_), _) => {
                self.err("block mode requires variables of the form x[i,j]")
            }
            (VarSpec::Flat(n), _) => {
                let k = self.usize_literal()?;
                if k < 1 || k > n {
                    return self.err(format!("unknown variable x{k}: expected x1..x{n}"));
                }
                Ok(k - 1)
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.len();
        if end <= self.bytes.len() && &self.bytes[self.pos..end] == word.as_bytes() {
            // must not be followed by an identifier character
            let next = self.bytes.get(end).copied();
            if !matches!(next, Some(c) if c.is_ascii_alphanumeric()) {
                self.pos = end;
                return true;
            }
        }
        false
    }

    fn arg_list(&mut self) -> Result<Vec<ExprAst>, ParseError> {
        self.expect(b'(')?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(args)
    }

    fn primary(&mut self) -> Result<ExprAst, ParseError> {
        if self.keyword("min") {
            return Ok(ExprAst::Min(self.arg_list()?));
        }
        if self.keyword("max") {
            return Ok(ExprAst::Max(self.arg_list()?));
        }
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(ExprAst::Var(self.variable()?))
            }
            Some(c) if c.is_ascii_digit() => Ok(ExprAst::Const(self.rational()?)),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            Ok(ExprAst::Neg(Box::new(self.term()?)))
        } else {
            self.primary()
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut parts = vec![self.term()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    parts.push(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    parts.push(ExprAst::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        if parts.len() == 1 {
            Ok(parts.pop().expect("one element"))
        } else {
            Ok(ExprAst::Add(parts))
        }
    }
}

/// Parses an expression against the declared variable alphabet.
pub fn parse_expr(text: &str, vars: VarSpec) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        vars,
    };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(ast)
}

impl ExprAst {
    /// Direct classical evaluation at a finite rational point. This is the
    /// reference semantics the tropical normalization must reproduce.
    pub fn value_at(&self, point: &[Rational]) -> Rational {
        match self {
            ExprAst::Const(c) => c.clone(),
            ExprAst::Var(i) => point[*i].clone(),
            ExprAst::Add(parts) => parts.iter().map(|p| p.value_at(point)).sum(),
            ExprAst::Neg(inner) => -inner.value_at(point),
            ExprAst::Min(parts) => parts
                .iter()
                .map(|p| p.value_at(point))
                .min()
                .expect("min of at least one argument"),
            ExprAst::Max(parts) => parts
                .iter()
                .map(|p| p.value_at(point))
                .max()
                .expect("max of at least one argument"),
        }
    }

    /// Normalizes to a quotient `p ⊙ q⁻¹` of dedup-normalized polynomial
    /// expressions, functionally equal to the expression on all finite
    /// points. This is the tropical common-denominator recursion:
    ///
    /// * `Add` multiplies componentwise,
    /// * `Neg` swaps numerator and denominator,
    /// * `Min` combines by `(p₁⊙q₂ ⊕ p₂⊙q₁, q₁⊙q₂)`,
    /// * `Max` rewrites through `max(a,b) = −min(−a,−b)`.
    pub fn to_rational_fn(&self, n_vars: usize) -> RationalFn {
        match self {
            ExprAst::Const(c) => {
                RationalFn::from_poly(Polynomial::constant(n_vars, c.clone()))
            }
            ExprAst::Var(i) => RationalFn::from_poly(
                Polynomial::var(n_vars, *i).expect("variable index checked at parse time"),
            ),
            ExprAst::Add(parts) => {
                let mut acc = RationalFn::from_poly(Polynomial::one(n_vars));
                for part in parts {
                    acc = acc
                        .mul(&part.to_rational_fn(n_vars))
                        .expect("arity fixed by construction");
                }
                acc
            }
            ExprAst::Neg(inner) => inner.to_rational_fn(n_vars).inv(),
            ExprAst::Min(parts) => {
                let mut it = parts.iter();
                let mut acc = it
                    .next()
                    .expect("min of at least one argument")
                    .to_rational_fn(n_vars);
                for part in it {
                    acc = acc
                        .add(&part.to_rational_fn(n_vars))
                        .expect("arity fixed by construction");
                }
                acc
            }
            ExprAst::Max(parts) => {
                // max(a, …) = −min(−a, …)
                let mut it = parts.iter();
                let mut acc = it
                    .next()
                    .expect("max of at least one argument")
                    .to_rational_fn(n_vars)
                    .inv();
                for part in it {
                    acc = acc
                        .add(&part.to_rational_fn(n_vars).inv())
                        .expect("arity fixed by construction");
                }
                acc.inv()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn parses_min_of_doubles() {
        let ast = parse_expr("min(x1+x1, x2+x2)", VarSpec::Flat(2)).unwrap();
        assert_eq!(
            ast,
            ExprAst::Min(vec![
                ExprAst::Add(vec![ExprAst::Var(0), ExprAst::Var(0)]),
                ExprAst::Add(vec![ExprAst::Var(1), ExprAst::Var(1)]),
            ])
        );
    }

    #[test]
    fn parses_negated_min() {
        let ast = parse_expr("-min(x2+x1, x1)", VarSpec::Flat(2)).unwrap();
        match ast {
            ExprAst::Neg(inner) => match *inner {
                ExprAst::Min(args) => assert_eq!(args.len(), 2),
                other => panic!("expected min, got {other:?}"),
            },
            other => panic!("expected negation, got {other:?}"),
        }
    }

    #[test]
    fn parses_block_variables_and_rationals() {
        let ast = parse_expr("3/2 + x[1,2]", VarSpec::Blocks(2)).unwrap();
        assert_eq!(
            ast,
            ExprAst::Add(vec![ExprAst::Const(ratio(3, 2)), ExprAst::Var(1)])
        );
    }

    #[test]
    fn rejects_unknown_variables() {
        let err = parse_expr("x3", VarSpec::Flat(2)).unwrap_err();
        assert!(err.message.contains("unknown variable"));
        let err = parse_expr("x[3,1]", VarSpec::Blocks(2)).unwrap_err();
        assert!(err.message.contains("unknown variable"));
    }

    #[test]
    fn reports_syntax_error_position() {
        let err = parse_expr("min(x1,", VarSpec::Flat(2)).unwrap_err();
        assert_eq!(err.position, 7);
    }

    #[test]
    fn normalization_of_constant() {
        let r = parse_expr("5", VarSpec::Flat(1))
            .unwrap()
            .to_rational_fn(1);
        assert_eq!(r.num(), &Polynomial::constant(1, rat(5)));
        assert_eq!(r.den(), &Polynomial::one(1));
    }

    #[test]
    fn normalization_of_max() {
        // max(x1, x2) = (x1 ⊙ x2) ⊙ (x1 ⊕ x2)⁻¹
        let r = parse_expr("max(x1, x2)", VarSpec::Flat(2))
            .unwrap()
            .to_rational_fn(2);
        for (a, b) in [(0i64, 0), (1, 5), (5, 1), (-3, 2)] {
            let point = [rat(a), rat(b)];
            assert_eq!(r.value_at(&point).unwrap(), rat(a.max(b)));
        }
    }

    #[test]
    fn normalization_matches_ast_evaluation() {
        let texts = [
            "min(x1+x1, x2+x2, x1+x2)",
            "max(min(x1, -x2), x2 + 3/2)",
            "-min(x2+x1, x1) + max(x1, x2, 1/3)",
            "x1 - x2 + min(2, x1)",
        ];
        let points = [
            [rat(0), rat(0)],
            [rat(1), rat(-1)],
            [ratio(1, 2), ratio(-7, 3)],
            [rat(10), rat(3)],
        ];
        for text in texts {
            let ast = parse_expr(text, VarSpec::Flat(2)).unwrap();
            let r = ast.to_rational_fn(2);
            for p in &points {
                assert_eq!(r.value_at(p).unwrap(), ast.value_at(p), "{text} at {p:?}");
            }
        }
    }
}
