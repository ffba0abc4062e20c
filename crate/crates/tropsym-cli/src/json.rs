//! JSON encodings of the library types.
//!
//! Rationals serialize as strings in lowest terms (`"3/2"`, `"-7"`);
//! exponents as JSON integers (strings also accepted on input). Maps use
//! sorted keys, so output bytes are deterministic.

use serde_json::{json, Map, Value};
use tropsym::blocksym::{Barcode, Gen2Expr, NonGenerationReport, OrbitRep};
use tropsym::poly::{Monomial, Polynomial, RationalFn};
use tropsym::scalar::{fmt_rational, parse_rational, Int, Rational};
use tropsym::sym::GeneratorExpr;

pub fn rational_value(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn rational_from(v: &Value, what: &str) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("bad rational in {what}: {s}")),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(Int::from(i)))
            } else {
                Err(format!("non-integer number in {what}: {n}"))
            }
        }
        other => Err(format!("expected rational in {what}, found {other}")),
    }
}

fn int_value(e: &Int) -> Value {
    match i64::try_from(e) {
        Ok(v) => json!(v),
        Err(_) => Value::String(e.to_string()),
    }
}

fn int_from(v: &Value, what: &str) -> Result<Int, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| format!("non-integer exponent in {what}")),
        Value::String(s) => s
            .parse::<Int>()
            .map_err(|_| format!("bad integer in {what}: {s}")),
        other => Err(format!("expected integer in {what}, found {other}")),
    }
}

pub fn poly_value(p: &Polynomial) -> Value {
    let monomials: Vec<Value> = p
        .monomials()
        .iter()
        .map(|m| {
            json!({
                "coeff": rational_value(&m.coeff),
                "exps": m.exps.iter().map(int_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "nvars": p.n_vars(), "monomials": monomials })
}

pub fn poly_from(v: &Value) -> Result<Polynomial, String> {
    let n = v
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or("polynomial JSON needs a positive \"nvars\"")? as usize;
    let monomials = v
        .get("monomials")
        .and_then(Value::as_array)
        .ok_or("polynomial JSON needs a \"monomials\" array")?;
    let mut out = Vec::with_capacity(monomials.len());
    for m in monomials {
        let coeff = rational_from(m.get("coeff").unwrap_or(&Value::Null), "coeff")?;
        let exps = m
            .get("exps")
            .and_then(Value::as_array)
            .ok_or("monomial needs an \"exps\" array")?
            .iter()
            .map(|e| int_from(e, "exps"))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Monomial::new(coeff, exps));
    }
    Polynomial::from_monomials(n, out).map_err(|e| e.to_string())
}

pub fn rationalfn_value(r: &RationalFn) -> Value {
    json!({ "num": poly_value(r.num()), "den": poly_value(r.den()) })
}

pub fn rationalfn_from(v: &Value) -> Result<RationalFn, String> {
    let num = poly_from(v.get("num").ok_or("rational JSON needs \"num\"")?)?;
    let den = poly_from(v.get("den").ok_or("rational JSON needs \"den\"")?)?;
    RationalFn::new(num, den).map_err(|e| e.to_string())
}

pub fn generator_value(g: &GeneratorExpr) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .iter()
        .map(|t| {
            json!({
                "coeff": rational_value(&t.coeff),
                "e_exps": t.e_exps.iter().map(int_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "n": g.n_vars(), "terms": terms })
}

pub fn gen2_value(g: &Gen2Expr) -> Value {
    match g {
        Gen2Expr::Const(c) => json!({ "const": fmt_rational(c) }),
        Gen2Expr::Gen(o) => json!({ "gen": o.label() }),
        Gen2Expr::Add(parts) => {
            json!({ "op": "add", "args": parts.iter().map(gen2_value).collect::<Vec<_>>() })
        }
        Gen2Expr::Mul(parts) => {
            json!({ "op": "mul", "args": parts.iter().map(gen2_value).collect::<Vec<_>>() })
        }
        Gen2Expr::Inv(inner) => json!({ "op": "inv", "arg": gen2_value(inner) }),
        Gen2Expr::Pow(inner, k) => json!({ "op": "pow", "arg": gen2_value(inner), "exp": k }),
    }
}

pub fn barcode_from(v: &Value) -> Result<Barcode, String> {
    let intervals = v
        .get("intervals")
        .and_then(Value::as_array)
        .ok_or("barcode JSON needs an \"intervals\" array")?
        .iter()
        .map(|i| {
            Ok((
                rational_from(i.get("birth").unwrap_or(&Value::Null), "birth")?,
                rational_from(i.get("death").unwrap_or(&Value::Null), "death")?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(Barcode::new(intervals))
}

pub fn features_value(n: usize, features: &[(OrbitRep, Rational)]) -> Value {
    let mut map = Map::new();
    for (orbit, value) in features {
        map.insert(orbit.label(), rational_value(value));
    }
    json!({ "n": n, "features": Value::Object(map) })
}

pub fn witness_value(report: &NonGenerationReport) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "a": e.a,
                "point": e.point.iter().map(rational_value).collect::<Vec<_>>(),
                "margin": rational_value(&e.margin),
            })
        })
        .collect();
    let certificates: Vec<Value> = report
        .target_certificates
        .iter()
        .map(|c| {
            json!({
                "monomial": c.monomial_index,
                "essential": c.essential,
                "witness": c.witness.as_ref().map(|w| {
                    w.iter().map(rational_value).collect::<Vec<_>>()
                }),
            })
        })
        .collect();
    json!({ "d": report.d, "entries": entries, "target": certificates })
}
