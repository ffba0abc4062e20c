//! Command line interface for exact min-plus (tropical) polynomial
//! algebra: evaluation, canonical forms, equivalence, symmetrization,
//! decomposition into elementary generators, orbit fingerprints and
//! barcode features.
//!
//! Exit codes: 0 success, 1 domain error (structured JSON on stderr),
//! 2 parse/usage error.

mod json;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropsym::blocksym;
use tropsym::canon::{self, Equivalence};
use tropsym::expr::{parse_expr, VarSpec};
use tropsym::poly::{Polynomial, RationalFn};
use tropsym::scalar::{fmt_rational, parse_rational, Rational, TropScalar};
use tropsym::sym;

#[derive(Parser)]
#[command(name = "tropsym", version, about = "Exact min-plus (tropical) polynomial algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized subcommands; accepted for reproducibility of
    /// scripted runs (current commands are fully deterministic).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at a point (coordinates may be `inf`).
    Eval {
        /// Expression text; omit when --input is given.
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        /// Interpret variables as n blocks of two: x[i,1], x[i,2].
        #[arg(long)]
        block: bool,
        /// Comma-separated rational coordinates, e.g. "1,3/2,inf".
        #[arg(long)]
        point: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Canonicalize an expression into minimal numerator/denominator.
    Canon {
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        block: bool,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Decide functional equivalence of two expressions.
    Equiv {
        left: String,
        right: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        block: bool,
    },
    /// Symmetrize a tropical polynomial over all variable permutations.
    Sym {
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Decompose a symmetric polynomial (or rational function) into the
    /// elementary symmetric generators e1..en and en^-1.
    Decompose {
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Refuse inputs whose total degree exceeds this bound.
        #[arg(long, default_value_t = 10_000)]
        max_degree: i64,
    },
    /// Symmetrize a polynomial in n blocks of two over row permutations.
    Sym2 {
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Decompose a 2-symmetric rational function into the elementary
    /// 2-symmetric generators.
    Decompose2 {
        expr: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_degree: i64,
    },
    /// List (or count) the orbits of nonzero {0,1} exponent matrices.
    Orbits {
        #[arg(long)]
        n: usize,
        /// Print only the number of orbits.
        #[arg(long)]
        count: bool,
    },
    /// Elementary symmetric fingerprint (e1(x), …, en(x)) of a point.
    Fingerprint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: String,
    },
    /// Evaluate every elementary 2-symmetric polynomial at a barcode.
    BarcodeFeatures {
        /// Barcode JSON file: {"intervals": [{"birth": "0", "death": "3/2"}]}
        #[arg(long)]
        input: PathBuf,
    },
    /// Non-generation witness report for degree d.
    Witness {
        #[arg(long)]
        d: i64,
    },
}

/// A command failure: exit code plus a machine-readable error object.
struct Failure {
    exit: u8,
    error: Value,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            error: json!({ "code": "parse", "message": message.into() }),
        }
    }

    fn domain(code: &str, message: impl Into<String>) -> Self {
        Failure {
            exit: 1,
            error: json!({ "code": code, "message": message.into() }),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.error[key] = value;
        self
    }
}

fn factorial_cap() -> usize {
    std::env::var("TROPSYM_FACTORIAL_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(sym::DEFAULT_FACTORIAL_CAP)
}

fn witness_json(witness: &[Rational]) -> Value {
    Value::Array(witness.iter().map(json::rational_value).collect())
}

fn sym_failure(e: sym::SymError) -> Failure {
    match e {
        sym::SymError::NotSymmetric { swap, witness } => Failure::domain(
            "not_symmetric",
            format!(
                "input is not symmetric: swapping x{} and x{} changes the function",
                swap.0 + 1,
                swap.1 + 1
            ),
        )
        .with("swap", json!([swap.0 + 1, swap.1 + 1]))
        .with("witness", witness_json(&witness)),
        sym::SymError::FactorialCap { n, cap } => {
            Failure::domain("cap_exceeded", format!("n = {n} exceeds cap {cap}"))
        }
        other => Failure::domain("domain", other.to_string()),
    }
}

fn block_failure(e: blocksym::BlockError) -> Failure {
    match e {
        blocksym::BlockError::Not2Symmetric { swap, witness } => Failure::domain(
            "not_2symmetric",
            format!(
                "input is not 2-symmetric: swapping rows {} and {} changes the function",
                swap.0 + 1,
                swap.1 + 1
            ),
        )
        .with("swap", json!([swap.0 + 1, swap.1 + 1]))
        .with("witness", witness_json(&witness)),
        blocksym::BlockError::FactorialCap { n, cap }
        | blocksym::BlockError::DecompositionCap { n, cap } => {
            Failure::domain("cap_exceeded", format!("n = {n} exceeds cap {cap}"))
        }
        blocksym::BlockError::Unsupported { reason } => Failure::domain("unsupported", reason),
        other => Failure::domain("domain", other.to_string()),
    }
}

/// Reads the input as expression text or polynomial/rational JSON and
/// normalizes to a quotient.
fn read_rational(
    expr: Option<&str>,
    input: Option<&PathBuf>,
    spec: VarSpec,
) -> Result<RationalFn, Failure> {
    let text = match (expr, input) {
        (Some(_), Some(_)) => {
            return Err(Failure::parse(
                "give an inline expression or --input, not both",
            ))
        }
        (Some(e), None) => e.to_string(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::domain("io", format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Failure::parse("missing expression (inline or --input)")),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let value: Value =
            serde_json::from_str(trimmed).map_err(|e| Failure::parse(format!("bad JSON: {e}")))?;
        let r = if value.get("num").is_some() {
            json::rationalfn_from(&value).map_err(Failure::parse)?
        } else {
            RationalFn::from_poly(json::poly_from(&value).map_err(Failure::parse)?)
        };
        if r.n_vars() != spec.n_vars() {
            return Err(Failure::domain(
                "dimension_mismatch",
                format!(
                    "input has {} variables, --n implies {}",
                    r.n_vars(),
                    spec.n_vars()
                ),
            ));
        }
        Ok(r)
    } else {
        let ast = parse_expr(trimmed, spec)
            .map_err(|e| Failure::parse(e.to_string()).with("position", json!(e.position)))?;
        Ok(ast.to_rational_fn(spec.n_vars()))
    }
}

/// A quotient whose denominator is a single monomial is a (Laurent)
/// polynomial; rebase it so polynomial-only operations apply.
fn as_polynomial(r: &RationalFn) -> Result<Polynomial, Failure> {
    if r.den().len() != 1 {
        return Err(Failure::domain(
            "domain",
            "input is a genuine quotient (denominator has several monomials), not a polynomial",
        ));
    }
    let den = &r.den().monomials()[0];
    let inv = tropsym::poly::Monomial::new(
        -den.coeff.clone(),
        den.exps.iter().map(|e| -e.clone()).collect(),
    );
    Ok(r.num().mul_monomial(&inv).expect("same arity"))
}

fn parse_point(text: &str, n: usize) -> Result<Vec<TropScalar>, Failure> {
    let coords: Vec<&str> = text.split(',').map(str::trim).collect();
    if coords.len() != n {
        return Err(Failure::parse(format!(
            "point has {} coordinates, expected {n}",
            coords.len()
        )));
    }
    coords
        .iter()
        .map(|c| {
            if c.eq_ignore_ascii_case("inf") {
                Ok(TropScalar::Infinity)
            } else {
                parse_rational(c)
                    .map(TropScalar::finite)
                    .ok_or_else(|| Failure::parse(format!("bad coordinate {c:?}")))
            }
        })
        .collect()
}

fn parse_finite_point(text: &str, n: usize) -> Result<Vec<Rational>, Failure> {
    parse_point(text, n)?
        .into_iter()
        .map(|c| match c {
            TropScalar::Finite(r) => Ok(r),
            TropScalar::Infinity => Err(Failure::parse("this command needs finite coordinates")),
        })
        .collect()
}

fn spec_for(n: usize, block: bool) -> Result<VarSpec, Failure> {
    if n == 0 {
        return Err(Failure::parse("--n must be positive"));
    }
    Ok(if block {
        VarSpec::Blocks(n)
    } else {
        VarSpec::Flat(n)
    })
}

fn block_var(k: usize) -> String {
    format!("x[{},{}]", k / 2 + 1, k % 2 + 1)
}

fn pretty_poly(p: &Polynomial, block: bool) -> String {
    if block {
        p.pretty_with(block_var)
    } else {
        p.pretty()
    }
}

fn check_degree(p: &Polynomial, max_degree: i64) -> Result<(), Failure> {
    let bound = tropsym::scalar::Int::from(max_degree);
    let deg = p.degree();
    let min = p.min_exponent();
    if deg > bound || min < -bound {
        return Err(Failure::domain(
            "cap_exceeded",
            format!("degree {deg} exceeds --max-degree {max_degree}"),
        ));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(String, Value), Failure> {
    match &cli.command {
        Command::Eval {
            expr,
            n,
            block,
            point,
            input,
        } => {
            let spec = spec_for(*n, *block)?;
            let r = read_rational(expr.as_deref(), input.as_ref(), spec)?;
            let x = parse_point(point, spec.n_vars())?;
            let value = r
                .eval(&x)
                .map_err(|e| Failure::domain("domain", e.to_string()))?;
            Ok((value.to_string(), json!({ "value": value.to_string() })))
        }

        Command::Canon {
            expr,
            n,
            block,
            input,
        } => {
            let spec = spec_for(*n, *block)?;
            let r = read_rational(expr.as_deref(), input.as_ref(), spec)?;
            let reduced = RationalFn::new(
                canon::minimal_representation(r.num()),
                canon::minimal_representation(r.den()),
            )
            .expect("components keep their arity")
            .reduce_common_factor();
            let text = format!(
                "num = {}\nden = {}",
                pretty_poly(reduced.num(), *block),
                pretty_poly(reduced.den(), *block)
            );
            Ok((text, json::rationalfn_value(&reduced)))
        }

        Command::Equiv {
            left,
            right,
            n,
            block,
        } => {
            let spec = spec_for(*n, *block)?;
            let l = read_rational(Some(left), None, spec)?;
            let r = read_rational(Some(right), None, spec)?;
            match canon::rational_equiv(&l, &r)
                .map_err(|e| Failure::domain("domain", e.to_string()))?
            {
                Equivalence::Equivalent => {
                    Ok(("equivalent".to_string(), json!({ "equivalent": true })))
                }
                Equivalence::Distinct { witness } => {
                    let text = format!(
                        "distinct at ({})",
                        witness
                            .iter()
                            .map(fmt_rational)
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    Ok((
                        text,
                        json!({ "equivalent": false, "witness": witness_json(&witness) }),
                    ))
                }
            }
        }

        Command::Sym { expr, n, input } => {
            let spec = spec_for(*n, false)?;
            let r = read_rational(expr.as_deref(), input.as_ref(), spec)?;
            let p = as_polynomial(&r)?;
            let s = sym::symmetrize_with_cap(&p, factorial_cap()).map_err(sym_failure)?;
            Ok((s.pretty(), json::poly_value(&s)))
        }

        Command::Decompose {
            expr,
            n,
            input,
            max_degree,
        } => {
            let spec = spec_for(*n, false)?;
            let cap = factorial_cap();
            let r = read_rational(expr.as_deref(), input.as_ref(), spec)?;
            check_degree(r.num(), *max_degree)?;
            check_degree(r.den(), *max_degree)?;
            if r.den().len() == 1 {
                let p = as_polynomial(&r)?;
                let g = sym::decompose_symmetric_with_cap(&p, cap).map_err(sym_failure)?;
                Ok((g.pretty(), json::generator_value(&g)))
            } else {
                let (gn, gd) =
                    sym::decompose_symmetric_rational_with_cap(&r, cap).map_err(sym_failure)?;
                let text = format!("num = {}\nden = {}", gn.pretty(), gd.pretty());
                Ok((
                    text,
                    json!({ "num": json::generator_value(&gn), "den": json::generator_value(&gd) }),
                ))
            }
        }

        Command::Sym2 { expr, n, input } => {
            let spec = spec_for(*n, true)?;
            let r = read_rational(expr.as_deref(), input.as_ref(), spec)?;
            let p = as_polynomial(&r)?;
            let s = blocksym::symmetrize2_with_cap(&p, factorial_cap()).map_err(block_failure)?;
            Ok((pretty_poly(&s, true), json::poly_value(&s)))
        }

        Command::Decompose2 {
            expr,
            n,
            input,
            max_degree,
        } => {
            let spec = spec_for(*n, true)?;
            let r = read_rational(expr.as_deref(), input.as_ref(), spec)?;
            check_degree(r.num(), *max_degree)?;
            check_degree(r.den(), *max_degree)?;
            let g = blocksym::decompose2_symmetric_rational(&r).map_err(block_failure)?;
            Ok((g.pretty(), json::gen2_value(&g)))
        }

        Command::Orbits { n, count } => {
            let orbits = blocksym::enumerate_orbits(*n).map_err(block_failure)?;
            if *count {
                Ok((
                    orbits.len().to_string(),
                    json!({ "n": n, "count": orbits.len() }),
                ))
            } else {
                let labels: Vec<String> = orbits.iter().map(|o| o.label()).collect();
                Ok((labels.join("\n"), json!({ "n": n, "orbits": labels })))
            }
        }

        Command::Fingerprint { n, point } => {
            let x = parse_finite_point(point, *n)?;
            let fp = sym::orbit_fingerprint(&x);
            let strings: Vec<String> = fp.iter().map(fmt_rational).collect();
            Ok((strings.join(","), json!({ "e": strings })))
        }

        Command::BarcodeFeatures { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| Failure::domain("io", format!("{}: {e}", input.display())))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Failure::parse(format!("bad JSON: {e}")))?;
            let barcode = json::barcode_from(&value).map_err(Failure::parse)?;
            let features = blocksym::orbit_fingerprint2(&barcode).map_err(block_failure)?;
            let mut out = String::new();
            for (orbit, v) in &features {
                let _ = writeln!(out, "{} = {}", orbit.label(), fmt_rational(v));
            }
            Ok((
                out.trim_end().to_string(),
                json::features_value(barcode.n(), &features),
            ))
        }

        Command::Witness { d } => {
            let report = blocksym::non_generation_witness(*d).map_err(block_failure)?;
            let mut out = String::new();
            for e in &report.entries {
                let _ = writeln!(
                    out,
                    "a = {}: margin {} at ({})",
                    e.a,
                    fmt_rational(&e.margin),
                    e.point
                        .iter()
                        .map(fmt_rational)
                        .collect::<Vec<_>>()
                        .join(",")
                );
            }
            let _ = writeln!(
                out,
                "both target monomials essential: {}",
                report.target_certificates.iter().all(|c| c.essential)
            );
            Ok((out.trim_end().to_string(), json::witness_value(&report)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, value)) => {
            let payload = match cli.format {
                Format::Text => text,
                Format::Json => value.to_string(),
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, payload + "\n") {
                        eprintln!(
                            "{}",
                            json!({ "error": { "code": "io", "message": e.to_string() } })
                        );
                        return ExitCode::from(1);
                    }
                }
                None => println!("{payload}"),
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", json!({ "error": failure.error }));
            ExitCode::from(failure.exit)
        }
    }
}
