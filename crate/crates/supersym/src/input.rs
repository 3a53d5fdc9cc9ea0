//! Parsing of command-line values and JSON inputs. Errors name the
//! offending token.

use serde_json::Value;
use supersym_core::grassmann::{ExplicitPoly, VarConfig};
use supersym_core::scalar::parse_rational;
use supersym_core::{AbstractPoly, Basis, Rational, Sector, SuperPartition};

/// `--alpha`: a rational, or the indeterminate itself.
#[derive(Clone, Debug, PartialEq)]
pub enum Alpha {
    Value(Rational),
    Symbolic,
}

pub fn sector(s: &str) -> Result<Sector, String> {
    let v: Vec<&str> = s.split(',').map(str::trim).collect();
    if v.len() != 3 {
        return Err(format!("sector {s:?}: expected n,over,under"));
    }
    let mut n = [0u32; 3];
    for (slot, tok) in n.iter_mut().zip(&v) {
        *slot = tok
            .parse()
            .map_err(|_| format!("sector {s:?}: bad count {tok:?}"))?;
    }
    Ok(Sector::new(n[0], n[1], n[2]))
}

/// `n,m1,...,mN` for the generic families.
pub fn generic_sector(s: &str) -> Result<(u32, Vec<u32>), String> {
    let v: Result<Vec<u32>, String> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("sector {s:?}: bad count {t:?}")))
        .collect();
    let v = v?;
    match v.split_first() {
        Some((&n, rest)) => Ok((n, rest.to_vec())),
        None => Err(format!("sector {s:?}: empty")),
    }
}

pub fn basis(s: &str) -> Result<Basis, String> {
    Basis::from_name(s.trim()).ok_or_else(|| format!("unknown basis {s:?}"))
}

pub fn superpartition(s: &str) -> Result<SuperPartition, String> {
    s.parse().map_err(|e| format!("superpartition {s:?}: {e}"))
}

pub fn alpha(s: &str) -> Result<Alpha, String> {
    match s.trim() {
        "a" | "alpha" => Ok(Alpha::Symbolic),
        t => match parse_rational(t) {
            Some(q) if q != Rational::from_integer(0.into()) => Ok(Alpha::Value(q)),
            _ => Err(format!("alpha {s:?}: expected a nonzero p/q or 'alpha'")),
        },
    }
}

/// A polynomial given on input.
#[derive(Clone, Debug)]
pub enum Input {
    Abstract(AbstractPoly<Rational>),
    Explicit(ExplicitPoly<Rational>),
}

fn coeff(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("coefficient {s:?}")),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(format!("coefficient {other}")),
    }
}

/// `{"basis": "m", "terms": [{"spar": "[2o,0o,0u]", "coeff": "1/1"}, ...]}`
/// (terms may also be an object keyed by superpartition), or
/// `{"explicit": {"vars": 3, "terms": [{"coeff": "1", "x": [2,0,0],
/// "word": ["phi1", "phi2", "theta3"]}]}}` with the fermions multiplied in
/// the listed order.
pub fn polynomial(text: &str) -> Result<Input, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("input JSON: {e}"))?;
    if let Some(e) = v.get("explicit") {
        return explicit(e).map(Input::Explicit);
    }
    let b = v
        .get("basis")
        .and_then(Value::as_str)
        .ok_or("input JSON: missing \"basis\"")?;
    let b = basis(b)?;
    let mut p = AbstractPoly::zero(b);
    match v.get("terms") {
        Some(Value::Array(items)) => {
            for it in items {
                let s = it
                    .get("spar")
                    .and_then(Value::as_str)
                    .ok_or_else(|| format!("term {it}: missing \"spar\""))?;
                let c = it.get("coeff").ok_or_else(|| format!("term {it}: missing \"coeff\""))?;
                p.add_term(superpartition(s)?, coeff(c)?);
            }
        }
        Some(Value::Object(map)) => {
            for (s, c) in map {
                p.add_term(superpartition(s)?, coeff(c)?);
            }
        }
        _ => return Err("input JSON: missing \"terms\"".into()),
    }
    Ok(Input::Abstract(p))
}

fn generator(tok: &str, n_vars: usize) -> Result<(usize, usize), String> {
    let (slot, rest) = if let Some(r) = tok.strip_prefix("phi") {
        (0, r)
    } else if let Some(r) = tok.strip_prefix("theta") {
        (1, r)
    } else {
        return Err(format!("generator {tok:?}"));
    };
    match rest.parse::<usize>() {
        Ok(v) if v >= 1 && v <= n_vars => Ok((v - 1, slot)),
        _ => Err(format!("generator {tok:?}")),
    }
}

fn explicit(v: &Value) -> Result<ExplicitPoly<Rational>, String> {
    let n_vars = v
        .get("vars")
        .and_then(Value::as_u64)
        .filter(|&n| (1..=32).contains(&n))
        .ok_or("explicit: \"vars\" must be between 1 and 32")? as usize;
    let cfg = VarConfig::n2(n_vars);
    let items = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or("explicit: missing \"terms\"")?;
    let mut f = ExplicitPoly::zero(cfg);
    for it in items {
        let c = coeff(it.get("coeff").ok_or_else(|| format!("term {it}: missing \"coeff\""))?)?;
        let mut t = ExplicitPoly::one(cfg).scale(&c);
        if let Some(word) = it.get("word").and_then(Value::as_array) {
            for g in word {
                let g = g.as_str().ok_or_else(|| format!("generator {g}"))?;
                let (var, slot) = generator(g, n_vars)?;
                t = t.mul(&ExplicitPoly::fermion(cfg, var, slot));
            }
        }
        if let Some(x) = it.get("x").and_then(Value::as_array) {
            if x.len() > n_vars {
                return Err(format!("term {it}: too many exponents"));
            }
            for (var, e) in x.iter().enumerate() {
                let e = e.as_u64().ok_or_else(|| format!("exponent {e}"))?;
                for _ in 0..e {
                    t = t.mul(&ExplicitPoly::x(cfg, var));
                }
            }
        }
        f = f.add(&t);
    }
    Ok(f)
}

/// `--left`/`--right`: a basis element such as `h[2o,0u]`, inline JSON, a
/// file path, or `-` for stdin.
pub fn operand(s: &str) -> Result<Input, String> {
    let t = s.trim();
    if let Some(idx) = t.find(['[', '(']) {
        if idx == 1 && !t.starts_with('{') {
            let b = basis(&t[..1])?;
            let sp = superpartition(&t[1..])?;
            return Ok(Input::Abstract(AbstractPoly::single(b, sp, Rational::from_integer(1.into()))));
        }
    }
    if t.starts_with('{') {
        return polynomial(t);
    }
    polynomial(&read_source(t)?)
}

/// Contents of a file, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("input {path:?}: {e}"))
    }
}
