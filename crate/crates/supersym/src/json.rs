//! JSON encoding. Coefficients are strings (`"p/q"`, or `"(num)/(den)"` over
//! `ℚ(α)`) so nothing is lost to floating point, and every collection is
//! emitted in canonical order.

use serde_json::{json, Value};
use supersym_core::report::Report;
use supersym_core::spar::{compare, SuperPartition};
use supersym_core::transforms::TransitionMatrix;
use supersym_core::{AbstractPoly, RatFunc, Rational, Scalar};

pub const SCHEMA: &str = "supersym/1";

/// Lossless string form of a coefficient.
pub trait Coefficient: Scalar {
    fn encode(&self) -> String;
}

impl Coefficient for Rational {
    fn encode(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Coefficient for RatFunc {
    fn encode(&self) -> String {
        self.to_ratio_string()
    }
}

/// Sector, then position in the sector enumeration.
pub fn canonical_cmp(a: &SuperPartition, b: &SuperPartition) -> std::cmp::Ordering {
    a.sector().cmp(&b.sector()).then_with(|| compare(b, a))
}

pub fn poly<F: Coefficient>(p: &AbstractPoly<F>) -> Value {
    let mut terms: Vec<(&SuperPartition, &F)> = p.terms().iter().collect();
    terms.sort_by(|a, b| canonical_cmp(a.0, b.0));
    let terms: Vec<Value> = terms
        .into_iter()
        .map(|(s, c)| json!({"spar": s.to_string(), "coeff": c.encode()}))
        .collect();
    json!({"schema": SCHEMA, "basis": p.basis().name(), "terms": terms})
}

pub fn report(r: &Report) -> Value {
    let mismatches: Vec<Value> = r
        .mismatches
        .iter()
        .map(|m| json!({"key": m.key, "lhs": m.lhs, "rhs": m.rhs}))
        .collect();
    json!({
        "check": r.check,
        "sector": r.sector,
        "status": r.status.as_str(),
        "mismatches": mismatches,
    })
}

pub fn suite(name: &str, bound: u32, reports: &[Report]) -> Value {
    let pass = reports.iter().all(Report::passed);
    json!({
        "schema": SCHEMA,
        "suite": name,
        "bound": bound,
        "status": if pass { "pass" } else { "fail" },
        "reports": reports.iter().map(report).collect::<Vec<_>>(),
    })
}

pub fn matrix<F: Coefficient>(t: &TransitionMatrix<F>) -> Value {
    let d = t.order.len();
    let rows: Vec<Vec<String>> = (0..d)
        .map(|i| (0..d).map(|j| t.matrix.get(i, j).encode()).collect())
        .collect();
    json!({
        "schema": SCHEMA,
        "sector": t.sector.to_string(),
        "from": t.from.name(),
        "to": t.to.name(),
        "order": t.order.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "entries": rows,
    })
}

/// Pretty form with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built here always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use supersym_core::scalar::{int, rat};
    use supersym_core::spar::sp;
    use supersym_core::Basis;

    #[test]
    fn coefficients_are_fractions() {
        assert_eq!(rat(-8, 3).encode(), "-8/3");
        assert_eq!(int(2).encode(), "2/1");
        assert_eq!(RatFunc::var().encode(), "(a)/(1)");
    }

    #[test]
    fn poly_terms_in_canonical_order() {
        let mut p = AbstractPoly::zero(Basis::M);
        p.add_term(sp("[1,1,0b]"), int(1));
        p.add_term(sp("[2b]"), int(2));
        p.add_term(sp("[1]"), int(3));
        let v = poly(&p);
        let names: Vec<&str> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["spar"].as_str().unwrap())
            .collect();
        assert_eq!(names, ["[1]", "[2b]", "[1,1,0b]"]);
    }
}
