//! JSON encodings of the library reports.

use brmult_core::hilbert::Certificate;
use brmult_core::jones::{JonesInstance, JonesReport};
use brmult_core::verify::{CounterexampleReport, SuiteReport};
use brmult_core::{LocalLengthReport, MultiplicityReport};
use serde_json::{json, Map, Value};

/// Largest integer that survives a round trip through an IEEE double.
pub const MAX_SAFE: i128 = 1 << 53;

/// Integers up to `2^53` in absolute value are numbers, larger ones strings.
pub fn int(v: impl Into<i128>) -> Value {
    let v = v.into();
    if v.abs() <= MAX_SAFE {
        Value::from(v as i64)
    } else {
        Value::String(v.to_string())
    }
}

fn certificate(c: Option<Certificate>) -> Value {
    match c {
        Some(Certificate::LowerBound) => "LOWER_BOUND".into(),
        Some(Certificate::RepeatedMinimum) => "REPEATED_MINIMUM".into(),
        Some(Certificate::CrossRoute) => "CROSS_ROUTE".into(),
        Some(Certificate::Exact) => "EXACT".into(),
        None => Value::Null,
    }
}

/// Value under `key`, plus method, routes and certificate.
pub fn multiplicity(key: &str, r: &MultiplicityReport) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert(key.into(), int(r.value));
    out.insert("method".into(), r.method.name().into());
    out.insert("consistent".into(), r.consistent.into());
    let routes: Map<String, Value> = r.routes.iter().map(|(k, v)| (k.name().to_string(), int(*v))).collect();
    out.insert("routes".into(), routes.into());
    out.insert("certificate".into(), certificate(r.certificate));
    let trials: Vec<Value> = r.trial_values.iter().map(|v| v.map_or(Value::Null, int)).collect();
    out.insert("trial_values".into(), trials.into());
    out
}

pub fn local_length(r: &LocalLengthReport) -> Value {
    json!({
        "colength": int(r.value),
        "truncation": r.truncation,
        "stable_from": r.stable_from,
        "trail": r.trail.iter().map(|(n, v)| json!([n, int(*v)])).collect::<Vec<_>>(),
    })
}

pub fn suite(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "pass": r.pass,
        "fail": r.fail,
        "errors": r.errors,
        "skipped": r.skipped,
        "first_failure": r.first_failure,
        "tallies": r.tallies,
    })
}

pub fn counterexample(r: &CounterexampleReport) -> Value {
    let mut out = json!({
        "suite": "counterexample",
        "e_I": int(r.e_i),
        "e_J": int(r.e_j),
        "e_F0_IJ": int(r.e_fitt_ij),
        "e_F0_IJprime": int(r.e_fitt_ijprime),
        "rhs": int(r.rhs),
        "br": int(r.br),
        "match": r.matches(),
    });
    if let Some(p) = r.pipeline {
        out["pipeline_formula"] = int(p);
    }
    out
}

pub fn jones_points(inst: &JonesInstance) -> Value {
    let (an, ad) = inst.a_point();
    let a_x = if an % ad == 0 { int(an / ad) } else { format!("{an}/{ad}").into() };
    json!({
        "T": [inst.t_point().0, inst.t_point().1],
        "B": [inst.b_point().0, inst.b_point().1],
        "P": [inst.p_point().0, inst.p_point().1],
        "Q": [inst.q_point().0, inst.q_point().1],
        "A": [a_x, 0],
    })
}

pub fn jones(r: &JonesReport) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("br".into(), int(r.br));
    out.insert("e_I".into(), int(r.e_i));
    out.insert("e_J".into(), int(r.e_j));
    out.insert("delta".into(), int(r.delta()));
    out.insert("oracle".into(), int(r.oracle));
    out.insert("method".into(), format!("{:?}", r.method).to_uppercase().into());
    out.insert("dark_area2".into(), int(r.dark_area2));
    out.insert("light_area2".into(), int(r.light_area2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(5u64), json!(5));
        assert_eq!(int(-(1i64 << 53)), json!(-(1i64 << 53)));
        assert_eq!(int((1i128 << 53) + 1), json!("9007199254740993"));
    }
}
