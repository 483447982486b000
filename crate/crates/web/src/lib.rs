//! Browser bindings: each export takes plain strings or numbers and returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use kstate::decide::{analyse, census_with_bound};
use kstate::{check_dominant_det, make_state, parse_pd, seifert_state, sharp_family, FiberVerdict, StateSpec};

/// Largest diagram the page will enumerate.
pub const WEB_CENSUS_BOUND: usize = 12;

#[derive(Serialize)]
struct DecideView<'a> {
    state: String,
    circles: usize,
    #[serde(flatten)]
    verdict: &'a FiberVerdict,
    dot: String,
}

#[derive(Serialize)]
struct SharpView {
    size: usize,
    entries: kstate::IntMatrix,
    #[serde(flatten)]
    report: kstate::homology::DominanceReport,
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("report serializes")
}

/// `state` is `seifert`, `all-a`, `all-b` or an explicit A/B string.
pub fn decide_json(pd: &str, state: &str) -> Result<String, String> {
    let d = parse_pd(pd).map_err(|e| e.to_string())?;
    let s = match state.trim() {
        "" | "seifert" => seifert_state(&d),
        "all-a" => make_state(&d, StateSpec::AllA).map_err(|e| e.to_string())?,
        "all-b" => make_state(&d, StateSpec::AllB).map_err(|e| e.to_string())?,
        text => make_state(&d, StateSpec::Explicit(text)).map_err(|e| e.to_string())?,
    };
    let a = analyse(&d, &s).map_err(|e| e.to_string())?;
    a.verdict.verify(&d, &s)?;
    Ok(json(&DecideView {
        state: s.to_string(),
        circles: a.smoothed.circle_count(),
        verdict: &a.verdict,
        dot: a.reduced.to_dot("reduced"),
    }))
}

pub fn census_json(pd: &str) -> Result<String, String> {
    let d = parse_pd(pd).map_err(|e| e.to_string())?;
    census_with_bound(&d, WEB_CENSUS_BOUND).map(|c| json(&c)).map_err(|e| e.to_string())
}

pub fn sharp_json(n: usize) -> Result<String, String> {
    let m = sharp_family(n).map_err(|e| e.to_string())?;
    let report = check_dominant_det(&m).map_err(|e| e.to_string())?;
    Ok(json(&SharpView { size: n, entries: m, report }))
}

#[wasm_bindgen]
pub fn decide(pd: &str, state: &str) -> Result<String, JsValue> {
    decide_json(pd, state).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn census(pd: &str) -> Result<String, JsValue> {
    census_json(pd).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sharp_determinant(n: usize) -> Result<String, JsValue> {
    sharp_json(n).map_err(|e| JsValue::from_str(&e))
}
