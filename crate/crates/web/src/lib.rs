//! Browser bindings for the `sctptp` toolkit.
//!
//! Each operation takes derivation source text and returns text for display.
//! The plain functions are usable natively; the `wasm_bindgen` wrappers
//! forward to them and turn errors into JS exceptions.

use sctptp::checker::check_proof;
use sctptp::coq::{export_coq, PRELUDE};
use sctptp::elaborator::eliminate_level2;
use sctptp::syntax::{parse_derivation, print_derivation};
use wasm_bindgen::prelude::*;

/// Checks `src` with rules up to `level`, returning the report and verdict.
pub fn check_text(src: &str, level: u8) -> Result<(bool, String), String> {
    if !(1..=2).contains(&level) {
        return Err(format!("level must be 1 or 2, got {level}"));
    }
    let d = parse_derivation(src).map_err(|e| e.to_string())?;
    let report = check_proof(&d, level);
    Ok((report.is_valid(), report.human()))
}

/// Replaces level-2 steps by level-1 steps and pretty-prints the result.
pub fn elaborate_text(src: &str) -> Result<String, String> {
    let d = parse_derivation(src).map_err(|e| e.to_string())?;
    let res = eliminate_level2(&d).map_err(|e| e.to_string())?;
    let s = res.stats;
    Ok(format!(
        "% {} steps -> {} steps ({} congruence, {} subst-multi unfolded)\n{}",
        s.steps_before,
        s.steps_after,
        s.congruence_unfolded,
        s.subst_multi_unfolded,
        print_derivation(&res.derivation)
    ))
}

/// Exports `src` as a Coq script, elaborating level-2 steps first.
pub fn coq_text(src: &str, name: &str) -> Result<String, String> {
    let d = parse_derivation(src).map_err(|e| e.to_string())?;
    let d = eliminate_level2(&d).map_err(|e| e.to_string())?.derivation;
    let name = if name.trim().is_empty() { "proof" } else { name.trim() };
    export_coq(&d, name).map(|s| s.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn check(src: &str, level: u8) -> Result<String, JsError> {
    check_text(src, level).map(|(_, report)| report).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn elaborate(src: &str) -> Result<String, JsError> {
    elaborate_text(src).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn coq(src: &str, name: &str) -> Result<String, JsError> {
    coq_text(src, name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn prelude() -> String {
    PRELUDE.to_string()
}
