//! Browser bindings. Every export takes a structure source, either a family
//! name such as `oriental-2` or the text of a structure fixture, and returns a
//! JSON string: the result on success, `{"error": ...}` otherwise.

use paritykit::cells::{self, AtomClosure, CellMode, CellTable};
use paritykit::chain::FreeDirectedComplex;
use paritykit::families::FamilySpec;
use paritykit::fixture::{cell_to_value, resolve_name, Fixture};
use paritykit::order::Witness;
use paritykit::structure::AdditiveParityStructure;
use paritykit::validate::validate;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Enumeration cap for the page; keeps the tab responsive.
pub const PAGE_CELL_LIMIT: usize = 20_000;
/// Cells listed individually; the counts always cover everything.
pub const LISTED_CELLS: usize = 300;

pub fn load(source: &str) -> Result<AdditiveParityStructure, String> {
    let source = source.trim();
    if source.starts_with('{') {
        Fixture::parse(source)
            .and_then(Fixture::into_structure)
            .map_err(|e| e.to_string())
    } else {
        let spec: FamilySpec = source.parse().map_err(|e| format!("{e}"))?;
        Ok(spec.build().into_additive())
    }
}

fn render_witness(w: &Witness<paritykit::multiset::GeneratorId>) -> String {
    let names = |v: &[paritykit::multiset::GeneratorId], sep: &str| {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
    };
    match w {
        Witness::Order(o) => format!("order: {}", names(o, " < ")),
        Witness::Cycle(c) => format!("cycle: {}", names(c, " → ")),
    }
}

pub fn classify_value(source: &str) -> Result<Value, String> {
    let b = load(source)?;
    let report = validate(&b);
    let counts: Vec<usize> = (0..=b.top_dim().unwrap_or(0)).map(|d| b.generators(d).len()).collect();
    let boundaries: Vec<String> = FreeDirectedComplex::from_structure(&b)
        .boundary_report()
        .lines()
        .map(str::to_string)
        .collect();
    let weak: Vec<String> = report
        .witnesses
        .weak
        .iter()
        .map(|l| format!("weak[{}] {}", l.dim, render_witness(&l.witness)))
        .collect();
    Ok(json!({
        "classification": report.classification.as_str(),
        "flags": report.flags,
        "generators": counts,
        "boundaries": boundaries,
        "weak": weak,
        "strong": render_witness(&report.witnesses.strong),
        "failures": report.failures.iter().map(|f| f.explanation.clone()).collect::<Vec<_>>(),
    }))
}

pub fn atom_value(source: &str, name: &str) -> Result<Value, String> {
    let b = load(source)?;
    let x = resolve_name(&b, name.trim()).map_err(|e| e.to_string())?;
    let t = cells::atom(&b, x).map_err(|e| e.to_string())?;
    let k = FreeDirectedComplex::from_structure(&b);
    let mode = if k.is_augmented() { CellMode::Nu } else { CellMode::Rho };
    let valid = cells::validate_cell(&k, &t, mode)
        .map_err(|e| e.to_string())?
        .is_valid();
    let columns = |row: &[paritykit::multiset::Multiset]| row.iter().map(ToString::to_string).collect::<Vec<_>>();
    Ok(json!({
        "table": t.to_string(),
        "neg": columns(t.neg()),
        "pos": columns(t.pos()),
        "valid": valid,
        "cell": cell_to_value(&t),
    }))
}

pub fn cells_value(source: &str, max_dim: usize) -> Result<Value, String> {
    let b = load(source)?;
    let catalog = cells::enumerate_cells(&b, max_dim, PAGE_CELL_LIMIT).map_err(|e| e.to_string())?;
    let closure = AtomClosure::generate(&b, max_dim, PAGE_CELL_LIMIT).map_err(|e| e.to_string())?;
    let listed: Vec<Value> = catalog
        .iter()
        .take(LISTED_CELLS)
        .map(|t: &CellTable| {
            json!({
                "dim": t.dim(),
                "table": t.to_string(),
                "expression": closure.expression(t).map(|e| e.to_string()),
            })
        })
        .collect();
    Ok(json!({
        "counts": catalog.counts(),
        "total": catalog.len(),
        "missing_from_closure": closure.missing(&catalog).len(),
        "cells": listed,
    }))
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

#[wasm_bindgen]
pub fn classify(source: &str) -> String {
    respond(classify_value(source))
}

#[wasm_bindgen]
pub fn atom(source: &str, name: &str) -> String {
    respond(atom_value(source, name))
}

#[wasm_bindgen]
pub fn cells(source: &str, max_dim: usize) -> String {
    respond(cells_value(source, max_dim))
}
