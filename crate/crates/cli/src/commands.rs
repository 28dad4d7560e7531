use std::env;

use paritykit::cells::{
    self, enumerate_cells, excision_decompose, validate_cell, AtomClosure, CellError, CellMode, CellTable, Sign,
    Validity, DEFAULT_CELL_LIMIT,
};
use paritykit::chain::FreeDirectedComplex;
use paritykit::families::{Family, FamilySpec};
use paritykit::fixture::{cell_to_value, expression_to_value, resolve_name, Fixture};
use paritykit::morphism::{check_strict_movement, compose_morphisms, validate_morphism, MorphismError, MorphismMode};
use paritykit::multiset::GeneratorId;
use paritykit::structure::AdditiveParityStructure;
use paritykit::validate::{validate as validate_structure, Classification};
use serde_json::{json, Value};

use crate::io::{read_cell, read_morphism, read_structure, write_text, Fatal};
use crate::{Format, Level, ModeArg, SignArg};

type Outcome = Result<bool, Fatal>;

fn emit(fmt: Format, text: impl FnOnce() -> String, structured: impl FnOnce() -> Value) {
    match fmt {
        Format::Text => print!("{}", text()),
        Format::Structured => println!(
            "{}",
            serde_json::to_string_pretty(&structured()).expect("JSON values serialize")
        ),
    }
}

fn fatal(e: impl ToString) -> Fatal {
    Fatal(e.to_string())
}

/// Reports a failed check on standard output.
fn failed(fmt: Format, message: String) -> Outcome {
    emit(
        fmt,
        || format!("{message}\n"),
        || json!({ "ok": false, "error": message }),
    );
    Ok(false)
}

fn max_cells() -> Result<usize, Fatal> {
    match env::var("PARITYKIT_MAX_CELLS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Fatal(format!("PARITYKIT_MAX_CELLS={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_CELL_LIMIT),
    }
}

/// Enumeration errors that mean the input fails a precondition rather than
/// being malformed.
fn cell_outcome<T>(fmt: Format, r: Result<T, CellError>) -> Result<Result<T, bool>, Fatal> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (CellError::NotWeaklyLoopFree | CellError::MissingAugmentation | CellError::Invalid(_))) => {
            Ok(Err(failed(fmt, e.to_string())?))
        }
        Err(
            e @ (CellError::NotComposable { .. } | CellError::Overlap { .. } | CellError::DimensionMismatch { .. }),
        ) => Ok(Err(failed(fmt, e.to_string())?)),
        Err(e) => Err(fatal(e)),
    }
}

fn level(l: Level) -> Classification {
    match l {
        Level::Apc => Classification::AdditiveParityComplex,
        Level::Wpc => Classification::WeakParityComplex,
        Level::Pc => Classification::ParityComplex,
    }
}

pub fn validate(file: &str, require: Option<Level>, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let report = validate_structure(&b);
    emit(
        fmt,
        || report.to_string(),
        || serde_json::to_value(&report).expect("report serializes"),
    );
    Ok(require.is_none_or(|l| report.meets(level(l))))
}

pub fn classify(file: &str, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let c = validate_structure(&b).classification;
    emit(fmt, || format!("{c}\n"), || json!({ "classification": c.as_str() }));
    Ok(true)
}

pub fn generate(family: &str, n: usize, output: &str) -> Outcome {
    let family: Family = family.parse().map_err(fatal)?;
    let spec = FamilySpec::new(family, n).map_err(fatal)?;
    let fx = Fixture::structure(spec.name(), spec.build().into_additive());
    write_text(output, &fx.to_json())?;
    Ok(true)
}

pub fn chain(file: &str, check: bool, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let k = FreeDirectedComplex::from_structure(&b);
    if !check {
        emit(
            fmt,
            || k.boundary_report(),
            || {
                let map: serde_json::Map<String, Value> = k
                    .iter()
                    .filter(|g| g.dim() > 0)
                    .map(|g| {
                        let v = k.generator_boundary(g).expect("positive dimension");
                        (format!("{}@{}", g.name(), g.dim()), Value::from(v.to_string()))
                    })
                    .collect();
                json!({ "augmented": k.is_augmented(), "boundary": map })
            },
        );
        return Ok(true);
    }
    let report = k.check();
    let ok = report.boundary_squared_zero && report.augmentation_ok != Some(false);
    emit(
        fmt,
        || {
            let mut s = k.boundary_report();
            s.push_str(&format!("boundary_squared_zero: {}\n", report.boundary_squared_zero));
            for g in &report.offending {
                s.push_str(&format!("  ∂∂{g} ≠ 0\n"));
            }
            s.push_str(&format!("normal: {}\nunital: {}\n", report.normal, report.unital));
            match report.augmentation_ok {
                Some(a) => s.push_str(&format!("augmentation: {a}\n")),
                None => s.push_str("augmentation: none\n"),
            }
            s
        },
        || serde_json::to_value(&report).expect("report serializes"),
    );
    Ok(ok)
}

/// `name` or `name@dim`.
fn lookup(b: &AdditiveParityStructure, id: &str) -> Result<GeneratorId, Fatal> {
    if let Some((name, dim)) = id.rsplit_once('@') {
        if let Ok(dim) = dim.parse::<usize>() {
            return b
                .lookup(name, dim)
                .cloned()
                .ok_or_else(|| Fatal(format!("no generator {name} in dimension {dim}")));
        }
    }
    resolve_name(b, id).cloned().map_err(fatal)
}

fn print_cell(fmt: Format, t: &CellTable) {
    emit(fmt, || format!("{t}\n"), || cell_to_value(t));
}

pub fn atom(file: &str, id: &str, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let x = lookup(&b, id)?;
    let t = cells::atom(&b, &x).map_err(fatal)?;
    let k = FreeDirectedComplex::from_structure(&b);
    let mode = if k.is_augmented() { CellMode::Nu } else { CellMode::Rho };
    let validity = validate_cell(&k, &t, mode).map_err(fatal)?;
    emit(
        fmt,
        || match &validity {
            Validity::Valid => format!("{t}\n"),
            Validity::Invalid(r) => format!("{t}\nnot a cell: {r}\n"),
        },
        || json!({ "cell": cell_to_value(&t), "valid": validity.is_valid() }),
    );
    Ok(validity.is_valid())
}

pub fn cells(file: &str, max_dim: usize, count_only: bool, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let catalog = match cell_outcome(fmt, enumerate_cells(&b, max_dim, max_cells()?))? {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let counts = catalog.counts();
    let line = counts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    if count_only {
        emit(fmt, || format!("{line}\n"), || json!({ "counts": counts }));
        return Ok(true);
    }
    emit(
        fmt,
        || {
            let mut s = format!("counts: {line}\n");
            for d in 0..counts.len() {
                for t in catalog.cells(d) {
                    s.push_str(&format!("{d}: {t}\n"));
                }
            }
            s
        },
        || {
            let by_dim: Vec<Vec<Value>> = (0..counts.len())
                .map(|d| catalog.cells(d).iter().map(cell_to_value).collect())
                .collect();
            json!({ "counts": counts, "cells": by_dim })
        },
    );
    Ok(true)
}

/// Reads a cell and checks it against the structure; `Err(false)` means it
/// is not a cell and the failure has been reported.
fn checked_cell(fmt: Format, k: &FreeDirectedComplex, path: &str) -> Result<Result<CellTable, bool>, Fatal> {
    let t = read_cell(path)?;
    let mode = if k.is_augmented() { CellMode::Nu } else { CellMode::Rho };
    match validate_cell(k, &t, mode).map_err(fatal)? {
        Validity::Valid => Ok(Ok(t)),
        Validity::Invalid(reason) => Ok(Err(failed(fmt, format!("{path} is not a cell: {reason}"))?)),
    }
}

pub fn face(file: &str, cell: &str, k: usize, sign: SignArg, fmt: Format) -> Outcome {
    let complex = FreeDirectedComplex::from_structure(&read_structure(file)?);
    let t = match checked_cell(fmt, &complex, cell)? {
        Ok(t) => t,
        Err(code) => return Ok(code),
    };
    let sign = match sign {
        SignArg::Source => Sign::Source,
        SignArg::Target => Sign::Target,
    };
    let f = t.face(k, sign).map_err(fatal)?;
    print_cell(fmt, &f);
    Ok(true)
}

pub fn compose(file: &str, a: &str, b: &str, k: usize, fmt: Format) -> Outcome {
    let complex = FreeDirectedComplex::from_structure(&read_structure(file)?);
    let x = match checked_cell(fmt, &complex, a)? {
        Ok(t) => t,
        Err(code) => return Ok(code),
    };
    let y = match checked_cell(fmt, &complex, b)? {
        Ok(t) => t,
        Err(code) => return Ok(code),
    };
    match cell_outcome(fmt, x.compose(&y, k))? {
        Ok(c) => {
            print_cell(fmt, &c);
            Ok(true)
        }
        Err(code) => Ok(code),
    }
}

pub fn decompose(file: &str, cell: &str, fmt: Format) -> Outcome {
    let complex = FreeDirectedComplex::from_structure(&read_structure(file)?);
    let t = match checked_cell(fmt, &complex, cell)? {
        Ok(t) => t,
        Err(code) => return Ok(code),
    };
    let slices = match cell_outcome(fmt, excision_decompose(&complex, &t))? {
        Ok(s) => s,
        Err(code) => return Ok(code),
    };
    emit(
        fmt,
        || slices.iter().map(|s| format!("{s}\n")).collect(),
        || json!({ "slices": slices.iter().map(cell_to_value).collect::<Vec<_>>() }),
    );
    Ok(true)
}

fn mode(m: ModeArg) -> MorphismMode {
    match m {
        ModeArg::Additive => MorphismMode::Additive,
        ModeArg::WeakParity => MorphismMode::WeakParity,
    }
}

pub fn morphism_validate(file: &str, m: ModeArg, strict: bool, fmt: Format) -> Outcome {
    let f = read_morphism(file)?;
    let report = match validate_morphism(&f, mode(m)) {
        Ok(r) => r,
        Err(e @ MorphismError::ModeMismatch { .. }) => return failed(fmt, e.to_string()),
        Err(e) => return Err(fatal(e)),
    };
    let strict_ok = if strict && report.valid {
        Some(check_strict_movement(&f).map_err(fatal)?)
    } else {
        None
    };
    emit(
        fmt,
        || {
            let mut s = report.to_string();
            if let Some(v) = strict_ok {
                s.push_str(&format!("strict: {v}\n"));
            }
            s
        },
        || {
            let failures: Vec<Value> = report
                .failures
                .iter()
                .map(|x| json!({ "generator": x.generator.name(), "dim": x.generator.dim(), "explanation": x.explanation }))
                .collect();
            json!({
                "mode": report.mode.to_string(),
                "valid": report.valid,
                "normal": report.normal,
                "strict": strict_ok,
                "failures": failures,
            })
        },
    );
    Ok(report.valid && strict_ok != Some(false))
}

pub fn morphism_compose(first: &str, second: &str, m: ModeArg, output: &str) -> Outcome {
    let f = read_morphism(first)?;
    let g = read_morphism(second)?;
    match compose_morphisms(&f, &g, mode(m)) {
        Ok(gf) => {
            write_text(output, &Fixture::morphism("composite", gf).to_json())?;
            Ok(true)
        }
        Err(e @ MorphismError::Overlap(_)) => failed(Format::Text, e.to_string()),
        Err(e) => Err(fatal(e)),
    }
}

pub fn morphism_apply(file: &str, cell: &str, fmt: Format) -> Outcome {
    let f = read_morphism(file)?;
    let t = read_cell(cell)?;
    match f.apply_to_cell(&t) {
        Ok(image) => {
            print_cell(fmt, &image);
            Ok(true)
        }
        Err(MorphismError::Cell(e @ CellError::Invalid(_))) => failed(fmt, format!("{cell}: {e}")),
        Err(e) => Err(fatal(e)),
    }
}

pub fn roundtrip(file: &str, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let back = FreeDirectedComplex::from_structure(&b).to_structure();
    let same = back == b;
    emit(
        fmt,
        || format!("isomorphic: {same}\n"),
        || json!({ "isomorphic": same, "generators": b.len() }),
    );
    Ok(same)
}

pub fn freeness(file: &str, max_dim: usize, fmt: Format) -> Outcome {
    let b = read_structure(file)?;
    let limit = max_cells()?;
    let catalog = match cell_outcome(fmt, enumerate_cells(&b, max_dim, limit))? {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let closure = match cell_outcome(fmt, AtomClosure::generate(&b, max_dim, limit))? {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let missing = closure.missing(&catalog);
    let extra = closure.iter().filter(|t| !catalog.contains(t)).count();
    let ok = missing.is_empty() && extra == 0;
    emit(
        fmt,
        || {
            let mut s = format!(
                "cells: {}\ngenerated: {}\nmissing: {}\n",
                catalog.len(),
                closure.len(),
                missing.len()
            );
            for t in catalog.iter() {
                match closure.expression(t) {
                    Some(e) => s.push_str(&format!("{t} = {e}\n")),
                    None => s.push_str(&format!("{t} not generated\n")),
                }
            }
            s
        },
        || {
            let witnesses: Vec<Value> = catalog
                .iter()
                .map(|t| {
                    json!({
                        "cell": cell_to_value(t),
                        "expression": closure.expression(t).map(|e| expression_to_value(&e)),
                    })
                })
                .collect();
            json!({
                "cells": catalog.len(),
                "generated": closure.len(),
                "missing": missing.len(),
                "free": ok,
                "witnesses": witnesses,
            })
        },
    );
    Ok(ok)
}
