//! Checks over a whole cell catalog. Each returns the list of violations.

use paritykit::cells::{atom, excision_decompose, recompose, AtomClosure, CellCatalog, Sign, DEFAULT_CELL_LIMIT};
use paritykit::chain::FreeDirectedComplex;
use paritykit::structure::AdditiveParityStructure;

pub fn faces_and_globularity(catalog: &CellCatalog) -> Vec<String> {
    let mut bad = Vec::new();
    for t in catalog.iter() {
        if !t.columns_are_subsets() {
            bad.push(format!("non-subset column in {t}"));
        }
        for k in 0..t.dim() {
            for sign in [Sign::Source, Sign::Target] {
                let f = t.face(k, sign).unwrap();
                if !catalog.contains(&f) {
                    bad.push(format!("face {k} of {t} missing"));
                }
                for j in 0..k {
                    if f.source(j).unwrap() != t.source(j).unwrap() || f.target(j).unwrap() != t.target(j).unwrap() {
                        bad.push(format!("globularity at {j} < {k} for {t}"));
                    }
                }
            }
        }
    }
    bad
}

pub fn unit_and_associativity(catalog: &CellCatalog) -> Vec<String> {
    let mut bad = Vec::new();
    for n in 1..=catalog.max_dim().unwrap_or(0) {
        let cells = catalog.cells(n);
        for x in cells {
            for k in 0..n {
                let mut left = x.source(k).unwrap();
                let mut right = x.target(k).unwrap();
                while left.dim() < n {
                    left = left.identity();
                    right = right.identity();
                }
                if left.compose(x, k).unwrap() != *x || x.compose(&right, k).unwrap() != *x {
                    bad.push(format!("unit law at {k} for {x}"));
                }
            }
        }
        for x in cells {
            for y in cells {
                for k in (0..n).filter(|&k| x.is_composable(y, k)) {
                    let xy = x.compose_disjoint(y, k).unwrap();
                    if !catalog.contains(&xy) {
                        bad.push(format!("{x} ∘{k} {y} is not a cell"));
                    }
                    if xy.source(k).unwrap() != x.source(k).unwrap() || xy.target(k).unwrap() != y.target(k).unwrap() {
                        bad.push(format!("faces of {x} ∘{k} {y}"));
                    }
                    for z in cells.iter().filter(|z| y.is_composable(z, k)) {
                        let lhs = xy.compose(z, k).unwrap();
                        let rhs = x.compose(&y.compose(z, k).unwrap(), k).unwrap();
                        if lhs != rhs {
                            bad.push(format!("associativity at {k}: {x}, {y}, {z}"));
                        }
                    }
                }
            }
        }
    }
    bad
}

pub fn interchange(catalog: &CellCatalog) -> Vec<String> {
    let mut bad = Vec::new();
    for n in 2..=catalog.max_dim().unwrap_or(0) {
        let cells = catalog.cells(n);
        for j in 0..n {
            for k in j + 1..n {
                // (a ∘ₖ b) ∘ⱼ (c ∘ₖ d) = (a ∘ⱼ c) ∘ₖ (b ∘ⱼ d)
                for a in cells {
                    for b in cells.iter().filter(|b| a.is_composable(b, k)) {
                        let ab = a.compose(b, k).unwrap();
                        for c in cells.iter().filter(|c| a.is_composable(c, j)) {
                            for d in cells.iter().filter(|d| c.is_composable(d, k) && b.is_composable(d, j)) {
                                let lhs = ab.compose(&c.compose(d, k).unwrap(), j).unwrap();
                                let rhs = a.compose(c, j).unwrap().compose(&b.compose(d, j).unwrap(), k).unwrap();
                                if lhs != rhs {
                                    bad.push(format!("interchange ({j},{k}): {a}, {b}, {c}, {d}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        for x in catalog.cells(n - 1) {
            for y in catalog.cells(n - 1) {
                for k in (0..n - 1).filter(|&k| x.is_composable(y, k)) {
                    if x.identity().compose(&y.identity(), k).unwrap() != x.compose(y, k).unwrap().identity() {
                        bad.push(format!("identity of {x} ∘{k} {y}"));
                    }
                }
            }
        }
    }
    bad
}

/// Every column is well formed, and for each basis element `b` in column
/// `m + 1` the negative column `m` misses `∂⁺b` and the positive one `∂⁻b`.
pub fn well_formed_columns(b: &AdditiveParityStructure, catalog: &CellCatalog) -> Vec<String> {
    let k = FreeDirectedComplex::from_structure(b);
    let mut bad = Vec::new();
    for t in catalog.iter() {
        for col in t.neg().iter().chain(t.pos()) {
            if !k.is_well_formed_element(col).unwrap() {
                bad.push(format!("column {col} of {t} is not well formed"));
            }
        }
        for m in 0..t.dim() {
            for row in [t.neg(), t.pos()] {
                for g in row[m + 1].support() {
                    let (gn, gp) = k.generator_boundary(g).unwrap().parts();
                    if !t.neg()[m].is_disjoint(&gp).unwrap() || !t.pos()[m].is_disjoint(&gn).unwrap() {
                        bad.push(format!("{t} meets an opposite face of {g}"));
                    }
                }
            }
        }
    }
    bad
}

/// Above the composition level, the columns of composable cells are disjoint.
pub fn composable_disjoint(catalog: &CellCatalog) -> Vec<String> {
    let mut bad = Vec::new();
    for n in 1..=catalog.max_dim().unwrap_or(0) {
        for x in catalog.cells(n) {
            for y in catalog.cells(n) {
                for m in (0..n).filter(|&m| x.is_composable(y, m)) {
                    for p in m + 1..=n {
                        if !x.neg()[p].is_disjoint(&y.neg()[p]).unwrap()
                            || !x.pos()[p].is_disjoint(&y.pos()[p]).unwrap()
                        {
                            bad.push(format!("{x} ∘{m} {y} overlaps in column {p}"));
                        }
                    }
                }
            }
        }
    }
    bad
}

pub fn excision(b: &AdditiveParityStructure, catalog: &CellCatalog) -> Vec<String> {
    let k = FreeDirectedComplex::from_structure(b);
    let mut bad = Vec::new();
    for t in catalog.iter().filter(|t| t.dim() > 0 && !t.is_identity()) {
        let slices = excision_decompose(&k, t).unwrap();
        for (i, s) in slices.iter().enumerate() {
            if s.top().support_len() != 1 || !catalog.contains(s) {
                bad.push(format!("slice {s} of {t}"));
            }
            let (_, pi) = k.reduced_faces(s.top()).unwrap();
            for earlier in &slices[..=i] {
                let (nj, _) = k.reduced_faces(earlier.top()).unwrap();
                if !pi.is_disjoint(&nj).unwrap() {
                    bad.push(format!("slice order of {t}"));
                }
            }
        }
        if recompose(&slices).unwrap().as_ref() != Some(t) {
            bad.push(format!("slices of {t} do not recompose"));
        }
    }
    bad
}

pub fn free_generation(b: &AdditiveParityStructure, catalog: &CellCatalog) -> Vec<String> {
    let max = catalog.max_dim().unwrap_or(0);
    let closure = AtomClosure::generate(b, max, DEFAULT_CELL_LIMIT).unwrap();
    let mut bad: Vec<String> = closure
        .missing(catalog)
        .iter()
        .map(|t| format!("{t} not reached"))
        .collect();
    if closure.len() != catalog.len() {
        bad.push(format!(
            "closure has {} cells, catalog {}",
            closure.len(),
            catalog.len()
        ));
    }
    for t in catalog.iter() {
        match closure.expression(t).map(|e| e.evaluate(b)) {
            Some(Ok(v)) if &v == t => {}
            _ => bad.push(format!("witness for {t} does not evaluate back")),
        }
    }
    for x in b.iter().filter(|x| x.dim() <= max) {
        if !catalog.contains(&atom(b, x).unwrap()) {
            bad.push(format!("atom of {x} is not a cell"));
        }
    }
    bad
}
