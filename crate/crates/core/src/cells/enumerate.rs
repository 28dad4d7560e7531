//! Enumeration of the cells of `𝒪C` for a weakly loop-free structure.
//!
//! Cells are built dimension by dimension. An `n`-cell is determined by its
//! `(n−1)`-source `s` and its top `T`, a well-formed subset of `Cₙ` with
//! `∂⁻T ≤ top(s)`; the remaining column is `top(s) − ∂⁻T + ∂⁺T`. Every
//! candidate is checked with [`validate_cell`] before it is kept.

use std::collections::BTreeSet;

use super::{validate_cell, CellError, CellMode, CellTable};
use crate::chain::FreeDirectedComplex;
use crate::multiset::Multiset;
use crate::structure::AdditiveParityStructure;
use crate::validate::validate;

pub const DEFAULT_CELL_LIMIT: usize = 1_000_000;

/// Cells grouped by dimension, each group sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellCatalog {
    by_dim: Vec<Vec<CellTable>>,
}

impl CellCatalog {
    /// Number of cells in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, dim: usize) -> &[CellTable] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CellTable> + '_ {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, t: &CellTable) -> bool {
        self.cells(t.dim()).binary_search(t).is_ok()
    }
}

/// All well-formed elements of `Cₙ` (for `n ≥ 1`), including `∅`, sorted:
/// subsets whose members have pairwise disjoint `∂⁻` and pairwise disjoint
/// `∂⁺`.
pub fn well_formed_subsets(k: &FreeDirectedComplex, n: usize) -> Result<Vec<Multiset>, CellError> {
    assert!(n > 0, "well-formed subsets are enumerated in positive dimension");
    let gens = k.basis(n);
    let parts: Vec<(Multiset, Multiset)> = gens
        .iter()
        .map(|g| k.generator_boundary(g).map(|v| v.parts()))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn go(
        i: usize,
        parts: &[(Multiset, Multiset)],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), CellError> {
        if i == parts.len() {
            out.push(chosen.clone());
            return Ok(());
        }
        go(i + 1, parts, chosen, out)?;
        let (xn, xp) = &parts[i];
        let mut compatible = true;
        for &j in chosen.iter() {
            let (yn, yp) = &parts[j];
            if !xn.is_disjoint(yn)? || !xp.is_disjoint(yp)? {
                compatible = false;
                break;
            }
        }
        if compatible {
            chosen.push(i);
            go(i + 1, parts, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }

    go(0, &parts, &mut chosen, &mut out)?;
    let mut sets = out
        .into_iter()
        .map(|idx| Multiset::from_generators(n, idx.into_iter().map(|i| gens[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    sets.sort();
    Ok(sets)
}

/// Enumerates the cells of `𝒪C` of dimension at most `max_dim`. Fails with
/// [`CellError::LimitExceeded`] once more than `limit` cells are found.
///
/// A structure with no generators has no cells at all, and the catalog is
/// then empty rather than a list of zero counts.
pub fn enumerate_cells(b: &AdditiveParityStructure, max_dim: usize, limit: usize) -> Result<CellCatalog, CellError> {
    if !validate(b).flags.weakly_loop_free {
        return Err(CellError::NotWeaklyLoopFree);
    }
    let k = FreeDirectedComplex::from_structure(b);
    if !k.is_augmented() {
        return Err(CellError::MissingAugmentation);
    }
    if b.generators(0).is_empty() {
        return Ok(CellCatalog::default());
    }

    let mut total = 0usize;
    let bump = |total: &mut usize| {
        *total += 1;
        if *total > limit {
            Err(CellError::LimitExceeded(limit))
        } else {
            Ok(())
        }
    };

    let mut by_dim: Vec<Vec<CellTable>> = Vec::with_capacity(max_dim + 1);
    let mut points = Vec::new();
    for v in b.generators(0) {
        bump(&mut total)?;
        points.push(CellTable::point(v.clone()));
    }
    points.sort();
    by_dim.push(points);

    for n in 1..=max_dim {
        let tops: Vec<(Multiset, Multiset, Multiset)> = well_formed_subsets(&k, n)?
            .into_iter()
            .map(|t| {
                let (dn, dp) = k.reduced_faces(&t)?;
                Ok((t, dn, dp))
            })
            .collect::<Result<_, CellError>>()?;
        let mut found = BTreeSet::new();
        for s in &by_dim[n - 1] {
            let m = s.top();
            for (t, dn, dp) in &tops {
                if !dn.is_le(m)? {
                    continue;
                }
                let p = m.difference(dn)?.disjoint_union(dp)?;
                let mut neg = s.neg()[..n - 1].to_vec();
                let mut pos = s.pos()[..n - 1].to_vec();
                neg.extend([m.clone(), t.clone()]);
                pos.extend([p, t.clone()]);
                let cell = CellTable::new(neg, pos)?;
                if validate_cell(&k, &cell, CellMode::Nu)?.is_valid() && found.insert(cell) {
                    bump(&mut total)?;
                }
            }
        }
        by_dim.push(found.into_iter().collect());
    }
    Ok(CellCatalog { by_dim })
}
