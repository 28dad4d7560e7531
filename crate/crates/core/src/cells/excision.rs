use std::collections::BTreeSet;

use super::{validate_cell, CellError, CellMode, CellTable};
use crate::chain::FreeDirectedComplex;
use crate::multiset::{GeneratorId, Multiset, SignedVector};
use crate::order::{linearize, Witness};

/// Splits an `n`-cell with top `{b₁, …, bₖ}` into `k` cells with singleton
/// tops whose `(n−1)`-composite is the input. The members are ordered so that
/// `bᵢ` precedes `bⱼ` whenever `∂⁺bᵢ` meets `∂⁻bⱼ`. A cell with empty top
/// yields no slices.
pub fn excision_decompose(k: &FreeDirectedComplex, t: &CellTable) -> Result<Vec<CellTable>, CellError> {
    let n = t.dim();
    if n == 0 {
        return Err(CellError::FaceOutOfRange { k: 0, dim: 0 });
    }
    if let super::Validity::Invalid(reason) = validate_cell(k, t, CellMode::Rho)? {
        return Err(CellError::Invalid(reason));
    }

    let members: Vec<GeneratorId> = t
        .top()
        .iter()
        .flat_map(|(g, c)| std::iter::repeat_n(g.clone(), c as usize))
        .collect();
    if members.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<(Multiset, Multiset)> = members
        .iter()
        .map(|g| k.generator_boundary(g).map(SignedVector::parts))
        .collect::<Result<_, _>>()?;
    let mut edges = BTreeSet::new();
    for (i, (_, pi)) in parts.iter().enumerate() {
        for (j, (nj, _)) in parts.iter().enumerate() {
            if i != j && !pi.is_disjoint(nj)? {
                edges.insert((i, j));
            }
        }
    }
    let indices: Vec<usize> = (0..members.len()).collect();
    let order = match linearize(&indices, &edges) {
        Witness::Order(order) => order,
        Witness::Cycle(_) => return Err(CellError::NotWeaklyLoopFree),
    };

    let mut slices = Vec::with_capacity(order.len());
    let mut current = t.neg()[n - 1].clone();
    for i in order {
        let (dn, dp) = &parts[i];
        let next = SignedVector::from_multiset(&current)?
            .sub(&SignedVector::from_multiset(dn)?)?
            .add(&SignedVector::from_multiset(dp)?)?
            .as_positive()
            .ok_or_else(|| CellError::Internal(format!("slice through {} leaves a negative column", members[i])))?;
        let top = Multiset::singleton(members[i].clone());
        let mut neg = t.neg()[..n - 1].to_vec();
        let mut pos = t.pos()[..n - 1].to_vec();
        neg.extend([current.clone(), top.clone()]);
        pos.extend([next.clone(), top]);
        slices.push(CellTable::new(neg, pos)?);
        current = next;
    }
    if current != t.pos()[n - 1] {
        return Err(CellError::Internal("slices do not end at the target".into()));
    }
    Ok(slices)
}

/// Composes a non-empty sequence of `n`-cells along dimension `n − 1`.
pub fn recompose(slices: &[CellTable]) -> Result<Option<CellTable>, CellError> {
    let mut iter = slices.iter();
    let Some(first) = iter.next() else {
        return Ok(None);
    };
    let k = first.dim().saturating_sub(1);
    let mut acc = first.clone();
    for s in iter {
        acc = acc.compose(s, k)?;
    }
    Ok(Some(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::tests::table;
    use crate::cells::{atom, enumerate_cells, DEFAULT_CELL_LIMIT};
    use crate::families::{cube, oriental};

    #[test]
    fn path_splits_into_edges() {
        let o2 = oriental(2).unwrap();
        let k = FreeDirectedComplex::from_structure(&o2);
        let path = table(&o2, &[&["0"], &["01", "12"]], &[&["2"], &["01", "12"]]);
        let slices = excision_decompose(&k, &path).unwrap();
        assert_eq!(
            slices,
            vec![
                atom(&o2, o2.lookup("01", 1).unwrap()).unwrap(),
                atom(&o2, o2.lookup("12", 1).unwrap()).unwrap()
            ]
        );
        assert_eq!(recompose(&slices).unwrap().unwrap(), path);
    }

    #[test]
    fn every_cube_cell_recomposes() {
        let c2 = cube(2).unwrap();
        let k = FreeDirectedComplex::from_structure(&c2);
        let catalog = enumerate_cells(&c2, 2, DEFAULT_CELL_LIMIT).unwrap();
        for cell in catalog.iter().filter(|c| c.dim() > 0) {
            let slices = excision_decompose(&k, cell).unwrap();
            assert_eq!(slices.len(), cell.top().support_len());
            for s in &slices {
                assert!(validate_cell(&k, s, CellMode::Nu).unwrap().is_valid());
            }
            if let Some(whole) = recompose(&slices).unwrap() {
                assert_eq!(&whole, cell);
            } else {
                assert!(cell.is_identity());
            }
        }
    }

    #[test]
    fn point_cannot_be_excised() {
        let o2 = oriental(2).unwrap();
        let k = FreeDirectedComplex::from_structure(&o2);
        let p = CellTable::point(o2.lookup("0", 0).unwrap().clone());
        assert!(excision_decompose(&k, &p).is_err());
    }
}
