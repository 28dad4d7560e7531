use std::collections::{BTreeSet, HashMap};

use paritykit::cells::{validate_cell, CellMode, CellTable};
use paritykit::chain::FreeDirectedComplex;
use paritykit::multiset::{GeneratorId, Multiset, SignedVector};
use paritykit::structure::{AdditiveParityStructure, MoveMode};

/// All multisets over `gens` with every count at most `max`.
pub fn bounded_multisets(dim: usize, gens: &[GeneratorId], max: u64) -> Vec<Multiset> {
    let mut out = vec![Multiset::empty(dim)];
    for g in gens {
        let mut next = Vec::new();
        for m in &out {
            for c in 0..=max {
                let add = Multiset::from_counts(dim, [(g.clone(), c)]).unwrap();
                next.push(m.disjoint_union(&add).unwrap());
            }
        }
        out = next;
    }
    out
}

/// Every table with counts at most `max` satisfying the νK conditions,
/// built column by column: column `j + 1` pairs are drawn from the
/// multisets whose boundary is `Pⱼ − Mⱼ`.
pub fn brute_force_cells(b: &AdditiveParityStructure, max_dim: usize, max: u64) -> Vec<BTreeSet<CellTable>> {
    let k = FreeDirectedComplex::from_structure(b);
    let mut by_boundary: Vec<HashMap<SignedVector, Vec<Multiset>>> = vec![HashMap::new()];
    for d in 1..=max_dim {
        let mut map: HashMap<SignedVector, Vec<Multiset>> = HashMap::new();
        for m in bounded_multisets(d, b.generators(d), max) {
            map.entry(k.boundary_of(&m).unwrap()).or_default().push(m);
        }
        by_boundary.push(map);
    }
    let zero: Vec<Multiset> = bounded_multisets(0, b.generators(0), max)
        .into_iter()
        .filter(|m| m.total().unwrap() == 1)
        .collect();

    // partial tables: (neg row, pos row) with the boundary condition checked
    let mut partial: Vec<(Vec<Multiset>, Vec<Multiset>)> = Vec::new();
    for m in &zero {
        for p in &zero {
            partial.push((vec![m.clone()], vec![p.clone()]));
        }
    }
    let mut result = Vec::new();
    for d in 0..=max_dim {
        let cells: BTreeSet<CellTable> = partial
            .iter()
            .filter(|(n, p)| n[d] == p[d])
            .map(|(n, p)| CellTable::new(n.clone(), p.clone()).unwrap())
            .collect();
        for t in &cells {
            assert!(validate_cell(&k, t, CellMode::Nu).unwrap().is_valid());
        }
        result.push(cells);
        if d == max_dim {
            break;
        }
        let mut next = Vec::new();
        for (n, p) in &partial {
            let need = SignedVector::from_parts(&n[d], &p[d]).unwrap();
            let Some(candidates) = by_boundary[d + 1].get(&need) else {
                continue;
            };
            for x in candidates {
                for y in candidates {
                    let mut n2 = n.clone();
                    let mut p2 = p.clone();
                    n2.push(x.clone());
                    p2.push(y.clone());
                    next.push((n2, p2));
                }
            }
        }
        partial = next;
    }
    result
}

/// Counts the subset-valued maps from the `n`-globe that are morphisms of
/// weak parity complexes.
pub fn globe_morphisms(c: &AdditiveParityStructure, n: usize) -> usize {
    fn subsets(c: &AdditiveParityStructure, d: usize) -> Vec<Multiset> {
        bounded_multisets(d, c.generators(d), 1)
            .into_iter()
            .filter(|s| c.is_well_formed(s).unwrap())
            .collect()
    }
    // (image of e_{k}⁻, image of e_{k}⁺) for k below the current level
    fn go(c: &AdditiveParityStructure, n: usize, k: usize, below: Option<(Multiset, Multiset)>) -> usize {
        let options = subsets(c, k);
        let moves = |s: &Multiset| match &below {
            None => true,
            Some((m, p)) => c.moves(s, m, p, MoveMode::Subset).unwrap(),
        };
        if k == n {
            return options.iter().filter(|s| moves(s)).count();
        }
        let mut total = 0;
        for lo in options.iter().filter(|s| moves(s)) {
            for hi in options.iter().filter(|s| moves(s)) {
                total += go(c, n, k + 1, Some((lo.clone(), hi.clone())));
            }
        }
        total
    }
    go(c, n, 0, None)
}
