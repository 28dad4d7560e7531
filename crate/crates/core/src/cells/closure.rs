//! Expressions in atoms, identities and composites, and the closure of the
//! atoms under those operations.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{atom, validate_cell, CellCatalog, CellError, CellMode, CellTable};
use crate::chain::FreeDirectedComplex;
use crate::multiset::GeneratorId;
use crate::structure::AdditiveParityStructure;
use crate::validate::validate;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AtomExpression {
    Atom(GeneratorId),
    Identity(Box<AtomExpression>),
    Compose {
        k: usize,
        left: Box<AtomExpression>,
        right: Box<AtomExpression>,
    },
}

impl AtomExpression {
    pub fn atom(x: GeneratorId) -> Self {
        AtomExpression::Atom(x)
    }

    pub fn identity(inner: AtomExpression) -> Self {
        AtomExpression::Identity(Box::new(inner))
    }

    pub fn compose(k: usize, left: AtomExpression, right: AtomExpression) -> Self {
        AtomExpression::Compose {
            k,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn evaluate(&self, b: &AdditiveParityStructure) -> Result<CellTable, CellError> {
        match self {
            AtomExpression::Atom(x) => atom(b, x),
            AtomExpression::Identity(inner) => Ok(inner.evaluate(b)?.identity()),
            AtomExpression::Compose { k, left, right } => left.evaluate(b)?.compose(&right.evaluate(b)?, *k),
        }
    }

    /// Number of atom occurrences.
    pub fn atom_count(&self) -> usize {
        match self {
            AtomExpression::Atom(_) => 1,
            AtomExpression::Identity(inner) => inner.atom_count(),
            AtomExpression::Compose { left, right, .. } => left.atom_count() + right.atom_count(),
        }
    }
}

impl fmt::Display for AtomExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomExpression::Atom(x) => write!(f, "⟨{x}⟩"),
            AtomExpression::Identity(inner) => write!(f, "id({inner})"),
            AtomExpression::Compose { k, left, right } => write!(f, "({left} ∘{k} {right})"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Atom,
    Identity(usize),
    Compose(usize, usize, usize),
}

/// The cells reachable from the atoms by identities and composites, each with
/// the first expression that produced it.
#[derive(Debug, Clone)]
pub struct AtomClosure {
    cells: Vec<CellTable>,
    nodes: Vec<Node>,
    index: HashMap<CellTable, usize>,
    max_dim: usize,
}

impl AtomClosure {
    /// Closes the valid atoms of dimension at most `max_dim` under identities
    /// and composites, stopping with [`CellError::LimitExceeded`] past
    /// `limit` cells. Composites are formed with disjoint unions, so an
    /// overlap surfaces as an error.
    pub fn generate(b: &AdditiveParityStructure, max_dim: usize, limit: usize) -> Result<Self, CellError> {
        if !validate(b).flags.weakly_loop_free {
            return Err(CellError::NotWeaklyLoopFree);
        }
        let k = FreeDirectedComplex::from_structure(b);
        if !k.is_augmented() {
            return Err(CellError::MissingAugmentation);
        }
        let mut closure = AtomClosure {
            cells: Vec::new(),
            nodes: Vec::new(),
            index: HashMap::new(),
            max_dim,
        };
        let mut queue = VecDeque::new();
        for x in b.iter().filter(|x| x.dim() <= max_dim) {
            let a = atom(b, x)?;
            if validate_cell(&k, &a, CellMode::Nu)?.is_valid() {
                closure.add(a, Node::Atom, &mut queue, limit)?;
            }
        }

        // sources[dim][k] and targets[dim][k] map a k-face to the cells of
        // that dimension having it
        let mut sources: Vec<Vec<HashMap<CellTable, Vec<usize>>>> =
            (0..=max_dim).map(|d| vec![HashMap::new(); d]).collect();
        let mut targets = sources.clone();

        while let Some(i) = queue.pop_front() {
            let cell = closure.cells[i].clone();
            let n = cell.dim();
            if n < max_dim {
                closure.add(cell.identity(), Node::Identity(i), &mut queue, limit)?;
            }
            for j in 0..n {
                let s = cell.source(j)?;
                let t = cell.target(j)?;
                sources[n][j].entry(s.clone()).or_default().push(i);
                targets[n][j].entry(t.clone()).or_default().push(i);
                let after: Vec<usize> = sources[n][j].get(&t).cloned().unwrap_or_default();
                for other in after {
                    let c = cell.compose_disjoint(&closure.cells[other], j)?;
                    closure.add(c, Node::Compose(j, i, other), &mut queue, limit)?;
                }
                let before: Vec<usize> = targets[n][j].get(&s).cloned().unwrap_or_default();
                for other in before {
                    let c = closure.cells[other].compose_disjoint(&cell, j)?;
                    closure.add(c, Node::Compose(j, other, i), &mut queue, limit)?;
                }
            }
        }
        Ok(closure)
    }

    fn add(&mut self, cell: CellTable, node: Node, queue: &mut VecDeque<usize>, limit: usize) -> Result<(), CellError> {
        if self.index.contains_key(&cell) {
            return Ok(());
        }
        if self.cells.len() >= limit {
            return Err(CellError::LimitExceeded(limit));
        }
        let i = self.cells.len();
        self.index.insert(cell.clone(), i);
        self.cells.push(cell);
        self.nodes.push(node);
        queue.push_back(i);
        Ok(())
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, t: &CellTable) -> bool {
        self.index.contains_key(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CellTable> + '_ {
        self.cells.iter()
    }

    /// Number of generated cells in each dimension up to the highest one
    /// present.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for c in &self.cells {
            if counts.len() <= c.dim() {
                counts.resize(c.dim() + 1, 0);
            }
            counts[c.dim()] += 1;
        }
        counts
    }

    /// An expression in atoms evaluating to `t`, if `t` was generated.
    pub fn expression(&self, t: &CellTable) -> Option<AtomExpression> {
        self.index.get(t).map(|&i| self.build(i))
    }

    fn build(&self, i: usize) -> AtomExpression {
        match self.nodes[i] {
            Node::Atom => {
                let top = self.cells[i].top();
                AtomExpression::Atom(top.as_singleton().expect("atom has a singleton top").clone())
            }
            Node::Identity(j) => AtomExpression::identity(self.build(j)),
            Node::Compose(k, l, r) => AtomExpression::compose(k, self.build(l), self.build(r)),
        }
    }

    /// Cells of `catalog` that the closure does not reach.
    pub fn missing<'a>(&self, catalog: &'a CellCatalog) -> Vec<&'a CellTable> {
        catalog.iter().filter(|c| !self.contains(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{enumerate_cells, DEFAULT_CELL_LIMIT};
    use crate::families::{globe, oriental};

    #[test]
    fn oriental_two_is_generated() {
        let o2 = oriental(2).unwrap();
        let catalog = enumerate_cells(&o2, 2, DEFAULT_CELL_LIMIT).unwrap();
        let closure = AtomClosure::generate(&o2, 2, DEFAULT_CELL_LIMIT).unwrap();
        assert!(closure.missing(&catalog).is_empty());
        assert_eq!(closure.counts(), catalog.counts());
        for cell in catalog.iter() {
            let e = closure.expression(cell).unwrap();
            assert_eq!(&e.evaluate(&o2).unwrap(), cell);
        }
    }

    #[test]
    fn expression_display() {
        let g1 = globe(1).unwrap();
        let top = g1.lookup("top", 1).unwrap().clone();
        let e = AtomExpression::compose(
            0,
            AtomExpression::atom(top.clone()),
            AtomExpression::identity(AtomExpression::atom(g1.lookup("e0+", 0).unwrap().clone())),
        );
        assert_eq!(e.to_string(), "(⟨top⟩ ∘0 id(⟨e0+⟩))");
        assert_eq!(e.evaluate(&g1).unwrap(), atom(&g1, &top).unwrap());
        assert_eq!(e.atom_count(), 2);
    }
}
