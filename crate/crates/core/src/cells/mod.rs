//! Cells of the ω-categories generated by a free augmented directed complex.
//!
//! A [`CellTable`] of dimension `n` is a double row of positive chains
//! `M₀ … Mₙ` / `P₀ … Pₙ` with `Mₙ = Pₙ`. It is a cell of `ρK` when every
//! column satisfies the boundary condition `∂(row_{k+1}) = Pₖ − Mₖ`, and a
//! cell of `νK` when moreover `M₀` and `P₀` have augmentation 1.

mod closure;
mod enumerate;
mod excision;

use std::fmt;

use thiserror::Error;

pub use closure::{AtomClosure, AtomExpression};
pub use enumerate::{enumerate_cells, well_formed_subsets, CellCatalog, DEFAULT_CELL_LIMIT};
pub use excision::{excision_decompose, recompose};

use crate::chain::{ChainError, FreeDirectedComplex};
use crate::multiset::{GeneratorId, Multiset, MultisetError, SignedVector};
use crate::structure::{AdditiveParityStructure, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("malformed cell table: {0}")]
    Malformed(String),
    #[error("face index {k} is not below the cell dimension {dim}")]
    FaceOutOfRange { k: usize, dim: usize },
    #[error("cells of dimension {left} and {right} cannot be composed")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cells are not composable along dimension {k}")]
    NotComposable { k: usize },
    #[error("composite columns overlap in dimension {column}")]
    Overlap { column: usize },
    #[error("the complex carries no augmentation")]
    MissingAugmentation,
    #[error("structure is not weakly loop-free")]
    NotWeaklyLoopFree,
    #[error("enumeration exceeded the limit of {0} cells")]
    LimitExceeded(usize),
    #[error("cell is not valid: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Which ω-category a table is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellMode {
    /// Positivity, boundary conditions and `Mₙ = Pₙ`.
    Rho,
    /// As `Rho`, plus `ε(M₀) = ε(P₀) = 1`.
    Nu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Source,
    Target,
}

/// A table of positive chains; column `k` holds multisets of dimension `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellTable {
    neg: Vec<Multiset>,
    pos: Vec<Multiset>,
}

impl CellTable {
    /// Checks the shape only: equal row lengths and column dimensions.
    pub fn new(neg: Vec<Multiset>, pos: Vec<Multiset>) -> Result<Self, CellError> {
        if neg.is_empty() || neg.len() != pos.len() {
            return Err(CellError::Malformed(format!(
                "rows have lengths {} and {}",
                neg.len(),
                pos.len()
            )));
        }
        for (k, (m, p)) in neg.iter().zip(&pos).enumerate() {
            if m.dim() != k || p.dim() != k {
                return Err(CellError::Malformed(format!("column {k} has the wrong dimension")));
            }
        }
        Ok(Self { neg, pos })
    }

    /// The 0-cell of a point.
    pub fn point(v: GeneratorId) -> Self {
        let m = Multiset::singleton(v);
        Self {
            neg: vec![m.clone()],
            pos: vec![m],
        }
    }

    pub fn dim(&self) -> usize {
        self.neg.len() - 1
    }

    pub fn neg(&self) -> &[Multiset] {
        &self.neg
    }

    pub fn pos(&self) -> &[Multiset] {
        &self.pos
    }

    /// The top column `Mₙ` (equal to `Pₙ` in a valid cell).
    pub fn top(&self) -> &Multiset {
        &self.neg[self.dim()]
    }

    pub fn is_identity(&self) -> bool {
        self.dim() > 0 && self.top().is_empty() && self.pos[self.dim()].is_empty()
    }

    pub fn columns_are_subsets(&self) -> bool {
        self.neg.iter().chain(&self.pos).all(Multiset::is_radical)
    }

    /// The `k`-source or `k`-target: the first `k` columns, then `(Mₖ, Mₖ)`
    /// or `(Pₖ, Pₖ)`.
    pub fn face(&self, k: usize, sign: Sign) -> Result<CellTable, CellError> {
        if k >= self.dim() {
            return Err(CellError::FaceOutOfRange { k, dim: self.dim() });
        }
        let mut neg = self.neg[..k].to_vec();
        let mut pos = self.pos[..k].to_vec();
        let last = match sign {
            Sign::Source => self.neg[k].clone(),
            Sign::Target => self.pos[k].clone(),
        };
        neg.push(last.clone());
        pos.push(last);
        Ok(CellTable { neg, pos })
    }

    pub fn source(&self, k: usize) -> Result<CellTable, CellError> {
        self.face(k, Sign::Source)
    }

    pub fn target(&self, k: usize) -> Result<CellTable, CellError> {
        self.face(k, Sign::Target)
    }

    /// The identity `(n+1)`-cell: same columns plus a column of zeros.
    pub fn identity(&self) -> CellTable {
        let d = self.dim() + 1;
        let mut neg = self.neg.clone();
        let mut pos = self.pos.clone();
        neg.push(Multiset::empty(d));
        pos.push(Multiset::empty(d));
        CellTable { neg, pos }
    }

    fn check_composable(&self, other: &Self, k: usize) -> Result<(), CellError> {
        if self.dim() != other.dim() {
            return Err(CellError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if k >= self.dim() || self.target(k)? != other.source(k)? {
            return Err(CellError::NotComposable { k });
        }
        Ok(())
    }

    pub fn is_composable(&self, other: &Self, k: usize) -> bool {
        self.check_composable(other, k).is_ok()
    }

    /// `self ∘ₖ other`: columns up to `k` from the negative row of `self` and
    /// the positive row of `other`, columns above `k` summed.
    pub fn compose(&self, other: &Self, k: usize) -> Result<CellTable, CellError> {
        self.check_composable(other, k)?;
        let n = self.dim();
        let mut neg = Vec::with_capacity(n + 1);
        let mut pos = Vec::with_capacity(n + 1);
        for j in 0..=n {
            if j <= k {
                neg.push(self.neg[j].clone());
                pos.push(other.pos[j].clone());
            } else {
                neg.push(self.neg[j].disjoint_union(&other.neg[j])?);
                pos.push(self.pos[j].disjoint_union(&other.pos[j])?);
            }
        }
        Ok(CellTable { neg, pos })
    }

    /// Composite of subset tables: as [`CellTable::compose`], but the summed
    /// columns must be disjoint, so the sums are unions.
    pub fn compose_disjoint(&self, other: &Self, k: usize) -> Result<CellTable, CellError> {
        self.check_composable(other, k)?;
        for j in k + 1..=self.dim() {
            if !self.neg[j].is_disjoint(&other.neg[j])? || !self.pos[j].is_disjoint(&other.pos[j])? {
                return Err(CellError::Overlap { column: j });
            }
        }
        self.compose(other, k)
    }

    /// Column-wise image under a map of chains.
    pub fn map_columns<F>(&self, mut f: F) -> Result<CellTable, CellError>
    where
        F: FnMut(&Multiset) -> Result<Multiset, CellError>,
    {
        let neg = self.neg.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        let pos = self.pos.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        CellTable::new(neg, pos)
    }
}

impl fmt::Display for CellTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[Multiset]| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}; {})", row(&self.neg), row(&self.pos))
    }
}

impl fmt::Debug for CellTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of [`validate_cell`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Checks the table conditions of `ρK` (and `νK` in [`CellMode::Nu`]).
pub fn validate_cell(k: &FreeDirectedComplex, t: &CellTable, mode: CellMode) -> Result<Validity, CellError> {
    for col in t.neg.iter().chain(&t.pos) {
        if let Some(g) = col.support().find(|g| !k.contains(g)) {
            return Err(ChainError::UnknownGenerator(g.clone()).into());
        }
    }
    if mode == CellMode::Nu && !k.is_augmented() {
        return Err(CellError::MissingAugmentation);
    }
    let n = t.dim();
    if t.neg[n] != t.pos[n] {
        return Ok(Validity::Invalid(format!(
            "top columns differ: {} vs {}",
            t.neg[n], t.pos[n]
        )));
    }
    for j in 0..n {
        let expected = SignedVector::from_parts(&t.neg[j], &t.pos[j])?;
        for (label, row) in [("negative", &t.neg), ("positive", &t.pos)] {
            let actual = k.boundary_of(&row[j + 1])?;
            if actual != expected {
                return Ok(Validity::Invalid(format!(
                    "∂ of {label} column {} is {actual}, expected {expected}",
                    j + 1
                )));
            }
        }
    }
    if mode == CellMode::Nu {
        for (label, col) in [("M₀", &t.neg[0]), ("P₀", &t.pos[0])] {
            if col.total()? != 1 {
                return Ok(Validity::Invalid(format!(
                    "{label} = {col} does not have augmentation 1"
                )));
            }
        }
    }
    Ok(Validity::Valid)
}

/// The atom `⟨x⟩`. For a structure with subset faces this is `(μ(x), π(x))`;
/// otherwise the columns are the iterated reduced faces `(∂∓)ᵐx`.
pub fn atom(b: &AdditiveParityStructure, x: &GeneratorId) -> Result<CellTable, CellError> {
    let (neg, pos) = if b.has_subset_faces() {
        b.mu_pi(x)?
    } else {
        b.iterated_faces(x)?
    };
    CellTable::new(neg, pos)
}

/// The atom `⟨x⟩` computed in the chain complex by alternating boundaries and
/// parts.
pub fn chain_atom(k: &FreeDirectedComplex, x: &GeneratorId) -> Result<CellTable, CellError> {
    let (neg, pos) = k.iterated_parts(x)?;
    CellTable::new(neg, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{globe, oriental};

    pub(crate) fn set(b: &AdditiveParityStructure, dim: usize, names: &[&str]) -> Multiset {
        Multiset::from_generators(dim, names.iter().map(|n| b.lookup(n, dim).unwrap().clone())).unwrap()
    }

    pub(crate) fn table(b: &AdditiveParityStructure, neg: &[&[&str]], pos: &[&[&str]]) -> CellTable {
        let row = |r: &[&[&str]]| r.iter().enumerate().map(|(k, names)| set(b, k, names)).collect();
        CellTable::new(row(neg), row(pos)).unwrap()
    }

    #[test]
    fn validate_examples() {
        let o2 = oriental(2).unwrap();
        let k = FreeDirectedComplex::from_structure(&o2);
        let t = table(&o2, &[&["0"], &["02"], &["012"]], &[&["2"], &["01", "12"], &["012"]]);
        assert_eq!(validate_cell(&k, &t, CellMode::Nu).unwrap(), Validity::Valid);
        let id = table(&o2, &[&["0"], &[]], &[&["0"], &[]]);
        assert!(validate_cell(&k, &id, CellMode::Nu).unwrap().is_valid());
        let bad = table(&o2, &[&["0"], &["01"]], &[&["2"], &["01"]]);
        assert!(!validate_cell(&k, &bad, CellMode::Nu).unwrap().is_valid());
        let two_points = table(&o2, &[&["0", "1"]], &[&["0", "1"]]);
        assert!(validate_cell(&k, &two_points, CellMode::Rho).unwrap().is_valid());
        assert!(!validate_cell(&k, &two_points, CellMode::Nu).unwrap().is_valid());
    }

    #[test]
    fn faces_and_identities() {
        let o2 = oriental(2).unwrap();
        let a = atom(&o2, o2.lookup("012", 2).unwrap()).unwrap();
        assert_eq!(
            a.face(1, Sign::Source).unwrap(),
            table(&o2, &[&["0"], &["02"]], &[&["2"], &["02"]])
        );
        assert_eq!(a.face(2, Sign::Source), Err(CellError::FaceOutOfRange { k: 2, dim: 2 }));
        let p = CellTable::point(o2.lookup("0", 0).unwrap().clone());
        assert_eq!(p.identity(), table(&o2, &[&["0"], &[]], &[&["0"], &[]]));
        assert_eq!(a.identity().source(2).unwrap(), a);
        assert_eq!(a.identity().target(2).unwrap(), a);
        assert!(a.identity().is_identity());
    }

    #[test]
    fn composition() {
        let o2 = oriental(2).unwrap();
        let e01 = atom(&o2, o2.lookup("01", 1).unwrap()).unwrap();
        let e12 = atom(&o2, o2.lookup("12", 1).unwrap()).unwrap();
        assert_eq!(
            e01.compose(&e12, 0).unwrap(),
            table(&o2, &[&["0"], &["01", "12"]], &[&["2"], &["01", "12"]])
        );
        assert_eq!(e12.compose(&e01, 0), Err(CellError::NotComposable { k: 0 }));
        let unit = e01.target(0).unwrap().identity();
        assert_eq!(e01.compose(&unit, 0).unwrap(), e01);

        let g2 = globe(2).unwrap();
        let f = atom(&g2, g2.lookup("top", 2).unwrap()).unwrap();
        let lifted = f.target(0).unwrap().identity().identity();
        assert_eq!(f.compose(&lifted, 0).unwrap(), f);
    }

    #[test]
    fn disjoint_composition_rejects_overlap() {
        let o2 = oriental(2).unwrap();
        let e01 = atom(&o2, o2.lookup("01", 1).unwrap()).unwrap();
        // an ill-formed ρ-table composable with itself along 0 at a loop
        let loop_cell = table(&o2, &[&["1"], &["01"]], &[&["1"], &["01"]]);
        assert!(matches!(
            loop_cell.compose_disjoint(&loop_cell, 0),
            Err(CellError::Overlap { column: 1 })
        ));
        assert!(loop_cell.compose(&loop_cell, 0).is_ok());
        assert!(e01.compose_disjoint(&e01.target(0).unwrap().identity(), 0).is_ok());
    }

    #[test]
    fn atoms() {
        let g2 = globe(2).unwrap();
        let f = atom(&g2, g2.lookup("top", 2).unwrap()).unwrap();
        assert_eq!(
            f,
            table(&g2, &[&["e0-"], &["e1-"], &["top"]], &[&["e0+"], &["e1+"], &["top"]])
        );
        let o2 = oriental(2).unwrap();
        let x = o2.lookup("012", 2).unwrap();
        let a = atom(&o2, x).unwrap();
        assert_eq!(
            a,
            table(&o2, &[&["0"], &["02"], &["012"]], &[&["2"], &["01", "12"], &["012"]])
        );
        let k = FreeDirectedComplex::from_structure(&o2);
        assert_eq!(chain_atom(&k, x).unwrap(), a);
        let v = o2.lookup("1", 0).unwrap();
        assert_eq!(atom(&o2, v).unwrap(), CellTable::point(v.clone()));
    }
}
