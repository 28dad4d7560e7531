//! The free directed chain complex `ℤB` on an additive parity structure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::multiset::{GeneratorId, Multiset, MultisetError, SignedVector};
use crate::structure::{AdditiveParityStructure, StructureBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(GeneratorId),
    #[error("boundary of {0:?} is not in the dimension below")]
    BadBoundary(GeneratorId),
    #[error("dimension 0 has no boundary")]
    DimensionZero,
    #[error("the complex carries no augmentation")]
    MissingAugmentation,
}

/// A free chain complex with a chosen basis, boundaries on basis elements and
/// optionally the canonical augmentation sending every 0-dimensional basis
/// element to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeDirectedComplex {
    basis: Vec<Vec<GeneratorId>>,
    boundary: BTreeMap<GeneratorId, SignedVector>,
    augmented: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    /// `∂∂x = 0` for every basis element.
    pub boundary_squared_zero: bool,
    /// Generators with `∂∂x ≠ 0`.
    pub offending: Vec<GeneratorId>,
    /// `∂⁻x` and `∂⁺x` are basis elements for every `x` of dimension 1.
    pub normal: bool,
    /// `ε((∂⁻)ⁿx) = ε((∂⁺)ⁿx) = 1` for every basis element.
    pub unital: bool,
    /// `ε∂ = 0` in dimension 1; `None` when no augmentation is attached.
    pub augmentation_ok: Option<bool>,
}

impl FreeDirectedComplex {
    /// Builds a complex from explicit boundaries. Basis elements of positive
    /// dimension missing from `boundary` have zero boundary.
    pub fn new(
        basis: impl IntoIterator<Item = GeneratorId>,
        boundary: BTreeMap<GeneratorId, SignedVector>,
        augmented: bool,
    ) -> Result<Self, ChainError> {
        let mut graded: Vec<Vec<GeneratorId>> = Vec::new();
        for g in basis {
            if graded.len() <= g.dim() {
                graded.resize(g.dim() + 1, Vec::new());
            }
            graded[g.dim()].push(g);
        }
        for layer in &mut graded {
            layer.sort();
            layer.dedup();
        }
        let known = |g: &GeneratorId| graded.get(g.dim()).is_some_and(|l| l.binary_search(g).is_ok());
        for (g, v) in &boundary {
            if !known(g) {
                return Err(ChainError::UnknownGenerator(g.clone()));
            }
            if g.dim() == 0 || v.dim() + 1 != g.dim() {
                return Err(ChainError::BadBoundary(g.clone()));
            }
            if let Some((h, _)) = v.iter().find(|(h, _)| !known(h)) {
                return Err(ChainError::UnknownGenerator(h.clone()));
            }
        }
        let mut boundary = boundary;
        for g in graded.iter().flatten().filter(|g| g.dim() > 0) {
            boundary
                .entry(g.clone())
                .or_insert_with(|| SignedVector::zero(g.dim() - 1));
        }
        Ok(Self {
            basis: graded,
            boundary,
            augmented,
        })
    }

    /// `∂x = ∂⁺x − ∂⁻x` on generators; the canonical augmentation is
    /// attached exactly when the structure is normal.
    pub fn from_structure(b: &AdditiveParityStructure) -> Self {
        let mut boundary = BTreeMap::new();
        for g in b.iter().filter(|g| g.dim() > 0) {
            let f = b.faces(g).expect("faces exist above dimension 0");
            let v = SignedVector::from_parts(&f.neg, &f.pos).expect("face counts fit in i64");
            boundary.insert(g.clone(), v);
        }
        let normal = b.generators(1).iter().all(|g| {
            let f = b.faces(g).expect("faces exist above dimension 0");
            f.neg.as_singleton().is_some() && f.pos.as_singleton().is_some()
        });
        Self::new(b.iter().cloned(), boundary, normal).expect("structure is internally consistent")
    }

    /// Reads off the faces `(∂⁻x, ∂⁺x)` of every basis element as the parts
    /// of its boundary.
    pub fn to_structure(&self) -> AdditiveParityStructure {
        let mut builder = StructureBuilder::new();
        for g in self.iter() {
            let (neg, pos) = match self.boundary.get(g) {
                Some(v) => v.parts(),
                None => (Multiset::empty(0), Multiset::empty(0)),
            };
            let list = |m: &Multiset| m.iter().map(|(h, c)| (h.name().to_string(), c)).collect();
            builder.push(g.name().to_string(), g.dim(), list(&neg), list(&pos));
        }
        builder.build().expect("basis of a complex is a valid structure")
    }

    pub fn basis(&self, dim: usize) -> &[GeneratorId] {
        self.basis.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneratorId> + '_ {
        self.basis.iter().flatten()
    }

    pub fn contains(&self, g: &GeneratorId) -> bool {
        self.basis(g.dim()).binary_search(g).is_ok()
    }

    pub fn dim_count(&self) -> usize {
        self.basis.iter().rposition(|l| !l.is_empty()).map_or(0, |t| t + 1)
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn generator_boundary(&self, g: &GeneratorId) -> Result<&SignedVector, ChainError> {
        if g.dim() == 0 {
            return Err(ChainError::DimensionZero);
        }
        self.boundary
            .get(g)
            .ok_or_else(|| ChainError::UnknownGenerator(g.clone()))
    }

    /// Linear extension of the boundary.
    pub fn boundary(&self, v: &SignedVector) -> Result<SignedVector, ChainError> {
        if v.dim() == 0 {
            return Err(ChainError::DimensionZero);
        }
        let mut out = SignedVector::zero(v.dim() - 1);
        for (g, c) in v.iter() {
            out = out.add(&self.generator_boundary(g)?.scale(c)?)?;
        }
        Ok(out)
    }

    pub fn boundary_of(&self, m: &Multiset) -> Result<SignedVector, ChainError> {
        self.boundary(&SignedVector::from_multiset(m)?)
    }

    /// Negative and positive parts of the boundary of a positive chain.
    pub fn reduced_faces(&self, m: &Multiset) -> Result<(Multiset, Multiset), ChainError> {
        Ok(self.boundary_of(m)?.parts())
    }

    /// Value of the canonical augmentation; `None` when none is attached.
    pub fn augmentation(&self, v: &SignedVector) -> Option<i64> {
        (self.augmented && v.dim() == 0).then(|| v.iter().map(|(_, c)| c).sum())
    }

    /// Well-formedness of a positive element: augmentation 1 in dimension 0;
    /// otherwise radical with pairwise disjoint `∂⁻` and pairwise disjoint
    /// `∂⁺` among its basis elements.
    pub fn is_well_formed_element(&self, v: &Multiset) -> Result<bool, ChainError> {
        if let Some(g) = v.support().find(|g| !self.contains(g)) {
            return Err(ChainError::UnknownGenerator(g.clone()));
        }
        if v.dim() == 0 {
            if !self.augmented {
                return Err(ChainError::MissingAugmentation);
            }
            return Ok(v.total()? == 1);
        }
        if !v.is_radical() {
            return Ok(false);
        }
        let parts: Vec<(Multiset, Multiset)> = v
            .support()
            .map(|g| self.generator_boundary(g).map(SignedVector::parts))
            .collect::<Result<_, _>>()?;
        for (i, (yn, yp)) in parts.iter().enumerate() {
            for (zn, zp) in &parts[i + 1..] {
                if !yn.is_disjoint(zn)? || !yp.is_disjoint(zp)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `(∂⁻)ᵐx` and `(∂⁺)ᵐx` for `m = 0..=dim x`, indexed by dimension,
    /// computed by alternately taking boundaries and parts.
    pub fn iterated_parts(&self, x: &GeneratorId) -> Result<(Vec<Multiset>, Vec<Multiset>), ChainError> {
        if !self.contains(x) {
            return Err(ChainError::UnknownGenerator(x.clone()));
        }
        let n = x.dim();
        let mut neg = vec![Multiset::empty(0); n + 1];
        let mut pos = vec![Multiset::empty(0); n + 1];
        neg[n] = Multiset::singleton(x.clone());
        pos[n] = Multiset::singleton(x.clone());
        for k in (1..=n).rev() {
            neg[k - 1] = self.reduced_faces(&neg[k])?.0;
            pos[k - 1] = self.reduced_faces(&pos[k])?.1;
        }
        Ok((neg, pos))
    }

    pub fn check(&self) -> ComplexReport {
        let mut offending = Vec::new();
        for (g, v) in &self.boundary {
            if g.dim() < 2 {
                continue;
            }
            match self.boundary(v) {
                Ok(dd) if dd.is_zero() => {}
                _ => offending.push(g.clone()),
            }
        }
        let normal = self.basis(1).iter().all(|g| {
            let (neg, pos) = self.boundary[g].parts();
            neg.as_singleton().is_some() && pos.as_singleton().is_some()
        });
        let unital = self.augmented
            && self.iter().all(|g| match self.iterated_parts(g) {
                Ok((neg, pos)) => neg[0].total() == Ok(1) && pos[0].total() == Ok(1),
                Err(_) => false,
            });
        let augmentation_ok = self.augmented.then(|| {
            self.basis(1)
                .iter()
                .all(|g| self.augmentation(&self.boundary[g]) == Some(0))
        });
        ComplexReport {
            boundary_squared_zero: offending.is_empty(),
            offending,
            normal,
            unital,
            augmentation_ok,
        }
    }

    /// One line per basis element of positive dimension: `x: +a -b`.
    pub fn boundary_report(&self) -> String {
        let mut out = String::new();
        for g in self.iter().filter(|g| g.dim() > 0) {
            let _ = writeln!(out, "{g} [{}]: {}", g.dim(), self.boundary[g]);
        }
        out
    }
}
