//! Additive parity structures and parity structures.
//!
//! An [`AdditiveParityStructure`] is a graded set in which every element of
//! dimension `n + 1` carries a pair of finite multisets of dimension-`n`
//! elements, its negative and positive faces. When every face multiset is a
//! subset the structure is also a parity structure; [`ParityStructure`] is the
//! checked wrapper for that case.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;

use thiserror::Error;

use crate::multiset::{GeneratorId, Multiset, MultisetError, SignedVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error("duplicate generator {name} in dimension {dim}")]
    DuplicateGenerator { name: String, dim: usize },
    #[error("unknown generator {name} in dimension {dim}")]
    UnknownGenerator { name: String, dim: usize },
    #[error("generator {0} has dimension 0 and cannot have faces")]
    FacesInDimensionZero(String),
    #[error("operation needs elements of dimension at least 1")]
    DimensionZeroInput,
    #[error("faces of {0} are not subsets")]
    NotParityStructure(String),
    #[error("{0} is not a subset")]
    NotASubset(String),
    #[error("{0} is not well-formed")]
    NotWellFormed(String),
}

/// Negative and positive faces of one generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Faces {
    pub neg: Multiset,
    pub pos: Multiset,
}

/// `Φ∓(S)` and the reduced faces `∂∓(S)` of a multiset `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceImages {
    pub phi_neg: Multiset,
    pub phi_pos: Multiset,
    pub neg: Multiset,
    pub pos: Multiset,
}

/// `S⁻`, `S⁺`, `S∓ = S⁻ \ S⁺` and `S± = S⁺ \ S⁻` of a subset `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFaces {
    pub neg: Multiset,
    pub pos: Multiset,
    pub neg_only: Multiset,
    pub pos_only: Multiset,
}

/// Which notion of movement [`AdditiveParityStructure::moves`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveMode {
    /// `∂⁻(S) = M \ P` and `∂⁺(S) = P \ M` as multisets.
    Additive,
    /// `S∓ = M \ P` and `S± = P \ M` for a well-formed subset `S`.
    Subset,
    /// Subset movement together with `M ∩ S⁺ = ∅` and `P ∩ S⁻ = ∅`.
    Strict,
}

#[derive(Debug, Clone, Default)]
struct RawElement {
    name: String,
    dim: usize,
    neg: Vec<(String, u64)>,
    pos: Vec<(String, u64)>,
}

/// Collects elements in any order and resolves face references on
/// [`StructureBuilder::build`].
#[derive(Debug, Clone, Default)]
pub struct StructureBuilder {
    elements: Vec<RawElement>,
}

impl StructureBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an element with no faces.
    pub fn generator(self, name: &str, dim: usize) -> Self {
        self.counted(name, dim, &[], &[])
    }

    /// Adds an element whose faces are subsets.
    pub fn element(self, name: &str, dim: usize, neg: &[&str], pos: &[&str]) -> Self {
        let neg: Vec<(&str, u64)> = neg.iter().map(|n| (*n, 1)).collect();
        let pos: Vec<(&str, u64)> = pos.iter().map(|n| (*n, 1)).collect();
        self.counted(name, dim, &neg, &pos)
    }

    /// Adds an element whose faces are multisets.
    pub fn counted(mut self, name: &str, dim: usize, neg: &[(&str, u64)], pos: &[(&str, u64)]) -> Self {
        self.push(
            name.to_string(),
            dim,
            neg.iter().map(|(n, c)| (n.to_string(), *c)).collect(),
            pos.iter().map(|(n, c)| (n.to_string(), *c)).collect(),
        );
        self
    }

    pub fn push(&mut self, name: String, dim: usize, neg: Vec<(String, u64)>, pos: Vec<(String, u64)>) {
        self.elements.push(RawElement { name, dim, neg, pos });
    }

    pub fn build(&self) -> Result<AdditiveParityStructure, StructureError> {
        let mut index: BTreeMap<(usize, &str), GeneratorId> = BTreeMap::new();
        for e in &self.elements {
            let g = GeneratorId::new(&e.name, e.dim)?;
            if index.insert((e.dim, e.name.as_str()), g).is_some() {
                return Err(StructureError::DuplicateGenerator {
                    name: e.name.clone(),
                    dim: e.dim,
                });
            }
        }
        let resolve = |dim: usize, list: &[(String, u64)]| -> Result<Multiset, StructureError> {
            let entries = list
                .iter()
                .map(|(n, c)| {
                    index
                        .get(&(dim, n.as_str()))
                        .cloned()
                        .map(|g| (g, *c))
                        .ok_or_else(|| StructureError::UnknownGenerator { name: n.clone(), dim })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Multiset::from_counts(dim, entries)?)
        };
        let top = self.elements.iter().map(|e| e.dim).max();
        let mut graded = vec![Vec::new(); top.map_or(0, |t| t + 1)];
        let mut faces = BTreeMap::new();
        for e in &self.elements {
            let g = index[&(e.dim, e.name.as_str())].clone();
            if e.dim == 0 {
                if !e.neg.is_empty() || !e.pos.is_empty() {
                    return Err(StructureError::FacesInDimensionZero(e.name.clone()));
                }
            } else {
                let neg = resolve(e.dim - 1, &e.neg)?;
                let pos = resolve(e.dim - 1, &e.pos)?;
                faces.insert(g.clone(), Faces { neg, pos });
            }
            graded[e.dim].push(g);
        }
        for layer in &mut graded {
            layer.sort();
        }
        Ok(AdditiveParityStructure { graded, faces })
    }
}

/// A graded set with multiset-valued negative and positive faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveParityStructure {
    graded: Vec<Vec<GeneratorId>>,
    faces: BTreeMap<GeneratorId, Faces>,
}

impl AdditiveParityStructure {
    pub fn builder() -> StructureBuilder {
        StructureBuilder::new()
    }

    pub fn empty() -> Self {
        Self {
            graded: Vec::new(),
            faces: BTreeMap::new(),
        }
    }

    /// Highest dimension with at least one generator.
    pub fn top_dim(&self) -> Option<usize> {
        self.graded.iter().rposition(|layer| !layer.is_empty())
    }

    /// Number of dimension slots, `top_dim + 1` (0 for the empty structure).
    pub fn dim_count(&self) -> usize {
        self.top_dim().map_or(0, |t| t + 1)
    }

    pub fn generators(&self, dim: usize) -> &[GeneratorId] {
        self.graded.get(dim).map_or(&[], Vec::as_slice)
    }

    /// All generators ordered by `(dim, name)`.
    pub fn iter(&self) -> impl Iterator<Item = &GeneratorId> + '_ {
        self.graded.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.graded.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, g: &GeneratorId) -> bool {
        self.generators(g.dim()).binary_search(g).is_ok()
    }

    pub fn lookup(&self, name: &str, dim: usize) -> Option<&GeneratorId> {
        self.generators(dim).iter().find(|g| g.name() == name)
    }

    /// Every generator named `name`, in any dimension.
    pub fn find_by_name(&self, name: &str) -> Vec<&GeneratorId> {
        self.iter().filter(|g| g.name() == name).collect()
    }

    /// Faces of a generator of dimension at least 1.
    pub fn faces(&self, g: &GeneratorId) -> Option<&Faces> {
        self.faces.get(g)
    }

    fn faces_of(&self, g: &GeneratorId) -> Result<&Faces, StructureError> {
        if g.dim() == 0 {
            return Err(StructureError::DimensionZeroInput);
        }
        self.faces.get(g).ok_or_else(|| StructureError::UnknownGenerator {
            name: g.name().to_string(),
            dim: g.dim(),
        })
    }

    fn check_known(&self, s: &Multiset) -> Result<(), StructureError> {
        match s.support().find(|g| !self.contains(g)) {
            Some(g) => Err(StructureError::UnknownGenerator {
                name: g.name().to_string(),
                dim: g.dim(),
            }),
            None => Ok(()),
        }
    }

    /// True when every face multiset is a subset.
    pub fn has_subset_faces(&self) -> bool {
        self.faces.values().all(|f| f.neg.is_radical() && f.pos.is_radical())
    }

    /// `Φ⁻(S)`, `Φ⁺(S)` and `∂⁻(S) = Φ⁻(S) \ Φ⁺(S)`, `∂⁺(S) = Φ⁺(S) \ Φ⁻(S)`.
    pub fn face_images(&self, s: &Multiset) -> Result<FaceImages, StructureError> {
        if s.dim() == 0 {
            return Err(StructureError::DimensionZeroInput);
        }
        let dim = s.dim() - 1;
        let mut phi_neg = Multiset::empty(dim);
        let mut phi_pos = Multiset::empty(dim);
        for (g, c) in s.iter() {
            let f = self.faces_of(g)?;
            phi_neg = phi_neg.disjoint_union(&f.neg.scale(c)?)?;
            phi_pos = phi_pos.disjoint_union(&f.pos.scale(c)?)?;
        }
        let neg = phi_neg.difference(&phi_pos)?;
        let pos = phi_pos.difference(&phi_neg)?;
        Ok(FaceImages {
            phi_neg,
            phi_pos,
            neg,
            pos,
        })
    }

    /// The boundary `Φ⁺(S) − Φ⁻(S)` of a positive chain.
    pub fn boundary(&self, s: &Multiset) -> Result<SignedVector, StructureError> {
        let images = self.face_images(s)?;
        Ok(SignedVector::from_parts(&images.phi_neg, &images.phi_pos)?)
    }

    /// Unions `S⁻`, `S⁺` and differences `S∓`, `S±` of a subset `S`.
    pub fn subset_faces(&self, s: &Multiset) -> Result<SubsetFaces, StructureError> {
        if s.dim() == 0 {
            return Err(StructureError::DimensionZeroInput);
        }
        if !s.is_radical() {
            return Err(StructureError::NotASubset(s.to_string()));
        }
        let dim = s.dim() - 1;
        let mut neg = Multiset::empty(dim);
        let mut pos = Multiset::empty(dim);
        for g in s.support() {
            let f = self.faces_of(g)?;
            if !f.neg.is_radical() || !f.pos.is_radical() {
                return Err(StructureError::NotParityStructure(g.name().to_string()));
            }
            neg = neg.join(&f.neg)?;
            pos = pos.join(&f.pos)?;
        }
        let neg_only = neg.difference(&pos)?;
        let pos_only = pos.difference(&neg)?;
        Ok(SubsetFaces {
            neg,
            pos,
            neg_only,
            pos_only,
        })
    }

    /// Well-formedness of a subset: a singleton in dimension 0; otherwise
    /// distinct members have disjoint negative faces and disjoint positive
    /// faces. A multiset with a repeated element is never well-formed.
    pub fn is_well_formed(&self, s: &Multiset) -> Result<bool, StructureError> {
        self.check_known(s)?;
        if !s.is_radical() {
            return Ok(false);
        }
        if s.dim() == 0 {
            return Ok(s.support_len() == 1);
        }
        let members: Vec<&Faces> = s.support().map(|g| self.faces_of(g)).collect::<Result<_, _>>()?;
        for (i, x) in members.iter().enumerate() {
            for y in &members[i + 1..] {
                if !x.neg.is_disjoint(&y.neg)? || !x.pos.is_disjoint(&y.pos)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `μ(x)₀…μ(x)ₙ` and `π(x)₀…π(x)ₙ`, by downward recursion from `{x}`.
    pub fn mu_pi(&self, x: &GeneratorId) -> Result<(Vec<Multiset>, Vec<Multiset>), StructureError> {
        if !self.contains(x) {
            return Err(StructureError::UnknownGenerator {
                name: x.name().to_string(),
                dim: x.dim(),
            });
        }
        let n = x.dim();
        let mut mu = vec![Multiset::empty(0); n + 1];
        let mut pi = vec![Multiset::empty(0); n + 1];
        mu[n] = Multiset::singleton(x.clone());
        pi[n] = Multiset::singleton(x.clone());
        for k in (1..=n).rev() {
            mu[k - 1] = self.subset_faces(&mu[k])?.neg_only;
            pi[k - 1] = self.subset_faces(&pi[k])?.pos_only;
        }
        Ok((mu, pi))
    }

    /// Iterated reduced faces `(∂⁻)ᵐx`, `(∂⁺)ᵐx`, indexed by dimension: the
    /// columns of the atom `⟨x⟩` in the free complex.
    pub fn iterated_faces(&self, x: &GeneratorId) -> Result<(Vec<Multiset>, Vec<Multiset>), StructureError> {
        if !self.contains(x) {
            return Err(StructureError::UnknownGenerator {
                name: x.name().to_string(),
                dim: x.dim(),
            });
        }
        let n = x.dim();
        let mut neg = vec![Multiset::empty(0); n + 1];
        let mut pos = vec![Multiset::empty(0); n + 1];
        neg[n] = Multiset::singleton(x.clone());
        pos[n] = Multiset::singleton(x.clone());
        for k in (1..=n).rev() {
            neg[k - 1] = self.face_images(&neg[k])?.neg;
            pos[k - 1] = self.face_images(&pos[k])?.pos;
        }
        Ok((neg, pos))
    }

    /// Whether `s` moves `m` to `p` in the given mode.
    pub fn moves(&self, s: &Multiset, m: &Multiset, p: &Multiset, mode: MoveMode) -> Result<bool, StructureError> {
        if s.dim() == 0 {
            return Err(StructureError::DimensionZeroInput);
        }
        let below = s.dim() - 1;
        for x in [m, p] {
            if x.dim() != below {
                return Err(MultisetError::DimensionMismatch {
                    left: below,
                    right: x.dim(),
                }
                .into());
            }
        }
        self.check_known(m)?;
        self.check_known(p)?;
        let m_minus_p = m.difference(p)?;
        let p_minus_m = p.difference(m)?;
        match mode {
            MoveMode::Additive => {
                let images = self.face_images(s)?;
                Ok(images.neg == m_minus_p && images.pos == p_minus_m)
            }
            MoveMode::Subset | MoveMode::Strict => {
                if !self.is_well_formed(s)? {
                    return Err(StructureError::NotWellFormed(s.to_string()));
                }
                let faces = self.subset_faces(s)?;
                let equations = faces.neg_only == m_minus_p && faces.pos_only == p_minus_m;
                if mode == MoveMode::Subset {
                    return Ok(equations);
                }
                Ok(equations && m.is_disjoint(&faces.pos)? && p.is_disjoint(&faces.neg)?)
            }
        }
    }

    /// Discards every generator of dimension greater than `n`.
    pub fn skeleton(&self, n: usize) -> Self {
        let graded: Vec<Vec<GeneratorId>> = self.graded.iter().take(n + 1).cloned().collect();
        let faces = self
            .faces
            .iter()
            .filter(|(g, _)| g.dim() <= n)
            .map(|(g, f)| (g.clone(), f.clone()))
            .collect();
        Self { graded, faces }
    }

    /// Restricts to a set of generators; faces pointing outside the set are
    /// dropped.
    pub fn restrict(&self, keep: &BTreeSet<GeneratorId>) -> Self {
        let mut builder = StructureBuilder::new();
        for g in self.iter().filter(|g| keep.contains(*g)) {
            let side = |m: &Multiset| -> Vec<(String, u64)> {
                m.iter()
                    .filter(|(h, _)| keep.contains(*h))
                    .map(|(h, c)| (h.name().to_string(), c))
                    .collect()
            };
            let (neg, pos) = match self.faces(g) {
                Some(f) => (side(&f.neg), side(&f.pos)),
                None => (Vec::new(), Vec::new()),
            };
            builder.push(g.name().to_string(), g.dim(), neg, pos);
        }
        builder.build().expect("restriction of a valid structure is valid")
    }
}

/// An additive parity structure all of whose faces are subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityStructure(AdditiveParityStructure);

impl ParityStructure {
    pub fn as_additive(&self) -> &AdditiveParityStructure {
        &self.0
    }

    pub fn into_additive(self) -> AdditiveParityStructure {
        self.0
    }

    pub fn skeleton(&self, n: usize) -> Self {
        Self(self.0.skeleton(n))
    }
}

impl TryFrom<AdditiveParityStructure> for ParityStructure {
    type Error = StructureError;

    fn try_from(value: AdditiveParityStructure) -> Result<Self, Self::Error> {
        if let Some((g, _)) = value
            .faces
            .iter()
            .find(|(_, f)| !f.neg.is_radical() || !f.pos.is_radical())
        {
            return Err(StructureError::NotParityStructure(g.name().to_string()));
        }
        Ok(Self(value))
    }
}

impl Deref for ParityStructure {
    type Target = AdditiveParityStructure;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl From<ParityStructure> for AdditiveParityStructure {
    fn from(value: ParityStructure) -> Self {
        value.0
    }
}
