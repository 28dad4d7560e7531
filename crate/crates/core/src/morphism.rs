//! Morphisms of additive parity complexes and of weak parity complexes.
//!
//! A [`GradedMorphism`] assigns to each generator of its source a finite
//! multiset of target generators of the same dimension. Validation,
//! composition and the action on cells and chains depend on a
//! [`MorphismMode`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cells::{validate_cell, CellError, CellMode, CellTable, Validity};
use crate::chain::{ChainError, FreeDirectedComplex};
use crate::multiset::{GeneratorId, Multiset, MultisetError, SignedVector};
use crate::structure::{AdditiveParityStructure, MoveMode, StructureError};
use crate::validate::{validate, Classification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("no image given for {0:?}")]
    MissingImage(GeneratorId),
    #[error("{0:?} is not a generator of the source")]
    UnknownSource(GeneratorId),
    #[error("image of {generator:?} mentions {image:?}, which is not a generator of the target")]
    UnknownTarget { generator: GeneratorId, image: GeneratorId },
    #[error("image of {0:?} has the wrong dimension")]
    ImageDimension(GeneratorId),
    #[error("{side} is a {found}, but {mode} morphisms need a {needed}")]
    ModeMismatch {
        side: &'static str,
        mode: MorphismMode,
        found: Classification,
        needed: Classification,
    },
    #[error("target of the first morphism is not the source of the second")]
    NotComposable,
    #[error("images composed for {0:?} overlap")]
    Overlap(GeneratorId),
    #[error("morphism is not valid: {0}")]
    Invalid(String),
    #[error("chain map does not commute with the boundary at {0:?}")]
    NotChainMap(Vec<GeneratorId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismMode {
    /// Multiset images, homomorphic extension, multiset movement.
    Additive,
    /// Well-formed subset images, union extension, subset movement.
    WeakParity,
}

impl MorphismMode {
    fn required(self) -> Classification {
        match self {
            MorphismMode::Additive => Classification::AdditiveParityComplex,
            MorphismMode::WeakParity => Classification::WeakParityComplex,
        }
    }
}

impl fmt::Display for MorphismMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismMode::Additive => "additive",
            MorphismMode::WeakParity => "weak-parity",
        })
    }
}

/// A dimension-preserving assignment of multisets to every source generator.
/// Equality is extensional.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMorphism {
    source: Arc<AdditiveParityStructure>,
    target: Arc<AdditiveParityStructure>,
    assignment: BTreeMap<GeneratorId, Multiset>,
}

/// Generator name, dimension and named image.
type Entry = (String, usize, Vec<(String, u64)>);

/// Collects images by name before resolving them against the structures.
#[derive(Debug, Clone)]
pub struct MorphismBuilder {
    source: Arc<AdditiveParityStructure>,
    target: Arc<AdditiveParityStructure>,
    entries: Vec<Entry>,
}

impl MorphismBuilder {
    pub fn map(mut self, name: &str, dim: usize, images: &[&str]) -> Self {
        self.push(
            name.to_string(),
            dim,
            images.iter().map(|n| (n.to_string(), 1)).collect(),
        );
        self
    }

    pub fn push(&mut self, name: String, dim: usize, images: Vec<(String, u64)>) {
        self.entries.push((name, dim, images));
    }

    pub fn build(self) -> Result<GradedMorphism, MorphismError> {
        let mut assignment = BTreeMap::new();
        for (name, dim, images) in self.entries {
            let g = self
                .source
                .lookup(&name, dim)
                .cloned()
                .ok_or_else(|| MorphismError::UnknownSource(GeneratorId::new(&name, dim).expect("token")))?;
            let mut counts = Vec::with_capacity(images.len());
            for (image, c) in images {
                let h = self
                    .target
                    .lookup(&image, dim)
                    .cloned()
                    .ok_or_else(|| MorphismError::UnknownTarget {
                        generator: g.clone(),
                        image: GeneratorId::new(&image, dim).expect("token"),
                    })?;
                counts.push((h, c));
            }
            assignment.insert(g, Multiset::from_counts(dim, counts)?);
        }
        GradedMorphism::new(self.source, self.target, assignment)
    }
}

impl GradedMorphism {
    /// Checks totality, dimensions and that every image lies in the target.
    pub fn new(
        source: Arc<AdditiveParityStructure>,
        target: Arc<AdditiveParityStructure>,
        assignment: BTreeMap<GeneratorId, Multiset>,
    ) -> Result<Self, MorphismError> {
        for g in source.iter() {
            if !assignment.contains_key(g) {
                return Err(MorphismError::MissingImage(g.clone()));
            }
        }
        for (g, image) in &assignment {
            if !source.contains(g) {
                return Err(MorphismError::UnknownSource(g.clone()));
            }
            if image.dim() != g.dim() {
                return Err(MorphismError::ImageDimension(g.clone()));
            }
            if let Some(h) = image.support().find(|h| !target.contains(h)) {
                return Err(MorphismError::UnknownTarget {
                    generator: g.clone(),
                    image: h.clone(),
                });
            }
        }
        Ok(Self {
            source,
            target,
            assignment,
        })
    }

    pub fn builder(source: Arc<AdditiveParityStructure>, target: Arc<AdditiveParityStructure>) -> MorphismBuilder {
        MorphismBuilder {
            source,
            target,
            entries: Vec::new(),
        }
    }

    pub fn identity(b: Arc<AdditiveParityStructure>) -> Self {
        let assignment = b.iter().map(|g| (g.clone(), Multiset::singleton(g.clone()))).collect();
        Self {
            source: b.clone(),
            target: b,
            assignment,
        }
    }

    pub fn source(&self) -> &Arc<AdditiveParityStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AdditiveParityStructure> {
        &self.target
    }

    pub fn assignment(&self) -> &BTreeMap<GeneratorId, Multiset> {
        &self.assignment
    }

    pub fn image(&self, g: &GeneratorId) -> Option<&Multiset> {
        self.assignment.get(g)
    }

    /// Homomorphic extension to a multiset of source generators.
    pub fn extend(&self, s: &Multiset) -> Result<Multiset, MorphismError> {
        let mut out = Multiset::empty(s.dim());
        for (g, c) in s.iter() {
            let image = self
                .assignment
                .get(g)
                .ok_or_else(|| MorphismError::UnknownSource(g.clone()))?;
            out = out.disjoint_union(&image.scale(c)?)?;
        }
        Ok(out)
    }

    /// Union extension to a subset of source generators.
    pub fn extend_union(&self, s: &Multiset) -> Result<Multiset, MorphismError> {
        let mut out = Multiset::empty(s.dim());
        for g in s.support() {
            let image = self
                .assignment
                .get(g)
                .ok_or_else(|| MorphismError::UnknownSource(g.clone()))?;
            out = out.join(image)?;
        }
        Ok(out)
    }

    /// Every 0-dimensional generator goes to a singleton.
    pub fn is_normal(&self) -> bool {
        self.source
            .generators(0)
            .iter()
            .all(|g| self.assignment[g].as_singleton().is_some())
    }

    /// The restriction to the `n`-skeleta of source and target.
    pub fn skeleton(&self, n: usize) -> Self {
        Self {
            source: Arc::new(self.source.skeleton(n)),
            target: Arc::new(self.target.skeleton(n)),
            assignment: self
                .assignment
                .iter()
                .filter(|(g, _)| g.dim() <= n)
                .map(|(g, m)| (g.clone(), m.clone()))
                .collect(),
        }
    }

    /// Applies the homomorphic extension to every column of a cell of the
    /// source. The morphism itself is assumed valid.
    pub fn apply_to_cell(&self, t: &CellTable) -> Result<CellTable, MorphismError> {
        let k = FreeDirectedComplex::from_structure(&self.source);
        if let Validity::Invalid(reason) = validate_cell(&k, t, CellMode::Rho)? {
            return Err(CellError::Invalid(reason).into());
        }
        Ok(t.map_columns(|m| self.extend(m).map_err(|e| CellError::Internal(e.to_string())))?)
    }
}

impl fmt::Debug for GradedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.assignment.iter().map(|(g, m)| (g, m.to_string())))
            .finish()
    }
}

impl fmt::Display for GradedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, m) in &self.assignment {
            writeln!(f, "{g} [{}] ↦ {m}", g.dim())?;
        }
        Ok(())
    }
}

/// A generator whose image violates the morphism conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFailure {
    pub generator: GeneratorId,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub mode: MorphismMode,
    pub valid: bool,
    pub normal: bool,
    pub failures: Vec<MorphismFailure>,
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "normal: {}", self.normal)?;
        for failure in &self.failures {
            writeln!(f, "  {}: {}", failure.generator, failure.explanation)?;
        }
        Ok(())
    }
}

fn check_level(b: &AdditiveParityStructure, side: &'static str, mode: MorphismMode) -> Result<(), MorphismError> {
    let report = validate(b);
    if report.meets(mode.required()) {
        Ok(())
    } else {
        Err(MorphismError::ModeMismatch {
            side,
            mode,
            found: report.classification,
            needed: mode.required(),
        })
    }
}

/// Checks the morphism conditions of `mode` on every generator.
pub fn validate_morphism(f: &GradedMorphism, mode: MorphismMode) -> Result<MorphismReport, MorphismError> {
    check_level(&f.source, "source", mode)?;
    check_level(&f.target, "target", mode)?;
    let mut failures = Vec::new();
    let mut fail = |g: &GeneratorId, explanation: String| {
        failures.push(MorphismFailure {
            generator: g.clone(),
            explanation,
        })
    };
    for (x, image) in &f.assignment {
        if mode == MorphismMode::WeakParity && !f.target.is_well_formed(image)? {
            fail(x, format!("image {image} is not a well-formed subset"));
            continue;
        }
        if x.dim() == 0 {
            continue;
        }
        let faces = f.source.faces(x).expect("source generator");
        let (m, p, move_mode) = match mode {
            MorphismMode::Additive => (f.extend(&faces.neg)?, f.extend(&faces.pos)?, MoveMode::Additive),
            MorphismMode::WeakParity => (
                f.extend_union(&faces.neg)?,
                f.extend_union(&faces.pos)?,
                MoveMode::Subset,
            ),
        };
        if !f.target.moves(image, &m, &p, move_mode)? {
            fail(x, format!("image {image} does not move {m} to {p}"));
        }
    }
    Ok(MorphismReport {
        mode,
        valid: failures.is_empty(),
        normal: f.is_normal(),
        failures,
    })
}

fn require_valid(f: &GradedMorphism, mode: MorphismMode) -> Result<(), MorphismError> {
    let report = validate_morphism(f, mode)?;
    match report.failures.first() {
        None => Ok(()),
        Some(first) => Err(MorphismError::Invalid(format!(
            "{}: {}",
            first.generator, first.explanation
        ))),
    }
}

/// Movement in the stronger sense: besides the subset equations, the image
/// of `x` is disjoint from the images of `x⁻` on its positive side and from
/// the images of `x⁺` on its negative side.
pub fn check_strict_movement(f: &GradedMorphism) -> Result<bool, MorphismError> {
    require_valid(f, MorphismMode::WeakParity)?;
    for (x, image) in f.assignment.iter().filter(|(x, _)| x.dim() > 0) {
        let faces = f.source.faces(x).expect("source generator");
        let m = f.extend_union(&faces.neg)?;
        let p = f.extend_union(&faces.pos)?;
        if !f.target.moves(image, &m, &p, MoveMode::Strict)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g ∘ f`. In weak-parity mode the images are unions, which must be
/// disjoint; an overlap is reported as [`MorphismError::Overlap`].
pub fn compose_morphisms(
    f: &GradedMorphism,
    g: &GradedMorphism,
    mode: MorphismMode,
) -> Result<GradedMorphism, MorphismError> {
    if !Arc::ptr_eq(&f.target, &g.source) && f.target != g.source {
        return Err(MorphismError::NotComposable);
    }
    let mut assignment = BTreeMap::new();
    for (x, image) in &f.assignment {
        let composite = match mode {
            MorphismMode::Additive => g.extend(image)?,
            MorphismMode::WeakParity => {
                let sum = g.extend(image)?;
                if !image.is_radical() || !sum.is_radical() {
                    return Err(MorphismError::Overlap(x.clone()));
                }
                g.extend_union(image)?
            }
        };
        assignment.insert(x.clone(), composite);
    }
    Ok(GradedMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        assignment,
    })
}

/// A linear map between free complexes given on basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    images: BTreeMap<GeneratorId, SignedVector>,
}

impl ChainMap {
    pub fn image(&self, g: &GeneratorId) -> Option<&SignedVector> {
        self.images.get(g)
    }

    pub fn apply(&self, v: &SignedVector) -> Result<SignedVector, MorphismError> {
        let mut out = SignedVector::zero(v.dim());
        for (g, c) in v.iter() {
            let image = self
                .images
                .get(g)
                .ok_or_else(|| MorphismError::UnknownSource(g.clone()))?;
            out = out.add(&image.scale(c)?)?;
        }
        Ok(out)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap, MorphismError> {
        let images = self
            .images
            .iter()
            .map(|(g, v)| Ok((g.clone(), other.apply(v)?)))
            .collect::<Result<_, MorphismError>>()?;
        Ok(ChainMap { images })
    }

    /// Generators on which `∂ ∘ f` and `f ∘ ∂` differ.
    pub fn non_commuting(
        &self,
        source: &FreeDirectedComplex,
        target: &FreeDirectedComplex,
    ) -> Result<Vec<GeneratorId>, MorphismError> {
        let mut bad = Vec::new();
        for (g, v) in &self.images {
            if g.dim() == 0 {
                continue;
            }
            let down = self.apply(source.generator_boundary(g)?)?;
            let across = if v.dim() == 0 {
                SignedVector::zero(0)
            } else {
                target.boundary(v)?
            };
            if down != across {
                bad.push(g.clone());
            }
        }
        Ok(bad)
    }

    /// Whether `ε ∘ f = ε` on dimension 0; `None` if either side has no
    /// augmentation.
    pub fn preserves_augmentation(&self, source: &FreeDirectedComplex, target: &FreeDirectedComplex) -> Option<bool> {
        if !source.is_augmented() || !target.is_augmented() {
            return None;
        }
        Some(
            self.images
                .iter()
                .filter(|(g, _)| g.dim() == 0)
                .all(|(_, v)| target.augmentation(v) == Some(1)),
        )
    }
}

/// The linear extension of `f`, checked to commute with the boundary.
pub fn induced_chain_map(f: &GradedMorphism) -> Result<ChainMap, MorphismError> {
    let images = f
        .assignment
        .iter()
        .map(|(g, m)| Ok((g.clone(), SignedVector::from_multiset(m)?)))
        .collect::<Result<_, MorphismError>>()?;
    let map = ChainMap { images };
    let source = FreeDirectedComplex::from_structure(&f.source);
    let target = FreeDirectedComplex::from_structure(&f.target);
    let bad = map.non_commuting(&source, &target)?;
    if !bad.is_empty() {
        return Err(MorphismError::NotChainMap(bad));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::atom;
    use crate::families::{globe, oriental};

    fn arc(b: impl Into<AdditiveParityStructure>) -> Arc<AdditiveParityStructure> {
        Arc::new(b.into())
    }

    fn path(o2: &Arc<AdditiveParityStructure>) -> GradedMorphism {
        GradedMorphism::builder(arc(globe(1).unwrap()), o2.clone())
            .map("e0-", 0, &["0"])
            .map("e0+", 0, &["2"])
            .map("top", 1, &["01", "12"])
            .build()
            .unwrap()
    }

    #[test]
    fn path_in_triangle() {
        let o2 = arc(oriental(2).unwrap());
        let f = path(&o2);
        for mode in [MorphismMode::Additive, MorphismMode::WeakParity] {
            let report = validate_morphism(&f, mode).unwrap();
            assert!(report.valid, "{report}");
            assert!(report.normal);
        }
        assert!(check_strict_movement(&f).unwrap());
        let e = atom(f.source(), f.source().lookup("top", 1).unwrap()).unwrap();
        assert_eq!(f.apply_to_cell(&e).unwrap().to_string(), "({0},{01,12}; {2},{01,12})");
        let map = induced_chain_map(&f).unwrap();
        assert_eq!(
            map.image(f.source().lookup("top", 1).unwrap()).unwrap().to_string(),
            "+01 +12"
        );
    }

    #[test]
    fn collapse_and_identity() {
        let g0 = arc(globe(0).unwrap());
        let g1 = arc(globe(1).unwrap());
        let collapse = GradedMorphism::builder(g1.clone(), g0.clone())
            .map("e0-", 0, &["top"])
            .map("e0+", 0, &["top"])
            .map("top", 1, &[])
            .build()
            .unwrap();
        assert!(validate_morphism(&collapse, MorphismMode::WeakParity).unwrap().valid);
        assert!(check_strict_movement(&collapse).unwrap());
        let id = GradedMorphism::identity(g1.clone());
        assert!(validate_morphism(&id, MorphismMode::WeakParity).unwrap().valid);
        assert_eq!(
            compose_morphisms(&id, &collapse, MorphismMode::WeakParity).unwrap(),
            collapse
        );
    }

    #[test]
    fn invalid_images_are_reported() {
        let o2 = arc(oriental(2).unwrap());
        let reversed = GradedMorphism::builder(arc(globe(1).unwrap()), o2.clone())
            .map("e0-", 0, &["2"])
            .map("e0+", 0, &["0"])
            .map("top", 1, &["01", "12"])
            .build()
            .unwrap();
        let report = validate_morphism(&reversed, MorphismMode::WeakParity).unwrap();
        assert!(!report.valid);
        assert_eq!(report.failures.len(), 1);
        assert!(check_strict_movement(&reversed).is_err());
        let not_total = GradedMorphism::builder(arc(globe(1).unwrap()), o2)
            .map("e0-", 0, &["0"])
            .build();
        assert!(matches!(not_total, Err(MorphismError::MissingImage(_))));
    }

    #[test]
    fn composite_with_inclusion() {
        let o2 = arc(oriental(2).unwrap());
        let o3 = arc(oriental(3).unwrap());
        let mut inclusion = GradedMorphism::builder(o2.clone(), o3.clone());
        for g in o2.iter() {
            inclusion.push(g.name().to_string(), g.dim(), vec![(g.name().to_string(), 1)]);
        }
        let inclusion = inclusion.build().unwrap();
        let f = path(&o2);
        let gf = compose_morphisms(&f, &inclusion, MorphismMode::WeakParity).unwrap();
        assert!(validate_morphism(&gf, MorphismMode::WeakParity).unwrap().valid);
        assert_eq!(
            gf.image(f.source().lookup("top", 1).unwrap()).unwrap().to_string(),
            "{01,12}"
        );
        let lhs = induced_chain_map(&gf).unwrap();
        let rhs = induced_chain_map(&f)
            .unwrap()
            .then(&induced_chain_map(&inclusion).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(matches!(
            compose_morphisms(&inclusion, &f, MorphismMode::Additive),
            Err(MorphismError::NotComposable)
        ));
    }
}
