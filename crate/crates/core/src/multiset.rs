//! Finite multisets and signed integer vectors over the generators of a
//! single dimension.
//!
//! A [`Multiset`] is an element of the free commutative monoid on the
//! generators of one dimension, and a [`SignedVector`] is an element of the
//! free abelian group on them. Both keep their entries sorted by generator so
//! that equality, hashing and printing are canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisetError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("generator {name} has dimension {found}, expected {expected}")]
    WrongDimension {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("count overflow")]
    Overflow,
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
}

/// A named generator of a graded set.
///
/// Ordering is by `(dim, name)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    dim: usize,
    name: Arc<str>,
}

impl GeneratorId {
    /// Names must be non-empty and contain only printable, non-whitespace
    /// characters.
    pub fn new(name: impl AsRef<str>, dim: usize) -> Result<Self, MultisetError> {
        let name = name.as_ref();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(MultisetError::InvalidName(name.to_string()));
        }
        Ok(Self {
            dim,
            name: Arc::from(name),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.dim)
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name)
    }
}

fn check_dims(left: usize, right: usize) -> Result<(), MultisetError> {
    if left == right {
        Ok(())
    } else {
        Err(MultisetError::DimensionMismatch { left, right })
    }
}

/// A finite multiset of generators of one dimension.
///
/// Zero counts are never stored, so the empty mapping is the unit `∅`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    dim: usize,
    counts: BTreeMap<GeneratorId, u64>,
}

impl Multiset {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            counts: BTreeMap::new(),
        }
    }

    pub fn singleton(generator: GeneratorId) -> Self {
        let dim = generator.dim();
        let mut counts = BTreeMap::new();
        counts.insert(generator, 1);
        Self { dim, counts }
    }

    /// Builds a multiset from `(generator, count)` pairs. Repeated generators
    /// have their counts summed; zero counts are dropped.
    pub fn from_counts<I>(dim: usize, entries: I) -> Result<Self, MultisetError>
    where
        I: IntoIterator<Item = (GeneratorId, u64)>,
    {
        let mut counts: BTreeMap<GeneratorId, u64> = BTreeMap::new();
        for (g, c) in entries {
            if g.dim() != dim {
                return Err(MultisetError::WrongDimension {
                    name: g.name().to_string(),
                    expected: dim,
                    found: g.dim(),
                });
            }
            if c == 0 {
                continue;
            }
            let slot = counts.entry(g).or_insert(0);
            *slot = slot.checked_add(c).ok_or(MultisetError::Overflow)?;
        }
        Ok(Self { dim, counts })
    }

    /// Builds a multiset in which every listed generator occurs once per
    /// listing.
    pub fn from_generators<I>(dim: usize, generators: I) -> Result<Self, MultisetError>
    where
        I: IntoIterator<Item = GeneratorId>,
    {
        Self::from_counts(dim, generators.into_iter().map(|g| (g, 1)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of distinct generators.
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// Sum of all counts; this is the augmentation of the multiset when every
    /// generator is sent to 1.
    pub fn total(&self) -> Result<u64, MultisetError> {
        self.counts
            .values()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(MultisetError::Overflow)
    }

    pub fn count(&self, generator: &GeneratorId) -> u64 {
        self.counts.get(generator).copied().unwrap_or(0)
    }

    pub fn contains(&self, generator: &GeneratorId) -> bool {
        self.counts.contains_key(generator)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, u64)> + '_ {
        self.counts.iter().map(|(g, &c)| (g, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &GeneratorId> + '_ {
        self.counts.keys()
    }

    /// The single generator of a singleton subset.
    pub fn as_singleton(&self) -> Option<&GeneratorId> {
        match self.counts.iter().next() {
            Some((g, 1)) if self.counts.len() == 1 => Some(g),
            _ => None,
        }
    }

    /// A multiset is radical (a subset) when every count is 1.
    pub fn is_radical(&self) -> bool {
        self.counts.values().all(|&c| c == 1)
    }

    /// Pointwise sum of counts.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, MultisetError> {
        check_dims(self.dim, other.dim)?;
        let mut counts = self.counts.clone();
        for (g, &c) in &other.counts {
            let slot = counts.entry(g.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or(MultisetError::Overflow)?;
        }
        Ok(Self { dim: self.dim, counts })
    }

    /// Pointwise truncated subtraction `max(S − T, 0)`.
    pub fn difference(&self, other: &Self) -> Result<Self, MultisetError> {
        check_dims(self.dim, other.dim)?;
        let counts = self
            .counts
            .iter()
            .filter_map(|(g, &c)| {
                let rest = c.saturating_sub(other.count(g));
                (rest > 0).then(|| (g.clone(), rest))
            })
            .collect();
        Ok(Self { dim: self.dim, counts })
    }

    /// Returns the pointwise minimum and maximum.
    pub fn meet_join(&self, other: &Self) -> Result<(Self, Self), MultisetError> {
        Ok((self.meet(other)?, self.join(other)?))
    }

    pub fn meet(&self, other: &Self) -> Result<Self, MultisetError> {
        check_dims(self.dim, other.dim)?;
        let (small, large) = if self.counts.len() <= other.counts.len() {
            (self, other)
        } else {
            (other, self)
        };
        let counts = small
            .counts
            .iter()
            .filter_map(|(g, &c)| {
                let m = c.min(large.count(g));
                (m > 0).then(|| (g.clone(), m))
            })
            .collect();
        Ok(Self { dim: self.dim, counts })
    }

    pub fn join(&self, other: &Self) -> Result<Self, MultisetError> {
        check_dims(self.dim, other.dim)?;
        let mut counts = self.counts.clone();
        for (g, &c) in &other.counts {
            let slot = counts.entry(g.clone()).or_insert(0);
            *slot = (*slot).max(c);
        }
        Ok(Self { dim: self.dim, counts })
    }

    /// `S ∧ T = ∅`.
    pub fn is_disjoint(&self, other: &Self) -> Result<bool, MultisetError> {
        check_dims(self.dim, other.dim)?;
        Ok(self.counts.keys().all(|g| !other.counts.contains_key(g)))
    }

    /// Componentwise `S ≤ T`.
    pub fn is_le(&self, other: &Self) -> Result<bool, MultisetError> {
        check_dims(self.dim, other.dim)?;
        Ok(self.counts.iter().all(|(g, &c)| c <= other.count(g)))
    }

    /// Multiplies every count by `factor`.
    pub fn scale(&self, factor: u64) -> Result<Self, MultisetError> {
        if factor == 0 {
            return Ok(Self::empty(self.dim));
        }
        let counts = self
            .counts
            .iter()
            .map(|(g, &c)| c.checked_mul(factor).map(|m| (g.clone(), m)))
            .collect::<Option<_>>()
            .ok_or(MultisetError::Overflow)?;
        Ok(Self { dim: self.dim, counts })
    }

    /// Sums a family of multisets of dimension `dim`.
    pub fn sum<'a, I>(dim: usize, items: I) -> Result<Self, MultisetError>
    where
        I: IntoIterator<Item = &'a Multiset>,
    {
        items
            .into_iter()
            .try_fold(Self::empty(dim), |acc, m| acc.disjoint_union(m))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (g, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *c == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}:{c}")?;
            }
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.dim)
    }
}

/// An element of the free abelian group on the generators of one dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedVector {
    dim: usize,
    entries: BTreeMap<GeneratorId, i64>,
}

fn to_signed(c: u64) -> Result<i64, MultisetError> {
    i64::try_from(c).map_err(|_| MultisetError::Overflow)
}

impl SignedVector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a vector from `(generator, coefficient)` pairs, summing repeats
    /// and dropping zeros.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self, MultisetError>
    where
        I: IntoIterator<Item = (GeneratorId, i64)>,
    {
        let mut v = Self::zero(dim);
        for (g, c) in entries {
            if g.dim() != dim {
                return Err(MultisetError::WrongDimension {
                    name: g.name().to_string(),
                    expected: dim,
                    found: g.dim(),
                });
            }
            v.add_term(g, c)?;
        }
        Ok(v)
    }

    pub fn from_multiset(m: &Multiset) -> Result<Self, MultisetError> {
        let entries = m
            .iter()
            .map(|(g, c)| Ok((g.clone(), to_signed(c)?)))
            .collect::<Result<_, MultisetError>>()?;
        Ok(Self { dim: m.dim(), entries })
    }

    /// `pos − neg`.
    pub fn from_parts(neg: &Multiset, pos: &Multiset) -> Result<Self, MultisetError> {
        Self::from_multiset(pos)?.sub(&Self::from_multiset(neg)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, generator: &GeneratorId) -> i64 {
        self.entries.get(generator).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, i64)> + '_ {
        self.entries.iter().map(|(g, &c)| (g, c))
    }

    fn add_term(&mut self, g: GeneratorId, c: i64) -> Result<(), MultisetError> {
        if c == 0 {
            return Ok(());
        }
        let cur = self.entries.get(&g).copied().unwrap_or(0);
        let next = cur.checked_add(c).ok_or(MultisetError::Overflow)?;
        if next == 0 {
            self.entries.remove(&g);
        } else {
            self.entries.insert(g, next);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MultisetError> {
        check_dims(self.dim, other.dim)?;
        let mut out = self.clone();
        for (g, &c) in &other.entries {
            out.add_term(g.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MultisetError> {
        self.add(&other.neg()?)
    }

    pub fn neg(&self) -> Result<Self, MultisetError> {
        let entries = self
            .entries
            .iter()
            .map(|(g, &c)| c.checked_neg().map(|n| (g.clone(), n)))
            .collect::<Option<_>>()
            .ok_or(MultisetError::Overflow)?;
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: i64) -> Result<Self, MultisetError> {
        if factor == 0 {
            return Ok(Self::zero(self.dim));
        }
        let entries = self
            .entries
            .iter()
            .map(|(g, &c)| c.checked_mul(factor).map(|m| (g.clone(), m)))
            .collect::<Option<_>>()
            .ok_or(MultisetError::Overflow)?;
        Ok(Self { dim: self.dim, entries })
    }

    /// Splits the vector as `pos − neg` with `neg ∧ pos = ∅`; returns
    /// `(neg, pos)`.
    pub fn parts(&self) -> (Multiset, Multiset) {
        let mut neg = BTreeMap::new();
        let mut pos = BTreeMap::new();
        for (g, &c) in &self.entries {
            if c > 0 {
                pos.insert(g.clone(), c.unsigned_abs());
            } else {
                neg.insert(g.clone(), c.unsigned_abs());
            }
        }
        (
            Multiset {
                dim: self.dim,
                counts: neg,
            },
            Multiset {
                dim: self.dim,
                counts: pos,
            },
        )
    }

    /// The positive element equal to this vector, if there is one.
    pub fn as_positive(&self) -> Option<Multiset> {
        let (neg, pos) = self.parts();
        neg.is_empty().then_some(pos)
    }
}

impl fmt::Display for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, &c)) in self.entries.iter().enumerate() {
            let sign = if c < 0 { '-' } else { '+' };
            if i > 0 {
                f.write_str(" ")?;
            }
            if c.unsigned_abs() == 1 {
                write!(f, "{sign}{g}")?;
            } else {
                write!(f, "{sign}{}*{g}", c.unsigned_abs())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})@{}", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> GeneratorId {
        GeneratorId::new(name, 0).unwrap()
    }

    fn ms(entries: &[(&str, u64)]) -> Multiset {
        Multiset::from_counts(0, entries.iter().map(|&(n, c)| (g(n), c))).unwrap()
    }

    #[test]
    fn names_are_tokens() {
        assert!(GeneratorId::new("", 0).is_err());
        assert!(GeneratorId::new("a b", 0).is_err());
        assert!(GeneratorId::new("1*0*", 2).is_ok());
    }

    #[test]
    fn disjoint_union_adds_counts() {
        assert_eq!(
            ms(&[("a", 1)]).disjoint_union(&ms(&[("a", 1), ("b", 1)])).unwrap(),
            ms(&[("a", 2), ("b", 1)])
        );
        let s = ms(&[("x", 3)]);
        assert_eq!(Multiset::empty(0).disjoint_union(&s).unwrap(), s);
        assert_eq!(
            ms(&[("01", 1)]).disjoint_union(&ms(&[("12", 1)])).unwrap(),
            ms(&[("01", 1), ("12", 1)])
        );
    }

    #[test]
    fn difference_truncates() {
        assert_eq!(
            ms(&[("a", 2), ("b", 1)])
                .difference(&ms(&[("a", 1), ("c", 3)]))
                .unwrap(),
            ms(&[("a", 1), ("b", 1)])
        );
        let s = ms(&[("a", 2), ("b", 1)]);
        assert!(s.difference(&s).unwrap().is_empty());
        assert_eq!(
            ms(&[("0", 1), ("1", 1)])
                .difference(&ms(&[("1", 1), ("2", 1)]))
                .unwrap(),
            ms(&[("0", 1)])
        );
    }

    #[test]
    fn meet_and_join() {
        let (m, j) = ms(&[("a", 2), ("b", 1)]).meet_join(&ms(&[("a", 1), ("c", 1)])).unwrap();
        assert_eq!(m, ms(&[("a", 1)]));
        assert_eq!(j, ms(&[("a", 2), ("b", 1), ("c", 1)]));
        let s = ms(&[("q", 2)]);
        assert_eq!(s.meet_join(&Multiset::empty(0)).unwrap(), (Multiset::empty(0), s));
        assert!(ms(&[("0", 1)]).is_disjoint(&ms(&[("2", 1)])).unwrap());
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let a = Multiset::singleton(GeneratorId::new("a", 0).unwrap());
        let b = Multiset::singleton(GeneratorId::new("b", 1).unwrap());
        assert_eq!(
            a.disjoint_union(&b),
            Err(MultisetError::DimensionMismatch { left: 0, right: 1 })
        );
        assert!(a.difference(&b).is_err());
        assert!(a.meet_join(&b).is_err());
        assert!(Multiset::from_counts(1, [(g("a"), 1)]).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = ms(&[("a", u64::MAX)]);
        assert_eq!(big.disjoint_union(&ms(&[("a", 1)])), Err(MultisetError::Overflow));
        assert!(SignedVector::from_multiset(&big).is_err());
    }

    #[test]
    fn parts_of_simplex_boundary() {
        let e = |n: &str| GeneratorId::new(n, 1).unwrap();
        let v = SignedVector::from_entries(1, [(e("01"), 1), (e("02"), -1), (e("12"), 1)]).unwrap();
        let (neg, pos) = v.parts();
        assert_eq!(neg, Multiset::from_generators(1, [e("02")]).unwrap());
        assert_eq!(pos, Multiset::from_generators(1, [e("01"), e("12")]).unwrap());

        let (neg, pos) = SignedVector::zero(1).parts();
        assert!(neg.is_empty() && pos.is_empty());

        let v = SignedVector::from_entries(0, [(g("b"), -2), (g("a"), 1)]).unwrap();
        assert_eq!(v.parts(), (ms(&[("b", 2)]), ms(&[("a", 1)])));
    }

    #[test]
    fn radical() {
        assert!(ms(&[("a", 1), ("b", 1)]).is_radical());
        assert!(!ms(&[("a", 2)]).is_radical());
        assert!(Multiset::empty(3).is_radical());
    }

    #[test]
    fn display() {
        assert_eq!(ms(&[("b", 1), ("a", 2)]).to_string(), "{a:2,b}");
        let v = SignedVector::from_entries(0, [(g("b"), -2), (g("a"), 1)]).unwrap();
        assert_eq!(v.to_string(), "+a -2*b");
    }
}
