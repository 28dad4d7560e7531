//! Parity complexes, additive parity complexes and the free augmented
//! directed complexes they generate.

pub mod cells;
pub mod chain;
pub mod families;
pub mod fixture;
pub mod morphism;
pub mod multiset;
pub mod order;
pub mod structure;
pub mod validate;
