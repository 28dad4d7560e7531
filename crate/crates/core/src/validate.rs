//! Axiom checks for additive parity structures and parity structures.
//!
//! [`validate`] computes every flag of a [`ValidationReport`]. The three
//! loop-freeness conditions are decided by building their generating relation
//! as a digraph and asking [`linearize`] for a topological order or a cycle:
//!
//! * weak: one relation per dimension `n ≥ 1` on `Bₙ`, `x → y` when
//!   `∂⁺x ∧ ∂⁻y ≠ ∅`;
//! * Steiner: one relation per `n ≥ 0` on all of `B`, `x → y` when
//!   `⟨x⟩ₙ⁺ ∧ ⟨y⟩ₙ⁻ ≠ ∅`;
//! * strong: a single relation on all of `B`, `x → y` when `x ∈ ∂⁻y` or
//!   `y ∈ ∂⁺x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::multiset::{GeneratorId, Multiset};
use crate::order::{linearize, Witness};
use crate::structure::{AdditiveParityStructure, StructureError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub disjoint: bool,
    pub globular: bool,
    pub unital: bool,
    pub normal: bool,
    pub weakly_loop_free: bool,
    pub steiner_loop_free: bool,
    pub strongly_loop_free: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Disjoint,
    Globular,
    Unital,
    Normal,
    WeaklyLoopFree,
    SteinerLoopFree,
    StronglyLoopFree,
    Arithmetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: Axiom,
    pub generators: Vec<GeneratorId>,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelWitness {
    pub dim: usize,
    pub witness: Witness<GeneratorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub weak: Vec<LevelWitness>,
    pub steiner: Vec<LevelWitness>,
    pub strong: Witness<GeneratorId>,
}

/// The strongest notion the structure satisfies. Variants are ordered from
/// weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    StructureOnly,
    AdditiveParityComplex,
    WeakParityComplex,
    ParityComplex,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::StructureOnly => "parity structure only",
            Classification::AdditiveParityComplex => "additive parity complex",
            Classification::WeakParityComplex => "weak parity complex",
            Classification::ParityComplex => "parity complex",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub flags: Flags,
    /// Every face is a subset, so the structure is a parity structure.
    pub subset_faces: bool,
    /// Globularity in subset form `x^{−∓} = x^{+∓}`, `x^{−±} = x^{+±}`;
    /// only computed when every face is a well-formed subset.
    pub subset_globular: Option<bool>,
    pub witnesses: Witnesses,
    pub failures: Vec<Failure>,
    pub classification: Classification,
}

impl ValidationReport {
    pub fn meets(&self, required: Classification) -> bool {
        self.classification >= required
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "classification: {}", self.classification)?;
        let fl = &self.flags;
        for (name, value) in [
            ("disjoint", fl.disjoint),
            ("globular", fl.globular),
            ("unital", fl.unital),
            ("normal", fl.normal),
            ("weakly_loop_free", fl.weakly_loop_free),
            ("steiner_loop_free", fl.steiner_loop_free),
            ("strongly_loop_free", fl.strongly_loop_free),
        ] {
            writeln!(f, "{name}: {value}")?;
        }
        writeln!(f, "subset_faces: {}", self.subset_faces)?;
        if let Some(g) = self.subset_globular {
            writeln!(f, "subset_globular: {g}")?;
        }
        for lw in &self.witnesses.weak {
            writeln!(f, "weak[{}] {}", lw.dim, lw.witness)?;
        }
        for lw in &self.witnesses.steiner {
            if !lw.witness.is_order() {
                writeln!(f, "steiner[{}] {}", lw.dim, lw.witness)?;
            }
        }
        writeln!(f, "strong {}", self.witnesses.strong)?;
        for failure in &self.failures {
            let names: Vec<String> = failure.generators.iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "failure {:?} [{}]: {}",
                failure.axiom,
                names.join(", "),
                failure.explanation
            )?;
        }
        Ok(())
    }
}

struct Checker<'a> {
    b: &'a AdditiveParityStructure,
    failures: Vec<Failure>,
}

impl Checker<'_> {
    fn fail(&mut self, axiom: Axiom, generators: Vec<GeneratorId>, explanation: String) {
        self.failures.push(Failure {
            axiom,
            generators,
            explanation,
        });
    }

    fn arithmetic(&mut self, g: &GeneratorId, err: StructureError) {
        self.fail(Axiom::Arithmetic, vec![g.clone()], err.to_string());
    }

    fn disjoint(&mut self) -> bool {
        let mut ok = true;
        for g in self.b.iter().filter(|g| g.dim() > 0) {
            let f = self.b.faces(g).expect("faces exist above dimension 0");
            let meet = f.neg.meet(&f.pos).expect("faces share a dimension");
            if !meet.is_empty() {
                ok = false;
                self.fail(
                    Axiom::Disjoint,
                    vec![g.clone()],
                    format!("negative and positive faces share {meet}"),
                );
            }
        }
        ok
    }

    fn globular(&mut self) -> bool {
        let mut ok = true;
        for g in self.b.iter().filter(|g| g.dim() >= 2) {
            let f = self.b.faces(g).expect("faces exist above dimension 0");
            let (neg, pos) = match (self.b.face_images(&f.neg), self.b.face_images(&f.pos)) {
                (Ok(n), Ok(p)) => (n, p),
                (Err(e), _) | (_, Err(e)) => {
                    ok = false;
                    self.arithmetic(g, e);
                    continue;
                }
            };
            if neg.neg != pos.neg {
                ok = false;
                self.fail(
                    Axiom::Globular,
                    vec![g.clone()],
                    format!("∂⁻∂⁻ = {} but ∂⁻∂⁺ = {}", neg.neg, pos.neg),
                );
            }
            if neg.pos != pos.pos {
                ok = false;
                self.fail(
                    Axiom::Globular,
                    vec![g.clone()],
                    format!("∂⁺∂⁻ = {} but ∂⁺∂⁺ = {}", neg.pos, pos.pos),
                );
            }
        }
        ok
    }

    fn subset_globular(&self) -> Option<bool> {
        let b = self.b;
        let well_formed_faces = b.iter().filter(|g| g.dim() > 0).all(|g| {
            let f = b.faces(g).expect("faces exist above dimension 0");
            b.is_well_formed(&f.neg).unwrap_or(false) && b.is_well_formed(&f.pos).unwrap_or(false)
        });
        if !well_formed_faces {
            return None;
        }
        let ok = b.iter().filter(|g| g.dim() >= 2).all(|g| {
            let f = b.faces(g).expect("faces exist above dimension 0");
            match (b.subset_faces(&f.neg), b.subset_faces(&f.pos)) {
                (Ok(n), Ok(p)) => n.neg_only == p.neg_only && n.pos_only == p.pos_only,
                _ => false,
            }
        });
        Some(ok)
    }

    fn normal(&mut self) -> bool {
        let mut ok = true;
        for g in self.b.generators(1) {
            let f = self.b.faces(g).expect("faces exist above dimension 0");
            if f.neg.as_singleton().is_none() || f.pos.as_singleton().is_none() {
                ok = false;
                self.fail(
                    Axiom::Normal,
                    vec![g.clone()],
                    format!("faces {} and {} are not both singletons", f.neg, f.pos),
                );
            }
        }
        ok
    }

    fn unital(&mut self, subset_faces: bool, normal: bool) -> bool {
        let mut ok = true;
        let gens: Vec<GeneratorId> = self.b.iter().cloned().collect();
        for g in &gens {
            if subset_faces {
                let (mu, pi) = match self.b.mu_pi(g) {
                    Ok(v) => v,
                    Err(e) => {
                        ok = false;
                        self.arithmetic(g, e);
                        continue;
                    }
                };
                for k in 0..=g.dim() {
                    for (label, col) in [("μ", &mu[k]), ("π", &pi[k])] {
                        if !self.b.is_well_formed(col).unwrap_or(false) {
                            ok = false;
                            self.fail(
                                Axiom::Unital,
                                vec![g.clone()],
                                format!("{label}({g})_{k} = {col} is not well-formed"),
                            );
                        }
                    }
                }
            } else {
                let (neg, pos) = match self.b.iterated_faces(g) {
                    Ok(v) => v,
                    Err(e) => {
                        ok = false;
                        self.arithmetic(g, e);
                        continue;
                    }
                };
                let bottom_ok = neg[0].total() == Ok(1) && pos[0].total() == Ok(1);
                if !(normal && bottom_ok) {
                    ok = false;
                    self.fail(
                        Axiom::Unital,
                        vec![g.clone()],
                        format!("iterated faces bottom out in {} and {}", neg[0], pos[0]),
                    );
                }
            }
        }
        ok
    }

    fn weak(&mut self) -> (bool, Vec<LevelWitness>) {
        let mut witnesses = Vec::new();
        for n in 1..self.b.dim_count() {
            let nodes = self.b.generators(n);
            let mut edges = BTreeSet::new();
            for (i, x) in nodes.iter().enumerate() {
                let xf = self.b.faces(x).expect("faces exist above dimension 0");
                for (j, y) in nodes.iter().enumerate() {
                    let yf = self.b.faces(y).expect("faces exist above dimension 0");
                    if !xf.pos.is_disjoint(&yf.neg).expect("same dimension") {
                        edges.insert((i, j));
                    }
                }
            }
            let witness = linearize(nodes, &edges);
            if let Witness::Cycle(c) = &witness {
                self.fail(Axiom::WeaklyLoopFree, c.clone(), format!("cycle in dimension {n}"));
            }
            witnesses.push(LevelWitness { dim: n, witness });
        }
        let ok = witnesses.iter().all(|w| w.witness.is_order());
        (ok, witnesses)
    }

    fn steiner(&mut self) -> (bool, Vec<LevelWitness>) {
        let nodes: Vec<GeneratorId> = self.b.iter().cloned().collect();
        let mut columns: BTreeMap<usize, (Vec<Multiset>, Vec<Multiset>)> = BTreeMap::new();
        let mut ok = true;
        for (i, g) in nodes.iter().enumerate() {
            match self.b.iterated_faces(g) {
                Ok(cols) => {
                    columns.insert(i, cols);
                }
                Err(e) => {
                    ok = false;
                    self.arithmetic(g, e);
                }
            }
        }
        let mut witnesses = Vec::new();
        for n in 0..self.b.dim_count() {
            let mut edges = BTreeSet::new();
            let live: Vec<usize> = columns.keys().copied().filter(|&i| nodes[i].dim() >= n).collect();
            for &i in &live {
                let plus = &columns[&i].1[n];
                for &j in &live {
                    if i != j && !plus.is_disjoint(&columns[&j].0[n]).expect("same dimension") {
                        edges.insert((i, j));
                    }
                }
            }
            let witness = linearize(&nodes, &edges);
            if let Witness::Cycle(c) = &witness {
                self.fail(Axiom::SteinerLoopFree, c.clone(), format!("cycle at level {n}"));
            }
            witnesses.push(LevelWitness { dim: n, witness });
        }
        ok &= witnesses.iter().all(|w| w.witness.is_order());
        (ok, witnesses)
    }

    fn strong(&mut self) -> (bool, Witness<GeneratorId>) {
        let nodes: Vec<GeneratorId> = self.b.iter().cloned().collect();
        let index: BTreeMap<&GeneratorId, usize> = nodes.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut edges = BTreeSet::new();
        for (i, g) in nodes.iter().enumerate() {
            if let Some(f) = self.b.faces(g) {
                for x in f.neg.support() {
                    edges.insert((index[x], i));
                }
                for y in f.pos.support() {
                    edges.insert((i, index[y]));
                }
            }
        }
        let witness = linearize(&nodes, &edges);
        if let Witness::Cycle(c) = &witness {
            self.fail(
                Axiom::StronglyLoopFree,
                c.clone(),
                "cycle in the solid triangle relation".into(),
            );
        }
        (witness.is_order(), witness)
    }
}

/// Runs every axiom check. Problems are recorded in the report rather than
/// returned as errors.
pub fn validate(b: &AdditiveParityStructure) -> ValidationReport {
    let mut checker = Checker {
        b,
        failures: Vec::new(),
    };
    let subset_faces = b.has_subset_faces();
    let disjoint = checker.disjoint();
    let globular = checker.globular();
    let subset_globular = if subset_faces { checker.subset_globular() } else { None };
    let normal = checker.normal();
    let unital = checker.unital(subset_faces, normal);
    let (weakly_loop_free, weak) = checker.weak();
    let (steiner_loop_free, steiner) = checker.steiner();
    let (strongly_loop_free, strong) = checker.strong();

    let classification = if !disjoint || !globular {
        Classification::StructureOnly
    } else if !subset_faces || !unital || !weakly_loop_free {
        Classification::AdditiveParityComplex
    } else if strongly_loop_free {
        Classification::ParityComplex
    } else {
        Classification::WeakParityComplex
    };

    ValidationReport {
        flags: Flags {
            disjoint,
            globular,
            unital,
            normal,
            weakly_loop_free,
            steiner_loop_free,
            strongly_loop_free,
        },
        subset_faces,
        subset_globular,
        witnesses: Witnesses { weak, steiner, strong },
        failures: checker.failures,
        classification,
    }
}
