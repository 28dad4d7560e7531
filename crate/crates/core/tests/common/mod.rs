#![allow(dead_code)]

pub mod laws;
pub mod oracle;

use paritykit::structure::{AdditiveParityStructure, StructureBuilder};
use paritykit::validate::{validate, Classification};
use rand::Rng;

/// Random additive structure with at most `max_gens` generators in at most
/// `max_dims` dimensions. Face counts are 0..=`max_count`; a face lands on
/// the negative side, the positive side or neither.
pub fn random_structure<R: Rng>(
    rng: &mut R,
    max_gens: usize,
    max_dims: usize,
    max_count: u64,
) -> AdditiveParityStructure {
    let dims = rng.gen_range(1..=max_dims);
    let total = rng.gen_range(dims..=max_gens);
    let mut sizes = vec![1usize; dims];
    for _ in dims..total {
        sizes[rng.gen_range(0..dims)] += 1;
    }
    let mut builder = StructureBuilder::new();
    for (d, &size) in sizes.iter().enumerate() {
        for i in 0..size {
            let mut neg = Vec::new();
            let mut pos = Vec::new();
            if d > 0 {
                for j in 0..sizes[d - 1] {
                    let c = rng.gen_range(1..=max_count);
                    match rng.gen_range(0..3) {
                        0 => neg.push((format!("g{}_{j}", d - 1), c)),
                        1 => pos.push((format!("g{}_{j}", d - 1), c)),
                        _ => {}
                    }
                }
            }
            builder.push(format!("g{d}_{i}"), d, neg, pos);
        }
    }
    builder.build().expect("names are consistent")
}

/// Parity structure with generator counts `sizes` whose faces are read off
/// `code`, one base-3 digit per (generator, lower generator) pair.
pub fn coded_structure(sizes: &[usize], mut code: u64) -> AdditiveParityStructure {
    let mut builder = StructureBuilder::new();
    for (d, &size) in sizes.iter().enumerate() {
        for i in 0..size {
            let mut neg = Vec::new();
            let mut pos = Vec::new();
            if d > 0 {
                for j in 0..sizes[d - 1] {
                    match code % 3 {
                        1 => neg.push((format!("{}{j}", letter(d - 1)), 1)),
                        2 => pos.push((format!("{}{j}", letter(d - 1)), 1)),
                        _ => {}
                    }
                    code /= 3;
                }
            }
            builder.push(format!("{}{i}", letter(d)), d, neg, pos);
        }
    }
    builder.build().expect("names are consistent")
}

fn letter(d: usize) -> char {
    b"vefg"[d] as char
}

/// Number of face codes for `sizes`.
pub fn code_space(sizes: &[usize]) -> u64 {
    let pairs: usize = sizes.windows(2).map(|w| w[0] * w[1]).sum();
    3u64.pow(pairs as u32)
}

/// Generator-count profiles with the given total in at most `max_dims`
/// dimensions, every listed dimension non-empty.
pub fn profiles(total: usize, max_dims: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, dims_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if dims_left == 0 {
            return;
        }
        for s in 1..=left {
            cur.push(s);
            go(left - s, dims_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_dims, &mut Vec::new(), &mut out);
    out
}

/// First structure (by size, then profile, then code) that is weakly but not
/// strongly loop-free and, if `complex` is set, also a weak parity complex.
pub fn search_weak_not_strong(max_gens: usize, max_dims: usize, complex: bool) -> Option<AdditiveParityStructure> {
    for total in 1..=max_gens {
        for sizes in profiles(total, max_dims) {
            for code in 0..code_space(&sizes) {
                let b = coded_structure(&sizes, code);
                let r = validate(&b);
                if !r.flags.weakly_loop_free || r.flags.strongly_loop_free {
                    continue;
                }
                if !complex || r.classification == Classification::WeakParityComplex {
                    return Some(b);
                }
            }
        }
    }
    None
}

pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every fixture in the corpus, by file stem, sorted.
pub fn corpus() -> Vec<(String, paritykit::fixture::Fixture)> {
    let mut out: Vec<_> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            let fx = paritykit::fixture::Fixture::parse(&text).unwrap_or_else(|e| panic!("{stem}: {e}"));
            (stem, fx)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn load(stem: &str) -> paritykit::fixture::Fixture {
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{stem}.json"))).unwrap();
    paritykit::fixture::Fixture::parse(&text).unwrap()
}

pub fn structure(stem: &str) -> AdditiveParityStructure {
    load(stem).into_structure().unwrap()
}

pub fn morphism(stem: &str) -> paritykit::morphism::GradedMorphism {
    load(stem).into_morphism().unwrap()
}
