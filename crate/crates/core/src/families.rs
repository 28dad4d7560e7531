//! Standard parity complexes: globes, orientals (parity simplexes) and parity
//! cubes.
//!
//! Orientation conventions:
//!
//! * oriental: dropping vertex `i` of a simplex gives a positive face when `i`
//!   is even and a negative face when `i` is odd, so `⟨01⟩` goes from `0` to
//!   `1`;
//! * cube: replacing the `j`-th star (counting from 1, left to right) by `1`
//!   gives a positive face when `j` is odd and a negative face when `j` is
//!   even; replacing it by `0` gives the opposite sign. So `*` goes from `0`
//!   to `1`.
//!
//! Reversing every orientation yields an equally valid convention.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::structure::{ParityStructure, StructureBuilder};

pub const GLOBE_MAX: usize = 16;
pub const ORIENTAL_MAX: usize = 7;
pub const CUBE_MAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family} dimension {n} exceeds the bound {max}")]
    TooLarge { family: Family, n: usize, max: usize },
    #[error("unknown family {0:?} (expected globe, oriental or cube)")]
    UnknownFamily(String),
    #[error("{0:?} is not a family name such as oriental-2")]
    BadName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Globe,
    Oriental,
    Cube,
}

impl Family {
    pub fn max(self) -> usize {
        match self {
            Family::Globe => GLOBE_MAX,
            Family::Oriental => ORIENTAL_MAX,
            Family::Cube => CUBE_MAX,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Globe => "globe",
            Family::Oriental => "oriental",
            Family::Cube => "cube",
        })
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "globe" => Ok(Family::Globe),
            "oriental" | "simplex" => Ok(Family::Oriental),
            "cube" => Ok(Family::Cube),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Result<Self, FamilyError> {
        if n > family.max() {
            return Err(FamilyError::TooLarge {
                family,
                n,
                max: family.max(),
            });
        }
        Ok(Self { family, n })
    }

    /// Conventional fixture name, e.g. `oriental-2`.
    pub fn name(&self) -> String {
        format!("{}-{}", self.family, self.n)
    }

    pub fn build(&self) -> ParityStructure {
        match self.family {
            Family::Globe => build_globe(self.n),
            Family::Oriental => build_oriental(self.n),
            Family::Cube => build_cube(self.n),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses names such as `oriental-2` or `cube-3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::BadName(s.to_string());
        let (family, n) = s.rsplit_once('-').ok_or_else(bad)?;
        let n = n.parse().map_err(|_| bad())?;
        FamilySpec::new(family.parse()?, n)
    }
}

pub fn globe(n: usize) -> Result<ParityStructure, FamilyError> {
    Ok(FamilySpec::new(Family::Globe, n)?.build())
}

pub fn oriental(n: usize) -> Result<ParityStructure, FamilyError> {
    Ok(FamilySpec::new(Family::Oriental, n)?.build())
}

pub fn cube(n: usize) -> Result<ParityStructure, FamilyError> {
    Ok(FamilySpec::new(Family::Cube, n)?.build())
}

fn finish(builder: StructureBuilder) -> ParityStructure {
    let b = builder.build().expect("family data is consistent");
    ParityStructure::try_from(b).expect("family faces are subsets")
}

fn build_globe(n: usize) -> ParityStructure {
    let name = |k: usize, sign: char| format!("e{k}{sign}");
    let mut builder = StructureBuilder::new();
    for k in 0..n {
        for sign in ['-', '+'] {
            if k == 0 {
                builder.push(name(0, sign), 0, vec![], vec![]);
            } else {
                builder.push(
                    name(k, sign),
                    k,
                    vec![(name(k - 1, '-'), 1)],
                    vec![(name(k - 1, '+'), 1)],
                );
            }
        }
    }
    if n == 0 {
        builder.push("top".into(), 0, vec![], vec![]);
    } else {
        builder.push(
            "top".into(),
            n,
            vec![(name(n - 1, '-'), 1)],
            vec![(name(n - 1, '+'), 1)],
        );
    }
    finish(builder)
}

fn vertex_name(vertices: &[usize]) -> String {
    vertices.iter().map(|v| v.to_string()).collect()
}

fn build_oriental(n: usize) -> ParityStructure {
    let mut builder = StructureBuilder::new();
    for mask in 1u32..(1 << (n + 1)) {
        let vertices: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
        let dim = vertices.len() - 1;
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        if dim > 0 {
            for i in 0..vertices.len() {
                let mut face = vertices.clone();
                face.remove(i);
                let entry = (vertex_name(&face), 1);
                if i % 2 == 0 {
                    pos.push(entry);
                } else {
                    neg.push(entry);
                }
            }
        }
        builder.push(vertex_name(&vertices), dim, neg, pos);
    }
    finish(builder)
}

fn build_cube(n: usize) -> ParityStructure {
    let mut builder = StructureBuilder::new();
    if n == 0 {
        builder.push("pt".into(), 0, vec![], vec![]);
        return finish(builder);
    }
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut word = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            word.push(b"01*"[c % 3]);
            c /= 3;
        }
        word.reverse();
        let stars: Vec<usize> = (0..n).filter(|&i| word[i] == b'*').collect();
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        for (j, &i) in stars.iter().enumerate() {
            // j is 0-based here, so an odd star in 1-based counting has j even
            for digit in *b"01" {
                let mut face = word.clone();
                face[i] = digit;
                let entry = (String::from_utf8(face).expect("ascii"), 1);
                let positive = (digit == b'1') == (j % 2 == 0);
                if positive {
                    pos.push(entry);
                } else {
                    neg.push(entry);
                }
            }
        }
        builder.push(String::from_utf8(word).expect("ascii"), stars.len(), neg, pos);
    }
    finish(builder)
}

/// Two points joined by a pair of opposed edges; globular and unital but not
/// weakly loop-free.
pub fn circle() -> ParityStructure {
    let builder = StructureBuilder::new()
        .generator("p", 0)
        .generator("q", 0)
        .element("a", 1, &["p"], &["q"])
        .element("b", 1, &["q"], &["p"]);
    finish(builder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::Multiset;
    use crate::structure::AdditiveParityStructure;

    fn names(m: &Multiset) -> Vec<String> {
        m.support().map(|g| g.name().to_string()).collect()
    }

    fn faces(b: &AdditiveParityStructure, name: &str, dim: usize) -> (Vec<String>, Vec<String>) {
        let g = b.lookup(name, dim).unwrap();
        let f = b.faces(g).unwrap();
        (names(&f.neg), names(&f.pos))
    }

    #[test]
    fn globe_shapes() {
        assert_eq!(globe(0).unwrap().len(), 1);
        let g2 = globe(2).unwrap();
        assert_eq!(g2.len(), 5);
        assert_eq!(faces(&g2, "top", 2), (vec!["e1-".to_string()], vec!["e1+".to_string()]));
        assert_eq!(faces(&g2, "e1+", 1), (vec!["e0-".to_string()], vec!["e0+".to_string()]));
        for n in 0..=GLOBE_MAX {
            assert_eq!(globe(n).unwrap().len(), 2 * n + 1);
        }
        assert!(globe(GLOBE_MAX + 1).is_err());
    }

    #[test]
    fn oriental_faces() {
        let o1 = oriental(1).unwrap();
        assert_eq!(faces(&o1, "01", 1), (vec!["0".to_string()], vec!["1".to_string()]));
        let o2 = oriental(2).unwrap();
        assert_eq!(
            faces(&o2, "012", 2),
            (vec!["02".to_string()], vec!["01".to_string(), "12".to_string()])
        );
        let o3 = oriental(3).unwrap();
        assert_eq!(
            faces(&o3, "0123", 3),
            (
                vec!["012".to_string(), "023".to_string()],
                vec!["013".to_string(), "123".to_string()]
            )
        );
        assert!(oriental(ORIENTAL_MAX + 1).is_err());
    }

    #[test]
    fn cube_faces() {
        let c1 = cube(1).unwrap();
        assert_eq!(faces(&c1, "*", 1), (vec!["0".to_string()], vec!["1".to_string()]));
        let c2 = cube(2).unwrap();
        assert_eq!(
            faces(&c2, "**", 2),
            (
                vec!["*1".to_string(), "0*".to_string()],
                vec!["*0".to_string(), "1*".to_string()]
            )
        );
        assert_eq!(cube(0).unwrap().len(), 1);
        assert!(cube(CUBE_MAX + 1).is_err());
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("cube".parse::<Family>().unwrap(), Family::Cube);
        assert!("sphere".parse::<Family>().is_err());
        assert_eq!(FamilySpec::new(Family::Oriental, 2).unwrap().name(), "oriental-2");
        assert_eq!(
            "cube-3".parse::<FamilySpec>().unwrap(),
            FamilySpec::new(Family::Cube, 3).unwrap()
        );
        assert!(matches!("cube".parse::<FamilySpec>(), Err(FamilyError::BadName(_))));
        assert!(matches!("cube-x".parse::<FamilySpec>(), Err(FamilyError::BadName(_))));
        assert!(matches!(
            "cube-9".parse::<FamilySpec>(),
            Err(FamilyError::TooLarge { .. })
        ));
    }
}
