use paritykit::chain::FreeDirectedComplex;
use paritykit::families::{cube, globe, oriental};
use paritykit::structure::AdditiveParityStructure;
use paritykit::validate::{validate, Classification};

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn counts(b: &AdditiveParityStructure) -> Vec<u64> {
    (0..=b.top_dim().unwrap())
        .map(|d| b.generators(d).len() as u64)
        .collect()
}

fn every_family() -> Vec<(String, AdditiveParityStructure)> {
    let mut out = Vec::new();
    for n in 0..=6 {
        out.push((format!("globe-{n}"), (*globe(n).unwrap()).clone()));
    }
    for n in 0..=5 {
        out.push((format!("oriental-{n}"), (*oriental(n).unwrap()).clone()));
    }
    for n in 0..=4 {
        out.push((format!("cube-{n}"), (*cube(n).unwrap()).clone()));
    }
    out
}

#[test]
fn generator_counts() {
    for n in 0..=6u64 {
        let o = oriental(n as usize).unwrap();
        let expected: Vec<u64> = (0..=n).map(|k| binomial(n + 1, k + 1)).collect();
        assert_eq!(counts(&o), expected, "oriental-{n}");
        assert_eq!(o.len() as u64, (1 << (n + 1)) - 1);

        let c = cube(n as usize).unwrap();
        let expected: Vec<u64> = (0..=n).map(|k| binomial(n, k) << (n - k)).collect();
        assert_eq!(counts(&c), expected, "cube-{n}");
        assert_eq!(c.len() as u64, 3u64.pow(n as u32));

        assert_eq!(globe(n as usize).unwrap().len() as u64, 2 * n + 1);
    }
}

#[test]
fn families_are_parity_complexes() {
    for (name, b) in every_family() {
        let report = validate(&b);
        assert_eq!(report.classification, Classification::ParityComplex, "{name}: {report}");
        assert!(report.failures.is_empty(), "{name}");
        assert_eq!(report.subset_globular, Some(true), "{name}");
        let complex = FreeDirectedComplex::from_structure(&b).check();
        assert!(complex.boundary_squared_zero, "{name}");
        assert_eq!(complex.normal, report.flags.normal, "{name}");
        assert_eq!(complex.unital, report.flags.unital, "{name}");
        assert_eq!(complex.augmentation_ok, Some(true), "{name}");
    }
}

#[test]
fn iterated_faces_match_chain_parts() {
    for (name, b) in every_family() {
        let k = FreeDirectedComplex::from_structure(&b);
        for g in b.iter() {
            assert_eq!(b.mu_pi(g).unwrap(), k.iterated_parts(g).unwrap(), "{name} {g}");
        }
    }
}

#[test]
fn skeletons_stay_parity_complexes() {
    for (name, b) in every_family() {
        let top = b.top_dim().unwrap();
        for n in 0..top {
            let s = b.skeleton(n);
            assert_eq!(s.top_dim(), Some(n));
            assert_eq!(
                validate(&s).classification,
                Classification::ParityComplex,
                "{name} skeleton {n}"
            );
        }
    }
    // the boundary of a simplex is a sphere, the boundary of a cube too
    assert_eq!(counts(&oriental(3).unwrap().skeleton(2)), vec![4, 6, 4]);
    assert_eq!(counts(&cube(3).unwrap().skeleton(2)), vec![8, 12, 6]);
}

#[test]
fn globe_dimensions() {
    // globes have exactly two generators below the top in every dimension
    let g = globe(4).unwrap();
    assert_eq!(counts(&g), vec![2, 2, 2, 2, 1]);
    let s = g.skeleton(3);
    assert_eq!(validate(&s).classification, Classification::ParityComplex);
}
