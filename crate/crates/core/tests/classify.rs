mod common;

use std::collections::BTreeSet;

use common::*;
use lcmlat::classify::{census, enumerate_atomistic};
use lcmlat::lattice::canonical_form;
use lcmlat::Config;

#[test]
fn enumeration_matches_set_families() {
    let cfg = Config::default();
    for k in 1..=4 {
        let found: BTreeSet<String> = enumerate_atomistic(k, &cfg)
            .unwrap()
            .into_iter()
            .map(|c| c.canonical.to_string())
            .collect();
        let families = atom_set_families(k);
        let expected: BTreeSet<String> = families
            .iter()
            .map(|f| canonical_form(&family_lattice(f), 5040).unwrap().to_string())
            .collect();
        assert_eq!(expected.len(), families.len(), "oracle classes collide at k={k}");
        assert_eq!(found, expected, "k={k}");
    }
}

#[test]
fn emitted_lattices_are_atomistic() {
    for c in enumerate_atomistic(4, &Config::default()).unwrap() {
        assert!(c.lattice.structure_report().is_atomistic);
        assert_eq!(c.lattice.atoms().len(), 4);
    }
}

#[test]
fn enumeration_is_deterministic() {
    let cfg = Config::default();
    let a: Vec<_> = enumerate_atomistic(4, &cfg).unwrap().into_iter().map(|c| c.canonical).collect();
    let b: Vec<_> = enumerate_atomistic(4, &cfg).unwrap().into_iter().map(|c| c.canonical).collect();
    assert_eq!(a, b);
}

#[test]
fn census_three_atoms() {
    let c = census(3, true, &Config::default()).unwrap();
    assert_eq!(c.summary.classes, 4);
    assert_eq!(c.summary.violations, 0);
    assert!(c.records.iter().all(|r| r.conjectures == Some([true; 3])));
}
