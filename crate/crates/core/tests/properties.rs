mod common;

use common::*;
use lcmlat::lattice::{
    canonical_form, check_pseudo_inverse, factor_map, find_isomorphism, free_cover_map,
    pseudo_inverse, Factorization,
};
use lcmlat::monomial::{
    colon_pair, deform_pair, inflate, polarize, radical_pair, reconstruct, restrict_variable_pair,
    squarefree_check, weight_map, Deformation,
};
use lcmlat::realize::{canonical_realization, equalize_degrees, realize, validate_weighting};
use lcmlat::{LcmLattice, Monomial, QuotientPair, Semilattice};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A collapse-chain image of `B(k)` or the lcm-semilattice of a random ideal.
fn random_lattice(seed: u64) -> Semilattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=4);
        let b = Semilattice::boolean(k, 100).unwrap();
        let steps = rng.gen_range(0..b.len());
        random_collapse_chain(&mut rng, &b, steps, false)
            .target()
            .clone()
    } else {
        let g = random_ideal(&mut rng, 3, 5, 3);
        LcmLattice::new(&g, 4096).unwrap().lattice().clone()
    }
}

fn assert_lattice_axioms(l: &Semilattice) -> Result<(), TestCaseError> {
    let n = l.len();
    let mis = l.meet_irreducibles();
    for a in 0..n {
        for b in 0..n {
            let j = l.join(a, b);
            prop_assert!(l.leq(a, j) && l.leq(b, j));
            for c in 0..n {
                if l.leq(a, c) && l.leq(b, c) {
                    prop_assert!(l.leq(j, c));
                }
            }
            let above_b: Vec<usize> = mis.iter().copied().filter(|&m| l.leq(b, m)).collect();
            prop_assert_eq!(l.leq(a, b), above_b.iter().all(|&m| l.leq(a, m)));
        }
        let above: Vec<usize> = mis.iter().copied().filter(|&m| l.leq(a, m)).collect();
        prop_assert_eq!(l.meet_hat(&above), Some(a));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn semilattice_axioms_and_meet_irreducible_cover(seed in any::<u64>()) {
        assert_lattice_axioms(&random_lattice(seed))?;
    }

    #[test]
    fn collapse_maps_have_pseudo_inverses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lattice(seed);
        let steps = rng.gen_range(0..=l.len());
        let phi = random_collapse_chain(&mut rng, &l, steps, false);
        let dagger = pseudo_inverse(&phi).unwrap();
        prop_assert!(check_pseudo_inverse(&phi, &dagger).is_ok());
    }

    #[test]
    fn factorization_terminates_with_bijection(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lattice(seed);
        let steps = rng.gen_range(0..=l.len());
        let phi = random_collapse_chain(&mut rng, &l, steps, false);
        let expected = phi.source().len() - phi.target().len();
        let mut cur = phi;
        let mut count = 0;
        while let Factorization::FactorsThrough { residual, .. } = factor_map(&cur).unwrap() {
            cur = residual;
            count += 1;
        }
        prop_assert_eq!(count, expected);
        prop_assert!(cur.is_bijective());
    }

    #[test]
    fn free_cover_factors_into_atom_preserving_collapses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=4);
        let b = Semilattice::boolean(k, 100).unwrap();
        let steps = rng.gen_range(0..b.len());
        let l = random_collapse_chain(&mut rng, &b, steps, true).target().clone();
        prop_assert!(l.is_atomistic());
        let phi = free_cover_map(&l, 100).unwrap();
        prop_assert!(phi.is_surjective());
        prop_assert!(check_pseudo_inverse(&phi, &pseudo_inverse(&phi).unwrap()).is_ok());
    }

    #[test]
    fn canonical_form_ignores_relabeling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lattice(seed);
        let mut perm: Vec<usize> = (0..l.len()).collect();
        perm.shuffle(&mut rng);
        let p = l.permuted(&perm).unwrap();
        prop_assert_eq!(canonical_form(&l, 5040).unwrap(), canonical_form(&p, 5040).unwrap());
        let iso = find_isomorphism(&l, &p, 5040).unwrap().unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(iso[l.join(a, b)], p.join(iso[a], iso[b]));
            }
        }
    }

    #[test]
    fn inversion_formula(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_ideal(&mut rng, 4, 5, 3);
        let l = LcmLattice::new(&g, 4096).unwrap();
        let w = weight_map(&l);
        for e in 0..l.len() {
            prop_assert_eq!(&reconstruct(&w, e).unwrap(), l.monomial(e));
        }
    }

    #[test]
    fn squarefree_detection(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_ideal(&mut rng, 4, 5, 2);
        let witness = squarefree_check(&g, 4096).unwrap();
        prop_assert_eq!(witness.is_none(), g.minimalize().is_squarefree());
    }

    #[test]
    fn realization_roundtrip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=4);
        let b = Semilattice::boolean(k, 100).unwrap();
        let steps = rng.gen_range(0..b.len());
        let l = random_collapse_chain(&mut rng, &b, steps, false).target().clone();
        let w = random_coprime_weighting(&mut rng, &l);
        prop_assert!(validate_weighting(&w).is_ok());
        let gens = realize(&w).unwrap();
        let ll = LcmLattice::new(&gens, 4096).unwrap();
        let iso: Vec<usize> = gens.gens().iter().map(|m| ll.index_of(m).unwrap()).collect();
        prop_assert_eq!(ll.len(), l.len());
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(iso[l.join(a, b)], ll.lattice().join(iso[a], iso[b]));
            }
        }
        let w2 = weight_map(&ll);
        prop_assert_eq!(w2.bottom(), w.bottom());
        for (a, wa) in w.weights().iter().enumerate() {
            prop_assert_eq!(&w2.weights()[iso[a]], wa);
        }
    }

    #[test]
    fn canonical_realization_is_squarefree(seed in any::<u64>()) {
        let l = random_lattice(seed);
        let gens = canonical_realization(&l).unwrap();
        prop_assert!(gens.is_squarefree());
        prop_assert_eq!(gens.nvars(), l.meet_irreducibles().len());
        let ll = LcmLattice::new(&gens, 4096).unwrap();
        prop_assert!(find_isomorphism(&l, ll.lattice(), 5040).unwrap().is_some());
    }

    #[test]
    fn equalized_antichain_shares_degree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lattice(seed);
        let w = random_coprime_weighting(&mut rng, &l);
        let mut antichain: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..l.len()).collect();
        order.shuffle(&mut rng);
        for a in order {
            if antichain.iter().all(|&b| !l.comparable(a, b)) {
                antichain.push(a);
            }
        }
        let eq = equalize_degrees(&w, &antichain).unwrap();
        let gens = realize(&eq).unwrap();
        let d = gens.gens()[antichain[0]].degree();
        prop_assert!(antichain.iter().all(|&a| gens.gens()[a].degree() == d));
        let ll = LcmLattice::new(&gens, 4096).unwrap();
        prop_assert!(find_isomorphism(&l, ll.lattice(), 5040).unwrap().is_some());
    }

    #[test]
    fn transforms_keep_containment(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_pair(&mut rng, 3, 4, 3);
        let pol = polarize(&p);
        prop_assert!(pol.union().is_squarefree());
        let a = LcmLattice::of_pair(&p, 4096).unwrap();
        let b = LcmLattice::of_pair(&pol, 4096).unwrap();
        prop_assert!(find_isomorphism(a.lattice(), b.lattice(), 5040).unwrap().is_some());
        if let Ok(r) = radical_pair(&p) {
            prop_assert!(r.i().contains_ideal(r.j()));
        }
        let v = random_monomial(&mut rng, 3, 2);
        let c = colon_pair(&p, &v).unwrap();
        prop_assert!(c.i().contains_ideal(c.j()));
        let sq = radical_pair(&QuotientPair::ideal(p.i().clone())).unwrap();
        let r = restrict_variable_pair(&sq, rng.gen_range(0..3)).unwrap();
        prop_assert!(r.i().is_squarefree());
        let m = sq.i().gens()[0].clone();
        let up = inflate(&sq, &m).unwrap();
        let la = LcmLattice::of_pair(&sq, 4096).unwrap();
        let lb = LcmLattice::of_pair(&up, 4096).unwrap();
        prop_assert!(find_isomorphism(la.lattice(), lb.lattice(), 5040).unwrap().is_some());
        let d = Deformation::zero(&p.union());
        let same = deform_pair(&p, &d).unwrap();
        prop_assert!(same.union().gens() == p.union().gens());
    }
}


#[test]
fn weight_of_single_generator() {
    let g = lcmlat::GeneratorSet::parse(&["x", "y"], &["x^2*y"]).unwrap();
    let l = LcmLattice::new(&g, 10).unwrap();
    let w = weight_map(&l);
    let (bottom, ws) = w.render();
    assert_eq!(bottom, "x^2*y");
    assert_eq!(ws, vec!["1"]);
    assert_eq!(reconstruct(&w, 0).unwrap(), Monomial::new(vec![2, 1]));
}
