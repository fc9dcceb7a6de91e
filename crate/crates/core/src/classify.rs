//! Atomistic semilattices up to isomorphism and the lattice invariants
//! `spdim₁, spdim₂, pdim₁, pdim₂`.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::lattice::io::LatticeJson;
use crate::lattice::{canonical_form, collapse, CanonicalForm, Semilattice};
use crate::monomial::{GeneratorSet, IdealJson, Monomial, QuotientPair, Weighting};
use crate::realize::{canonical_weighting, realize};
use crate::resolution::{taylor_betti, BettiTable};
use crate::sdepth::{sdepth_solve, IntervalPartition};

/// One isomorphism class of atomistic semilattices.
#[derive(Clone, Debug)]
pub struct AtomisticClass {
    pub canonical: CanonicalForm,
    pub lattice: Semilattice,
}

/// All atomistic semilattices on `k` atoms, one per isomorphism class.
///
/// Starts from `B(k)` and closes under collapsing non-atom meet-irreducibles,
/// level by level. The output order is deterministic.
pub fn enumerate_atomistic(k: usize, cfg: &Config) -> Result<Vec<AtomisticClass>> {
    if k == 0 {
        return Err(Error::EmptyLattice);
    }
    if k > cfg.max_atoms {
        return Err(Error::LimitExceeded {
            what: "atom count",
            limit: cfg.max_atoms,
        });
    }
    let b = Semilattice::boolean(k, cfg.element_cap)?;
    let root = AtomisticClass {
        canonical: canonical_form(&b, cfg.canon_perm_cap)?,
        lattice: b,
    };
    let mut seen: HashSet<CanonicalForm> = HashSet::from([root.canonical.clone()]);
    let mut out = vec![root.clone()];
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let children: Vec<Vec<AtomisticClass>> = frontier
            .par_iter()
            .map(|c| children_of(&c.lattice, cfg))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for child in children.into_iter().flatten() {
            if seen.insert(child.canonical.clone()) {
                next.push(child);
            }
        }
        log::debug!("{} atoms: {} new classes", k, next.len());
        out.extend(next.iter().cloned());
        frontier = next;
    }
    debug_assert!(out
        .iter()
        .all(|c| c.lattice.is_atomistic() && c.lattice.atoms().len() == k));
    Ok(out)
}

fn children_of(l: &Semilattice, cfg: &Config) -> Result<Vec<AtomisticClass>> {
    let mut out: Vec<AtomisticClass> = Vec::new();
    for a in l.meet_irreducibles() {
        if l.is_atom(a) {
            continue;
        }
        let (q, _) = collapse(l, a)?;
        let canonical = canonical_form(&q, cfg.canon_perm_cap)?;
        if out.iter().all(|c| c.canonical != canonical) {
            out.push(AtomisticClass {
                canonical,
                lattice: q,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub pdim1: usize,
    pub pdim2: usize,
    pub spdim1: usize,
    pub spdim2: usize,
    pub field: String,
}

/// Everything computed for one realization.
#[derive(Debug, Clone, Serialize)]
pub struct RealizationData {
    pub ideal: IdealJson,
    pub ideal_witness: IntervalPartition,
    pub quotient_witness: IntervalPartition,
    pub ideal_betti: BettiTable,
    pub quotient_betti: BettiTable,
}

fn invariants_of(gens: &GeneratorSet, cfg: &Config) -> Result<(LatticeInvariants, RealizationData)> {
    let ideal = QuotientPair::ideal(gens.clone());
    let ring = QuotientPair::quotient_ring(gens.clone());
    let s1 = sdepth_solve(&ideal, cfg)?;
    let s2 = sdepth_solve(&ring, cfg)?;
    let b1 = taylor_betti(&ideal, cfg)?;
    let b2 = taylor_betti(&ring, cfg)?;
    if b1.pdim + 1 != b2.pdim {
        return Err(Error::Internal(format!(
            "pdim of I is {} but pdim of S/I is {}",
            b1.pdim, b2.pdim
        )));
    }
    let inv = LatticeInvariants {
        pdim1: b1.pdim,
        pdim2: b2.pdim,
        spdim1: s1.spdim,
        spdim2: s2.spdim,
        field: cfg.field.to_string(),
    };
    let data = RealizationData {
        ideal: gens.to_json(),
        ideal_witness: s1.witness,
        quotient_witness: s2.witness,
        ideal_betti: b1,
        quotient_betti: b2,
    };
    Ok((inv, data))
}

/// Minimal generators of the canonical realization. The one-element lattice
/// is realized by a single variable so that `S/I` is nonzero.
pub fn invariant_realization(l: &Semilattice) -> Result<GeneratorSet> {
    if !l.is_atomistic() {
        return Err(Error::NotAtomistic);
    }
    if l.len() == 1 {
        return GeneratorSet::new(vec!["w_0".into()], vec![Monomial::var(1, 0)]);
    }
    Ok(realize(&canonical_weighting(l))?.minimalize())
}

/// A second realization: the canonical weighting with one fresh variable
/// placed on a random non-top element or on the bottom, and possibly one
/// meet-irreducible weight squared.
pub fn randomized_realization(l: &Semilattice, rng: &mut impl Rng) -> Result<GeneratorSet> {
    if !l.is_atomistic() {
        return Err(Error::NotAtomistic);
    }
    let base = canonical_weighting(l);
    let n = base.vars().len() + 1;
    let mut vars = base.vars().to_vec();
    vars.push("v".into());
    let fresh = Monomial::var(n, n - 1);
    let mut weights: Vec<Monomial> = base.weights().iter().map(|w| w.extended(1)).collect();
    let mut bottom = base.bottom().extended(1);
    let slots: Vec<usize> = (0..l.len()).filter(|&a| a != l.top()).collect();
    let pick = rng.gen_range(0..=slots.len());
    match slots.get(pick) {
        Some(&a) => weights[a] = weights[a].mul(&fresh)?,
        None => bottom = fresh,
    }
    let mis = l.meet_irreducibles();
    if !mis.is_empty() && rng.gen_bool(0.5) {
        let a = mis[rng.gen_range(0..mis.len())];
        weights[a] = weights[a].mul(&weights[a].clone())?;
    }
    let w = Weighting::new(vars, l.clone(), bottom, weights)?;
    Ok(realize(&w)?.minimalize())
}

fn seed_of(l: &Semilattice) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    l.join_table().hash(&mut h);
    h.finish()
}

/// Invariants from the canonical realization, cross-checked on a second
/// randomized realization.
pub fn lattice_invariants(l: &Semilattice, cfg: &Config) -> Result<LatticeInvariants> {
    Ok(lattice_invariants_detailed(l, cfg)?.0)
}

pub fn lattice_invariants_detailed(
    l: &Semilattice,
    cfg: &Config,
) -> Result<(LatticeInvariants, RealizationData)> {
    let gens = invariant_realization(l)?;
    let (inv, data) = invariants_of(&gens, cfg)?;
    let mut rng = StdRng::seed_from_u64(seed_of(l));
    let other = randomized_realization(l, &mut rng)?;
    let (inv2, _) = invariants_of(&other, cfg)?;
    if inv != inv2 {
        return Err(Error::Internal(format!(
            "invariants depend on the realization: {inv:?} vs {inv2:?} for {}",
            other
        )));
    }
    Ok((inv, data))
}

/// `spdim₁ ≤ pdim₁`, `spdim₂ ≤ pdim₂`, `spdim₁ ≤ spdim₂ − 1`.
pub fn conjecture_checks(inv: &LatticeInvariants) -> [bool; 3] {
    [
        inv.spdim1 <= inv.pdim1,
        inv.spdim2 <= inv.pdim2,
        inv.spdim1 < inv.spdim2,
    ]
}

/// Data needed to reproduce a conjecture check.
#[derive(Debug, Clone, Serialize)]
pub struct ReproductionBundle {
    pub lattice: LatticeJson,
    pub canonical: CanonicalForm,
    pub realization: RealizationData,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub invariants: LatticeInvariants,
    pub conjectures: [bool; 3],
    /// Present only when some inequality fails.
    pub bundle: Option<ReproductionBundle>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.conjectures.iter().all(|&b| b)
    }
}

pub fn check_conjectures(l: &Semilattice, cfg: &Config) -> Result<ConjectureReport> {
    let (invariants, data) = lattice_invariants_detailed(l, cfg)?;
    let conjectures = conjecture_checks(&invariants);
    let bundle = if conjectures.iter().all(|&b| b) {
        None
    } else {
        let canonical = canonical_form(l, cfg.canon_perm_cap)?;
        log::error!(
            "COUNTEREXAMPLE: lattice {canonical} gives {invariants:?}, checks {conjectures:?}"
        );
        Some(ReproductionBundle {
            lattice: LatticeJson::from_lattice(l),
            canonical,
            realization: data,
        })
    };
    Ok(ConjectureReport {
        invariants,
        conjectures,
        bundle,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub canonical: CanonicalForm,
    pub atoms: usize,
    pub elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<LatticeInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjectures: Option<[bool; 3]>,
    #[serde(skip)]
    pub bundle: Option<ReproductionBundle>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub atoms: usize,
    pub classes: usize,
    pub checked: bool,
    pub violations: usize,
    pub field: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

impl Census {
    /// One JSON object per line, the summary last.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &ReproductionBundle> {
        self.records.iter().filter_map(|r| r.bundle.as_ref())
    }
}

/// Enumerates the classes on `k` atoms and, with `check`, evaluates the
/// conjectured inequalities on each.
pub fn census(k: usize, check: bool, cfg: &Config) -> Result<Census> {
    let classes = enumerate_atomistic(k, cfg)?;
    let records: Vec<CensusRecord> = classes
        .par_iter()
        .map(|c| {
            let report = if check {
                Some(check_conjectures(&c.lattice, cfg)?)
            } else {
                None
            };
            Ok(CensusRecord {
                canonical: c.canonical.clone(),
                atoms: k,
                elements: c.lattice.len(),
                invariants: report.as_ref().map(|r| r.invariants.clone()),
                conjectures: report.as_ref().map(|r| r.conjectures),
                bundle: report.and_then(|r| r.bundle),
            })
        })
        .collect::<Result<_>>()?;
    let violations = records.iter().filter(|r| r.bundle.is_some()).count();
    Ok(Census {
        summary: CensusSummary {
            atoms: k,
            classes: records.len(),
            checked: check,
            violations,
            field: cfg.field.to_string(),
        },
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain_plus_top(k: usize) -> Semilattice {
        let mut labels: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        labels.push("t".into());
        let rel: Vec<_> = (0..k).map(|i| (i, k)).collect();
        Semilattice::build(labels, &rel).unwrap()
    }

    #[test]
    fn small_counts() {
        let cfg = Config::default();
        assert_eq!(enumerate_atomistic(1, &cfg).unwrap().len(), 1);
        assert_eq!(enumerate_atomistic(2, &cfg).unwrap().len(), 1);
        let three = enumerate_atomistic(3, &cfg).unwrap();
        assert!(three.iter().all(|c| c.lattice.atoms().len() == 3));
        assert!(matches!(
            enumerate_atomistic(6, &cfg),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn boolean_three_values() {
        let b3 = Semilattice::boolean(3, 100).unwrap();
        let inv = lattice_invariants(&b3, &Config::default()).unwrap();
        assert_eq!(
            (inv.spdim1, inv.spdim2, inv.pdim1, inv.pdim2),
            (1, 3, 2, 3)
        );
    }

    #[test]
    fn antichain_values() {
        let inv = lattice_invariants(&antichain_plus_top(3), &Config::default()).unwrap();
        assert_eq!((inv.spdim2, inv.pdim2), (2, 2));
    }

    #[test]
    fn single_atom() {
        let l = Semilattice::build(vec!["a".into()], &[]).unwrap();
        let r = check_conjectures(&l, &Config::default()).unwrap();
        assert_eq!(
            (
                r.invariants.spdim1,
                r.invariants.spdim2,
                r.invariants.pdim1,
                r.invariants.pdim2
            ),
            (0, 1, 0, 1)
        );
        assert!(r.holds() && r.bundle.is_none());
    }

    #[test]
    fn failing_checks_detected() {
        let inv = LatticeInvariants {
            pdim1: 1,
            pdim2: 2,
            spdim1: 2,
            spdim2: 2,
            field: "Q".into(),
        };
        assert_eq!(conjecture_checks(&inv), [false, true, false]);
    }

    #[test]
    fn census_lines() {
        let c = census(2, true, &Config::default()).unwrap();
        let text = c.to_json_lines();
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().last().unwrap().starts_with("{\"summary\""));
        assert_eq!(c.summary.violations, 0);
    }
}
