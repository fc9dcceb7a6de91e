//! Realizing a semilattice as an lcm-semilattice from a weighting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Semilattice;
use crate::monomial::{weight_map, GeneratorSet, LcmLattice, Monomial, QuotientPair, Weighting};

/// Why a weighting cannot be realized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WeightViolation {
    /// Incomparable elements whose weights share a variable.
    NotCoprime { a: usize, b: usize },
    /// A meet-irreducible element with weight 1.
    TrivialMeetIrreducible { element: usize },
    /// The top element has a nontrivial weight.
    NonUnitTop,
}

impl std::fmt::Display for WeightViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightViolation::NotCoprime { a, b } => {
                write!(
                    f,
                    "weights of incomparable elements {a} and {b} are not coprime"
                )
            }
            WeightViolation::TrivialMeetIrreducible { element } => {
                write!(f, "meet-irreducible element {element} has weight 1")
            }
            WeightViolation::NonUnitTop => write!(f, "the top element has weight other than 1"),
        }
    }
}

/// Checks that incomparable elements have coprime weights, that
/// meet-irreducibles have nontrivial weights and that the top has weight 1.
pub fn validate_weighting(w: &Weighting) -> std::result::Result<(), WeightViolation> {
    let l = w.lattice();
    if !w.weights()[l.top()].is_one() {
        return Err(WeightViolation::NonUnitTop);
    }
    for a in 0..l.len() {
        if l.is_meet_irreducible(a) && w.weights()[a].is_one() {
            return Err(WeightViolation::TrivialMeetIrreducible { element: a });
        }
    }
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            if !l.comparable(a, b) && !w.weights()[a].is_coprime(&w.weights()[b]) {
                return Err(WeightViolation::NotCoprime { a, b });
            }
        }
    }
    Ok(())
}

/// Monomials `m_M = ∏_{Q ≱ M} w(Q)` (bottom included), one per element in
/// element order. The generated lcm-semilattice is verified to be isomorphic
/// to the source via `M ↦ m_M`.
pub fn realize(w: &Weighting) -> Result<GeneratorSet> {
    validate_weighting(w).map_err(|v| Error::InvalidWeighting(v.to_string()))?;
    let l = w.lattice();
    let gens: Vec<Monomial> = (0..l.len())
        .map(|m| {
            let mut acc = w.bottom().clone();
            for q in 0..l.len() {
                if !l.leq(m, q) {
                    acc = acc.mul(&w.weights()[q])?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    for a in 0..l.len() {
        for b in a..l.len() {
            if gens[a].lcm(&gens[b]) != gens[l.join(a, b)] || (a != b && gens[a] == gens[b]) {
                return Err(Error::Internal(format!(
                    "realization does not reproduce the join of {a} and {b}"
                )));
            }
        }
    }
    GeneratorSet::new(w.vars().to_vec(), gens)
}

/// One variable `w_<index>` per meet-irreducible element, weight 1 elsewhere.
pub fn canonical_weighting(l: &Semilattice) -> Weighting {
    let mis = l.meet_irreducibles();
    let vars: Vec<String> = mis.iter().map(|m| format!("w_{m}")).collect();
    let n = vars.len();
    let mut weights = vec![Monomial::one(n); l.len()];
    for (v, &m) in mis.iter().enumerate() {
        weights[m] = Monomial::var(n, v);
    }
    Weighting::new(vars, l.clone(), Monomial::one(n), weights).expect("shapes agree")
}

/// Squarefree realization over one variable per meet-irreducible element.
pub fn canonical_realization(l: &Semilattice) -> Result<GeneratorSet> {
    realize(&canonical_weighting(l))
}

fn check_antichain(l: &Semilattice, a: &[usize]) -> Result<()> {
    for (i, &x) in a.iter().enumerate() {
        if x >= l.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                len: l.len(),
            });
        }
        for &y in &a[i + 1..] {
            if l.comparable(x, y) {
                return Err(Error::NotAntichain(x, y));
            }
        }
    }
    Ok(())
}

/// Adds fresh variables to the weights of the maximum-degree elements of the
/// antichain until all realized monomials at the antichain share one degree.
pub fn equalize_degrees(w: &Weighting, antichain: &[usize]) -> Result<Weighting> {
    let l = w.lattice().clone();
    check_antichain(&l, antichain)?;
    validate_weighting(w).map_err(|v| Error::InvalidWeighting(v.to_string()))?;
    let mut cur = w.clone();
    for round in 0.. {
        let gens = realize(&cur)?;
        let degs: Vec<u64> = antichain.iter().map(|&a| gens.gens()[a].degree()).collect();
        let Some(&max) = degs.iter().max() else {
            return Ok(cur);
        };
        if degs.iter().all(|&d| d == max) {
            return Ok(cur);
        }
        let top: Vec<usize> = antichain
            .iter()
            .zip(&degs)
            .filter(|(_, &d)| d == max)
            .map(|(&a, _)| a)
            .collect();
        let mut vars = cur.vars().to_vec();
        let old = vars.len();
        vars.extend(top.iter().map(|a| format!("d{round}_{a}")));
        let extra = top.len();
        let mut weights: Vec<Monomial> = cur.weights().iter().map(|m| m.extended(extra)).collect();
        for (k, &a) in top.iter().enumerate() {
            weights[a] = weights[a].mul(&Monomial::var(old + extra, old + k))?;
        }
        cur = Weighting::new(vars, l.clone(), cur.bottom().extended(extra), weights)?;
    }
    unreachable!("loop returns")
}

/// Which ideal of a quotient pair should end up generated in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingleDegreeSide {
    I,
    J,
}

/// A pair with isomorphic lcm-semilattice (respecting `J`) in which the
/// chosen ideal is generated in a single degree.
pub fn single_degree_pair(
    p: &QuotientPair,
    side: SingleDegreeSide,
    element_cap: usize,
) -> Result<QuotientPair> {
    let l = LcmLattice::of_pair(p, element_cap)?;
    let chosen = match side {
        SingleDegreeSide::I => p.i(),
        SingleDegreeSide::J => p.j(),
    };
    let antichain = l.elements_of(&chosen.minimalize());
    let w = equalize_degrees(&weight_map(&l), &antichain)?;
    let gens = realize(&w)?;
    let pick = |g: &GeneratorSet| {
        gens.with_gens(
            l.elements_of(g)
                .into_iter()
                .map(|e| gens.gens()[e].clone())
                .collect(),
        )
    };
    QuotientPair::new(pick(p.i()), pick(p.j()))
}
