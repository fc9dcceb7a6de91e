//! lcm-semilattices and the standard weight map.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Semilattice;

use super::{GeneratorSet, Monomial, QuotientPair};

/// The lcm-semilattice of a generator set together with the monomial at each
/// element. Elements are sorted by [`Monomial::graded_cmp`], which is a
/// linear extension of divisibility.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    vars: Vec<String>,
    lattice: Semilattice,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl LcmLattice {
    pub fn new(g: &GeneratorSet, element_cap: usize) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let mut gens = g.gens().to_vec();
        gens.sort_by(Monomial::graded_cmp);
        gens.dedup();
        let mut seen: std::collections::HashSet<Monomial> = gens.iter().cloned().collect();
        let mut all = gens.clone();
        let mut next = 0;
        while next < all.len() {
            let cur = all[next].clone();
            next += 1;
            for h in &gens {
                let l = cur.lcm(h);
                if seen.insert(l.clone()) {
                    if all.len() >= element_cap {
                        return Err(Error::LimitExceeded {
                            what: "lcm-semilattice size",
                            limit: element_cap,
                        });
                    }
                    all.push(l);
                }
            }
        }
        all.sort_by(Monomial::graded_cmp);
        Ok(Self::from_closed(g.vars().to_vec(), all))
    }

    pub fn of_pair(p: &QuotientPair, element_cap: usize) -> Result<Self> {
        Self::new(&p.union(), element_cap)
    }

    /// `monomials` must be lcm-closed and sorted by degree.
    fn from_closed(vars: Vec<String>, monomials: Vec<Monomial>) -> Self {
        let n = monomials.len();
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let j = index[&monomials[a].lcm(&monomials[b])] as u32;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let labels = monomials.iter().map(|m| m.render(&vars)).collect();
        LcmLattice {
            lattice: Semilattice::from_join_unchecked(labels, join),
            vars,
            monomials,
            index,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, a: usize) -> &Monomial {
        &self.monomials[a]
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Elements whose monomial lies in the given generator list.
    pub fn elements_of(&self, g: &GeneratorSet) -> Vec<usize> {
        let mut v: Vec<usize> = g.gens().iter().filter_map(|m| self.index_of(m)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The elements that are lcms of subsets of `g` (a sub-generator list).
    pub fn subsemilattice_of(&self, g: &GeneratorSet) -> Vec<usize> {
        let gens = self.elements_of(g);
        (0..self.len())
            .filter(|&e| {
                let below: Vec<usize> = gens
                    .iter()
                    .copied()
                    .filter(|&x| self.lattice.leq(x, e))
                    .collect();
                self.lattice.join_all(below) == Some(e)
            })
            .collect()
    }
}

/// A map from the lattice plus virtual bottom to monomials.
#[derive(Clone, Debug)]
pub struct Weighting {
    vars: Vec<String>,
    lattice: Semilattice,
    bottom: Monomial,
    weights: Vec<Monomial>,
}

impl Weighting {
    pub fn new(
        vars: Vec<String>,
        lattice: Semilattice,
        bottom: Monomial,
        weights: Vec<Monomial>,
    ) -> Result<Self> {
        if weights.len() != lattice.len() {
            return Err(Error::Shape(format!(
                "{} weights for {} elements",
                weights.len(),
                lattice.len()
            )));
        }
        if std::iter::once(&bottom)
            .chain(&weights)
            .any(|w| w.nvars() != vars.len())
        {
            return Err(Error::Shape("weight has wrong number of variables".into()));
        }
        Ok(Weighting {
            vars,
            lattice,
            bottom,
            weights,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }

    pub fn bottom(&self) -> &Monomial {
        &self.bottom
    }

    pub fn weights(&self) -> &[Monomial] {
        &self.weights
    }

    /// Weight of an element, `None` standing for the bottom.
    pub fn at(&self, e: Option<usize>) -> &Monomial {
        match e {
            Some(a) => &self.weights[a],
            None => &self.bottom,
        }
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.weights.iter().map(Monomial::degree).collect()
    }

    pub fn render(&self) -> (String, Vec<String>) {
        (
            self.bottom.render(&self.vars),
            self.weights.iter().map(|w| w.render(&self.vars)).collect(),
        )
    }
}

/// The standard map: `w(m) = gcd{p > m} / m`, `w(1̂) = 1`, `w(0̂) = gcd G`.
pub fn weight_map(l: &LcmLattice) -> Weighting {
    let lat = l.lattice();
    let n = l.vars.len();
    let top = lat.top();
    let weights = (0..lat.len())
        .map(|a| {
            if a == top {
                return Monomial::one(n);
            }
            let g = lat
                .up_set(a)
                .iter()
                .filter(|&p| p != a)
                .map(|p| l.monomial(p).clone())
                .reduce(|x, y| x.gcd(&y))
                .expect("non-top element has a strict upper bound");
            g.div(l.monomial(a)).expect("m divides every p above it")
        })
        .collect();
    let bottom = l
        .monomials
        .iter()
        .cloned()
        .reduce(|x, y| x.gcd(&y))
        .expect("nonempty");
    Weighting {
        vars: l.vars.clone(),
        lattice: lat.clone(),
        bottom,
        weights,
    }
}

/// `m = ∏ w(q)` over all `q` in the lattice with bottom such that `q ≱ m`.
pub fn reconstruct(w: &Weighting, m: usize) -> Result<Monomial> {
    let lat = &w.lattice;
    if m >= lat.len() {
        return Err(Error::IndexOutOfRange {
            index: m,
            len: lat.len(),
        });
    }
    let mut acc = w.bottom.clone();
    for q in 0..lat.len() {
        if !lat.leq(m, q) {
            acc = acc.mul(&w.weights[q])?;
        }
    }
    Ok(acc)
}

/// Why a monomial ideal is not squarefree, read off its weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SquarefreeWitness {
    /// The weight at `element` (`None` = bottom) has a square of `var`.
    SquareInWeight { element: Option<usize>, var: usize },
    /// Two distinct weights share `var`.
    SharedVariable {
        a: Option<usize>,
        b: Option<usize>,
        var: usize,
    },
}

/// Decides squarefreeness of the ideal generated by `g` from the weights of
/// its lcm-semilattice. `None` means squarefree.
pub fn squarefree_check(g: &GeneratorSet, element_cap: usize) -> Result<Option<SquarefreeWitness>> {
    let g = g.minimalize();
    let l = LcmLattice::new(&g, element_cap)?;
    let w = weight_map(&l);
    let points: Vec<Option<usize>> = std::iter::once(None)
        .chain((0..l.len()).map(Some))
        .collect();
    let mut owner: Vec<Option<Option<usize>>> = vec![None; g.nvars()];
    let mut witness = None;
    'outer: for &p in &points {
        for (var, &e) in w.at(p).exponents().iter().enumerate() {
            if e >= 2 {
                witness = Some(SquarefreeWitness::SquareInWeight { element: p, var });
                break 'outer;
            }
            if e == 1 {
                if let Some(prev) = owner[var] {
                    witness = Some(SquarefreeWitness::SharedVariable { a: prev, b: p, var });
                    break 'outer;
                }
                owner[var] = Some(p);
            }
        }
    }
    debug_assert_eq!(witness.is_none(), g.is_squarefree());
    Ok(witness)
}
