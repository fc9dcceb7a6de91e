//! Ideal transforms: polarization, radical, colon, restriction, inflation,
//! deformation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{GeneratorSet, Monomial, QuotientPair};

/// The polarization map of a quotient pair: each power `x^e` becomes
/// `x_1⋯x_e` over fresh variables.
///
/// Every original variable keeps at least one polarized variable, so unused
/// variables survive as `x_1`.
#[derive(Debug, Clone)]
pub struct Polarization {
    vars: Vec<String>,
    offset: Vec<usize>,
}

impl Polarization {
    pub fn of(p: &QuotientPair) -> Self {
        let n = p.nvars();
        let mut width = vec![1u32; n];
        for g in p.union().gens() {
            for (w, &e) in width.iter_mut().zip(g.exponents()) {
                *w = (*w).max(e);
            }
        }
        let mut offset = Vec::with_capacity(n);
        let mut vars = Vec::new();
        for (v, &w) in width.iter().enumerate() {
            offset.push(vars.len());
            for k in 1..=w {
                vars.push(format!("{}_{}", p.vars()[v], k));
            }
        }
        Polarization { vars, offset }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Polarizes a monomial whose exponents fit the computed widths.
    pub fn apply(&self, m: &Monomial) -> Monomial {
        let mut e = vec![0u32; self.vars.len()];
        for (v, &x) in m.exponents().iter().enumerate() {
            for k in 0..x as usize {
                e[self.offset[v] + k] = 1;
            }
        }
        Monomial::new(e)
    }
}

pub fn polarize(p: &QuotientPair) -> QuotientPair {
    let pol = Polarization::of(p);
    let map = |g: &GeneratorSet| GeneratorSet {
        vars: pol.vars.clone(),
        gens: g.gens().iter().map(|m| pol.apply(m)).collect(),
    };
    QuotientPair {
        i: map(p.i()),
        j: map(p.j()),
    }
}

/// Replaces each generator by the product of its variables.
pub fn radical(g: &GeneratorSet) -> GeneratorSet {
    g.with_gens(g.gens().iter().map(Monomial::radical).collect())
        .minimalize()
}

pub fn radical_pair(p: &QuotientPair) -> Result<QuotientPair> {
    QuotientPair::new(radical(p.i()), radical(p.j()))
}

/// Generators `lcm(g, v) / v` of the colon ideal `(I : v)`.
pub fn colon(g: &GeneratorSet, v: &Monomial) -> Result<GeneratorSet> {
    if v.nvars() != g.nvars() {
        return Err(Error::Shape(
            "colon monomial has wrong number of variables".into(),
        ));
    }
    Ok(g.with_gens(
        g.gens()
            .iter()
            .map(|m| m.lcm(v).div(v).expect("v divides lcm"))
            .collect(),
    )
    .minimalize())
}

pub fn colon_pair(p: &QuotientPair, v: &Monomial) -> Result<QuotientPair> {
    QuotientPair::new(colon(p.i(), v)?, colon(p.j(), v)?)
}

/// Sets variable `i` to 1 and drops it from the ring.
pub fn restrict_variable(g: &GeneratorSet, i: usize) -> Result<GeneratorSet> {
    if i >= g.nvars() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: g.nvars(),
        });
    }
    let mut vars = g.vars().to_vec();
    vars.remove(i);
    let gens = g
        .gens()
        .iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.remove(i);
            Monomial::new(e)
        })
        .collect();
    Ok(GeneratorSet { vars, gens }.minimalize())
}

pub fn restrict_variable_pair(p: &QuotientPair, i: usize) -> Result<QuotientPair> {
    QuotientPair::new(restrict_variable(p.i(), i)?, restrict_variable(p.j(), i)?)
}

fn fresh_name(vars: &[String]) -> String {
    let taken = |s: &str| vars.iter().any(|v| v == s);
    if !taken("Y") {
        return "Y".to_owned();
    }
    (1..)
        .map(|k| format!("Y{k}"))
        .find(|s| !taken(s))
        .expect("some name is free")
}

/// Multiplies every generator not dividing `m` by one fresh variable.
///
/// All generators must be squarefree. `m` is normally an element of the
/// lcm-semilattice of `G_I ∪ G_J`.
pub fn inflate(p: &QuotientPair, m: &Monomial) -> Result<QuotientPair> {
    if m.nvars() != p.nvars() {
        return Err(Error::Shape(
            "monomial has wrong number of variables".into(),
        ));
    }
    if let Some(idx) = p.union().gens().iter().position(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(idx));
    }
    let mut vars = p.vars().to_vec();
    vars.push(fresh_name(&vars));
    let n = p.nvars();
    let delta = |c: &Monomial| {
        let mut e = c.extended(1);
        if !c.divides(m) {
            e.0[n] = 1;
        }
        e
    };
    let map = |g: &GeneratorSet| GeneratorSet {
        vars: vars.clone(),
        gens: g.gens().iter().map(delta).collect(),
    };
    Ok(QuotientPair {
        i: map(p.i()),
        j: map(p.j()),
    })
}

/// One exponent vector `ε^i` per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deformation {
    pub epsilons: Vec<Vec<u32>>,
}

impl Deformation {
    pub fn zero(g: &GeneratorSet) -> Self {
        Deformation {
            epsilons: vec![vec![0; g.nvars()]; g.len()],
        }
    }
}

/// Checks `a^i_j > a^k_j ⇒ a^i_j + ε^i_j > a^k_j + ε^k_j` and
/// `a^i_j = 0 ⇒ ε^i_j = 0`. A violation of the second clause is reported
/// with `k = i`.
pub fn validate_deformation(g: &GeneratorSet, d: &Deformation) -> Result<()> {
    if d.epsilons.len() != g.len() || d.epsilons.iter().any(|e| e.len() != g.nvars()) {
        return Err(Error::Shape("deformation does not match generators".into()));
    }
    let a = |i: usize, j: usize| g.gens()[i].exponents()[j] as u64;
    let eps = |i: usize, j: usize| d.epsilons[i][j] as u64;
    for i in 0..g.len() {
        for j in 0..g.nvars() {
            if a(i, j) == 0 && eps(i, j) != 0 {
                return Err(Error::InvalidDeformation { i, k: i, j });
            }
            for k in 0..g.len() {
                if a(i, j) > a(k, j) && a(i, j) + eps(i, j) <= a(k, j) + eps(k, j) {
                    return Err(Error::InvalidDeformation { i, k, j });
                }
            }
        }
    }
    Ok(())
}

/// Multiplies generator `i` by `X^{ε^i}`, keeping the generator order.
pub fn deform(g: &GeneratorSet, d: &Deformation) -> Result<GeneratorSet> {
    validate_deformation(g, d)?;
    let gens = g
        .gens()
        .iter()
        .zip(&d.epsilons)
        .map(|(m, e)| m.mul(&Monomial::new(e.clone())))
        .collect::<Result<_>>()?;
    Ok(g.with_gens(gens))
}

/// Common deformation of `G_I ∪ G_J` (generators of `I` first).
pub fn deform_pair(p: &QuotientPair, d: &Deformation) -> Result<QuotientPair> {
    let all = deform(&p.union(), d)?;
    let (gi, gj) = all.gens().split_at(p.i().len());
    let q = QuotientPair::new(all.with_gens(gi.to_vec()), all.with_gens(gj.to_vec()))?;
    if q.is_zero_module() {
        return Err(Error::EmptyModule);
    }
    Ok(q)
}

fn strictly_divides(m: &Monomial, target: &Monomial) -> bool {
    m.exponents()
        .iter()
        .zip(target.exponents())
        .all(|(&a, &b)| if b > 0 { a < b } else { a == 0 })
}

/// Genericity of the ideal generated by `g` (minimal generators are used).
///
/// Two generators "share a degree" only when they have the same positive
/// exponent in some variable.
pub fn is_generic(g: &GeneratorSet) -> bool {
    let g = g.minimalize();
    let gens = g.gens();
    for a in 0..gens.len() {
        for b in (a + 1)..gens.len() {
            let shared = gens[a]
                .exponents()
                .iter()
                .zip(gens[b].exponents())
                .any(|(&x, &y)| x == y && x > 0);
            if !shared {
                continue;
            }
            let l = gens[a].lcm(&gens[b]);
            let found = gens
                .iter()
                .enumerate()
                .any(|(c, m)| c != a && c != b && strictly_divides(m, &l));
            if !found {
                return false;
            }
        }
    }
    true
}
