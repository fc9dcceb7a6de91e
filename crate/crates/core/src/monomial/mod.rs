//! Monomials, generator sets, and quotient pairs `I/J`.

mod lcm;
mod transform;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lcm::{
    reconstruct, squarefree_check, weight_map, LcmLattice, SquarefreeWitness, Weighting,
};
pub use transform::{
    colon, colon_pair, deform, deform_pair, inflate, is_generic, polarize, radical, radical_pair,
    restrict_variable, restrict_variable_pair, validate_deformation, Deformation, Polarization,
};

/// A monomial as an exponent vector. Variable names live in the enclosing
/// [`GeneratorSet`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Panics if the variable counts differ.
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        assert_eq!(self.0.len(), other.0.len(), "variable count mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(Monomial)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect()))
    }

    /// Product of the variables dividing `self`.
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Extends with zero exponents for new trailing variables.
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(self.0.len() + extra, 0);
        Monomial(e)
    }

    /// Graded order: total degree first, then lexicographically larger
    /// exponent vectors first.
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }

    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }

    /// Parses strings like `x^2*y` or `1` over the given variables.
    pub fn parse(s: &str, vars: &[String]) -> Result<Monomial> {
        let mut e = vec![0u32; vars.len()];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, x)) => (
                    n.trim(),
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            e[i] = e[i].checked_add(exp).ok_or(Error::Overflow)?;
        }
        Ok(Monomial(e))
    }

    /// Variable names appearing in a monomial string, in order of appearance.
    pub fn variables_in(s: &str) -> Vec<String> {
        let s = s.trim();
        if s == "1" {
            return Vec::new();
        }
        s.split('*')
            .map(|f| f.split('^').next().unwrap_or("").trim().to_owned())
            .filter(|n| !n.is_empty())
            .collect()
    }
}

/// A finite list of monomials over named variables. The empty list generates
/// the zero ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSet {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

impl GeneratorSet {
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        if let Some((i, _)) = gens
            .iter()
            .enumerate()
            .find(|(_, g)| g.nvars() != vars.len())
        {
            return Err(Error::Shape(format!(
                "generator {i} has wrong number of exponents (expected {})",
                vars.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = vars.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Parse(format!("duplicate variable {dup:?}")));
        }
        Ok(GeneratorSet { vars, gens })
    }

    pub fn from_exponents(vars: &[&str], gens: &[&[u32]]) -> Result<Self> {
        Self::new(
            vars.iter().map(|s| s.to_string()).collect(),
            gens.iter().map(|g| Monomial::new(g.to_vec())).collect(),
        )
    }

    /// Parses generator strings such as `["x^2*y", "z"]`.
    pub fn parse(vars: &[&str], gens: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| Monomial::parse(g, &vars))
            .collect::<Result<_>>()?;
        Self::new(vars, gens)
    }

    pub fn unit(vars: Vec<String>) -> Self {
        let n = vars.len();
        GeneratorSet {
            vars,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn zero(vars: Vec<String>) -> Self {
        GeneratorSet {
            vars,
            gens: Vec::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    /// Ideal membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &GeneratorSet) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &GeneratorSet) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn lcm_all(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars()), |acc, g| acc.lcm(g))
    }

    /// Deduplicates, sorts by [`Monomial::graded_cmp`] and drops generators
    /// divisible by an earlier one.
    pub fn minimalize(&self) -> GeneratorSet {
        let mut sorted = self.gens.clone();
        sorted.sort_by(Monomial::graded_cmp);
        sorted.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        for g in sorted {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        GeneratorSet {
            vars: self.vars.clone(),
            gens: kept,
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, g)| {
            self.gens
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || !h.divides(g))
        })
    }

    pub fn with_gens(&self, gens: Vec<Monomial>) -> GeneratorSet {
        GeneratorSet {
            vars: self.vars.clone(),
            gens,
        }
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render(&self.vars)).collect()
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            variables: self.vars.clone(),
            generators: self.gens.iter().map(|g| g.0.clone()).collect(),
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render().join(", "))
    }
}

/// `{"variables": [...], "generators": [[e1, ...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub variables: Vec<String>,
    pub generators: Vec<Vec<u32>>,
}

impl IdealJson {
    pub fn to_generators(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(
            self.variables.clone(),
            self.generators.iter().cloned().map(Monomial::new).collect(),
        )
    }
}

/// Generator sets for ideals `J ⊆ I`, representing the module `I/J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientPair {
    i: GeneratorSet,
    j: GeneratorSet,
}

impl QuotientPair {
    pub fn new(i: GeneratorSet, j: GeneratorSet) -> Result<Self> {
        if i.vars != j.vars {
            return Err(Error::Shape("I and J use different variables".into()));
        }
        if let Some(idx) = j.gens.iter().position(|g| !i.contains(g)) {
            return Err(Error::NotContained(idx));
        }
        Ok(QuotientPair { i, j })
    }

    /// The ideal `I` itself, as `I/0`.
    pub fn ideal(i: GeneratorSet) -> Self {
        let j = GeneratorSet::zero(i.vars.clone());
        QuotientPair { i, j }
    }

    /// The ring `S/I`, as `S/I` with `G_I = {1}`.
    pub fn quotient_ring(j: GeneratorSet) -> Self {
        let i = GeneratorSet::unit(j.vars.clone());
        QuotientPair { i, j }
    }

    pub fn i(&self) -> &GeneratorSet {
        &self.i
    }

    pub fn j(&self) -> &GeneratorSet {
        &self.j
    }

    pub fn vars(&self) -> &[String] {
        &self.i.vars
    }

    pub fn nvars(&self) -> usize {
        self.i.vars.len()
    }

    /// True when `I = J`, so the module vanishes.
    pub fn is_zero_module(&self) -> bool {
        self.j.contains_ideal(&self.i)
    }

    /// `G_I ∪ G_J` as one generator list (I first).
    pub fn union(&self) -> GeneratorSet {
        let mut gens = self.i.gens.clone();
        gens.extend(self.j.gens.iter().cloned());
        self.i.with_gens(gens)
    }

    pub fn minimalized(&self) -> QuotientPair {
        QuotientPair {
            i: self.i.minimalize(),
            j: self.j.minimalize(),
        }
    }

    pub fn to_json(&self) -> QuotientJson {
        QuotientJson {
            i: Some(self.i.to_json()),
            j: Some(self.j.to_json()),
        }
    }
}

impl fmt::Display for QuotientPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.i, self.j)
    }
}

/// `{"I": ideal, "J": ideal}`; a missing `I` means the whole ring and a
/// missing `J` the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    #[serde(rename = "I", default, skip_serializing_if = "Option::is_none")]
    pub i: Option<IdealJson>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IdealJson>,
}

impl QuotientJson {
    pub fn to_pair(&self) -> Result<QuotientPair> {
        match (&self.i, &self.j) {
            (Some(i), Some(j)) => QuotientPair::new(i.to_generators()?, j.to_generators()?),
            (Some(i), None) => Ok(QuotientPair::ideal(i.to_generators()?)),
            (None, Some(j)) => Ok(QuotientPair::quotient_ring(j.to_generators()?)),
            (None, None) => Err(Error::Parse("quotient needs at least one of I, J".into())),
        }
    }
}
