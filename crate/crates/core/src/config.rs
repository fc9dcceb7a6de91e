use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Coefficient field used for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `GFp:<p>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix("GFp:")
            .or_else(|| s.strip_prefix("GF:"))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}, expected Q or GFp:<p>")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::Parse(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Resource caps and knobs shared by all computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Maximum number of elements of any semilattice.
    pub element_cap: usize,
    /// Maximum number of points of a characteristic poset.
    pub poset_cap: usize,
    /// Maximum number of subsets in a Taylor complex.
    pub subset_cap: usize,
    /// Maximum number of candidate permutations tried by canonical labeling.
    pub canon_perm_cap: usize,
    /// Largest atom count accepted by the atomistic enumerator.
    pub max_atoms: usize,
    pub field: Field,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            element_cap: 4096,
            poset_cap: 20_000,
            subset_cap: 1 << 14,
            canon_perm_cap: 5040,
            max_atoms: 5,
            field: Field::Rationals,
            threads: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), Error> {
        let caps = [
            ("element cap", self.element_cap),
            ("poset cap", self.poset_cap),
            ("subset cap", self.subset_cap),
            ("permutation cap", self.canon_perm_cap),
            ("atom cap", self.max_atoms),
        ];
        for (name, v) in caps {
            if v == 0 {
                return Err(Error::Parse(format!("{name} must be positive")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Parse("thread count must be positive".into()));
        }
        Ok(())
    }
}
