//! Join-preserving maps between lcm-semilattices of quotient pairs and the
//! resulting comparisons of Stanley and projective dimension.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::lattice::JoinMap;
use crate::monomial::{LcmLattice, Monomial, QuotientPair};
use crate::resolution::taylor_betti;
use crate::sdepth::sdepth_solve;

/// A surjective join-preserving map `L_{G_I ∪ G_J} → L_{G_I' ∪ G_J'}` that
/// sends `L_{G_J}` onto `L_{G_J'}`.
#[derive(Clone, Debug)]
pub struct LcmMap {
    source: QuotientPair,
    target: QuotientPair,
    source_lattice: LcmLattice,
    target_lattice: LcmLattice,
    map: JoinMap,
}

impl LcmMap {
    /// `image[e]` is the target element of source element `e`.
    pub fn new(
        source: QuotientPair,
        target: QuotientPair,
        image: Vec<usize>,
        cfg: &Config,
    ) -> Result<Self> {
        let sl = LcmLattice::of_pair(&source, cfg.element_cap)?;
        let tl = LcmLattice::of_pair(&target, cfg.element_cap)?;
        let map = JoinMap::new(sl.lattice().clone(), tl.lattice().clone(), image)?;
        if !map.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let mut src_j: Vec<usize> = sl
            .subsemilattice_of(source.j())
            .into_iter()
            .map(|e| map.apply(e))
            .collect();
        src_j.sort_unstable();
        src_j.dedup();
        if src_j != tl.subsemilattice_of(target.j()) {
            return Err(Error::NotOntoSubsemilattice);
        }
        Ok(LcmMap {
            source,
            target,
            source_lattice: sl,
            target_lattice: tl,
            map,
        })
    }

    /// Builds the map from a function on monomials of the source lattice.
    pub fn from_fn(
        source: QuotientPair,
        target: QuotientPair,
        f: impl Fn(&Monomial) -> Monomial,
        cfg: &Config,
    ) -> Result<Self> {
        let sl = LcmLattice::of_pair(&source, cfg.element_cap)?;
        let tl = LcmLattice::of_pair(&target, cfg.element_cap)?;
        let image = sl
            .monomials()
            .iter()
            .map(|m| {
                let fm = f(m);
                tl.index_of(&fm).ok_or_else(|| {
                    Error::Shape(format!(
                        "image {} of {} is not in the target lattice",
                        fm.render(target.vars()),
                        m.render(source.vars())
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, image, cfg)
    }

    /// Builds the map from `(source monomial, target monomial)` pairs that
    /// must cover every source element.
    pub fn from_pairs(
        source: QuotientPair,
        target: QuotientPair,
        pairs: &[(Monomial, Monomial)],
        cfg: &Config,
    ) -> Result<Self> {
        let lookup = |m: &Monomial| {
            pairs
                .iter()
                .find(|(a, _)| a == m)
                .map(|(_, b)| b.clone())
                .unwrap_or_else(|| Monomial::new(vec![u32::MAX; target.nvars()]))
        };
        Self::from_fn(source.clone(), target.clone(), lookup, cfg)
    }

    pub fn source(&self) -> &QuotientPair {
        &self.source
    }

    pub fn target(&self) -> &QuotientPair {
        &self.target
    }

    pub fn source_lattice(&self) -> &LcmLattice {
        &self.source_lattice
    }

    pub fn target_lattice(&self) -> &LcmLattice {
        &self.target_lattice
    }

    pub fn join_map(&self) -> &JoinMap {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub nvars: usize,
    pub sdepth: usize,
    pub spdim: usize,
    pub depth: usize,
    pub pdim: usize,
}

/// Computed from minimal generators; the module does not depend on them.
pub fn module_invariants(p: &QuotientPair, cfg: &Config) -> Result<ModuleInvariants> {
    let p = p.minimalized();
    let s = sdepth_solve(&p, cfg)?;
    let b = taylor_betti(&p, cfg)?;
    Ok(ModuleInvariants {
        nvars: p.nvars(),
        sdepth: s.sdepth,
        spdim: s.spdim,
        depth: b.depth,
        pdim: b.pdim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub bijective: bool,
    pub source: ModuleInvariants,
    pub target: ModuleInvariants,
    pub spdim_monotone: bool,
    pub pdim_monotone: bool,
    /// For bijective maps: spdim, pdim and sdepth − depth agree on both sides.
    pub equalities: Option<bool>,
}

impl MapReport {
    pub fn holds(&self) -> bool {
        self.spdim_monotone && self.pdim_monotone && self.equalities != Some(false)
    }
}

/// Evaluates `spdim I/J ≥ spdim I'/J'` and `pdim I/J ≥ pdim I'/J'`, with
/// equalities when the map is bijective.
pub fn check_map(m: &LcmMap, cfg: &Config) -> Result<MapReport> {
    let s = module_invariants(&m.source, cfg)?;
    let t = module_invariants(&m.target, cfg)?;
    let bijective = m.is_bijective();
    let gap = |x: &ModuleInvariants| x.sdepth as i64 - x.depth as i64;
    Ok(MapReport {
        bijective,
        source: s,
        target: t,
        spdim_monotone: s.spdim >= t.spdim,
        pdim_monotone: s.pdim >= t.pdim,
        equalities: bijective.then(|| s.spdim == t.spdim && s.pdim == t.pdim && gap(&s) == gap(&t)),
    })
}

/// Projective dimensions on both sides of a bijective map; they must agree.
pub fn pdim_pair_invariance(m: &LcmMap, cfg: &Config) -> Result<(usize, usize)> {
    if !m.is_bijective() {
        return Err(Error::Shape("pdim invariance needs a bijective map".into()));
    }
    let a = taylor_betti(&m.source.minimalized(), cfg)?.pdim;
    let b = taylor_betti(&m.target.minimalized(), cfg)?.pdim;
    if a != b {
        return Err(Error::Internal(format!(
            "projective dimensions differ under a bijective map: {a} vs {b}"
        )));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{polarize, GeneratorSet, Polarization};

    #[test]
    fn polarization_is_bijective() {
        let cfg = Config::default();
        let g = GeneratorSet::parse(&["x", "y"], &["x^2", "x*y"]).unwrap();
        let p = QuotientPair::ideal(g);
        let q = polarize(&p);
        let pol = Polarization::of(&p);
        let m = LcmMap::from_fn(p, q, |m| pol.apply(m), &cfg).unwrap();
        assert!(m.is_bijective());
        let (a, b) = pdim_pair_invariance(&m, &cfg).unwrap();
        assert_eq!(a, b);
        let r = check_map(&m, &cfg).unwrap();
        assert_eq!(r.equalities, Some(true));
        assert!(r.holds());
    }

    #[test]
    fn identity_map() {
        let cfg = Config::default();
        let g = GeneratorSet::parse(&["x", "y", "z"], &["x*y", "y*z", "x*z"]).unwrap();
        let p = QuotientPair::quotient_ring(g);
        let m = LcmMap::from_fn(p.clone(), p, |m| m.clone(), &cfg).unwrap();
        let r = check_map(&m, &cfg).unwrap();
        assert_eq!(r.source, r.target);
        assert_eq!(r.source.pdim, 2);
    }

    #[test]
    fn radical_map_is_monotone() {
        let cfg = Config::default();
        let g = GeneratorSet::parse(&["x", "y"], &["x^2", "x*y", "y^3"]).unwrap();
        let p = QuotientPair::ideal(g);
        let r = crate::monomial::radical_pair(&p).unwrap();
        let m = LcmMap::from_fn(p, r, Monomial::radical, &cfg).unwrap();
        assert!(!m.is_bijective());
        assert!(check_map(&m, &cfg).unwrap().holds());
    }

    #[test]
    fn subsemilattice_condition() {
        let cfg = Config::default();
        let i = GeneratorSet::parse(&["x", "y"], &["x", "y"]).unwrap();
        let j = GeneratorSet::parse(&["x", "y"], &["x*y"]).unwrap();
        let p = QuotientPair::new(i.clone(), j).unwrap();
        let q = QuotientPair::ideal(i);
        let err = LcmMap::from_fn(p, q, |m| m.clone(), &cfg).unwrap_err();
        assert_eq!(err, Error::NotOntoSubsemilattice);
    }
}
