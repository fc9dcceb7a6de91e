//! Join-preserving maps, quotients by meet-irreducibles, and factorization.

use crate::error::{Error, Result};

use super::Semilattice;

/// A validated join-preserving map between two semilattices.
#[derive(Clone, Debug)]
pub struct JoinMap {
    source: Semilattice,
    target: Semilattice,
    image: Vec<usize>,
}

/// Outcome of [`factor_map`].
#[derive(Clone, Debug)]
pub enum Factorization {
    Injective,
    /// `map = residual ∘ quotient`, where `quotient` is the collapse at `element`.
    FactorsThrough {
        element: usize,
        quotient: JoinMap,
        residual: JoinMap,
    },
}

impl JoinMap {
    pub fn new(source: Semilattice, target: Semilattice, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.len() {
            return Err(Error::Shape(format!(
                "map has {} images for {} source elements",
                image.len(),
                source.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&i| i >= target.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: target.len(),
            });
        }
        for a in 0..source.len() {
            for b in (a + 1)..source.len() {
                if image[source.join(a, b)] != target.join(image[a], image[b]) {
                    return Err(Error::NotJoinPreserving(a, b));
                }
            }
        }
        Ok(JoinMap {
            source,
            target,
            image,
        })
    }

    pub(crate) fn new_unchecked(
        source: Semilattice,
        target: Semilattice,
        image: Vec<usize>,
    ) -> Self {
        debug_assert!(image.len() == source.len());
        JoinMap {
            source,
            target,
            image,
        }
    }

    pub fn identity(l: &Semilattice) -> Self {
        JoinMap::new_unchecked(l.clone(), l.clone(), (0..l.len()).collect())
    }

    pub fn source(&self) -> &Semilattice {
        &self.source
    }

    pub fn target(&self) -> &Semilattice {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &i in &self.image {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.image
            .iter()
            .all(|&i| !std::mem::replace(&mut hit[i], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &JoinMap) -> Result<JoinMap> {
        if !self.target.same_structure(&other.source) {
            return Err(Error::Shape("maps are not composable".into()));
        }
        let image = self.image.iter().map(|&i| other.image[i]).collect();
        Ok(JoinMap::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            image,
        ))
    }
}

/// `φ†(b)` is the join of the full preimage of `b`.
pub fn pseudo_inverse(phi: &JoinMap) -> Result<Vec<usize>> {
    let mut dagger: Vec<Option<usize>> = vec![None; phi.target.len()];
    for (a, &b) in phi.image.iter().enumerate() {
        dagger[b] = Some(match dagger[b] {
            Some(c) => phi.source.join(c, a),
            None => a,
        });
    }
    let dagger: Vec<usize> = dagger
        .into_iter()
        .collect::<Option<_>>()
        .ok_or(Error::NotSurjective)?;
    debug_assert!(check_pseudo_inverse(phi, &dagger).is_ok());
    Ok(dagger)
}

/// Checks `φ∘φ† = id`, monotonicity of `φ†`, and `φ(α) ≤ b ⇔ α ≤ φ†(b)`.
pub fn check_pseudo_inverse(phi: &JoinMap, dagger: &[usize]) -> Result<()> {
    let (src, tgt) = (&phi.source, &phi.target);
    if dagger.len() != tgt.len() {
        return Err(Error::Shape("pseudo-inverse length".into()));
    }
    for b in 0..tgt.len() {
        if phi.image[dagger[b]] != b {
            return Err(Error::Internal(format!("φ(φ†({b})) != {b}")));
        }
        for c in 0..tgt.len() {
            if tgt.leq(b, c) && !src.leq(dagger[b], dagger[c]) {
                return Err(Error::Internal(format!("φ† not monotone at {b} <= {c}")));
            }
        }
        for alpha in 0..src.len() {
            if tgt.leq(phi.image[alpha], b) != src.leq(alpha, dagger[b]) {
                return Err(Error::Internal(format!(
                    "Galois condition fails at source {alpha}, target {b}"
                )));
            }
        }
    }
    Ok(())
}

/// Quotient of `l` identifying the meet-irreducible `a` with its unique upper
/// cover. Elements after `a` shift down by one index.
pub fn collapse(l: &Semilattice, a: usize) -> Result<(Semilattice, JoinMap)> {
    if a >= l.len() {
        return Err(Error::IndexOutOfRange {
            index: a,
            len: l.len(),
        });
    }
    if !l.is_meet_irreducible(a) {
        return Err(Error::NotMeetIrreducible(a));
    }
    let a_plus = l.upper_covers(a)[0];
    let shift = |i: usize| if i > a { i - 1 } else { i };
    let class: Vec<usize> = (0..l.len())
        .map(|i| if i == a { shift(a_plus) } else { shift(i) })
        .collect();
    let reps: Vec<usize> = (0..l.len()).filter(|&i| i != a).collect();
    let m = reps.len();
    let mut join = vec![0u32; m * m];
    for (x, &rx) in reps.iter().enumerate() {
        for (y, &ry) in reps.iter().enumerate() {
            join[x * m + y] = class[l.join(rx, ry)] as u32;
        }
    }
    let labels = reps.iter().map(|&i| l.label(i).to_owned()).collect();
    let q = Semilattice::from_join_unchecked(labels, join);
    let pi = JoinMap::new_unchecked(l.clone(), q.clone(), class);
    debug_assert!(JoinMap::new(l.clone(), q.clone(), pi.image.clone()).is_ok());
    Ok((q, pi))
}

/// Factors a non-injective map through the collapse at the smallest-index
/// meet-irreducible `a` with `φ(a) = φ(a₊)`.
pub fn factor_map(phi: &JoinMap) -> Result<Factorization> {
    if phi.is_injective() {
        return Ok(Factorization::Injective);
    }
    let src = &phi.source;
    let a = (0..src.len())
        .find(|&a| src.is_meet_irreducible(a) && phi.image[a] == phi.image[src.upper_covers(a)[0]])
        .ok_or_else(|| Error::Internal("non-injective map with no collapsible element".into()))?;
    let (q, pi) = collapse(src, a)?;
    let mut residual = vec![0; q.len()];
    for (x, &cls) in pi.image.iter().enumerate() {
        residual[cls] = phi.image[x];
    }
    let residual = JoinMap::new(q, phi.target.clone(), residual)?;
    Ok(Factorization::FactorsThrough {
        element: a,
        quotient: pi,
        residual,
    })
}

/// The surjection `B(k) → L` sending each subset of atoms to its join.
pub fn free_cover_map(l: &Semilattice, element_cap: usize) -> Result<JoinMap> {
    if !l.is_atomistic() {
        return Err(Error::NotAtomistic);
    }
    let atoms = l.atoms();
    let b = Semilattice::boolean(atoms.len(), element_cap)?;
    let image = (1..=b.len())
        .map(|mask| {
            l.join_all(
                (0..atoms.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| atoms[i]),
            )
            .expect("nonempty subset")
        })
        .collect();
    let phi = JoinMap::new_unchecked(b, l.clone(), image);
    debug_assert!(phi.is_surjective());
    Ok(phi)
}
