//! Canonical forms of finite semilattices.
//!
//! A semilattice is determined by the family of sets of join-irreducibles
//! lying below each element (the order is inclusion). For atomistic
//! semilattices the join-irreducibles are exactly the atoms. The canonical
//! form is the lexicographically least sorted family over all relabelings of
//! the join-irreducibles that respect an isomorphism-invariant coloring.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Semilattice;

/// Color, up- and down-set sizes, and color counts of the join-irreducibles below and above.
type Signature = (usize, (usize, usize), Vec<usize>, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Mask = Vec<u64>;

struct Labeling {
    family: Vec<Mask>,
    /// Canonical mask of each element.
    element_masks: Vec<Mask>,
    ji_count: usize,
}

fn set_bit(mask: &mut Mask, i: usize) {
    mask[i / 64] |= 1 << (i % 64);
}

/// Splits join-irreducibles into color classes by iterated refinement.
fn color_classes(l: &Semilattice, jis: &[usize]) -> Vec<Vec<usize>> {
    let r = jis.len();
    let mut color: Vec<usize> = vec![0; r];
    let mut n_colors = 1;
    let base: Vec<(usize, usize)> = jis
        .iter()
        .map(|&j| (l.up_set(j).count(), l.down_set(j).count()))
        .collect();
    loop {
        let sigs: Vec<Signature> = (0..r)
            .map(|i| {
                let mut below = vec![0; n_colors];
                let mut above = vec![0; n_colors];
                for (t, &j) in jis.iter().enumerate() {
                    if t == i {
                        continue;
                    }
                    if l.leq(j, jis[i]) {
                        below[color[t]] += 1;
                    } else if l.leq(jis[i], j) {
                        above[color[t]] += 1;
                    }
                }
                (color[i], base[i], below, above)
            })
            .collect();
        let mut distinct: Vec<_> = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let done = distinct.len() == n_colors;
        color = next;
        n_colors = distinct.len();
        if done {
            break;
        }
    }
    let mut classes = vec![Vec::new(); n_colors];
    for (i, &c) in color.iter().enumerate() {
        classes[c].push(i);
    }
    classes
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn best_labeling(l: &Semilattice, perm_cap: usize) -> Result<Labeling> {
    let jis = l.join_irreducibles();
    let r = jis.len();
    let words = r.div_ceil(64).max(1);
    let classes = color_classes(l, &jis);
    let mut total: usize = 1;
    for c in &classes {
        for f in 1..=c.len() {
            total = total.saturating_mul(f);
        }
    }
    if total > perm_cap {
        return Err(Error::LimitExceeded {
            what: "canonical labeling permutations",
            limit: perm_cap,
        });
    }
    // below[e] = indices (into jis) of join-irreducibles under element e
    let below: Vec<Vec<usize>> = (0..l.len())
        .map(|e| (0..r).filter(|&t| l.leq(jis[t], e)).collect())
        .collect();
    let class_perms: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
    let mut odometer = vec![0usize; classes.len()];
    let mut best: Option<(Vec<Mask>, Vec<usize>)> = None;
    loop {
        // position[t] = canonical bit of join-irreducible t
        let mut position = vec![0usize; r];
        let mut next = 0;
        for (ci, perms) in class_perms.iter().enumerate() {
            for &t in &perms[odometer[ci]] {
                position[t] = next;
                next += 1;
            }
        }
        let mut family: Vec<Mask> = below
            .iter()
            .map(|ts| {
                let mut m = vec![0u64; words];
                for &t in ts {
                    set_bit(&mut m, position[t]);
                }
                m.reverse();
                m
            })
            .collect();
        family.sort();
        if best.as_ref().is_none_or(|(f, _)| family < *f) {
            best = Some((family, position));
        }
        let mut ci = 0;
        loop {
            if ci == classes.len() {
                let (family, position) = best.expect("at least one labeling");
                let element_masks = below
                    .iter()
                    .map(|ts| {
                        let mut m = vec![0u64; words];
                        for &t in ts {
                            set_bit(&mut m, position[t]);
                        }
                        m.reverse();
                        m
                    })
                    .collect();
                return Ok(Labeling {
                    family,
                    element_masks,
                    ji_count: r,
                });
            }
            odometer[ci] += 1;
            if odometer[ci] < class_perms[ci].len() {
                break;
            }
            odometer[ci] = 0;
            ci += 1;
        }
    }
}

fn encode(lab: &Labeling) -> CanonicalForm {
    let masks: Vec<String> = lab
        .family
        .iter()
        .map(|m| {
            m.iter()
                .map(|w| format!("{w:x}"))
                .collect::<Vec<_>>()
                .join("_")
        })
        .collect();
    CanonicalForm(format!("{}:{}", lab.ji_count, masks.join(".")))
}

/// Canonical string; equal for two semilattices iff they are isomorphic.
pub fn canonical_form(l: &Semilattice, perm_cap: usize) -> Result<CanonicalForm> {
    Ok(encode(&best_labeling(l, perm_cap)?))
}

pub fn is_isomorphic(a: &Semilattice, b: &Semilattice, perm_cap: usize) -> Result<bool> {
    Ok(find_isomorphism(a, b, perm_cap)?.is_some())
}

/// An order isomorphism `a → b` as an index map, if one exists.
pub fn find_isomorphism(
    a: &Semilattice,
    b: &Semilattice,
    perm_cap: usize,
) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    let la = best_labeling(a, perm_cap)?;
    let lb = best_labeling(b, perm_cap)?;
    if la.family != lb.family || la.ji_count != lb.ji_count {
        return Ok(None);
    }
    let mut index: Vec<(&Mask, usize)> = lb.element_masks.iter().zip(0..).collect();
    index.sort();
    let map: Vec<usize> = la
        .element_masks
        .iter()
        .map(|m| {
            let pos = index
                .binary_search_by(|(k, _)| (*k).cmp(m))
                .expect("same family");
            index[pos].1
        })
        .collect();
    debug_assert!(
        (0..a.len()).all(|x| (0..a.len()).all(|y| map[a.join(x, y)] == b.join(map[x], map[y])))
    );
    Ok(Some(map))
}
