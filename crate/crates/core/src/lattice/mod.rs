//! Finite join-semilattices.
//!
//! A [`Semilattice`] stores its full join table, so joins and order queries
//! are constant time. The bottom element of the associated lattice is never
//! stored; operations that need it treat it as a virtual element that lies
//! below everything (see [`Semilattice::meet_hat`]).

mod canon;
pub mod io;
mod maps;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};

pub use canon::{canonical_form, find_isomorphism, is_isomorphic, CanonicalForm};
pub use maps::{
    check_pseudo_inverse, collapse, factor_map, free_cover_map, pseudo_inverse, Factorization,
    JoinMap,
};

#[derive(Clone)]
pub struct Semilattice {
    inner: Arc<Inner>,
}

struct Inner {
    n: usize,
    join: Vec<u32>,
    labels: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    top: usize,
}

/// Atoms, irreducibles and covers of a semilattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub atoms: Vec<usize>,
    /// Meet-irreducible elements paired with their unique upper cover.
    pub meet_irreducibles: Vec<(usize, usize)>,
    pub join_irreducibles: Vec<usize>,
    pub is_atomistic: bool,
    pub covers: Vec<(usize, usize)>,
}

impl Semilattice {
    /// Builds a semilattice from a relation given as `(lower, upper)` pairs.
    ///
    /// The pairs may be covers or arbitrary order relations; the transitive
    /// closure is taken. Fails if the closure has a cycle or some pair of
    /// elements lacks a least upper bound.
    pub fn build(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        Self::build_capped(labels, relation, usize::MAX)
    }

    pub fn build_capped(
        labels: Vec<String>,
        relation: &[(usize, usize)],
        element_cap: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if n > element_cap {
            return Err(Error::LimitExceeded {
                what: "semilattice size",
                limit: element_cap,
            });
        }
        let mut up: Vec<BitSet> = (0..n)
            .map(|i| {
                let mut b = BitSet::new(n);
                b.insert(i);
                b
            })
            .collect();
        for &(lo, hi) in relation {
            for idx in [lo, hi] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, len: n });
                }
            }
            up[lo].insert(hi);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::CyclicRelation(a));
                }
            }
        }
        let sizes: Vec<usize> = up.iter().map(BitSet::count).collect();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            join[a * n + a] = a as u32;
            for b in (a + 1)..n {
                let mut common = up[a].clone();
                common.intersect_with(&up[b]);
                let target = common.count();
                let least = common.iter().find(|&u| sizes[u] == target);
                match least {
                    Some(u) => {
                        join[a * n + b] = u as u32;
                        join[b * n + a] = u as u32;
                    }
                    None => return Err(Error::NotASemilattice(a, b)),
                }
            }
        }
        Ok(Self::from_join_unchecked(labels, join))
    }

    /// Builds a semilattice from a complete join table, verifying the
    /// semilattice axioms (idempotent, commutative, associative).
    pub fn from_join_table(labels: Vec<String>, join: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if join.len() != n * n {
            return Err(Error::Shape(format!(
                "join table has {} entries, expected {}",
                join.len(),
                n * n
            )));
        }
        if let Some(&bad) = join.iter().find(|&&j| j as usize >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad as usize,
                len: n,
            });
        }
        let j = |a: usize, b: usize| join[a * n + b] as usize;
        for a in 0..n {
            if j(a, a) != a {
                return Err(Error::NotASemilattice(a, a));
            }
            for b in 0..n {
                if j(a, b) != j(b, a) {
                    return Err(Error::NotASemilattice(a, b));
                }
                for c in 0..n {
                    if j(j(a, b), c) != j(a, j(b, c)) {
                        return Err(Error::NotASemilattice(a, b));
                    }
                }
            }
        }
        Ok(Self::from_join_unchecked(labels, join))
    }

    /// Trusted constructor for join tables produced inside the crate.
    pub(crate) fn from_join_unchecked(labels: Vec<String>, join: Vec<u32>) -> Self {
        let n = labels.len();
        debug_assert_eq!(join.len(), n * n);
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if join[a * n + b] as usize == b {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        // Elements sorted by down-set size form a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (down[a].count(), a));
        let top = *order.last().expect("nonempty");
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            let mut dominated = BitSet::new(n);
            for &b in order.iter().filter(|&&b| b != a && up[a].contains(b)) {
                if dominated.contains(b) {
                    continue;
                }
                upper_covers[a].push(b);
                lower_covers[b].push(a);
                dominated.union_with(&up[b]);
            }
        }
        for v in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
            v.sort_unstable();
        }
        Semilattice {
            inner: Arc::new(Inner {
                n,
                join,
                labels,
                up,
                down,
                upper_covers,
                lower_covers,
                top,
            }),
        }
    }

    /// The semilattice of nonempty subsets of a `k`-element set under union.
    ///
    /// Element `i` is the subset with bit mask `i + 1`.
    pub fn boolean(k: usize, element_cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyLattice);
        }
        if k >= usize::BITS as usize - 1 || (1usize << k) - 1 > element_cap {
            return Err(Error::LimitExceeded {
                what: "boolean semilattice size",
                limit: element_cap,
            });
        }
        let n = (1usize << k) - 1;
        let labels = (1..=n).map(|mask| subset_label(mask as u64)).collect();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = (((a + 1) | (b + 1)) - 1) as u32;
            }
        }
        Ok(Self::from_join_unchecked(labels, join))
    }

    pub fn len(&self) -> usize {
        self.inner.n
    }

    pub fn is_empty(&self) -> bool {
        self.inner.n == 0
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.inner.join[a * self.inner.n + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn top(&self) -> usize {
        self.inner.top
    }

    pub fn label(&self, a: usize) -> &str {
        &self.inner.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn join_table(&self) -> &[u32] {
        &self.inner.join
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.inner.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.inner.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.inner.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.inner.lower_covers[a]
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.upper_covers(a).iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Join of a set of elements; `None` for the empty set (the virtual bottom).
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().reduce(|acc, x| self.join(acc, x))
    }

    /// Meet in the lattice with adjoined bottom; `None` stands for that bottom.
    ///
    /// The meet of the empty set is the top element.
    pub fn meet_hat(&self, items: &[usize]) -> Option<usize> {
        if items.is_empty() {
            return Some(self.top());
        }
        let mut lower = self.down_set(items[0]).clone();
        for &x in &items[1..] {
            lower.intersect_with(self.down_set(x));
        }
        self.join_all(lower.iter())
    }

    pub fn height(&self, a: usize) -> usize {
        // Longest chain from a minimal element; covers of the down set.
        let mut memo = vec![usize::MAX; self.len()];
        self.height_memo(a, &mut memo)
    }

    fn height_memo(&self, a: usize, memo: &mut [usize]) -> usize {
        if memo[a] != usize::MAX {
            return memo[a];
        }
        let h = self
            .lower_covers(a)
            .iter()
            .map(|&b| self.height_memo(b, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[a] = h;
        h
    }

    pub fn heights(&self) -> Vec<usize> {
        let mut memo = vec![usize::MAX; self.len()];
        (0..self.len())
            .map(|a| self.height_memo(a, &mut memo))
            .collect()
    }

    /// Element indices ordered so that every element precedes those above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (self.down_set(a).count(), a));
        order
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.lower_covers(a).is_empty())
            .collect()
    }

    pub fn is_atom(&self, a: usize) -> bool {
        self.lower_covers(a).is_empty()
    }

    /// A meet-irreducible element has exactly one upper cover.
    pub fn is_meet_irreducible(&self, a: usize) -> bool {
        self.upper_covers(a).len() == 1
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.is_meet_irreducible(a))
            .collect()
    }

    /// Minimal elements and elements covering exactly one element.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.lower_covers(a).len() <= 1)
            .collect()
    }

    /// Join of the atoms below `a`.
    pub fn atom_closure(&self, a: usize) -> Option<usize> {
        self.join_all(self.down_set(a).iter().filter(|&x| self.is_atom(x)))
    }

    pub fn is_atomistic(&self) -> bool {
        (0..self.len()).all(|a| self.atom_closure(a) == Some(a))
    }

    pub fn structure_report(&self) -> StructureReport {
        StructureReport {
            atoms: self.atoms(),
            meet_irreducibles: self
                .meet_irreducibles()
                .into_iter()
                .map(|a| (a, self.upper_covers(a)[0]))
                .collect(),
            join_irreducibles: self.join_irreducibles(),
            is_atomistic: self.is_atomistic(),
            covers: self.covers(),
        }
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        if perm.len() != n {
            return Err(Error::Shape("permutation length".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::Shape("not a permutation".into()));
            }
            inv[p] = i;
        }
        let labels = inv.iter().map(|&i| self.label(i).to_owned()).collect();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = perm[self.join(inv[a], inv[b])] as u32;
            }
        }
        Ok(Self::from_join_unchecked(labels, join))
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Shape("label count".into()));
        }
        Ok(Self::from_join_unchecked(labels, self.inner.join.clone()))
    }

    /// Same order structure under the identity labeling of indices.
    pub fn same_structure(&self, other: &Semilattice) -> bool {
        self.inner.join == other.inner.join
    }
}

impl fmt::Debug for Semilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semilattice")
            .field("labels", &self.inner.labels)
            .field("covers", &self.covers())
            .finish()
    }
}

pub(crate) fn subset_label(mask: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain(n: usize) -> Semilattice {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Semilattice::build(labels, &rel).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn smallest_non_chain() {
        let l = Semilattice::build(names(&["a", "b", "t"]), &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(l.join(0, 1), 2);
        assert_eq!(l.top(), 2);
        assert!(l.lt(0, 2) && !l.comparable(0, 1));
    }

    #[test]
    fn missing_upper_bound_is_rejected() {
        let err = Semilattice::build(names(&["a", "b"]), &[]).unwrap_err();
        assert_eq!(err, Error::NotASemilattice(0, 1));
    }

    #[test]
    fn two_minimal_upper_bounds_rejected() {
        // a,b < c,d : no least upper bound for (a,b)
        let rel = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)];
        let err = Semilattice::build(names(&["a", "b", "c", "d", "t"]), &rel).unwrap_err();
        assert_eq!(err, Error::NotASemilattice(0, 1));
    }

    #[test]
    fn cycles_rejected() {
        let err = Semilattice::build(names(&["a", "b"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::CyclicRelation(_)));
        let err = Semilattice::build(names(&["a"]), &[(0, 3)]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { .. }));
        assert_eq!(
            Semilattice::build(vec![], &[]).unwrap_err(),
            Error::EmptyLattice
        );
    }

    #[test]
    fn figure_one_poset() {
        // four atoms, a chain of three joins above them
        let labels = names(&["yzv", "xzv", "x2yv", "x3yz", "xyzv", "x2yzv", "x3yzv"]);
        let rel = [(0, 4), (1, 4), (4, 5), (2, 5), (5, 6), (3, 6)];
        let l = Semilattice::build(labels, &rel).unwrap();
        let rep = l.structure_report();
        assert_eq!(rep.atoms, vec![0, 1, 2, 3]);
        assert!(rep.is_atomistic);
        assert_eq!(l.join(0, 2), 5);
        assert_eq!(l.join(1, 3), 6);
    }

    #[test]
    fn boolean_structure() {
        let b3 = Semilattice::boolean(3, 4096).unwrap();
        let rep = b3.structure_report();
        assert_eq!(rep.atoms, vec![0, 1, 3]); // masks 1, 2, 4
        let mi: Vec<usize> = rep.meet_irreducibles.iter().map(|p| p.0).collect();
        assert_eq!(mi, vec![2, 4, 5]); // masks 3, 5, 6
        assert!(rep.meet_irreducibles.iter().all(|&(_, up)| up == 6));
        assert!(rep.is_atomistic);
        assert_eq!(Semilattice::boolean(1, 10).unwrap().len(), 1);
        let b2 = Semilattice::boolean(2, 10).unwrap();
        assert_eq!(b2.len(), 3);
        assert_eq!(b2.covers(), vec![(0, 2), (1, 2)]);
        assert_eq!(Semilattice::boolean(4, 4096).unwrap().len(), 15);
        assert!(matches!(
            Semilattice::boolean(13, 4096),
            Err(Error::LimitExceeded { .. })
        ));
        assert_eq!(b3.label(6), "{1,2,3}");
    }

    #[test]
    fn chain_structure() {
        let c = chain(3);
        let rep = c.structure_report();
        assert_eq!(rep.atoms, vec![0]);
        assert_eq!(rep.meet_irreducibles, vec![(0, 1), (1, 2)]);
        assert!(!rep.is_atomistic);
        assert_eq!(rep.join_irreducibles, vec![0, 1, 2]);
        assert_eq!(c.heights(), vec![0, 1, 2]);
    }

    #[test]
    fn join_table_validation() {
        let ok = Semilattice::from_join_table(names(&["a", "b"]), vec![0, 1, 1, 1]).unwrap();
        assert_eq!(ok.top(), 1);
        let bad = Semilattice::from_join_table(names(&["a", "b"]), vec![0, 1, 0, 1]);
        assert!(bad.is_err());
    }

    #[test]
    fn meet_hat_uses_virtual_bottom() {
        let b2 = Semilattice::boolean(2, 10).unwrap();
        assert_eq!(b2.meet_hat(&[0, 1]), None);
        assert_eq!(b2.meet_hat(&[0, 2]), Some(0));
        assert_eq!(b2.meet_hat(&[]), Some(2));
    }
}
