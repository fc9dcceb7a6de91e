//! Exact Stanley depth of `I/J` through interval partitions of the
//! characteristic poset.
//!
//! For a target value `d` the points `x` with `ρ(x) < d` must be covered by
//! disjoint intervals whose tops satisfy `ρ = d` exactly; all other points may
//! stay singletons. Every interval with `ρ(top) ≥ d` refines into such boxes,
//! so feasibility of `d` is an exact cover problem with the low points as
//! primary items and the remaining points as secondary items. It is solved
//! with dancing links.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, QuotientPair};

const DENSE_INDEX_LIMIT: u64 = 1 << 22;
const BOX_SCAN_LIMIT: u64 = 1 << 26;
const NODE_LIMIT: usize = 1 << 26;

enum PointIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

/// The points `c ∈ [0, g]` with `X^c ∈ I` and `X^c ∉ J`.
pub struct CharacteristicPoset {
    g: Vec<u32>,
    radix: Vec<u64>,
    points: Vec<Vec<u32>>,
    index: PointIndex,
}

impl CharacteristicPoset {
    /// Uses `g` = exponent vector of the lcm of all generators.
    pub fn new(p: &QuotientPair, cfg: &Config) -> Result<Self> {
        if p.is_zero_module() {
            return Err(Error::EmptyModule);
        }
        let g = p.union().lcm_all().exponents().to_vec();
        let n = g.len();
        let mut radix = vec![1u64; n];
        let mut total: u64 = 1;
        for j in 0..n {
            radix[j] = total;
            total = total.saturating_mul(g[j] as u64 + 1);
        }
        if total > BOX_SCAN_LIMIT {
            return Err(Error::LimitExceeded {
                what: "characteristic box",
                limit: BOX_SCAN_LIMIT as usize,
            });
        }
        let mut points = Vec::new();
        let mut x = vec![0u32; n];
        loop {
            let m = Monomial::new(x.clone());
            if p.i().contains(&m) && !p.j().contains(&m) {
                if points.len() >= cfg.poset_cap {
                    return Err(Error::LimitExceeded {
                        what: "characteristic poset size",
                        limit: cfg.poset_cap,
                    });
                }
                points.push(x.clone());
            }
            let mut j = 0;
            while j < n && x[j] == g[j] {
                x[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
            x[j] += 1;
        }
        points.sort_by(|a, b| {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let key = |x: &[u32]| {
            x.iter()
                .zip(&radix)
                .map(|(&e, &r)| e as u64 * r)
                .sum::<u64>()
        };
        let index = if total <= DENSE_INDEX_LIMIT {
            let mut dense = vec![u32::MAX; total as usize];
            for (i, x) in points.iter().enumerate() {
                dense[key(x) as usize] = i as u32;
            }
            PointIndex::Dense(dense)
        } else {
            PointIndex::Sparse(
                points
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (key(x), i as u32))
                    .collect(),
            )
        };
        Ok(CharacteristicPoset {
            g,
            radix,
            points,
            index,
        })
    }

    pub fn g(&self) -> &[u32] {
        &self.g
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rho(&self, x: &[u32]) -> usize {
        x.iter().zip(&self.g).filter(|(a, b)| a == b).count()
    }

    pub fn index_of(&self, x: &[u32]) -> Option<usize> {
        if x.len() != self.g.len() || x.iter().zip(&self.g).any(|(a, b)| a > b) {
            return None;
        }
        let k: u64 = x.iter().zip(&self.radix).map(|(&e, &r)| e as u64 * r).sum();
        let i = match &self.index {
            PointIndex::Dense(v) => v[k as usize],
            PointIndex::Sparse(m) => *m.get(&k)?,
        };
        (i != u32::MAX).then_some(i as usize)
    }

    /// Indices of all points in the box `[a, b]`, or the first box vector
    /// missing from the poset.
    fn box_points(&self, a: &[u32], b: &[u32]) -> std::result::Result<Vec<usize>, Vec<u32>> {
        let n = a.len();
        let mut x = a.to_vec();
        let mut out = Vec::new();
        loop {
            match self.index_of(&x) {
                Some(i) => out.push(i),
                None => return Err(x),
            }
            let mut j = 0;
            while j < n && x[j] == b[j] {
                x[j] = a[j];
                j += 1;
            }
            if j == n {
                return Ok(out);
            }
            x[j] += 1;
        }
    }
}

/// Disjoint intervals `[a, b]` covering the characteristic poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntervalPartition {
    pub intervals: Vec<(Vec<u32>, Vec<u32>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DecompositionError {
    Uncovered(Vec<u32>),
    DoublyCovered(Vec<u32>),
    /// A vector inside an interval that is not a poset point.
    Outside(Vec<u32>),
    /// An interval whose lower end is not below its upper end.
    Malformed(Vec<u32>, Vec<u32>),
}

impl std::fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecompositionError::Uncovered(x) => write!(f, "point {x:?} is not covered"),
            DecompositionError::DoublyCovered(x) => write!(f, "point {x:?} is covered twice"),
            DecompositionError::Outside(x) => write!(f, "{x:?} lies outside the poset"),
            DecompositionError::Malformed(a, b) => write!(f, "interval [{a:?}, {b:?}] is empty"),
        }
    }
}

/// Checks that the intervals partition the poset and returns `min ρ(b)`.
pub fn verify_decomposition(
    poset: &CharacteristicPoset,
    d: &IntervalPartition,
) -> std::result::Result<usize, DecompositionError> {
    let mut covered = vec![false; poset.len()];
    let mut value = usize::MAX;
    for (a, b) in &d.intervals {
        if a.len() != poset.g.len() || b.len() != a.len() || a.iter().zip(b).any(|(x, y)| x > y) {
            return Err(DecompositionError::Malformed(a.clone(), b.clone()));
        }
        let pts = poset
            .box_points(a, b)
            .map_err(DecompositionError::Outside)?;
        for i in pts {
            if std::mem::replace(&mut covered[i], true) {
                return Err(DecompositionError::DoublyCovered(poset.points[i].clone()));
            }
        }
        value = value.min(poset.rho(b));
    }
    if let Some(i) = covered.iter().position(|&c| !c) {
        return Err(DecompositionError::Uncovered(poset.points[i].clone()));
    }
    Ok(value)
}

#[derive(Debug, Clone, Serialize)]
pub struct SdepthResult {
    pub sdepth: usize,
    pub spdim: usize,
    pub g: Vec<u32>,
    pub poset_size: usize,
    pub witness: IntervalPartition,
}

/// Exact Stanley depth and Stanley projective dimension of `I/J`.
pub fn sdepth_solve(p: &QuotientPair, cfg: &Config) -> Result<SdepthResult> {
    let poset = CharacteristicPoset::new(p, cfg)?;
    let n = p.nvars();
    let rhos: Vec<usize> = poset.points.iter().map(|x| poset.rho(x)).collect();
    let lb = *rhos.iter().min().expect("poset is nonempty");
    let ub = maximal_rho_bound(&poset, &rhos);
    let mut best = lb;
    let mut witness = singletons(&poset);
    for d in (lb + 1)..=ub {
        match cover_at(&poset, &rhos, d)? {
            Some(w) => {
                best = d;
                witness = w;
            }
            None => break,
        }
    }
    debug_assert_eq!(verify_decomposition(&poset, &witness), Ok(best));
    Ok(SdepthResult {
        sdepth: best,
        spdim: n - best,
        g: poset.g.clone(),
        poset_size: poset.len(),
        witness,
    })
}

pub fn spdim(p: &QuotientPair, cfg: &Config) -> Result<usize> {
    Ok(sdepth_solve(p, cfg)?.spdim)
}

fn singletons(poset: &CharacteristicPoset) -> IntervalPartition {
    IntervalPartition {
        intervals: poset
            .points
            .iter()
            .map(|x| (x.clone(), x.clone()))
            .collect(),
    }
}

/// A maximal point can only be the top of its interval.
fn maximal_rho_bound(poset: &CharacteristicPoset, rhos: &[usize]) -> usize {
    let mut bound = usize::MAX;
    let mut y = Vec::new();
    for (i, x) in poset.points.iter().enumerate() {
        let maximal = (0..x.len()).all(|j| {
            if x[j] == poset.g[j] {
                return true;
            }
            y.clone_from(x);
            y[j] += 1;
            poset.index_of(&y).is_none()
        });
        if maximal {
            bound = bound.min(rhos[i]);
        }
    }
    bound
}

fn combinations(items: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), out);
}

/// Looks for a partition with all interval tops at `ρ ≥ d`.
fn cover_at(
    poset: &CharacteristicPoset,
    rhos: &[usize],
    d: usize,
) -> Result<Option<IntervalPartition>> {
    let n = poset.g.len();
    // column of each point: needy points first (primary), then the rest
    let mut column = vec![0usize; poset.len()];
    let mut n_primary = 0;
    for (i, &r) in rhos.iter().enumerate() {
        if r < d {
            n_primary += 1;
            column[i] = n_primary;
        }
    }
    let mut next = n_primary;
    for (i, &r) in rhos.iter().enumerate() {
        if r >= d {
            next += 1;
            column[i] = next;
        }
    }
    let mut options: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut option_items: Vec<Vec<usize>> = Vec::new();
    let mut n_nodes = 0usize;
    let mut combos = Vec::new();
    for (i, a) in poset.points.iter().enumerate() {
        if rhos[i] >= d {
            continue;
        }
        let open: Vec<usize> = (0..n).filter(|&j| a[j] < poset.g[j]).collect();
        combos.clear();
        combinations(&open, d - rhos[i], &mut combos);
        for f in &combos {
            let mut b = a.clone();
            for &j in f {
                b[j] = poset.g[j];
            }
            if poset.index_of(&b).is_none() {
                continue;
            }
            let pts = poset
                .box_points(a, &b)
                .expect("interval between poset points lies in the poset");
            n_nodes += pts.len();
            if n_nodes > NODE_LIMIT {
                return Err(Error::LimitExceeded {
                    what: "exact cover size",
                    limit: NODE_LIMIT,
                });
            }
            option_items.push(pts.iter().map(|&p| column[p]).collect());
            options.push((a.clone(), b));
        }
    }
    let dlx = Dlx::new(n_primary, poset.len(), &option_items);
    let Some(rows) = dlx.solve_parallel() else {
        return Ok(None);
    };
    let mut covered = vec![false; poset.len() + 1];
    let mut intervals = Vec::new();
    for r in rows {
        for &c in &option_items[r] {
            covered[c] = true;
        }
        intervals.push(options[r].clone());
    }
    for (i, x) in poset.points.iter().enumerate() {
        if !covered[column[i]] {
            intervals.push((x.clone(), x.clone()));
        }
    }
    Ok(Some(IntervalPartition { intervals }))
}

/// Dancing links over primary columns `1..=n_primary` and secondary columns
/// after them. Node 0 is the root; nodes `1..=n_cols` are column headers.
#[derive(Clone)]
struct Dlx {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    col: Vec<u32>,
    row: Vec<u32>,
    size: Vec<u32>,
}

impl Dlx {
    fn new(n_primary: usize, n_cols: usize, options: &[Vec<usize>]) -> Self {
        let headers = n_cols + 1;
        let total = headers + options.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: vec![0; total],
            right: vec![0; total],
            up: vec![0; total],
            down: vec![0; total],
            col: vec![0; total],
            row: vec![u32::MAX; total],
            size: vec![0; headers],
        };
        for c in 0..headers {
            d.up[c] = c as u32;
            d.down[c] = c as u32;
            d.col[c] = c as u32;
            d.left[c] = c as u32;
            d.right[c] = c as u32;
        }
        // primary columns in the root list
        for c in 0..=n_primary {
            d.right[c] = ((c + 1) % (n_primary + 1)) as u32;
            d.left[c] = ((c + n_primary) % (n_primary + 1)) as u32;
        }
        let mut node = headers;
        for (r, items) in options.iter().enumerate() {
            let first = node;
            for &c in items {
                d.col[node] = c as u32;
                d.row[node] = r as u32;
                let last = d.up[c] as usize;
                d.up[node] = last as u32;
                d.down[node] = c as u32;
                d.down[last] = node as u32;
                d.up[c] = node as u32;
                d.size[c] += 1;
                d.left[node] = if node == first { node } else { node - 1 } as u32;
                d.right[node] = first as u32;
                if node != first {
                    d.right[node - 1] = node as u32;
                }
                d.left[first] = node as u32;
                node += 1;
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c] as usize, self.right[c] as usize);
        self.right[l] = r as u32;
        self.left[r] = l as u32;
        let mut i = self.down[c] as usize;
        while i != c {
            let mut j = self.right[i] as usize;
            while j != i {
                let (u, dn) = (self.up[j] as usize, self.down[j] as usize);
                self.down[u] = dn as u32;
                self.up[dn] = u as u32;
                self.size[self.col[j] as usize] -= 1;
                j = self.right[j] as usize;
            }
            i = self.down[i] as usize;
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c] as usize;
        while i != c {
            let mut j = self.left[i] as usize;
            while j != i {
                let (u, dn) = (self.up[j] as usize, self.down[j] as usize);
                self.size[self.col[j] as usize] += 1;
                self.down[u] = j as u32;
                self.up[dn] = j as u32;
                j = self.left[j] as usize;
            }
            i = self.up[i] as usize;
        }
        let (l, r) = (self.left[c] as usize, self.right[c] as usize);
        self.right[l] = c as u32;
        self.left[r] = c as u32;
    }

    fn select(&mut self, r: usize) {
        let mut j = self.right[r] as usize;
        while j != r {
            self.cover(self.col[j] as usize);
            j = self.right[j] as usize;
        }
    }

    fn unselect(&mut self, r: usize) {
        let mut j = self.left[r] as usize;
        while j != r {
            self.uncover(self.col[j] as usize);
            j = self.left[j] as usize;
        }
    }

    /// Primary column with the fewest remaining options.
    fn choose(&self) -> Option<usize> {
        let mut c = self.right[0] as usize;
        let mut best: Option<usize> = None;
        while c != 0 {
            if best.is_none_or(|b| self.size[c] < self.size[b]) {
                best = Some(c);
                if self.size[c] == 0 {
                    break;
                }
            }
            c = self.right[c] as usize;
        }
        best
    }

    fn solve(&mut self) -> Option<Vec<usize>> {
        let mut stack: Vec<usize> = Vec::new();
        'forward: loop {
            let Some(c) = self.choose() else {
                return Some(stack.iter().map(|&r| self.row[r] as usize).collect());
            };
            if self.size[c] > 0 {
                self.cover(c);
                let r = self.down[c] as usize;
                self.select(r);
                stack.push(r);
                continue 'forward;
            }
            loop {
                let r = stack.pop()?;
                self.unselect(r);
                let c = self.col[r] as usize;
                let next = self.down[r] as usize;
                if next != c {
                    self.select(next);
                    stack.push(next);
                    continue 'forward;
                }
                self.uncover(c);
            }
        }
    }

    /// Splits the first branching step across threads; the solution of the
    /// earliest successful branch is returned.
    fn solve_parallel(mut self) -> Option<Vec<usize>> {
        let Some(c) = self.choose() else {
            return Some(Vec::new());
        };
        let mut branches = Vec::new();
        let mut r = self.down[c] as usize;
        while r != c {
            branches.push(r);
            r = self.down[r] as usize;
        }
        if branches.len() <= 1 {
            return self.solve();
        }
        self.cover(c);
        branches.par_iter().find_map_first(|&r| {
            let mut local = self.clone();
            local.select(r);
            let mut rows = local.solve()?;
            rows.push(self.row[r] as usize);
            Some(rows)
        })
    }
}
