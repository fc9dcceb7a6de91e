#![allow(dead_code)]

use std::collections::BTreeSet;

use lcmlat::lattice::{collapse, JoinMap};
use lcmlat::{GeneratorSet, Monomial, QuotientPair, Semilattice, Weighting};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, max_exp: u32) -> Monomial {
    loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if e.iter().any(|&x| x > 0) {
            return Monomial::new(e);
        }
    }
}

/// A generator set with `1..=max_gens` distinct non-unit generators, fewer if
/// that many do not exist.
pub fn random_ideal(rng: &mut impl Rng, n: usize, max_gens: usize, max_exp: u32) -> GeneratorSet {
    let available = (max_exp as usize + 1)
        .checked_pow(n as u32)
        .map_or(usize::MAX, |t| t - 1);
    let count = rng.gen_range(1..=max_gens.min(available));
    let mut gens: Vec<Monomial> = Vec::new();
    while gens.len() < count {
        let m = random_monomial(rng, n, max_exp);
        if !gens.contains(&m) {
            gens.push(m);
        }
    }
    GeneratorSet::new(var_names(n), gens).unwrap()
}

/// `I/J` with `J ⊊ I`; `J` is zero with probability one third.
pub fn random_pair(rng: &mut impl Rng, n: usize, max_gens: usize, max_exp: u32) -> QuotientPair {
    loop {
        let i = random_ideal(rng, n, max_gens, max_exp);
        if rng.gen_range(0..3) == 0 {
            return QuotientPair::ideal(i);
        }
        let count = rng.gen_range(1..=max_gens);
        let jg: Vec<Monomial> = (0..count)
            .map(|_| {
                let g = i.gens().choose(rng).unwrap();
                g.lcm(&random_monomial(rng, n, max_exp))
            })
            .collect();
        let j = GeneratorSet::new(var_names(n), jg).unwrap().minimalize();
        if let Ok(p) = QuotientPair::new(i, j) {
            if !p.is_zero_module() {
                return p;
            }
        }
    }
}

/// Points of the characteristic poset, sorted by total degree.
fn poset_points(p: &QuotientPair) -> (Vec<Vec<u32>>, Vec<u32>) {
    let n = p.nvars();
    let mut g = vec![0u32; n];
    for m in p.i().gens().iter().chain(p.j().gens()) {
        for (a, &b) in g.iter_mut().zip(m.exponents()) {
            *a = (*a).max(b);
        }
    }
    let inside = |x: &[u32], gens: &[Monomial]| {
        gens.iter()
            .any(|m| m.exponents().iter().zip(x).all(|(a, b)| a <= b))
    };
    let mut pts = Vec::new();
    let total: usize = g.iter().map(|&e| e as usize + 1).product();
    for mut code in 0..total {
        let mut x = vec![0u32; n];
        for j in 0..n {
            x[j] = (code % (g[j] as usize + 1)) as u32;
            code /= g[j] as usize + 1;
        }
        if inside(&x, p.i().gens()) && !inside(&x, p.j().gens()) {
            pts.push(x);
        }
    }
    pts.sort_by_key(|x| x.iter().sum::<u32>());
    (pts, g)
}

/// Stanley depth by exhaustive search over interval partitions: the least
/// uncovered point must be the bottom of its interval.
pub fn brute_sdepth(p: &QuotientPair) -> usize {
    let (pts, g) = poset_points(p);
    let rho = |x: &[u32]| x.iter().zip(&g).filter(|(a, b)| a == b).count();
    let pos = |x: &[u32]| pts.iter().position(|y| y == x);
    let n = pts.len();
    // boxes[i] = list of (rho(top), members) for intervals starting at point i
    let mut boxes: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); n];
    for (i, a) in pts.iter().enumerate() {
        for b in &pts {
            if !a.iter().zip(b).all(|(x, y)| x <= y) {
                continue;
            }
            let mut members = Vec::new();
            let mut ok = true;
            let mut x = a.clone();
            'walk: loop {
                match pos(&x) {
                    Some(k) => members.push(k),
                    None => {
                        ok = false;
                        break;
                    }
                }
                for j in 0..x.len() {
                    if x[j] < b[j] {
                        x[j] += 1;
                        continue 'walk;
                    }
                    x[j] = a[j];
                }
                break;
            }
            if ok {
                boxes[i].push((rho(b), members));
            }
        }
        boxes[i].sort_by_key(|b| std::cmp::Reverse(b.0));
    }
    fn search(
        boxes: &[Vec<(usize, Vec<usize>)>],
        covered: &mut Vec<bool>,
        cur: usize,
        best: &mut usize,
    ) {
        if cur <= *best {
            return;
        }
        let Some(i) = covered.iter().position(|&c| !c) else {
            *best = cur;
            return;
        };
        for (r, members) in &boxes[i] {
            if *r <= *best {
                break;
            }
            if members.iter().any(|&k| covered[k]) {
                continue;
            }
            for &k in members {
                covered[k] = true;
            }
            search(boxes, covered, cur.min(*r), best);
            for &k in members {
                covered[k] = false;
            }
        }
    }
    let mut best = pts.iter().map(|x| rho(x)).min().unwrap();
    let mut covered = vec![false; n];
    search(&boxes, &mut covered, usize::MAX, &mut best);
    best
}

pub fn brute_spdim(p: &QuotientPair) -> usize {
    p.nvars() - brute_sdepth(p)
}

const PRIME: u64 = 1_000_003;

fn dense_rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, Vec::len);
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], PRIME - 2);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % PRIME;
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = (*x + PRIME - f * p % PRIME) % PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

/// Betti numbers of `I/J` from the unsplit Taylor complex tensored with a
/// prime field, using dense elimination.
pub fn brute_betti(p: &QuotientPair) -> Vec<u64> {
    let mut gens: Vec<Monomial> = Vec::new();
    for g in p.j().gens() {
        if !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    let n2 = gens.len();
    for g in p.i().gens() {
        if !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    let m = gens.len();
    let lcm_of = |mask: usize| {
        (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| gens[i].clone())
            .reduce(|a, b| a.lcm(&b))
            .unwrap()
    };
    let basis: Vec<Vec<usize>> = (1..=m)
        .map(|d| {
            (1usize..1 << m)
                .filter(|&s| s.count_ones() as usize == d && s >> n2 != 0)
                .collect()
        })
        .collect();
    let mut ranks = vec![0usize; m + 1];
    for d in 1..m {
        let rows: Vec<Vec<u64>> = basis[d]
            .iter()
            .map(|&s| {
                let mut row = vec![0u64; basis[d - 1].len()];
                let mut sign = 0;
                for t in 0..m {
                    if s >> t & 1 == 0 {
                        continue;
                    }
                    let face = s & !(1 << t);
                    if face >> n2 != 0 && lcm_of(face) == lcm_of(s) {
                        let c = basis[d - 1].iter().position(|&f| f == face).unwrap();
                        row[c] = if sign % 2 == 0 { 1 } else { PRIME - 1 };
                    }
                    sign += 1;
                }
                row
            })
            .collect();
        if !rows.is_empty() && !basis[d - 1].is_empty() {
            ranks[d] = dense_rank_mod(rows);
        }
    }
    let mut betti: Vec<u64> = (0..m)
        .map(|d| (basis[d].len() - ranks[d] - ranks[d + 1]) as u64)
        .collect();
    while betti.last() == Some(&0) {
        betti.pop();
    }
    betti
}

pub fn brute_pdim(p: &QuotientPair) -> usize {
    brute_betti(p).len() - 1
}

/// Heights of the associated primes of `S/I`: `P_A` is associated iff
/// `I : m = P_A` for some monomial `m` with exponents at most the lcm.
pub fn associated_prime_heights(i: &GeneratorSet) -> BTreeSet<usize> {
    let n = i.nvars();
    let g = i.lcm_all();
    let total: usize = g.exponents().iter().map(|&e| e as usize + 1).product();
    let mut out = BTreeSet::new();
    for mut code in 0..total {
        let mut e = vec![0u32; n];
        for (j, x) in e.iter_mut().enumerate() {
            let w = g.exponents()[j] as usize + 1;
            *x = (code % w) as u32;
            code /= w;
        }
        let m = Monomial::new(e);
        if i.contains(&m) {
            continue;
        }
        let quotients: Vec<Monomial> = i
            .gens()
            .iter()
            .map(|f| f.lcm(&m).div(&m).unwrap())
            .collect();
        let minimal: Vec<&Monomial> = quotients
            .iter()
            .filter(|a| !quotients.iter().any(|b| b != *a && b.divides(a)))
            .collect();
        if minimal.iter().all(|a| a.degree() == 1) {
            let vars: BTreeSet<usize> = minimal.iter().flat_map(|a| a.support()).collect();
            out.insert(vars.len());
        }
    }
    out
}

/// Collapses at `steps` random meet-irreducibles, composing the projections.
pub fn random_collapse_chain(
    rng: &mut impl Rng,
    l: &Semilattice,
    steps: usize,
    keep_atoms: bool,
) -> JoinMap {
    let mut map = JoinMap::identity(l);
    for _ in 0..steps {
        let cur = map.target().clone();
        let mis: Vec<usize> = cur
            .meet_irreducibles()
            .into_iter()
            .filter(|&a| !keep_atoms || !cur.is_atom(a))
            .collect();
        let Some(&a) = mis.choose(rng) else {
            break;
        };
        let (_, pi) = collapse(&cur, a).unwrap();
        map = map.then(&pi).unwrap();
    }
    map
}

/// A valid weighting with pairwise distinct variables: meet-irreducibles get
/// one or two fresh variables, other non-top elements and the bottom get one
/// with probability one half.
pub fn random_coprime_weighting(rng: &mut impl Rng, l: &Semilattice) -> Weighting {
    let mut parts: Vec<(Option<usize>, u32)> = Vec::new();
    for a in 0..l.len() {
        if a == l.top() {
            continue;
        }
        let count = if l.is_meet_irreducible(a) {
            rng.gen_range(1..=2)
        } else {
            rng.gen_range(0..=1)
        };
        for _ in 0..count {
            parts.push((Some(a), rng.gen_range(1..=3)));
        }
    }
    if rng.gen_bool(0.5) {
        parts.push((None, rng.gen_range(1..=2)));
    }
    let n = parts.len();
    let vars = var_names(n);
    let mut weights = vec![Monomial::one(n); l.len()];
    let mut bottom = Monomial::one(n);
    for (v, &(slot, e)) in parts.iter().enumerate() {
        let mut x = vec![0u32; n];
        x[v] = e;
        let w = Monomial::new(x);
        match slot {
            Some(a) => weights[a] = weights[a].mul(&w).unwrap(),
            None => bottom = bottom.mul(&w).unwrap(),
        }
    }
    Weighting::new(vars, l.clone(), bottom, weights).unwrap()
}

/// Intersection-closed families of nonempty subsets of `{0..k}` containing
/// the full set and every singleton, one per orbit of the symmetric group,
/// each given as its sorted mask list. Empty intersections are allowed.
pub fn atom_set_families(k: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << k) - 1;
    let big: Vec<u32> = (1..full).filter(|m| m.count_ones() >= 2).collect();
    let singles: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    let perms = permutations(k);
    let mut orbits: BTreeSet<Vec<u32>> = BTreeSet::new();
    for choice in 0u64..1 << big.len() {
        let mut fam: Vec<u32> = singles.clone();
        if k > 1 {
            fam.push(full);
        }
        fam.extend(
            big.iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &m)| m),
        );
        let set: BTreeSet<u32> = fam.iter().copied().collect();
        if !fam
            .iter()
            .all(|a| fam.iter().all(|b| a & b == 0 || set.contains(&(a & b))))
        {
            continue;
        }
        let rep = perms
            .iter()
            .map(|p| {
                let mut v: Vec<u32> = fam.iter().map(|&m| permute_mask(m, p)).collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap();
        orbits.insert(rep);
    }
    orbits.into_iter().collect()
}

fn permute_mask(m: u32, p: &[usize]) -> u32 {
    (0..p.len())
        .filter(|&i| m >> i & 1 == 1)
        .map(|i| 1 << p[i])
        .fold(0, |a, b| a | b)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// The family ordered by inclusion.
pub fn family_lattice(fam: &[u32]) -> Semilattice {
    let labels = fam.iter().map(|m| format!("{m:b}")).collect();
    let mut rel = Vec::new();
    for (i, &a) in fam.iter().enumerate() {
        for (j, &b) in fam.iter().enumerate() {
            if i != j && a & b == a {
                rel.push((i, j));
            }
        }
    }
    Semilattice::build(labels, &rel).unwrap()
}
