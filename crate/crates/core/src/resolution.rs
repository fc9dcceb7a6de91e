//! Betti numbers and projective dimension of `I/J` from the Taylor complex.
//!
//! The Taylor complex on `G₁ = G_J ∪ G_I` modulo the subcomplex on `G₂ = G_J`
//! resolves `I/J`. After tensoring with the field only the differential
//! entries between subsets with equal lcm survive, so the complex splits into
//! one block per lcm value and ranks are computed blockwise.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, Field};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::monomial::{Monomial, QuotientPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub betti: Vec<u64>,
    pub pdim: usize,
    pub depth: usize,
    pub field: String,
}

/// Ordered generator list `G_J` followed by the new generators of `G_I`,
/// and the number of leading `G_J` entries.
fn taylor_generators(p: &QuotientPair) -> (Vec<Monomial>, usize) {
    let mut g1: Vec<Monomial> = Vec::new();
    for g in p.j().gens() {
        if !g1.contains(g) {
            g1.push(g.clone());
        }
    }
    let n2 = g1.len();
    for g in p.i().gens() {
        if !g1.contains(g) {
            g1.push(g.clone());
        }
    }
    (g1, n2)
}

pub fn taylor_betti(p: &QuotientPair, cfg: &Config) -> Result<BettiTable> {
    if p.is_zero_module() {
        return Err(Error::EmptyModule);
    }
    let (gens, n2) = taylor_generators(p);
    let m = gens.len();
    let count = if m >= 63 {
        u64::MAX
    } else {
        (1u64 << m) - (1u64 << n2)
    };
    if count > cfg.subset_cap as u64 {
        return Err(Error::LimitExceeded {
            what: "Taylor complex subsets",
            limit: cfg.subset_cap,
        });
    }
    let full = 1usize << m;
    let sub_mask = (1usize << n2) - 1;
    let mut lcms: Vec<Monomial> = Vec::with_capacity(full);
    lcms.push(Monomial::one(p.nvars()));
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let l = if rest == 0 {
            gens[low].clone()
        } else {
            lcms[rest].lcm(&gens[low])
        };
        lcms.push(l);
    }
    let mut blocks: HashMap<&Monomial, Vec<usize>> = HashMap::new();
    for (mask, l) in lcms.iter().enumerate().skip(1) {
        if mask & !sub_mask != 0 {
            blocks.entry(l).or_default().push(mask);
        }
    }
    let mut blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    blocks.sort();
    let field = cfg.field;
    let per_block: Vec<(Vec<u64>, Vec<u64>)> = blocks
        .par_iter()
        .map(|masks| block_ranks(masks, &lcms, sub_mask, m, field))
        .collect();
    let mut dims = vec![0u64; m];
    let mut ranks = vec![0u64; m + 1];
    for (d, r) in per_block {
        for i in 0..m {
            dims[i] += d[i];
            ranks[i] += r[i];
        }
    }
    let betti: Vec<u64> = (0..m).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect();
    debug_assert_eq!(
        betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum::<i64>(),
        dims.iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum::<i64>()
    );
    let pdim = betti
        .iter()
        .rposition(|&b| b != 0)
        .ok_or_else(|| Error::Internal("all Betti numbers vanish for a nonzero module".into()))?;
    let mut betti = betti;
    betti.truncate(pdim + 1);
    Ok(BettiTable {
        betti,
        pdim,
        depth: p.nvars().saturating_sub(pdim),
        field: field.to_string(),
    })
}

/// Dimensions per homological degree and ranks of `d_i: C_i → C_{i-1}`.
fn block_ranks(
    masks: &[usize],
    lcms: &[Monomial],
    sub_mask: usize,
    m: usize,
    field: Field,
) -> (Vec<u64>, Vec<u64>) {
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &mask in masks {
        by_degree[mask.count_ones() as usize - 1].push(mask);
    }
    let dims: Vec<u64> = by_degree.iter().map(|v| v.len() as u64).collect();
    let mut ranks = vec![0u64; m + 1];
    for i in 1..m {
        if by_degree[i].is_empty() || by_degree[i - 1].is_empty() {
            continue;
        }
        let col_of: HashMap<usize, usize> = by_degree[i - 1]
            .iter()
            .enumerate()
            .map(|(c, &mask)| (mask, c))
            .collect();
        let mut mat = SparseMatrix::new(by_degree[i - 1].len());
        for &mask in &by_degree[i] {
            let mut row = Vec::new();
            let mut bits = mask;
            let mut pos = 0;
            while bits != 0 {
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let face = mask & !(1 << t);
                if face & !sub_mask != 0 && lcms[face] == lcms[mask] {
                    let c = col_of[&face];
                    row.push((c, if pos % 2 == 0 { 1 } else { -1 }));
                }
                pos += 1;
            }
            mat.push_row(row);
        }
        ranks[i] = mat.rank(field) as u64;
    }
    (dims, ranks)
}

pub fn pdim(p: &QuotientPair, cfg: &Config) -> Result<usize> {
    Ok(taylor_betti(p, cfg)?.pdim)
}
