//! Exact ranks of sparse integer matrices over Q or GF(p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::config::Field;

/// Row-major sparse matrix with small integer entries. Each row is sorted by
/// column and has no explicit zeros.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, mut row: Vec<(usize, i64)>) {
        row.retain(|&(_, v)| v != 0);
        row.sort_unstable_by_key(|&(c, _)| c);
        debug_assert!(row.iter().all(|&(c, _)| c < self.cols));
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rationals => rank_rational(&self.rows, self.cols),
            Field::Prime(p) => rank_mod_p(&self.rows, self.cols, p),
        }
    }
}

type BigRow = Vec<(usize, BigInt)>;

fn remove_content(row: &mut BigRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * row - b * pivot`, dropping zeros.
fn combine(row: &BigRow, a: &BigInt, pivot: &BigRow, b: &BigInt) -> BigRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Fraction-free elimination: every reduction step multiplies by the pivot
/// and subtracts, then divides out the row content.
fn rank_rational(rows: &[Vec<(usize, i64)>], cols: usize) -> usize {
    let mut pivots: Vec<Option<BigRow>> = vec![None; cols];
    let mut rank = 0;
    for r in rows {
        let mut row: BigRow = r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect();
        while let Some((lead, _)) = row.first() {
            let lead = *lead;
            match &pivots[lead] {
                Some(p) => {
                    let g = row[0].1.gcd(&p[0].1);
                    let a = &p[0].1 / &g;
                    let b = &row[0].1 / &g;
                    row = combine(&row, &a, p, &b);
                    remove_content(&mut row);
                }
                None => {
                    if row[0].1.is_negative() {
                        for (_, v) in row.iter_mut() {
                            *v = -&*v;
                        }
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(rows: &[Vec<(usize, i64)>], cols: usize, p: u64) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; cols];
    let mut rank = 0;
    for r in rows {
        let mut row: Vec<(usize, u64)> = r
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, lv)) = row.first() {
            match &pivots[lead] {
                Some(piv) => {
                    // pivot rows are normalized to leading coefficient 1
                    let mut out = Vec::with_capacity(row.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < piv.len() {
                        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
                        let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
                        let (c, v) = if ci < cj {
                            i += 1;
                            (ci, row[i - 1].1)
                        } else if cj < ci {
                            j += 1;
                            (cj, (p - lv * piv[j - 1].1 % p) % p)
                        } else {
                            i += 1;
                            j += 1;
                            (ci, (row[i - 1].1 + p - lv * piv[j - 1].1 % p) % p)
                        };
                        if v != 0 {
                            out.push((c, v));
                        }
                    }
                    row = out;
                }
                None => {
                    let inv = inv_mod(lv, p);
                    for (_, v) in row.iter_mut() {
                        *v = *v * inv % p;
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows[0].len());
        for r in rows {
            m.push_row(r.iter().copied().enumerate().collect());
        }
        m
    }

    #[test]
    fn small_ranks() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(Field::Rationals), 2);
        assert_eq!(m.rank(Field::Prime(7)), 2);
        let id = dense(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.rank(Field::Rationals), 2);
        assert_eq!(SparseMatrix::new(3).rank(Field::Rationals), 0);
    }

    #[test]
    fn characteristic_matters() {
        // det = 2
        let m = dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(Field::Rationals), 2);
        assert_eq!(m.rank(Field::Prime(2)), 1);
        assert_eq!(m.rank(Field::Prime(3)), 2);
    }

    #[test]
    fn boundary_of_triangle() {
        // edges -> vertices of a triangle: rank 2
        let m = dense(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(m.rank(Field::Rationals), 2);
    }
}
