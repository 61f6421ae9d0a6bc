use std::sync::Arc;

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::ring::{Polynomial, Rational, RingContext};
use crate::stdbasis::Ideal;

/// Largest square size handled by cofactor expansion when a division-free
/// alternative exists.
const COFACTOR_LIMIT: usize = 12;

/// Memoized cofactor expansion over `(row set, column set)` bit masks.
pub(crate) struct MinorTable<'a> {
    entries: &'a [Vec<Polynomial>],
    ctx: Arc<RingContext>,
    memo: FxHashMap<(u64, u64), Polynomial>,
}

impl<'a> MinorTable<'a> {
    pub(crate) fn new(ctx: &Arc<RingContext>, entries: &'a [Vec<Polynomial>]) -> Self {
        assert!(entries.len() <= 64 && entries.iter().all(|r| r.len() <= 64), "matrix too large");
        MinorTable { entries, ctx: ctx.clone(), memo: FxHashMap::default() }
    }

    pub(crate) fn det(&mut self, rows: u64, cols: u64) -> Polynomial {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return Polynomial::one(&self.ctx);
        }
        let r = rows.trailing_zeros() as usize;
        if rows.count_ones() == 1 {
            return self.entries[r][cols.trailing_zeros() as usize].clone();
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let rest = rows & !(1u64 << r);
        let mut acc = Polynomial::zero(&self.ctx);
        let mut sign_negative = false;
        let mut c_mask = cols;
        while c_mask != 0 {
            let c = c_mask.trailing_zeros() as usize;
            c_mask &= c_mask - 1;
            let a = &self.entries[r][c];
            if !a.is_zero() {
                let sub = self.det(rest, cols & !(1u64 << c));
                if !sub.is_zero() {
                    let term = a * &sub;
                    acc = if sign_negative { &acc - &term } else { &acc + &term };
                }
            }
            sign_negative = !sign_negative;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets(n: usize, r: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, cur | (1u64 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, 0, &mut out);
    out
}

/// Determinant of a square matrix.
pub fn determinant(ctx: &Arc<RingContext>, matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidProblem("determinant of a non-square matrix".into()));
    }
    if n > COFACTOR_LIMIT {
        return Ok(match bareiss_adjugate(ctx, matrix) {
            Some((det, _)) => det,
            None => Polynomial::zero(ctx),
        });
    }
    let mask = (1u64 << n) - 1;
    Ok(MinorTable::new(ctx, matrix).det(mask, mask))
}

/// Coefficients `c_0 = 1, c_1, …, c_n` of `det(t·I - M)` by Berkowitz's
/// division-free recursion over leading principal submatrices.
fn characteristic_coefficients(ctx: &Arc<RingContext>, m: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let mut coeffs = vec![Polynomial::one(ctx)];
    for k in 0..m.len() {
        // column of the Toeplitz factor: 1, -a, -R C, -R A C, …, -R A^(k-1) C
        let mut col = vec![Polynomial::one(ctx), -&m[k][k]];
        let mut v: Vec<Polynomial> = (0..k).map(|i| m[i][k].clone()).collect();
        for j in 0..k {
            let mut dot = Polynomial::zero(ctx);
            for (i, vi) in v.iter().enumerate() {
                dot = &dot + &(&m[k][i] * vi);
            }
            col.push(-dot);
            if j + 1 < k {
                v = (0..k)
                    .map(|i| {
                        let mut acc = Polynomial::zero(ctx);
                        for (l, vl) in v.iter().enumerate() {
                            acc = &acc + &(&m[i][l] * vl);
                        }
                        acc
                    })
                    .collect();
            }
        }
        coeffs = (0..k + 2)
            .map(|i| {
                let mut acc = Polynomial::zero(ctx);
                for (j, c) in coeffs.iter().enumerate().take(i + 1) {
                    acc = &acc + &(&col[i - j] * c);
                }
                acc
            })
            .collect();
    }
    coeffs
}

/// Adjugate `(-1)^(n+1) (M^(n-1) + c_1 M^(n-2) + … + c_(n-1) I)`.
fn berkowitz_adjugate(ctx: &Arc<RingContext>, m: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = m.len();
    let c = characteristic_coefficients(ctx, m);
    let identity = |x: &Polynomial| -> Vec<Vec<Polynomial>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { x.clone() } else { Polynomial::zero(ctx) }).collect()).collect()
    };
    let mut b = identity(&c[0]);
    for ck in c.iter().take(n).skip(1) {
        let mut next = identity(ck);
        for (i, row) in m.iter().enumerate() {
            for (l, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] = &next[i][j] + &(a * &b[l][j]);
                }
            }
        }
        b = next;
    }
    if n.is_multiple_of(2) {
        for row in &mut b {
            for e in row.iter_mut() {
                *e = -&*e;
            }
        }
    }
    b
}

/// Fraction-free Gauss–Jordan elimination of `[M | I]`. Every intermediate
/// entry is a minor of the augmented matrix, so each division is exact; the
/// right block ends as `det(M) M^(-1)`. `None` when `M` is singular.
fn bareiss_adjugate(ctx: &Arc<RingContext>, m: &[Vec<Polynomial>]) -> Option<(Polynomial, Vec<Vec<Polynomial>>)> {
    let n = m.len();
    let mut a: Vec<Vec<Polynomial>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Polynomial::one(ctx) } else { Polynomial::zero(ctx) }));
            r
        })
        .collect();
    let mut prev = Polynomial::one(ctx);
    let mut negative = false;
    for k in 0..n {
        let p = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| (a[i][k].len(), a[i][k].degree()))?;
        if p != k {
            a.swap(p, k);
            negative = !negative;
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in (k + 1)..2 * n {
                let mut v = &pivot_row[k] * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&factor * &pivot_row[j]);
                }
                row[j] = if v.is_zero() || prev.is_one() {
                    v
                } else {
                    v.divide_exact(&prev).expect("same context").expect("exact division")
                };
            }
            row[k] = Polynomial::zero(ctx);
        }
        prev = pivot_row[k].clone();
    }
    // the row swaps multiply the elimination result by their sign
    let adj = a
        .into_iter()
        .map(|row| row.into_iter().skip(n).map(|e| if negative { -e } else { e }).collect())
        .collect();
    let det = if negative { -prev } else { prev };
    Some((det, adj))
}

fn push_unique(gens: &mut Vec<Polynomial>, p: &Polynomial) {
    if !p.is_zero() {
        let p = p.monic();
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
}

/// `⟨gens⟩`, built modulo `m^(N+1)` for growing `N` under a local degree
/// ordering. Once the truncated ideal `J` has its highest corner at degree
/// `D <= N`, `m^D ⊆ I + m^(N+1)` forces `m^D ⊆ I` and `J = I`.
fn capped_ideal(ctx: &Arc<RingContext>, gens: Vec<Polynomial>, first_cap: u32) -> Result<Ideal> {
    if ctx.ordering().is_local_degree() && !gens.is_empty() {
        let top = gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        // I ⊆ m^order puts the corner above the smallest order
        let order = gens.iter().filter_map(Polynomial::order).min().unwrap_or(0);
        let mut cap = first_cap.max(2 * order).max(1);
        while cap < 2 * top {
            let mut truncated: Vec<Polynomial> = Vec::new();
            for g in &gens {
                push_unique(&mut truncated, &g.truncate(cap));
            }
            let ideal = Ideal::modulo_power(ctx, truncated, cap)?;
            let kbase = ideal.kbase();
            if kbase.finite && kbase.monomials.iter().all(|mono| mono.degree() < cap) {
                return Ok(ideal);
            }
            cap += cap.div_ceil(2);
        }
    }
    Ideal::new(ctx, gens)
}

/// Ideal of the `(n-1)`-minors of a square matrix, read off the adjugate.
pub(crate) fn adjugate_minors(ctx: &Arc<RingContext>, m: &[Vec<Polynomial>]) -> Result<Ideal> {
    adjugate_minors_from(ctx, m, 16)
}

fn adjugate_minors_from(ctx: &Arc<RingContext>, m: &[Vec<Polynomial>], first_cap: u32) -> Result<Ideal> {
    let adj = match bareiss_adjugate(ctx, m) {
        Some((_, adj)) => adj,
        None => berkowitz_adjugate(ctx, m),
    };
    let mut gens: Vec<Polynomial> = Vec::new();
    for e in adj.iter().flatten() {
        push_unique(&mut gens, e);
    }
    capped_ideal(ctx, gens, first_cap)
}

/// Ideal of all `r × r` minors of a matrix over `ctx`.
pub fn minors(ctx: &Arc<RingContext>, matrix: &[Vec<Polynomial>], r: usize) -> Result<Ideal> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|row| row.len() != cols) {
        return Err(Error::InvalidProblem("ragged matrix".into()));
    }
    if r == 0 || r > rows.min(cols) {
        return Err(Error::OutOfRange(format!("minor size {r} for a {rows}x{cols} matrix")));
    }
    if rows == cols && rows > COFACTOR_LIMIT {
        if r == rows {
            return Ideal::new(ctx, vec![determinant(ctx, matrix)?]);
        }
        if r + 1 == rows {
            return adjugate_minors(ctx, matrix);
        }
    }
    let mut table = MinorTable::new(ctx, matrix);
    let mut gens: Vec<Polynomial> = Vec::new();
    let col_sets = subsets(cols, r);
    for rs in subsets(rows, r) {
        for &cs in &col_sets {
            let d = table.det(rs, cs);
            if !d.is_zero() {
                let d = d.monic();
                if !gens.contains(&d) {
                    gens.push(d);
                }
            }
        }
    }
    Ideal::new(ctx, gens)
}

/// Eliminate entries that are units of the local ring (non-zero constant
/// term) by row and column operations. The module presented, hence every
/// Fitting ideal, is unchanged; each step removes one row and one column.
pub fn prune_units(matrix: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    loop {
        let mut pivot: Option<(usize, usize)> = None;
        // prefer constant pivots, then any unit
        'search: for want_constant in [true, false] {
            for (i, row) in m.iter().enumerate() {
                for (j, a) in row.iter().enumerate() {
                    if !a.constant_coefficient().is_zero() && (!want_constant || a.is_constant()) {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
        }
        let Some((r, c)) = pivot else { return m };
        let p = m[r][c].clone();
        let inv: Option<Rational> = p.is_constant().then(|| p.constant_coefficient().recip());
        let mut next = Vec::with_capacity(m.len() - 1);
        for (i, row) in m.iter().enumerate() {
            if i == r {
                continue;
            }
            let mut new_row = Vec::with_capacity(row.len() - 1);
            for (j, a) in row.iter().enumerate() {
                if j == c {
                    continue;
                }
                let cross = &row[c] * &m[r][j];
                let v = match &inv {
                    Some(inv) => a - &cross.scale(inv),
                    None => &(&p * a) - &cross,
                };
                new_row.push(v);
            }
            next.push(new_row);
        }
        m = next;
    }
}
