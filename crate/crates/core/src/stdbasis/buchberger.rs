//! Standard basis computation (Buchberger's algorithm with Mora's normal
//! form for non-global orderings) with Gebauer–Möller pair management.
//!
//! Under a local degree ordering, once the leading monomials contain a pure
//! power of every variable, `m^D ⊆ I` for the corner degree `D` (one above the
//! top of the staircase). From then on all polynomials are truncated at `D`
//! and reduced with plain truncated division.

use std::cmp::Ordering;
use std::sync::Arc;

use super::kbase::top_degree;
use super::reduce::{global_normal_form, normal_form, truncated_normal_form, Reducers};
use crate::ring::{Monomial, Polynomial, RingContext};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: u32,
}

struct Builder {
    ctx: Arc<RingContext>,
    global: bool,
    local_degree: bool,
    corner: Option<u32>,
    basis: Vec<Polynomial>,
    lms: Vec<Monomial>,
    ecarts: Vec<u32>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn pair_key(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        // normal strategy on the homogenized degree: lcm degree plus the
        // larger ecart of the two generators
        lcm.degree() + self.ecarts[i].max(self.ecarts[j])
    }

    fn select(&mut self) -> Option<Pair> {
        let ord = self.ctx.ordering();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.key.cmp(&b.key) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match ord.cmp(&a.lcm, &b.lcm) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => (a.i, a.j) < (b.i, b.j),
                },
            };
            if better {
                best = k;
            }
        }
        if self.pairs.is_empty() {
            None
        } else {
            Some(self.pairs.swap_remove(best))
        }
    }

    fn insert(&mut self, h: Polynomial) {
        let h = match self.corner {
            Some(d) => h.truncate(d).monic(),
            None => h.monic(),
        };
        if h.is_zero() {
            // inside m^(D+1)
            return;
        }
        let t = self.basis.len();
        let lm_h = h.leading_monomial().unwrap().clone();
        self.ecarts.push(h.ecart().unwrap());
        self.lms.push(lm_h.clone());
        self.basis.push(h);

        // Criterion B on the old pairs
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lms[p.i].lcm(&lm_h) != p.lcm
                && lms[p.j].lcm(&lm_h) != p.lcm)
        });

        let candidates: Vec<(usize, Monomial, bool)> = (0..t)
            .map(|i| (i, self.lms[i].lcm(&lm_h), self.lms[i].is_coprime(&lm_h)))
            .collect();
        // Criterion M: drop pairs whose lcm is a proper multiple of another new lcm
        let kept: Vec<&(usize, Monomial, bool)> = candidates
            .iter()
            .filter(|(_, l, _)| !candidates.iter().any(|(_, o, _)| o != l && o.divides(l)))
            .collect();
        // Criterion F: one pair per lcm; the product criterion (global only)
        // removes the whole class
        let mut seen: Vec<&Monomial> = Vec::new();
        for (i, l, _) in &kept {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            if self.global && kept.iter().any(|(_, o, coprime)| o == l && *coprime) {
                continue;
            }
            let key = self.pair_key(*i, t, l);
            self.pairs.push(Pair { i: *i, j: t, lcm: l.clone(), key });
        }
        self.update_corner();
    }

    fn update_corner(&mut self) {
        if !self.local_degree {
            return;
        }
        // the staircase walk is costly; refresh on pure powers and now and then
        let lm = self.lms.last().expect("just inserted");
        if lm.pure_power_variable().is_none() && !self.lms.len().is_multiple_of(16) {
            return;
        }
        let Some(top) = top_degree(&self.lms, self.ctx.nvars()) else { return };
        let d = top + 1;
        if self.corner.is_some_and(|c| c <= d) {
            return;
        }
        self.corner = Some(d);
        for (k, p) in self.basis.iter_mut().enumerate() {
            let lead = self.lms[k].degree();
            *p = p.truncate(d.max(lead));
            self.ecarts[k] = p.ecart().unwrap();
        }
        // s-polynomials of these pairs vanish modulo m^(d+1) after reduction
        self.pairs.retain(|p| p.lcm.degree() < d);
    }

    fn reduce(&self, s: &Polynomial) -> Polynomial {
        let reducers = Reducers::new(&self.basis);
        match self.corner {
            Some(d) => truncated_normal_form(s, &reducers, d),
            None => normal_form(s, &reducers),
        }
    }

    fn spoly(&self, p: &Pair) -> Polynomial {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let mf = self.lms[p.i].quotient_of(&p.lcm).unwrap();
        let mg = self.lms[p.j].quotient_of(&p.lcm).unwrap();
        let one = crate::ring::integer(1);
        let mut s = f.mul_term(&one, &mf);
        s.add_scaled(&-one, &mg, g);
        s
    }
}

/// Remove elements whose leading monomial is divisible by another element's.
pub(crate) fn minimize(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let lms: Vec<Monomial> = basis.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
    basis
        .into_iter()
        .enumerate()
        .filter(|(i, _)| {
            !lms.iter()
                .enumerate()
                .any(|(j, m)| j != *i && m.divides(&lms[*i]) && (m != &lms[*i] || j < *i))
        })
        .map(|(_, p)| p)
        .collect()
}

/// A standard basis of the ideal generated by `generators` (all in `ctx`).
///
/// For global orderings the result is the reduced Gröbner basis; otherwise it
/// is a minimal standard basis with monic elements.
pub fn compute_standard_basis(ctx: &Arc<RingContext>, generators: &[Polynomial]) -> Vec<Polynomial> {
    run(ctx, generators, None)
}

/// A minimal standard basis of `⟨generators⟩ + m^(n+1)` under a local degree
/// ordering.
pub(crate) fn standard_basis_modulo_power(ctx: &Arc<RingContext>, generators: &[Polynomial], n: u32) -> Vec<Polynomial> {
    assert!(ctx.ordering().is_local_degree(), "truncation needs a local degree ordering");
    let mut basis: Vec<Polynomial> = run(ctx, generators, Some(n + 1))
        .into_iter()
        .filter(|p| p.leading_monomial().is_some_and(|m| m.degree() <= n))
        .collect();
    let lms: Vec<Monomial> = basis.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
    for m in super::kbase::monomials_of_degree(ctx.nvars(), n + 1) {
        if !lms.iter().any(|l| l.divides(&m)) {
            basis.push(Polynomial::term(ctx, m, crate::ring::integer(1)));
        }
    }
    let ord = ctx.ordering();
    basis.sort_by(|a, b| ord.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    basis
}

fn run(ctx: &Arc<RingContext>, generators: &[Polynomial], corner: Option<u32>) -> Vec<Polynomial> {
    let global = ctx.ordering().is_global();
    let mut b = Builder {
        ctx: ctx.clone(),
        global,
        local_degree: ctx.ordering().is_local_degree(),
        corner,
        basis: Vec::new(),
        lms: Vec::new(),
        ecarts: Vec::new(),
        pairs: Vec::new(),
    };
    let unit = |p: &Polynomial| p.leading_monomial().is_some_and(|m| m.is_one());
    let mut gens: Vec<Polynomial> = generators.iter().filter(|p| !p.is_zero()).cloned().collect();
    gens.sort_by_key(|p| (p.len(), p.degree()));
    for g in gens {
        let h = if global && !b.basis.is_empty() {
            global_normal_form(&g, &Reducers::new(&b.basis))
        } else if b.corner.is_some() {
            b.reduce(&g)
        } else {
            g
        };
        if h.is_zero() {
            continue;
        }
        if unit(&h) {
            return vec![Polynomial::one(ctx)];
        }
        b.insert(h);
    }
    while let Some(pair) = b.select() {
        if b.corner.is_some_and(|d| pair.lcm.degree() >= d) {
            continue;
        }
        let s = b.spoly(&pair);
        if s.is_zero() {
            continue;
        }
        let h = b.reduce(&s);
        if h.is_zero() {
            continue;
        }
        if unit(&h) {
            return vec![Polynomial::one(ctx)];
        }
        b.insert(h);
    }
    let mut basis = minimize(b.basis);
    if global {
        // tail reduction into the reduced Gröbner basis
        for k in 0..basis.len() {
            let others: Vec<Polynomial> =
                basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
            let p = &basis[k];
            let (lm, lc) = p.leading_term().unwrap();
            let head = Polynomial::term(ctx, lm.clone(), lc.clone());
            let tail = p - &head;
            let tail = if others.is_empty() { tail } else { global_normal_form(&tail, &Reducers::new(&others)) };
            basis[k] = (&head + &tail).monic();
        }
    }
    let ord = ctx.ordering();
    basis.sort_by(|a, b| ord.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    basis
}
