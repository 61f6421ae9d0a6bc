use std::fmt;

use crate::ring::{Monomial, MonomialOrdering};

/// Standard monomials of an ideal (the monomials under its staircase).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
    /// False when the staircase is unbounded; `monomials` is then empty.
    pub finite: bool,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Vector-space dimension of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vdim {
    Finite(usize),
    Infinite,
}

impl Vdim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Vdim::Finite(n) => Some(n),
            Vdim::Infinite => None,
        }
    }
}

impl fmt::Display for Vdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vdim::Finite(n) => write!(f, "{n}"),
            Vdim::Infinite => f.write_str("infinite"),
        }
    }
}

/// Per-variable exponent bound from pure powers among the leading monomials;
/// `None` when some variable has no pure power (unbounded staircase).
fn bounds(leading: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    let mut b = vec![u32::MAX; nvars];
    for m in leading {
        if let Some(i) = m.pure_power_variable() {
            b[i] = b[i].min(m.exponent(i));
        }
    }
    if b.contains(&u32::MAX) {
        None
    } else {
        Some(b)
    }
}

fn walk(
    leading: &[Monomial],
    bounds: &[u32],
    var: usize,
    current: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if var == bounds.len() {
        visit(current);
        return;
    }
    for e in 0..bounds[var] {
        current[var] = e;
        // divisibility is monotone, so a divisible prefix kills the branch
        let m = Monomial::from_exponents(current);
        if leading.iter().any(|l| l.divides(&m)) {
            break;
        }
        walk(leading, bounds, var + 1, current, visit);
    }
    current[var] = 0;
}

/// Standard monomials for the given leading monomials, sorted so that `1`
/// comes first (decreasing under a local ordering, increasing under a
/// global one).
pub(crate) fn staircase(leading: &[Monomial], nvars: usize, ord: &MonomialOrdering) -> QuotientBasis {
    if leading.iter().any(|m| m.is_one()) {
        return QuotientBasis { monomials: Vec::new(), finite: true };
    }
    let Some(b) = bounds(leading, nvars) else {
        return QuotientBasis { monomials: Vec::new(), finite: false };
    };
    let mut out = Vec::new();
    let mut current = vec![0; nvars];
    walk(leading, &b, 0, &mut current, &mut |e| out.push(Monomial::from_exponents(e)));
    if ord.is_global() {
        out.sort_by(|a, c| ord.cmp(a, c));
    } else {
        out.sort_by(|a, c| ord.cmp(c, a));
    }
    QuotientBasis { monomials: out, finite: true }
}

pub(crate) fn count_staircase(leading: &[Monomial], nvars: usize) -> Vdim {
    if leading.iter().any(|m| m.is_one()) {
        return Vdim::Finite(0);
    }
    let Some(b) = bounds(leading, nvars) else {
        return Vdim::Infinite;
    };
    let mut n = 0usize;
    let mut current = vec![0; nvars];
    walk(leading, &b, 0, &mut current, &mut |_| n += 1);
    Vdim::Finite(n)
}

/// All monomials of total degree `d`.
pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            rec(var + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(0, d, &mut vec![0; nvars], &mut out);
    }
    out
}

/// Largest degree of a standard monomial; `None` for an unbounded staircase
/// or the unit ideal.
pub(crate) fn top_degree(leading: &[Monomial], nvars: usize) -> Option<u32> {
    if leading.iter().any(|m| m.is_one()) {
        return None;
    }
    let b = bounds(leading, nvars)?;
    let mut top = 0;
    let mut current = vec![0; nvars];
    walk(leading, &b, 0, &mut current, &mut |e| top = top.max(e.iter().sum()));
    Some(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn staircase_of_monomial_ideals() {
        let ord = MonomialOrdering::NegDegRevLex;
        let q = staircase(&[m(&[2, 0]), m(&[0, 2])], 2, &ord);
        assert_eq!(q.monomials, vec![m(&[0, 0]), m(&[1, 0]), m(&[0, 1]), m(&[1, 1])]);
        assert_eq!(count_staircase(&[m(&[2, 0]), m(&[0, 3])], 2), Vdim::Finite(6));
        assert_eq!(count_staircase(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])], 2), Vdim::Finite(3));
        assert_eq!(count_staircase(&[m(&[1, 1])], 2), Vdim::Infinite);
        assert_eq!(count_staircase(&[m(&[0, 0])], 2), Vdim::Finite(0));
        assert!(!staircase(&[m(&[2, 0])], 2, &ord).finite);
        assert_eq!(top_degree(&[m(&[2, 0]), m(&[0, 3])], 2), Some(3));
        assert_eq!(top_degree(&[m(&[1, 1])], 2), None);
    }
}
