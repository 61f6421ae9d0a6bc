//! Normal forms: full reduction for global orderings, Mora's weak normal
//! form for local and mixed orderings, and a degree-truncated reduced normal
//! form for local degree orderings.

use num_traits::Zero;

use crate::ring::{Monomial, Polynomial, Rational};

/// Reducer set with cached leading monomials and ecarts.
pub(crate) struct Reducers<'a> {
    polys: &'a [Polynomial],
    lms: Vec<Monomial>,
    ecarts: Vec<u32>,
}

impl<'a> Reducers<'a> {
    pub(crate) fn new(polys: &'a [Polynomial]) -> Self {
        debug_assert!(polys.iter().all(|p| !p.is_zero()));
        let lms = polys.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
        let ecarts = polys.iter().map(|p| p.ecart().unwrap()).collect();
        Reducers { polys, lms, ecarts }
    }

    fn first_divisor(&self, m: &Monomial) -> Option<usize> {
        self.lms.iter().position(|lm| lm.divides(m))
    }
}

/// `h - (LT(h) / LT(g)) * g`, cancelling the leading term of `h`.
fn reduce_leading(h: &mut Polynomial, g: &Polynomial, lm_g: &Monomial) {
    let (lm_h, lc_h) = h.leading_term().expect("non-zero");
    let q = lm_g.quotient_of(lm_h).expect("divisible");
    let c = -(lc_h / g.leading_coefficient().unwrap());
    h.add_scaled(&c, &q, g);
}

/// Fully reduced normal form w.r.t. a global ordering.
pub(crate) fn global_normal_form(p: &Polynomial, reducers: &Reducers<'_>) -> Polynomial {
    let mut h = p.clone();
    let mut rest: Vec<(Monomial, Rational)> = Vec::new();
    while let Some(lm) = h.leading_monomial() {
        match reducers.first_divisor(lm) {
            Some(i) => reduce_leading(&mut h, &reducers.polys[i], &reducers.lms[i]),
            None => rest.push(h.pop_leading().unwrap()),
        }
    }
    Polynomial::from_sorted_terms(p.context(), rest)
}

/// Mora's weak normal form: the result is zero iff `p` lies in the ideal the
/// (standard basis) reducers generate in the localization; otherwise its
/// leading monomial is not divisible by any reducer's leading monomial.
pub(crate) fn mora_normal_form(p: &Polynomial, reducers: &Reducers<'_>) -> Polynomial {
    let mut h = p.clone();
    let mut extra: Vec<(Polynomial, Monomial, u32)> = Vec::new();
    loop {
        let Some(lm) = h.leading_monomial() else {
            return h;
        };
        // ecart-minimal reducer, stored basis first
        let mut best: Option<(u32, bool, usize)> = None;
        for (i, g) in reducers.lms.iter().enumerate() {
            if g.divides(lm) && best.is_none_or(|(e, _, _)| reducers.ecarts[i] < e) {
                best = Some((reducers.ecarts[i], false, i));
            }
        }
        for (j, (_, g, e)) in extra.iter().enumerate() {
            if g.divides(lm) && best.is_none_or(|(b, _, _)| *e < b) {
                best = Some((*e, true, j));
            }
        }
        let Some((e, is_extra, idx)) = best else {
            return h;
        };
        let eh = h.ecart().unwrap();
        if e > eh {
            let lm_h = lm.clone();
            extra.push((h.clone(), lm_h, eh));
        }
        if is_extra {
            let (g, lm_g, _) = &extra[idx];
            let (g, lm_g) = (g.clone(), lm_g.clone());
            reduce_leading(&mut h, &g, &lm_g);
        } else {
            reduce_leading(&mut h, &reducers.polys[idx], &reducers.lms[idx]);
        }
    }
}

/// Reduced normal form modulo `I + m^(max_degree+1)` where the reducers are a
/// standard basis of `I` under a local degree ordering.
///
/// The result only contains standard monomials of degree `<= max_degree`; it
/// is unique and linear in `p`.
pub(crate) fn truncated_normal_form(
    p: &Polynomial,
    reducers: &Reducers<'_>,
    max_degree: u32,
) -> Polynomial {
    let mut h = p.truncate(max_degree);
    let mut rest: Vec<(Monomial, Rational)> = Vec::new();
    while let Some(lm) = h.leading_monomial() {
        match reducers.first_divisor(lm) {
            Some(i) => {
                let g = &reducers.polys[i];
                let (lm_h, lc_h) = h.leading_term().unwrap();
                let q = reducers.lms[i].quotient_of(lm_h).unwrap();
                let c = -(lc_h / g.leading_coefficient().unwrap());
                debug_assert!(!c.is_zero());
                h.add_scaled_truncated(&c, &q, g, max_degree);
            }
            None => rest.push(h.pop_leading().unwrap()),
        }
    }
    Polynomial::from_sorted_terms(p.context(), rest)
}

/// Normal form dispatching on the ordering of `p`'s ring.
pub(crate) fn normal_form(p: &Polynomial, reducers: &Reducers<'_>) -> Polynomial {
    if p.context().ordering().is_global() {
        global_normal_form(p, reducers)
    } else {
        mora_normal_form(p, reducers)
    }
}
