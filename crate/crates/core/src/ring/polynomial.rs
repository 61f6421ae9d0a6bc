use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::context::same_context;
use super::{Monomial, MonomialOrdering, RingContext};
use crate::error::{Error, Result};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in decreasing order under the context ordering and
/// never carry a zero coefficient.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<RingContext>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn merge_terms(
    ord: &MonomialOrdering,
    a: &[(Monomial, Rational)],
    b: impl IntoIterator<Item = (Monomial, Rational)>,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut ai = a.iter().peekable();
    let mut bi = b.into_iter().peekable();
    loop {
        match (ai.peek(), bi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ai.next().unwrap().clone()),
            (None, Some(_)) => out.push(bi.next().unwrap()),
            (Some((ma, _)), Some((mb, _))) => match ord.cmp(ma, mb) {
                Ordering::Greater => out.push(ai.next().unwrap().clone()),
                Ordering::Less => out.push(bi.next().unwrap()),
                Ordering::Equal => {
                    let (m, ca) = ai.next().unwrap();
                    let (_, cb) = bi.next().unwrap();
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                }
            },
        }
    }
    out
}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Arc<RingContext>, c: Rational) -> Self {
        let mut p = Polynomial::zero(ctx);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ctx.nvars()), c));
        }
        p
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Polynomial::constant(ctx, Rational::one())
    }

    pub fn from_int(ctx: &Arc<RingContext>, n: i64) -> Self {
        Polynomial::constant(ctx, integer(n))
    }

    /// The variable with the given index.
    pub fn variable(ctx: &Arc<RingContext>, index: usize) -> Self {
        Polynomial::term(ctx, Monomial::variable(ctx.nvars(), index, 1), Rational::one())
    }

    /// A single term `c * m`. Panics if `m` has the wrong length.
    pub fn term(ctx: &Arc<RingContext>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ctx.nvars(), "monomial length does not match ring");
        let mut p = Polynomial::zero(ctx);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(
        ctx: &Arc<RingContext>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            if m.len() != ctx.nvars() {
                return Err(Error::LengthMismatch { expected: ctx.nvars(), found: m.len() });
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Ok(Polynomial::from_map(ctx, acc))
    }

    fn from_map(ctx: &Arc<RingContext>, acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ctx.ordering();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub(crate) fn from_sorted_terms(ctx: &Arc<RingContext>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ctx.ordering().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    /// Terms in decreasing order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Maximal term under the context ordering.
    pub fn leading_term(&self) -> Result<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c)).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree (maximum over terms); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// `deg(p) - deg(LM(p))`.
    pub fn ecart(&self) -> Result<u32> {
        let (lm, _) = self.leading_term()?;
        Ok(self.degree().unwrap() - lm.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_coefficient(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ctx.nvars()))
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let terms = merge_terms(self.ctx.ordering(), &self.terms, other.terms.iter().cloned());
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let terms = merge_terms(
            self.ctx.ordering(),
            &self.terms,
            other.terms.iter().map(|(m, c)| (m.clone(), -c)),
        );
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.mul_truncated_unchecked(other, None))
    }

    /// Product keeping only terms of total degree `<= max_degree`.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.mul_truncated_unchecked(other, Some(max_degree)))
    }

    fn mul_truncated_unchecked(&self, other: &Polynomial, max_degree: Option<u32>) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 && max_degree.is_none() {
            let (m, c) = &small.terms[0];
            return large.mul_term(c, m);
        }
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        acc.reserve(self.len() * other.len() / 2 + 1);
        for (ma, ca) in &small.terms {
            let da = ma.degree();
            for (mb, cb) in &large.terms {
                if let Some(limit) = max_degree {
                    if da + mb.degree() > limit {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ctx, acc)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// `self += c * m * other` (same context assumed).
    pub(crate) fn add_scaled(&mut self, c: &Rational, m: &Monomial, other: &Polynomial) {
        debug_assert!(same_context(&self.ctx, &other.ctx));
        let terms = merge_terms(
            self.ctx.ordering(),
            &self.terms,
            other.terms.iter().map(|(t, d)| (t.mul(m), d * c)),
        );
        self.terms = terms;
    }

    /// Like `add_scaled`, dropping terms above `max_degree`.
    pub(crate) fn add_scaled_truncated(
        &mut self,
        c: &Rational,
        m: &Monomial,
        other: &Polynomial,
        max_degree: u32,
    ) {
        let dm = m.degree();
        let terms = merge_terms(
            self.ctx.ordering(),
            &self.terms,
            other
                .terms
                .iter()
                .filter(|(t, _)| t.degree() + dm <= max_degree)
                .map(|(t, d)| (t.mul(m), d * c)),
        );
        self.terms = terms;
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), -d)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Drop every term of total degree `> max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= max_degree)
            .cloned()
            .collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    /// Partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.set_exponent(index, e - 1);
            terms.push((dm, c * integer(e as i64)));
        }
        // lowering one exponent can reorder terms under non-degree-compatible blocks
        let mut p = Polynomial { ctx: self.ctx.clone(), terms: Vec::new() };
        let ord = self.ctx.ordering();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        p.terms = terms;
        p
    }

    /// Move into `target`, sending variable `i` to variable `positions[i]`.
    pub fn embed(&self, target: &Arc<RingContext>, positions: &[usize]) -> Result<Polynomial> {
        if positions.len() != self.ctx.nvars() {
            return Err(Error::LengthMismatch { expected: self.ctx.nvars(), found: positions.len() });
        }
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &p) in positions.iter().enumerate() {
                e[p] += m.exponent(i);
            }
            terms.push((Monomial::from_exponents(&e), c.clone()));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ctx(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // any global ordering gives the same quotient
        let ord = MonomialOrdering::DegRevLex;
        let sort = |mut t: Vec<(Monomial, Rational)>| {
            t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
            t
        };
        let div = sort(divisor.terms.clone());
        let (lm, lc) = div[0].clone();
        let mut rem = sort(self.terms.clone());
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            let Some(q) = lm.quotient_of(&m) else {
                return Ok(None);
            };
            let qc = &c / &lc;
            rem = merge_terms(&ord, &rem, div.iter().map(|(t, d)| (t.mul(&q), -(d * &qc))));
            quotient.push((q, qc));
        }
        Polynomial::from_terms(&self.ctx, quotient).map(Some)
    }

    /// Evaluate the variables in `values` (index, value) keeping the rest symbolic.
    pub fn substitute_constants(&self, values: &[(usize, Rational)]) -> Polynomial {
        let mut terms = Vec::with_capacity(self.len());
        'terms: for (m, c) in &self.terms {
            let mut m = m.clone();
            let mut c = c.clone();
            for (i, v) in values {
                let e = m.exponent(*i);
                if e > 0 {
                    if v.is_zero() {
                        continue 'terms;
                    }
                    c *= num_traits::pow(v.clone(), e as usize);
                    m.set_exponent(*i, 0);
                }
            }
            terms.push((m, c));
        }
        Polynomial::from_terms(&self.ctx, terms).expect("same context")
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different ring contexts.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, ctx: &RingContext, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&ctx.variables()[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: decreasing terms, `p/q` coefficients, `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.ctx, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_xy() -> Arc<RingContext> {
        RingContext::global(["x", "y"]).unwrap()
    }

    #[test]
    fn trivial_arithmetic() {
        let ctx = ctx_xy();
        let x = Polynomial::variable(&ctx, 0);
        let one = Polynomial::one(&ctx);
        let p = &(&x + &one) + &x.scale(&integer(-1));
        assert_eq!(p, one);

        let x2 = RingContext::global(["x", "x'"]).unwrap();
        let a = Polynomial::variable(&x2, 0);
        let b = Polynomial::variable(&x2, 1);
        assert_eq!((&a - &b) * (&a + &b), &(&a * &a) - &(&b * &b));

        let p = x.scale(&rational(1, 2));
        let q = x.scale(&rational(2, 3));
        assert_eq!(&p * &q, (&x * &x).scale(&rational(1, 3)));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = Polynomial::variable(&ctx_xy(), 0);
        let b = Polynomial::variable(&RingContext::global(["x", "z"]).unwrap(), 0);
        assert_eq!(a.checked_add(&b), Err(Error::ContextMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn leading_term_and_ecart() {
        let local = RingContext::local(["x"]).unwrap();
        let x = Polynomial::variable(&local, 0);
        let p = &x - &(&x * &x);
        let (m, c) = p.leading_term().unwrap();
        assert_eq!(m.exponents(), &[1]);
        assert_eq!(c, &integer(1));
        assert_eq!(p.ecart().unwrap(), 1);

        let global = RingContext::global(["x"]).unwrap();
        let x = Polynomial::variable(&global, 0);
        let p = &x - &(&x * &x);
        let (m, c) = p.leading_term().unwrap();
        assert_eq!(m.exponents(), &[2]);
        assert_eq!(c, &integer(-1));

        let ctx = ctx_xy();
        let h = &Polynomial::variable(&ctx, 0).pow(3) + &Polynomial::variable(&ctx, 1).pow(3);
        assert_eq!(h.ecart().unwrap(), 0);
        assert_eq!(Polynomial::zero(&ctx).leading_term(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let ctx = RingContext::local(["x", "u"]).unwrap();
        let x = Polynomial::variable(&ctx, 0);
        let u = Polynomial::variable(&ctx, 1);
        let num = &x.pow(3) - &u.pow(3);
        let q = num.divide_exact(&(&x - &u)).unwrap().unwrap();
        assert_eq!(q, &(&x.pow(2) + &(&x * &u)) + &u.pow(2));
        assert_eq!(x.divide_exact(&(&x - &u)).unwrap(), None);
    }

    #[test]
    fn display_is_canonical() {
        let ctx = ctx_xy();
        let x = Polynomial::variable(&ctx, 0);
        let y = Polynomial::variable(&ctx, 1);
        let p = &(&x.pow(2) * &y).scale(&rational(3, 2)) - &(&x - &Polynomial::one(&ctx));
        assert_eq!(p.to_string(), "3/2*x^2*y - x + 1");
        assert_eq!(Polynomial::zero(&ctx).to_string(), "0");
        assert_eq!((-&y).to_string(), "-y");
    }
}
