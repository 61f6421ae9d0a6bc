use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{compute_standard_basis, standard_basis_modulo_power};
use super::kbase::{count_staircase, staircase, QuotientBasis, Vdim};
use super::reduce::{normal_form, truncated_normal_form, Reducers};
use crate::error::{Error, Result};
use crate::ring::{same_context, Monomial, Polynomial, RingContext};

/// An ideal given by generators, with a lazily computed standard basis.
///
/// Under a local ordering the ideal is understood in the localization at the
/// origin; under a mixed block ordering, in the localization at the units of
/// the local block.
#[derive(Clone)]
pub struct Ideal {
    ctx: Arc<RingContext>,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ctx: &Arc<RingContext>, generators: Vec<Polynomial>) -> Result<Ideal> {
        if generators.iter().any(|g| !same_context(g.context(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal { ctx: ctx.clone(), generators, basis: OnceLock::new() })
    }

    pub fn zero(ctx: &Arc<RingContext>) -> Ideal {
        Ideal { ctx: ctx.clone(), generators: Vec::new(), basis: OnceLock::new() }
    }

    pub fn unit(ctx: &Arc<RingContext>) -> Ideal {
        Ideal { ctx: ctx.clone(), generators: vec![Polynomial::one(ctx)], basis: OnceLock::new() }
    }

    /// `⟨generators⟩ + m^(n+1)` under a local degree ordering, with its
    /// standard basis computed by truncated reduction.
    pub fn modulo_power(ctx: &Arc<RingContext>, generators: Vec<Polynomial>, n: u32) -> Result<Ideal> {
        if generators.iter().any(|g| !same_context(g.context(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        if !ctx.ordering().is_local_degree() {
            return Err(Error::Unsupported("truncation modulo a power of the maximal ideal needs a local degree ordering".into()));
        }
        Ok(Ideal::from_standard_basis(ctx, standard_basis_modulo_power(ctx, &generators, n)))
    }

    /// Build directly from a known standard basis.
    pub(crate) fn from_standard_basis(ctx: &Arc<RingContext>, basis: Vec<Polynomial>) -> Ideal {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ctx: ctx.clone(), generators: basis, basis: cell }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The cached standard basis, computed on first use.
    pub fn standard_basis(&self) -> &[Polynomial] {
        self.basis.get_or_init(|| {
            let basis = compute_standard_basis(&self.ctx, &self.generators);
            #[cfg(debug_assertions)]
            {
                let r = Reducers::new(&basis);
                for g in &self.generators {
                    debug_assert!(normal_form(g, &r).is_zero(), "generator not in its standard basis ideal");
                }
            }
            basis
        })
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.standard_basis().is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.standard_basis().iter().any(|p| p.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.standard_basis().iter().map(|p| p.leading_monomial().unwrap().clone()).collect()
    }

    /// Normal form of `p`: zero iff `p` lies in the ideal. For global
    /// orderings this is the fully reduced remainder; otherwise Mora's weak
    /// normal form.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_context(p.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(normal_form(p, &Reducers::new(self.standard_basis())))
    }

    /// Unique linear normal form modulo `I + m^(max_degree+1)`; requires a
    /// local degree ordering.
    pub fn truncated_normal_form(&self, p: &Polynomial, max_degree: u32) -> Result<Polynomial> {
        if !same_context(p.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if !self.ctx.ordering().is_local_degree() {
            return Err(Error::Unsupported("truncated normal form needs a local degree ordering".into()));
        }
        Ok(truncated_normal_form(p, &Reducers::new(self.standard_basis()), max_degree))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_context(other.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let r = Reducers::new(self.standard_basis());
        Ok(other.generators.iter().all(|g| normal_form(g, &r).is_zero()))
    }

    pub fn kbase(&self) -> QuotientBasis {
        staircase(&self.leading_monomials(), self.ctx.nvars(), self.ctx.ordering())
    }

    pub fn vdim(&self) -> Vdim {
        count_staircase(&self.leading_monomials(), self.ctx.nvars())
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial_list;

    fn ideal(ctx: &Arc<RingContext>, gens: &str) -> Ideal {
        Ideal::new(ctx, parse_polynomial_list(ctx, gens).unwrap()).unwrap()
    }

    #[test]
    fn local_unit_multiples() {
        let ctx = RingContext::local(["x"]).unwrap();
        let i = ideal(&ctx, "x - x^2");
        assert_eq!(i.standard_basis().len(), 1);
        assert_eq!(i.standard_basis()[0].leading_monomial().unwrap().exponents(), &[1]);
        assert!(i.contains(&Polynomial::variable(&ctx, 0)).unwrap());
        // 1 - x is a unit locally but x - x^2 is not
        let g = RingContext::global(["x"]).unwrap();
        let j = ideal(&g, "x - x^2");
        assert!(!j.contains(&Polynomial::variable(&g, 0)).unwrap());
    }

    #[test]
    fn monomial_and_principal_bases() {
        let ctx = RingContext::local(["x", "y"]).unwrap();
        assert_eq!(ideal(&ctx, "x^2, y^2").standard_basis().len(), 2);
        let c3 = RingContext::local(["x", "y", "z"]).unwrap();
        assert_eq!(ideal(&c3, "z - x^3*y").standard_basis().len(), 1);
        let u = ideal(&ctx, "1 + x, x*y");
        assert!(u.is_unit_ideal());
        assert_eq!(u.vdim(), Vdim::Finite(0));
        assert!(u.kbase().is_empty());
    }

    #[test]
    fn kbase_and_vdim() {
        let ctx = RingContext::local(["x", "y"]).unwrap();
        let q = ideal(&ctx, "x, y^2").kbase();
        let names: Vec<String> =
            q.monomials.iter().map(|m| Polynomial::term(&ctx, m.clone(), crate::ring::integer(1)).to_string()).collect();
        assert_eq!(names, ["1", "y"]);
        assert_eq!(ideal(&ctx, "x, y").vdim(), Vdim::Finite(1));
        assert_eq!(ideal(&ctx, "x^2, x*y, y^2").vdim(), Vdim::Finite(3));
        assert_eq!(ideal(&ctx, "x^2, y^3").vdim(), Vdim::Finite(6));
        assert_eq!(ideal(&ctx, "x*y").vdim(), Vdim::Infinite);
        // tangent cone differs from the ideal: <x^2 + y^3, y^2 + x^3>
        let i = ideal(&ctx, "x^2 + y^3, y^2 + x^3");
        assert_eq!(i.vdim(), Vdim::Finite(4));
    }

    #[test]
    fn normal_form_of_unit_ideal_vanishes() {
        let ctx = RingContext::local(["x", "y"]).unwrap();
        let i = Ideal::unit(&ctx);
        let p = parse_polynomial_list(&ctx, "3*x*y + 7").unwrap().pop().unwrap();
        assert!(i.normal_form(&p).unwrap().is_zero());
    }
}
