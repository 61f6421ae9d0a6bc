use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::ring::{same_context, Monomial, MonomialOrdering, Polynomial, RingContext};

fn check(i: &Ideal, j: &Ideal) -> Result<()> {
    if same_context(i.context(), j.context()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

pub fn sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check(i, j)?;
    let gens = i.generators().iter().chain(j.generators()).cloned().collect();
    Ideal::new(i.context(), gens)
}

pub fn product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check(i, j)?;
    let (a, b) = (i.standard_basis(), j.standard_basis());
    let mut gens = Vec::with_capacity(a.len() * b.len());
    for f in a {
        for g in b {
            gens.push(f * g);
        }
    }
    Ideal::new(i.context(), gens)
}

pub fn power(i: &Ideal, k: u32) -> Ideal {
    let mut acc = Ideal::unit(i.context());
    for _ in 0..k {
        let next = product(&acc, i).expect("same context");
        acc = Ideal::from_standard_basis(i.context(), next.standard_basis().to_vec());
    }
    acc
}

/// Equality of ideals by mutual normal-form vanishing.
pub fn equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    check(i, j)?;
    Ok(i.contains_ideal(j)? && j.contains_ideal(i)?)
}

/// Ring with `count` fresh variables prepended in a global block, followed
/// by the variables of `ctx` under their original ordering.
fn extended(ctx: &Arc<RingContext>, count: usize) -> Arc<RingContext> {
    let mut names = Vec::with_capacity(ctx.nvars() + count);
    for k in 0..count {
        names.push(ctx.fresh_name(&format!("t{k}")));
    }
    names.extend(ctx.variables().iter().cloned());
    let ord = MonomialOrdering::Block(vec![
        (count, MonomialOrdering::DegRevLex),
        (ctx.nvars(), ctx.ordering().clone()),
    ]);
    RingContext::new(names, ord).expect("valid extended ring")
}

/// Drop the first `count` variables of a polynomial free of them.
fn project(p: &Polynomial, target: &Arc<RingContext>, count: usize) -> Polynomial {
    let terms: Vec<_> = p
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[count..]), c.clone()))
        .collect();
    Polynomial::from_terms(target, terms).expect("same context")
}

fn lift(p: &Polynomial, ext: &Arc<RingContext>, count: usize) -> Polynomial {
    let positions: Vec<usize> = (count..count + p.context().nvars()).collect();
    p.embed(ext, &positions).expect("valid embedding")
}

/// `I ∩ J` via elimination of `t` from `t·I + (1-t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check(i, j)?;
    let ctx = i.context();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(ctx));
    }
    if i.is_unit_ideal() {
        return Ok(j.clone());
    }
    if j.is_unit_ideal() {
        return Ok(i.clone());
    }
    let ext = extended(ctx, 1);
    let t = Polynomial::variable(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for f in i.standard_basis() {
        gens.push(&t * &lift(f, &ext, 1));
    }
    for g in j.standard_basis() {
        gens.push(&one_minus_t * &lift(g, &ext, 1));
    }
    let big = Ideal::new(&ext, gens)?;
    let kept: Vec<Polynomial> = big
        .standard_basis()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exponent(0) == 0))
        .map(|p| project(p, ctx, 1))
        .collect();
    Ideal::new(ctx, kept)
}

/// `I : J`, as the intersection of `I : g` over a standard basis of `J`.
pub fn quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check(i, j)?;
    let ctx = i.context();
    if j.is_zero_ideal() || i.is_unit_ideal() {
        return Ok(Ideal::unit(ctx));
    }
    if j.is_unit_ideal() {
        return Ok(i.clone());
    }
    let mut acc: Option<Ideal> = None;
    for g in j.standard_basis() {
        let part = quotient_by_element(i, g)?;
        acc = Some(match acc {
            None => part,
            Some(a) => intersect(&a, &part)?,
        });
    }
    Ok(acc.unwrap())
}

fn quotient_by_element(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let ctx = i.context();
    let principal = Ideal::new(ctx, vec![g.clone()])?;
    let meet = intersect(i, &principal)?;
    // standard basis elements stay in the polynomial ideal spanned by the
    // inputs, so every generator of the intersection is a polynomial multiple of g
    let mut gens = Vec::with_capacity(meet.generators().len());
    for p in meet.generators() {
        match p.divide_exact(g)? {
            Some(q) => gens.push(q),
            None => return Err(Error::Internal("intersection generator not divisible".into())),
        }
    }
    Ideal::new(ctx, gens)
}

/// Eliminate the variables at `indices`; the result lives in the ring of the
/// remaining variables. The eliminated variables are treated polynomially.
pub fn eliminate(i: &Ideal, indices: &[usize]) -> Result<Ideal> {
    let ctx = i.context();
    let n = ctx.nvars();
    let mut removed: Vec<usize> = indices.to_vec();
    removed.sort_unstable();
    removed.dedup();
    if removed.iter().any(|&r| r >= n) {
        return Err(Error::OutOfRange(format!("variable index out of range for a ring with {n} variables")));
    }
    let count = removed.len();
    let kept_vars: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let sub_ord = ctx.ordering().without_variables(n, &removed);
    let sub_names: Vec<String> = kept_vars.iter().map(|&v| ctx.variables()[v].clone()).collect();
    let target = RingContext::new(sub_names, sub_ord.clone())?;
    if count == 0 {
        let gens = i.generators().iter().map(|g| g.embed(&target, &(0..n).collect::<Vec<_>>())).collect::<Result<_>>()?;
        return Ideal::new(&target, gens);
    }
    let mut names: Vec<String> = removed.iter().map(|&v| ctx.variables()[v].clone()).collect();
    names.extend(target.variables().iter().cloned());
    let ord = if kept_vars.is_empty() {
        MonomialOrdering::DegRevLex
    } else {
        MonomialOrdering::Block(vec![(count, MonomialOrdering::DegRevLex), (kept_vars.len(), sub_ord)])
    };
    let ext = RingContext::new(names, ord)?;
    let mut positions = vec![0usize; n];
    for (k, &r) in removed.iter().enumerate() {
        positions[r] = k;
    }
    for (k, &v) in kept_vars.iter().enumerate() {
        positions[v] = count + k;
    }
    let gens = i.generators().iter().map(|g| g.embed(&ext, &positions)).collect::<Result<Vec<_>>>()?;
    let big = Ideal::new(&ext, gens)?;
    let kept: Vec<Polynomial> = big
        .standard_basis()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[..count].iter().all(|&e| e == 0)))
        .map(|p| project(p, &target, count))
        .collect();
    Ideal::new(&target, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial_list;
    use crate::stdbasis::Vdim;

    fn ideal(ctx: &Arc<RingContext>, gens: &str) -> Ideal {
        Ideal::new(ctx, parse_polynomial_list(ctx, gens).unwrap()).unwrap()
    }

    #[test]
    fn small_examples() {
        for ctx in [RingContext::local(["x", "y"]).unwrap(), RingContext::global(["x", "y"]).unwrap()] {
            let q = quotient(&ideal(&ctx, "x^2"), &ideal(&ctx, "x")).unwrap();
            assert!(equal(&q, &ideal(&ctx, "x")).unwrap());
            let m = intersect(&ideal(&ctx, "x"), &ideal(&ctx, "y")).unwrap();
            assert!(equal(&m, &ideal(&ctx, "x*y")).unwrap());
            let s = sum(&ideal(&ctx, "x"), &ideal(&ctx, "y^2")).unwrap();
            assert_eq!(s.vdim(), Vdim::Finite(2));
            let p = power(&ideal(&ctx, "x, y"), 2);
            assert!(equal(&p, &ideal(&ctx, "x^2, x*y, y^2")).unwrap());
        }
    }

    #[test]
    fn local_intersection_sees_units() {
        // locally <x*(1+y)> = <x>
        let ctx = RingContext::local(["x", "y"]).unwrap();
        let m = intersect(&ideal(&ctx, "x + x*y"), &ideal(&ctx, "x^2, y")).unwrap();
        assert!(equal(&m, &ideal(&ctx, "x^2, x*y")).unwrap());
        let q = quotient(&ideal(&ctx, "x^2 + x^2*y"), &ideal(&ctx, "x - x*y")).unwrap();
        assert!(equal(&q, &ideal(&ctx, "x")).unwrap());
    }

    #[test]
    fn elimination_gives_image_ideal() {
        let ctx = RingContext::local(["x", "X", "Y"]).unwrap();
        let i = ideal(&ctx, "X - x^2, Y - x^3");
        let e = eliminate(&i, &[0]).unwrap();
        assert_eq!(e.context().variables(), &["X", "Y"]);
        let expected = ideal(e.context(), "Y^2 - X^3");
        assert!(equal(&e, &expected).unwrap());
    }
}
