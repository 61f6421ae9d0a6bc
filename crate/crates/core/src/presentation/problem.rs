use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{same_context, MonomialOrdering, Polynomial, RingContext, RingMap};
use crate::stdbasis::Ideal;

/// A finite map germ `f = (f_1, …, f_{n+1})` on `X = V(I) ⊂ (C^ℓ, 0)`.
///
/// The source ring carries a local degree ordering; the target ring has
/// variables `X_1, …, X_n, Y` with `Y` last.
#[derive(Clone, Debug)]
pub struct MapGermProblem {
    source: Arc<RingContext>,
    ideal: Ideal,
    components: Vec<Polynomial>,
    target: Arc<RingContext>,
    map: RingMap,
}

impl MapGermProblem {
    pub fn new(
        source: &Arc<RingContext>,
        ideal: Vec<Polynomial>,
        components: Vec<Polynomial>,
        target: &Arc<RingContext>,
    ) -> Result<MapGermProblem> {
        if *source.ordering() != MonomialOrdering::NegDegRevLex {
            return Err(Error::InvalidProblem("the source ring must use the local ordering ds".into()));
        }
        if target.nvars() == 0 {
            return Err(Error::InvalidProblem("the target ring needs at least the variable Y".into()));
        }
        if components.len() != target.nvars() {
            return Err(Error::LengthMismatch { expected: target.nvars(), found: components.len() });
        }
        if components.iter().chain(&ideal).any(|p| !same_context(p.context(), source)) {
            return Err(Error::ContextMismatch);
        }
        if target.nvars() - 1 > source.nvars() {
            return Err(Error::InvalidProblem("more target coordinates than source variables allow".into()));
        }
        if let Some(j) = components.iter().position(|f| !f.constant_coefficient().is_zero()) {
            return Err(Error::InvalidProblem(format!("component {} does not vanish at the origin", j + 1)));
        }
        let map = RingMap::new(target, source, components.clone())?;
        Ok(MapGermProblem { source: source.clone(), ideal: Ideal::new(source, ideal)?, components, target: target.clone(), map })
    }

    /// Convenience constructor: local target ring `X1, …, Xn, Y`.
    pub fn with_default_target(
        source: &Arc<RingContext>,
        ideal: Vec<Polynomial>,
        components: Vec<Polynomial>,
    ) -> Result<MapGermProblem> {
        let n = components.len().saturating_sub(1);
        let mut names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        names.push("Y".into());
        let target = RingContext::local(names)?;
        MapGermProblem::new(source, ideal, components, &target)
    }

    pub fn source(&self) -> &Arc<RingContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingContext> {
        &self.target
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// The pullback `φ: X_i ↦ f_i, Y ↦ f_{n+1}`.
    pub fn map(&self) -> &RingMap {
        &self.map
    }

    /// Number of `X` variables.
    pub fn n(&self) -> usize {
        self.target.nvars() - 1
    }

    /// `I + ⟨f_1, …, f_n⟩`.
    pub fn fiber_ideal(&self) -> Ideal {
        let mut gens = self.ideal.generators().to_vec();
        gens.extend(self.components[..self.n()].iter().cloned());
        Ideal::new(&self.source, gens).expect("same context")
    }
}

/// Monomial generators `g_1 = 1, g_2, …, g_h` of the pushforward module.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    generators: Vec<Polynomial>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Polynomial>) -> Result<GeneratorSet> {
        if generators.is_empty() {
            return Err(Error::InvalidProblem("empty generator set".into()));
        }
        Ok(GeneratorSet { generators })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Standard monomials of `I + ⟨f_1, …, f_n⟩`, with `1` first.
pub fn pullback_generators(problem: &MapGermProblem) -> Result<GeneratorSet> {
    let q = problem.fiber_ideal().kbase();
    if !q.finite {
        return Err(Error::NotFinite);
    }
    if q.is_empty() {
        return Err(Error::InvalidProblem("the source germ is empty (the ideal contains a unit)".into()));
    }
    let one = crate::ring::integer(1);
    let gens = q.monomials.into_iter().map(|m| Polynomial::term(problem.source(), m, one.clone())).collect();
    GeneratorSet::new(gens)
}
