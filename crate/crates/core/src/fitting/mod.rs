//! Fitting ideals of presentation matrices, multiple-point schemes and
//! numerical invariants.

mod minors;

use std::fmt;
use std::sync::Arc;

pub use minors::{determinant, minors, prune_units};

use crate::error::{Error, Result};
use crate::presentation::PresentationMatrix;
use crate::ring::{Polynomial, RingContext};
use crate::stdbasis::{power, quotient, Ideal, Vdim};

/// `F_k` of the module presented by the square matrix `entries`.
pub fn fitting_ideal_of_matrix(ctx: &Arc<RingContext>, entries: &[Vec<Polynomial>], k: i64) -> Result<Ideal> {
    if k < 0 {
        return Ok(Ideal::zero(ctx));
    }
    let pruned = prune_units(entries);
    fitting_of_pruned(ctx, &pruned, k)
}

fn fitting_of_pruned(ctx: &Arc<RingContext>, pruned: &[Vec<Polynomial>], k: i64) -> Result<Ideal> {
    let h = pruned.len() as i64;
    if k < 0 {
        Ok(Ideal::zero(ctx))
    } else if k >= h {
        Ok(Ideal::unit(ctx))
    } else {
        minors(ctx, pruned, (h - k) as usize)
    }
}

/// `F_k(f_*O_X)`: `⟨0⟩` for `k < 0`, the `(h-k)`-minors for `0 <= k < h`,
/// `⟨1⟩` for `k >= h`.
pub fn fitting_ideal(m: &PresentationMatrix, k: i64) -> Result<Ideal> {
    fitting_ideal_of_matrix(m.problem().target(), m.entries(), k)
}

/// `F_0 ⊆ F_1 ⊆ … ⊆ F_h`.
#[derive(Clone, Debug)]
pub struct FittingChain {
    pub ideals: Vec<Ideal>,
}

impl FittingChain {
    pub fn get(&self, k: i64) -> Option<&Ideal> {
        usize::try_from(k).ok().and_then(|k| self.ideals.get(k))
    }
}

pub fn fitting_chain(m: &PresentationMatrix) -> Result<FittingChain> {
    let ctx = m.problem().target();
    let pruned = prune_units(m.entries());
    let ideals = (0..=m.size() as i64).map(|k| fitting_of_pruned(ctx, &pruned, k)).collect::<Result<_>>()?;
    Ok(FittingChain { ideals })
}

/// `M_k(f)`, defined by `F_{k-1}`.
pub fn multiple_point_scheme(m: &PresentationMatrix, k: i64) -> Result<Ideal> {
    if k < 1 {
        return Err(Error::OutOfRange(format!("multiple point index {k} must be at least 1")));
    }
    fitting_ideal(m, k - 1)
}

/// `⟨∂g/∂v⟩` over all variables of `g`'s ring.
pub fn jacobian_ideal(g: &Polynomial) -> Ideal {
    let ctx = g.context();
    let gens = (0..ctx.nvars()).map(|v| g.derivative(v)).collect();
    Ideal::new(ctx, gens).expect("same context")
}

/// Milnor number: the quotient dimension of the Jacobian ideal.
pub fn milnor_number(g: &Polynomial) -> Vdim {
    jacobian_ideal(g).vdim()
}

/// Named numerical invariants; absent entries were not computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantReport {
    /// `dim O/F_1`, the number of nodes plus cusps for plane germs.
    pub vdim_f1: Option<Vdim>,
    /// Milnor number of the singular curve.
    pub mu_sigma: Option<Vdim>,
    /// Milnor number of the discriminant, `2·vdim_F1 + μ(Σ)`.
    pub mu_delta: Option<Vdim>,
    /// `dim O/F_2`.
    pub vdim_f2: Option<Vdim>,
    /// `dim O/(I_A11^2 : F_0)`.
    pub triple_count: Option<Vdim>,
}

impl InvariantReport {
    pub fn entries(&self) -> Vec<(&'static str, Vdim)> {
        let mut out = Vec::new();
        for (name, v) in [
            ("vdim_F1", self.vdim_f1),
            ("mu_sigma", self.mu_sigma),
            ("mu_delta", self.mu_delta),
            ("vdim_F2", self.vdim_f2),
            ("triple_count", self.triple_count),
        ] {
            if let Some(v) = v {
                out.push((name, v));
            }
        }
        out
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in self.entries() {
            writeln!(f, "{name} = {v}")?;
        }
        Ok(())
    }
}

/// Invariants of a plane germ from a presentation of its restriction to the
/// singular curve `Σ = V(sigma)`.
pub fn plane_map_invariants(restriction: &PresentationMatrix, sigma: &Polynomial) -> Result<InvariantReport> {
    let vdim_f1 = fitting_ideal(restriction, 1)?.vdim();
    let mu_sigma = milnor_number(sigma);
    let mu_delta = match (vdim_f1, mu_sigma) {
        (Vdim::Finite(a), Vdim::Finite(b)) => Vdim::Finite(2 * a + b),
        _ => Vdim::Infinite,
    };
    Ok(InvariantReport { vdim_f1: Some(vdim_f1), mu_sigma: Some(mu_sigma), mu_delta: Some(mu_delta), ..Default::default() })
}

/// `dim O/(I_A11^2 : F_0)`.
pub fn triple_point_count(f0: &Ideal, i_a11: &Ideal) -> Result<Vdim> {
    Ok(quotient(&power(i_a11, 2), f0)?.vdim())
}

/// `dim O/F_2` and the triple point count of an equidimensional germ from a
/// presentation of its restriction to the singular set; `I_A11` defaults to
/// `F_1`.
pub fn triple_point_invariants(restriction: &PresentationMatrix, i_a11: Option<&Ideal>) -> Result<InvariantReport> {
    let ctx = restriction.problem().target();
    let pruned = prune_units(restriction.entries());
    let f0 = fitting_of_pruned(ctx, &pruned, 0)?;
    let f2 = fitting_of_pruned(ctx, &pruned, 2)?;
    let f1;
    let i_a11 = match i_a11 {
        Some(i) => i,
        None => {
            f1 = fitting_of_pruned(ctx, &pruned, 1)?;
            &f1
        }
    };
    Ok(InvariantReport {
        vdim_f2: Some(f2.vdim()),
        triple_count: Some(triple_point_count(&f0, i_a11)?),
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    #[test]
    fn milnor_numbers() {
        let ctx = RingContext::local(["x", "y"]).unwrap();
        let mu = |s: &str| milnor_number(&parse_polynomial(&ctx, s).unwrap());
        assert_eq!(mu("x^2 + y^2"), Vdim::Finite(1));
        assert_eq!(mu("x^3 + y^2"), Vdim::Finite(2));
        assert_eq!(mu("(1 + x)*(x^3 + y^2)"), Vdim::Finite(2));
        assert_eq!(mu("x^2"), Vdim::Infinite);
    }
}
