//! Problem builders: singular sets, divided differences, lifted double
//! points and source double points.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fitting::{determinant, fitting_ideal, minors};
use crate::presentation::{hmp_matrix, HmpOptions, MapGermProblem, PresentationMatrix};
use crate::ring::{same_context, Polynomial, RingContext};
use crate::stdbasis::Ideal;

fn check_components(ctx: &Arc<RingContext>, components: &[Polynomial]) -> Result<()> {
    if components.iter().any(|f| !same_context(f.context(), ctx)) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// `det(∂f_j/∂x_i)` for `n` components in `n` variables.
pub fn jacobian_determinant(ctx: &Arc<RingContext>, components: &[Polynomial]) -> Result<Polynomial> {
    check_components(ctx, components)?;
    if components.len() != ctx.nvars() {
        return Err(Error::Unsupported(format!(
            "Jacobian determinant of {} components in {} variables",
            components.len(),
            ctx.nvars()
        )));
    }
    let jac: Vec<Vec<Polynomial>> = components.iter().map(|f| (0..ctx.nvars()).map(|v| f.derivative(v)).collect()).collect();
    determinant(ctx, &jac)
}

/// The restriction of an equidimensional germ `f: (C^n,0) → (C^n,0)` to its
/// singular set, as a map germ problem on `V(det Jf)` with target
/// `X1, …, X(n-1), Y`; also returns `det Jf`.
pub fn singular_restriction(ctx: &Arc<RingContext>, components: &[Polynomial]) -> Result<(MapGermProblem, Polynomial)> {
    let sigma = jacobian_determinant(ctx, components)?;
    let problem = MapGermProblem::with_default_target(ctx, vec![sigma.clone()], components.to_vec())?;
    Ok((problem, sigma))
}

/// Doubled source ring `x_1..x_n, x'_1..x'_n` with a local ordering. The
/// second copy uses `aliases` when given, primed names otherwise.
pub fn doubled_context(ctx: &Arc<RingContext>, aliases: Option<&[String]>) -> Result<Arc<RingContext>> {
    let mut names: Vec<String> = ctx.variables().to_vec();
    match aliases {
        Some(a) => {
            if a.len() != ctx.nvars() {
                return Err(Error::LengthMismatch { expected: ctx.nvars(), found: a.len() });
            }
            names.extend(a.iter().cloned());
        }
        None => names.extend(ctx.variables().iter().map(|v| format!("{v}'"))),
    }
    RingContext::local(names)
}

/// Divided differences `α` (`n × p`) with
/// `f_j(x) - f_j(x') = Σ_i α_ij (x_i - x'_i)`.
#[derive(Clone, Debug)]
pub struct DividedDifferenceMatrix {
    pub context: Arc<RingContext>,
    pub alpha: Vec<Vec<Polynomial>>,
}

/// `α_ij = (f_j(x'_1..x'_{i-1}, x_i, …) - f_j(x'_1..x'_i, x_{i+1}, …)) / (x_i - x'_i)`.
pub fn divided_differences(
    ctx: &Arc<RingContext>,
    components: &[Polynomial],
    aliases: Option<&[String]>,
) -> Result<DividedDifferenceMatrix> {
    check_components(ctx, components)?;
    let n = ctx.nvars();
    let doubled = doubled_context(ctx, aliases)?;
    // f with the first `i` variables primed
    let shifted = |f: &Polynomial, i: usize| -> Result<Polynomial> {
        let positions: Vec<usize> = (0..n).map(|v| if v < i { n + v } else { v }).collect();
        f.embed(&doubled, &positions)
    };
    let mut alpha = Vec::with_capacity(n);
    for i in 0..n {
        let diff = &Polynomial::variable(&doubled, i) - &Polynomial::variable(&doubled, n + i);
        let mut row = Vec::with_capacity(components.len());
        for f in components {
            let num = &shifted(f, i)? - &shifted(f, i + 1)?;
            match num.divide_exact(&diff)? {
                Some(q) => row.push(q),
                None => return Err(Error::Internal("divided difference is not exact".into())),
            }
        }
        alpha.push(row);
    }
    for (j, f) in components.iter().enumerate() {
        let lhs = &shifted(f, 0)? - &shifted(f, n)?;
        let mut rhs = Polynomial::zero(&doubled);
        for (i, row) in alpha.iter().enumerate() {
            let diff = &Polynomial::variable(&doubled, i) - &Polynomial::variable(&doubled, n + i);
            rhs = &rhs + &(&row[j] * &diff);
        }
        if lhs != rhs {
            return Err(Error::Internal("telescoping identity fails".into()));
        }
    }
    Ok(DividedDifferenceMatrix { context: doubled, alpha })
}

/// `I²(f)`: the differences `f_j(x) - f_j(x')` and the maximal minors of the
/// divided differences, for `n + 1` components in `n` variables.
pub fn double_point_ideal(ctx: &Arc<RingContext>, components: &[Polynomial], aliases: Option<&[String]>) -> Result<Ideal> {
    let n = ctx.nvars();
    if components.len() != n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, found: components.len() });
    }
    let dd = divided_differences(ctx, components, aliases)?;
    let doubled = &dd.context;
    let mut gens = Vec::new();
    for f in components {
        let a = f.embed(doubled, &(0..n).collect::<Vec<_>>())?;
        let b = f.embed(doubled, &(n..2 * n).collect::<Vec<_>>())?;
        let d = &a - &b;
        if !d.is_zero() {
            gens.push(d);
        }
    }
    if n > 0 {
        gens.extend(minors(doubled, &dd.alpha, n)?.generators().iter().cloned());
    }
    Ideal::new(doubled, gens)
}

/// Options for [`source_double_points`].
#[derive(Clone, Debug, Default)]
pub struct DoublePointOptions {
    /// Source coordinate used as `Y` for the projection; `None` tries the
    /// last coordinate first and falls back to the others.
    pub y_var: Option<usize>,
    /// Names for the second copy of the source variables.
    pub aliases: Option<Vec<String>>,
    pub hmp: HmpOptions,
}

/// Result of [`source_double_points`].
#[derive(Clone, Debug)]
pub struct SourceDoublePoints {
    /// `I²(f)` in the doubled ring.
    pub lifted: Ideal,
    /// Coordinate used as `Y`.
    pub y_var: usize,
    /// Presentation of `π|D²(f)`; `None` when `D²(f)` is empty.
    pub matrix: Option<PresentationMatrix>,
    /// `F_0(π|D²(f))` in the source ring, defining `D(f)`.
    pub ideal: Ideal,
}

impl SourceDoublePoints {
    /// `F_k(π|D²(f))` moved into the source ring.
    pub fn fitting(&self, k: i64) -> Result<Ideal> {
        let ctx = self.ideal.context();
        match &self.matrix {
            None if k >= 0 => Ok(Ideal::unit(ctx)),
            None => Ok(Ideal::zero(ctx)),
            Some(m) => rename_to_source(&fitting_ideal(m, k)?, ctx, self.y_var),
        }
    }
}

fn projection_problem(lifted: &Ideal, source: &Arc<RingContext>, y_var: usize) -> Result<MapGermProblem> {
    let n = source.nvars();
    let doubled = lifted.context();
    let mut names: Vec<String> = Vec::with_capacity(n);
    let mut comps = Vec::with_capacity(n);
    for v in (0..n).filter(|&v| v != y_var) {
        names.push(source.variables()[v].clone());
        comps.push(Polynomial::variable(doubled, v));
    }
    names.push(source.variables()[y_var].clone());
    comps.push(Polynomial::variable(doubled, y_var));
    // target variables carry upper-case names to stay distinct from the source
    let target = RingContext::local(names.iter().map(|s| s.to_uppercase()).collect::<Vec<_>>())
        .or_else(|_| RingContext::local((1..n).map(|i| format!("X{i}")).chain(["Y".to_string()])))?;
    MapGermProblem::new(doubled, lifted.generators().to_vec(), comps, &target)
}

/// Move an ideal of the projection target back to the source ring.
fn rename_to_source(i: &Ideal, source: &Arc<RingContext>, y_var: usize) -> Result<Ideal> {
    let n = source.nvars();
    let mut positions: Vec<usize> = (0..n).filter(|&v| v != y_var).collect();
    positions.push(y_var);
    let gens = i.generators().iter().map(|g| g.embed(source, &positions)).collect::<Result<_>>()?;
    Ideal::new(source, gens)
}

/// Source double points `D(f) = V(F_0(π|D²(f)))` of `f: (C^n,0) → (C^{n+1},0)`.
pub fn source_double_points(
    ctx: &Arc<RingContext>,
    components: &[Polynomial],
    options: &DoublePointOptions,
) -> Result<SourceDoublePoints> {
    let n = ctx.nvars();
    if n == 0 {
        return Err(Error::InvalidProblem("source ring without variables".into()));
    }
    let lifted = double_point_ideal(ctx, components, options.aliases.as_deref())?;
    let default_y = options.y_var.unwrap_or(n - 1);
    if default_y >= n {
        return Err(Error::OutOfRange(format!("projection coordinate {default_y}")));
    }
    if lifted.is_unit_ideal() {
        return Ok(SourceDoublePoints { lifted, y_var: default_y, matrix: None, ideal: Ideal::unit(ctx) });
    }
    let candidates: Vec<usize> = match options.y_var {
        Some(v) => vec![v],
        None => (0..n).rev().collect(),
    };
    let mut last_err = Error::NotFinite;
    for y_var in candidates {
        let problem = projection_problem(&lifted, ctx, y_var)?;
        match hmp_matrix(&problem, &options.hmp) {
            Ok(m) => {
                let f0 = fitting_ideal(&m, 0)?;
                let ideal = rename_to_source(&f0, ctx, y_var)?;
                return Ok(SourceDoublePoints { lifted, y_var, matrix: Some(m), ideal });
            }
            Err(Error::NotFinite) => last_err = Error::NotFinite,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}
