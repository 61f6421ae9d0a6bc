use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::ansatz::{ansatz_row, AnsatzRow};
use super::problem::{pullback_generators, GeneratorSet, MapGermProblem};
use crate::error::{Error, Result};
use crate::linalg::{solve_exact, LinearSystem};
use crate::ring::{integer, same_context, Monomial, Polynomial, Rational};
use crate::stdbasis::reduce::{normal_form, truncated_normal_form, Reducers};

/// Options for [`hmp_matrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmpOptions {
    /// Largest ansatz degree tried per row.
    pub max_degree: u32,
    /// Worker threads for the row search; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Admit `Y^m`, `m >= 2`, on the diagonal.
    pub pure_y_powers: bool,
}

impl Default for HmpOptions {
    fn default() -> Self {
        HmpOptions { max_degree: 30, threads: None, pure_y_powers: false }
    }
}

/// An `h × h` matrix over the target ring together with the generators it
/// presents.
#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    problem: Arc<MapGermProblem>,
    generators: GeneratorSet,
    entries: Vec<Vec<Polynomial>>,
    row_degrees: Vec<u32>,
    search_degrees: Vec<u32>,
}

impl PresentationMatrix {
    /// Wrap a matrix without checking C1/C2; see [`verify_c1`] and [`verify_c2`].
    pub fn new(
        problem: Arc<MapGermProblem>,
        generators: GeneratorSet,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<PresentationMatrix> {
        let h = generators.len();
        if entries.len() != h {
            return Err(Error::LengthMismatch { expected: h, found: entries.len() });
        }
        for row in &entries {
            if row.len() != h {
                return Err(Error::LengthMismatch { expected: h, found: row.len() });
            }
            if row.iter().any(|e| !same_context(e.context(), problem.target())) {
                return Err(Error::ContextMismatch);
            }
        }
        if generators.generators().iter().any(|g| !same_context(g.context(), problem.source())) {
            return Err(Error::ContextMismatch);
        }
        let row_degrees = entries.iter().map(|r| r.iter().filter_map(Polynomial::degree).max().unwrap_or(0)).collect();
        Ok(PresentationMatrix { problem, generators, entries, row_degrees, search_degrees: Vec::new() })
    }

    pub fn problem(&self) -> &Arc<MapGermProblem> {
        &self.problem
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Largest total degree of an entry in each row.
    pub fn row_degrees(&self) -> &[u32] {
        &self.row_degrees
    }

    /// Ansatz degree at which each row was found; empty for matrices not
    /// produced by [`hmp_matrix`].
    pub fn search_degrees(&self) -> &[u32] {
        &self.search_degrees
    }

    pub fn max_entry_degree(&self) -> u32 {
        self.row_degrees.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Truncated normal forms of `φ(m)·g_j` modulo `I + m^(N+1)`, keyed by
/// `(m, j, N)` and shared across rows and degrees.
pub(crate) struct NfCache<'a> {
    problem: &'a MapGermProblem,
    generators: &'a GeneratorSet,
    reducers: Reducers<'a>,
    table: Mutex<FxHashMap<(Monomial, usize, u32), Arc<Polynomial>>>,
}

impl<'a> NfCache<'a> {
    pub(crate) fn new(problem: &'a MapGermProblem, generators: &'a GeneratorSet) -> Self {
        NfCache {
            problem,
            generators,
            reducers: Reducers::new(problem.ideal().standard_basis()),
            table: Mutex::new(FxHashMap::default()),
        }
    }

    fn get(&self, m: &Monomial, j: usize, level: u32) -> Arc<Polynomial> {
        let key = (m.clone(), j, level);
        if let Some(p) = self.table.lock().unwrap().get(&key) {
            return p.clone();
        }
        let value = match (0..m.len()).find(|&v| m.exponent(v) > 0) {
            None => truncated_normal_form(&self.generators.generators()[j], &self.reducers, level),
            Some(v) => {
                let mut rest = m.clone();
                rest.set_exponent(v, m.exponent(v) - 1);
                let prev = self.get(&rest, j, level);
                let prod = self.problem.components()[v].mul_truncated(&prev, level).expect("same context");
                truncated_normal_form(&prod, &self.reducers, level)
            }
        };
        let value = Arc::new(value);
        self.table.lock().unwrap().insert(key, value.clone());
        value
    }
}

/// Linear system of one ansatz row modulo `I + m^(level+1)`.
#[derive(Clone, Debug)]
pub struct RowSystem {
    pub system: LinearSystem,
    /// `(column, monomial)` of each unknown.
    pub unknowns: Vec<(usize, Monomial)>,
    pub level: u32,
}

/// Product degree bound `deg φ(m) + deg g_j` over the row support.
fn product_degree(problem: &MapGermProblem, generators: &GeneratorSet, row: &AnsatzRow) -> u32 {
    let degs: Vec<u32> = problem.components().iter().map(|f| f.degree().unwrap_or(0)).collect();
    let phi = |m: &Monomial| -> u32 { m.exponents().iter().zip(&degs).map(|(e, d)| e * d).sum() };
    let g = |j: usize| generators.generators()[j].degree().unwrap_or(0);
    let mut best = phi(&row.fixed) + g(row.row);
    for (j, col) in row.columns.iter().enumerate() {
        for m in col {
            best = best.max(phi(m) + g(j));
        }
    }
    best
}

fn row_system(cache: &NfCache<'_>, row: &AnsatzRow, level: u32) -> RowSystem {
    let unknowns = row.unknowns();
    let mut eqs: FxHashMap<Monomial, (Vec<(usize, Rational)>, Rational)> = FxHashMap::default();
    for (u, (j, m)) in unknowns.iter().enumerate() {
        for (x, c) in cache.get(m, *j, level).terms() {
            eqs.entry(x.clone()).or_insert_with(|| (Vec::new(), Rational::zero())).0.push((u, c.clone()));
        }
    }
    for (x, c) in cache.get(&row.fixed, row.row, level).terms() {
        eqs.entry(x.clone()).or_insert_with(|| (Vec::new(), Rational::zero())).1 = -c.clone();
    }
    let ord = cache.problem.source().ordering();
    let mut keyed: Vec<_> = eqs.into_iter().collect();
    keyed.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    let mut system = LinearSystem::new(unknowns.len());
    for (_, (lhs, rhs)) in keyed {
        system.push(lhs, rhs);
    }
    RowSystem { system, unknowns, level }
}

/// The linear system of `row`, modulo `I + m^(level+1)`: one equation per
/// residual standard monomial, unknowns the free ansatz coefficients, right
/// hand side from the fixed `Y` of the diagonal.
pub fn build_row_system(
    problem: &MapGermProblem,
    generators: &GeneratorSet,
    row: &AnsatzRow,
    level: u32,
) -> RowSystem {
    let cache = NfCache::new(problem, generators);
    row_system(&cache, row, level)
}

fn row_entries(problem: &MapGermProblem, row: &AnsatzRow, unknowns: &[(usize, Monomial)], values: &[Rational]) -> Vec<Polynomial> {
    let target = problem.target();
    let mut terms: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); row.columns.len()];
    for ((j, m), a) in unknowns.iter().zip(values) {
        if !a.is_zero() {
            terms[*j].push((m.clone(), a.clone()));
        }
    }
    terms[row.row].push((row.fixed.clone(), integer(1)));
    terms.into_iter().map(|t| Polynomial::from_terms(target, t).expect("target terms")).collect()
}

/// `Σ_j φ(Λ_ij)·g_j` for one row.
fn row_relation(problem: &MapGermProblem, generators: &GeneratorSet, entries: &[Polynomial]) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(problem.source());
    for (e, g) in entries.iter().zip(generators.generators()) {
        if e.is_zero() {
            continue;
        }
        acc = &acc + &(&problem.map().apply(e)? * g);
    }
    Ok(acc)
}

/// Solve row `i` at increasing degree. Returns the entries and the degree.
fn solve_row(
    cache: &NfCache<'_>,
    i: usize,
    options: &HmpOptions,
) -> Result<(Vec<Polynomial>, u32)> {
    let problem = cache.problem;
    let h = cache.generators.len();
    let reducers = &cache.reducers;
    for k in 1..=options.max_degree {
        let row = ansatz_row(i, k, h, problem.n(), options.pure_y_powers);
        let mut level = product_degree(problem, cache.generators, &row).max(1);
        loop {
            let rs = row_system(cache, &row, level);
            // a solution modulo I + m^(level+1) is necessary for one modulo I
            let Some(values) = solve_exact(&rs.system) else { break };
            let entries = row_entries(problem, &row, &rs.unknowns, &values);
            let rel = row_relation(problem, cache.generators, &entries)?;
            if normal_form(&rel, reducers).is_zero() {
                return Ok((entries, k));
            }
            // the truncated solution spaces shrink to the exact one
            level *= 2;
        }
    }
    Err(Error::DegreeCapExceeded { row: i, last_degree: options.max_degree as usize })
}

/// An HMP-matrix presenting `f_*O_X`, together with its generators.
///
/// Rows are searched independently, each at the least ansatz degree with a
/// solution; the result does not depend on the number of threads.
pub fn hmp_matrix(problem: &MapGermProblem, options: &HmpOptions) -> Result<PresentationMatrix> {
    problem.ideal().standard_basis();
    let generators = pullback_generators(problem)?;
    let problem = Arc::new(problem.clone());
    let h = generators.len();
    let cache = NfCache::new(&problem, &generators);
    let run = |i: usize| solve_row(&cache, i, options);
    let rows: Vec<Result<(Vec<Polynomial>, u32)>> = match options.threads {
        Some(1) => (0..h).map(run).collect(),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            pool.install(|| (0..h).into_par_iter().map(run).collect())
        }
        None => (0..h).into_par_iter().map(run).collect(),
    };
    let mut entries = Vec::with_capacity(h);
    let mut degrees = Vec::with_capacity(h);
    for r in rows {
        let (row, k) = r?;
        entries.push(row);
        degrees.push(k);
    }
    let mut m = PresentationMatrix::new(problem.clone(), generators.clone(), entries)?;
    m.search_degrees = degrees;
    if !verify_c2(&m) {
        return Err(Error::Internal("computed matrix violates C2".into()));
    }
    Ok(m)
}

/// C1: `Σ_j φ(Λ_ij)·g_j ≡ 0 mod I` for every row.
pub fn verify_c1(m: &PresentationMatrix) -> Result<bool> {
    let problem = m.problem();
    for row in m.entries() {
        let rel = row_relation(problem, m.generators(), row)?;
        if !problem.ideal().normal_form(&rel)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// C2: at `X = 0`, the non-constant part of a diagonal entry is `Y·u(Y)` with
/// `u(0) ≠ 0`, and off-diagonal entries are constant.
pub fn verify_c2(m: &PresentationMatrix) -> bool {
    let n = m.problem().n();
    let zeros: Vec<(usize, Rational)> = (0..n).map(|v| (v, Rational::zero())).collect();
    let y = Monomial::variable(n + 1, n, 1);
    for (i, row) in m.entries().iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let at0 = e.substitute_constants(&zeros);
            let non_constant = at0.terms().iter().filter(|(mono, _)| !mono.is_one()).count();
            let ok = if i == j { !at0.coefficient(&y).is_zero() } else { non_constant == 0 };
            if !ok {
                return false;
            }
        }
    }
    true
}
