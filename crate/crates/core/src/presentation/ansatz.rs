use crate::ring::{Monomial, MonomialOrdering};

/// Support of the generic row `i` at degree bound `k`.
///
/// Column `i` holds every `X^α Y^b` with `α ≠ 0` and total degree `<= k`,
/// plus the monomial `Y` with coefficient fixed to 1. Other columns hold the
/// constant and every `X^α Y^b` with `α ≠ 0`. Pure powers `Y^m`, `m >= 2`,
/// appear on the diagonal only when enabled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzRow {
    pub row: usize,
    pub degree: u32,
    /// Free monomials per column.
    pub columns: Vec<Vec<Monomial>>,
    /// The fixed monomial `Y` of the diagonal entry.
    pub fixed: Monomial,
}

impl AnsatzRow {
    /// Unknowns as `(column, monomial)`, low degree first.
    pub fn unknowns(&self) -> Vec<(usize, Monomial)> {
        let mut out: Vec<(usize, Monomial)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, ms)| ms.iter().map(move |m| (j, m.clone())))
            .collect();
        out.sort_by(|a, b| a.1.degree().cmp(&b.1.degree()).then(a.0.cmp(&b.0)));
        out
    }

    pub fn unknown_count(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
}

fn monomials_up_to(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == cur.len() {
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            rec(var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    rec(0, k, &mut vec![0; nvars], &mut out);
    let ord = MonomialOrdering::NegDegRevLex;
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

/// Generic row `i` of degree `k` for an `h × h` matrix over `X_1..X_n, Y`.
pub fn ansatz_row(i: usize, k: u32, h: usize, n: usize, pure_y_powers: bool) -> AnsatzRow {
    assert!(i < h, "row index out of range");
    let all = monomials_up_to(n + 1, k);
    let mut columns = vec![Vec::new(); h];
    for m in &all {
        let e = m.exponents();
        let x_free = e[..n].iter().all(|&a| a == 0);
        let b = e[n];
        for (j, col) in columns.iter_mut().enumerate() {
            let keep = if !x_free {
                true
            } else if j == i {
                b >= 2 && pure_y_powers
            } else {
                b == 0
            };
            if keep {
                col.push(m.clone());
            }
        }
    }
    AnsatzRow { row: i, degree: k, columns, fixed: Monomial::variable(n + 1, n, 1) }
}
