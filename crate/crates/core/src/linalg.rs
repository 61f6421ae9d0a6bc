//! Exact sparse linear systems over Q.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::ring::Rational;

/// `Σ_j a_ij x_j = b_i` with sparse rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearSystem {
    pub unknowns: usize,
    pub equations: Vec<(Vec<(usize, Rational)>, Rational)>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem { unknowns, equations: Vec::new() }
    }

    pub fn push(&mut self, lhs: Vec<(usize, Rational)>, rhs: Rational) {
        self.equations.push((lhs, rhs));
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

/// Solve exactly by Gaussian elimination. Free unknowns are set to zero, so
/// the result is the unique solution supported on the pivot columns of the
/// reduced row echelon form. `None` when the system is inconsistent.
pub fn solve_exact(system: &LinearSystem) -> Option<Vec<Rational>> {
    // pivot column -> (row with leading entry 1 at that column, rhs)
    let mut pivots: BTreeMap<usize, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
    for (lhs, rhs) in &system.equations {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, a) in lhs {
            assert!(*j < system.unknowns, "unknown index out of range");
            let e = row.entry(*j).or_insert_with(Rational::zero);
            *e += a;
        }
        row.retain(|_, a| !a.is_zero());
        let mut b = rhs.clone();
        let mut cursor = 0;
        loop {
            let next = row.range(cursor..).map(|(j, _)| *j).find(|j| pivots.contains_key(j));
            let Some(col) = next else { break };
            let factor = row.remove(&col).unwrap();
            let (prow, pb) = &pivots[&col];
            for (j, a) in prow {
                if *j == col {
                    continue;
                }
                let e = row.entry(*j).or_insert_with(Rational::zero);
                *e -= &factor * a;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            b -= &factor * pb;
            cursor = col + 1;
        }
        let Some((&lead, lead_coeff)) = row.iter().next() else {
            if b.is_zero() {
                continue;
            }
            return None;
        };
        let inv = lead_coeff.recip();
        if !inv.is_one() {
            for a in row.values_mut() {
                *a *= &inv;
            }
            b *= &inv;
        }
        pivots.insert(lead, (row, b));
    }
    let mut x = vec![Rational::zero(); system.unknowns];
    for (col, (row, b)) in pivots.iter().rev() {
        let mut v = b.clone();
        for (j, a) in row.range(col + 1..) {
            if !x[*j].is_zero() {
                v -= a * &x[*j];
            }
        }
        x[*col] = v;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::integer;

    fn system(n: usize, rows: &[(&[(usize, i64)], i64)]) -> LinearSystem {
        let mut s = LinearSystem::new(n);
        for (lhs, rhs) in rows {
            s.push(lhs.iter().map(|(j, a)| (*j, integer(*a))).collect(), integer(*rhs));
        }
        s
    }

    #[test]
    fn small_systems() {
        let s = system(2, &[(&[(0, 1), (1, 1)], 0), (&[(0, 1)], 1)]);
        assert_eq!(solve_exact(&s), Some(vec![integer(1), integer(-1)]));
        let s = system(1, &[(&[(0, 1)], 0), (&[(0, 1)], 1)]);
        assert_eq!(solve_exact(&s), None);
        let s = system(2, &[(&[(0, 1), (1, 1)], 0)]);
        assert_eq!(solve_exact(&s), Some(vec![integer(0), integer(0)]));
        assert_eq!(solve_exact(&LinearSystem::new(3)), Some(vec![integer(0); 3]));
    }

    #[test]
    fn free_variables_are_zero() {
        // x0 + 2 x1 + x2 = 4, x1 - x2 = 1  ->  x2 free
        let s = system(3, &[(&[(0, 1), (1, 2), (2, 1)], 4), (&[(1, 1), (2, -1)], 1)]);
        assert_eq!(solve_exact(&s), Some(vec![integer(2), integer(1), integer(0)]));
    }
}
