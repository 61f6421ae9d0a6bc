use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

/// A monomial ordering.
///
/// `DegRevLex` is the global degree reverse lexicographic ordering (`1` is the
/// minimum). `NegDegRevLex` is its local counterpart: lower total degree is
/// larger, ties broken by reverse lexicographic comparison, so `1 > x_i` for
/// every variable. Computing with a local ordering realizes the localization
/// at the origin.
///
/// `Block` splits the variable list into contiguous groups, compared one
/// after the other; each group carries its own (possibly nested) ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrdering {
    DegRevLex,
    NegDegRevLex,
    Block(Vec<(usize, MonomialOrdering)>),
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrdering {
    pub(crate) fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrdering::DegRevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| revlex(a, b))
            }
            MonomialOrdering::NegDegRevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                db.cmp(&da).then_with(|| revlex(a, b))
            }
            MonomialOrdering::Block(blocks) => {
                let mut offset = 0;
                for (len, inner) in blocks {
                    let end = offset + len;
                    let c = inner.cmp_exps(&a[offset..end], &b[offset..end]);
                    if c != Ordering::Equal {
                        return c;
                    }
                    offset = end;
                }
                Ordering::Equal
            }
        }
    }

    /// Compare two monomials of the same length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exponents(), b.exponents())
    }

    /// Every variable is larger than `1`.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrdering::DegRevLex => true,
            MonomialOrdering::NegDegRevLex => false,
            MonomialOrdering::Block(blocks) => blocks.iter().all(|(_, o)| o.is_global()),
        }
    }

    /// Every variable is smaller than `1`.
    pub fn is_local(&self) -> bool {
        match self {
            MonomialOrdering::DegRevLex => false,
            MonomialOrdering::NegDegRevLex => true,
            MonomialOrdering::Block(blocks) => blocks.iter().all(|(_, o)| o.is_local()),
        }
    }

    /// Local and anti-compatible with total degree: `deg a < deg b` implies `a > b`.
    pub fn is_local_degree(&self) -> bool {
        matches!(self, MonomialOrdering::NegDegRevLex)
    }

    pub(crate) fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrdering::Block(blocks) = self {
            let mut total = 0;
            for (len, inner) in blocks {
                if *len == 0 {
                    return Err(Error::InvalidContext("empty ordering block".into()));
                }
                inner.validate(*len)?;
                total += len;
            }
            if total != nvars {
                return Err(Error::InvalidContext(format!(
                    "ordering blocks cover {total} variables, ring has {nvars}"
                )));
            }
        }
        Ok(())
    }

    /// The ordering induced on the variables that remain after deleting the
    /// (sorted) positions in `removed`.
    pub(crate) fn without_variables(&self, nvars: usize, removed: &[usize]) -> MonomialOrdering {
        match self {
            MonomialOrdering::Block(blocks) => {
                let mut out = Vec::new();
                let mut offset = 0;
                for (len, inner) in blocks {
                    let local: Vec<usize> = removed
                        .iter()
                        .filter(|&&r| r >= offset && r < offset + len)
                        .map(|r| r - offset)
                        .collect();
                    let remaining = len - local.len();
                    if remaining > 0 {
                        out.push((remaining, inner.without_variables(*len, &local)));
                    }
                    offset += len;
                }
                if out.len() == 1 {
                    out.pop().unwrap().1
                } else {
                    let _ = nvars;
                    MonomialOrdering::Block(out)
                }
            }
            other => other.clone(),
        }
    }
}

/// Compare two monomials under `ord`; errors if their lengths differ.
pub fn compare(m1: &Monomial, m2: &Monomial, ord: &MonomialOrdering) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::LengthMismatch { expected: m1.len(), found: m2.len() });
    }
    Ok(ord.cmp(m1, m2))
}
