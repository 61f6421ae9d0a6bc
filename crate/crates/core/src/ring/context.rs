use std::sync::Arc;

use super::MonomialOrdering;
use crate::error::{Error, Result};

/// Variable names plus a monomial ordering. Immutable once built and shared
/// through `Arc` by every polynomial of the ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    variables: Vec<String>,
    ordering: MonomialOrdering,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl RingContext {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        ordering: MonomialOrdering,
    ) -> Result<Arc<RingContext>> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidContext(format!("invalid variable name `{v}`")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidContext(format!("duplicate variable `{v}`")));
            }
        }
        ordering.validate(variables.len())?;
        Ok(Arc::new(RingContext { variables, ordering }))
    }

    /// Ring with the local ordering `NegDegRevLex`.
    pub fn local<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Arc<RingContext>> {
        RingContext::new(variables, MonomialOrdering::NegDegRevLex)
    }

    /// Ring with the global ordering `DegRevLex`.
    pub fn global<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Arc<RingContext>> {
        RingContext::new(variables, MonomialOrdering::DegRevLex)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// A fresh variable name not used in this ring.
    pub(crate) fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.variable_index(&name).is_some() {
            name.push('_');
        }
        name
    }
}

pub(crate) fn same_context(a: &Arc<RingContext>, b: &Arc<RingContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
