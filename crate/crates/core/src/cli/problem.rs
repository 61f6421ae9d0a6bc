use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::singular_restriction;
use crate::presentation::MapGermProblem;
use crate::ring::{parse_polynomial_list, Polynomial, RingContext};

/// What the problem file describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// `f: V(I) → (C^{n+1}, 0)` given directly.
    Map,
    /// An equidimensional germ, studied through its restriction to the
    /// singular set.
    Singular,
}

/// A parsed problem file.
///
/// Lines are `key = value`; `#` starts a comment and indented lines continue
/// the previous value. Keys: `source`, `target`, `ideal`, `map`, `kind`,
/// `max_degree`, `pure_y_powers`, `y_var`, `aliases`.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub kind: ProblemKind,
    pub source: Arc<RingContext>,
    pub target_vars: Option<Vec<String>>,
    pub ideal: Vec<Polynomial>,
    pub map: Vec<Polynomial>,
    pub max_degree: Option<u32>,
    pub pure_y_powers: bool,
    pub y_var: Option<String>,
    pub aliases: Option<Vec<String>>,
}

const KEYS: [&str; 9] = ["source", "target", "ideal", "map", "kind", "max_degree", "pure_y_powers", "y_var", "aliases"];

fn line_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { position: line, message: format!("line {line}: {}", message.into()) }
}

fn names(value: &str) -> Vec<String> {
    value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let mut values: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut last: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            if line.starts_with(char::is_whitespace) {
                let Some(key) = &last else { return Err(line_error(lineno, "continuation without a key")) };
                let entry = values.get_mut(key).expect("key recorded");
                entry.1.push(' ');
                entry.1.push_str(line.trim());
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(line_error(lineno, "expected `key = value`"));
            };
            let key = key.trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(line_error(lineno, format!("unknown key `{key}`")));
            }
            if values.insert(key.clone(), (lineno, value.trim().to_string())).is_some() {
                return Err(line_error(lineno, format!("duplicate key `{key}`")));
            }
            last = Some(key);
        }
        let get = |k: &str| values.get(k).map(|(l, v)| (*l, v.as_str()));
        let (src_line, src) = get("source").ok_or_else(|| line_error(0, "missing key `source`"))?;
        let source = RingContext::local(names(src)).map_err(|e| line_error(src_line, e.to_string()))?;
        let polys = |k: &str| -> Result<Vec<Polynomial>> {
            match get(k) {
                None => Ok(Vec::new()),
                Some((l, v)) => parse_polynomial_list(&source, v).map_err(|e| line_error(l, e.to_string())),
            }
        };
        let map = polys("map")?;
        if map.is_empty() {
            return Err(line_error(0, "missing key `map`"));
        }
        let ideal = polys("ideal")?;
        let kind = match get("kind") {
            None | Some((_, "map")) => ProblemKind::Map,
            Some((_, "singular")) => ProblemKind::Singular,
            Some((l, other)) => return Err(line_error(l, format!("unknown kind `{other}`"))),
        };
        let max_degree = match get("max_degree") {
            None => None,
            Some((l, v)) => Some(v.parse().map_err(|_| line_error(l, format!("invalid degree `{v}`")))?),
        };
        let pure_y_powers = match get("pure_y_powers") {
            None | Some((_, "false")) => false,
            Some((_, "true")) => true,
            Some((l, v)) => return Err(line_error(l, format!("expected true or false, found `{v}`"))),
        };
        let y_var = get("y_var").map(|(_, v)| v.to_string());
        let aliases = get("aliases").map(|(_, v)| names(v));
        let target_vars = get("target").map(|(_, v)| names(v));
        Ok(ProblemFile { kind, source, target_vars, ideal, map, max_degree, pure_y_powers, y_var, aliases })
    }

    /// The map germ problem to present; for singular germs also `det Jf`.
    pub fn map_problem(&self) -> Result<(MapGermProblem, Option<Polynomial>)> {
        match self.kind {
            ProblemKind::Map => {
                let problem = match &self.target_vars {
                    None => MapGermProblem::with_default_target(&self.source, self.ideal.clone(), self.map.clone())?,
                    Some(t) => {
                        let target = RingContext::local(t.clone())?;
                        MapGermProblem::new(&self.source, self.ideal.clone(), self.map.clone(), &target)?
                    }
                };
                Ok((problem, None))
            }
            ProblemKind::Singular => {
                if !self.ideal.is_empty() {
                    return Err(Error::Unsupported("singular restriction of a germ on a proper subvariety".into()));
                }
                let (problem, sigma) = singular_restriction(&self.source, &self.map)?;
                Ok((problem, Some(sigma)))
            }
        }
    }

    /// Index of `y_var` among the source variables.
    pub fn y_var_index(&self, name: Option<&str>) -> Result<Option<usize>> {
        match name.or(self.y_var.as_deref()) {
            None => Ok(None),
            Some(v) => self
                .source
                .variable_index(v)
                .map(Some)
                .ok_or_else(|| Error::OutOfRange(format!("`{v}` is not a source variable"))),
        }
    }
}
