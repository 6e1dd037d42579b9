use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A polynomial ring over the rationals, identified by its ordered variable names.
///
/// Cloning is cheap; rings compare equal when their variable lists are equal.
#[derive(Clone)]
pub struct Ring {
    names: Arc<[String]>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Ring { names: names.into() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn var_name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A name derived from `base` that does not clash with this ring or `taken`.
    ///
    /// Collisions are resolved by appending underscores (`t1`, `t1_`, `t1__`, ...).
    pub fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() || taken.contains(&name) {
            name.push('_');
        }
        name
    }

    /// This ring with `extra` variables appended.
    pub fn extend<I, S>(&self, extra: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ring::new(self.names.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }

    /// This ring with the named variables removed.
    pub fn without(&self, drop: &[String]) -> Result<Ring> {
        for d in drop {
            self.require_index(d)?;
        }
        Ring::new(self.names.iter().filter(|n| !drop.contains(n)).cloned())
    }

    pub(crate) fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}
