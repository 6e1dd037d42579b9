//! Text format for decompositions.
//!
//! ```text
//! provenance: user-supplied
//! component:
//! x
//! radical:
//! x
//! component:
//! x^2
//! x*y
//! y^2
//! ```
//!
//! One generator per line; `radical:` optionally follows a component and
//! annotates it. `#` starts a comment.

use std::fmt::Write as _;

use super::{PrimaryDecomposition, Provenance};
use crate::error::{Error, Result};
use crate::parse::parse_polynomial;
use crate::poly::{Ideal, Polynomial};

enum Section {
    None,
    Component,
    Radical,
}

fn at(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

/// Reads a decomposition of `ideal` and verifies it.
pub fn parse_decomposition(text: &str, ideal: &Ideal) -> Result<PrimaryDecomposition> {
    let ring = ideal.ring();
    let mut provenance = None;
    let mut comps: Vec<Vec<Polynomial>> = Vec::new();
    let mut rads: Vec<Option<Vec<Polynomial>>> = Vec::new();
    let mut section = Section::None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("provenance:") {
            let name = rest.trim();
            provenance =
                Some(Provenance::from_name(name).ok_or_else(|| at(line_no, format!("unknown provenance `{name}`")))?);
            continue;
        }
        match line {
            "component:" => {
                comps.push(Vec::new());
                rads.push(None);
                section = Section::Component;
            }
            "radical:" => {
                let Some(slot) = rads.last_mut() else {
                    return Err(at(line_no, "`radical:` before any component"));
                };
                if slot.is_some() {
                    return Err(at(line_no, "second `radical:` for one component"));
                }
                *slot = Some(Vec::new());
                section = Section::Radical;
            }
            _ => {
                let p = parse_polynomial(ring, line).map_err(|e| match e {
                    Error::Parse { column, message, .. } => Error::Parse {
                        line: line_no,
                        column,
                        message,
                    },
                    other => other,
                })?;
                match section {
                    Section::None => return Err(at(line_no, "generator outside a `component:` block")),
                    Section::Component => comps.last_mut().expect("open component").push(p),
                    Section::Radical => rads.last_mut().and_then(Option::as_mut).expect("open radical").push(p),
                }
            }
        }
    }
    let provenance = provenance.ok_or_else(|| at(1, "missing `provenance:` line"))?;
    let to_ideal = |gens: Vec<Polynomial>| {
        if gens.is_empty() {
            Ok(Ideal::zero(ring))
        } else {
            Ideal::new(ring, gens)
        }
    };
    let components = comps.into_iter().map(to_ideal).collect::<Result<Vec<_>>>()?;
    let radicals = if rads.iter().all(Option::is_some) && !rads.is_empty() {
        Some(
            rads.into_iter()
                .map(|r| to_ideal(r.expect("checked")))
                .collect::<Result<Vec<_>>>()?,
        )
    } else if rads.iter().any(Option::is_some) {
        return Err(Error::RadicalUnavailable(
            "radical annotations must cover every component or none".into(),
        ));
    } else {
        None
    };
    PrimaryDecomposition::with_provenance(ideal.clone(), components, radicals, provenance)
}

/// Writes a decomposition in the format read by [`parse_decomposition`].
pub fn format_decomposition(d: &PrimaryDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "provenance: {}", d.provenance());
    let radicals = d.radicals.as_ref();
    for (i, c) in d.components().iter().enumerate() {
        out.push_str("component:\n");
        for g in c.nonzero_gens() {
            let _ = writeln!(out, "{g}");
        }
        if let Some(r) = radicals {
            out.push_str("radical:\n");
            for g in r[i].nonzero_gens() {
                let _ = writeln!(out, "{g}");
            }
        }
    }
    out
}
