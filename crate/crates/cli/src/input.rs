//! Input files: a ring header followed by `;`-terminated declarations.
//!
//! ```text
//! ring x, y;
//! ideal I = x^2, x*y;
//! poly f = x + y;
//! order M = matrix([[1, 0], [0, -1]]);
//! points P = (0, 0), (1, 1/2);
//! decomp D = monomial(I);
//! decomp E = principal((x, 1), (x - y, 2)) of I;
//! decomp F = points(P);
//! decomp G = file("g.txt") of I;
//! decomp H = components([x], [x^2, y]) of I;
//! ```
//!
//! `#` starts a comment. Names are unique across all declarations.

use std::fs;
use std::path::{Path, PathBuf};

use extracta::oracle::{
    monomial_primary_decomposition, parse_decomposition, point_ideal, principal_decomposition,
    principal_decomposition_of, PrimaryDecomposition, RationalPointSet,
};
use extracta::parse::Parser;
use extracta::{Error, Ideal, OrderSpec, Polynomial, Rational, Result, Ring};
use num_traits::ToPrimitive;

#[derive(Clone, Debug)]
pub struct Input {
    pub ring: Ring,
    pub ideals: Vec<(String, Ideal)>,
    pub polys: Vec<(String, Polynomial)>,
    pub orders: Vec<(String, OrderSpec)>,
    pub points: Vec<(String, RationalPointSet)>,
    pub decomps: Vec<(String, PrimaryDecomposition)>,
}

fn find<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

impl Input {
    fn new(ring: Ring) -> Self {
        Input {
            ring,
            ideals: Vec::new(),
            polys: Vec::new(),
            orders: Vec::new(),
            points: Vec::new(),
            decomps: Vec::new(),
        }
    }

    fn declared(&self, name: &str) -> bool {
        self.ideals.iter().any(|(n, _)| n == name)
            || self.polys.iter().any(|(n, _)| n == name)
            || self.orders.iter().any(|(n, _)| n == name)
            || self.points.iter().any(|(n, _)| n == name)
            || self.decomps.iter().any(|(n, _)| n == name)
    }

    /// An ideal by name: declared ideals first, then the ideal of a
    /// decomposition or of a point set.
    pub fn ideal(&self, name: &str) -> Option<Ideal> {
        if let Some(i) = find(&self.ideals, name) {
            return Some(i.clone());
        }
        if let Some(d) = find(&self.decomps, name) {
            return Some(d.ideal().clone());
        }
        find(&self.points, name)
            .and_then(|p| point_ideal(p).ok())
            .map(|(i, _)| i)
    }

    pub fn poly(&self, name: &str) -> Option<&Polynomial> {
        find(&self.polys, name)
    }

    pub fn order(&self, name: &str) -> Option<&OrderSpec> {
        find(&self.orders, name)
    }

    pub fn point_set(&self, name: &str) -> Option<&RationalPointSet> {
        find(&self.points, name)
    }

    pub fn decomp(&self, name: &str) -> Option<&PrimaryDecomposition> {
        find(&self.decomps, name)
    }
}

/// Parses and validates a whole input file. Relative `file(...)` paths are
/// resolved against `base_dir`.
pub fn parse_input(text: &str, base_dir: Option<&Path>) -> Result<Input> {
    let mut p = Parser::new(text)?;
    if !p.peek_ident("ring") {
        return Err(p.error("input must start with a `ring` declaration"));
    }
    p.expect_keyword("ring")?;
    let (line, col) = p.position();
    let names = p.ident_list()?;
    let ring = Ring::new(names).map_err(|e| at(line, col, e))?;
    p.expect_sym(';')?;
    let mut input = Input::new(ring);
    while !p.at_end() {
        statement(&mut p, &mut input, base_dir)?;
    }
    Ok(input)
}

fn at(line: usize, column: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            column,
            message: other.to_string(),
        },
    }
}

fn statement(p: &mut Parser, input: &mut Input, base_dir: Option<&Path>) -> Result<()> {
    let (kl, kc) = p.position();
    let kind = p.expect_ident()?;
    let (nl, nc) = p.position();
    let name = p.expect_ident()?;
    if name == "ring" {
        return Err(at(nl, nc, Error::InvalidRing("`ring` is reserved".into())));
    }
    if input.declared(&name) {
        return Err(Error::Parse {
            line: nl,
            column: nc,
            message: format!("`{name}` is already declared"),
        });
    }
    p.expect_sym('=')?;
    let ring = input.ring.clone();
    match kind.as_str() {
        "ideal" => {
            let gens = poly_list(p, &ring)?;
            input.ideals.push((name, Ideal::new(&ring, gens)?));
        }
        "poly" => {
            let f = p.polynomial(&ring)?;
            input.polys.push((name, f));
        }
        "order" => {
            let o = p.order(&ring)?;
            input.orders.push((name, o));
        }
        "points" => {
            let (l, c) = p.position();
            let mut pts = Vec::new();
            loop {
                pts.push(point(p)?);
                if !p.eat_sym(',') {
                    break;
                }
            }
            let set = RationalPointSet::new(&ring, pts).map_err(|e| at(l, c, e))?;
            input.points.push((name, set));
        }
        "decomp" => {
            let d = decomposition(p, input, base_dir)?;
            input.decomps.push((name, d));
        }
        other => {
            return Err(Error::Parse {
                line: kl,
                column: kc,
                message: format!("unknown declaration `{other}`"),
            })
        }
    }
    p.expect_sym(';')
}

fn poly_list(p: &mut Parser, ring: &Ring) -> Result<Vec<Polynomial>> {
    let mut out = vec![p.polynomial(ring)?];
    while p.eat_sym(',') {
        out.push(p.polynomial(ring)?);
    }
    Ok(out)
}

fn point(p: &mut Parser) -> Result<Vec<Rational>> {
    p.expect_sym('(')?;
    let mut coords = vec![p.rational()?];
    while p.eat_sym(',') {
        coords.push(p.rational()?);
    }
    p.expect_sym(')')?;
    Ok(coords)
}

fn reference(p: &mut Parser, input: &Input, what: &str) -> Result<(String, Ideal)> {
    let (l, c) = p.position();
    let name = p.expect_ident()?;
    match input.ideal(&name) {
        Some(i) => Ok((name, i)),
        None => Err(Error::Parse {
            line: l,
            column: c,
            message: format!("undeclared {what} `{name}`"),
        }),
    }
}

fn of_clause(p: &mut Parser, input: &Input) -> Result<Option<Ideal>> {
    if p.peek_ident("of") {
        p.expect_keyword("of")?;
        Ok(Some(reference(p, input, "ideal")?.1))
    } else {
        Ok(None)
    }
}

fn required_of(p: &mut Parser, input: &Input, source: &str) -> Result<Ideal> {
    match of_clause(p, input)? {
        Some(i) => Ok(i),
        None => Err(p.error(format!("`{source}` decompositions need `of <ideal>`"))),
    }
}

fn decomposition(p: &mut Parser, input: &Input, base_dir: Option<&Path>) -> Result<PrimaryDecomposition> {
    let ring = input.ring.clone();
    let (sl, sc) = p.position();
    let source = p.expect_ident()?;
    p.expect_sym('(')?;
    match source.as_str() {
        "monomial" => {
            let (_, i) = reference(p, input, "ideal")?;
            p.expect_sym(')')?;
            if let Some(target) = of_clause(p, input)? {
                check_same(&i, &target)?;
            }
            monomial_primary_decomposition(&i)
        }
        "points" => {
            let (l, c) = p.position();
            let name = p.expect_ident()?;
            let set = input.point_set(&name).ok_or_else(|| Error::Parse {
                line: l,
                column: c,
                message: format!("undeclared point set `{name}`"),
            })?;
            p.expect_sym(')')?;
            let (_, d) = point_ideal(set)?;
            if let Some(target) = of_clause(p, input)? {
                check_same(d.ideal(), &target)?;
            }
            Ok(d)
        }
        "principal" => {
            let mut factors = Vec::new();
            loop {
                p.expect_sym('(')?;
                let f = p.polynomial(&ring)?;
                p.expect_sym(',')?;
                let (l, c) = p.position();
                let e = p
                    .expect_int()?
                    .to_u32()
                    .filter(|&e| e > 0)
                    .ok_or_else(|| parse_error(l, c, "multiplicity must be a positive integer"))?;
                p.expect_sym(')')?;
                factors.push((f, e));
                if !p.eat_sym(',') {
                    break;
                }
            }
            p.expect_sym(')')?;
            match of_clause(p, input)? {
                None => principal_decomposition(&ring, &factors),
                Some(target) => match target.nonzero_gens().as_slice() {
                    [f] => principal_decomposition_of(f, &factors),
                    _ => Err(Error::ProductMismatch(format!("{target} is not principal"))),
                },
            }
        }
        "file" => {
            let path = PathBuf::from(p.expect_string()?);
            p.expect_sym(')')?;
            let target = required_of(p, input, "file")?;
            let full = match base_dir {
                Some(dir) if path.is_relative() => dir.join(&path),
                _ => path.clone(),
            };
            let text = fs::read_to_string(&full)
                .map_err(|e| parse_error(sl, sc, &format!("cannot read {}: {e}", full.display())))?;
            parse_decomposition(&text, &target).map_err(|e| match e {
                Error::Parse { line, column, message } => Error::Parse {
                    line,
                    column,
                    message: format!("{}: {message}", full.display()),
                },
                other => other,
            })
        }
        "components" => {
            let mut comps = Vec::new();
            loop {
                p.expect_sym('[')?;
                let gens = poly_list(p, &ring)?;
                p.expect_sym(']')?;
                comps.push(Ideal::new(&ring, gens)?);
                if !p.eat_sym(',') {
                    break;
                }
            }
            p.expect_sym(')')?;
            let target = required_of(p, input, "components")?;
            PrimaryDecomposition::user_supplied(target, comps, None)
        }
        other => Err(parse_error(sl, sc, &format!("unknown decomposition source `{other}`"))),
    }
}

fn parse_error(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

fn check_same(a: &Ideal, b: &Ideal) -> Result<()> {
    if extracta::sb::ideals_equal(a, b)? {
        Ok(())
    } else {
        Err(Error::DecompositionMismatch)
    }
}
