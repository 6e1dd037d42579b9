use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, Ring};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored; the zero polynomial has no terms.
/// Storage order carries no meaning, callers pick a monomial order when they
/// need leading terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), index), Rational::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::variable(ring, ring.require_index(name)?))
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    got: m.nvars(),
                });
            }
            accumulate(&mut map, m, c);
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: map,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Maximal total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Indices of the variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at a rational point given in ring-variable order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Re-expresses this polynomial in `target`, matching variables by name.
    ///
    /// Every variable that actually occurs must exist in `target`.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let map = self.variable_map(target, &self.support())?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(target.nvars());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    out.set(map[i].expect("support mapped"), e);
                }
            }
            (out, c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    fn variable_map(&self, target: &Ring, needed: &[usize]) -> Result<Vec<Option<usize>>> {
        let map: Vec<Option<usize>> = self.ring.var_names().iter().map(|n| target.index_of(n)).collect();
        for &i in needed {
            if map[i].is_none() {
                return Err(Error::MissingTargetVariable(self.ring.var_name(i).to_string()));
            }
        }
        Ok(map)
    }

    /// Simultaneous substitution `f|_{v1=g1,...}` into `target`.
    ///
    /// Unassigned variables are carried over by name; each replacement must
    /// already live in `target`.
    pub fn substitute(&self, assignments: &[(&str, Polynomial)], target: &Ring) -> Result<Polynomial> {
        let mut replacement: Vec<Option<&Polynomial>> = vec![None; self.ring.nvars()];
        for (name, g) in assignments {
            let idx = self.ring.require_index(name)?;
            g.ring.ensure_same(target)?;
            replacement[idx] = Some(g);
        }
        let unassigned: Vec<usize> = self
            .support()
            .into_iter()
            .filter(|&i| replacement[i].is_none())
            .collect();
        let map = self.variable_map(target, &unassigned)?;

        // powers of each replacement, built lazily
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.nvars()];
        let mut result = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut mono = Monomial::one(target.nvars());
            let mut factor = Polynomial::one(target);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match replacement[i] {
                    Some(g) => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(Polynomial::one(target));
                        }
                        while cache.len() <= e as usize {
                            let next = cache.last().expect("non-empty") * g;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                    }
                    None => mono.set(map[i].expect("unassigned mapped"), e),
                }
            }
            result = &result + &factor.mul_term(&mono, c);
        }
        Ok(result)
    }

    /// Divides every coefficient by the coefficient of `m` (used to make polynomials monic).
    pub fn normalize_by(&self, m: &Monomial) -> Polynomial {
        match self.terms.get(m) {
            Some(c) if !c.is_zero() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Terms sorted by degree-reverse-lexicographic order, largest first.
    fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| degrevlex_cmp(b.0, a.0));
        terms
    }

    pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, ring: &Ring, terms: I) -> fmt::Result
    where
        I: IntoIterator<Item = (&'a Monomial, &'a Rational)>,
    {
        let mut first = true;
        for (m, c) in terms {
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first_var = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", ring.var_name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Polynomial::write_terms(f, &self.ring, self.display_terms())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.ring)
    }
}

// Operator forms panic on ring mismatch; use the `try_` methods for checked arithmetic.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
