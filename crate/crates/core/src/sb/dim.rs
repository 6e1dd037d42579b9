//! Krull dimension through leading monomial ideals.

use std::fmt;

use super::basis::{groebner_basis, LocalizedIdealHandle};
use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::poly::{Ideal, Monomial};

/// A monomial ideal stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    min_gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding non-minimal ones.
    pub fn new<I: IntoIterator<Item = Monomial>>(nvars: usize, gens: I) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut min_gens: Vec<Monomial> = Vec::new();
        for m in all {
            if !min_gens.iter().any(|g| g.divides(&m)) {
                min_gens.push(m);
            }
        }
        min_gens.sort();
        MonomialIdeal { nvars, min_gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn min_gens(&self) -> &[Monomial] {
        &self.min_gens
    }

    pub fn is_unit(&self) -> bool {
        self.min_gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.min_gens.iter().any(|g| g.divides(m))
    }

    /// Supports of the generators as bitmasks.
    fn supports(&self) -> Vec<u64> {
        self.min_gens
            .iter()
            .map(|g| g.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect()
    }

    /// Whether no generator lives in `K[u]`, for `u` given as a bitmask.
    fn independent(supports: &[u64], u: u64) -> bool {
        supports.iter().all(|&s| s & !u != 0)
    }

    /// Inclusion-maximal independent variable sets, as sorted index lists.
    pub fn maximal_independent_sets(&self) -> Vec<Vec<usize>> {
        if self.is_unit() {
            return Vec::new();
        }
        assert!(self.nvars < 64, "too many variables for subset search");
        let supports = self.supports();
        let n = self.nvars;
        let mut found: Vec<u64> = Vec::new();
        // largest sets first, so maximality is a subset check against earlier finds
        let mut masks: Vec<u64> = (0..(1u64 << n)).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        for u in masks {
            if Self::independent(&supports, u) && !found.iter().any(|&f| f & u == u) {
                found.push(u);
            }
        }
        let mut sets: Vec<Vec<usize>> = found
            .into_iter()
            .map(|u| (0..n).filter(|i| u & (1 << i) != 0).collect())
            .collect();
        sets.sort();
        sets
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.min_gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let e = g.exponents();
            write!(f, "[")?;
            for (i, x) in e.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ">")
    }
}

/// Size of the largest variable set containing no generator's support;
/// `-1` for the unit ideal.
pub fn dim_monomial_ideal(m: &MonomialIdeal) -> i64 {
    if m.is_unit() {
        return -1;
    }
    let n = m.nvars;
    if m.min_gens.is_empty() {
        return n as i64;
    }
    let supports = m.supports();
    for size in (0..=n).rev() {
        if subsets_of_size(n, size).any(|u| MonomialIdeal::independent(&supports, u)) {
            return size as i64;
        }
    }
    unreachable!("the empty set is independent for a proper ideal")
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    (0..(1u64 << n)).filter(move |m| m.count_ones() as usize == k)
}

fn leading_ideal_global(ideal: &Ideal, order: &OrderSpec) -> Result<MonomialIdeal> {
    let gb = groebner_basis(ideal, order)?;
    let lms = gb
        .iter()
        .map(|g| order.leading_term(g).map(|(m, _)| m))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonomialIdeal::new(ideal.ring().nvars(), lms))
}

/// Maximal strongly independent sets modulo `ideal` under a global order.
pub fn strongly_independent_sets(ideal: &Ideal, order: &OrderSpec) -> Result<Vec<Vec<usize>>> {
    order.ring().ensure_same(ideal.ring())?;
    Ok(leading_ideal_global(ideal, order)?.maximal_independent_sets())
}

/// Krull dimension of `A / ideal`, `-1` for the unit ideal.
pub fn dim_ideal(ideal: &Ideal) -> i64 {
    let order = OrderSpec::degrevlex(ideal.ring());
    let lead = leading_ideal_global(ideal, &order).expect("degrevlex is global");
    dim_monomial_ideal(&lead)
}

/// Dimension of the leading ideal of the handle's standard basis.
///
/// Only defined for control orders; elsewhere the leading ideal can have the
/// wrong dimension (e.g. `<xy - 1>` under `diag(1, -1)`).
pub fn dim_leading_ideal_loc(h: &LocalizedIdealHandle) -> Result<i64> {
    if !h.order().is_control() {
        return Err(Error::NonControlOrder(
            "leading-ideal dimension is undefined for non-control orders".into(),
        ));
    }
    Ok(dim_monomial_ideal(&h.leading_ideal()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_order, parse_polynomial};
    use crate::poly::Ring;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().map(|s| s.to_string())).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn monomial_dimension() {
        let m = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1]), mono(&[3, 1])]);
        assert_eq!(m.min_gens().len(), 2);
        assert_eq!(dim_monomial_ideal(&m), 1);
        assert_eq!(dim_monomial_ideal(&MonomialIdeal::new(3, [mono(&[0, 0, 0])])), -1);
        assert_eq!(dim_monomial_ideal(&MonomialIdeal::new(3, [])), 3);
    }

    #[test]
    fn independent_sets() {
        let r = ring(&["x", "y"]);
        let o = OrderSpec::degrevlex(&r);
        assert_eq!(
            strongly_independent_sets(&ideal(&r, &["x*y"]), &o).unwrap(),
            vec![vec![0], vec![1]]
        );
        assert_eq!(
            strongly_independent_sets(&ideal(&r, &["x"]), &o).unwrap(),
            vec![vec![1]]
        );
        assert_eq!(
            strongly_independent_sets(&Ideal::zero(&r), &o).unwrap(),
            vec![vec![0, 1]]
        );
        assert!(strongly_independent_sets(&ideal(&r, &["x"]), &OrderSpec::neglex(&r)).is_err());
    }

    #[test]
    fn ideal_dimension() {
        let r = ring(&["x", "y"]);
        assert_eq!(dim_ideal(&ideal(&r, &["x^2", "x*y"])), 1);
        assert_eq!(dim_ideal(&ideal(&r, &["x*y - 1"])), 1);
        assert_eq!(dim_ideal(&ideal(&r, &["x - 1", "y"])), 0);
        assert_eq!(dim_ideal(&ideal(&r, &["x", "x - 1"])), -1);
    }

    #[test]
    fn localized_dimension() {
        let r1 = ring(&["x"]);
        let h = LocalizedIdealHandle::new(ideal(&r1, &["x - x^2"]), OrderSpec::neglex(&r1)).unwrap();
        assert_eq!(dim_leading_ideal_loc(&h).unwrap(), 0);

        let r = ring(&["x", "y"]);
        let o = parse_order(&r, "matrix([[0,-1],[1,0]])").unwrap();
        let h = LocalizedIdealHandle::new(ideal(&r, &["x*(y - 1)"]), o).unwrap();
        assert_eq!(dim_leading_ideal_loc(&h).unwrap(), 1);

        let o = parse_order(&r, "matrix([[1,0],[0,-1]])").unwrap();
        let h = LocalizedIdealHandle::new(ideal(&r, &["x*y - 1"]), o).unwrap();
        assert!(matches!(dim_leading_ideal_loc(&h), Err(Error::NonControlOrder(_))));
    }
}
