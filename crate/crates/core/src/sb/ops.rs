//! Ideal operations over the polynomial ring, built on Groebner bases.

use num_traits::One;

use super::basis::groebner_basis;
use super::nf::{self, Divisor};
use super::sorted::OrdPoly;
use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::poly::{Ideal, Polynomial, Rational, Ring};

/// Reduced degrevlex Groebner basis.
pub fn reduced_gb(ideal: &Ideal) -> Vec<Polynomial> {
    groebner_basis(ideal, &OrderSpec::degrevlex(ideal.ring())).expect("degrevlex is global")
}

/// Whether `I + J` is the unit ideal.
pub fn ideal_sum_is_whole_ring(i: &Ideal, j: &Ideal) -> Result<bool> {
    let sum = i.sum(j)?;
    Ok(reduced_gb(&sum).iter().any(Polynomial::is_constant))
}

/// Equality of ideals, decided by their reduced degrevlex bases.
pub fn ideals_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.ring().ensure_same(j.ring())?;
    Ok(reduced_gb(i) == reduced_gb(j))
}

/// Ordinary ideal membership in the polynomial ring.
pub fn ideal_contains(ideal: &Ideal, f: &Polynomial) -> Result<bool> {
    ideal.ring().ensure_same(f.ring())?;
    let order = OrderSpec::degrevlex(ideal.ring());
    Ok(remainder_mod(f, &reduced_gb(ideal), &order).is_zero())
}

/// Whether every generator of `inner` lies in `outer`.
pub fn ideal_is_subset(inner: &Ideal, outer: &Ideal) -> Result<bool> {
    inner.ring().ensure_same(outer.ring())?;
    let order = OrderSpec::degrevlex(outer.ring());
    let gb = reduced_gb(outer);
    Ok(inner.gens().iter().all(|g| remainder_mod(g, &gb, &order).is_zero()))
}

fn remainder_mod(f: &Polynomial, basis: &[Polynomial], order: &OrderSpec) -> Polynomial {
    let divs: Vec<Divisor> = basis
        .iter()
        .map(|g| Divisor::new(OrdPoly::from_poly(g, order), order))
        .collect();
    nf::remainder(OrdPoly::from_poly(f, order), &divs, order).to_poly(order.ring())
}

/// `I ∩ K[remaining variables]`, as an ideal of the ring without `drop_vars`.
pub fn eliminate(ideal: &Ideal, drop_vars: &[String]) -> Result<Ideal> {
    let ring = ideal.ring();
    let target = ring.without(drop_vars)?;
    if drop_vars.is_empty() {
        return Ok(ideal.clone());
    }
    let keep: Vec<String> = target.var_names().to_vec();
    let drop_ring = Ring::new(drop_vars.iter().cloned())?;
    let mut blocks = vec![OrderSpec::degrevlex(&drop_ring)];
    if !keep.is_empty() {
        blocks.push(OrderSpec::degrevlex(&target));
    }
    let order = OrderSpec::block(ring, &blocks)?;
    let drop_idx: Vec<usize> = drop_vars.iter().map(|d| ring.require_index(d)).collect::<Result<_>>()?;
    let gens: Vec<Polynomial> = groebner_basis(ideal, &order)?
        .into_iter()
        .filter(|g| g.support().iter().all(|i| !drop_idx.contains(i)))
        .map(|g| g.embed(&target))
        .collect::<Result<_>>()?;
    if gens.is_empty() {
        return Ok(Ideal::zero(&target));
    }
    Ideal::new(&target, gens)
}

/// `I ∩ J` via elimination of `z` from `z I + (1 - z) J`.
pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.ring().ensure_same(j.ring())?;
    let ring = i.ring();
    let z = ring.fresh_name("z", &[]);
    let big = ring.extend([z.clone()])?;
    let zv = Polynomial::var(&big, &z)?;
    let one_minus_z = &Polynomial::one(&big) - &zv;
    let mut gens = Vec::new();
    for g in i.nonzero_gens() {
        gens.push(&zv * &g.embed(&big)?);
    }
    for g in j.nonzero_gens() {
        gens.push(&one_minus_z * &g.embed(&big)?);
    }
    if gens.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    let e = eliminate(&Ideal::new(&big, gens)?, &[z])?;
    // the variables of `e` are those of `ring`, in the same order
    Ideal::new(ring, e.gens().iter().map(|g| g.embed(ring)).collect::<Result<_>>()?)
}

/// Whether `f` lies in the radical of `I`, by the Rabinowitsch trick.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.ring().ensure_same(f.ring())?;
    if f.is_zero() {
        return Ok(true);
    }
    let ring = ideal.ring();
    let z = ring.fresh_name("z", &[]);
    let big = ring.extend([z.clone()])?;
    let zv = Polynomial::var(&big, &z)?;
    let rab = &Polynomial::one(&big) - &(&zv * &f.embed(&big)?);
    let lifted = ideal.embed(&big)?.with_generator(rab)?;
    Ok(reduced_gb(&lifted).iter().any(Polynomial::is_constant))
}

/// `f / g` when `g` divides `f` exactly.
pub fn exact_divide(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.ring().ensure_same(g.ring())?;
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let order = OrderSpec::degrevlex(f.ring());
    let nf = nf::mora_weak_nf(f, std::slice::from_ref(g), &order)?;
    if !nf.remainder.is_zero() {
        return Err(Error::NotDivisible(format!("{g} does not divide {f}")));
    }
    debug_assert!(nf.unit == Polynomial::constant(f.ring(), Rational::one()));
    Ok(nf.quotients.into_iter().next().expect("one divisor"))
}

/// The colon ideal `I : J`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.ring().ensure_same(j.ring())?;
    let ring = i.ring();
    let mut acc: Option<Ideal> = None;
    for g in j.nonzero_gens() {
        let meet = ideal_intersection(i, &Ideal::new(ring, vec![g.clone()])?)?;
        let q: Vec<Polynomial> = meet
            .nonzero_gens()
            .iter()
            .map(|h| exact_divide(h, &g))
            .collect::<Result<_>>()?;
        let q = if q.is_empty() {
            Ideal::zero(ring)
        } else {
            Ideal::new(ring, q)?
        };
        acc = Some(match acc {
            None => q,
            Some(a) => ideal_intersection(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ring)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().map(|s| s.to_string())).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    fn shown(gens: &[Polynomial]) -> Vec<String> {
        gens.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn gb_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(shown(&reduced_gb(&ideal(&r, &["x^2", "x*y"]))), vec!["x^2", "x*y"]);
        let lex = OrderSpec::lex(&r);
        assert_eq!(
            shown(&groebner_basis(&ideal(&r, &["x + y", "x - y"]), &lex).unwrap()),
            vec!["x", "y"]
        );
        assert_eq!(shown(&reduced_gb(&ideal(&r, &["x", "x - 1"]))), vec!["1"]);
    }

    #[test]
    fn sums() {
        let r = ring(&["x", "y"]);
        let j = ideal(&r, &["x", "y - 1"]);
        assert!(ideal_sum_is_whole_ring(&ideal(&r, &["x^2", "x*y", "y^2"]), &j).unwrap());
        assert!(!ideal_sum_is_whole_ring(&ideal(&r, &["x"]), &j).unwrap());
        assert!(ideal_sum_is_whole_ring(&ideal(&r, &["x"]), &Ideal::unit(&r)).unwrap());
    }

    #[test]
    fn elimination() {
        let r = ring(&["x", "y", "z"]);
        let e = eliminate(&ideal(&r, &["z - x*y"]), &["z".into()]).unwrap();
        assert!(e.nonzero_gens().is_empty());
        assert_eq!(e.ring().var_names(), &["x".to_string(), "y".to_string()]);
        let r2 = ring(&["x", "z"]);
        let e = eliminate(&ideal(&r2, &["z*x", "z - 1"]), &["z".into()]).unwrap();
        assert_eq!(shown(e.gens()), vec!["x"]);
        let e = eliminate(&ideal(&r2, &["x"]), &[]).unwrap();
        assert_eq!(shown(e.gens()), vec!["x"]);
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let i = ideal_intersection(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_eq!(shown(&reduced_gb(&i)), vec!["x*y"]);
        let i = ideal_intersection(&ideal(&r, &["x"]), &ideal(&r, &["x^2", "y"])).unwrap();
        assert_eq!(shown(&reduced_gb(&i)), vec!["x^2", "x*y"]);
        let a = ideal(&r, &["x^2 - y", "x*y + 1"]);
        assert!(ideals_equal(&ideal_intersection(&a, &a).unwrap(), &a).unwrap());
    }

    #[test]
    fn radicals() {
        let r = ring(&["x", "y"]);
        assert!(radical_membership(&p(&r, "x"), &ideal(&r, &["x^2"])).unwrap());
        assert!(radical_membership(&p(&r, "x + y"), &ideal(&r, &["x^2", "y^2"])).unwrap());
        assert!(!radical_membership(&p(&r, "x"), &ideal(&r, &["y"])).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        let q = ideal_quotient(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["x"])).unwrap();
        assert_eq!(shown(&reduced_gb(&q)), vec!["x", "y"]);
        assert_eq!(
            exact_divide(&p(&r, "x^2 - y^2"), &p(&r, "x + y")).unwrap(),
            p(&r, "x - y")
        );
        assert!(exact_divide(&p(&r, "x"), &p(&r, "y")).is_err());
    }
}
