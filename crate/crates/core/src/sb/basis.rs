//! Standard bases for arbitrary semigroup orders.

use std::sync::OnceLock;

use num_traits::One;

use super::dim::MonomialIdeal;
use super::nf::{self, Divisor, WeakNF};
use super::sorted::OrdPoly;
use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::poly::{Ideal, Monomial, Polynomial, Rational, Ring};

/// How standard bases for non-global orders are computed. Global orders
/// always run Buchberger's algorithm with ordinary division.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SbMethod {
    /// Groebner basis of the homogenized generators under "ecart-weighted
    /// degree, then the order", dehomogenized.
    #[default]
    Homogenized,
    /// Buchberger's loop with Mora's weak normal form as the reducer.
    Mora,
}

/// Tuning switches for [`standard_basis`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SbOptions {
    /// Skip pairs `(i, j)` when some `k` has `LM(g_k) | lcm` and both
    /// `(i, k)` and `(j, k)` are already settled.
    pub chain_criterion: bool,
    pub method: SbMethod,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A standard basis of the extension of `ideal` to `Loc_>(ring)`, monic.
///
/// For global orders it is the reduced Groebner basis. For other orders the
/// homogenized method keeps every dehomogenized element (no minimization),
/// sorted by ecart; the Mora method returns a minimal basis. A unit ideal
/// yields `[1]`, the zero ideal yields `[]`.
pub fn standard_basis(ideal: &Ideal, order: &OrderSpec, opts: SbOptions) -> Result<Vec<Polynomial>> {
    order.ring().ensure_same(ideal.ring())?;
    let ring = order.ring();
    let basis = compute(ideal, order, opts);
    Ok(basis.iter().map(|g| g.to_poly(ring)).collect())
}

pub(crate) fn compute(ideal: &Ideal, order: &OrderSpec, opts: SbOptions) -> Vec<OrdPoly> {
    if order.is_global() || opts.method == SbMethod::Mora {
        buchberger(ideal, order, opts)
    } else {
        homogenized(ideal, order, opts)
    }
}

fn homogenize(f: &Polynomial, target: &Ring, order: &OrderSpec) -> Polynomial {
    let top = f.terms().map(|(m, _)| order.ecart_degree(m)).max().unwrap_or(0);
    let terms = f.terms().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e.push(u32::try_from(top - order.ecart_degree(m)).expect("degree fits"));
        (Monomial::from_exponents(&e), c.clone())
    });
    Polynomial::from_terms(target, terms).expect("exponent length matches")
}

fn dehomogenize(f: &Polynomial, target: &Ring) -> Polynomial {
    let n = target.nvars();
    let terms = f
        .terms()
        .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[..n]), c.clone()));
    Polynomial::from_terms(target, terms).expect("exponent length matches")
}

/// Lazard's construction: with `h` of weight 1 and the order's ecart
/// weights on the variables, a Groebner basis of the homogenized generators
/// under (weighted degree, then the order) dehomogenizes to a standard basis.
fn homogenized(ideal: &Ideal, order: &OrderSpec, opts: SbOptions) -> Vec<OrdPoly> {
    let ring = order.ring();
    let n = ring.nvars();
    let gens = ideal.nonzero_gens();
    if gens.is_empty() {
        return Vec::new();
    }
    let h = ring.fresh_name("h", &[]);
    let hring = ring.extend([h]).expect("fresh name");
    let mut top: Vec<i64> = (0..n)
        .map(|k| i64::try_from(order.ecart_degree(&Monomial::var(n, k))).expect("weight fits"))
        .collect();
    top.push(1);
    let mut rows = vec![top];
    for r in order.rows() {
        let mut row = r.clone();
        row.push(0);
        rows.push(row);
    }
    let horder = OrderSpec::from_matrix(&hring, rows).expect("a positive row over a full-rank block");
    let hgens: Vec<Polynomial> = gens.iter().map(|g| homogenize(g, &hring, order)).collect();
    let hideal = Ideal::new(&hring, hgens).expect("same ring");

    let mut seen: Vec<Polynomial> = Vec::new();
    let mut out: Vec<OrdPoly> = Vec::new();
    for g in buchberger(&hideal, &horder, opts) {
        let p = OrdPoly::from_poly(&dehomogenize(&g.to_poly(&hring), ring), order).monic();
        if p.lm().is_one() {
            return vec![OrdPoly::constant(Rational::one(), order)];
        }
        let key = p.to_poly(ring);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(p);
        }
    }
    out.sort_by_key(|p| (p.ecart(order), p.terms().len()));
    out
}

fn buchberger(ideal: &Ideal, order: &OrderSpec, opts: SbOptions) -> Vec<OrdPoly> {
    let one = || vec![OrdPoly::constant(Rational::one(), order)];
    let mut gens: Vec<OrdPoly> = Vec::new();
    for g in ideal.nonzero_gens() {
        let p = OrdPoly::from_poly(&g, order).monic();
        if p.lm().is_one() {
            return one();
        }
        gens.push(p);
    }
    let mut basis: Vec<Divisor> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let insert = |h: OrdPoly, basis: &mut Vec<Divisor>, pairs: &mut Vec<Pair>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: k,
                lcm: g.poly.lm().lcm(h.lm()),
            });
        }
        basis.push(Divisor::new(h, order));
    };

    for g in gens {
        let r = nf::remainder(g, &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm().is_one() {
            return one();
        }
        insert(r, &mut basis, &mut pairs);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm degree first, ties by order
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.compare(&pa.lcm, &pb.lcm))
            })
            .expect("non-empty");
        let pair = pairs.swap_remove(pos);
        let (gi, gj) = (&basis[pair.i].poly, &basis[pair.j].poly);

        if gi.lm().is_coprime(gj.lm()) {
            continue;
        }
        if opts.chain_criterion && chain_skip(&pair, &basis, &pairs) {
            continue;
        }
        let s = spoly(gi, gj, &pair.lcm, order);
        let r = nf::remainder(s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm().is_one() {
            return one();
        }
        insert(r, &mut basis, &mut pairs);
    }

    let polys: Vec<OrdPoly> = basis.into_iter().map(|d| d.poly).collect();
    let minimal = minimize(polys);
    if order.is_global() {
        interreduce(minimal, order)
    } else {
        minimal
    }
}

fn chain_skip(pair: &Pair, basis: &[Divisor], pending: &[Pair]) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pending.iter().any(|p| p.i == a && p.j == b)
    };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i && k != pair.j && g.poly.lm().divides(&pair.lcm) && !is_pending(pair.i, k) && !is_pending(pair.j, k)
    })
}

pub(crate) fn spoly(f: &OrdPoly, g: &OrdPoly, lcm: &Monomial, order: &OrderSpec) -> OrdPoly {
    let mf = lcm.div(f.lm()).expect("lcm");
    let mg = lcm.div(g.lm()).expect("lcm");
    let kf = order.key(&mf);
    let kg = order.key(&mg);
    let a = f.mul_term(&g.lead().coeff, &mf, &kf);
    a.sub_mul(&f.lead().coeff, &mg, &kg, g)
}

/// Drops elements whose leading monomial is divisible by another's.
fn minimize(mut polys: Vec<OrdPoly>) -> Vec<OrdPoly> {
    polys.sort_by(|a, b| {
        a.lm()
            .degree()
            .cmp(&b.lm().degree())
            .then(a.terms().len().cmp(&b.terms().len()))
    });
    let mut kept: Vec<OrdPoly> = Vec::new();
    for p in polys {
        if !kept.iter().any(|k| k.lm().divides(p.lm())) {
            kept.push(p);
        }
    }
    kept
}

/// Full tail reduction for global orders; the result is the reduced basis.
fn interreduce(polys: Vec<OrdPoly>, order: &OrderSpec) -> Vec<OrdPoly> {
    let mut out = Vec::with_capacity(polys.len());
    for i in 0..polys.len() {
        let others: Vec<Divisor> = polys
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| Divisor::new(p.clone(), order))
            .collect();
        let mut p = polys[i].clone();
        let lead = p.pop_lead();
        let tail = nf::remainder(p, &others, order);
        let mut r = OrdPoly::zero();
        r.push_smallest(lead);
        let r = r.add(&tail, order);
        out.push(r.monic());
    }
    out.sort_by(|a, b| order.compare(b.lm(), a.lm()));
    out
}

/// Reduced, monic Groebner basis, sorted by decreasing leading monomial.
pub fn groebner_basis(ideal: &Ideal, order: &OrderSpec) -> Result<Vec<Polynomial>> {
    if !order.is_global() {
        return Err(Error::NonGlobalOrder);
    }
    standard_basis(ideal, order, SbOptions::default())
}

/// An ideal viewed in the localization at an order, with its standard basis
/// computed on first use.
#[derive(Debug)]
pub struct LocalizedIdealHandle {
    ideal: Ideal,
    order: OrderSpec,
    basis: OnceLock<Vec<OrdPoly>>,
}

impl Clone for LocalizedIdealHandle {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        LocalizedIdealHandle {
            ideal: self.ideal.clone(),
            order: self.order.clone(),
            basis,
        }
    }
}

impl LocalizedIdealHandle {
    pub fn new(ideal: Ideal, order: OrderSpec) -> Result<Self> {
        order.ring().ensure_same(ideal.ring())?;
        Ok(LocalizedIdealHandle {
            ideal,
            order,
            basis: OnceLock::new(),
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    fn sorted_basis(&self) -> &[OrdPoly] {
        self.basis
            .get_or_init(|| compute(&self.ideal, &self.order, SbOptions::default()))
    }

    pub fn standard_basis(&self) -> Vec<Polynomial> {
        let ring = self.order.ring();
        self.sorted_basis().iter().map(|g| g.to_poly(ring)).collect()
    }

    pub fn is_whole_ring(&self) -> bool {
        self.sorted_basis().iter().any(|g| g.lm().is_one())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.order.ring().ensure_same(f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_whole_ring() {
            return Ok(true);
        }
        let divisors: Vec<Divisor> = self
            .sorted_basis()
            .iter()
            .map(|p| Divisor::new(p.clone(), &self.order))
            .collect();
        let r = nf::remainder(OrdPoly::from_poly(f, &self.order), &divisors, &self.order);
        Ok(r.is_zero())
    }

    pub fn leading_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.order.ring().nvars(),
            self.sorted_basis().iter().map(|g| g.lm().clone()),
        )
    }

    pub fn weak_nf(&self, f: &Polynomial) -> Result<WeakNF> {
        let basis = self.standard_basis();
        nf::mora_weak_nf(f, &basis, &self.order)
    }
}

/// Whether `f` lies in the extension of `ideal` to `Loc_>(ring)`.
pub fn loc_membership(f: &Polynomial, ideal: &Ideal, order: &OrderSpec) -> Result<bool> {
    LocalizedIdealHandle::new(ideal.clone(), order.clone())?.contains(f)
}

/// Whether the extension of `ideal` to `Loc_>(ring)` is the whole ring.
pub fn is_loc_whole_ring(ideal: &Ideal, order: &OrderSpec) -> Result<bool> {
    Ok(LocalizedIdealHandle::new(ideal.clone(), order.clone())?.is_whole_ring())
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

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    /// Every S-polynomial of `basis` must have weak normal form zero.
    fn buchberger_closed(basis: &[Polynomial], order: &OrderSpec) -> bool {
        let ord: Vec<OrdPoly> = basis.iter().map(|g| OrdPoly::from_poly(g, order)).collect();
        let divs: Vec<Divisor> = ord.iter().map(|p| Divisor::new(p.clone(), order)).collect();
        for i in 0..ord.len() {
            for j in i + 1..ord.len() {
                let l = ord[i].lm().lcm(ord[j].lm());
                let s = spoly(&ord[i], &ord[j], &l, order);
                if !nf::remainder(s, &divs, order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn global_reduced_basis() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2 + y", "x*y - 1"]);
        let o = OrderSpec::lex(&r);
        let gb = groebner_basis(&i, &o).unwrap();
        let shown: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["y^2 + x", "y^3 + 1"]);
        assert!(buchberger_closed(&gb, &o));
    }

    #[test]
    fn local_unit_detection() {
        let r = ring(&["x", "y"]);
        let o = OrderSpec::negdegrevlex(&r);
        assert!(is_loc_whole_ring(&ideal(&r, &["1 + x"]), &o).unwrap());
        assert!(!is_loc_whole_ring(&ideal(&r, &["x + x^2", "y"]), &o).unwrap());
        // x(1 + x) generates <x> locally
        assert!(loc_membership(&p(&r, "x"), &ideal(&r, &["x + x^2"]), &o).unwrap());
        assert!(!loc_membership(&p(&r, "x"), &ideal(&r, &["x + x^2"]), &OrderSpec::degrevlex(&r)).unwrap());
    }

    #[test]
    fn local_basis_closed() {
        let r = ring(&["x", "y"]);
        let o = OrderSpec::negdegrevlex(&r);
        let i = ideal(&r, &["x^3 + y^2 + x*y^3", "x*y + y^4"]);
        let sb = standard_basis(&i, &o, SbOptions::default()).unwrap();
        assert!(buchberger_closed(&sb, &o));
        let lead = |b: &[Polynomial]| MonomialIdeal::new(2, b.iter().map(|g| o.leading_term(g).unwrap().0));
        for opts in [
            SbOptions {
                chain_criterion: true,
                method: SbMethod::Homogenized,
            },
            SbOptions {
                chain_criterion: false,
                method: SbMethod::Mora,
            },
            SbOptions {
                chain_criterion: true,
                method: SbMethod::Mora,
            },
        ] {
            let other = standard_basis(&i, &o, opts).unwrap();
            assert!(buchberger_closed(&other, &o));
            assert_eq!(lead(&sb), lead(&other), "{opts:?}");
        }
    }

    #[test]
    fn mixed_control_order() {
        let r = ring(&["t", "x"]);
        let o = parse_order(&r, "matrix([[-1,0],[0,1]])").unwrap();
        assert!(o.is_control());
        // t - x in Loc: the unit ideal? no, 1 + t is a unit, so t*x - x = -(1 - t) x gives x
        let i = ideal(&r, &["t*x - x"]);
        assert!(loc_membership(&p(&r, "x"), &i, &o).unwrap());
        assert!(!loc_membership(&p(&r, "t"), &i, &o).unwrap());
    }

    #[test]
    fn zero_and_unit() {
        let r = ring(&["x"]);
        let o = OrderSpec::degrevlex(&r);
        assert!(standard_basis(&Ideal::zero(&r), &o, SbOptions::default())
            .unwrap()
            .is_empty());
        let u = standard_basis(&Ideal::unit(&r), &o, SbOptions::default()).unwrap();
        assert_eq!(u, vec![Polynomial::one(&r)]);
        assert!(matches!(
            groebner_basis(&Ideal::unit(&r), &OrderSpec::neglex(&r)),
            Err(Error::NonGlobalOrder)
        ));
    }
}
