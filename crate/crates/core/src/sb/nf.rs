//! Weak normal forms.
//!
//! For a global order this is ordinary multivariate division. For any other
//! semigroup order it is Mora's reduction: the reducer with the smallest
//! ecart (`deg f - deg LT(f)`) is chosen, and whenever that ecart exceeds the
//! ecart of the current remainder, the remainder itself joins the set of
//! reducers. The result satisfies `unit * f = sum q_i g_i + r` with `LT(unit)`
//! a nonzero constant.

use std::cell::Cell;

use num_traits::One;

use super::sorted::OrdPoly;
use crate::error::Result;
use crate::order::OrderSpec;
use crate::poly::{Monomial, Polynomial, Rational};

/// A weak normal form together with its certificate.
#[derive(Clone, Debug)]
pub struct WeakNF {
    pub remainder: Polynomial,
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
}

impl WeakNF {
    /// Checks `unit * f - sum quotients_i * divisors_i - remainder == 0`, that
    /// the unit has a nonzero constant leading term, and that no divisor's
    /// leading monomial divides the remainder's.
    pub fn verify(&self, f: &Polynomial, divisors: &[Polynomial], order: &OrderSpec) -> bool {
        if self.quotients.len() != divisors.len() {
            return false;
        }
        let mut lhs = &self.unit * f;
        for (q, g) in self.quotients.iter().zip(divisors) {
            lhs = &lhs - &(q * g);
        }
        lhs = &lhs - &self.remainder;
        if !lhs.is_zero() {
            return false;
        }
        match order.leading_term(&self.unit) {
            Ok((m, _)) if m.is_one() => {}
            _ => return false,
        }
        if order.is_control() {
            // unit - LC(unit) must lie in the ideal of the local variables
            let locals = order.local_vars();
            let ok = self
                .unit
                .terms()
                .filter(|(m, _)| !m.is_one())
                .all(|(m, _)| locals.iter().any(|&i| m.exponents()[i] > 0));
            if !ok {
                return false;
            }
        }
        if let Ok((lm, _)) = order.leading_term(&self.remainder) {
            let irreducible = divisors
                .iter()
                .filter(|g| !g.is_zero())
                .all(|g| !order.leading_term(g).expect("nonzero").0.divides(&lm));
            if !irreducible {
                return false;
            }
        }
        true
    }
}

/// A reducer with its ecart computed once.
#[derive(Clone, Debug)]
pub(crate) struct Divisor {
    pub poly: OrdPoly,
    pub ecart: u64,
}

impl Divisor {
    pub fn new(poly: OrdPoly, order: &OrderSpec) -> Self {
        let ecart = poly.ecart(order);
        Divisor { poly, ecart }
    }
}

pub(crate) struct Certificate {
    pub unit: OrdPoly,
    pub quotients: Vec<OrdPoly>,
}

thread_local! {
    static AUDIT: Cell<bool> = const { Cell::new(false) };
    static CHECKED: Cell<u64> = const { Cell::new(0) };
    static FAILED: Cell<u64> = const { Cell::new(0) };
}

/// Certificate auditing for every reduction performed on the current thread.
///
/// While enabled, each internal reduction also builds its certificate and
/// checks the identity `unit * f = sum q_i g_i + r` exactly.
pub mod audit {
    use super::*;

    /// Counts gathered while an [`AuditScope`] was active.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
    pub struct AuditStats {
        pub checked: u64,
        pub failed: u64,
    }

    /// Enables auditing on this thread until dropped.
    pub struct AuditScope {
        previous: bool,
    }

    impl AuditScope {
        pub fn new() -> Self {
            CHECKED.with(|c| c.set(0));
            FAILED.with(|c| c.set(0));
            let previous = AUDIT.with(|a| a.replace(true));
            AuditScope { previous }
        }

        pub fn stats(&self) -> AuditStats {
            AuditStats {
                checked: CHECKED.with(Cell::get),
                failed: FAILED.with(Cell::get),
            }
        }
    }

    impl Default for AuditScope {
        fn default() -> Self {
            Self::new()
        }
    }

    impl Drop for AuditScope {
        fn drop(&mut self) {
            AUDIT.with(|a| a.set(self.previous));
        }
    }

    pub(crate) fn enabled() -> bool {
        AUDIT.with(Cell::get)
    }

    pub(crate) fn record(ok: bool) {
        CHECKED.with(|c| c.set(c.get() + 1));
        if !ok {
            FAILED.with(|c| c.set(c.get() + 1));
        }
    }
}

/// Weak normal form of `f` with respect to `divisors` under `order`.
pub fn mora_weak_nf(f: &Polynomial, divisors: &[Polynomial], order: &OrderSpec) -> Result<WeakNF> {
    let ring = order.ring();
    ring.ensure_same(f.ring())?;
    for g in divisors {
        ring.ensure_same(g.ring())?;
    }
    // zero divisors keep their slot (quotient 0) but never reduce anything
    let reducers: Vec<Option<Divisor>> = divisors
        .iter()
        .map(|g| (!g.is_zero()).then(|| Divisor::new(OrdPoly::from_poly(g, order), order)))
        .collect();
    let (r, cert) = reduce_slots(OrdPoly::from_poly(f, order), &reducers, order, true);
    let cert = cert.expect("tracking requested");
    let nf = WeakNF {
        remainder: r.to_poly(ring),
        unit: cert.unit.to_poly(ring),
        quotients: cert.quotients.iter().map(|q| q.to_poly(ring)).collect(),
    };
    if audit::enabled() {
        audit::record(nf.verify(f, divisors, order));
    }
    Ok(nf)
}

/// Remainder only; certificates are built and checked when auditing is on.
pub(crate) fn remainder(f: OrdPoly, divisors: &[Divisor], order: &OrderSpec) -> OrdPoly {
    if audit::enabled() {
        let ring = order.ring();
        let fp = f.to_poly(ring);
        let gp: Vec<Polynomial> = divisors.iter().map(|d| d.poly.to_poly(ring)).collect();
        let slots: Vec<Option<Divisor>> = divisors.iter().cloned().map(Some).collect();
        let (r, cert) = reduce_slots(f, &slots, order, true);
        let cert = cert.expect("tracking requested");
        let nf = WeakNF {
            remainder: r.to_poly(ring),
            unit: cert.unit.to_poly(ring),
            quotients: cert.quotients.iter().map(|q| q.to_poly(ring)).collect(),
        };
        audit::record(nf.verify(&fp, &gp, order));
        r
    } else {
        let slots: Vec<Option<Divisor>> = divisors.iter().cloned().map(Some).collect();
        reduce_slots(f, &slots, order, false).0
    }
}

fn reduce_slots(
    f: OrdPoly,
    divisors: &[Option<Divisor>],
    order: &OrderSpec,
    track: bool,
) -> (OrdPoly, Option<Certificate>) {
    if order.is_global() {
        divide(f, divisors, order, track)
    } else {
        mora(f, divisors, order, track)
    }
}

fn quotient_factor(h: &OrdPoly, g: &OrdPoly) -> (Rational, Monomial) {
    let c = &h.lead().coeff / &g.lead().coeff;
    let m = h.lm().div(g.lm()).expect("divisibility checked");
    (c, m)
}

/// Ordinary division: reduce by the first divisor whose leading monomial
/// divides the current leading monomial, otherwise move that term to the
/// remainder.
fn divide(f: OrdPoly, divisors: &[Option<Divisor>], order: &OrderSpec, track: bool) -> (OrdPoly, Option<Certificate>) {
    let mut p = f;
    let mut r = OrdPoly::zero();
    let mut quotients = if track {
        vec![OrdPoly::zero(); divisors.len()]
    } else {
        Vec::new()
    };
    while !p.is_zero() {
        let lm = p.lm().clone();
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(i, d)| d.as_ref().filter(|d| d.poly.lm().divides(&lm)).map(|d| (i, d)));
        match hit {
            Some((i, d)) => {
                let (c, m) = quotient_factor(&p, &d.poly);
                let mk = order.key(&m);
                p = p.sub_mul(&c, &m, &mk, &d.poly);
                if track {
                    let term = OrdPoly::constant(c, order).mul_term(&Rational::one(), &m, &mk);
                    quotients[i] = quotients[i].add(&term, order);
                }
            }
            None => r.push_smallest(p.pop_lead()),
        }
    }
    let cert = track.then(|| Certificate {
        unit: OrdPoly::constant(Rational::one(), order),
        quotients,
    });
    (r, cert)
}

/// A reducer available during a Mora reduction: an input divisor or an
/// earlier partial remainder.
struct Reducer {
    poly: OrdPoly,
    ecart: u64,
    source: Source,
}

enum Source {
    Input(usize),
    /// Earlier remainder `h_k = u_k f - sum Q_k g`.
    Partial {
        unit: OrdPoly,
        quotients: Vec<OrdPoly>,
    },
}

fn mora(f: OrdPoly, divisors: &[Option<Divisor>], order: &OrderSpec, track: bool) -> (OrdPoly, Option<Certificate>) {
    let mut reducers: Vec<Reducer> = divisors
        .iter()
        .enumerate()
        .filter_map(|(i, d)| {
            d.as_ref().map(|d| Reducer {
                poly: d.poly.clone(),
                ecart: d.ecart,
                source: Source::Input(i),
            })
        })
        .collect();
    let mut h = f;
    let mut unit = if track {
        OrdPoly::constant(Rational::one(), order)
    } else {
        OrdPoly::zero()
    };
    let mut quotients = if track {
        vec![OrdPoly::zero(); divisors.len()]
    } else {
        Vec::new()
    };

    while !h.is_zero() {
        let lm = h.lm().clone();
        let best = reducers
            .iter()
            .enumerate()
            .filter(|(_, r)| r.poly.lm().divides(&lm))
            .min_by_key(|(_, r)| r.ecart)
            .map(|(i, _)| i);
        let Some(bi) = best else { break };
        let h_ecart = h.ecart(order);

        if reducers[bi].ecart > h_ecart {
            let source = if track {
                Source::Partial {
                    unit: unit.clone(),
                    quotients: quotients.clone(),
                }
            } else {
                Source::Partial {
                    unit: OrdPoly::zero(),
                    quotients: Vec::new(),
                }
            };
            reducers.push(Reducer {
                poly: h.clone(),
                ecart: h_ecart,
                source,
            });
        }
        let g = &reducers[bi];
        let (c, m) = quotient_factor(&h, &g.poly);
        let mk = order.key(&m);
        h = h.sub_mul(&c, &m, &mk, &g.poly);
        if track {
            match &g.source {
                Source::Input(i) => {
                    let term = OrdPoly::constant(c, order).mul_term(&Rational::one(), &m, &mk);
                    quotients[*i] = quotients[*i].add(&term, order);
                }
                Source::Partial {
                    unit: gu,
                    quotients: gq,
                } => {
                    // h - c m h_k = (u - c m u_k) f - sum (Q - c m Q_k) g
                    unit = unit.sub_mul(&c, &m, &mk, gu);
                    for (q, qk) in quotients.iter_mut().zip(gq) {
                        if !qk.is_zero() {
                            *q = q.sub_mul(&c, &m, &mk, qk);
                        }
                    }
                }
            }
        }
    }
    let cert = track.then(|| Certificate { unit, quotients });
    (h, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_order, parse_polynomial};
    use crate::poly::{Ideal, Ring};
    use crate::sb::{is_loc_whole_ring, standard_basis, SbOptions};

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().map(|s| s.to_string())).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn local_reduction_to_zero() {
        let r = ring(&["x"]);
        let o = parse_order(&r, "matrix([[-1]])").unwrap();
        let g = vec![p(&r, "x - x^2")];
        let nf = mora_weak_nf(&p(&r, "x"), &g, &o).unwrap();
        assert!(nf.remainder.is_zero());
        assert!(nf.verify(&p(&r, "x"), &g, &o));
        assert_eq!(nf.unit, p(&r, "1 - x"));
    }

    #[test]
    fn global_is_plain_division() {
        let r = ring(&["x"]);
        let o = OrderSpec::lex(&r);
        let g = vec![p(&r, "x^2 - x")];
        let nf = mora_weak_nf(&p(&r, "x"), &g, &o).unwrap();
        assert_eq!(nf.remainder, p(&r, "x"));
        assert_eq!(nf.unit, Polynomial::one(&r));
    }

    #[test]
    fn lifted_unit_witness() {
        let r = ring(&["t", "x", "y"]);
        let o = OrderSpec::control_block(&r, &["t".into()], &["x".into(), "y".into()]).unwrap();
        let i = Ideal::new(&r, vec![p(&r, "x*y - 1"), p(&r, "t - x")]).unwrap();
        let sb = standard_basis(&i, &o, SbOptions::default()).unwrap();
        let f = p(&r, "t*y - 1");
        let nf = mora_weak_nf(&f, &sb, &o).unwrap();
        assert!(nf.remainder.is_zero());
        assert!(nf.verify(&f, &sb, &o));
        assert!(is_loc_whole_ring(&i, &o).unwrap());
    }

    #[test]
    fn audit_counts_internal_reductions() {
        let r = ring(&["x", "y"]);
        let o = OrderSpec::negdegrevlex(&r);
        let i = Ideal::new(&r, vec![p(&r, "x^2 + y^3"), p(&r, "x*y + x^3")]).unwrap();
        let scope = audit::AuditScope::new();
        standard_basis(&i, &o, SbOptions::default()).unwrap();
        let stats = scope.stats();
        assert!(stats.checked > 0);
        assert_eq!(stats.failed, 0);
        drop(scope);
        assert!(!audit::enabled());
    }
}
