//! Polynomials kept sorted under a fixed order, with cached weight keys.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::order::{OrderSpec, WeightKey};
use crate::poly::{Monomial, Polynomial, Rational, Ring};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: WeightKey,
    pub exp: Monomial,
    pub coeff: Rational,
}

/// Terms in strictly descending order; the first term is the leading term.
#[derive(Clone, Debug, Default)]
pub(crate) struct OrdPoly {
    terms: Vec<Term>,
}

fn add_keys(a: &WeightKey, b: &WeightKey) -> WeightKey {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

impl OrdPoly {
    pub fn zero() -> Self {
        OrdPoly { terms: Vec::new() }
    }

    pub fn from_poly(p: &Polynomial, order: &OrderSpec) -> Self {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m),
                exp: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        OrdPoly { terms }
    }

    pub fn constant(c: Rational, order: &OrderSpec) -> Self {
        let m = Monomial::one(order.ring().nvars());
        OrdPoly {
            terms: vec![Term {
                key: order.key(&m),
                exp: m,
                coeff: c,
            }],
        }
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())))
            .expect("terms belong to the ring")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].exp
    }

    /// `deg f - deg LM(f)` in the order's ecart weights.
    pub fn ecart(&self, order: &OrderSpec) -> u64 {
        let top = self.terms.iter().map(|t| order.ecart_degree(&t.exp)).max().unwrap_or(0);
        top - order.ecart_degree(self.lm())
    }

    pub fn scaled(&self, c: &Rational) -> OrdPoly {
        if c.is_zero() {
            return OrdPoly::zero();
        }
        OrdPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    key: t.key.clone(),
                    exp: t.exp.clone(),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    pub fn monic(&self) -> OrdPoly {
        if self.is_zero() || self.lead().coeff.is_one() {
            return self.clone();
        }
        self.scaled(&self.lead().coeff.recip())
    }

    /// `c * m * self`, where `mk` is the key of `m`.
    pub fn mul_term(&self, c: &Rational, m: &Monomial, mk: &WeightKey) -> OrdPoly {
        if c.is_zero() {
            return OrdPoly::zero();
        }
        OrdPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    key: add_keys(&t.key, mk),
                    exp: t.exp.mul(m),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// `self - c * m * other`, merged in order.
    pub fn sub_mul(&self, c: &Rational, m: &Monomial, mk: &WeightKey, other: &OrdPoly) -> OrdPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| Term {
            key: add_keys(&t.key, mk),
            exp: t.exp.mul(m),
            coeff: -(&t.coeff * c),
        });
        let mut next_b = b.next();
        loop {
            match (a.peek(), next_b.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => {
                    out.push(next_b.take().expect("present"));
                    next_b = b.next();
                }
                (Some(ta), Some(tb)) => match ta.key.cmp(&tb.key) {
                    Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                    Ordering::Less => {
                        out.push(next_b.take().expect("present"));
                        next_b = b.next();
                    }
                    Ordering::Equal => {
                        let sum = &ta.coeff + &tb.coeff;
                        if !sum.is_zero() {
                            out.push(Term {
                                key: ta.key.clone(),
                                exp: ta.exp.clone(),
                                coeff: sum,
                            });
                        }
                        a.next();
                        next_b = b.next();
                    }
                },
            }
        }
        OrdPoly { terms: out }
    }

    pub fn add(&self, other: &OrdPoly, order: &OrderSpec) -> OrdPoly {
        let one = Monomial::one(order.ring().nvars());
        let k = order.key(&one);
        self.sub_mul(&-Rational::one(), &one, &k, other)
    }

    /// Moves the leading term out, returning it.
    pub fn pop_lead(&mut self) -> Term {
        self.terms.remove(0)
    }

    pub fn push_smallest(&mut self, t: Term) {
        debug_assert!(self.terms.last().is_none_or(|l| l.key > t.key));
        self.terms.push(t);
    }
}
