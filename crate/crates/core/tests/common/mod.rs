#![allow(dead_code)]

use extracta::poly::rational;
use extracta::{Ideal, Monomial, OrderSpec, Polynomial, Rational, Ring};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn ring(n: usize) -> Ring {
    Ring::new(["x", "y", "z", "w"].iter().take(n).copied()).unwrap()
}

pub fn poly_from(ring: &Ring, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(&e[..ring.nvars()]), rational(*c, 1))),
    )
    .unwrap()
}

/// Random polynomial with up to `max_terms` terms, each exponent at most `max_exp`.
pub fn poly_strategy(n: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5), 0..=max_terms)
        .prop_map(move |terms| poly_from(&ring(n), &terms))
}

pub fn exponent_strategy(n: usize, max: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, n).prop_map(|e| Monomial::from_exponents(&e))
}

/// Full-rank integer matrices of size n, built as lower-unitriangular times
/// a signed permutation-diagonal so the rank is guaranteed.
pub fn order_strategy(n: usize) -> impl Strategy<Value = OrderSpec> {
    (
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(prop::bool::ANY, n),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(move |(lower, signs, perm)| {
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let l = match i.cmp(&j) {
                        std::cmp::Ordering::Greater => lower[i * n + j],
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Less => 0,
                    };
                    let d = if signs[j] { 1 } else { -1 };
                    rows[i][perm[j]] = l * d;
                }
            }
            OrderSpec::from_matrix(&ring(n), rows).unwrap()
        })
}

pub fn random_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n).prop_map(|v| v.into_iter().map(|(a, b)| rational(a, b)).collect())
}

/// Solves `f = sum h_i g_i` with `deg h_i <= bound` by exact linear algebra.
pub fn bounded_certificate(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let ring = f.ring().clone();
    let n = ring.nvars();
    let multipliers = monomials_up_to(n, bound);
    let mut columns: Vec<Polynomial> = Vec::new();
    for g in gens {
        for m in &multipliers {
            columns.push(g.mul_term(m, &Rational::one()));
        }
    }
    let mut rows: Vec<Monomial> = columns.iter().flat_map(|c| c.terms().map(|(m, _)| m.clone())).collect();
    rows.extend(f.terms().map(|(m, _)| m.clone()));
    rows.sort();
    rows.dedup();
    let mut matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|m| {
            let mut r: Vec<Rational> = columns.iter().map(|c| c.coefficient(m)).collect();
            r.push(f.coefficient(m));
            r
        })
        .collect();
    let width = columns.len();
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(p) = (pivot_row..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(pivot_row, p);
        let inv = matrix[pivot_row][col].recip();
        for v in matrix[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..matrix.len() {
            if r != pivot_row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                let pivot = matrix[pivot_row].clone();
                for (v, p) in matrix[r].iter_mut().zip(&pivot) {
                    *v -= &factor * p;
                }
            }
        }
        pivot_row += 1;
    }
    matrix[pivot_row..].iter().all(|r| r[width].is_zero())
}

fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        if exps.iter().sum::<u32>() <= bound {
            out.push(Monomial::from_exponents(&exps));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            exps[i] += 1;
            if exps[i] <= bound {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn ideal(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
    Ideal::new(ring, gens).unwrap()
}
