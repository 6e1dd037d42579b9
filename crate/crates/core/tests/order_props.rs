mod common;

use std::cmp::Ordering;

use common::*;
use extracta::parse::parse_polynomial;
use extracta::poly::rational;
use extracta::{Error, Monomial, OrderClass, OrderSpec, Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| rational(v, 1)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let f = &m[r][c] / &m[rank][c];
            let pivot = m[rank].clone();
            for (v, p) in m[r].iter_mut().zip(&pivot).skip(c) {
                *v -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

fn local_term(order: &OrderSpec, base: &Monomial) -> Option<Monomial> {
    let locals = order.local_vars();
    let first = *locals.first()?;
    let mut e = base.exponents().to_vec();
    e[first] += 1;
    Some(Monomial::from_exponents(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn total_order(o in order_strategy(3), a in exponent_strategy(3, 4), b in exponent_strategy(3, 4), c in exponent_strategy(3, 4)) {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
        prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
        if o.compare(&a, &b) == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
        }
    }

    #[test]
    fn semigroup_compatible(o in order_strategy(3), a in exponent_strategy(3, 4), b in exponent_strategy(3, 4), c in exponent_strategy(3, 4)) {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&a.mul(&c), &b.mul(&c)));
    }

    #[test]
    fn characteristic_sound(o in order_strategy(3)) {
        let one = Monomial::one(3);
        for (i, s) in o.characteristic().into_iter().enumerate() {
            let greater = o.compare(&Monomial::var(3, i), &one) == Ordering::Greater;
            prop_assert_eq!(greater, s == 1);
        }
    }

    #[test]
    fn rank_matches_rational_elimination(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..5)) {
        let r = ring(3);
        let full = rational_rank(&rows) == 3;
        match OrderSpec::from_matrix(&r, rows) {
            Ok(_) => prop_assert!(full),
            Err(Error::NotTotalOrder { .. }) => prop_assert!(!full),
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn control_orders_send_local_terms_below_one(o in order_strategy(3), bases in prop::collection::vec(exponent_strategy(3, 5), 40)) {
        let one = Monomial::one(3);
        if o.is_control() {
            prop_assert!(o.control_violation(4).is_none());
            for b in &bases {
                if let Some(t) = local_term(&o, b) {
                    prop_assert_eq!(o.compare(&t, &one), Ordering::Less);
                }
            }
        } else {
            let w = o.control_violation(6);
            prop_assert!(w.is_some(), "no witness for {o}");
            let w = w.unwrap();
            prop_assert!(o.local_vars().iter().any(|&i| w.exponents()[i] > 0));
            prop_assert_eq!(o.compare(&w, &one), Ordering::Greater);
        }
    }

    #[test]
    fn local_ideal_elements_lead_below_one(o in order_strategy(3), g in poly_strategy(3, 4, 3)) {
        prop_assume!(o.is_control() && !o.local_vars().is_empty() && !g.is_zero());
        // push g into the ideal of the local variables
        let locals = o.local_vars();
        let r = g.ring().clone();
        let v = Polynomial::variable(&r, locals[0]);
        let h = &g * &v;
        let (lt, _) = o.leading_term(&h).unwrap();
        prop_assert_eq!(o.compare(&lt, &Monomial::one(3)), Ordering::Less);
    }
}

#[test]
fn worked_example_matrix() {
    let r = ring(3);
    let m = OrderSpec::from_matrix(&r, vec![vec![-1, -1, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
    assert_eq!(m.characteristic(), vec![-1, -1, 1]);
    assert_eq!(m.class(), OrderClass::Mixed);
    assert!(m.is_control());
    let e = |v: [u32; 3]| Monomial::from_exponents(&v);
    assert_eq!(m.compare(&e([2, 1, 2]), &e([1, 2, 1])), Ordering::Greater);
    assert_eq!(m.compare(&e([2, 1, 0]), &e([1, 2, 0])), Ordering::Less);
}

#[test]
fn small_orders() {
    let r = ring(2);
    let diag = OrderSpec::from_matrix(&r, vec![vec![1, 0], vec![0, -1]]).unwrap();
    assert!(!diag.is_control());
    assert_eq!(diag.characteristic(), vec![1, -1]);
    let swap = OrderSpec::from_matrix(&r, vec![vec![0, -1], vec![1, 0]]).unwrap();
    assert!(swap.is_control());
    assert!(OrderSpec::lex(&r).is_control());
    assert_eq!(OrderSpec::lex(&r).class(), OrderClass::Global);
    assert!(matches!(
        OrderSpec::from_matrix(&r, vec![vec![1, 1], vec![2, 2]]),
        Err(Error::NotTotalOrder { .. })
    ));
    let (lt, c) = diag.leading_term(&parse_polynomial(&r, "x*y - 1").unwrap()).unwrap();
    assert_eq!((lt, c), (Monomial::from_exponents(&[1, 1]), rational(1, 1)));
    let (lt, _) = swap.leading_term(&parse_polynomial(&r, "y - 1").unwrap()).unwrap();
    assert!(lt.is_one());
}

#[test]
fn block_orders() {
    let r = extracta::Ring::new(["x", "y", "t1", "t2"]).unwrap();
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let b = OrderSpec::control_block(&r, &names(&["t1", "t2"]), &names(&["x", "y"])).unwrap();
    assert_eq!(b.rows().len(), 4);
    assert!(b.is_control());
    assert_eq!(b.characteristic(), vec![1, 1, -1, -1]);
    let xy = ring(2);
    let g = OrderSpec::control_block(&xy, &[], &names(&["x", "y"])).unwrap();
    assert_eq!(g, OrderSpec::degrevlex(&xy));
    let xyz = ring(3);
    let l = OrderSpec::control_block(&xyz, &names(&["x", "y", "z"]), &[]).unwrap();
    assert_eq!(l.class(), OrderClass::Local);
    assert!(l.is_control());
    assert!(OrderSpec::control_block(&xy, &names(&["x"]), &names(&["x", "y"])).is_err());
}
