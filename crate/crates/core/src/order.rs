//! Semigroup orders given by integer weight matrices.
//!
//! A full-rank `k x n` integer matrix `M` orders exponent vectors by comparing
//! `M*a` and `M*b` row by row. Every order in this crate, named or not, goes
//! through that single comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, Ring};

/// Row-wise images `M*a` of an exponent vector; lexicographic comparison of
/// keys is the order itself.
pub type WeightKey = SmallVec<[i128; 8]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Local,
    Global,
}

/// Level of a matrix column: the row holding its first nonzero entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnLevel {
    pub var_index: usize,
    /// Zero-based row index.
    pub level: usize,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderClass {
    Global,
    Local,
    Mixed,
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderClass::Global => "global",
            OrderClass::Local => "local",
            OrderClass::Mixed => "mixed",
        })
    }
}

/// A validated semigroup order on the monomials of a ring.
#[derive(Clone)]
pub struct OrderSpec {
    ring: Ring,
    rows: Vec<Vec<i64>>,
    levels: Vec<ColumnLevel>,
    is_control: bool,
    ecart_weights: Option<Vec<u64>>,
}

impl OrderSpec {
    /// Validates `rows` as the matrix of a total semigroup order on `ring`.
    pub fn from_matrix(ring: &Ring, rows: Vec<Vec<i64>>) -> Result<OrderSpec> {
        let n = ring.nvars();
        if rows.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        let rank = matrix_rank(&rows);
        if rank < n {
            return Err(Error::NotTotalOrder { rank, nvars: n });
        }
        let levels: Vec<ColumnLevel> = (0..n)
            .map(|j| {
                let level = rows
                    .iter()
                    .position(|r| r[j] != 0)
                    .expect("full rank implies a nonzero entry per column");
                ColumnLevel {
                    var_index: j,
                    level,
                    polarity: if rows[level][j] > 0 {
                        Polarity::Global
                    } else {
                        Polarity::Local
                    },
                }
            })
            .collect();
        let is_control = control_criterion(&levels);
        Ok(OrderSpec {
            ring: ring.clone(),
            rows,
            levels,
            is_control,
            ecart_weights: None,
        })
    }

    pub fn lex(ring: &Ring) -> OrderSpec {
        let n = ring.nvars();
        let rows = (0..n).map(|i| unit_row(n, i, 1)).collect();
        Self::from_matrix(ring, rows).expect("identity has full rank")
    }

    pub fn deglex(ring: &Ring) -> OrderSpec {
        let n = ring.nvars();
        let mut rows = vec![vec![1; n]];
        rows.extend((0..n - 1).map(|i| unit_row(n, i, 1)));
        Self::from_matrix(ring, rows).expect("deglex has full rank")
    }

    pub fn degrevlex(ring: &Ring) -> OrderSpec {
        Self::from_matrix(ring, degree_revlex_rows(ring.nvars(), 1)).expect("full rank")
    }

    pub fn neglex(ring: &Ring) -> OrderSpec {
        let n = ring.nvars();
        let rows = (0..n).map(|i| unit_row(n, i, -1)).collect();
        Self::from_matrix(ring, rows).expect("full rank")
    }

    pub fn negdegrevlex(ring: &Ring) -> OrderSpec {
        Self::from_matrix(ring, degree_revlex_rows(ring.nvars(), -1)).expect("full rank")
    }

    /// Block order: the first block's rows sit above the second's, and so on.
    ///
    /// Each block order lives on its own ring whose variables name a subset of
    /// `ring`'s; together the blocks must partition the variables.
    pub fn block(ring: &Ring, blocks: &[OrderSpec]) -> Result<OrderSpec> {
        let n = ring.nvars();
        let mut seen = vec![false; n];
        let mut rows = Vec::new();
        for b in blocks {
            let cols: Vec<usize> = b
                .ring
                .var_names()
                .iter()
                .map(|name| ring.require_index(name))
                .collect::<Result<_>>()?;
            for &c in &cols {
                if seen[c] {
                    return Err(Error::NotPartition(format!(
                        "`{}` appears in two blocks",
                        ring.var_name(c)
                    )));
                }
                seen[c] = true;
            }
            for r in &b.rows {
                let mut row = vec![0; n];
                for (k, &c) in cols.iter().enumerate() {
                    row[c] = r[k];
                }
                rows.push(row);
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::NotPartition(format!(
                "`{}` is in no block",
                ring.var_name(missing)
            )));
        }
        Self::from_matrix(ring, rows)
    }

    /// Control order with the given local and global variables: negative
    /// degree reverse lex on the local block stacked above degree reverse lex
    /// on the global block.
    pub fn control_block(ring: &Ring, local: &[String], global: &[String]) -> Result<OrderSpec> {
        let mut blocks = Vec::new();
        if !local.is_empty() {
            blocks.push(Self::negdegrevlex(&sub_ring(local)?));
        }
        if !global.is_empty() {
            blocks.push(Self::degrevlex(&sub_ring(global)?));
        }
        Self::block(ring, &blocks)
    }

    /// Positive variable weights for the degree used in ecart computations.
    /// The order itself is unchanged.
    pub fn with_ecart_weights(mut self, weights: Vec<u64>) -> Result<OrderSpec> {
        if weights.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                got: weights.len(),
            });
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("ecart weights must be positive".into()));
        }
        self.ecart_weights = if weights.iter().all(|&w| w == 1) {
            None
        } else {
            Some(weights)
        };
        Ok(self)
    }

    pub fn ecart_weights(&self) -> Option<&[u64]> {
        self.ecart_weights.as_deref()
    }

    /// Degree of `m` in the ecart weights (total degree by default).
    pub fn ecart_degree(&self, m: &Monomial) -> u64 {
        match &self.ecart_weights {
            None => m.degree(),
            Some(w) => m.exponents().iter().zip(w).map(|(&e, &w)| u64::from(e) * w).sum(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column_levels(&self) -> &[ColumnLevel] {
        &self.levels
    }

    /// `+1` where `x_i > 1`, `-1` where `x_i < 1`.
    pub fn characteristic(&self) -> Vec<i8> {
        self.levels
            .iter()
            .map(|l| match l.polarity {
                Polarity::Global => 1,
                Polarity::Local => -1,
            })
            .collect()
    }

    pub fn local_vars(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.polarity == Polarity::Local)
            .map(|l| l.var_index)
            .collect()
    }

    pub fn global_vars(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.polarity == Polarity::Global)
            .map(|l| l.var_index)
            .collect()
    }

    pub fn is_global(&self) -> bool {
        self.levels.iter().all(|l| l.polarity == Polarity::Global)
    }

    pub fn is_local(&self) -> bool {
        self.levels.iter().all(|l| l.polarity == Polarity::Local)
    }

    pub fn class(&self) -> OrderClass {
        if self.is_global() {
            OrderClass::Global
        } else if self.is_local() {
            OrderClass::Local
        } else {
            OrderClass::Mixed
        }
    }

    /// Every local column sits at a strictly smaller level than every global one.
    pub fn is_control(&self) -> bool {
        self.is_control
    }

    pub fn key(&self, m: &Monomial) -> WeightKey {
        self.rows
            .iter()
            .map(|r| r.iter().zip(m.exponents()).map(|(&w, &e)| w as i128 * e as i128).sum())
            .collect()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.ring.nvars());
        for r in &self.rows {
            let mut d: i128 = 0;
            for ((&w, &x), &y) in r.iter().zip(a.exponents()).zip(b.exponents()) {
                d += w as i128 * (x as i128 - y as i128);
            }
            match d.cmp(&0) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let n = self.ring.nvars();
        for m in [a, b] {
            if m.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: m.nvars(),
                });
            }
        }
        Ok(self.compare(a, b))
    }

    /// The maximal term of `f` with its coefficient.
    pub fn leading_term(&self, f: &Polynomial) -> Result<(Monomial, Rational)> {
        self.ring.ensure_same(f.ring())?;
        f.terms()
            .max_by(|a, b| self.compare(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Renders `f` with its terms in descending order.
    pub fn format(&self, f: &Polynomial) -> String {
        struct Sorted<'a>(&'a OrderSpec, &'a Polynomial);
        impl fmt::Display for Sorted<'_> {
            fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut terms: Vec<_> = self.1.terms().collect();
                terms.sort_by(|a, b| self.0.compare(b.0, a.0));
                Polynomial::write_terms(out, self.1.ring(), terms)
            }
        }
        Sorted(self, f).to_string()
    }

    /// Searches monomials with exponents up to `bound` for a witness that this
    /// order is not a control order: a term divisible by a local variable that
    /// is greater than 1.
    pub fn control_violation(&self, bound: u32) -> Option<Monomial> {
        let locals = self.local_vars();
        if locals.is_empty() {
            return None;
        }
        let n = self.ring.nvars();
        let one = Monomial::one(n);
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(&exps);
            if locals.iter().any(|&i| exps[i] > 0) && self.compare(&m, &one) == Ordering::Greater {
                return Some(m);
            }
            let mut i = 0;
            while i < n {
                exps[i] += 1;
                if exps[i] <= bound {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                return None;
            }
        }
    }
}

fn control_criterion(levels: &[ColumnLevel]) -> bool {
    let max_local = levels
        .iter()
        .filter(|l| l.polarity == Polarity::Local)
        .map(|l| l.level)
        .max();
    let min_global = levels
        .iter()
        .filter(|l| l.polarity == Polarity::Global)
        .map(|l| l.level)
        .min();
    match (max_local, min_global) {
        (Some(l), Some(g)) => l < g,
        _ => true,
    }
}

fn unit_row(n: usize, i: usize, value: i64) -> Vec<i64> {
    let mut r = vec![0; n];
    r[i] = value;
    r
}

/// `sign * (1,...,1)` followed by `-e_n, ..., -e_2`.
fn degree_revlex_rows(n: usize, sign: i64) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![sign; n]];
    rows.extend((1..n).rev().map(|i| unit_row(n, i, -1)));
    rows
}

fn sub_ring(names: &[String]) -> Result<Ring> {
    Ring::new(names.iter().cloned())
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub(crate) fn matrix_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].abs();
        if prev.is_zero() {
            prev = BigInt::from(1);
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

impl PartialEq for OrderSpec {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rows == other.rows
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix([")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let cells: Vec<String> = r.iter().map(i64::to_string).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "])")
    }
}

impl fmt::Debug for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderSpec[{}]{self}", self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn xyz() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    fn example_matrix() -> OrderSpec {
        OrderSpec::from_matrix(&xyz(), vec![vec![-1, -1, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn mixed_example_is_a_control_order() {
        let o = example_matrix();
        assert_eq!(o.characteristic(), vec![-1, -1, 1]);
        assert!(o.is_control());
        assert_eq!(o.class(), OrderClass::Mixed);
        assert_eq!(o.compare(&m(&[2, 1, 2]), &m(&[1, 2, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[2, 1, 0]), &m(&[1, 2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[3, 0, 7]), &m(&[3, 0, 7])), Ordering::Equal);
    }

    #[test]
    fn identity_is_lex_and_global() {
        let o = OrderSpec::from_matrix(&xyz(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(o, OrderSpec::lex(&xyz()));
        assert_eq!(o.characteristic(), vec![1, 1, 1]);
        assert!(o.is_global() && o.is_control());
    }

    #[test]
    fn rank_deficient_matrices_are_rejected() {
        let r = Ring::new(["x", "y"]).unwrap();
        assert_eq!(
            OrderSpec::from_matrix(&r, vec![vec![1, 1], vec![2, 2]]),
            Err(Error::NotTotalOrder { rank: 1, nvars: 2 })
        );
        assert_eq!(OrderSpec::from_matrix(&r, vec![]), Err(Error::EmptyMatrix));
        assert!(matches!(
            OrderSpec::from_matrix(&r, vec![vec![1, 0, 0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn diagonal_mixed_order_is_not_control() {
        let r = Ring::new(["x", "y"]).unwrap();
        let o = OrderSpec::from_matrix(&r, vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(o.characteristic(), vec![1, -1]);
        assert!(!o.is_control());
        let w = o.control_violation(3).expect("witness");
        assert!(w.exponents()[1] > 0);
        assert_eq!(o.compare(&w, &Monomial::one(2)), Ordering::Greater);
    }

    #[test]
    fn local_level_above_global_is_control() {
        let r = Ring::new(["x", "y"]).unwrap();
        let o = OrderSpec::from_matrix(&r, vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(o.characteristic(), vec![1, -1]);
        assert!(o.is_control());
        assert!(o.control_violation(4).is_none());
        assert_eq!(o.column_levels()[0].level, 1);
        assert_eq!(o.column_levels()[1].level, 0);
    }

    #[test]
    fn control_block_orders() {
        let r = Ring::new(["x", "y", "t1", "t2"]).unwrap();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let o = OrderSpec::control_block(&r, &s(&["t1", "t2"]), &s(&["x", "y"])).unwrap();
        assert_eq!(o.rows().len(), 4);
        assert!(o.is_control());
        assert_eq!(o.characteristic(), vec![1, 1, -1, -1]);

        let g = Ring::new(["x", "y"]).unwrap();
        let o = OrderSpec::control_block(&g, &[], &s(&["x", "y"])).unwrap();
        assert_eq!(o, OrderSpec::degrevlex(&g));
        assert_eq!(o.characteristic(), vec![1, 1]);

        let o = OrderSpec::control_block(&xyz(), &s(&["x", "y", "z"]), &[]).unwrap();
        assert!(o.is_local() && o.is_control());

        assert!(matches!(
            OrderSpec::control_block(&r, &s(&["t1"]), &s(&["x", "y"])),
            Err(Error::NotPartition(_))
        ));
        assert!(matches!(
            OrderSpec::control_block(&g, &s(&["x"]), &s(&["x", "y"])),
            Err(Error::NotPartition(_))
        ));
    }

    #[test]
    fn named_orders_agree_with_textbook_definitions() {
        let o = OrderSpec::degrevlex(&xyz());
        // x*z^2 vs y^3: same degree, last variable exponent decides
        assert_eq!(o.compare(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[1, 1, 0]), &m(&[0, 0, 3])), Ordering::Less);
        let o = OrderSpec::deglex(&xyz());
        assert_eq!(o.compare(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Greater);
        let o = OrderSpec::negdegrevlex(&xyz());
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[2, 0, 0])), Ordering::Greater);
        assert!(o.is_local());
        let o = OrderSpec::neglex(&xyz());
        assert_eq!(o.compare(&m(&[0, 5, 0]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn leading_terms() {
        let r = Ring::new(["x", "y"]).unwrap();
        let diag = OrderSpec::from_matrix(&r, vec![vec![1, 0], vec![0, -1]]).unwrap();
        let f = parse_polynomial(&r, "x*y - 1").unwrap();
        assert_eq!(diag.leading_term(&f).unwrap().0, m(&[1, 1]));
        let y_local = OrderSpec::from_matrix(&r, vec![vec![0, -1], vec![1, 0]]).unwrap();
        let (lm, lc) = y_local.leading_term(&parse_polynomial(&r, "y - 1").unwrap()).unwrap();
        assert!(lm.is_one());
        assert_eq!(lc, crate::poly::integer(-1));
        let lex = OrderSpec::lex(&r);
        assert_eq!(
            lex.leading_term(&Polynomial::var(&r, "x").unwrap()).unwrap().0,
            m(&[1, 0])
        );
        assert_eq!(lex.leading_term(&Polynomial::zero(&r)), Err(Error::ZeroPolynomial));
    }
}
