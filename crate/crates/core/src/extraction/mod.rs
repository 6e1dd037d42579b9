//! Extractions `β(I, J)`: the intersection of the primary components of `I`
//! whose varieties meet `V(J)`, decided without decomposing `I`.
//!
//! The ideal is lifted to `I' = <I, t1 - g1, ..., ts - gs>` in a ring with
//! fresh variables `t`, and `I'` is localized at a control order in which
//! exactly the `t` are local. Membership in `β(I, J)` is then membership in
//! the localization, decided by a standard basis.

mod identities;

pub use identities::{
    check_identities, check_lift_decomposition, IdentityCheck, IdentityInputs, IdentityReport, IdentityStatus,
};

use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::poly::{Ideal, Monomial, Polynomial, Ring};
use crate::sb::{dim_leading_ideal_loc, is_loc_whole_ring, LocalizedIdealHandle};

/// A lifted pair `(I, J)` ready for localized computations.
#[derive(Clone, Debug)]
pub struct ExtractionQuery {
    ideal: Ideal,
    control: Ideal,
    lifted_ring: Ring,
    lifted_ideal: Ideal,
    t_names: Vec<String>,
    order: OrderSpec,
    handle: LocalizedIdealHandle,
}

fn fresh_t_names(ring: &Ring, s: usize) -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(s);
    for w in 1..=s {
        let name = ring.fresh_name(&format!("t{w}"), &names);
        names.push(name);
    }
    names
}

/// Builds `I'` and its control order.
pub fn lift(i: &Ideal, j: &Ideal) -> Result<ExtractionQuery> {
    i.ring().ensure_same(j.ring())?;
    let ring = i.ring();
    let control_gens: Vec<Polynomial> = if j.gens().is_empty() {
        vec![Polynomial::zero(ring)]
    } else {
        j.gens().to_vec()
    };
    let t_names = fresh_t_names(ring, control_gens.len());
    let lifted_ring = ring.extend(t_names.iter().cloned())?;
    let mut gens: Vec<Polynomial> = i.gens().iter().map(|f| f.embed(&lifted_ring)).collect::<Result<_>>()?;
    for (t, g) in t_names.iter().zip(&control_gens) {
        let tv = Polynomial::var(&lifted_ring, t)?;
        gens.push(&tv - &g.embed(&lifted_ring)?);
    }
    let lifted_ideal = Ideal::new(&lifted_ring, gens)?;
    // t_w weighs as much as g_w in the ecart, so t_w - g_w is balanced
    let weights: Vec<u64> = std::iter::repeat_n(1, ring.nvars())
        .chain(control_gens.iter().map(|g| g.total_degree().unwrap_or(0).max(1)))
        .collect();
    let order = OrderSpec::control_block(&lifted_ring, &t_names, ring.var_names())?.with_ecart_weights(weights)?;
    let handle = LocalizedIdealHandle::new(lifted_ideal.clone(), order.clone())?;
    Ok(ExtractionQuery {
        ideal: i.clone(),
        control: j.clone(),
        lifted_ring,
        lifted_ideal,
        t_names,
        order,
        handle,
    })
}

impl ExtractionQuery {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn control(&self) -> &Ideal {
        &self.control
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn lifted_ring(&self) -> &Ring {
        &self.lifted_ring
    }

    pub fn lifted_ideal(&self) -> &Ideal {
        &self.lifted_ideal
    }

    pub fn t_names(&self) -> &[String] {
        &self.t_names
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn handle(&self) -> &LocalizedIdealHandle {
        &self.handle
    }

    /// The same lift under another control order whose local variables are
    /// exactly the `t`.
    pub fn with_order(&self, order: OrderSpec) -> Result<ExtractionQuery> {
        self.lifted_ring.ensure_same(order.ring())?;
        if !order.is_control() {
            return Err(Error::NonControlOrder("lift requires a control order".into()));
        }
        let locals: Vec<String> = order
            .local_vars()
            .into_iter()
            .map(|k| self.lifted_ring.var_name(k).to_string())
            .collect();
        let mut expected = self.t_names.clone();
        let mut got = locals.clone();
        expected.sort();
        got.sort();
        if expected != got {
            return Err(Error::NonControlOrder(format!(
                "local variables must be exactly {{{}}}, got {{{}}}",
                self.t_names.join(","),
                locals.join(",")
            )));
        }
        let order = match self.order.ecart_weights() {
            Some(w) => order.with_ecart_weights(w.to_vec())?,
            None => order,
        };
        let handle = LocalizedIdealHandle::new(self.lifted_ideal.clone(), order.clone())?;
        Ok(ExtractionQuery {
            order,
            handle,
            ..self.clone()
        })
    }

    /// Control orders on the lifted ring with the same local variables as
    /// the default one, built in structurally different ways.
    pub fn equivalent_orders(&self) -> Vec<OrderSpec> {
        let ring = &self.lifted_ring;
        let xs = self.ideal.ring().var_names();
        let ts = &self.t_names;
        let sub = |names: &[String]| Ring::new(names.iter().cloned()).expect("valid names");
        let mut out = Vec::new();

        let mut rev_t = ts.clone();
        rev_t.reverse();
        let mut rev_x = xs.to_vec();
        rev_x.reverse();
        if let Ok(o) = OrderSpec::control_block(ring, &rev_t, &rev_x) {
            out.push(o);
        }
        if let Ok(o) = OrderSpec::block(ring, &[OrderSpec::neglex(&sub(ts)), OrderSpec::lex(&sub(xs))]) {
            out.push(o);
        }
        // not a block order: one row mixing t1 into the global degree
        let col = |name: &str| ring.index_of(name).expect("lifted variable");
        let nv = ring.nvars();
        let mut rows = Vec::new();
        let mut r1 = vec![0i64; nv];
        for t in ts {
            r1[col(t)] = -1;
        }
        rows.push(r1);
        let mut r2 = vec![0i64; nv];
        for x in xs {
            r2[col(x)] = 1;
        }
        r2[col(&ts[0])] = 1;
        rows.push(r2);
        for t in &ts[1..] {
            let mut r = vec![0i64; nv];
            r[col(t)] = 1;
            rows.push(r);
        }
        for x in &xs[1..] {
            let mut r = vec![0i64; nv];
            r[col(x)] = -1;
            rows.push(r);
        }
        if let Ok(o) = OrderSpec::from_matrix(ring, rows) {
            out.push(o);
        }
        out
    }
}

/// Whether `f` lies in `β(I, J)`.
pub fn extraction_membership(f: &Polynomial, q: &ExtractionQuery) -> Result<bool> {
    q.ring().ensure_same(f.ring())?;
    q.handle.contains(&f.embed(&q.lifted_ring)?)
}

/// Whether `f` lies in the radical of `β(I, J)`.
///
/// Rabinowitsch's trick in the localized ring: `f` is in the radical iff
/// `<I', 1 - z f>` is the whole ring of `Loc(A')[z]`. The variable `z` gets
/// its own top row, so every monomial containing `z` exceeds every monomial
/// without it and the units of the extended localization are those of
/// `Loc(A')`.
pub fn extraction_radical_membership(f: &Polynomial, q: &ExtractionQuery) -> Result<bool> {
    q.ring().ensure_same(f.ring())?;
    if extraction_membership(f, q)? {
        return Ok(true);
    }
    let z = q.lifted_ring.fresh_name("z", &[]);
    let big = q.lifted_ring.extend([z.clone()])?;
    let n = big.nvars();
    let mut rows = Vec::with_capacity(n);
    let mut top = vec![0i64; n];
    top[n - 1] = 1;
    rows.push(top);
    for r in q.order.rows() {
        let mut row = r.clone();
        row.push(0);
        rows.push(row);
    }
    let weights: Vec<u64> = (0..q.lifted_ring.nvars())
        .map(|k| q.order.ecart_degree(&Monomial::var(q.lifted_ring.nvars(), k)))
        .chain([1])
        .collect();
    let order = OrderSpec::from_matrix(&big, rows)?.with_ecart_weights(weights)?;
    let zv = Polynomial::var(&big, &z)?;
    let rab = &Polynomial::one(&big) - &(&zv * &f.embed(&big)?);
    // the standard basis generates the same extension as I'
    let mut gens: Vec<Polynomial> = q
        .handle
        .standard_basis()
        .iter()
        .map(|g| g.embed(&big))
        .collect::<Result<_>>()?;
    gens.push(rab);
    is_loc_whole_ring(&Ideal::new(&big, gens)?, &order)
}

/// Whether `β(I, J)` is the whole ring, i.e. no component of `I` meets `V(J)`.
pub fn extraction_is_trivial(q: &ExtractionQuery) -> bool {
    q.handle.is_whole_ring()
}

/// Krull dimension of `A / β(I, J)`; `-1` when the extraction is trivial.
pub fn extraction_dim(q: &ExtractionQuery) -> Result<i64> {
    if extraction_is_trivial(q) {
        return Ok(-1);
    }
    dim_leading_ideal_loc(&q.handle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractionStatus {
    Trivial,
    Proper,
}

/// `β(I, J)` as a membership oracle, with generators when some outside
/// source supplied them.
#[derive(Clone, Debug)]
pub struct ExtractionResult {
    status: ExtractionStatus,
    query: ExtractionQuery,
    generators: Option<Vec<Polynomial>>,
}

impl ExtractionResult {
    pub fn new(query: ExtractionQuery) -> Self {
        let status = if extraction_is_trivial(&query) {
            ExtractionStatus::Trivial
        } else {
            ExtractionStatus::Proper
        };
        ExtractionResult {
            status,
            query,
            generators: None,
        }
    }

    pub fn with_generators(mut self, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            self.query.ring().ensure_same(g.ring())?;
        }
        self.generators = Some(gens);
        Ok(self)
    }

    pub fn status(&self) -> ExtractionStatus {
        self.status
    }

    pub fn query(&self) -> &ExtractionQuery {
        &self.query
    }

    pub fn generators(&self) -> Option<&[Polynomial]> {
        self.generators.as_deref()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        extraction_membership(f, &self.query)
    }

    fn witnesses(&self) -> Result<Vec<Polynomial>> {
        match (&self.generators, self.status) {
            (Some(g), _) => Ok(g.clone()),
            (None, ExtractionStatus::Trivial) => Ok(vec![Polynomial::one(self.query.ring())]),
            (None, ExtractionStatus::Proper) => Err(Error::MissingWitnesses(format!(
                "extraction of {} by {}",
                self.query.ideal(),
                self.query.control()
            ))),
        }
    }
}

/// Equality of two extractions over the same ring, by checking each side's
/// witness generators against the other side's membership test.
pub fn loc_ideal_equal(a: &ExtractionResult, b: &ExtractionResult) -> Result<bool> {
    a.query.ring().ensure_same(b.query.ring())?;
    let wa = a.witnesses()?;
    let wb = b.witnesses()?;
    for g in &wa {
        if !b.contains(g)? {
            return Ok(false);
        }
    }
    for g in &wb {
        if !a.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}
