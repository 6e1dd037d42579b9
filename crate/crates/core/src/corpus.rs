//! Seeded generator of instances with known primary decompositions, and the
//! per-instance cross-checks run against them.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extraction::{
    check_identities, check_lift_decomposition, extraction_dim, extraction_membership, lift, ExtractionQuery,
    IdentityInputs, IdentityReport,
};
use crate::oracle::{
    beta_decomposition, beta_oracle, dim_oracle, monomial_primary_decomposition, point_ideal, principal_decomposition,
    zero_dim_contract_oracle, PrimaryDecomposition, RationalPointSet,
};
use crate::order::{OrderClass, OrderSpec};
use crate::poly::{rational, Ideal, Monomial, Polynomial, Rational, Ring};
use crate::sb::{ideal_contains, loc_membership, reduced_gb, LocalizedIdealHandle};

pub const SEED_VAR: &str = "EXTRACTA_SEED";
pub const DEFAULT_SEED: u64 = 20_240_917;

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// Seed from `EXTRACTA_SEED` (decimal or `0x` hex), else the default.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(s) => parse_seed(&s),
    }
}

pub fn parse_seed(s: &str) -> Result<u64> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| Error::Parse {
        line: 1,
        column: 1,
        message: format!("bad seed `{s}`"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InstanceClass {
    Monomial,
    Points,
    Principal,
}

impl InstanceClass {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceClass::Monomial => "monomial",
            InstanceClass::Points => "points",
            InstanceClass::Principal => "principal",
        }
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub seed: u64,
    pub monomial: usize,
    pub points: usize,
    pub principal: usize,
    /// Random probe polynomials per instance.
    pub random_probes: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: DEFAULT_SEED,
            monomial: 100,
            points: 60,
            principal: 50,
            random_probes: 20,
        }
    }
}

impl CorpusConfig {
    pub fn total(&self) -> usize {
        self.monomial + self.points + self.principal
    }
}

/// One test case: `I`, the control ideal `J`, a partner `H` for the
/// intersection identities and a second control ideal `L`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: usize,
    pub class: InstanceClass,
    pub i: PrimaryDecomposition,
    pub j: PrimaryDecomposition,
    pub h: PrimaryDecomposition,
    pub l: Ideal,
    pub points: Option<RationalPointSet>,
    /// Half random polynomials, half random members of `β(I, J)`.
    pub probes: Vec<Polynomial>,
}

impl Instance {
    pub fn ring(&self) -> &Ring {
        self.i.ring()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{} {} I={} J={} H={} L={}",
            self.id,
            self.class,
            self.i.ideal(),
            self.j.ideal(),
            self.h.ideal(),
            self.l
        )
    }
}

fn instance_rng(seed: u64, id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Generates the corpus: monomial instances first, then point sets, then
/// principal ideals. Instance `k` depends only on the seed and `k`.
pub fn generate(cfg: &CorpusConfig) -> Result<Vec<Instance>> {
    (0..cfg.total()).map(|id| generate_one(cfg, id)).collect()
}

pub fn class_of(cfg: &CorpusConfig, id: usize) -> InstanceClass {
    if id < cfg.monomial {
        InstanceClass::Monomial
    } else if id < cfg.monomial + cfg.points {
        InstanceClass::Points
    } else {
        InstanceClass::Principal
    }
}

pub fn generate_one(cfg: &CorpusConfig, id: usize) -> Result<Instance> {
    let mut rng = instance_rng(cfg.seed, id);
    let class = class_of(cfg, id);
    let (i, h, points) = match class {
        InstanceClass::Monomial => {
            let n = rng.random_range(2..=4);
            let ring = ring_of(n);
            let i = monomial_primary_decomposition(&random_monomial_ideal(&mut rng, &ring, 1..=4, 4))?;
            let h = monomial_primary_decomposition(&random_monomial_ideal(&mut rng, &ring, 1..=3, 3))?;
            (i, h, None)
        }
        InstanceClass::Points => {
            let n = rng.random_range(2..=3);
            let ring = ring_of(n);
            let count = rng.random_range(1..=5);
            let pts = random_points(&mut rng, &ring, count)?;
            let (_, i) = point_ideal(&pts)?;
            let count = rng.random_range(1..=3);
            let hp = random_points(&mut rng, &ring, count)?;
            let (_, h) = point_ideal(&hp)?;
            (i, h, Some(pts))
        }
        InstanceClass::Principal => {
            let n = rng.random_range(2..=3);
            let ring = ring_of(n);
            let i = random_principal(&mut rng, &ring, 4)?;
            let h = random_principal(&mut rng, &ring, 3)?;
            (i, h, None)
        }
    };
    let ring = i.ring().clone();
    let j = random_control(&mut rng, &ring, points.as_ref())?;
    let l = random_control(&mut rng, &ring, points.as_ref())?.ideal().clone();

    let beta = reduced_gb(&beta_oracle(&i, j.ideal())?);
    let mut probes = Vec::with_capacity(cfg.random_probes);
    for k in 0..cfg.random_probes {
        if k % 2 == 0 || beta.iter().all(Polynomial::is_zero) {
            probes.push(random_poly(&mut rng, &ring, 4, 3));
        } else {
            let mut f = Polynomial::zero(&ring);
            for b in &beta {
                if rng.random_bool(0.6) {
                    f = &f + &(&random_poly(&mut rng, &ring, 2, 1) * b);
                }
            }
            probes.push(f);
        }
    }
    Ok(Instance {
        id,
        class,
        i,
        j,
        h,
        l,
        points,
        probes,
    })
}

fn ring_of(n: usize) -> Ring {
    Ring::new(NAMES[..n].iter().copied()).expect("fixed names")
}

fn one() -> Rational {
    rational(1, 1)
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..degree {
        e[rng.random_range(0..n)] += 1;
    }
    Monomial::from_exponents(&e)
}

fn random_monomial_ideal<R: Rng>(
    rng: &mut R,
    ring: &Ring,
    count: std::ops::RangeInclusive<usize>,
    max_degree: u32,
) -> Ideal {
    let k = rng.random_range(count);
    let gens = (0..k)
        .map(|_| {
            let d = rng.random_range(1..=max_degree);
            Polynomial::term(ring, random_monomial(rng, ring.nvars(), d), one())
        })
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

fn random_coord<R: Rng>(rng: &mut R) -> Rational {
    if rng.random_bool(0.1) {
        rational(1, 2)
    } else {
        rational(rng.random_range(-2..=2), 1)
    }
}

fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_coord(rng)).collect()
}

fn random_points<R: Rng>(rng: &mut R, ring: &Ring, count: usize) -> Result<RationalPointSet> {
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    // origin often present so that local coordinates have something to keep
    if rng.random_bool(0.5) {
        pts.push(vec![rational(0, 1); ring.nvars()]);
    }
    while pts.len() < count {
        let p = random_point(rng, ring.nvars());
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    RationalPointSet::new(ring, pts)
}

fn random_linear<R: Rng>(rng: &mut R, ring: &Ring) -> Polynomial {
    let n = ring.nvars();
    let i = rng.random_range(0..n);
    let mut f = Polynomial::variable(ring, i).scale(&rational(*[1, 1, 2, -1].choose(rng).expect("nonempty"), 1));
    if rng.random_bool(0.5) {
        let j = (i + rng.random_range(1..n)) % n;
        f = &f + &Polynomial::variable(ring, j).scale(&rational(rng.random_range(-2..=2), 1));
    }
    &f + &Polynomial::constant(ring, rational(rng.random_range(-2..=2), 1))
}

/// An irreducible polynomial over the rationals from a few fixed shapes.
fn random_irreducible<R: Rng>(rng: &mut R, ring: &Ring) -> Polynomial {
    let n = ring.nvars();
    let i = rng.random_range(0..n);
    let j = (i + rng.random_range(1..n)) % n;
    let xi = Polynomial::variable(ring, i);
    let xj = Polynomial::variable(ring, j);
    let c = |v: i64| Polynomial::constant(ring, rational(v, 1));
    match rng.random_range(0..5) {
        0 | 1 => random_linear(rng, ring),
        2 => &xi.pow(2) + &c(1),
        3 => &xi - &xj.pow(2),
        _ => &(&xi * &xj) - &c(rng.random_range(1..=2)),
    }
}

fn random_principal<R: Rng>(rng: &mut R, ring: &Ring, max_degree: u64) -> Result<PrimaryDecomposition> {
    loop {
        let mut factors: Vec<(Polynomial, u32)> = Vec::new();
        let mut degree = 0;
        for _ in 0..rng.random_range(1..=3) {
            let p = random_irreducible(rng, ring);
            let e = if rng.random_bool(0.3) { 2 } else { 1 };
            let d = p.total_degree().unwrap_or(0) * u64::from(e);
            if degree + d <= max_degree {
                degree += d;
                factors.push((p, e));
            }
        }
        if factors.is_empty() {
            continue;
        }
        match principal_decomposition(ring, &factors) {
            Err(Error::ProductMismatch(_)) => continue,
            other => return other,
        }
    }
}

/// A decomposable control ideal.
fn random_control<R: Rng>(rng: &mut R, ring: &Ring, points: Option<&RationalPointSet>) -> Result<PrimaryDecomposition> {
    let roll = rng.random_range(0..20);
    match roll {
        0 => monomial_primary_decomposition(&Ideal::zero(ring)),
        1 => monomial_primary_decomposition(&Ideal::unit(ring)),
        2..=6 => monomial_primary_decomposition(&random_monomial_ideal(rng, ring, 1..=2, 2)),
        7..=9 => principal_decomposition(ring, &[(random_linear(rng, ring), 1)]),
        _ => {
            let mut pts: Vec<Vec<Rational>> = Vec::new();
            if let Some(p) = points {
                let mut existing = p.points().to_vec();
                existing.shuffle(rng);
                pts.extend(existing.into_iter().take(rng.random_range(0..=2)));
            }
            if pts.is_empty() || rng.random_bool(0.3) {
                loop {
                    let p = random_point(rng, ring.nvars());
                    if !pts.contains(&p) {
                        pts.push(p);
                        break;
                    }
                }
            }
            Ok(point_ideal(&RationalPointSet::new(ring, pts)?)?.1)
        }
    }
}

/// Sparse polynomial with up to `max_terms` terms of degree at most
/// `max_degree` and small integer coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_degree: u32) -> Polynomial {
    let k = rng.random_range(1..=max_terms);
    let mut f = Polynomial::zero(ring);
    for _ in 0..k {
        let d = rng.random_range(0..=max_degree);
        let mut c = rng.random_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        f = &f + &Polynomial::term(ring, random_monomial(rng, ring.nvars(), d), rational(c, 1));
    }
    f
}

/// Mixed orders on `ring` for the contraction checks: for each proper
/// nonempty set of local variables, a control block order, a locals-first
/// signed diagonal, a globals-first signed diagonal and a single-weight
/// order. The last two are not control orders.
pub fn mixed_order_pool(ring: &Ring) -> Vec<OrderSpec> {
    let n = ring.nvars();
    let mut out: Vec<OrderSpec> = Vec::new();
    for mask in 1..(1u32 << n) - 1 {
        let local: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
        let global: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) == 0).collect();
        let names = |v: &[usize]| v.iter().map(|&k| ring.var_name(k).to_string()).collect::<Vec<_>>();
        let unit = |k: usize, s: i64| {
            let mut r = vec![0i64; n];
            r[k] = s;
            r
        };
        let mut candidates = Vec::new();
        candidates.push(OrderSpec::control_block(ring, &names(&local), &names(&global)));
        let locals_first = local
            .iter()
            .map(|&k| unit(k, -1))
            .chain(global.iter().map(|&k| unit(k, 1)));
        candidates.push(OrderSpec::from_matrix(ring, locals_first.collect()));
        let globals_first = global
            .iter()
            .map(|&k| unit(k, 1))
            .chain(local.iter().map(|&k| unit(k, -1)));
        candidates.push(OrderSpec::from_matrix(ring, globals_first.collect()));
        let w: Vec<i64> = (0..n).map(|k| if mask & (1 << k) != 0 { -1 } else { 1 }).collect();
        let weighted = std::iter::once(w).chain((1..n).map(|k| unit(k, 1)));
        candidates.push(OrderSpec::from_matrix(ring, weighted.collect()));
        for o in candidates.into_iter().flatten() {
            if o.class() == OrderClass::Mixed && !out.iter().any(|p| p.rows() == o.rows()) {
                out.push(o);
            }
        }
    }
    out
}

/// Agreement count between two membership procedures.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub agree: usize,
    pub total: usize,
    pub mismatches: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.agree += 1;
        } else if self.mismatches.len() < 5 {
            self.mismatches.push(what());
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.agree += other.agree;
        self.total += other.total;
        for m in &other.mismatches {
            if self.mismatches.len() < 5 {
                self.mismatches.push(m.clone());
            }
        }
    }

    pub fn all_agree(&self) -> bool {
        self.agree == self.total
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.agree, self.total)
    }
}

/// Probe list for membership comparisons: generators of β, `I` and `J`,
/// then the instance's random probes.
pub fn membership_probes(inst: &Instance, beta: &Ideal) -> Vec<Polynomial> {
    let mut out = reduced_gb(beta);
    out.extend(inst.i.ideal().nonzero_gens());
    out.extend(inst.j.ideal().nonzero_gens());
    out.extend(inst.probes.iter().cloned());
    out
}

/// Lifted membership against membership in the oracle's β.
pub fn check_membership(inst: &Instance, q: &ExtractionQuery) -> Result<Tally> {
    let beta = beta_oracle(&inst.i, inst.j.ideal())?;
    let mut t = Tally::default();
    for f in membership_probes(inst, &beta) {
        let by_lift = extraction_membership(&f, q)?;
        let by_oracle = ideal_contains(&beta, &f)?;
        t.record(by_lift == by_oracle, || {
            format!("{inst}: `{f}` lifted={by_lift} oracle={by_oracle}")
        });
    }
    Ok(t)
}

/// Localization under every pooled mixed order against the point filter.
pub fn check_contraction(inst: &Instance) -> Result<Option<Tally>> {
    let Some(points) = &inst.points else {
        return Ok(None);
    };
    let i = inst.i.ideal();
    let mut t = Tally::default();
    for order in mixed_order_pool(i.ring()) {
        let expected = zero_dim_contract_oracle(points, &order)?;
        let handle = LocalizedIdealHandle::new(i.clone(), order.clone())?;
        let mut probes = reduced_gb(&expected);
        probes.extend(i.nonzero_gens());
        probes.extend(inst.probes.iter().cloned());
        for f in probes {
            let local = handle.contains(&f)?;
            let oracle = ideal_contains(&expected, &f)?;
            t.record(local == oracle, || {
                format!("{inst}: order {:?}: `{f}` local={local} oracle={oracle}", order.rows())
            });
        }
    }
    Ok(Some(t))
}

/// `(extraction_dim, dim of the kept components)`.
pub fn check_dimension(inst: &Instance, q: &ExtractionQuery) -> Result<(i64, i64)> {
    let kept = beta_decomposition(&inst.i, inst.j.ideal())?;
    Ok((extraction_dim(q)?, dim_oracle(&kept)))
}

/// Membership answers under each equivalent control order of the lift.
pub fn check_order_invariance(inst: &Instance, q: &ExtractionQuery) -> Result<Tally> {
    let beta = beta_oracle(&inst.i, inst.j.ideal())?;
    let probes = membership_probes(inst, &beta);
    let base: Vec<bool> = probes
        .iter()
        .map(|f| extraction_membership(f, q))
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for order in q.equivalent_orders() {
        let rows = order.rows().to_vec();
        let other = q.with_order(order)?;
        for (f, &b) in probes.iter().zip(&base) {
            let a = extraction_membership(f, &other)?;
            t.record(a == b, || {
                format!("{inst}: order {rows:?}: `{f}` gives {a}, block order gives {b}")
            });
        }
    }
    Ok(t)
}

/// Membership answers after regenerating `J` with a redundant generator and
/// the list reversed.
pub fn check_generator_invariance(inst: &Instance, q: &ExtractionQuery) -> Result<Tally> {
    let j = inst.j.ideal();
    let mut gens = j.nonzero_gens();
    let extra = match gens.as_slice() {
        [] => Polynomial::zero(j.ring()),
        [g] => g.scale(&rational(2, 1)),
        [a, b, ..] => a + b,
    };
    gens.push(extra);
    gens.reverse();
    let other = lift(inst.i.ideal(), &Ideal::new(j.ring(), gens)?)?;
    let beta = beta_oracle(&inst.i, j)?;
    let mut t = Tally::default();
    for f in membership_probes(inst, &beta) {
        let a = extraction_membership(&f, q)?;
        let b = extraction_membership(&f, &other)?;
        t.record(a == b, || {
            format!("{inst}: `{f}` original J gives {a}, regenerated J gives {b}")
        });
    }
    Ok(t)
}

/// Global orders: localization membership is ordinary membership.
pub fn check_global_specialization(inst: &Instance) -> Result<Tally> {
    let i = inst.i.ideal();
    let order = OrderSpec::degrevlex(i.ring());
    let mut t = Tally::default();
    for f in inst.probes.iter().chain(i.gens()) {
        let a = loc_membership(f, i, &order)?;
        let b = ideal_contains(i, f)?;
        t.record(a == b, || format!("{inst}: `{f}` loc={a} ordinary={b}"));
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub id: usize,
    pub class: InstanceClass,
    pub membership: Tally,
    pub membership_time: Duration,
    pub contraction: Option<Tally>,
    pub dimension: (i64, i64),
    pub identities: IdentityReport,
    pub order_invariance: Tally,
    pub generator_invariance: Tally,
    pub global_specialization: Tally,
    pub lift_decomposition: bool,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.membership.all_agree()
            && self.contraction.as_ref().is_none_or(Tally::all_agree)
            && self.dimension.0 == self.dimension.1
            && self.identities.all_passed()
            && self.order_invariance.all_agree()
            && self.generator_invariance.all_agree()
            && self.global_specialization.all_agree()
            && self.lift_decomposition
    }
}

/// Runs every check on one instance.
pub fn check_instance(inst: &Instance) -> Result<InstanceReport> {
    let start = Instant::now();
    let q = lift(inst.i.ideal(), inst.j.ideal())?;
    let membership = check_membership(inst, &q)?;
    let membership_time = start.elapsed();
    Ok(InstanceReport {
        id: inst.id,
        class: inst.class,
        membership,
        membership_time,
        contraction: check_contraction(inst)?,
        dimension: check_dimension(inst, &q)?,
        identities: check_identities(IdentityInputs {
            i: &inst.i,
            j: &inst.j,
            h: &inst.h,
            l: &inst.l,
        })?,
        order_invariance: check_order_invariance(inst, &q)?,
        generator_invariance: check_generator_invariance(inst, &q)?,
        global_specialization: check_global_specialization(inst)?,
        lift_decomposition: check_lift_decomposition(&q, &inst.i)?,
    })
}
