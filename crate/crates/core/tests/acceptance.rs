//! Acceptance suite: one PASS/FAIL line per criterion.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use extracta::corpus::{
    check_contraction, check_dimension, check_generator_invariance, check_membership, check_order_invariance, generate,
    seed_from_env, CorpusConfig, Instance, InstanceClass, Tally,
};
use extracta::extraction::{check_identities, extraction_membership, lift, IdentityInputs, IdentityStatus};
use extracta::oracle::{beta_oracle, PrimaryDecomposition};
use extracta::parse::parse_polynomial;
use extracta::sb::audit::AuditScope;
use extracta::sb::{
    dim_ideal, dim_leading_ideal_loc, ideals_equal, loc_membership, mora_weak_nf, LocalizedIdealHandle,
};
use extracta::{Error, Ideal, Monomial, OrderClass, OrderSpec, Polynomial, Ring};

const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const MIN_INSTANCES: usize = 200;
const MIN_MIXED_ORDERS: usize = 5;
const MIN_LIFT_PAIRS: usize = 50;

type Outcome = Result<String, String>;

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
}

fn poly(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn extraction_example() -> Outcome {
    let start = Instant::now();
    let r = Ring::new(["x", "y"]).map_err(|e| e.to_string())?;
    let i = ideal(&r, &["x^2", "x*y"]);
    let j = ideal(&r, &["x", "y - 1"]);
    let x = ideal(&r, &["x"]);
    let first =
        PrimaryDecomposition::user_supplied(i.clone(), vec![x.clone(), ideal(&r, &["x^2", "x*y", "y^2"])], None)
            .map_err(|e| e.to_string())?;
    let second = PrimaryDecomposition::user_supplied(i.clone(), vec![x.clone(), ideal(&r, &["x^2", "y"])], None)
        .map_err(|e| e.to_string())?;
    for (name, d) in [("{<x>, <x,y>^2}", &first), ("{<x>, <x^2,y>}", &second)] {
        let beta = beta_oracle(d, &j).map_err(|e| e.to_string())?;
        ensure(
            ideals_equal(&beta, &x).unwrap(),
            format!("extract from {name} gave {beta}"),
        )?;
    }
    let q = lift(&i, &j).map_err(|e| e.to_string())?;
    ensure(extraction_membership(&poly(&r, "x"), &q).unwrap(), "x not a member")?;
    ensure(
        !extraction_membership(&poly(&r, "y"), &q).unwrap(),
        "y reported a member",
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < EXAMPLE_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!(
        "beta = <x> from both decompositions; x yes, y no; {elapsed:.2?}"
    ))
}

fn order_example() -> Outcome {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    let m =
        OrderSpec::from_matrix(&r, vec![vec![-1, -1, 0], vec![0, 0, 1], vec![0, 1, 0]]).map_err(|e| e.to_string())?;
    ensure(m.class() == OrderClass::Mixed, format!("class {}", m.class()))?;
    ensure(m.is_control(), "not control")?;
    ensure(
        m.characteristic() == vec![-1, -1, 1],
        format!("characteristic {:?}", m.characteristic()),
    )?;
    let e = |v: [u32; 3]| Monomial::from_exponents(&v);
    ensure(
        m.compare(&e([2, 1, 2]), &e([1, 2, 1])) == Ordering::Greater,
        "x^2yz^2 > xy^2z fails",
    )?;
    ensure(
        m.compare(&e([2, 1, 0]), &e([1, 2, 0])) == Ordering::Less,
        "x^2y < xy^2 fails",
    )?;
    Ok("mixed, control, characteristic (-1,-1,+1); both comparisons reproduced".into())
}

fn diagonal_example() -> Outcome {
    let r = Ring::new(["x", "y"]).unwrap();
    let diag = OrderSpec::from_matrix(&r, vec![vec![1, 0], vec![0, -1]]).unwrap();
    let i = ideal(&r, &["x*y - 1"]);
    ensure(dim_ideal(&i) == 1, format!("dim_ideal = {}", dim_ideal(&i)))?;
    let h = LocalizedIdealHandle::new(i.clone(), diag.clone()).unwrap();
    match dim_leading_ideal_loc(&h) {
        Err(Error::NonControlOrder(_)) => {}
        other => return Err(format!("leading-ideal dimension not refused: {other:?}")),
    }
    ensure(
        loc_membership(&poly(&r, "x*y - 1"), &i, &diag).unwrap(),
        "xy-1 not in I^e",
    )?;
    ensure(!loc_membership(&Polynomial::one(&r), &i, &diag).unwrap(), "1 in I^e")?;
    Ok("dim 1; surrogate refused; xy-1 in I^e, 1 not in I^e".into())
}

fn mora_anchors(audit: &AuditScope) -> Outcome {
    let r = Ring::new(["x"]).unwrap();
    let local = OrderSpec::from_matrix(&r, vec![vec![-1]]).unwrap();
    let x = poly(&r, "x");
    let g = vec![poly(&r, "x - x^2")];
    let nf = mora_weak_nf(&x, &g, &local).unwrap();
    ensure(nf.remainder.is_zero(), format!("local remainder {}", nf.remainder))?;
    ensure(nf.verify(&x, &g, &local), "local certificate rejected")?;
    let lex = OrderSpec::lex(&r);
    ensure(
        !loc_membership(&x, &ideal(&r, &["x^2 - x"]), &lex).unwrap(),
        "x in <x^2-x> under lex",
    )?;
    let stats = audit.stats();
    ensure(stats.checked > 0, "no certificates audited")?;
    ensure(
        stats.failed == 0,
        format!("{} of {} certificates failed", stats.failed, stats.checked),
    )?;
    Ok(format!(
        "anchors hold; {} certificates audited, 0 failed",
        stats.checked
    ))
}

struct CorpusRun {
    instances: Vec<Instance>,
    membership: Tally,
    membership_time: Duration,
    contraction: Tally,
    point_instances: usize,
    min_orders: usize,
    has_non_control: bool,
    dimension: Tally,
    identities: Tally,
    radical_checked: usize,
    lift_pairs: Tally,
    order_invariance: Tally,
    generator_invariance: Tally,
    errors: Vec<String>,
}

fn run_corpus() -> CorpusRun {
    let seed = seed_from_env().expect("bad seed");
    let cfg = CorpusConfig {
        seed,
        ..CorpusConfig::default()
    };
    let instances = generate(&cfg).expect("corpus generation");
    let mut run = CorpusRun {
        instances: Vec::new(),
        membership: Tally::default(),
        membership_time: Duration::ZERO,
        contraction: Tally::default(),
        point_instances: 0,
        min_orders: usize::MAX,
        has_non_control: false,
        dimension: Tally::default(),
        identities: Tally::default(),
        radical_checked: 0,
        lift_pairs: Tally::default(),
        order_invariance: Tally::default(),
        generator_invariance: Tally::default(),
        errors: Vec::new(),
    };
    for inst in &instances {
        if let Err(e) = run_one(inst, &mut run) {
            run.errors.push(format!("{inst}: {e}"));
        }
    }
    run.instances = instances;
    run
}

fn run_one(inst: &Instance, run: &mut CorpusRun) -> extracta::Result<()> {
    let start = Instant::now();
    let q = lift(inst.i.ideal(), inst.j.ideal())?;
    run.membership.merge(&check_membership(inst, &q)?);
    run.membership_time += start.elapsed();

    if let Some(t) = check_contraction(inst)? {
        run.contraction.merge(&t);
        run.point_instances += 1;
        let pool = extracta::corpus::mixed_order_pool(inst.ring());
        run.min_orders = run.min_orders.min(pool.len());
        run.has_non_control |= pool.iter().any(|o| !o.is_control());
    }

    let (by_lift, by_oracle) = check_dimension(inst, &q)?;
    run.dimension.record(by_lift == by_oracle, || {
        format!("{inst}: extraction_dim {by_lift}, oracle {by_oracle}")
    });

    let report = check_identities(IdentityInputs {
        i: &inst.i,
        j: &inst.j,
        h: &inst.h,
        l: &inst.l,
    })?;
    for c in &report.checks {
        match (&c.status, c.name) {
            (IdentityStatus::Pass, "L") => run.lift_pairs.record(true, String::new),
            (IdentityStatus::Fail(why), "L") => run.lift_pairs.record(false, || format!("{inst}: {why}")),
            (IdentityStatus::Pass, name) => {
                if name == "(2)" {
                    run.radical_checked += 1;
                }
                run.identities.record(true, String::new)
            }
            (IdentityStatus::Fail(why), name) => run.identities.record(false, || format!("{inst}: {name} {why}")),
            (IdentityStatus::Skipped(why), "(2)") => {
                let required = inst.class != InstanceClass::Principal;
                run.identities
                    .record(!required, || format!("{inst}: (2) skipped: {why}"))
            }
            (IdentityStatus::Skipped(why), name) => run
                .identities
                .record(false, || format!("{inst}: {name} skipped: {why}")),
        }
    }
    run.order_invariance.merge(&check_order_invariance(inst, &q)?);
    run.generator_invariance.merge(&check_generator_invariance(inst, &q)?);
    Ok(())
}

fn tally_outcome(t: &Tally, errors: &[String], detail: String) -> Outcome {
    if let Some(e) = errors.first() {
        return Err(format!("error: {e}"));
    }
    if t.total == 0 {
        return Err("nothing checked".into());
    }
    if !t.all_agree() {
        return Err(format!("{t} agree; first: {}", t.mismatches.join(" | ")));
    }
    Ok(detail)
}

fn main() -> ExitCode {
    let audit = AuditScope::new();
    let mut results: Vec<(u8, &str, Outcome)> = vec![
        (1, "worked extraction example", extraction_example()),
        (2, "worked matrix order example", order_example()),
        (3, "non-control diagonal order example", diagonal_example()),
    ];

    let start = Instant::now();
    let run = run_corpus();
    let corpus_time = start.elapsed();
    let n = run.instances.len();

    let c4 = tally_outcome(
        &run.membership,
        &run.errors,
        format!("{} probes on {n} instances agree", run.membership),
    )
    .and_then(|d| {
        ensure(n >= MIN_INSTANCES, format!("only {n} instances"))?;
        ensure(corpus_time < CORPUS_LIMIT, format!("corpus took {corpus_time:.2?}"))?;
        Ok(format!(
            "{d}; membership {:.2?}, full corpus {corpus_time:.2?}",
            run.membership_time
        ))
    });
    results.push((4, "lifted membership vs oracle beta", c4));

    let c5 = tally_outcome(
        &run.contraction,
        &run.errors,
        format!("{} probes on {} point sets", run.contraction, run.point_instances),
    )
    .and_then(|d| {
        ensure(
            run.min_orders >= MIN_MIXED_ORDERS,
            format!("only {} mixed orders", run.min_orders),
        )?;
        ensure(run.has_non_control, "no non-control order in the pool")?;
        Ok(format!(
            "{d}; >= {} mixed orders each, non-control included",
            run.min_orders
        ))
    });
    results.push((5, "zero-dimensional contraction under mixed orders", c5));

    let c6 = tally_outcome(&run.dimension, &run.errors, format!("{} instances", run.dimension));
    results.push((6, "extraction dimension vs kept components", c6));

    let monomial = run
        .instances
        .iter()
        .filter(|i| i.class == InstanceClass::Monomial)
        .count();
    let c7 = tally_outcome(
        &run.identities,
        &run.errors,
        format!("{} identity checks", run.identities),
    )
    .and_then(|d| {
        ensure(
            run.lift_pairs.all_agree(),
            format!("lift of intersection: {}", run.lift_pairs.mismatches.join(" | ")),
        )?;
        ensure(monomial >= MIN_LIFT_PAIRS, format!("only {monomial} monomial pairs"))?;
        Ok(format!(
            "{d}; (2) checked on {}; lift of intersection {} ({monomial} monomial pairs)",
            run.radical_checked, run.lift_pairs
        ))
    });
    results.push((7, "identity suite", c7));

    let mut inv = run.order_invariance.clone();
    inv.merge(&run.generator_invariance);
    let c8 = tally_outcome(
        &inv,
        &run.errors,
        format!(
            "equivalent orders {}, regenerated J {}",
            run.order_invariance, run.generator_invariance
        ),
    );
    results.push((8, "order and generator invariance", c8));

    results.push((9, "weak normal form anchors and certificates", mora_anchors(&audit)));

    let mut failed = 0;
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k}: FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
