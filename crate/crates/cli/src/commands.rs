use std::fmt::Write as _;
use std::time::Instant;

use extracta::corpus::{
    check_instance, generate, generate_one, parse_seed, seed_from_env, CorpusConfig, Instance, InstanceReport, Tally,
};
use extracta::extraction::{
    check_identities, extraction_dim, extraction_is_trivial, extraction_membership, extraction_radical_membership,
    lift, ExtractionQuery, IdentityInputs, IdentityStatus,
};
use extracta::oracle::{
    beta_oracle, check_primary_heuristic, kept_components, monomial_primary_decomposition, point_ideal,
    zero_dim_contract_oracle, PrimaryDecomposition, RationalPointSet,
};
use extracta::order::Polarity;
use extracta::parse::parse_polynomial;
use extracta::sb::{
    dim_ideal, dim_leading_ideal_loc, ideal_contains, ideals_equal, reduced_gb, standard_basis,
    strongly_independent_sets, LocalizedIdealHandle, SbMethod, SbOptions,
};
use extracta::{Ideal, Monomial, OrderSpec, Polynomial, Rational, Ring};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::{load, Command, ExtractArgs, Failure, Input, Method, Report, Source};

const PRIMARY_TRIALS: usize = 8;
const PRIMARY_SEED: u64 = 0x5EED;

pub fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::ClassifyOrder { source, order } => classify_order(source, order.as_deref()),
        Command::Sb {
            source,
            ideal,
            order,
            method,
        } => sb(source, ideal, order.as_deref(), *method),
        Command::Member {
            source,
            ideal,
            order,
            polys,
        } => member(source, ideal, order.as_deref(), polys),
        Command::ExtractMember { args, polys, radical } => extract_member(args, polys, *radical),
        Command::Extract {
            args,
            decomp,
            verify_primary,
        } => extract(args, decomp.as_deref(), *verify_primary),
        Command::ExtractDim { args } => extract_dim(args),
        Command::Dim { source, ideal, order } => dim(source, ideal, order.as_deref()),
        Command::ContractPoints { source, points, order } => contract_points(source, points, order.as_deref()),
        Command::CheckIdentities {
            source,
            di,
            dj,
            dh,
            l,
            entry,
            seed,
            verify_primary,
        } => check_identities_cmd(source, [di, dj, dh, l], *entry, seed.as_deref(), *verify_primary),
        Command::CorpusRun {
            seed,
            jobs,
            monomial,
            points,
            principal,
            probes,
            ..
        } => corpus_run(
            seed.as_deref(),
            *jobs,
            CorpusConfig {
                seed: 0,
                monomial: *monomial,
                points: *points,
                principal: *principal,
                random_probes: *probes,
            },
        ),
    }
}

fn report(input: &Input, path: Option<&std::path::Path>) -> Report {
    let mut r = Report::default();
    if let Some(p) = path {
        r.inputs.insert("file".into(), json!(p.display().to_string()));
    }
    r.inputs.insert("ring".into(), json!(input.ring.var_names()));
    r
}

fn need_ideal(input: &Input, name: &str) -> Result<Ideal, Failure> {
    input
        .ideal(name)
        .ok_or_else(|| Failure::usage(format!("undeclared ideal `{name}`")))
}

fn need_decomp<'a>(input: &'a Input, name: &str) -> Result<&'a PrimaryDecomposition, Failure> {
    input
        .decomp(name)
        .ok_or_else(|| Failure::refused(format!("missing decomposition `{name}`")))
}

/// The named order, or degrevlex with a note.
fn order_or_default(input: &Input, name: Option<&str>, r: &mut Report) -> Result<(String, OrderSpec), Failure> {
    match name {
        Some(n) => input
            .order(n)
            .cloned()
            .map(|o| (n.to_string(), o))
            .ok_or_else(|| Failure::usage(format!("undeclared order `{n}`"))),
        None => {
            r.diagnostics.push("no order given; using degrevlex".into());
            Ok(("degrevlex".into(), OrderSpec::degrevlex(&input.ring)))
        }
    }
}

/// Declared polynomial names, or literal polynomials; every declared
/// polynomial when the list is empty.
fn polys(input: &Input, specs: &[String]) -> Result<Vec<(String, Polynomial)>, Failure> {
    if specs.is_empty() {
        if input.polys.is_empty() {
            return Err(Failure::usage("no polynomials: declare `poly` or pass --poly"));
        }
        return Ok(input.polys.clone());
    }
    specs
        .iter()
        .map(|s| match input.poly(s) {
            Some(f) => Ok((s.clone(), f.clone())),
            None => parse_polynomial(&input.ring, s)
                .map(|f| (s.clone(), f))
                .map_err(|e| Failure::usage(format!("--poly `{s}`: {e}"))),
        })
        .collect()
}

fn strings<'a>(items: impl IntoIterator<Item = &'a Polynomial>) -> Vec<String> {
    items.into_iter().map(Polynomial::to_string).collect()
}

fn monomial_string(ring: &Ring, m: &Monomial) -> String {
    Polynomial::term(ring, m.clone(), Rational::one()).to_string()
}

fn ideal_string(gens: &[String]) -> String {
    format!("<{}>", gens.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn point_string(p: &[Rational]) -> String {
    let coords: Vec<String> = p.iter().map(Rational::to_string).collect();
    format!("({})", coords.join(", "))
}

fn order_json(name: &str, o: &OrderSpec) -> Value {
    json!({ "name": name, "matrix": o.rows() })
}

fn classify_order(source: &Source, name: Option<&str>) -> Result<Report, Failure> {
    let (input, path) = load(source)?;
    let (name, o) = match name {
        Some(n) => (
            n.to_string(),
            input
                .order(n)
                .cloned()
                .ok_or_else(|| Failure::usage(format!("undeclared order `{n}`")))?,
        ),
        None => match input.orders.as_slice() {
            [(n, o)] => (n.clone(), o.clone()),
            [] => return Err(Failure::usage("no order declared")),
            _ => return Err(Failure::usage("several orders declared; pick one with --order")),
        },
    };
    let mut r = report(&input, path.as_deref());
    r.inputs.insert("order".into(), order_json(&name, &o));
    let ring = &input.ring;
    let characteristic = o.characteristic();
    let levels: Vec<Value> = o
        .column_levels()
        .iter()
        .map(|c| {
            json!({
                "var": ring.var_name(c.var_index),
                "level": c.level + 1,
                "polarity": if c.polarity == Polarity::Local { "local" } else { "global" },
            })
        })
        .collect();
    let witness = if o.is_control() {
        None
    } else {
        o.control_violation(8).map(|m| monomial_string(ring, &m))
    };
    r.result = json!({
        "class": o.class().to_string(),
        "control": o.is_control(),
        "characteristic": characteristic,
        "levels": levels,
        "witness": witness,
    });
    let signs: Vec<String> = characteristic
        .iter()
        .map(|&s| if s > 0 { "+1".to_string() } else { "-1".to_string() })
        .collect();
    let mut t = String::new();
    let _ = writeln!(t, "order {name} = {o}");
    let _ = writeln!(t, "class: {}", o.class());
    let _ = writeln!(t, "control: {}", o.is_control());
    let _ = writeln!(t, "characteristic: ({})", signs.join(", "));
    let lv: Vec<String> = o
        .column_levels()
        .iter()
        .map(|c| {
            let pol = if c.polarity == Polarity::Local {
                "local"
            } else {
                "global"
            };
            format!("{}:{} {pol}", ring.var_name(c.var_index), c.level + 1)
        })
        .collect();
    let _ = writeln!(t, "levels: {}", lv.join(", "));
    if let Some(w) = &witness {
        let _ = writeln!(t, "witness: {w} > 1 with a local divisor");
    }
    r.text = t;
    Ok(r)
}

fn sb(source: &Source, ideal: &str, order: Option<&str>, method: Method) -> Result<Report, Failure> {
    let (input, path) = load(source)?;
    let mut r = report(&input, path.as_deref());
    let i = need_ideal(&input, ideal)?;
    let (oname, o) = order_or_default(&input, order, &mut r)?;
    r.inputs.insert(ideal.into(), json!(i.to_string()));
    r.inputs.insert("order".into(), order_json(&oname, &o));
    let opts = SbOptions {
        method: match method {
            Method::Homogenized => SbMethod::Homogenized,
            Method::Mora => SbMethod::Mora,
        },
        ..SbOptions::default()
    };
    let basis = standard_basis(&i, &o, opts)?;
    let printed: Vec<String> = basis.iter().map(|g| o.format(g)).collect();
    let leading: Vec<String> = basis
        .iter()
        .map(|g| o.leading_term(g).map(|(m, _)| monomial_string(&input.ring, &m)))
        .collect::<extracta::Result<_>>()?;
    let whole = basis.iter().any(|g| g.is_constant() && !g.is_zero());
    r.result = json!({
        "basis": printed,
        "leading_terms": leading,
        "whole_ring": whole,
    });
    let mut t = String::new();
    let _ = writeln!(
        t,
        "standard basis of {ideal} under {oname} ({} elements):",
        printed.len()
    );
    for g in &printed {
        let _ = writeln!(t, "  {g}");
    }
    let _ = writeln!(t, "leading terms: {}", ideal_string(&leading));
    let _ = writeln!(t, "whole ring: {whole}");
    r.text = t;
    Ok(r)
}

fn member(source: &Source, ideal: &str, order: Option<&str>, specs: &[String]) -> Result<Report, Failure> {
    let (input, path) = load(source)?;
    let mut r = report(&input, path.as_deref());
    let i = need_ideal(&input, ideal)?;
    let (oname, o) = order_or_default(&input, order, &mut r)?;
    let fs = polys(&input, specs)?;
    r.inputs.insert(ideal.into(), json!(i.to_string()));
    r.inputs.insert("order".into(), order_json(&oname, &o));
    let h = LocalizedIdealHandle::new(i, o.clone())?;
    let basis = h.standard_basis();
    let mut answers = Vec::new();
    let mut t = String::new();
    for (label, f) in &fs {
        let nf = h.weak_nf(f)?;
        let member = nf.remainder.is_zero();
        let verified = nf.verify(f, &basis, &o);
        if !verified {
            r.check_failed = true;
        }
        answers.push(json!({
            "poly": label,
            "value": f.to_string(),
            "member": member,
            "remainder": o.format(&nf.remainder),
            "certificate_verified": verified,
        }));
        let _ = writeln!(t, "{label}: {} (remainder {})", yes(member), o.format(&nf.remainder));
    }
    r.result = json!({ "answers": answers });
    r.text = t;
    Ok(r)
}

fn load_extraction(args: &ExtractArgs) -> Result<(Input, Report, ExtractionQuery), Failure> {
    let (input, path) = load(&args.source)?;
    let mut r = report(&input, path.as_deref());
    let i = need_ideal(&input, &args.ideal)?;
    let j = need_ideal(&input, &args.control)?;
    r.inputs.insert(args.ideal.clone(), json!(i.to_string()));
    r.inputs.insert(args.control.clone(), json!(j.to_string()));
    let q = lift(&i, &j)?;
    Ok((input, r, q))
}

fn lift_json(q: &ExtractionQuery) -> Value {
    json!({
        "ring": q.lifted_ring().var_names(),
        "ideal": q.lifted_ideal().to_string(),
        "order": q.order().rows(),
    })
}

fn extract_member(args: &ExtractArgs, specs: &[String], radical: bool) -> Result<Report, Failure> {
    let (input, mut r, q) = load_extraction(args)?;
    let fs = polys(&input, specs)?;
    let mut answers = Vec::new();
    let mut t = String::new();
    for (label, f) in &fs {
        let m = extraction_membership(f, &q)?;
        let mut a = json!({ "poly": label, "value": f.to_string(), "member": m });
        let _ = write!(t, "{label}: {}", yes(m));
        if radical {
            let rm = extraction_radical_membership(f, &q)?;
            a["radical_member"] = json!(rm);
            let _ = write!(t, " (radical: {})", yes(rm));
        }
        t.push('\n');
        answers.push(a);
    }
    r.result = json!({
        "lift": lift_json(&q),
        "trivial": extraction_is_trivial(&q),
        "answers": answers,
    });
    r.text = t;
    Ok(r)
}

fn verify_primary(d: &PrimaryDecomposition) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(PRIMARY_SEED);
    for c in d.components() {
        if !check_primary_heuristic(c, &mut rng, PRIMARY_TRIALS)? {
            return Err(Failure::refused(format!("component {c} is not primary")));
        }
    }
    Ok(())
}

fn decomposition_json(d: &PrimaryDecomposition) -> Value {
    json!({
        "provenance": d.provenance().as_str(),
        "minimal": d.is_minimal(),
        "components": d.components().iter().map(Ideal::to_string).collect::<Vec<_>>(),
    })
}

/// The decomposition used for `I`: the named one, a declared one of the same
/// ideal, or the monomial split.
fn pick_decomposition(
    input: &Input,
    i: &Ideal,
    name: Option<&str>,
    r: &mut Report,
) -> Result<PrimaryDecomposition, Failure> {
    if let Some(n) = name {
        let d = need_decomp(input, n)?;
        if !ideals_equal(d.ideal(), i)? {
            return Err(Failure::refused(format!("`{n}` does not decompose {i}")));
        }
        return Ok(d.clone());
    }
    for (n, d) in &input.decomps {
        if ideals_equal(d.ideal(), i)? {
            r.diagnostics.push(format!("using decomposition `{n}`"));
            return Ok(d.clone());
        }
    }
    if i.is_monomial() {
        r.diagnostics.push("using the monomial decomposition".into());
        return Ok(monomial_primary_decomposition(i)?);
    }
    Err(Failure::refused(format!("missing decomposition of {i}")))
}

fn extract(args: &ExtractArgs, decomp: Option<&str>, check_primary: bool) -> Result<Report, Failure> {
    let (input, mut r, q) = load_extraction(args)?;
    let i = q.ideal().clone();
    let j = q.control().clone();
    let d = pick_decomposition(&input, &i, decomp, &mut r)?;
    if check_primary {
        verify_primary(&d)?;
        r.diagnostics
            .push("components passed the heuristic primary test".into());
    }
    let kept = kept_components(&d, &j)?;
    let (kept_c, dropped_c): (Vec<_>, Vec<_>) = d.components().iter().enumerate().partition(|(k, _)| kept.contains(k));
    let beta = beta_oracle(&d, &j)?;
    let gens = reduced_gb(&beta);
    let trivial = extraction_is_trivial(&q);
    let mut agrees = trivial == (gens.len() == 1 && gens[0].is_constant());
    for g in &gens {
        agrees &= extraction_membership(g, &q)?;
    }
    if !agrees {
        r.check_failed = true;
    }
    let printed = strings(&gens);
    r.result = json!({
        "decomposition": decomposition_json(&d),
        "kept": kept_c.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
        "dropped": dropped_c.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
        "status": if trivial { "trivial" } else { "proper" },
        "generators": printed,
        "lift_agrees": agrees,
    });
    let mut t = String::new();
    let _ = writeln!(t, "beta({}, {}) = {}", args.ideal, args.control, ideal_string(&printed));
    for (_, c) in &kept_c {
        let _ = writeln!(t, "  kept    {c}");
    }
    for (_, c) in &dropped_c {
        let _ = writeln!(t, "  dropped {c}");
    }
    let _ = writeln!(t, "lifted membership agrees: {agrees}");
    r.text = t;
    Ok(r)
}

fn extract_dim(args: &ExtractArgs) -> Result<Report, Failure> {
    let (_, mut r, q) = load_extraction(args)?;
    let d = extraction_dim(&q)?;
    let trivial = extraction_is_trivial(&q);
    r.result = json!({ "dim": d, "trivial": trivial });
    r.text = format!("dim beta({}, {}) = {d}\n", args.ideal, args.control);
    Ok(r)
}

fn dim(source: &Source, ideal: &str, order: Option<&str>) -> Result<Report, Failure> {
    let (input, path) = load(source)?;
    let mut r = report(&input, path.as_deref());
    let i = need_ideal(&input, ideal)?;
    r.inputs.insert(ideal.into(), json!(i.to_string()));
    let ring = &input.ring;
    let local_order = match order {
        None => None,
        Some(n) => {
            let o = input
                .order(n)
                .cloned()
                .ok_or_else(|| Failure::usage(format!("undeclared order `{n}`")))?;
            r.inputs.insert("order".into(), order_json(n, &o));
            if o.is_global() {
                r.diagnostics
                    .push("global order: dimension computed from a degrevlex basis".into());
                None
            } else {
                Some(o)
            }
        }
    };
    match local_order {
        None => {
            let d = dim_ideal(&i);
            let sets = strongly_independent_sets(&i, &OrderSpec::degrevlex(ring))?;
            let named: Vec<Vec<&str>> = sets
                .iter()
                .map(|s| s.iter().map(|&k| ring.var_name(k)).collect())
                .collect();
            r.result = json!({ "dim": d, "independent_sets": named });
            let shown: Vec<String> = named.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
            r.text = format!("dim {ideal} = {d}\nmaximal independent sets: {}\n", shown.join(" "));
        }
        Some(o) => {
            let h = LocalizedIdealHandle::new(i, o)?;
            let d = dim_leading_ideal_loc(&h)?;
            r.result = json!({ "dim": d });
            r.text = format!("dim of {ideal} localized = {d}\n");
        }
    }
    Ok(r)
}

fn contract_points(source: &Source, points: &str, order: Option<&str>) -> Result<Report, Failure> {
    let (input, path) = load(source)?;
    let mut r = report(&input, path.as_deref());
    let set: RationalPointSet = input
        .point_set(points)
        .cloned()
        .ok_or_else(|| Failure::usage(format!("undeclared point set `{points}`")))?;
    let (oname, o) = order_or_default(&input, order, &mut r)?;
    r.inputs.insert(
        points.into(),
        json!(set.points().iter().map(|p| point_string(p)).collect::<Vec<_>>()),
    );
    r.inputs.insert("order".into(), order_json(&oname, &o));
    let locals = o.local_vars();
    let (kept, dropped): (Vec<&Vec<Rational>>, Vec<&Vec<Rational>>) = set
        .points()
        .iter()
        .partition(|p| locals.iter().all(|&k| num_traits::Zero::is_zero(&p[k])));
    let expected = zero_dim_contract_oracle(&set, &o)?;
    let gens = reduced_gb(&expected);
    let (i, _) = point_ideal(&set)?;
    let h = LocalizedIdealHandle::new(i.clone(), o)?;
    let ring = &input.ring;
    let mut probes = gens.clone();
    probes.extend(i.nonzero_gens());
    probes.extend((0..ring.nvars()).map(|k| Polynomial::variable(ring, k)));
    probes.push(Polynomial::one(ring));
    let mut agrees = true;
    for f in &probes {
        agrees &= h.contains(f)? == ideal_contains(&expected, f)?;
    }
    if !agrees {
        r.check_failed = true;
    }
    let printed = strings(&gens);
    r.result = json!({
        "kept_points": kept.iter().map(|p| point_string(p)).collect::<Vec<_>>(),
        "dropped_points": dropped.iter().map(|p| point_string(p)).collect::<Vec<_>>(),
        "generators": printed,
        "localization_agrees": agrees,
    });
    let kept_s: Vec<String> = kept.iter().map(|p| point_string(p)).collect();
    r.text = format!(
        "kept points: {}\ncontraction: {}\nlocalized membership agrees: {agrees}\n",
        kept_s.join(" "),
        ideal_string(&printed)
    );
    Ok(r)
}

fn corpus_config(seed: Option<&str>, base: CorpusConfig) -> Result<CorpusConfig, Failure> {
    let seed = match seed {
        Some(s) => parse_seed(s)?,
        None => seed_from_env()?,
    };
    Ok(CorpusConfig { seed, ..base })
}

fn check_identities_cmd(
    source: &Source,
    names: [&String; 4],
    entry: Option<usize>,
    seed: Option<&str>,
    check_primary: bool,
) -> Result<Report, Failure> {
    let [di, dj, dh, l] = names;
    let (mut r, decomps, l_ideal, label) = match entry {
        Some(id) => {
            let cfg = corpus_config(seed, CorpusConfig::default())?;
            if id >= cfg.total() {
                return Err(Failure::usage(format!("corpus has {} entries", cfg.total())));
            }
            let inst: Instance = generate_one(&cfg, id)?;
            let mut r = Report::default();
            r.inputs.insert("entry".into(), json!(id));
            r.inputs.insert("seed".into(), json!(cfg.seed));
            r.inputs.insert("class".into(), json!(inst.class.as_str()));
            r.inputs.insert("ring".into(), json!(inst.ring().var_names()));
            let label = format!("corpus entry {id} ({})", inst.class);
            (r, [inst.i, inst.j, inst.h], inst.l, label)
        }
        None => {
            let (input, path) = load(source)?;
            let r = report(&input, path.as_deref());
            let l_ideal = need_ideal(&input, l)?;
            let ds = [
                need_decomp(&input, di)?.clone(),
                need_decomp(&input, dj)?.clone(),
                need_decomp(&input, dh)?.clone(),
            ];
            (r, ds, l_ideal, "input".to_string())
        }
    };
    for (role, d) in ["I", "J", "H"].iter().zip(&decomps) {
        r.inputs.insert((*role).into(), json!(d.ideal().to_string()));
        if check_primary {
            verify_primary(d)?;
        }
    }
    r.inputs.insert("L".into(), json!(l_ideal.to_string()));
    let rep = check_identities(IdentityInputs {
        i: &decomps[0],
        j: &decomps[1],
        h: &decomps[2],
        l: &l_ideal,
    })?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            let (status, detail) = match &c.status {
                IdentityStatus::Pass => ("pass", None),
                IdentityStatus::Fail(w) => ("fail", Some(w.clone())),
                IdentityStatus::Skipped(w) => ("skipped", Some(w.clone())),
            };
            json!({
                "name": c.name,
                "statement": c.statement,
                "status": status,
                "checked": !matches!(c.status, IdentityStatus::Skipped(_)),
                "detail": detail,
            })
        })
        .collect();
    r.check_failed = !rep.all_passed();
    r.result = json!({ "checks": checks, "all_passed": rep.all_passed() });
    r.text = format!("identities on {label}:\n{rep}");
    Ok(r)
}

#[derive(Default)]
struct Summary {
    membership: Tally,
    contraction: Tally,
    order_invariance: Tally,
    generator_invariance: Tally,
    global_specialization: Tally,
    dimension: Tally,
    identities: Tally,
    lift_decomposition: Tally,
}

impl Summary {
    fn add(&mut self, rep: &InstanceReport) {
        let id = rep.id;
        self.membership.merge(&rep.membership);
        if let Some(c) = &rep.contraction {
            self.contraction.merge(c);
        }
        self.order_invariance.merge(&rep.order_invariance);
        self.generator_invariance.merge(&rep.generator_invariance);
        self.global_specialization.merge(&rep.global_specialization);
        let (a, b) = rep.dimension;
        self.dimension.record(a == b, || format!("#{id}: {a} vs {b}"));
        for c in &rep.identities.checks {
            if let IdentityStatus::Fail(w) = &c.status {
                self.identities.record(false, || format!("#{id} {}: {w}", c.name));
            } else {
                self.identities.record(true, String::new);
            }
        }
        self.lift_decomposition
            .record(rep.lift_decomposition, || format!("#{id}"));
    }
}

fn corpus_run(seed: Option<&str>, jobs: usize, base: CorpusConfig) -> Result<Report, Failure> {
    let cfg = corpus_config(seed, base)?;
    let start = Instant::now();
    let instances = generate(&cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let results: Vec<(usize, extracta::Result<InstanceReport>)> = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| (inst.id, check_instance(inst)))
            .collect()
    });
    let elapsed = start.elapsed();

    let mut summary = Summary::default();
    let mut failed: Vec<usize> = Vec::new();
    let mut errors: Vec<String> = Vec::new();
    for (id, res) in &results {
        match res {
            Ok(rep) => {
                summary.add(rep);
                if !rep.passed() {
                    failed.push(*id);
                }
            }
            Err(e) => {
                failed.push(*id);
                errors.push(format!("#{id}: {e}"));
            }
        }
    }
    let mut r = Report::default();
    r.inputs.insert("seed".into(), json!(cfg.seed));
    r.inputs.insert(
        "counts".into(),
        json!({ "monomial": cfg.monomial, "points": cfg.points, "principal": cfg.principal, "probes": cfg.random_probes }),
    );
    let tallies: [(&str, &Tally); 8] = [
        ("membership", &summary.membership),
        ("contraction", &summary.contraction),
        ("dimension", &summary.dimension),
        ("identities", &summary.identities),
        ("order_invariance", &summary.order_invariance),
        ("generator_invariance", &summary.generator_invariance),
        ("global_specialization", &summary.global_specialization),
        ("lift_decomposition", &summary.lift_decomposition),
    ];
    let mut obj = Map::new();
    obj.insert("instances".into(), json!(results.len()));
    obj.insert("passed".into(), json!(results.len() - failed.len()));
    obj.insert("failed".into(), json!(failed));
    for (k, t) in &tallies {
        obj.insert((*k).into(), json!({ "agree": t.agree, "total": t.total }));
    }
    let mut mismatches: Vec<String> = errors.clone();
    for (_, t) in &tallies {
        mismatches.extend(t.mismatches.iter().cloned());
    }
    obj.insert("mismatches".into(), json!(mismatches));
    r.result = Value::Object(obj);
    r.check_failed = !failed.is_empty();
    r.diagnostics.push(format!("{} worker thread(s)", jobs.max(1)));

    let mut t = String::new();
    let _ = writeln!(
        t,
        "corpus seed {}: {} instances, {} passed in {:.1} s",
        cfg.seed,
        results.len(),
        results.len() - failed.len(),
        elapsed.as_secs_f64()
    );
    for (k, tally) in &tallies {
        let _ = writeln!(t, "  {k:<22} {tally}");
    }
    for m in &mismatches {
        let _ = writeln!(t, "  mismatch: {m}");
    }
    r.text = t;
    Ok(r)
}
