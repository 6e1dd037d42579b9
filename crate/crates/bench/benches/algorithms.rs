use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use extracta::extraction::{extraction_membership, lift};
use extracta::sb::{mora_weak_nf, reduced_gb, standard_basis, SbMethod, SbOptions};
use extracta_bench::{extraction_pair, global_cyclic, local_curve, mixed_block};

fn bases(c: &mut Criterion) {
    let mut g = c.benchmark_group("standard_basis");
    for (name, w) in [("local_curve", local_curve()), ("mixed_block", mixed_block())] {
        for method in [SbMethod::Homogenized, SbMethod::Mora] {
            let opts = SbOptions {
                method,
                ..SbOptions::default()
            };
            g.bench_with_input(BenchmarkId::new(format!("{method:?}"), name), &w, |b, w| {
                b.iter(|| standard_basis(&w.ideal, &w.order, opts).unwrap())
            });
        }
    }
    g.finish();
}

fn normal_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("weak_nf");
    for (name, w) in [("local_curve", local_curve()), ("mixed_block", mixed_block())] {
        let basis = standard_basis(&w.ideal, &w.order, SbOptions::default()).unwrap();
        g.bench_function(name, |b| b.iter(|| mora_weak_nf(&w.probe, &basis, &w.order).unwrap()));
    }
    g.finish();
}

fn groebner(c: &mut Criterion) {
    let w = global_cyclic();
    c.bench_function("reduced_gb/cyclic3", |b| b.iter(|| reduced_gb(&w.ideal)));
}

fn extraction(c: &mut Criterion) {
    let (i, j, probes) = extraction_pair();
    c.bench_function("extraction/lift", |b| b.iter(|| lift(&i, &j).unwrap()));
    c.bench_function("extraction/membership", |b| {
        b.iter(|| {
            let q = lift(&i, &j).unwrap();
            probes.iter().filter(|f| extraction_membership(f, &q).unwrap()).count()
        })
    });
}

criterion_group!(benches, bases, normal_forms, groebner, extraction);
criterion_main!(benches);
