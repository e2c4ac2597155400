use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use origami_bench::{blown_up_sequence, chopped_triangle, winding_sequence};
use origami_core::realize2d::realize;
use origami_core::{OrigamiTemplate, Orientation, UnimodularSequence};

fn degree(c: &mut Criterion) {
    let mut g = c.benchmark_group("degree");
    for turns in [1, 4, 16] {
        let s = UnimodularSequence::new(winding_sequence(turns)).unwrap();
        let mf = s.multifan().merge();
        g.bench_with_input(BenchmarkId::new("winding", turns), &mf, |b, mf| b.iter(|| mf.degree().unwrap()));
    }
    let cube = origami_core::DelzantPolytope::cube(3).unwrap().normal_fan(Orientation::Positive).unwrap();
    g.bench_function("cube-fan", |b| b.iter(|| cube.degree().unwrap()));
    g.finish();
}

fn realization(c: &mut Criterion) {
    let mut g = c.benchmark_group("realize");
    for k in [0, 3, 7] {
        let s = UnimodularSequence::new(blown_up_sequence(k)).unwrap();
        g.bench_with_input(BenchmarkId::new("blown-up", s.len()), &s, |b, s| b.iter(|| realize(black_box(s)).unwrap()));
    }
    let s = UnimodularSequence::new(winding_sequence(2)).unwrap();
    g.bench_function("winding-2", |b| b.iter(|| realize(black_box(&s)).unwrap()));
    g.finish();
}

fn templates(c: &mut Criterion) {
    let mut g = c.benchmark_group("template");
    let s4 = OrigamiTemplate::sphere(3).unwrap();
    g.bench_function("sphere3-validate", |b| b.iter(|| s4.validate()));
    g.bench_function("sphere3-multifan", |b| b.iter(|| s4.multifan().unwrap()));
    let cert = realize(&UnimodularSequence::new(blown_up_sequence(8)).unwrap()).unwrap();
    g.bench_function("realized-multifan-merge", |b| b.iter(|| cert.template.multifan().unwrap().merge()));
    g.finish();
}

fn polytopes(c: &mut Criterion) {
    let mut g = c.benchmark_group("polytope");
    for k in [0, 5] {
        let p = chopped_triangle(k);
        g.bench_with_input(BenchmarkId::new("normal-fan", p.facets().len()), &p, |b, p| {
            b.iter(|| p.normal_fan(Orientation::Positive).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("delzant", p.facets().len()), &p, |b, p| b.iter(|| p.is_delzant()));
    }
    g.finish();
}

criterion_group!(benches, degree, realization, templates, polytopes);
criterion_main!(benches);
