use bicay_bench::havt_graph;
use bicay_core::{symmetry, Limits};
use criterion::{criterion_group, criterion_main, Criterion};

fn automorphism_search(c: &mut Criterion) {
    let limits = Limits::default();
    let cases = [("54", havt_graph(3, 2, 1, 1, 1, 2, 0)), ("250", havt_graph(5, 2, 1, 1, 1, 2, 0))];
    for (name, bc) in &cases {
        c.bench_function(&format!("aut/{name}"), |b| {
            b.iter(|| symmetry::automorphism_group(bc.graph(), &limits).unwrap())
        });
    }
    let (_, bc) = &cases[1];
    let aut = symmetry::automorphism_group(bc.graph(), &limits).unwrap();
    c.bench_function("classify/250", |b| b.iter(|| symmetry::report_for(bc.graph(), &aut)));
    c.bench_function("normalizer/250", |b| b.iter(|| bc.normalizer_decomposition(&limits).unwrap()));
}

criterion_group!(benches, automorphism_search);
criterion_main!(benches);
