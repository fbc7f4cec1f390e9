use std::hint::black_box;

use bicay_core::{GroupParams, PrimePowerModulus};
use criterion::{criterion_group, criterion_main, Criterion};

fn residues(c: &mut Criterion) {
    let q = PrimePowerModulus::new(7, 3).unwrap();
    let x = q.residue(123);
    c.bench_function("residue/pow", |b| b.iter(|| black_box(x).pow(black_box(1_000_003))));
    c.bench_function("residue/inverse", |b| b.iter(|| black_box(x).inverse().unwrap()));
    c.bench_function("residue/sqrt", |b| b.iter(|| (black_box(x) * x).sqrt_unit().unwrap()));
    c.bench_function("residue/element_of_order", |b| b.iter(|| q.element_of_order(black_box(49)).unwrap()));
}

fn group_ops(c: &mut Criterion) {
    let g = GroupParams::new(5, 3, 2, 1).unwrap().group();
    let elems: Vec<_> = g.elements().collect();
    c.bench_function("group/mul_all_by_one", |b| {
        let y = elems[elems.len() / 3];
        b.iter(|| elems.iter().fold(g.identity(), |acc, &x| g.mul(acc, g.mul(x, y))))
    });
    c.bench_function("group/pow", |b| b.iter(|| g.pow(black_box(elems[777]), black_box(1_000_003))));
    let small = GroupParams::new(3, 2, 1, 1).unwrap().group();
    c.bench_function("group/automorphisms_27", |b| b.iter(|| small.enumerate_automorphisms(1_000).unwrap()));
}

criterion_group!(benches, residues, group_ops);
criterion_main!(benches);
