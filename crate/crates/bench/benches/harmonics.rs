use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use disentangle::{
    build_rep, disentangled_product, exp_i_theta_ly, ylm, DisentanglingOrder, HalfInt, Method,
};

fn harmonics(c: &mut Criterion) {
    let mut group = c.benchmark_group("ylm");
    for l in [1u32, 5, 10] {
        let m = -(l as i64) / 2;
        for method in Method::ALL {
            group.bench_with_input(BenchmarkId::new(method.name(), l), &l, |b, &l| {
                b.iter(|| ylm(black_box(l), m, black_box(1.1), 0.7, method).unwrap())
            });
        }
    }
    group.finish();
}

fn rotations(c: &mut Criterion) {
    let mut group = c.benchmark_group("rotation");
    for twice in [1i64, 10, 20] {
        let rep = build_rep(HalfInt::from_doubled(twice)).unwrap();
        let l = HalfInt::from_doubled(twice);
        group.bench_with_input(BenchmarkId::new("exp_i_theta_ly", l), &rep, |b, rep| {
            b.iter(|| exp_i_theta_ly(rep, black_box(1.1)))
        });
        group.bench_with_input(
            BenchmarkId::new("disentangled_product", l),
            &rep,
            |b, rep| {
                b.iter(|| {
                    disentangled_product(rep, black_box(1.1), DisentanglingOrder::Ldu).unwrap()
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, harmonics, rotations);
criterion_main!(benches);
