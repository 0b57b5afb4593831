use criterion::{criterion_group, criterion_main, Criterion};
use lmod_bench::factorization_pair;
use lmod_core::Oracle;

fn sphere_factorization(c: &mut Criterion) {
    let oracle = Oracle::default();
    for n in 1..=3 {
        let (ctx, r1, rf) = factorization_pair(n);
        c.bench_function(&format!("eq_sphere r1 = rF n={n}"), |b| {
            b.iter(|| oracle.eq_sphere(&r1, &rf, &ctx).unwrap())
        });
    }
}

criterion_group!(benches, sphere_factorization);
criterion_main!(benches);
