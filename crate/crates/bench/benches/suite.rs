use criterion::{criterion_group, criterion_main, Criterion};
use lmod_core::cover::{Conventions, LiftName, Lifts};
use lmod_core::suite::verify_all;
use lmod_core::{Context, SuiteConfig};

fn lifted_generators(c: &mut Criterion) {
    for (n, k) in [(2, 3), (3, 4)] {
        let ctx = Context::new(n, k).unwrap();
        c.bench_function(&format!("lifts n={n} k={k}"), |b| {
            b.iter(|| {
                let lifts = Lifts::new(&ctx, Conventions::default()).unwrap();
                lifts.rep(LiftName::ZetaPrime).unwrap()
            })
        });
    }
}

fn whole_suite(c: &mut Criterion) {
    let config = SuiteConfig::default();
    for n in [2, 3] {
        let ctx = Context::new(n, 3).unwrap();
        c.bench_function(&format!("verify_all n={n} k=3"), |b| {
            b.iter(|| verify_all(&ctx, &config))
        });
    }
}

criterion_group!(benches, lifted_generators, whole_suite);
criterion_main!(benches);
