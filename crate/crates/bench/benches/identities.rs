use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use splitlts::triple::check_leibniz_triple;
use splitlts_bench::{zero_system, IDENTITY_SIZES};

fn identity_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_leibniz_triple/zero");
    for n in IDENTITY_SIZES {
        let t = zero_system(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| b.iter(|| check_leibniz_triple(t)));
    }
    group.finish();
}

criterion_group!(benches, identity_check);
criterion_main!(benches);
