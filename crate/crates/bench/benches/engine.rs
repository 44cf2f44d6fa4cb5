use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polarwd::{
    compute_wd_with, expanded_information_set, optimize_pretransform, polar_transform, BitVector,
    EngineConfig,
};
use polarwd_bench::{pac_code, random_code};

fn weight_distribution(c: &mut Criterion) {
    let mut g = c.benchmark_group("wd_n64_pac");
    g.sample_size(10);
    for k in [16usize, 24, 32] {
        let code = pac_code(6, k, "1011011");
        for cache in [true, false] {
            let cfg = EngineConfig {
                use_cache: cache,
                ..EngineConfig::default()
            };
            let id = BenchmarkId::new(if cache { "cache" } else { "no_cache" }, k);
            g.bench_with_input(id, &code, |b, code| {
                b.iter(|| compute_wd_with(black_box(code), &cfg).unwrap())
            });
        }
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let code = random_code(7, 64, 3);
    c.bench_function("expand_n128_random", |b| {
        b.iter(|| expanded_information_set(black_box(&code)))
    });
    let pac = pac_code(7, 64, "10101011");
    c.bench_function("optimize_n128_pac", |b| {
        b.iter(|| optimize_pretransform(black_box(&pac)))
    });
}

fn transform(c: &mut Criterion) {
    let v: BitVector = "1011".repeat(256).parse().unwrap();
    c.bench_function("polar_transform_1024", |b| {
        b.iter(|| polar_transform(black_box(&v)))
    });
}

criterion_group!(benches, weight_distribution, expansion, transform);
criterion_main!(benches);
