use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hierarchy_lab::oracle::{run_suite, ExecMode, SuiteConfig};

fn modes() -> Vec<ExecMode> {
    if cfg!(feature = "parallel") {
        vec![ExecMode::Sequential, ExecMode::Parallel]
    } else {
        vec![ExecMode::Sequential]
    }
}

fn suites(c: &mut Criterion) {
    let cases = [
        ("class-equalities", Some(7), None),
        ("dual-involution", Some(6), None),
        ("translation-agreement", None, Some(60)),
        ("witness-directions", None, Some(20)),
    ];
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (suite, max_size, samples) in cases {
        for mode in modes() {
            let cfg = SuiteConfig {
                max_size,
                samples,
                mode,
                ..SuiteConfig::default()
            };
            let id = BenchmarkId::new(suite, format!("{mode:?}").to_lowercase());
            group.bench_with_input(id, &cfg, |b, cfg| {
                b.iter(|| run_suite(suite, cfg).expect("registered suite"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
