use criterion::{criterion_group, criterion_main, Criterion};

use minuscule::par::Mode;
use minuscule::verify::{verify_suite, Suite, VerifyConfig};

fn suite(c: &mut Criterion) {
    let cfg = VerifyConfig::default();
    let mut g = c.benchmark_group("verify_core");
    g.sample_size(10);
    for (name, mode) in [("parallel", Mode::Parallel), ("sequential", Mode::Sequential)] {
        g.bench_function(name, |b| b.iter(|| verify_suite(Suite::Core, &cfg, mode)));
    }
    g.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
