use std::sync::Arc;

use bruhat::rpoly::RtildeCache;
use bruhat::sweep::{run_sweep, Executor, Mode, SweepConfig};
use bruhat::CheckKind;
use criterion::{criterion_group, criterion_main, Criterion};

fn sweeps(c: &mut Criterion) {
    let s4 = SweepConfig::new(4, Mode::Exhaustive, CheckKind::ALL.to_vec());
    let mut s5 = SweepConfig::new(
        5,
        Mode::Sample,
        vec![CheckKind::Congettura, CheckKind::StrongDs],
    );
    s5.seed = Some(1);
    s5.sample_size = 60;

    for (name, config) in [("s4-all-checks", &s4), ("s5-sampled-pairwise", &s5)] {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        for (label, executor) in [
            ("sequential", Executor::Sequential),
            ("parallel", Executor::Parallel { threads: None }),
        ] {
            // a fresh cache per iteration so both executors pay for the polynomials
            group.bench_function(label, |b| {
                b.iter(|| run_sweep(config, Arc::new(RtildeCache::in_memory()), executor).unwrap())
            });
        }
        group.finish();
    }
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
