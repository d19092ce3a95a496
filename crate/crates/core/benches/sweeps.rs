use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use exslope::census::mini_report;
use exslope::cs_norm::grid_check;
use exslope::sweep::{claim1_sweep, ht_sweep, Exec};
use num_rational::Ratio;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("claim1");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 10), |b| {
            b.iter(|| claim1_sweep(black_box(10), exec))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("norm_grid");
    g.sample_size(10);
    let samples = [Ratio::from_integer(0), Ratio::new(-7, 3)];
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "s<=8"), |b| {
            b.iter(|| grid_check(4, black_box(8), &samples, exec))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("boundary_slopes");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 101), |b| {
            b.iter(|| ht_sweep(black_box(101), exec))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("batch_verify");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| mini_report(exec)));
    }
    g.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
