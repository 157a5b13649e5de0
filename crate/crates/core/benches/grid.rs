use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quasi_core::condition::{make_cx, Family, RelaxationSpec};
use quasi_core::exec::exponent_grid;
use quasi_core::lab::{verify_claim2, verify_theorem};
use quasi_core::metric::Space;
use quasi_core::solver::estimate_q;
use quasi_core::Exec;
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn grid_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("estimate_q/zeta");
    let d = RelaxationSpec::new(Family::Yy, 2, 0).unwrap();
    let cond = make_cx(&d);
    for max_exp in [12u64, 24] {
        let pairs: Vec<_> =
            exponent_grid(max_exp).into_iter().map(|(m, n)| (Space::Zeta.point(m), Space::Zeta.point(n))).collect();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, max_exp), &pairs, |b, pairs| {
                b.iter(|| estimate_q(&Space::Zeta, &cond, black_box(pairs), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn claim2(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_claim2");
    let d = RelaxationSpec::new(Family::XyB2, 0, 2).unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| verify_claim2(black_box(&d), 16, exec).unwrap()));
    }
    group.finish();
}

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem/8x8");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| verify_theorem(8, 8, black_box(12), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, grid_scan, claim2, theorem);
criterion_main!(benches);
