use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use p2ext::oracles::{oracle_census_table, verify_groups, verify_psi};
use p2ext::{CensusShape, Exec, Parity};

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn psi_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi_grid_32");
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| verify_psi(32, exec)));
    }
    group.finish();
}

fn group_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("group_sweep_p5");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| verify_groups(5, exec)));
    }
    group.finish();
}

fn oracle_census(c: &mut Criterion) {
    let shape = CensusShape::new(5, 1, Parity::Odd).unwrap();
    let mut group = c.benchmark_group("oracle_census_p5");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| oracle_census_table(&shape, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, psi_grid, group_sweep, oracle_census);
criterion_main!(benches);
