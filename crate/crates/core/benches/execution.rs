use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use phasekit::distributions::{density, uniform_grid, Variable};
use phasekit::families::recurrence_table;
use phasekit::quadrature::DEFAULT_TOLERANCE;
use phasekit::states::{coherent_auto, coherent_fg, DEFAULT_TAIL_TOL};
use phasekit::verify::{orthonormality_error, VerifyOptions};
use phasekit::{Execution, FamilySpec};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn density_grid(c: &mut Criterion) {
    let spec = FamilySpec::gegenbauer(-0.25).unwrap();
    let state = coherent_auto(Complex64::new(2.0, 1.0), DEFAULT_TAIL_TOL).unwrap();
    let table = recurrence_table(&spec, state.support() + 1);
    let points = uniform_grid(Variable::ArcCosine, 2001, 1e-6).unwrap();
    let mut group = c.benchmark_group("density_grid");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| density(&table, &spec, &state, black_box(&points), Variable::ArcCosine, exec).unwrap())
        });
    }
    group.finish();
}

fn orthonormality_sweep(c: &mut Criterion) {
    let spec = FamilySpec::jacobi(0.25, 0.5).unwrap();
    let mut group = c.benchmark_group("orthonormality_sweep");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let opts = VerifyOptions { exec, quad_tol: DEFAULT_TOLERANCE };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| orthonormality_error(black_box(&spec), 20, &opts).unwrap())
        });
    }
    group.finish();
}

fn f1_sweep(c: &mut Criterion) {
    let table = recurrence_table(&FamilySpec::gegenbauer(1.0).unwrap(), 300);
    let alphas: Vec<f64> = (0..=200).map(|k| k as f64 * 0.05).collect();
    let mut group = c.benchmark_group("f1_sweep");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map(black_box(&alphas), |&a| coherent_fg(&table, a, DEFAULT_TAIL_TOL).unwrap().f1))
        });
    }
    group.finish();
}

criterion_group!(benches, density_grid, orthonormality_sweep, f1_sweep);
criterion_main!(benches);
