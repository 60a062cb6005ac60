use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pdm_core::mass::{MassKind, OrderingPreset};
use pdm_core::potential::{consistency_check_with, Family, FamilySpec, PotentialModel};
use pdm_core::solver::{discretize, ordering_sweep, SolverConfig};
use pdm_core::{Grid, Parallelism};
use std::hint::black_box;

const POLICIES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("rayon", Parallelism::Rayon)];

fn morse(kind: MassKind) -> PotentialModel {
    let spec = FamilySpec::with(Family::Morse, 1.0, -4.0, 4.0, None);
    PotentialModel::with_default_mass(&spec, kind, OrderingPreset::BenDanielDuke.params()).unwrap()
}

fn eigenvalues(c: &mut Criterion) {
    let model = morse(MassKind::Exponential { m0: 1.0, lambda: 0.5 });
    let (lo, hi) = model.default_domain().unwrap();
    let mut group = c.benchmark_group("lowest_eigenpairs");
    for n in [4001, 16001] {
        let h = discretize(&model, &Grid::new(lo, hi, n).unwrap()).unwrap();
        for (name, par) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, n), &h, |b, h| {
                b.iter(|| black_box(h.matrix.lowest(8, par).unwrap()))
            });
        }
    }
    group.finish();
}

fn consistency(c: &mut Criterion) {
    let model = morse(MassKind::Soliton { m0: 1.0, lambda: 0.05 });
    let (lo, hi) = model.default_domain().unwrap();
    let grid = Grid::new(lo, hi, 20_000).unwrap();
    let mut group = c.benchmark_group("consistency_check");
    for (name, par) in POLICIES {
        group.bench_function(name, |b| b.iter(|| black_box(consistency_check_with(&model, &grid, par).unwrap())));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let model = morse(MassKind::Rational { m0: 1.0, alpha: 2.0 });
    let orderings: Vec<_> = OrderingPreset::ALL.iter().map(|o| o.params()).collect();
    let mut group = c.benchmark_group("ordering_sweep");
    group.sample_size(10);
    for (name, par) in POLICIES {
        let cfg = SolverConfig { target_tol: 1e-4, parallelism: par, ..Default::default() };
        group.bench_function(name, |b| b.iter(|| black_box(ordering_sweep(&model, &orderings, &cfg).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, eigenvalues, consistency, sweep);
criterion_main!(benches);
