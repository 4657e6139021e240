//! Sequential versus data-parallel execution of the heavy suites.
//! Group closure stays sequential by construction (deterministic element
//! order), so it appears once as a baseline.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use vgc::exec::{map_vec, ExecMode};
use vgc::funfield::{chart_functions, substitution_cocycle_check, Subst};
use vgc::matgroup::{g216_generators, rho_s4_generators, FiniteGroup, GroupTable};
use vgc::surface::{classify_small_orbits, MapGroup};

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn closure_baseline(c: &mut Criterion) {
    let gens = g216_generators();
    c.bench_function("closure/projective-216", |b| {
        b.iter(|| {
            let table = GroupTable::generate(black_box(&gens), GroupTable::DEFAULT_CAP)
                .expect("generators close");
            black_box(table.order())
        })
    });
}

fn substitution_images(c: &mut Criterion) {
    let table =
        GroupTable::generate(&g216_generators(), GroupTable::DEFAULT_CAP).expect("closes");
    let u = chart_functions().u;
    let mut group = c.benchmark_group("substitution-images");
    group.sample_size(10);
    for (label, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| {
                let images = map_vec(mode, table.elements(), |g| {
                    Subst::from_matrix(g.mat())
                        .expect("invertible chart")
                        .apply(&u)
                        .expect("defined substitution")
                });
                black_box(images.len())
            })
        });
    }
    group.finish();
}

fn cocycle_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocycle-pairs");
    group.sample_size(10);
    for (label, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| {
                let check = substitution_cocycle_check(mode).expect("table closes");
                assert!(check.holds);
                black_box(check.pairs_checked)
            })
        });
    }
    group.finish();
}

fn orbit_census(c: &mut Criterion) {
    let gens: Vec<_> = rho_s4_generators()
        .into_iter()
        .map(|(n, g)| (n, g.mat().clone()))
        .collect();
    let group = MapGroup::from_matrices(&gens, MapGroup::DEFAULT_CAP).expect("closes");
    c.bench_function("orbits/classify-bound-6", |b| {
        b.iter(|| {
            let found = classify_small_orbits(black_box(&group), 6).expect("finite search");
            black_box(found.total_points())
        })
    });
}

criterion_group!(
    benches,
    closure_baseline,
    substitution_images,
    cocycle_pairs,
    orbit_census
);
criterion_main!(benches);
