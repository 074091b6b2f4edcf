use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dalpha_core::census::{census, Family};
use dalpha_core::par::Exec;
use dalpha_core::verify::Checker;
use dalpha_core::{Alpha, Tolerances};

fn census_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_sweep");
    group.sample_size(10);
    for (family, n) in [(Family::Trees, 10), (Family::Unicyclic, 8), (Family::Connected, 6)] {
        let members = census(family, n).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let ck = Checker::new(Alpha::default_grid(), Tolerances::default(), exec).unwrap();
            let id = BenchmarkId::new(format!("{exec:?}"), format!("{family}-{n}"));
            group.bench_with_input(id, &members, |b, m| b.iter(|| black_box(ck.evaluate(m).unwrap())));
        }
    }
    group.finish();
}

fn connected_generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("connected_generation");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| black_box(dalpha_core::census::all_connected_with(7, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, census_sweep, connected_generation);
criterion_main!(benches);
