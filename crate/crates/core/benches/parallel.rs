use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use flagcoh::combinatorics::WeightSequence;
use flagcoh::complex::homology;
use flagcoh::determinantal::{filtration_character, SliceParams};
use flagcoh::incidence::{h_characters, IncidenceOptions};
use flagcoh::{Exec, Prime};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn complex_homology(c: &mut Criterion) {
    let p = Prime::new(2).unwrap();
    let w = WeightSequence::all_ones(13);
    let mut group = c.benchmark_group("homology_C1^13");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| homology(&w, p, exec).unwrap())
        });
    }
    group.finish();
}

fn incidence_blocks(c: &mut Criterion) {
    let p = Prime::new(2).unwrap();
    let mut group = c.benchmark_group("incidence_n4_d6_e7");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = IncidenceOptions {
            exec,
            symmetry_reduction: false,
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, &opts| {
            b.iter(|| h_characters(4, 6, 7, p, opts).unwrap())
        });
    }
    group.finish();
}

fn determinantal_blocks(c: &mut Criterion) {
    let params = SliceParams {
        n: 4,
        a: 4,
        b: 3,
        i: 2,
        truncated: false,
        p: Prime::new(3).unwrap(),
    };
    let mut group = c.benchmark_group("filtration_n4_a4_b3_i2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| filtration_character(params, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, complex_homology, incidence_blocks, determinantal_blocks);
criterion_main!(benches);
