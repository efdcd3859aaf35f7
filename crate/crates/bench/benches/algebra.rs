use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use monodromy_bench::{sample_words, warm_algebra};
use monodromy_core::clifford::log_phi_expand;
use monodromy_core::enveloping::Enveloping;
use monodromy_core::invariants::{correspondence_check, quadratic_generation};
use monodromy_core::{Algebra, Gen, ShuffleBasis};

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis");
    g.sample_size(10);
    g.bench_function("build D=4 N=6", |b| b.iter(|| ShuffleBasis::build(black_box(6), 4).unwrap()));
    g.bench_function("build D=4 N=7", |b| b.iter(|| ShuffleBasis::build(black_box(7), 4).unwrap()));
    g.finish();
}

fn brackets(c: &mut Criterion) {
    let alg = warm_algebra(8);
    let xs = sample_words(&alg, 4, 20);
    let ys = sample_words(&alg, 3, 20);
    c.bench_function("bracket rank 4 x rank 3, 400 pairs uncached", |b| {
        b.iter(|| {
            for &x in &xs {
                for &y in &ys {
                    black_box(alg.bracket_words_uncached(x, y));
                }
            }
        })
    });
}

fn enveloping(c: &mut Criterion) {
    let alg = warm_algebra(7);
    let words = sample_words(&alg, 6, 30);
    c.bench_function("second invariant and delta, 30 words of rank 6", |b| {
        b.iter(|| {
            let env = Enveloping::new(&alg);
            for &w in &words {
                let z = env.quantum_z2(w).unwrap();
                black_box(env.delta(&z).unwrap());
            }
        })
    });
    let gens: Vec<Gen> = sample_words(&alg, 3, 10).into_iter().map(Gen::r).collect();
    c.bench_function("PBW products of rank-3 triples", |b| {
        b.iter(|| {
            let env = Enveloping::new(&alg);
            for &x in &gens {
                for &y in &gens {
                    let p = env.mul(&monodromy_core::NcPoly::gen(x), &monodromy_core::NcPoly::gen(y));
                    black_box(env.mul(&p, &monodromy_core::NcPoly::gen(gens[0])));
                }
            }
        })
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("correspondence D=4 w=4", |b| {
        b.iter(|| {
            let alg = Algebra::minkowski(4).unwrap();
            let env = Enveloping::new(&alg);
            black_box(correspondence_check(&env, 4).unwrap())
        })
    });
    g.bench_function("quadratic generation D=4 rank<=5", |b| {
        b.iter(|| black_box(quadratic_generation(&Algebra::minkowski(4).unwrap(), 5, true).unwrap()))
    });
    let alg = warm_algebra(6);
    g.bench_function("log Phi expansion to order 6", |b| b.iter(|| black_box(log_phi_expand(&alg, 6).unwrap())));
    g.finish();
}

criterion_group!(benches, basis, brackets, enveloping, suites);
criterion_main!(benches);
