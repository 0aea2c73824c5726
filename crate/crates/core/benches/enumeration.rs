//! Sequential against parallel execution for the two data-parallel hot
//! paths: brute-force coloring enumeration and the engine worklist.
//!
//! `workers = 1` takes the sequential path; `workers = 0` uses every core
//! (the same as `workers = 1` when built without the `parallel` feature).

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gridlock::families::{self, Family};
use gridlock::oracles::{self, Budgets};
use gridlock::{gen, Engine, EngineConfig};

const MODES: [(&str, usize); 2] = [("sequential", 1), ("parallel", 0)];

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    let cases = [
        ("clique_matching_k2", families::clique_matching(), 2),
        (
            "triangle_chain4_k3",
            families::build(Family::TriangleChain(4)).unwrap(),
            3,
        ),
    ];
    for (name, g, k) in &cases {
        for (mode, workers) in MODES {
            let budgets = Budgets {
                workers,
                ..Budgets::default()
            };
            group.bench_with_input(BenchmarkId::new(*name, mode), &budgets, |b, budgets| {
                b.iter(|| oracles::brute_force_lo_count(black_box(g), *k, budgets).unwrap())
            });
        }
    }
    group.finish();
}

fn engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("engine");
    group.sample_size(10);
    let cases = [
        ("complete8", families::build(Family::Complete(8)).unwrap()),
        ("random9", gen::random_connected(9, 0.5, 3)),
    ];
    for (name, g) in &cases {
        for (mode, workers) in MODES {
            let engine = Engine::new(EngineConfig {
                workers,
                ..Default::default()
            });
            group.bench_with_input(BenchmarkId::new(*name, mode), &engine, |b, engine| {
                b.iter(|| engine.lo_polynomial(black_box(g)).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, brute_force, engine);
criterion_main!(benches);
