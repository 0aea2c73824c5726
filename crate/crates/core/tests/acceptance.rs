//! Acceptance suite. Runs every criterion in order and prints one
//! `criterion N: PASS|FAIL: ...` line each, then exits nonzero if any check
//! failed other than the single known deviation (the one-vertex complete
//! graph, whose LO count is 0 rather than `k`; see `criterion_1`).
//!
//! Run with `cargo test -p gridlock --test acceptance`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gridlock::engine::LeafRule;
use gridlock::families::{self, Family};
use gridlock::oracles::{self, Budgets, Coloring};
use gridlock::{gen, Engine, EngineConfig, Graph, IntPolynomial, VertexId};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(15 * 60);
const C3_BRUTE_LIMIT: Duration = Duration::from_secs(10 * 60);
const C3_REDUCED_LIMIT: Duration = Duration::from_secs(1);
const C5_LIMIT: Duration = Duration::from_secs(5 * 60);

struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that is understood and recorded rather than a regression.
    known: bool,
}

fn pass(detail: String) -> Outcome {
    Outcome {
        pass: true,
        detail,
        known: false,
    }
}

fn fail(detail: String) -> Outcome {
    Outcome {
        pass: false,
        detail,
        known: false,
    }
}

fn engine(rule: LeafRule) -> Engine {
    Engine::new(EngineConfig {
        leaf_rule: rule,
        ..Default::default()
    })
}

fn count(g: &Graph, k: u32) -> u64 {
    oracles::brute_force_lo_count(g, k, &Budgets::default()).expect("within budget")
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

/// `K_n` for n = 1..8 through the engine, brute force at k = 1..4 for n <= 6.
///
/// For n >= 2 the value is `k`. `K_1` is a single vertex without neighbors,
/// which has no plurality color, so every oracle gives 0 and the criterion
/// as stated cannot hold at n = 1. The check pins that value.
fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut problems = Vec::new();
    let mut k1 = None;
    for n in 1..=8 {
        let g = families::build(Family::Complete(n)).unwrap();
        let lo = engine(LeafRule::Minimal).lo_polynomial(&g).unwrap();
        if n == 1 {
            k1 = Some(lo.clone());
        } else if lo != IntPolynomial::k() {
            problems.push(format!("K{n} gave {lo}"));
        }
        if n <= 6 {
            for k in 1..=4u32 {
                let bf = count(&g, k);
                if BigInt::from(bf) != lo.evaluate(k) {
                    problems.push(format!(
                        "K{n} brute force {bf} vs engine {} at k={k}",
                        lo.evaluate(k)
                    ));
                }
            }
        }
    }
    let elapsed = t.elapsed();
    if elapsed > C1_LIMIT {
        problems.push(format!("took {} (limit {})", secs(elapsed), secs(C1_LIMIT)));
    }
    if !problems.is_empty() {
        return fail(problems.join("; "));
    }
    let k1 = k1.unwrap();
    if k1.is_zero() {
        Outcome {
            pass: false,
            known: true,
            detail: format!(
                "K_n = k for n = 2..8 and brute force agrees at k = 1..4 for n <= 6 ({}, limit {}); \
                 K_1 gives 0, not k: its vertex has no neighbors, so no color has a plurality \
                 (brute force agrees)",
                secs(elapsed),
                secs(C1_LIMIT)
            ),
        }
    } else {
        fail(format!("K_1 gave {k1}, expected 0 from brute force"))
    }
}

struct Sweep {
    graphs: usize,
    with_degree_four: Vec<Graph>,
}

/// Every connected graph on at most 7 vertices: engine = partition oracle,
/// both equal to brute force at k = 0..4.
fn criterion_2(sweep: &mut Sweep) -> Outcome {
    let t = Instant::now();
    let b = Budgets::default();
    let mut problems = Vec::new();
    for n in 1..=7 {
        for g in gen::connected_graphs(n) {
            sweep.graphs += 1;
            let lo = engine(LeafRule::Minimal).lo_polynomial(&g).unwrap();
            let part = oracles::lo_polynomial_via_partitions(&g, &b).unwrap();
            if lo != part {
                problems.push(format!(
                    "{}: engine {lo} vs partitions {part}",
                    gridlock::io::to_json(&g)
                ));
            }
            for k in 0..=4u32 {
                let bf = BigInt::from(count(&g, k));
                if lo.evaluate(k) != bf || part.evaluate(k) != bf {
                    problems.push(format!(
                        "{} at k={k}: brute force {bf}",
                        gridlock::io::to_json(&g)
                    ));
                }
            }
            if g.max_voting_degree().unwrap_or(0) >= 4 {
                sweep.with_degree_four.push(g);
            }
        }
    }
    let elapsed = t.elapsed();
    if elapsed > C2_LIMIT {
        problems.push(format!("took {} (limit {})", secs(elapsed), secs(C2_LIMIT)));
    }
    let counts_ok = sweep.graphs == 1 + 1 + 2 + 6 + 21 + 112 + 853;
    if !counts_ok {
        problems.push(format!("enumerated {} graphs, expected 996", sweep.graphs));
    }
    if problems.is_empty() {
        pass(format!(
            "{} connected graphs on <= 7 vertices, engine = partitions = brute force at k = 0..4 ({}, limit {})",
            sweep.graphs,
            secs(elapsed),
            secs(C2_LIMIT)
        ))
    } else {
        problems.truncate(5);
        fail(problems.join("; "))
    }
}

fn sg_at(g: &Graph, lo: u64, k: u32) -> i128 {
    let uniform = if g.min_voting_degree().unwrap_or(0) >= 1 {
        k
    } else {
        0
    };
    lo as i128 - uniform as i128
}

/// The two five-clique graphs: full brute force at k = 2, and the reduced
/// clique enumeration at k = 3..6 against the closed forms.
fn criterion_3() -> Outcome {
    let mut problems = Vec::new();
    let cases = [
        (
            Family::CliqueCycle,
            families::clique_cycle(),
            [0i64, 4, -10, 10, -5, 1],
            0i128,
        ),
        (
            Family::CliqueMatching,
            families::clique_matching(),
            [0, 4, -5, 0, 0, 1],
            20,
        ),
    ];
    let t = Instant::now();
    let mut brute = Vec::new();
    for (fam, g, _, expected) in &cases {
        assert_eq!(&families::build(*fam).unwrap(), g);
        let lo = count(g, 2);
        let sg = sg_at(g, lo, 2);
        brute.push(format!("{fam}: {sg}"));
        if sg != *expected {
            problems.push(format!("{fam}: SG at k=2 is {sg}, expected {expected}"));
        }
    }
    let brute_time = t.elapsed();
    if brute_time > C3_BRUTE_LIMIT {
        problems.push(format!(
            "brute force took {} (limit {})",
            secs(brute_time),
            secs(C3_BRUTE_LIMIT)
        ));
    }

    let t = Instant::now();
    let blocks = families::clique_blocks();
    for (fam, g, coeffs, _) in &cases {
        let closed = IntPolynomial::from_i64s(coeffs);
        for k in 2..=6u32 {
            let lo = families::reduced_clique_lo_count(g, &blocks, k).unwrap();
            let sg = BigInt::from(sg_at(g, lo, k));
            if sg != closed.evaluate(k) {
                problems.push(format!(
                    "{fam}: reduced SG at k={k} is {sg}, closed form {}",
                    closed.evaluate(k)
                ));
            }
        }
    }
    let reduced_time = t.elapsed();
    if reduced_time > C3_REDUCED_LIMIT {
        problems.push(format!(
            "reduced enumeration took {} (limit {})",
            secs(reduced_time),
            secs(C3_REDUCED_LIMIT)
        ));
    }
    if problems.is_empty() {
        pass(format!(
            "brute force over 2^25 colorings: SG(k=2) {} ({}, limit {}); reduced enumeration matches \
             k^5 - 5k^4 + 10k^3 - 10k^2 + 4k and k^5 - 5k^2 + 4k at k = 2..6 ({}, limit {})",
            brute.join(", "),
            secs(brute_time),
            secs(C3_BRUTE_LIMIT),
            secs(reduced_time),
            secs(C3_REDUCED_LIMIT)
        ))
    } else {
        fail(problems.join("; "))
    }
}

/// Chains of triangles: LO = k^d, interpolation agrees for d <= 3.
fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    for d in 1..=4u32 {
        let g = families::build(Family::TriangleChain(d)).unwrap();
        let want = IntPolynomial::monomial(d as usize);
        let lo = engine(LeafRule::Minimal).lo_polynomial(&g).unwrap();
        if lo != want {
            problems.push(format!("d={d}: engine {lo}"));
        }
        if d <= 3 {
            let interp = oracles::lo_polynomial_via_interpolation(&g, &Budgets::default()).unwrap();
            if interp != want {
                problems.push(format!("d={d}: interpolation {interp}"));
            }
        }
    }
    if problems.is_empty() {
        pass("triangle_chain(d) gives k^d for d = 1..4; interpolation agrees for d = 1..3".into())
    } else {
        fail(problems.join("; "))
    }
}

/// The random graph for index `i` of the structural sweep: 4..9 vertices.
fn structural_graph(i: u64) -> Graph {
    let n = 4 + (i % 6) as u32;
    let p = 0.15 + 0.1 * (i % 5) as f64;
    gen::random_connected(n, p, 1000 + i)
}

/// Structural properties on 200 seeded random connected graphs.
fn criterion_5() -> Outcome {
    let t = Instant::now();
    let b = Budgets::default();
    let mut problems = Vec::new();
    let mut max_degree_seen = 0;
    for i in 0..200 {
        let g = structural_graph(i);
        let n = g.vertex_count();
        let lo = engine(LeafRule::Minimal).lo_polynomial(&g).unwrap();
        let name = format!("graph {i} ({n} vertices)");
        if !lo.coefficient(0).is_zero() {
            problems.push(format!("{name}: constant term {}", lo.coefficient(0)));
        }
        if g.min_voting_degree().unwrap_or(0) >= 1 && lo.evaluate(1u32) != BigInt::from(1) {
            problems.push(format!("{name}: LO(1) = {}", lo.evaluate(1u32)));
        }
        let deg = lo.degree().unwrap_or(0);
        max_degree_seen = max_degree_seen.max(deg);
        if deg > n / 3 {
            problems.push(format!("{name}: degree {deg} > {}", n / 3));
        }
        let profile: BTreeMap<usize, u64> = oracles::lo_partition_profile(&g, &b).unwrap();
        let (&blocks, &how_many) = profile
            .iter()
            .next_back()
            .expect("a connected graph has the one-block partition");
        if lo.degree() != Some(blocks) || lo.leading_coefficient() != BigInt::from(how_many) {
            problems.push(format!(
                "{name}: degree {:?} lead {} vs partitions {blocks} blocks x{how_many}",
                lo.degree(),
                lo.leading_coefficient()
            ));
        }
    }
    let elapsed = t.elapsed();
    if elapsed > C5_LIMIT {
        problems.push(format!("took {} (limit {})", secs(elapsed), secs(C5_LIMIT)));
    }
    if problems.is_empty() {
        pass(format!(
            "200 graphs: constant term 0, LO(1) = 1, degree <= n/3 (max degree seen {max_degree_seen}), \
             degree and leading coefficient match the partition profile ({}, limit {})",
            secs(elapsed),
            secs(C5_LIMIT)
        ))
    } else {
        problems.truncate(5);
        fail(problems.join("; "))
    }
}

/// Locally-optimal `k`-colorings of `g` with `u` and `w` the same color,
/// counted directly.
fn count_with_equal(g: &Graph, u: VertexId, w: VertexId, k: u32) -> u64 {
    let vs: Vec<VertexId> = g.vertices().collect();
    let total = (k as u64).pow(vs.len() as u32);
    let mut hits = 0;
    for idx in 0..total {
        let mut rest = idx;
        let map = vs
            .iter()
            .map(|&v| {
                let c = (rest % k as u64) as u32;
                rest /= k as u64;
                (v, c)
            })
            .collect();
        let c = Coloring::new(map);
        if c.color(u) == c.color(w) && oracles::is_locally_optimal(g, &c).unwrap() {
            hits += 1;
        }
    }
    hits
}

/// Trivalent and subdivision identities on 100 seeded graphs each.
fn criterion_6() -> Outcome {
    let mut problems = Vec::new();
    let mut trivalent = 0;
    let mut seed = 0u64;
    while trivalent < 100 {
        seed += 1;
        let n = 5 + (seed % 5) as u32;
        let g = gen::random_bounded_degree(n, 3, seed);
        let Some(v) = g.vertices().find(|&x| g.voting_degree(x).unwrap() == 3) else {
            continue;
        };
        trivalent += 1;
        let nb = g.neighbors(v).unwrap().to_vec();
        let sub = |ws: &[VertexId]| {
            ws.iter()
                .fold(g.clone(), |h, &w| h.subdivide_edge(v, w).unwrap())
        };
        let (a, b, c) = (nb[0], nb[1], nb[2]);
        for k in [2, 3] {
            let lhs = count(&g, k) as i128;
            let rhs = count(&sub(&[a, b]), k) as i128
                + count(&sub(&[a, c]), k) as i128
                + count(&sub(&[b, c]), k) as i128
                - 2 * count(&sub(&[a, b, c]), k) as i128;
            if lhs != rhs {
                problems.push(format!("trivalent seed {seed} k={k}: {lhs} vs {rhs}"));
            }
        }
    }
    for i in 0..100u64 {
        let n = 4 + (i % 5) as u32;
        let g = gen::random_connected(n, 0.4, 5000 + i);
        let edges: Vec<_> = g.voting_edges().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let (u, w) = edges[rng.gen_range(0..edges.len())];
        let h = g.subdivide_edge(u, w).unwrap();
        for k in [2, 3] {
            let (lhs, rhs) = (count(&h, k), count_with_equal(&g, u, w, k));
            if lhs != rhs {
                problems.push(format!(
                    "subdivision graph {i} edge {u}-{w} k={k}: {lhs} vs {rhs}"
                ));
            }
        }
    }
    if problems.is_empty() {
        pass("trivalent identity on 100 graphs and subdivision identity on 100 graphs, brute force at k = 2, 3".into())
    } else {
        problems.truncate(5);
        fail(problems.join("; "))
    }
}

/// Both leaf counts on the criterion 2 graphs that have a vertex of degree
/// at least 4.
fn criterion_7(sweep: &Sweep) -> Outcome {
    let b = Budgets::default();
    let mut validated = Vec::new();
    let mut problems = Vec::new();
    for (rule, label) in [
        (LeafRule::Minimal, "n-2b+1"),
        (LeafRule::OneExtra, "n-2b+2"),
    ] {
        let bad = sweep
            .with_degree_four
            .iter()
            .filter(|g| {
                let lo = engine(rule).lo_polynomial(g).unwrap();
                let part = oracles::lo_polynomial_via_partitions(g, &b).unwrap();
                lo != part || (0..=4u32).any(|k| lo.evaluate(k) != BigInt::from(count(g, k)))
            })
            .count();
        if bad == 0 {
            validated.push(label);
        } else if rule == LeafRule::Minimal {
            problems.push(format!("adopted rule {label} fails on {bad} graphs"));
        }
    }
    if problems.is_empty() {
        pass(format!(
            "{} graphs with a vertex of degree >= 4; validated: {}; adopted n-2b+1",
            sweep.with_degree_four.len(),
            validated.join(" and ")
        ))
    } else {
        fail(problems.join("; "))
    }
}

fn criterion_8() -> Outcome {
    pass(
        "no empirical claims beyond the appendix values; the property checks are criteria 1 to 7"
            .into(),
    )
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; none apply.
    let started = Instant::now();
    let mut sweep = Sweep {
        graphs: 0,
        with_degree_four: Vec::new(),
    };
    let results = [
        criterion_1(),
        criterion_2(&mut sweep),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(&sweep),
        criterion_8(),
    ];
    let mut unexpected = 0;
    for (i, r) in results.iter().enumerate() {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let note = if r.known {
            " [known deviation, see README]"
        } else {
            ""
        };
        println!("criterion {}: {verdict}: {}{note}", i + 1, r.detail);
        if !r.pass && !r.known {
            unexpected += 1;
        }
    }
    println!("acceptance finished in {}", secs(started.elapsed()));
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
