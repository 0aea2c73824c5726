//! Graph generators for test suites and benchmarks: exhaustive enumeration
//! of small connected graphs up to isomorphism, and seeded random graphs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Upper-triangle adjacency bitmask on at most 8 vertices.
fn bit(a: usize, b: usize) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    // row-major index of (a, b) in the strict upper triangle of an 8x8 matrix
    1 << (a * 8 + b - (a + 1) * (a + 2) / 2)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(n: usize, adj: u32, perms: &[Vec<usize>]) -> u32 {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| adj & bit(a, b) != 0)
        .collect();
    perms
        .iter()
        .map(|p| edges.iter().fold(0u32, |m, &(a, b)| m | bit(p[a], p[b])))
        .min()
        .unwrap_or(0)
}

fn is_connected(n: usize, adj: u32) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if u != v && adj & bit(u, v) != 0 && seen & (1 << u) == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen.count_ones() as usize == n
}

fn to_graph(n: usize, adj: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| adj & bit(a, b) != 0)
        .map(|(a, b)| (a as u32, b as u32))
        .collect();
    Graph::from_edges(n as u32, &edges).expect("valid")
}

/// All graphs on `n <= 8` vertices up to isomorphism, grown one vertex at a
/// time and deduplicated by minimum adjacency mask over all relabelings.
fn all_graph_masks(n: usize) -> BTreeSet<u32> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    for m in 2..=n {
        let perms = permutations(m);
        let mut next = BTreeSet::new();
        for &adj in &level {
            for nbrs in 0u32..1 << (m - 1) {
                let mut a = adj;
                for u in 0..m - 1 {
                    if nbrs >> u & 1 == 1 {
                        a |= bit(u, m - 1);
                    }
                }
                next.insert(canonical(m, a, &perms));
            }
        }
        level = next;
    }
    level
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    all_graph_masks(n)
        .into_iter()
        .filter(|&adj| is_connected(n, adj))
        .map(|adj| to_graph(n, adj))
        .collect()
}

/// G(n, p) with a fixed seed.
pub fn erdos_renyi(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid")
}

/// Seeded connected random graph: a random spanning tree plus independent
/// extra edges with probability `p`.
pub fn random_connected(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).expect("valid")
}

/// Seeded random graph with maximum degree at most `max_degree`: candidate
/// edges are visited in random order and kept while both ends have room.
pub fn random_bounded_degree(n: u32, max_degree: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    for i in (1..pairs.len()).rev() {
        let j = rng.gen_range(0..=i);
        pairs.swap(i, j);
    }
    let mut deg = vec![0usize; n as usize];
    let mut edges = Vec::new();
    for (a, b) in pairs {
        if deg[a as usize] < max_degree && deg[b as usize] < max_degree && rng.gen_bool(0.7) {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
            edges.push((a, b));
        }
    }
    Graph::from_edges(n, &edges).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // OEIS A001349
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn random_helpers_are_seeded() {
        assert_eq!(erdos_renyi(8, 0.4, 3), erdos_renyi(8, 0.4, 3));
        let g = random_connected(9, 0.2, 11);
        assert!(g.is_connected());
        let h = random_bounded_degree(10, 3, 5);
        assert!(h.max_voting_degree().unwrap() <= 3);
    }
}
