//! Deterministic constructors for the named graph families, including the two
//! 25-vertex five-clique graphs that have the same community structure but
//! different gridlock behavior.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracles::{is_locally_optimal, Coloring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(u32),
    Path(u32),
    Cycle(u32),
    /// Star with the given number of leaves.
    Star(u32),
    /// `d` triangles joined in a row by single bridge edges.
    TriangleChain(u32),
    /// Five 5-cliques, between-clique edges in complete-bipartite pairs.
    CliqueCycle,
    /// Five 5-cliques, each interior vertex matched once into every other clique.
    CliqueMatching,
}

pub const FAMILY_NAMES: [&str; 7] = [
    "complete",
    "path",
    "cycle",
    "star",
    "triangle_chain",
    "clique_cycle",
    "clique_matching",
];

impl Family {
    /// Parses a family name and optional parameter as given on the command line.
    pub fn parse(name: &str, param: Option<u32>) -> Result<Self> {
        let need = |p: Option<u32>| {
            p.ok_or_else(|| Error::FamilyParameter(format!("family '{name}' needs a parameter")))
        };
        let fam = match name {
            "complete" => Family::Complete(need(param)?),
            "path" => Family::Path(need(param)?),
            "cycle" => Family::Cycle(need(param)?),
            "star" => Family::Star(need(param)?),
            "triangle_chain" => Family::TriangleChain(need(param)?),
            "clique_cycle" | "clique_matching" => {
                if param.is_some() {
                    return Err(Error::FamilyParameter(format!(
                        "family '{name}' takes no parameter"
                    )));
                }
                if name == "clique_cycle" {
                    Family::CliqueCycle
                } else {
                    Family::CliqueMatching
                }
            }
            other => {
                return Err(Error::FamilyParameter(format!(
                    "unknown family '{other}' (expected one of {})",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        fam.validate()?;
        Ok(fam)
    }

    fn validate(&self) -> Result<()> {
        let (ok, what) = match *self {
            Family::Complete(n) => (n >= 1, "complete needs n >= 1"),
            Family::Path(n) => (n >= 1, "path needs n >= 1"),
            Family::Cycle(n) => (n >= 3, "cycle needs n >= 3"),
            Family::Star(l) => (l >= 1, "star needs at least one leaf"),
            Family::TriangleChain(d) => (d >= 1, "triangle_chain needs d >= 1"),
            Family::CliqueCycle | Family::CliqueMatching => (true, ""),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FamilyParameter(what.into()))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete {n}"),
            Family::Path(n) => write!(f, "path {n}"),
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Star(n) => write!(f, "star {n}"),
            Family::TriangleChain(d) => write!(f, "triangle_chain {d}"),
            Family::CliqueCycle => write!(f, "clique_cycle"),
            Family::CliqueMatching => write!(f, "clique_matching"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `"name"` or `"name param"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let name = parts.next().unwrap_or("");
        let param = parts
            .next()
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|e| Error::FamilyParameter(format!("bad parameter '{p}': {e}")))
            })
            .transpose()?;
        Family::parse(name, param)
    }
}

pub fn build(fam: Family) -> Result<Graph> {
    fam.validate()?;
    match fam {
        Family::Complete(n) => complete(n),
        Family::Path(n) => Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        Family::Cycle(n) => {
            Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
        }
        Family::Star(l) => Graph::from_edges(l + 1, &(1..=l).map(|i| (0, i)).collect::<Vec<_>>()),
        Family::TriangleChain(d) => triangle_chain(d),
        Family::CliqueCycle => Ok(clique_cycle()),
        Family::CliqueMatching => Ok(clique_matching()),
    }
}

fn complete(n: u32) -> Result<Graph> {
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Triangle `i` is `{3i, 3i+1, 3i+2}`; vertex `3i+2` bridges to `3i+3`.
fn triangle_chain(d: u32) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..d {
        let b = 3 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        if i + 1 < d {
            edges.push((b + 2, b + 3));
        }
    }
    Graph::from_edges(3 * d, &edges)
}

const CLIQUES: u32 = 5;

/// Clique `i` occupies ids `5i..5i+4`; `5i` is its exterior vertex.
pub fn clique_blocks() -> Vec<Vec<VertexId>> {
    (0..CLIQUES)
        .map(|i| (5 * i..5 * i + 5).map(VertexId).collect())
        .collect()
}

fn clique_skeleton() -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for i in 0..CLIQUES {
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((5 * i + a, 5 * i + b));
            }
        }
    }
    edges
}

/// Interior pairs of clique `i`: backward pair `{5i+1, 5i+2}` and forward
/// pair `{5i+3, 5i+4}`. Each forward pair of clique `j` is joined completely
/// to the backward pairs of cliques `j+1` and `j+2` (mod 5), so every clique
/// pair shares one 4-edge block and the two vertices of a pair have the same
/// neighbors apart from each other.
pub fn clique_cycle() -> Graph {
    let mut edges = clique_skeleton();
    for j in 0..CLIQUES {
        let forward = [5 * j + 3, 5 * j + 4];
        for step in [1, 2] {
            let i = (j + step) % CLIQUES;
            let backward = [5 * i + 1, 5 * i + 2];
            for &a in &forward {
                for &b in &backward {
                    edges.push((a, b));
                }
            }
        }
    }
    Graph::from_edges(25, &edges).expect("well-formed construction")
}

/// Interior vertex `m` of clique `i` (id `5i+1+m`) is joined to interior
/// vertex `m` of every other clique.
pub fn clique_matching() -> Graph {
    let mut edges = clique_skeleton();
    for i in 0..CLIQUES {
        for j in i + 1..CLIQUES {
            for m in 1..5 {
                edges.push((5 * i + m, 5 * j + m));
            }
        }
    }
    Graph::from_edges(25, &edges).expect("well-formed construction")
}

/// Counts locally-optimal `k`-colorings among those that are constant on
/// each of the given cliques: enumerates the `k^c` clique colorings, expands
/// each to a full coloring and checks it. Equal to the full count whenever
/// every locally-optimal coloring is constant on the cliques.
pub fn reduced_clique_lo_count(g: &Graph, cliques: &[Vec<VertexId>], k: u32) -> Result<u64> {
    let mut seen = BTreeSet::new();
    for c in cliques {
        if c.is_empty() {
            return Err(Error::NotAPartition("empty block".into()));
        }
        for &v in c {
            if !g.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(Error::NotAPartition(format!("vertex {v} listed twice")));
            }
        }
    }
    if seen.len() != g.vertex_count() {
        return Err(Error::NotAPartition(format!(
            "{} of {} vertices covered",
            seen.len(),
            g.vertex_count()
        )));
    }
    let c = cliques.len() as u32;
    let total = (k as u64).pow(c);
    let mut count = 0;
    for idx in 0..total {
        let mut rest = idx;
        let mut coloring = Vec::with_capacity(g.vertex_count());
        for block in cliques {
            let color = (rest % k as u64) as u32;
            rest /= k as u64;
            coloring.extend(block.iter().map(|&v| (v, color)));
        }
        if is_locally_optimal(g, &coloring.into_iter().collect::<Coloring>())? {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_force_lo_count, Budgets};

    fn degrees(g: &Graph) -> Vec<usize> {
        g.vertices().map(|v| g.voting_degree(v).unwrap()).collect()
    }

    fn edges_between(g: &Graph, a: &[VertexId], b: &[VertexId]) -> usize {
        a.iter()
            .map(|&x| b.iter().filter(|&&y| g.has_voting_edge(x, y)).count())
            .sum()
    }

    fn check_clique_skeleton(g: &Graph) {
        assert_eq!(g.vertex_count(), 25);
        assert_eq!(g.voting_edge_count(), 90);
        let degs = degrees(g);
        assert_eq!(degs.iter().filter(|&&d| d == 4).count(), 5);
        assert_eq!(degs.iter().filter(|&&d| d == 8).count(), 20);
        let blocks = clique_blocks();
        for i in 0..5 {
            assert_eq!(g.voting_degree(blocks[i][0]).unwrap(), 4);
            for j in i + 1..5 {
                assert_eq!(
                    edges_between(g, &blocks[i], &blocks[j]),
                    4,
                    "cliques {i},{j}"
                );
            }
        }
    }

    #[test]
    fn small_families() {
        let k3 = build(Family::Complete(3)).unwrap();
        assert_eq!(build(Family::TriangleChain(1)).unwrap(), k3);
        let chain = build(Family::TriangleChain(4)).unwrap();
        assert_eq!(chain.vertex_count(), 12);
        assert_eq!(chain.voting_edge_count(), 15);
        assert!(chain.is_connected());
        assert_eq!(
            build(Family::Star(3))
                .unwrap()
                .voting_degree(VertexId(0))
                .unwrap(),
            3
        );
        assert_eq!(build(Family::Path(1)).unwrap().vertex_count(), 1);
    }

    #[test]
    fn parameter_ranges() {
        for bad in [
            Family::Complete(0),
            Family::Path(0),
            Family::Cycle(2),
            Family::Star(0),
            Family::TriangleChain(0),
        ] {
            assert!(
                matches!(build(bad), Err(Error::FamilyParameter(_))),
                "{bad}"
            );
        }
        assert!(Family::parse("cycle", None).is_err());
        assert!(Family::parse("clique_cycle", Some(3)).is_err());
        assert!(Family::parse("petersen", Some(3)).is_err());
        assert_eq!(
            "triangle_chain 2".parse::<Family>().unwrap(),
            Family::TriangleChain(2)
        );
        assert_eq!(
            "clique_matching".parse::<Family>().unwrap(),
            Family::CliqueMatching
        );
    }

    #[test]
    fn clique_matching_structure() {
        let g = clique_matching();
        check_clique_skeleton(&g);
        let blocks = clique_blocks();
        for (i, bi) in blocks.iter().enumerate() {
            for &x in &bi[1..] {
                for (j, bj) in blocks.iter().enumerate() {
                    if i != j {
                        assert_eq!(edges_between(&g, &[x], bj), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn clique_cycle_structure() {
        let g = clique_cycle();
        check_clique_skeleton(&g);
        for i in 0..5u32 {
            for (a, b) in [(5 * i + 1, 5 * i + 2), (5 * i + 3, 5 * i + 4)] {
                let na: Vec<_> = g
                    .neighbors(VertexId(a))
                    .unwrap()
                    .iter()
                    .filter(|&&x| x != VertexId(b))
                    .collect();
                let nb: Vec<_> = g
                    .neighbors(VertexId(b))
                    .unwrap()
                    .iter()
                    .filter(|&&x| x != VertexId(a))
                    .collect();
                assert_eq!(na, nb);
            }
        }
        // each interior vertex reaches exactly two other cliques, and they are
        // cyclically adjacent
        let blocks = clique_blocks();
        for i in 0..5 {
            for &x in &blocks[i][1..] {
                let reached: Vec<usize> = (0..5)
                    .filter(|&j| j != i && edges_between(&g, &[x], &blocks[j]) > 0)
                    .collect();
                assert_eq!(reached.len(), 2);
                let gap = (reached[1] + 5 - reached[0]) % 5;
                assert!(gap == 1 || gap == 4);
            }
        }
    }

    #[test]
    fn reduced_counts() {
        let blocks = clique_blocks();
        assert_eq!(
            reduced_clique_lo_count(&clique_matching(), &blocks, 3).unwrap(),
            213
        );
        assert_eq!(
            reduced_clique_lo_count(&clique_cycle(), &blocks, 3).unwrap(),
            33
        );
        assert_eq!(
            reduced_clique_lo_count(&clique_cycle(), &blocks, 2).unwrap(),
            2
        );
    }

    #[test]
    fn reduced_count_rejects_non_partitions() {
        let g = clique_cycle();
        let mut blocks = clique_blocks();
        blocks.pop();
        assert!(matches!(
            reduced_clique_lo_count(&g, &blocks, 2),
            Err(Error::NotAPartition(_))
        ));
        let mut dup = clique_blocks();
        dup[0].push(VertexId(7));
        assert!(reduced_clique_lo_count(&g, &dup, 2).is_err());
    }

    #[test]
    fn small_clique_graph_reduction_matches_brute_force() {
        // two triangles joined by one edge: reduction over the triangles
        // agrees with full enumeration
        let g = build(Family::TriangleChain(2)).unwrap();
        let blocks: Vec<Vec<VertexId>> = vec![
            (0..3).map(VertexId).collect(),
            (3..6).map(VertexId).collect(),
        ];
        for k in 1..5 {
            assert_eq!(
                reduced_clique_lo_count(&g, &blocks, k).unwrap(),
                brute_force_lo_count(&g, k, &Budgets::default()).unwrap()
            );
        }
    }
}
