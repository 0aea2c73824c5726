//! Ground-truth counts that do not share code with the expansion engine:
//! exhaustive coloring enumeration, locally-optimal set partitions, and
//! exact interpolation through brute-force samples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::par::Workers;
use crate::poly::IntPolynomial;

/// Default cap on `k^|V|` for exhaustive coloring enumeration.
pub const DEFAULT_COLORING_BUDGET: u128 = 1 << 34;
/// Default cap on the number of set partitions visited (Bell(12)).
pub const DEFAULT_PARTITION_BUDGET: u128 = 4_213_597;

/// A total assignment of colors to vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: BTreeMap<VertexId, u32>,
}

impl Coloring {
    pub fn new(colors: BTreeMap<VertexId, u32>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, v: VertexId) -> Option<u32> {
        self.colors.get(&v).copied()
    }
}

impl FromIterator<(VertexId, u32)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (VertexId, u32)>>(iter: I) -> Self {
        Coloring::new(iter.into_iter().collect())
    }
}

/// A set partition of the vertex set. Blocks are sorted and listed by their
/// smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub colorings: u128,
    pub partitions: u128,
    pub workers: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            colorings: DEFAULT_COLORING_BUDGET,
            partitions: DEFAULT_PARTITION_BUDGET,
            workers: 0,
        }
    }
}

/// True iff every non-voting edge and extra constraint joins equal colors,
/// no vertex is isolated, and every vertex's own color is held by strictly
/// more voting neighbors than any other color.
pub fn is_locally_optimal(g: &Graph, c: &Coloring) -> Result<bool> {
    let col = |v: VertexId| c.color(v).ok_or(Error::PartialColoring(v));
    for v in g.vertices() {
        col(v)?;
    }
    for (a, b) in g.non_voting_edges().chain(g.extra_constraints()) {
        if col(a)? != col(b)? {
            return Ok(false);
        }
    }
    for v in g.vertices() {
        let nbrs = g.neighbors(v)?;
        if nbrs.is_empty() {
            return Ok(false);
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &u in nbrs {
            *counts.entry(col(u)?).or_default() += 1;
        }
        let own = col(v)?;
        let mine = counts.get(&own).copied().unwrap_or(0);
        if counts.iter().any(|(&color, &n)| color != own && n >= mine) || mine == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Index-based copy of a graph for the inner enumeration loops.
struct Compact {
    nbrs: Vec<Vec<usize>>,
    equal: Vec<(usize, usize)>,
    masks: Vec<u64>,
}

impl Compact {
    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| ids.binary_search(&v).expect("vertex present");
        let nbrs: Vec<Vec<usize>> = ids
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .expect("present")
                    .iter()
                    .map(|&u| idx(u))
                    .collect()
            })
            .collect();
        let equal = g
            .non_voting_edges()
            .chain(g.extra_constraints())
            .map(|(a, b)| (idx(a), idx(b)))
            .collect();
        let masks = if ids.len() <= 64 {
            nbrs.iter()
                .map(|ns| ns.iter().fold(0u64, |m, &u| m | (1 << u)))
                .collect()
        } else {
            Vec::new()
        };
        Compact { nbrs, equal, masks }
    }

    fn len(&self) -> usize {
        self.nbrs.len()
    }

    /// `scratch` must be zeroed and at least as long as the label range.
    fn is_lo(&self, labels: &[usize], scratch: &mut [u32]) -> bool {
        if self.equal.iter().any(|&(a, b)| labels[a] != labels[b]) {
            return false;
        }
        for (v, ns) in self.nbrs.iter().enumerate() {
            if ns.is_empty() {
                return false;
            }
            for &u in ns {
                scratch[labels[u]] += 1;
            }
            let own = labels[v];
            let mine = scratch[own];
            let ok = mine > 0
                && ns
                    .iter()
                    .all(|&u| labels[u] == own || scratch[labels[u]] < mine);
            for &u in ns {
                scratch[labels[u]] = 0;
            }
            if !ok {
                return false;
            }
        }
        true
    }

    /// Two-color check on a bitmask (bit set = color 1).
    fn is_lo_binary(&self, mask: u64) -> bool {
        if self
            .equal
            .iter()
            .any(|&(a, b)| ((mask >> a) ^ (mask >> b)) & 1 == 1)
        {
            return false;
        }
        for (v, &nm) in self.masks.iter().enumerate() {
            let deg = nm.count_ones();
            let ones = (nm & mask).count_ones();
            let same = if (mask >> v) & 1 == 1 {
                ones
            } else {
                deg - ones
            };
            if 2 * same <= deg {
                return false;
            }
        }
        true
    }
}

fn budget_check(what: &'static str, needed: Option<u128>, budget: u128) -> Result<u128> {
    match needed {
        Some(n) if n <= budget => Ok(n),
        other => Err(Error::BudgetExceeded {
            what,
            needed: other.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string()),
            budget,
        }),
    }
}

/// Number of locally-optimal colorings `V -> [k]`, by enumerating all
/// `k^|V|` colorings as a mixed-radix counter over contiguous index ranges.
pub fn brute_force_lo_count(g: &Graph, k: u32, budgets: &Budgets) -> Result<u64> {
    let n = g.vertex_count();
    let total = budget_check(
        "coloring",
        (k as u128).checked_pow(n as u32),
        budgets.colorings,
    )?;
    let total = u64::try_from(total).map_err(|_| Error::BudgetExceeded {
        what: "coloring",
        needed: total.to_string(),
        budget: budgets.colorings,
    })?;
    let cg = Compact::new(g);
    let workers = Workers::new(budgets.workers);
    if k == 2 && n <= 63 {
        return Ok(workers.sum_ranges(total, |start, end| {
            (start..end).filter(|&m| cg.is_lo_binary(m)).count() as u64
        }));
    }
    let k = k as usize;
    Ok(workers.sum_ranges(total, |start, end| {
        let mut digits = vec![0usize; n];
        let mut rest = start;
        for d in digits.iter_mut() {
            *d = (rest % k as u64) as usize;
            rest /= k as u64;
        }
        let mut scratch = vec![0u32; k.max(1)];
        let mut count = 0;
        for _ in start..end {
            if cg.is_lo(&digits, &mut scratch) {
                count += 1;
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < k {
                    break;
                }
                *d = 0;
            }
        }
        count
    }))
}

/// Bell number, `None` on `u128` overflow.
pub fn bell(n: usize) -> Option<u128> {
    // Bell triangle
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("nonempty"));
        for x in &row {
            let v = next.last().expect("nonempty").checked_add(*x)?;
            next.push(v);
        }
        row = next;
    }
    Some(row[0])
}

/// Restricted growth strings of length `n` in lexicographic order; each one
/// encodes a set partition (`a[i]` is the block of element `i`).
pub struct RestrictedGrowth {
    a: Vec<usize>,
    // prefix maxima: m[i] = max(a[0..i]) (m[0] unused)
    m: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            a: vec![0; n],
            m: vec![0; n],
            started: false,
            done: false,
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.a.clone());
        }
        let n = self.a.len();
        // rightmost position that can still grow
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.a[i] <= self.m[i] {
                self.a[i] += 1;
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.m[j] = self.m[j - 1].max(self.a[j - 1]);
                }
                return Some(self.a.clone());
            }
        }
        self.done = true;
        None
    }
}

fn for_each_lo_partition(
    g: &Graph,
    budgets: &Budgets,
    mut visit: impl FnMut(&[usize], usize),
) -> Result<()> {
    let n = g.vertex_count();
    budget_check("partition", bell(n), budgets.partitions)?;
    let cg = Compact::new(g);
    let mut scratch = vec![0u32; n.max(1)];
    for rgs in RestrictedGrowth::new(n) {
        if cg.len() == 0 || cg.is_lo(&rgs, &mut scratch) {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            visit(&rgs, blocks);
        }
    }
    Ok(())
}

/// All locally-optimal set partitions, in restricted-growth lexicographic
/// order.
pub fn enumerate_lo_partitions(g: &Graph, budgets: &Budgets) -> Result<Vec<Partition>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for_each_lo_partition(g, budgets, |rgs, nblocks| {
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(ids[i]);
        }
        out.push(Partition { blocks });
    })?;
    Ok(out)
}

/// Number of locally-optimal partitions with each block count.
pub fn lo_partition_profile(g: &Graph, budgets: &Budgets) -> Result<BTreeMap<usize, u64>> {
    let mut profile = BTreeMap::new();
    for_each_lo_partition(g, budgets, |_, nblocks| {
        *profile.entry(nblocks).or_insert(0) += 1;
    })?;
    Ok(profile)
}

/// Sum of falling factorials `k^(|π|)` over locally-optimal partitions.
pub fn lo_polynomial_via_partitions(g: &Graph, budgets: &Budgets) -> Result<IntPolynomial> {
    let profile = lo_partition_profile(g, budgets)?;
    Ok(profile
        .iter()
        .fold(IntPolynomial::zero(), |acc, (&m, &count)| {
            acc.add(&IntPolynomial::falling_factorial(m).scale(&BigInt::from(count)))
        }))
}

/// Lagrange interpolation with exact rationals. Errors if any coefficient of
/// the interpolant is not an integer.
pub fn interpolate(points: &[(i64, BigInt)]) -> Result<IntPolynomial> {
    let n = points.len();
    let mut acc = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (k - xj) / (xi - xj)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(*xj));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(*xi)) - &xj;
            if denom.is_zero() {
                return Err(Error::Precondition("repeated interpolation node".into()));
            }
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in basis.into_iter().enumerate() {
            acc[d] += c * &scale;
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral(c.to_string()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// Interpolates brute-force counts at `k = 0..=⌊n/3⌋`, the degree bound for
/// connected graphs on `n >= 3` vertices.
pub fn lo_polynomial_via_interpolation(g: &Graph, budgets: &Budgets) -> Result<IntPolynomial> {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return Err(Error::Precondition(
            "interpolation oracle needs a connected graph on at least 3 vertices".into(),
        ));
    }
    let d = n / 3;
    let points = (0..=d as u32)
        .map(|k| Ok((k as i64, BigInt::from(brute_force_lo_count(g, k, budgets)?))))
        .collect::<Result<Vec<_>>>()?;
    interpolate(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, Family};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn b() -> Budgets {
        Budgets::default()
    }

    fn fam(f: Family) -> Graph {
        families::build(f).unwrap()
    }

    #[test]
    fn local_optimality_examples() {
        let k3 = fam(Family::Complete(3));
        let same: Coloring = (0..3).map(|i| (v(i), 0)).collect();
        assert!(is_locally_optimal(&k3, &same).unwrap());

        let p3 = fam(Family::Path(3));
        let xyx: Coloring = [(v(0), 0), (v(1), 1), (v(2), 0)].into_iter().collect();
        assert!(!is_locally_optimal(&p3, &xyx).unwrap());

        let mut single = Graph::new();
        single.insert_vertex(v(0)).unwrap();
        let c: Coloring = [(v(0), 3)].into_iter().collect();
        assert!(!is_locally_optimal(&single, &c).unwrap());

        let partial: Coloring = [(v(0), 0)].into_iter().collect();
        assert!(matches!(
            is_locally_optimal(&k3, &partial),
            Err(Error::PartialColoring(_))
        ));
    }

    #[test]
    fn non_voting_edges_must_match() {
        let g = Graph::from_parts(0..4, [(0, 1), (2, 3)], [(1, 2)]).unwrap();
        let split: Coloring = [(v(0), 0), (v(1), 0), (v(2), 1), (v(3), 1)]
            .into_iter()
            .collect();
        assert!(!is_locally_optimal(&g, &split).unwrap());
        assert_eq!(brute_force_lo_count(&g, 3, &b()).unwrap(), 3);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_lo_count(&fam(Family::Complete(4)), 3, &b()).unwrap(),
            3
        );
        assert_eq!(
            brute_force_lo_count(&fam(Family::Cycle(5)), 2, &b()).unwrap(),
            2
        );
        let k3 = fam(Family::Complete(3));
        let two = k3.disjoint_union(&k3);
        assert_eq!(brute_force_lo_count(&two, 2, &b()).unwrap(), 4);
    }

    #[test]
    fn binary_fast_path_matches_general_path() {
        // k = 2 takes the bitmask route; compare with the per-vertex check
        let g = fam(Family::TriangleChain(2)).add_leaf(v(0)).unwrap();
        let cg = Compact::new(&g);
        let mut scratch = vec![0u32; 2];
        let n = g.vertex_count();
        let slow = (0u64..1 << n)
            .filter(|m| {
                let labels: Vec<usize> = (0..n).map(|i| ((m >> i) & 1) as usize).collect();
                cg.is_lo(&labels, &mut scratch)
            })
            .count() as u64;
        assert_eq!(brute_force_lo_count(&g, 2, &b()).unwrap(), slow);
    }

    #[test]
    fn brute_force_budget_and_degenerate_k() {
        let k4 = fam(Family::Complete(4));
        let tight = Budgets {
            colorings: 80,
            ..b()
        };
        assert!(matches!(
            brute_force_lo_count(&k4, 3, &tight),
            Err(Error::BudgetExceeded {
                what: "coloring",
                ..
            })
        ));
        assert_eq!(brute_force_lo_count(&k4, 0, &b()).unwrap(), 0);
        assert_eq!(brute_force_lo_count(&k4, 1, &b()).unwrap(), 1);
        assert_eq!(brute_force_lo_count(&Graph::new(), 3, &b()).unwrap(), 1);
    }

    #[test]
    fn worker_count_does_not_change_counts() {
        let g = fam(Family::TriangleChain(3));
        let seq = brute_force_lo_count(&g, 3, &Budgets { workers: 1, ..b() }).unwrap();
        let par = brute_force_lo_count(&g, 3, &Budgets { workers: 4, ..b() }).unwrap();
        assert_eq!(seq, 27);
        assert_eq!(seq, par);
    }

    #[test]
    fn restricted_growth_counts_bell_numbers() {
        for n in 0..9 {
            assert_eq!(RestrictedGrowth::new(n).count() as u128, bell(n).unwrap());
        }
        let all: Vec<_> = RestrictedGrowth::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(bell(12), Some(4_213_597));
        assert_eq!(bell(25), Some(4_638_590_332_229_999_353));
    }

    #[test]
    fn partition_examples() {
        let k3 = enumerate_lo_partitions(&fam(Family::Complete(3)), &b()).unwrap();
        assert_eq!(k3.len(), 1);
        assert_eq!(k3[0].blocks, vec![vec![v(0), v(1), v(2)]]);

        let chain = enumerate_lo_partitions(&fam(Family::TriangleChain(2)), &b()).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0].len(), 1);
        assert_eq!(
            chain[1].blocks,
            vec![vec![v(0), v(1), v(2)], vec![v(3), v(4), v(5)]]
        );

        let p2 = enumerate_lo_partitions(&fam(Family::Path(2)), &b()).unwrap();
        assert_eq!(p2.len(), 1);
        assert_eq!(p2[0].len(), 1);
    }

    #[test]
    fn partition_budget() {
        let tight = Budgets {
            partitions: 100,
            ..b()
        };
        assert!(matches!(
            enumerate_lo_partitions(&fam(Family::Cycle(6)), &tight),
            Err(Error::BudgetExceeded {
                what: "partition",
                ..
            })
        ));
    }

    #[test]
    fn polynomial_via_partitions_examples() {
        let k = IntPolynomial::k();
        assert_eq!(
            lo_polynomial_via_partitions(&fam(Family::Complete(5)), &b()).unwrap(),
            k
        );
        assert_eq!(
            lo_polynomial_via_partitions(&fam(Family::TriangleChain(2)), &b()).unwrap(),
            IntPolynomial::monomial(2)
        );
        assert_eq!(
            lo_polynomial_via_partitions(&fam(Family::Cycle(4)), &b()).unwrap(),
            k
        );
    }

    #[test]
    fn interpolation_examples() {
        let k = IntPolynomial::k();
        let c9 = fam(Family::Cycle(9));
        let samples: Vec<u64> = (0..4)
            .map(|k| brute_force_lo_count(&c9, k, &b()).unwrap())
            .collect();
        assert_eq!(samples, vec![0, 1, 2, 3]);
        assert_eq!(lo_polynomial_via_interpolation(&c9, &b()).unwrap(), k);
        assert_eq!(
            lo_polynomial_via_interpolation(&fam(Family::Complete(6)), &b()).unwrap(),
            k
        );

        let chain = fam(Family::TriangleChain(3));
        let samples: Vec<u64> = (0..4)
            .map(|k| brute_force_lo_count(&chain, k, &b()).unwrap())
            .collect();
        assert_eq!(samples, vec![0, 1, 8, 27]);
        assert_eq!(
            lo_polynomial_via_interpolation(&chain, &b()).unwrap(),
            IntPolynomial::monomial(3)
        );
    }

    #[test]
    fn interpolation_rejects_non_integral_data() {
        let pts = vec![
            (0, BigInt::from(0)),
            (1, BigInt::from(1)),
            (2, BigInt::from(0)),
        ];
        // through (0,0),(1,1),(2,0): -k^2 + 2k, integral
        assert_eq!(
            interpolate(&pts).unwrap(),
            IntPolynomial::from_i64s(&[0, 2, -1])
        );
        let bad = vec![(0, BigInt::from(0)), (2, BigInt::from(1))];
        assert!(matches!(interpolate(&bad), Err(Error::NonIntegral(_))));
        let p2 = fam(Family::Path(2));
        assert!(matches!(
            lo_polynomial_via_interpolation(&p2, &b()),
            Err(Error::Precondition(_))
        ));
    }
}
