//! Recursive computation of the LO-polynomial.
//!
//! A graph is rewritten into a signed sum of graphs in which more and more
//! vertices are *forced-dense* (their forced co-class neighbors strictly
//! outnumber the rest). A forced-dense graph with `p` forced classes has
//! exactly `k^p` locally-optimal colorings, so the sum collapses to a
//! polynomial.
//!
//! Two expansions drive the recursion at a vertex `v` of voting degree `n`:
//!
//! * [`expand_any_degree`]: inclusion-exclusion over which neighbors share
//!   `v`'s color, coefficient `(-1)^j (j-1)` for every `j`-subset, each
//!   realised by subdividing the edges to those neighbors.
//! * [`expand_to_majority`]: for `v` with `b` forced neighbors, `2 <= b <=
//!   n/2`, add `ℓ` leaves so the forced side wins, then remove by
//!   inclusion-exclusion the colorings where a free neighbor joins `v` or
//!   `b` free neighbors share some other color (non-voting edges), and add
//!   back the leafless colorings with extra subdivided edges.
//!
//! Like terms are merged after [`normalize`], which rewrites a graph into a
//! canonical representative with the same number of locally-optimal
//! colorings.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::compact::{Skeleton, State};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexRole};
use crate::oracles::RestrictedGrowth;
use crate::par::Workers;
use crate::poly::IntPolynomial;

/// Largest neighborhood the subset enumerations accept.
const MAX_SUBSET_BITS: usize = 30;

/// One signed summand of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub graph: Graph,
    pub coeff: BigInt,
}

impl Term {
    /// `None` for a zero coefficient.
    pub fn new(graph: Graph, coeff: impl Into<BigInt>) -> Option<Term> {
        let coeff = coeff.into();
        (!coeff.is_zero()).then_some(Term { graph, coeff })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    pub terms: Vec<Term>,
}

impl Expansion {
    fn push(&mut self, graph: Graph, coeff: impl Into<BigInt>) {
        if let Some(t) = Term::new(graph, coeff) {
            self.terms.push(t);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    /// Normalizes every term and merges terms with equal canonical keys,
    /// dropping those whose coefficients cancel. Ordered by key.
    pub fn normalized(&self) -> Expansion {
        let mut merged: BTreeMap<CanonicalKey, (Graph, BigInt)> = BTreeMap::new();
        for t in &self.terms {
            let g = normalize(&t.graph);
            let key = canonical_key(&g);
            merged
                .entry(key)
                .and_modify(|(_, c)| *c += &t.coeff)
                .or_insert((g, t.coeff.clone()));
        }
        let mut out = Expansion::default();
        for (_, (g, c)) in merged {
            out.push(g, c);
        }
        out
    }
}

/// How many leaves the majority expansion attaches at a vertex of degree
/// `n` with `b` forced neighbors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LeafRule {
    /// `n - 2b + 1`, the fewest leaves that give the forced side a strict
    /// majority.
    #[default]
    Minimal,
    /// `n - 2b + 2`.
    OneExtra,
}

impl LeafRule {
    pub fn leaves(self, n: usize, b: usize) -> usize {
        match self {
            LeafRule::Minimal => n + 1 - 2 * b,
            LeafRule::OneExtra => n + 2 - 2 * b,
        }
    }
}

fn sign(parity: usize) -> i64 {
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn masks_of_size(n: usize, j: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |m| m.count_ones() as usize == j)
}

fn picked<T: Copy>(items: &[T], mask: u64) -> impl Iterator<Item = T> + '_ {
    items
        .iter()
        .enumerate()
        .filter(move |(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
}

fn check_width(v: VertexId, n: usize) -> Result<()> {
    if n > MAX_SUBSET_BITS {
        return Err(Error::Precondition(format!(
            "vertex {v} has {n} candidate neighbors; subset enumeration is limited to {MAX_SUBSET_BITS}"
        )));
    }
    Ok(())
}

/// `LO(G) = Σ_{j=2}^{n} (-1)^j (j-1) Σ_{|S|=j} LO(G_S)`, where `G_S` subdivides
/// the edge `vw` for each `w ∈ S`. Neighbors already forced into `v`'s class
/// are left unsubdivided, which does not change `LO(G_S)`.
pub fn expand_any_degree(g: &Graph, v: VertexId) -> Result<Expansion> {
    let n = g.voting_degree(v)?;
    if n < 3 {
        return Err(Error::DegreeTooSmall {
            vertex: v,
            degree: n,
            min: 3,
        });
    }
    check_width(v, n)?;
    let forcing = g.forcing();
    let nbrs = g.nbrs(v).to_vec();
    let mut out = Expansion::default();
    for j in 2..=n {
        let coeff = sign(j) * (j as i64 - 1);
        for mask in masks_of_size(n, j) {
            let mut h = g.clone();
            for w in picked(&nbrs, mask) {
                if !forcing.same(v, w) {
                    h.subdivide_in_place(v, w)?;
                }
            }
            out.push(h, coeff);
        }
    }
    Ok(out)
}

/// Splits `v`'s neighbors into forced (same class) and free, checking the
/// majority-expansion precondition.
fn majority_setup(g: &Graph, v: VertexId, b: usize) -> Result<(usize, Vec<VertexId>)> {
    let n = g.voting_degree(v)?;
    if b < 2 || 2 * b > n {
        return Err(Error::MajorityOutOfRange {
            vertex: v,
            forced: b,
            degree: n,
        });
    }
    let forcing = g.forcing();
    let free: Vec<VertexId> = g
        .nbrs(v)
        .iter()
        .copied()
        .filter(|&w| !forcing.same(v, w))
        .collect();
    if n - free.len() != b {
        return Err(Error::Precondition(format!(
            "vertex {v} has {} forced neighbors, not {b}",
            n - free.len()
        )));
    }
    check_width(v, free.len())?;
    Ok((n, free))
}

fn with_leaves(g: &Graph, v: VertexId, leaves: usize) -> Result<Graph> {
    let mut h = g.clone();
    for _ in 0..leaves {
        h.add_leaf_in_place(v)?;
    }
    Ok(h)
}

/// The leafless tail shared by both majority expansions:
/// `Σ_{j>=1} (-1)^{j+1} Σ_{|W'|=j} LO(G^0_{W'})`.
fn push_leafless_tail(
    out: &mut Expansion,
    g: &Graph,
    v: VertexId,
    free: &[VertexId],
) -> Result<()> {
    for mask in 1u64..1 << free.len() {
        let mut h = g.clone();
        for w in picked(free, mask) {
            h.subdivide_in_place(v, w)?;
        }
        out.push(h, sign(mask.count_ones() as usize + 1));
    }
    Ok(())
}

/// Literal form of the majority expansion: every pair `(W', 𝒯)` with `W' ⊆ W`
/// and `𝒯` a family of `b`-subsets of the free neighbors `W`, with sign
/// `(-1)^{|W'|+|𝒯|}`, followed by the leafless tail. Exponential in the
/// number of `b`-subsets; see [`expand_to_majority_grouped`] for the form the
/// engine uses.
pub fn expand_to_majority(g: &Graph, v: VertexId, b: usize, rule: LeafRule) -> Result<Expansion> {
    let (n, free) = majority_setup(g, v, b)?;
    let families: Vec<Vec<VertexId>> = masks_of_size(free.len(), b)
        .map(|m| picked(&free, m).collect())
        .collect();
    check_width(v, families.len())?;
    let base = with_leaves(g, v, rule.leaves(n, b))?;
    let mut out = Expansion::default();
    for wmask in 0u64..1 << free.len() {
        for tmask in 0u64..1 << families.len() {
            let mut h = base.clone();
            for w in picked(&free, wmask) {
                h.subdivide_in_place(v, w)?;
            }
            let chosen = families
                .iter()
                .enumerate()
                .filter(|(i, _)| tmask >> i & 1 == 1)
                .map(|(_, t)| t);
            for t in chosen {
                for (i, &a) in t.iter().enumerate() {
                    for &c in &t[i + 1..] {
                        h.add_non_voting_in_place(a, c)?;
                    }
                }
            }
            out.push(h, sign((wmask.count_ones() + tmask.count_ones()) as usize));
        }
    }
    push_leafless_tail(&mut out, g, v, &free)?;
    Ok(out)
}

/// Signed weight of all families of `b`-subsets of an `s`-set whose union
/// hypergraph is connected and spans the set: `Σ (-1)^{|𝒯|}`.
///
/// With `a(s) = Σ_{all 𝒯} (-1)^{|𝒯|} = [s < b]` and the block of the first
/// element split off, `a(s) = Σ_j C(s-1, j-1) c(j) a(s-j)`.
pub(crate) fn connected_family_weights(b: usize, max: usize) -> Vec<BigInt> {
    let a = |s: usize| -> BigInt { BigInt::from(i32::from(s < b)) };
    let mut binom = vec![vec![BigInt::one()]];
    for s in 1..=max {
        let prev = &binom[s - 1];
        let mut row = vec![BigInt::one(); s + 1];
        for j in 1..s {
            row[j] = &prev[j - 1] + &prev[j];
        }
        binom.push(row);
    }
    let mut c = vec![BigInt::zero(); max + 1];
    for s in 1..=max {
        let mut rest = BigInt::zero();
        for j in 1..s {
            rest += &binom[s - 1][j - 1] * &c[j] * a(s - j);
        }
        c[s] = a(s) - rest;
    }
    c
}

/// Weight of a set `U` of free neighbors that ends up in `v`'s class in the
/// grouped expansion, by `|U|`: `Σ_ρ Π_{B ∈ ρ} -c(|B|)` over the partitions
/// `ρ` of `U`, where `c` is [`connected_family_weights`].
///
/// A block `B` of the partition generated by the families joins `v`'s class
/// as soon as one of its members is subdivided to `v`, and the signs
/// `(-1)^{|A|}` of the nonempty subsets `A ⊆ B` that do so sum to `-1`.
pub(crate) fn absorbed_weights(c: &[BigInt]) -> Vec<BigInt> {
    let max = c.len() - 1;
    let mut f = vec![BigInt::one()];
    for m in 1..=max {
        // split off the block holding the first element
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one();
        for j in 1..=m {
            acc -= &binom * &c[j] * &f[m - j];
            binom = binom * (m - j) / j;
        }
        f.push(acc);
    }
    f
}

/// Majority expansion with the non-voting families grouped by the partition
/// of `W` they generate, and the subdivided set `W'` grouped by the blocks
/// it touches. A child is fixed by the set `U` of free neighbors pulled into
/// `v`'s class and a partition `σ` of the rest into non-voting groups; its
/// coefficient is [`absorbed_weights`]`(|U|)` times the product of
/// [`connected_family_weights`] over the blocks of `σ`. Equal to the
/// literal expansion after normalization.
pub fn expand_to_majority_grouped(
    g: &Graph,
    v: VertexId,
    b: usize,
    rule: LeafRule,
) -> Result<Expansion> {
    let (n, free) = majority_setup(g, v, b)?;
    let weights = connected_family_weights(b, free.len());
    let absorbed = absorbed_weights(&weights);
    let base = with_leaves(g, v, rule.leaves(n, b))?;
    let mut out = Expansion::default();
    for umask in 0u64..1 << free.len() {
        let lead = &absorbed[umask.count_ones() as usize];
        if lead.is_zero() {
            continue;
        }
        let rest: Vec<VertexId> = free
            .iter()
            .enumerate()
            .filter(|(i, _)| umask >> i & 1 == 0)
            .map(|(_, &w)| w)
            .collect();
        for rgs in RestrictedGrowth::new(rest.len()) {
            let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut blocks: Vec<Vec<VertexId>> = vec![Vec::new(); nblocks];
            for (i, &blk) in rgs.iter().enumerate() {
                blocks[blk].push(rest[i]);
            }
            let weight: BigInt = lead
                * blocks
                    .iter()
                    .map(|blk| &weights[blk.len()])
                    .product::<BigInt>();
            if weight.is_zero() {
                continue;
            }
            let mut h = base.clone();
            for w in picked(&free, umask) {
                h.subdivide_in_place(v, w)?;
            }
            for blk in &blocks {
                for pair in blk.windows(2) {
                    h.add_non_voting_in_place(pair[0], pair[1])?;
                }
            }
            out.push(h, weight);
        }
    }
    push_leafless_tail(&mut out, g, v, &free)?;
    Ok(out)
}

/// The engine's expansion at `v`: [`expand_any_degree`] when fewer than two
/// neighbors are forced, otherwise the grouped majority expansion.
pub fn expand_at(g: &Graph, v: VertexId, rule: LeafRule) -> Result<Expansion> {
    let (co, _) = g.forcing().split(g, v);
    if co < 2 {
        expand_any_degree(g, v)
    } else {
        expand_to_majority_grouped(g, v, co, rule)
    }
}

/// A `Leaf` vertex whose anchor stays forced-dense without it.
fn surplus_leaf(g: &Graph) -> Option<VertexId> {
    let forcing = g.forcing();
    g.vertices_with_roles()
        .filter(|&(x, role)| role == VertexRole::Leaf && g.deg(x) == 1)
        .find(|&(x, _)| {
            let anchor = g.nbrs(x)[0];
            let (co, free) = forcing.split(g, anchor);
            co - 1 > free
        })
        .map(|(x, _)| x)
}

/// Rewrites `g` into a canonical graph with the same LO count:
///
/// * a voting edge whose endpoints both have degree at least 3 and are in
///   the same forced class is subdivided (the colorings already agree on
///   its endpoints);
/// * a `Leaf` is removed when its anchor's remaining forced neighbors still
///   outnumber the free ones;
/// * non-voting edges and extra constraints are replaced by a star per
///   forced class over representatives of the classes that voting structure
///   alone produces.
///
/// The first two rules run to a fixed point before the third.
pub fn normalize(g: &Graph) -> Graph {
    let mut g = g.clone();
    loop {
        let mut changed = false;
        let forcing = g.forcing();
        let coclass: Vec<(VertexId, VertexId)> = g
            .voting_edges()
            .filter(|&(a, b)| g.deg(a) >= 3 && g.deg(b) >= 3 && forcing.same(a, b))
            .collect();
        for (a, b) in coclass {
            g.subdivide_in_place(a, b).expect("voting edge");
            changed = true;
        }
        if let Some(x) = surplus_leaf(&g) {
            g.remove_vertex(x);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    canonicalize_constraints(&mut g);
    g
}

fn canonicalize_constraints(g: &mut Graph) {
    let voting = g.voting_forcing();
    let full = g.forcing();
    // representative of each voting class: smallest Original member, else
    // smallest member
    let mut rep: BTreeMap<usize, VertexId> = BTreeMap::new();
    for (v, role) in g.vertices_with_roles() {
        let c = voting.class_of(v);
        match rep.get(&c) {
            None => {
                rep.insert(c, v);
            }
            Some(&r)
                if g.role(r).ok() != Some(VertexRole::Original) && role == VertexRole::Original =>
            {
                rep.insert(c, v);
            }
            _ => {}
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<VertexId>> = BTreeMap::new();
    for v in g.vertices() {
        groups
            .entry(full.class_of(v))
            .or_default()
            .insert(rep[&voting.class_of(v)]);
    }
    let mut nv = BTreeSet::new();
    let mut extra = BTreeSet::new();
    for reps in groups.values() {
        let mut it = reps.iter().copied();
        let Some(hub) = it.next() else { continue };
        for r in it {
            if g.has_voting_edge(hub, r) {
                extra.insert((hub, r));
            } else {
                nv.insert((hub, r));
            }
        }
    }
    g.replace_constraints(nv, extra);
}

pub fn normalize_term(t: &Term) -> Term {
    Term {
        graph: normalize(&t.graph),
        coeff: t.coeff.clone(),
    }
}

/// Identity of a normalized graph for merging like terms.
///
/// Original vertices keep their ids; subdivision vertices are named by the
/// pair they sit on and leaves by their anchor, so two graphs built by the
/// same edits in different orders get the same key. Graphs that do not fit
/// that shape fall back to their raw labeled form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

const SEP: u32 = u32::MAX;

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    structural_key(g).unwrap_or_else(|| raw_key(g))
}

fn structural_key(g: &Graph) -> Option<CanonicalKey> {
    let is_orig = |v: VertexId| g.role(v).ok() == Some(VertexRole::Original);
    let mut out = vec![0u32];
    let mut edges = Vec::new();
    let mut subdivided = Vec::new();
    let mut leaves = Vec::new();
    for (v, role) in g.vertices_with_roles() {
        let nbrs = g.nbrs(v);
        match role {
            VertexRole::Original => {
                out.push(v.0);
                for &u in nbrs {
                    if v < u && is_orig(u) {
                        edges.push((v.0, u.0));
                    }
                }
            }
            VertexRole::Subdivision => match nbrs {
                [a, b] if is_orig(*a) && is_orig(*b) => subdivided.push((a.0, b.0)),
                _ => return None,
            },
            VertexRole::Leaf => match nbrs {
                [a] if is_orig(*a) => leaves.push(a.0),
                _ => return None,
            },
        }
    }
    subdivided.sort_unstable();
    leaves.sort_unstable();
    out.push(SEP);
    out.extend(edges.into_iter().flat_map(|(a, b)| [a, b]));
    out.push(SEP);
    out.extend(subdivided.into_iter().flat_map(|(a, b)| [a, b]));
    out.push(SEP);
    out.extend(leaves);
    for set in [
        g.non_voting_edges().collect::<Vec<_>>(),
        g.extra_constraints().collect::<Vec<_>>(),
    ] {
        out.push(SEP);
        for (a, b) in set {
            if !is_orig(a) || !is_orig(b) {
                return None;
            }
            out.extend([a.0, b.0]);
        }
    }
    Some(CanonicalKey(out))
}

fn raw_key(g: &Graph) -> CanonicalKey {
    let mut out = vec![1u32];
    for (v, role) in g.vertices_with_roles() {
        out.extend([v.0, role as u32]);
    }
    for set in [
        g.voting_edges().collect::<Vec<_>>(),
        g.non_voting_edges().collect(),
        g.extra_constraints().collect(),
    ] {
        out.push(SEP);
        out.extend(set.into_iter().flat_map(|(a, b)| [a.0, b.0]));
    }
    CanonicalKey(out)
}

/// `k^p` for a forced-dense graph with `p` forced classes; `1` for the
/// empty graph.
pub fn base_case_value(g: &Graph) -> Result<IntPolynomial> {
    if !g.is_forced_dense() {
        return Err(Error::NotForcedDense);
    }
    Ok(IntPolynomial::monomial(g.forcing().class_count()))
}

/// Next vertex to expand: not forced-dense, smallest voting degree, then
/// smallest id.
pub fn next_vertex(g: &Graph) -> Option<VertexId> {
    let forcing = g.forcing();
    g.vertices()
        .filter(|&v| {
            let (co, free) = forcing.split(g, v);
            co <= free
        })
        .min_by_key(|&v| (g.deg(v), v))
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub leaf_rule: LeafRule,
    /// Recursive evaluation with results cached by canonical key.
    pub memo: bool,
    /// `0` = all cores, `1` = sequential.
    pub workers: usize,
    /// Maximum number of live terms (or cached graphs with `memo`).
    pub term_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            leaf_rule: LeafRule::Minimal,
            memo: false,
            workers: 0,
            term_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub rounds: usize,
    pub expansions: usize,
    pub peak_terms: usize,
    pub base_terms: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub config: EngineConfig,
}

enum Outcome {
    Dense(usize),
    Children(Vec<(State, BigInt)>),
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine { config }
    }

    pub fn lo_polynomial(&self, g: &Graph) -> Result<IntPolynomial> {
        self.lo_polynomial_with_stats(g).map(|(p, _)| p)
    }

    /// Runs the recursion on the engine's internal term representation
    /// (see the `compact` module), which follows the same vertex order and
    /// expansions as [`expand_at`] and [`normalize`] on [`Graph`]s.
    pub fn lo_polynomial_with_stats(&self, g: &Graph) -> Result<(IntPolynomial, EngineStats)> {
        if g.has_isolated_vertex() {
            return Ok((IntPolynomial::zero(), EngineStats::default()));
        }
        let (sk, start) = Skeleton::from_graph(g)?;
        if sk.has_isolated_vertex(&start) {
            return Ok((IntPolynomial::zero(), EngineStats::default()));
        }
        if self.config.memo {
            let mut memo = HashMap::new();
            let mut stats = EngineStats::default();
            let p = self.eval_memo(&sk, start, &mut memo, &mut stats)?;
            stats.peak_terms = memo.len();
            Ok((p, stats))
        } else {
            self.run_worklist(&sk, start)
        }
    }

    pub fn sg_polynomial(&self, g: &Graph) -> Result<IntPolynomial> {
        Ok(sg_from_lo(g, &self.lo_polynomial(g)?))
    }

    fn step(&self, sk: &Skeleton, s: &State, coeff: &BigInt) -> Result<Outcome> {
        match sk.next_vertex(s) {
            None => Ok(Outcome::Dense(sk.class_count(s))),
            Some(v) => {
                let mut merged: HashMap<State, BigInt> = HashMap::new();
                for (child, c) in sk.expand(s, v, self.config.leaf_rule)? {
                    *merged.entry(child).or_default() += c;
                }
                Ok(Outcome::Children(
                    merged
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(child, c)| (child, c * coeff))
                        .collect(),
                ))
            }
        }
    }

    fn run_worklist(&self, sk: &Skeleton, start: State) -> Result<(IntPolynomial, EngineStats)> {
        let workers = Workers::new(self.config.workers);
        let mut stats = EngineStats::default();
        let mut by_power: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut pending: HashMap<State, BigInt> = HashMap::from([(start, BigInt::one())]);
        while !pending.is_empty() {
            stats.rounds += 1;
            stats.peak_terms = stats.peak_terms.max(pending.len());
            let items: Vec<(State, BigInt)> = std::mem::take(&mut pending).into_iter().collect();
            let outcomes = workers.map(&items, |(s, c)| self.step(sk, s, c));
            for ((_, coeff), outcome) in items.iter().zip(outcomes) {
                match outcome? {
                    Outcome::Dense(p) => {
                        stats.base_terms += 1;
                        *by_power.entry(p).or_default() += coeff;
                    }
                    Outcome::Children(children) => {
                        stats.expansions += 1;
                        for (child, c) in children {
                            *pending.entry(child).or_default() += c;
                        }
                    }
                }
            }
            pending.retain(|_, c| !c.is_zero());
            if pending.len() > self.config.term_budget {
                return Err(Error::BudgetExceeded {
                    what: "term",
                    needed: pending.len().to_string(),
                    budget: self.config.term_budget as u128,
                });
            }
        }
        let max = by_power.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); max + 1];
        for (p, c) in by_power {
            coeffs[p] = c;
        }
        Ok((IntPolynomial::from_coeffs(coeffs), stats))
    }

    fn eval_memo(
        &self,
        sk: &Skeleton,
        s: State,
        memo: &mut HashMap<State, IntPolynomial>,
        stats: &mut EngineStats,
    ) -> Result<IntPolynomial> {
        if let Some(p) = memo.get(&s) {
            return Ok(p.clone());
        }
        let p = match sk.next_vertex(&s) {
            None => {
                stats.base_terms += 1;
                IntPolynomial::monomial(sk.class_count(&s))
            }
            Some(v) => {
                stats.expansions += 1;
                let mut merged: BTreeMap<State, BigInt> = BTreeMap::new();
                for (child, c) in sk.expand(&s, v, self.config.leaf_rule)? {
                    *merged.entry(child).or_default() += c;
                }
                let mut acc = IntPolynomial::zero();
                for (child, c) in merged {
                    if c.is_zero() {
                        continue;
                    }
                    let sub = self.eval_memo(sk, child, memo, stats)?;
                    acc = acc.add(&sub.scale(&c));
                }
                acc
            }
        };
        memo.insert(s, p.clone());
        if memo.len() > self.config.term_budget {
            return Err(Error::BudgetExceeded {
                what: "memo",
                needed: memo.len().to_string(),
                budget: self.config.term_budget as u128,
            });
        }
        Ok(p)
    }
}

/// `LO - k` when every vertex has a voting neighbor (the `k` uniform
/// colorings are then locally optimal); `LO` otherwise. The empty graph has
/// no coloring with two colors, so its value is `0`.
pub fn sg_from_lo(g: &Graph, lo: &IntPolynomial) -> IntPolynomial {
    if g.is_empty() {
        IntPolynomial::zero()
    } else if g.min_voting_degree().unwrap_or(0) >= 1 {
        lo - &IntPolynomial::k()
    } else {
        lo.clone()
    }
}

/// LO-polynomial with the default configuration.
pub fn lo_polynomial(g: &Graph) -> Result<IntPolynomial> {
    Engine::default().lo_polynomial(g)
}

/// SG-polynomial with the default configuration.
pub fn sg_polynomial(g: &Graph) -> Result<IntPolynomial> {
    Engine::default().sg_polynomial(g)
}
