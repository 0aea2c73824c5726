//! Graph model: voting edges, non-voting edges, vertex roles, and the forcing
//! structure that leaves, bivalent vertices and non-voting edges impose on
//! every locally-optimal coloring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Vertex identifier. Stable for the lifetime of a graph and of every graph
/// derived from it by structural edits; fresh ids are never reused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexRole {
    Original,
    /// Created by subdividing a voting edge; voting degree 2 at creation.
    Subdivision,
    /// Created by attaching a pendant vertex; voting degree 1 at creation.
    Leaf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    role: VertexRole,
    // sorted, no duplicates
    nbrs: Vec<VertexId>,
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A simple undirected graph with two edge kinds.
///
/// Voting edges count towards degrees and pluralities. Non-voting edges only
/// force their endpoints to share a color. A pair never appears in both sets.
/// Same-color constraints requested on a pair that is already a voting edge
/// are kept in a separate constraint set (see [`Graph::add_non_voting_edge`]).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    nodes: BTreeMap<VertexId, Node>,
    non_voting: BTreeSet<(VertexId, VertexId)>,
    extra: BTreeSet<(VertexId, VertexId)>,
    next_id: u32,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph of `Original` vertices.
    pub fn from_parts<V, E, N>(vertices: V, edges: E, non_voting: N) -> Result<Self>
    where
        V: IntoIterator<Item = u32>,
        E: IntoIterator<Item = (u32, u32)>,
        N: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.insert_vertex(VertexId(v))?;
        }
        for (a, b) in edges {
            g.insert_edge(VertexId(a), VertexId(b))?;
        }
        for (a, b) in non_voting {
            g.insert_non_voting_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    /// Convenience: vertices `0..n` and the given voting edges.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        Self::from_parts(0..n, edges.iter().copied(), std::iter::empty())
    }

    pub fn insert_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.nodes.contains_key(&v) {
            return Err(Error::DuplicateVertex(v));
        }
        self.insert_node(v, VertexRole::Original);
        Ok(())
    }

    fn insert_node(&mut self, v: VertexId, role: VertexRole) {
        self.nodes.insert(
            v,
            Node {
                role,
                nbrs: Vec::new(),
            },
        );
        self.next_id = self.next_id.max(v.0 + 1);
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.nodes.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Adds a voting edge. Idempotent for an existing voting edge.
    pub fn insert_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let key = ordered(a, b);
        if self.non_voting.contains(&key) {
            return Err(Error::EdgeInBothSets(key.0, key.1));
        }
        self.link(a, b);
        Ok(())
    }

    /// Adds a non-voting edge in place. Errors if the pair is a voting edge.
    pub fn insert_non_voting_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if self.has_voting_edge(a, b) {
            return Err(Error::EdgeInBothSets(a.min(b), a.max(b)));
        }
        self.non_voting.insert(ordered(a, b));
        Ok(())
    }

    fn link(&mut self, a: VertexId, b: VertexId) {
        for (x, y) in [(a, b), (b, a)] {
            let nbrs = &mut self.nodes.get_mut(&x).expect("checked").nbrs;
            if let Err(pos) = nbrs.binary_search(&y) {
                nbrs.insert(pos, y);
            }
        }
    }

    fn unlink(&mut self, a: VertexId, b: VertexId) {
        for (x, y) in [(a, b), (b, a)] {
            let nbrs = &mut self.nodes.get_mut(&x).expect("checked").nbrs;
            if let Ok(pos) = nbrs.binary_search(&y) {
                nbrs.remove(pos);
            }
        }
    }

    fn fresh(&mut self, role: VertexRole) -> VertexId {
        let v = VertexId(self.next_id);
        self.insert_node(v, role);
        v
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn voting_edge_count(&self) -> usize {
        self.nodes.values().map(|n| n.nbrs.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn vertices_with_roles(&self) -> impl Iterator<Item = (VertexId, VertexRole)> + '_ {
        self.nodes.iter().map(|(&v, n)| (v, n.role))
    }

    pub fn role(&self, v: VertexId) -> Result<VertexRole> {
        self.nodes
            .get(&v)
            .map(|n| n.role)
            .ok_or(Error::UnknownVertex(v))
    }

    /// Voting neighbors of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.nodes
            .get(&v)
            .map(|n| n.nbrs.as_slice())
            .ok_or(Error::UnknownVertex(v))
    }

    pub(crate) fn nbrs(&self, v: VertexId) -> &[VertexId] {
        &self.nodes[&v].nbrs
    }

    /// Number of voting edges at `v`; non-voting edges are not counted.
    pub fn voting_degree(&self, v: VertexId) -> Result<usize> {
        self.neighbors(v).map(<[_]>::len)
    }

    pub(crate) fn deg(&self, v: VertexId) -> usize {
        self.nodes[&v].nbrs.len()
    }

    pub fn has_voting_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.nodes
            .get(&a)
            .is_some_and(|n| n.nbrs.binary_search(&b).is_ok())
    }

    pub fn has_non_voting_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.non_voting.contains(&ordered(a, b))
    }

    /// Voting edges as ascending pairs, in lexicographic order.
    pub fn voting_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.nodes
            .iter()
            .flat_map(|(&a, n)| n.nbrs.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn non_voting_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.non_voting.iter().copied()
    }

    /// Same-color constraints between endpoints of a voting edge.
    pub fn extra_constraints(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.extra.iter().copied()
    }

    pub fn min_voting_degree(&self) -> Option<usize> {
        self.nodes.values().map(|n| n.nbrs.len()).min()
    }

    pub fn max_voting_degree(&self) -> Option<usize> {
        self.nodes.values().map(|n| n.nbrs.len()).max()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.min_voting_degree() == Some(0)
    }

    /// Returns a copy with the voting edge `uw` replaced by a path `u x w`
    /// through a fresh `Subdivision` vertex `x`.
    pub fn subdivide_edge(&self, u: VertexId, w: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        g.subdivide_in_place(u, w)?;
        Ok(g)
    }

    pub(crate) fn subdivide_in_place(&mut self, u: VertexId, w: VertexId) -> Result<VertexId> {
        self.check(u)?;
        self.check(w)?;
        if !self.has_voting_edge(u, w) {
            return Err(Error::NotAVotingEdge(u, w));
        }
        self.unlink(u, w);
        self.extra.remove(&ordered(u, w));
        let x = self.fresh(VertexRole::Subdivision);
        self.link(u, x);
        self.link(x, w);
        Ok(x)
    }

    /// Returns a copy with a fresh `Leaf` vertex attached to `v`.
    pub fn add_leaf(&self, v: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        g.add_leaf_in_place(v)?;
        Ok(g)
    }

    pub(crate) fn add_leaf_in_place(&mut self, v: VertexId) -> Result<VertexId> {
        self.check(v)?;
        let x = self.fresh(VertexRole::Leaf);
        self.link(v, x);
        Ok(x)
    }

    /// Returns a copy where `t1` and `t2` are forced to share a color without
    /// a vote. If the pair is already a voting edge the voting edge is kept
    /// and the constraint goes to [`Graph::extra_constraints`].
    pub fn add_non_voting_edge(&self, t1: VertexId, t2: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        g.add_non_voting_in_place(t1, t2)?;
        Ok(g)
    }

    pub(crate) fn add_non_voting_in_place(&mut self, t1: VertexId, t2: VertexId) -> Result<()> {
        self.check(t1)?;
        self.check(t2)?;
        if t1 == t2 {
            return Err(Error::SelfLoop(t1));
        }
        if self.has_voting_edge(t1, t2) {
            self.extra.insert(ordered(t1, t2));
        } else {
            self.non_voting.insert(ordered(t1, t2));
        }
        Ok(())
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        let node = self.nodes.remove(&v).expect("vertex present");
        for u in node.nbrs {
            let nbrs = &mut self.nodes.get_mut(&u).expect("adjacent").nbrs;
            if let Ok(pos) = nbrs.binary_search(&v) {
                nbrs.remove(pos);
            }
        }
        self.non_voting.retain(|&(a, b)| a != v && b != v);
        self.extra.retain(|&(a, b)| a != v && b != v);
    }

    pub(crate) fn replace_constraints(
        &mut self,
        non_voting: BTreeSet<(VertexId, VertexId)>,
        extra: BTreeSet<(VertexId, VertexId)>,
    ) {
        self.non_voting = non_voting;
        self.extra = extra;
    }

    /// Disjoint union; the vertices of `other` are shifted past this graph's
    /// id counter.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.next_id;
        let mut g = self.clone();
        let s = |v: VertexId| VertexId(v.0 + shift);
        for (&v, n) in &other.nodes {
            g.insert_node(s(v), n.role);
        }
        for (a, b) in other.voting_edges() {
            g.link(s(a), s(b));
        }
        for &(a, b) in &other.non_voting {
            g.non_voting.insert((s(a), s(b)));
        }
        for &(a, b) in &other.extra {
            g.extra.insert((s(a), s(b)));
        }
        g
    }

    /// Forced classes: union-find over voting edges incident to a vertex of
    /// voting degree 1 or 2, plus every non-voting edge and extra constraint.
    /// Classes are sorted internally and listed by smallest member.
    pub fn forced_classes(&self) -> Vec<Vec<VertexId>> {
        self.forcing().into_classes()
    }

    pub fn forcing(&self) -> Forcing {
        Forcing::build(self, true)
    }

    /// Forcing from voting structure alone (no non-voting edges or extra
    /// constraints).
    pub fn voting_forcing(&self) -> Forcing {
        Forcing::build(self, false)
    }

    /// True iff every vertex has strictly more voting neighbors inside its
    /// forced class than outside it.
    pub fn is_forced_dense(&self) -> bool {
        let f = self.forcing();
        self.vertices().all(|v| {
            let (co, free) = f.split(self, v);
            co > free
        })
    }

    pub fn is_forced_dense_at(&self, v: VertexId) -> Result<bool> {
        self.check(v)?;
        let (co, free) = self.forcing().split(self, v);
        Ok(co > free)
    }

    /// Connected components under voting edges, each sorted, listed by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in self.nbrs(v) {
                    if seen.insert(u) {
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

/// Union-find with path halving over dense indices.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so class ids follow vertex order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Snapshot of the forced-class partition of one graph.
#[derive(Clone, Debug)]
pub struct Forcing {
    ids: Vec<VertexId>,
    root: Vec<usize>,
}

impl Forcing {
    fn build(g: &Graph, with_constraints: bool) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| ids.binary_search(&v).expect("vertex present");
        let mut dsu = Dsu::new(ids.len());
        for (i, &v) in ids.iter().enumerate() {
            let nbrs = g.nbrs(v);
            if nbrs.len() <= 2 {
                for &u in nbrs {
                    dsu.union(i, idx(u));
                }
            }
        }
        if with_constraints {
            for &(a, b) in g.non_voting.iter().chain(g.extra.iter()) {
                dsu.union(idx(a), idx(b));
            }
        }
        let root = (0..ids.len()).map(|i| dsu.find(i)).collect();
        Forcing { ids, root }
    }

    fn index(&self, v: VertexId) -> usize {
        self.ids.binary_search(&v).expect("vertex present")
    }

    /// Representative index of `v`'s class.
    pub fn class_of(&self, v: VertexId) -> usize {
        self.root[self.index(v)]
    }

    pub fn same(&self, a: VertexId, b: VertexId) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    pub fn class_count(&self) -> usize {
        self.root
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i == r)
            .count()
    }

    /// `(co, free)`: voting neighbors of `v` inside and outside its class.
    pub fn split(&self, g: &Graph, v: VertexId) -> (usize, usize) {
        let c = self.class_of(v);
        let nbrs = g.nbrs(v);
        let co = nbrs.iter().filter(|&&u| self.class_of(u) == c).count();
        (co, nbrs.len() - co)
    }

    pub fn into_classes(self) -> Vec<Vec<VertexId>> {
        let mut by_root: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, &r) in self.root.iter().enumerate() {
            by_root.entry(r).or_default().push(self.ids[i]);
        }
        by_root.into_values().collect()
    }
}
