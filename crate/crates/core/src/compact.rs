//! Engine-internal representation of a term.
//!
//! Every graph the engine produces from an input `G` is `G` plus subdivided
//! edges, leaves and equality constraints. Up to LO count that is fully
//! described by the voting adjacency of `G`, which never changes, together
//! with a partition of `G`'s vertices into forced classes and a leaf count
//! per vertex. A subdivided edge `uw` is the plain edge `uw` with `u` and
//! `w` in one class: either way `w` votes with `u`'s color. So a term here
//! is a [`State`] over a shared [`Skeleton`], and normalization reduces to
//! trimming surplus leaves.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::engine::{absorbed_weights, connected_family_weights, LeafRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracles::RestrictedGrowth;

pub(crate) const MAX_VERTICES: usize = 128;

type Mask = u128;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// Voting adjacency of the input graph, vertices numbered by ascending id.
#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    nbr: Vec<Mask>,
}

/// Forced classes (each vertex labeled by the smallest index in its class)
/// and leaf counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct State {
    class: Vec<u8>,
    leaves: Vec<u16>,
}

impl Skeleton {
    pub(crate) fn from_graph(g: &Graph) -> Result<(Skeleton, State)> {
        let ids: Vec<VertexId> = g.vertices().collect();
        if ids.len() > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "the engine handles at most {MAX_VERTICES} vertices, got {}",
                ids.len()
            )));
        }
        let index = |v: VertexId| ids.binary_search(&v).expect("known vertex");
        let nbr = ids
            .iter()
            .map(|&v| g.nbrs(v).iter().fold(0, |m, &u| m | 1 << index(u)))
            .collect();
        let forcing = g.forcing();
        let mut smallest = vec![u8::MAX; ids.len()];
        for (i, &v) in ids.iter().enumerate() {
            let c = forcing.class_of(v);
            smallest[c] = smallest[c].min(i as u8);
        }
        let class = ids.iter().map(|&v| smallest[forcing.class_of(v)]).collect();
        let mut state = State {
            class,
            leaves: vec![0; ids.len()],
        };
        let sk = Skeleton { nbr };
        sk.trim_leaves(&mut state);
        Ok((sk, state))
    }

    fn len(&self) -> usize {
        self.nbr.len()
    }

    fn class_masks(&self, s: &State) -> Vec<Mask> {
        let mut m = vec![0; self.len()];
        for (v, &c) in s.class.iter().enumerate() {
            m[c as usize] |= 1 << v;
        }
        m
    }

    /// `(co, free)` at `v`: neighbors (leaves included) inside and outside
    /// `v`'s class.
    fn split(&self, s: &State, masks: &[Mask], v: usize) -> (usize, usize) {
        let inside = (self.nbr[v] & masks[s.class[v] as usize]).count_ones() as usize;
        let all = self.nbr[v].count_ones() as usize;
        (inside + s.leaves[v] as usize, all - inside)
    }

    fn degree(&self, s: &State, v: usize) -> usize {
        self.nbr[v].count_ones() as usize + s.leaves[v] as usize
    }

    /// Drops leaves a forced-dense vertex can spare, as many as possible.
    fn trim_leaves(&self, s: &mut State) {
        let masks = self.class_masks(s);
        for v in 0..self.len() {
            if s.leaves[v] == 0 {
                continue;
            }
            let (co, free) = self.split(s, &masks, v);
            let inside = co - s.leaves[v] as usize;
            if co > free {
                s.leaves[v] = (free + 1).saturating_sub(inside) as u16;
            }
        }
    }

    pub(crate) fn next_vertex(&self, s: &State) -> Option<usize> {
        let masks = self.class_masks(s);
        (0..self.len())
            .filter(|&v| {
                let (co, free) = self.split(s, &masks, v);
                co <= free
            })
            .min_by_key(|&v| (self.degree(s, v), v))
    }

    pub(crate) fn class_count(&self, s: &State) -> usize {
        s.class
            .iter()
            .enumerate()
            .filter(|&(v, &c)| c as usize == v)
            .count()
    }

    pub(crate) fn has_isolated_vertex(&self, s: &State) -> bool {
        (0..self.len()).any(|v| self.degree(s, v) == 0)
    }

    /// Expansion at `v` with like children merged by the caller.
    pub(crate) fn expand(
        &self,
        s: &State,
        v: usize,
        rule: LeafRule,
    ) -> Result<Vec<(State, BigInt)>> {
        let masks = self.class_masks(s);
        let (co, _) = self.split(s, &masks, v);
        let free: Vec<usize> = bits(self.nbr[v] & !masks[s.class[v] as usize]).collect();
        if free.len() > 30 {
            return Err(Error::Precondition(format!(
                "vertex {v} has {} free neighbors; subset enumeration is limited to 30",
                free.len()
            )));
        }
        let pick = |m: u64| -> Mask {
            free.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .fold(0, |acc, (_, &w)| acc | 1 << w)
        };
        let mut out = Vec::new();
        let full = 1u64 << free.len();
        if co < 2 {
            // inclusion-exclusion over subsets of all neighbors, grouped by
            // their free part; co-class neighbors change nothing
            let coeff_for = |t: usize| -> BigInt {
                let mut sum = 0i64;
                let mut binom = 1i64;
                for r in 0..=co {
                    let j = t + r;
                    if j >= 2 {
                        let sgn = if j.is_multiple_of(2) { 1 } else { -1 };
                        sum += sgn * binom * (j as i64 - 1);
                    }
                    binom = binom * (co - r) as i64 / (r as i64 + 1);
                }
                BigInt::from(sum)
            };
            for m in 0..full {
                let c = coeff_for(m.count_ones() as usize);
                if !c.is_zero() {
                    out.push((self.child(s, v, pick(m), &[], 0), c));
                }
            }
            return Ok(out);
        }
        let n = self.degree(s, v);
        let b = co;
        let leaves = rule.leaves(n, b);
        let weights = connected_family_weights(b, free.len());
        let absorbed = absorbed_weights(&weights);
        for u in 0..full {
            let rest: Vec<usize> = (0..free.len()).filter(|i| u >> i & 1 == 0).collect();
            let lead = &absorbed[u.count_ones() as usize];
            if lead.is_zero() {
                continue;
            }
            for rgs in RestrictedGrowth::new(rest.len()) {
                let nblocks = rgs.iter().max().map_or(0, |m| m + 1);
                let mut blocks = vec![0 as Mask; nblocks];
                for (i, &blk) in rgs.iter().enumerate() {
                    blocks[blk] |= 1 << free[rest[i]];
                }
                let mut coeff = lead.clone();
                for blk in &blocks {
                    coeff *= &weights[blk.count_ones() as usize];
                    if coeff.is_zero() {
                        break;
                    }
                }
                if coeff.is_zero() {
                    continue;
                }
                out.push((self.child(s, v, pick(u), &blocks, leaves), coeff));
            }
        }
        for m in 1..full {
            let sgn = if m.count_ones() % 2 == 1 { 1 } else { -1 };
            out.push((self.child(s, v, pick(m), &[], 0), BigInt::from(sgn)));
        }
        Ok(out)
    }

    /// `s` with `joined` merged into `v`'s class, each of `groups` merged
    /// into one class, and `leaves` more leaves at `v`; then trimmed.
    fn child(&self, s: &State, v: usize, joined: Mask, groups: &[Mask], leaves: usize) -> State {
        let mut t = s.clone();
        merge(&mut t, joined | 1 << v);
        for &g in groups {
            if g.count_ones() > 1 {
                merge(&mut t, g);
            }
        }
        t.leaves[v] += leaves as u16;
        self.trim_leaves(&mut t);
        t
    }
}

fn merge(s: &mut State, members: Mask) {
    let mut labels: Mask = 0;
    for v in bits(members) {
        labels |= 1 << s.class[v];
    }
    if labels.count_ones() < 2 {
        return;
    }
    let target = labels.trailing_zeros() as u8;
    for c in s.class.iter_mut() {
        if labels >> *c & 1 == 1 {
            *c = target;
        }
    }
}
