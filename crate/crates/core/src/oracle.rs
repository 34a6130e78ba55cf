//! Exhaustive reference implementations.
//!
//! Everything here enumerates the full subset lattice, so it refuses inputs
//! past a small capacity bound. These routines never call into the
//! decomposition tree or the duality module; tests compare the two.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId, VertexSet};
use crate::mining::{Relation, Threshold};

pub const DEFAULT_UNIVERSE_BOUND: usize = 20;
pub const DEFAULT_ITEM_BOUND: usize = 16;

/// Vertices of a universe mapped onto bit positions.
struct BitIndex {
    vertices: Vec<VertexId>,
}

impl BitIndex {
    fn new(universe: &VertexSet, bound: usize) -> Result<Self> {
        if universe.len() > bound {
            return Err(Error::Capacity {
                what: "oracle universe size",
                actual: universe.len() as u128,
                limit: bound as u128,
            });
        }
        Ok(BitIndex {
            vertices: universe.iter().collect(),
        })
    }

    fn mask(&self, s: &VertexSet) -> u32 {
        s.iter().fold(0, |m, v| {
            let bit = self.vertices.binary_search(&v).expect("vertex in universe");
            m | (1 << bit)
        })
    }

    fn set(&self, mask: u32) -> VertexSet {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &v)| v)
            .collect()
    }
}

/// All subsets of `{0..n}` as bitmasks, by size and then lexicographically
/// on the ascending index sequence.
fn subsets_size_then_lex(n: usize) -> impl Iterator<Item = u32> {
    (0..=n).flat_map(move |k| Combinations::new(n, k))
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u32, |m, &i| m | (1 << i));
        let k = self.idx.len();
        // advance to the next combination in lex order
        let mut pos = k;
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.idx[pos] < self.n - k + pos {
                self.idx[pos] += 1;
                for j in pos + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

fn minimal_hitting_masks(edges: &[u32], n: usize) -> Vec<u32> {
    let hits = |x: u32| edges.iter().all(|&e| e & x != 0);
    subsets_size_then_lex(n)
        .filter(|&x| hits(x) && (0..n).all(|b| x & (1 << b) == 0 || !hits(x & !(1 << b))))
        .collect()
}

/// All minimal transversals of `h`, over `h`'s universe.
pub fn brute_force_transversals(h: &Hypergraph) -> Result<Hypergraph> {
    brute_force_transversals_bounded(h, DEFAULT_UNIVERSE_BOUND)
}

pub fn brute_force_transversals_bounded(h: &Hypergraph, bound: usize) -> Result<Hypergraph> {
    let index = BitIndex::new(h.universe(), bound)?;
    let edges: Vec<u32> = h.edges().iter().map(|e| index.mask(e)).collect();
    let found = minimal_hitting_masks(&edges, index.vertices.len());
    Hypergraph::new(h.universe().clone(), found.into_iter().map(|m| index.set(m)))
}

/// Whether `h = tr(g)`.
pub fn brute_force_dual(g: &Hypergraph, h: &Hypergraph) -> Result<bool> {
    if g.universe() != h.universe() {
        return Err(Error::Domain("hypergraphs must share a universe".into()));
    }
    if !g.is_simple() || !h.is_simple() {
        return Err(Error::Domain("duality is only defined for simple hypergraphs".into()));
    }
    Ok(brute_force_transversals(g)?.edges() == h.edges())
}

fn tuple_masks(m: &Relation<bool>) -> Vec<u32> {
    m.tuples()
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect()
}

fn item_bound(n: usize) -> Result<()> {
    if n > DEFAULT_ITEM_BOUND {
        return Err(Error::Capacity {
            what: "oracle item count",
            actual: n as u128,
            limit: DEFAULT_ITEM_BOUND as u128,
        });
    }
    Ok(())
}

/// `(IS+, IS-)`: maximal frequent and minimal infrequent itemsets, by full
/// frequency tabulation. Items are vertices `1..=|items|`.
pub fn brute_force_itemsets(m: &Relation<bool>, z: Threshold) -> Result<(Hypergraph, Hypergraph)> {
    let n = m.items().len();
    item_bound(n)?;
    if z.get() == 0 || z.get() > m.tuples().len() {
        return Err(Error::Domain(format!(
            "threshold {} outside 1..={}",
            z.get(),
            m.tuples().len()
        )));
    }
    let rows = tuple_masks(m);
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let freq: Vec<usize> = (0..=full)
        .map(|u| rows.iter().filter(|&&r| r & u == u).count())
        .collect();
    let frequent = |u: u32| freq[u as usize] > z.get();

    let index = BitIndex {
        vertices: VertexSet::range(n as u32).iter().collect(),
    };
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for u in 0..=full {
        if frequent(u) {
            if (0..n).all(|b| u & (1 << b) != 0 || !frequent(u | (1 << b))) {
                plus.push(index.set(u));
            }
        } else if (0..n).all(|b| u & (1 << b) == 0 || frequent(u & !(1 << b))) {
            minus.push(index.set(u));
        }
    }
    let universe = VertexSet::range(n as u32);
    Ok((
        Hypergraph::new(universe.clone(), plus)?,
        Hypergraph::new(universe, minus)?,
    ))
}

/// Minimal attribute sets on which no two distinct tuples agree.
pub fn brute_force_keys<T: PartialEq>(r: &Relation<T>) -> Result<Hypergraph> {
    let n = r.items().len();
    item_bound(n)?;
    let tuples = r.tuples();
    let mut diffs = Vec::new();
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            let d = (0..n)
                .filter(|&a| tuples[i][a] != tuples[j][a])
                .fold(0u32, |acc, a| acc | (1 << a));
            diffs.push(d);
        }
    }
    let index = BitIndex {
        vertices: VertexSet::range(n as u32).iter().collect(),
    };
    let keys = minimal_hitting_masks(&diffs, n);
    Hypergraph::new(VertexSet::range(n as u32), keys.into_iter().map(|m| index.set(m)))
}
