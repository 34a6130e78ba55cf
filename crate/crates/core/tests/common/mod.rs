#![allow(dead_code)]

use hyperdual::{Hypergraph, Relation, VertexId, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn vs(ids: &[u32]) -> VertexSet {
    VertexSet::from_ids(ids.iter().copied()).unwrap()
}

pub fn hg(universe: &[u32], edges: &[&[u32]]) -> Hypergraph {
    Hypergraph::new(vs(universe), edges.iter().map(|e| vs(e))).unwrap()
}

/// A simple hypergraph over `{1..=n}` built from up to `max_edges` random
/// nonempty edges, minimized.
pub fn random_simple<R: Rng>(rng: &mut R, n: u32, max_edges: usize) -> Hypergraph {
    let m = rng.gen_range(1..=max_edges);
    let p = rng.gen_range(0.2..0.7);
    let edges: Vec<VertexSet> = (0..m)
        .map(|_| {
            let mut e: Vec<VertexId> = (1..=n)
                .filter(|_| rng.gen_bool(p))
                .map(|i| VertexId::new(i).unwrap())
                .collect();
            if e.is_empty() {
                e.push(VertexId::new(rng.gen_range(1..=n)).unwrap());
            }
            e.into_iter().collect()
        })
        .collect();
    Hypergraph::new(VertexSet::range(n), edges).unwrap().minimize()
}

/// `h` with the edge at position `k` removed.
pub fn without_edge(h: &Hypergraph, k: usize) -> Hypergraph {
    Hypergraph::new(
        h.universe().clone(),
        h.edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, e)| e.clone()),
    )
    .unwrap()
}

pub fn random_subfamily<R: Rng>(rng: &mut R, h: &Hypergraph, max: usize) -> Hypergraph {
    let mut edges = h.edges().to_vec();
    edges.shuffle(rng);
    let k = rng.gen_range(0..=max.min(edges.len()));
    Hypergraph::new(h.universe().clone(), edges.into_iter().take(k)).unwrap()
}

pub fn random_boolean_relation<R: Rng>(rng: &mut R, items: usize, tuples: usize) -> Relation<bool> {
    let names = (0..items).map(|i| format!("i{i}")).collect();
    let p = rng.gen_range(0.3..0.8);
    let rows = (0..tuples)
        .map(|_| (0..items).map(|_| rng.gen_bool(p)).collect())
        .collect();
    Relation::new(names, rows).unwrap()
}

pub fn random_table<R: Rng>(rng: &mut R, attrs: usize, tuples: usize) -> Relation<u8> {
    let names = (0..attrs).map(|i| format!("A{i}")).collect();
    let domain = rng.gen_range(2..=3u8);
    let rows = (0..tuples)
        .map(|_| (0..attrs).map(|_| rng.gen_range(0..domain)).collect())
        .collect();
    Relation::new(names, rows).unwrap()
}
