//! Canonical hypergraphs over positive integer vertices.
//!
//! A [`Hypergraph`] carries an explicit universe next to its edge family, so a
//! restriction to some vertex subset keeps track of vertices that no edge
//! touches. Edges are kept deduplicated and in lexicographic order, which is
//! what every tie-break in the decomposition tree relies on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex identifier. Always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(id: u32) -> Result<Self> {
        if id == 0 {
            return Err(Error::Domain("vertex ids start at 1".into()));
        }
        Ok(VertexId(id))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for VertexId {
    type Error = Error;

    fn try_from(id: u32) -> Result<Self> {
        VertexId::new(id)
    }
}

impl From<VertexId> for u32 {
    fn from(v: VertexId) -> u32 {
        v.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finite set of vertices stored as a strictly ascending sequence.
///
/// The derived ordering compares the ascending sequences element-wise, with a
/// proper prefix sorting first. That is the lexicographic edge order used
/// throughout the crate.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<VertexId>);

/// A hyperedge is just a vertex set; the empty edge is legal.
pub type Edge = VertexSet;

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from raw ids, sorting and collapsing duplicates.
    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Result<Self> {
        ids.into_iter().map(VertexId::new).collect()
    }

    /// `{1, ..., n}`.
    pub fn range(n: u32) -> Self {
        VertexSet((1..=n).map(VertexId).collect())
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn ids(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.0).collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for v in &self.0 {
            for w in rest.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                    *a
                }
                (Some(a), Some(b)) if a < b => {
                    i += 1;
                    *a
                }
                (Some(_), Some(b)) => {
                    j += 1;
                    *b
                }
                (Some(a), None) => {
                    i += 1;
                    *a
                }
                (None, Some(b)) => {
                    j += 1;
                    *b
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        VertexSet(out)
    }

    pub fn without(&self, v: VertexId) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: VertexId) -> VertexSet {
        let mut out = self.clone();
        if let Err(pos) = out.0.binary_search(&v) {
            out.0.insert(pos, v);
        }
        out
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut v: Vec<VertexId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A finite family of vertex sets over an explicit universe.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    universe: VertexSet,
    edges: Vec<Edge>,
}

impl Hypergraph {
    /// Canonicalizes `edges` (dedup, lex sort) and checks they lie in `universe`.
    pub fn new<I: IntoIterator<Item = Edge>>(universe: VertexSet, edges: I) -> Result<Self> {
        let edges = canonical(edges);
        if let Some(e) = edges.iter().find(|e| !e.is_subset(&universe)) {
            return Err(Error::Domain(format!(
                "edge {e} is not contained in universe {universe}"
            )));
        }
        Ok(Hypergraph { universe, edges })
    }

    /// Universe is the union of the edges.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let edges = canonical(edges);
        let universe = edges.iter().flat_map(|e| e.iter()).collect();
        Hypergraph { universe, edges }
    }

    /// Convenience constructor from raw id lists; the universe is the edge union.
    pub fn from_id_lists<E, I>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = u32>,
    {
        let edges = edges.into_iter().map(VertexSet::from_ids).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_edges(edges))
    }

    /// The same family over a different universe.
    pub fn with_universe(&self, universe: VertexSet) -> Result<Self> {
        Hypergraph::new(universe, self.edges.iter().cloned())
    }

    pub fn universe(&self) -> &VertexSet {
        &self.universe
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: &VertexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.first().is_some_and(|e| e.is_empty())
    }

    /// Transversal test without the universe check.
    pub fn is_hit_by(&self, x: &VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(x))
    }

    fn check_in_universe(&self, x: &VertexSet) -> Result<()> {
        if x.is_subset(&self.universe) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "vertex set {x} is not contained in universe {}",
                self.universe
            )))
        }
    }

    /// Whether `x` meets every edge.
    pub fn is_transversal(&self, x: &VertexSet) -> Result<bool> {
        self.check_in_universe(x)?;
        Ok(self.is_hit_by(x))
    }

    /// Whether `x` is a transversal no proper subset of which is one.
    pub fn is_minimal_transversal(&self, x: &VertexSet) -> Result<bool> {
        self.check_in_universe(x)?;
        Ok(self.is_minimal_hit_by(x))
    }

    pub(crate) fn is_minimal_hit_by(&self, x: &VertexSet) -> bool {
        self.is_hit_by(x) && x.iter().all(|v| !self.is_hit_by(&x.without(v)))
    }

    /// True iff no edge is contained in another distinct edge.
    pub fn is_simple(&self) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(i, e)| self.edges.iter().enumerate().all(|(j, f)| i == j || !e.is_subset(f)))
    }

    /// The inclusion-minimal edges.
    pub fn minimize(&self) -> Hypergraph {
        // Shorter edges first: a superset can only be knocked out by something already kept.
        let mut by_size: Vec<&Edge> = self.edges.iter().collect();
        by_size.sort_by_key(|e| e.len());
        let mut kept: Vec<Edge> = Vec::new();
        for e in by_size {
            if !kept.iter().any(|k| k.is_subset(e)) {
                kept.push(e.clone());
            }
        }
        kept.sort();
        Hypergraph {
            universe: self.universe.clone(),
            edges: kept,
        }
    }

    /// `{s - A | A in self}` over universe `s`.
    pub fn complement_family(&self, s: &VertexSet) -> Result<Hypergraph> {
        if let Some(e) = self.edges.iter().find(|e| !e.is_subset(s)) {
            return Err(Error::Domain(format!("edge {e} is not contained in {s}")));
        }
        Ok(Hypergraph {
            universe: s.clone(),
            edges: canonical(self.edges.iter().map(|e| s.difference(e))),
        })
    }

    /// Parses the line-oriented text format. See [`Hypergraph::serialize`].
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut universe: Option<VertexSet> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("universe:") {
                if universe.is_some() {
                    return Err(Error::parse(line_no, "duplicate universe declaration"));
                }
                let ids = parse_ids(rest, line_no)?;
                if ids.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::parse(
                        line_no,
                        "universe must be listed in strictly ascending order",
                    ));
                }
                universe = Some(ids.into_iter().collect());
                continue;
            }
            let edge: VertexSet = if line == "-" {
                VertexSet::new()
            } else {
                parse_ids(line, line_no)?.into_iter().collect()
            };
            edges.push((line_no, edge));
        }
        match universe {
            Some(u) => {
                if let Some((line_no, e)) = edges.iter().find(|(_, e)| !e.is_subset(&u)) {
                    return Err(Error::parse(
                        *line_no,
                        format!("edge {e} is not contained in the declared universe"),
                    ));
                }
                Hypergraph::new(u, edges.into_iter().map(|(_, e)| e))
            }
            None => Ok(Hypergraph::from_edges(edges.into_iter().map(|(_, e)| e))),
        }
    }

    /// Text form: a `universe:` line, then one edge per line (`-` for the empty edge).
    pub fn serialize(&self) -> String {
        let mut out = String::from("universe:");
        for v in self.universe.iter() {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
        for e in &self.edges {
            out.push_str(&edge_line(e));
            out.push('\n');
        }
        out
    }
}

/// One edge in the text format, without the newline.
pub fn edge_line(e: &VertexSet) -> String {
    if e.is_empty() {
        "-".to_string()
    } else {
        e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn parse_ids(s: &str, line_no: usize) -> Result<Vec<VertexId>> {
    s.split_whitespace()
        .map(|tok| {
            let id: u32 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("malformed vertex token {tok:?}")))?;
            VertexId::new(id).map_err(|_| Error::parse(line_no, "vertex ids must be positive"))
        })
        .collect()
}

fn canonical<I: IntoIterator<Item = Edge>>(edges: I) -> Vec<Edge> {
    let mut v: Vec<Edge> = edges.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hypergraph::parse(s)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// `(G^s, H_s)`: intersections of `g` with `s` (set semantics, supersets kept)
/// and the edges of `h` lying inside `s`. Both come back over universe `s`.
pub fn restrict(g: &Hypergraph, h: &Hypergraph, s: &VertexSet) -> Result<(Hypergraph, Hypergraph)> {
    if !s.is_subset(g.universe()) || !s.is_subset(h.universe()) {
        return Err(Error::Domain(format!("{s} is not contained in the universe")));
    }
    Ok(restrict_unchecked(g, h, s))
}

pub(crate) fn restrict_unchecked(g: &Hypergraph, h: &Hypergraph, s: &VertexSet) -> (Hypergraph, Hypergraph) {
    let gs = Hypergraph {
        universe: s.clone(),
        edges: canonical(g.edges.iter().map(|e| e.intersection(s))),
    };
    let hs = Hypergraph {
        universe: s.clone(),
        edges: h.edges.iter().filter(|e| e.is_subset(s)).cloned().collect(),
    };
    (gs, hs)
}

/// A pair `(G, H)` over one shared vertex universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityInstance {
    g: Hypergraph,
    h: Hypergraph,
}

impl DualityInstance {
    pub fn new(g: Hypergraph, h: Hypergraph) -> Result<Self> {
        if g.universe() != h.universe() {
            return Err(Error::Domain(format!(
                "universes differ: {} vs {}",
                g.universe(),
                h.universe()
            )));
        }
        Ok(DualityInstance { g, h })
    }

    /// Lifts both hypergraphs to the union of their universes.
    pub fn over_joint_universe(g: &Hypergraph, h: &Hypergraph) -> Self {
        let u = g.universe().union(h.universe());
        DualityInstance {
            g: g.with_universe(u.clone()).expect("superset universe"),
            h: h.with_universe(u).expect("superset universe"),
        }
    }

    pub fn g(&self) -> &Hypergraph {
        &self.g
    }

    pub fn h(&self) -> &Hypergraph {
        &self.h
    }

    pub fn universe(&self) -> &VertexSet {
        self.g.universe()
    }

    pub fn swapped(&self) -> DualityInstance {
        DualityInstance {
            g: self.h.clone(),
            h: self.g.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::from_id_lists(edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    fn vs(ids: &[u32]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied()).unwrap()
    }

    #[test]
    fn parse_examples() {
        let h = Hypergraph::parse("1 2\n2 3\n").unwrap();
        assert_eq!(h, hg(&[&[1, 2], &[2, 3]]));
        assert_eq!(h.universe(), &vs(&[1, 2, 3]));

        let h = Hypergraph::parse("universe: 1 2 3 4\n1 2\n").unwrap();
        assert_eq!(h.universe(), &vs(&[1, 2, 3, 4]));
        assert_eq!(h.edges(), &[vs(&[1, 2])]);

        match Hypergraph::parse("1 x\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected parse error on line 1, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Hypergraph::parse("1\n0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Hypergraph::parse("universe: 1 2\nuniverse: 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(Hypergraph::parse("universe: 2 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            Hypergraph::parse("universe: 1\n1 2\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parse_comments_and_empty_edge() {
        let h = Hypergraph::parse("# header\n-\n\n3 1 # trailing\n1 3\n").unwrap();
        assert_eq!(h.edges(), &[VertexSet::new(), vs(&[1, 3])]);
    }

    #[test]
    fn serialize_examples() {
        let h = hg(&[&[1, 2]]).with_universe(vs(&[1, 2, 3])).unwrap();
        assert_eq!(h.serialize(), "universe: 1 2 3\n1 2\n");
        assert_eq!(Hypergraph::default().serialize(), "universe:\n");
        let e = Hypergraph::from_edges([VertexSet::new()]);
        assert_eq!(Hypergraph::parse(&e.serialize()).unwrap(), e);
    }

    #[test]
    fn transversal_examples() {
        let h = hg(&[&[1, 2], &[2, 3]]);
        assert!(h.is_transversal(&vs(&[2])).unwrap());
        assert!(!hg(&[&[2, 3]])
            .with_universe(vs(&[1, 2, 3]))
            .unwrap()
            .is_transversal(&vs(&[1]))
            .unwrap());
        assert!(Hypergraph::default().is_transversal(&VertexSet::new()).unwrap());
        assert!(matches!(h.is_transversal(&vs(&[7])), Err(Error::Domain(_))));
        let with_empty = Hypergraph::from_edges([VertexSet::new(), vs(&[1])]);
        assert!(!with_empty.is_transversal(&vs(&[1])).unwrap());
    }

    #[test]
    fn minimal_transversal_examples() {
        let h = hg(&[&[1, 2], &[2, 3]]);
        assert!(h.is_minimal_transversal(&vs(&[2])).unwrap());
        assert!(!h.is_minimal_transversal(&vs(&[1, 2])).unwrap());
        assert!(h.is_minimal_transversal(&vs(&[1, 3])).unwrap());
        assert!(Hypergraph::default().is_minimal_transversal(&VertexSet::new()).unwrap());
    }

    #[test]
    fn minimize_and_simple() {
        assert_eq!(hg(&[&[1], &[1, 2]]).minimize().edges(), &[vs(&[1])]);
        assert_eq!(hg(&[&[1, 2], &[2, 3]]).minimize(), hg(&[&[1, 2], &[2, 3]]));
        let e = Hypergraph::from_edges([VertexSet::new(), vs(&[1])]);
        assert_eq!(e.minimize().edges(), &[VertexSet::new()]);

        assert!(hg(&[&[1], &[2]]).is_simple());
        assert!(!hg(&[&[1], &[1, 2]]).is_simple());
        assert!(Hypergraph::default().is_simple());
    }

    #[test]
    fn restrict_examples() {
        let u = vs(&[1, 2, 3]);
        let g = hg(&[&[1, 2], &[1, 3]]);
        let h = hg(&[&[1], &[2, 3]]);
        let (gs, hs) = restrict(&g, &h, &vs(&[1, 3])).unwrap();
        assert_eq!(gs.edges(), &[vs(&[1]), vs(&[1, 3])]);
        assert_eq!(hs.edges(), &[vs(&[1])]);
        assert_eq!(gs.universe(), &vs(&[1, 3]));

        let g = hg(&[&[1, 2]]);
        let (gs, hs) = restrict(&g, &g, &VertexSet::new()).unwrap();
        assert_eq!(gs.edges(), &[VertexSet::new()]);
        assert!(hs.is_empty());

        let g = hg(&[&[1], &[1, 2]]);
        let h = Hypergraph::default().with_universe(vs(&[1, 2])).unwrap();
        let (gs, hs) = restrict(&g, &h, &vs(&[1])).unwrap();
        assert_eq!(gs.edges(), &[vs(&[1])]);
        assert!(hs.is_empty());

        let g = hg(&[&[1, 2]]).with_universe(u.clone()).unwrap();
        assert!(matches!(restrict(&g, &g, &vs(&[4])), Err(Error::Domain(_))));
    }

    #[test]
    fn complement_examples() {
        let s = vs(&[1, 2, 3]);
        assert_eq!(hg(&[&[1]]).complement_family(&s).unwrap().edges(), &[vs(&[2, 3])]);
        assert!(Hypergraph::default()
            .complement_family(&vs(&[1, 2]))
            .unwrap()
            .is_empty());
        assert_eq!(
            hg(&[&[1, 2], &[2, 3]]).complement_family(&s).unwrap().edges(),
            &[vs(&[1]), vs(&[3])]
        );
        assert!(hg(&[&[4]]).complement_family(&s).is_err());
    }

    #[test]
    fn lexicographic_order_is_prefix_first() {
        let mut v = vec![vs(&[2]), vs(&[1, 3]), vs(&[1]), VertexSet::new(), vs(&[1, 2, 3])];
        v.sort();
        assert_eq!(
            v,
            vec![VertexSet::new(), vs(&[1]), vs(&[1, 2, 3]), vs(&[1, 3]), vs(&[2])]
        );
    }

    #[test]
    fn instance_requires_shared_universe() {
        assert!(DualityInstance::new(hg(&[&[1]]), hg(&[&[2]])).is_err());
        let i = DualityInstance::over_joint_universe(&hg(&[&[1]]), &hg(&[&[2]]));
        assert_eq!(i.universe(), &vs(&[1, 2]));
    }
}
