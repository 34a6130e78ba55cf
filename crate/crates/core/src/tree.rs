//! The logarithmic-depth decomposition tree for `H = tr(G)`.
//!
//! Nodes are addressed by [`PathDescriptor`]s. [`next`] computes the i-th
//! child of a node from the node's attributes alone, and [`pathnode`] folds
//! `next` along a descriptor starting at the root. On top of that sit two
//! ways of producing the whole tree:
//!
//! * [`DecomposeMode::Literal`] enumerates every descriptor in the bounded
//!   descriptor space and recomputes each node from scratch, listing vertices
//!   first and edges second.
//! * [`DecomposeMode::Dfs`] expands depth-first and only ever holds the
//!   attributes on the current root-to-node path.
//!
//! Tie-breaks are fixed: smallest vertex in marksmall case 4, lexicographically
//! first `G` and `H` in process steps 3 and 4, and children listed in the
//! order their defining formula enumerates them.

use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{restrict_unchecked, DualityInstance, Hypergraph, VertexSet};

/// Descriptor-space budget for literal decomposition.
pub const DEFAULT_LITERAL_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mark {
    Done,
    Fail,
    Nil,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::Done => "DONE",
            Mark::Fail => "FAIL",
            Mark::Nil => "NIL",
        })
    }
}

/// A sequence of 1-based child indices. The empty descriptor is the root.
///
/// Ordered by length first, then lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathDescriptor(Vec<usize>);

impl PathDescriptor {
    pub fn root() -> Self {
        PathDescriptor(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Domain("path indices are 1-based".into()));
        }
        Ok(PathDescriptor(indices))
    }

    /// Parses `"1,2,3"`; the empty string is the root.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::root());
        }
        let indices = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("malformed path index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> PathDescriptor {
        let mut v = self.0.clone();
        v.push(i);
        PathDescriptor(v)
    }

    pub fn parent(&self) -> Option<PathDescriptor> {
        if self.0.is_empty() {
            None
        } else {
            Some(PathDescriptor(self.0[..self.0.len() - 1].to_vec()))
        }
    }
}

impl Ord for PathDescriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PathDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PathDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// `floor(log2 n)`, and 0 for `n <= 1`.
pub fn depth_bound(h_len: usize) -> usize {
    if h_len <= 1 {
        0
    } else {
        h_len.ilog2() as usize
    }
}

/// The limits that define the descriptor space of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescriptorBounds {
    /// `floor(log2 |H|)`.
    pub max_len: usize,
    /// `|V| * |G|`.
    pub max_index: usize,
}

impl DescriptorBounds {
    pub fn of(instance: &DualityInstance) -> Self {
        DescriptorBounds {
            max_len: depth_bound(instance.h().len()),
            max_index: instance.universe().len() * instance.g().len(),
        }
    }

    pub fn admits(&self, pi: &PathDescriptor) -> bool {
        pi.len() <= self.max_len && pi.indices().iter().all(|&i| i >= 1 && i <= self.max_index)
    }

    /// `sum_{k=0}^{max_len} max_index^k`, saturating.
    pub fn count(&self) -> u128 {
        let m = self.max_index as u128;
        let mut total: u128 = 0;
        let mut layer: u128 = 1;
        for k in 0..=self.max_len {
            if k > 0 {
                layer = layer.saturating_mul(m);
            }
            total = total.saturating_add(layer);
        }
        total
    }

    /// Every descriptor, by length then lexicographically.
    pub fn descriptors(&self) -> impl Iterator<Item = PathDescriptor> + '_ {
        (0..=self.max_len).flat_map(move |len| Odometer::new(len, self.max_index))
    }
}

struct Odometer {
    digits: Vec<usize>,
    max: usize,
    done: bool,
}

impl Odometer {
    fn new(len: usize, max: usize) -> Self {
        Odometer {
            digits: vec![1; len],
            max,
            done: len > 0 && max == 0,
        }
    }
}

impl Iterator for Odometer {
    type Item = PathDescriptor;

    fn next(&mut self) -> Option<PathDescriptor> {
        if self.done {
            return None;
        }
        let out = PathDescriptor(self.digits.clone());
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.digits[pos] < self.max {
                self.digits[pos] += 1;
                break;
            }
            self.digits[pos] = 1;
        }
        Some(out)
    }
}

/// The five attributes attached to a tree node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeAttributes {
    pub label: PathDescriptor,
    /// The vertex subset this node is restricted to.
    pub s: VertexSet,
    /// `{E ∩ s | E ∈ G}`.
    pub g_s: Hypergraph,
    /// `{E ∈ H | E ⊆ s}`.
    pub h_s: Hypergraph,
    pub mark: Mark,
    /// Witness set; empty unless the node is FAIL.
    pub t: VertexSet,
}

impl NodeAttributes {
    fn unmarked(label: PathDescriptor, s: VertexSet, g_s: Hypergraph, h_s: Hypergraph) -> Self {
        NodeAttributes {
            label,
            s,
            g_s,
            h_s,
            mark: Mark::Nil,
            t: VertexSet::new(),
        }
    }

    fn marked(mut self, mark: Mark, t: VertexSet) -> Self {
        self.mark = mark;
        self.t = t;
        self
    }
}

/// Counters describing one traversal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    /// Most node attribute records held at the same time.
    pub peak_stored_nodes: usize,
    pub nodes_evaluated: usize,
    pub pathnode_calls: usize,
    pub wall_time_ms: u64,
}

impl RunStats {
    fn hold(&mut self, live: usize) {
        self.peak_stored_nodes = self.peak_stored_nodes.max(live);
    }
}

/// Vertices occurring in strictly more than half of the edges of `h_s`.
pub fn frequent_vertices(h_s: &Hypergraph) -> VertexSet {
    let total = h_s.len();
    h_s.universe()
        .iter()
        .filter(|&v| 2 * h_s.edges().iter().filter(|e| e.contains(v)).count() > total)
        .collect()
}

/// A transversal of `g` containing no edge of `h`.
fn is_new_transversal(x: &VertexSet, g: &Hypergraph, h: &Hypergraph) -> bool {
    g.is_hit_by(x) && !h.edges().iter().any(|e| e.is_subset(x))
}

/// Marks a node whose `h_s` has at most one edge; other nodes pass through.
pub fn marksmall(attr: NodeAttributes) -> Result<NodeAttributes> {
    if attr.mark != Mark::Nil {
        return Err(Error::Contract(format!(
            "marksmall on node {} already marked {}",
            attr.label, attr.mark
        )));
    }
    let empty_in_g = attr.g_s.has_empty_edge();
    match attr.h_s.edges() {
        [] if !empty_in_g => {
            let s = attr.s.clone();
            Ok(attr.marked(Mark::Fail, s))
        }
        [] => Ok(attr.marked(Mark::Done, VertexSet::new())),
        [h] => {
            let missing = h.iter().find(|&i| !attr.g_s.contains_edge(&VertexSet::singleton(i)));
            match missing {
                None => Ok(attr.marked(Mark::Done, VertexSet::new())),
                Some(i) => {
                    let t = attr.s.without(i);
                    Ok(attr.marked(Mark::Fail, t))
                }
            }
        }
        _ => Ok(attr),
    }
}

/// Result of running the process procedure on an unmarked node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessOutcome {
    /// The frequent-vertex set is itself a new transversal.
    Fail(VertexSet),
    Children(Vec<NodeAttributes>),
}

enum ChildSets {
    Fail(VertexSet),
    Sets(Vec<VertexSet>),
}

fn child_sets(attr: &NodeAttributes) -> Result<ChildSets> {
    if attr.mark != Mark::Nil || attr.h_s.len() < 2 {
        return Err(Error::Contract(format!(
            "process needs an unmarked node with at least two H-edges, got {} at {}",
            attr.mark, attr.label
        )));
    }
    let frequent = frequent_vertices(&attr.h_s);
    if is_new_transversal(&frequent, &attr.g_s, &attr.h_s) {
        return Ok(ChildSets::Fail(frequent));
    }

    let mut sets: Vec<VertexSet> = Vec::new();
    let mut push = |c: VertexSet| {
        if !sets.contains(&c) {
            sets.push(c);
        }
    };

    if let Some(g) = attr.g_s.edges().iter().find(|e| !e.intersects(&frequent)) {
        if g.is_empty() {
            return Err(Error::Contract(format!(
                "node {} has the empty edge in G^S but |H_S| >= 2; the instance violates H ⊆ tr(G)",
                attr.label
            )));
        }
        let outside = attr.s.difference(g);
        for e in attr.g_s.edges().iter().filter(|e| !e.is_subset(&outside)) {
            for i in e.intersection(g).iter() {
                push(attr.s.difference(&e.without(i)));
            }
        }
    } else {
        // frequent is a transversal, so some H-edge must sit inside it
        let h = attr
            .h_s
            .edges()
            .iter()
            .find(|e| e.is_subset(&frequent))
            .ok_or_else(|| Error::Internal(format!("no process case applies at {}", attr.label)))?;
        for i in h.iter() {
            push(attr.s.without(i));
        }
        push(h.clone());
    }
    Ok(ChildSets::Sets(sets))
}

fn make_child(parent: &NodeAttributes, index: usize, s: VertexSet) -> NodeAttributes {
    let (g_s, h_s) = restrict_unchecked(&parent.g_s, &parent.h_s, &s);
    NodeAttributes::unmarked(parent.label.child(index), s, g_s, h_s)
}

/// Expands an unmarked node with `|h_s| >= 2` into its children.
pub fn process_children(attr: &NodeAttributes) -> Result<ProcessOutcome> {
    Ok(match child_sets(attr)? {
        ChildSets::Fail(t) => ProcessOutcome::Fail(t),
        ChildSets::Sets(sets) => ProcessOutcome::Children(
            sets.into_iter()
                .enumerate()
                .map(|(k, s)| make_child(attr, k + 1, s))
                .collect(),
        ),
    })
}

/// Gives a freshly created node its final mark: marksmall when `|h_s| <= 1`,
/// FAIL with the frequent-vertex witness when that set is a new transversal,
/// NIL otherwise.
fn settle(attr: NodeAttributes) -> Result<NodeAttributes> {
    if attr.h_s.len() <= 1 {
        return marksmall(attr);
    }
    match child_sets(&attr)? {
        ChildSets::Fail(t) => Ok(attr.marked(Mark::Fail, t)),
        ChildSets::Sets(_) => Ok(attr),
    }
}

/// Attributes of the root node.
pub fn root_attributes(instance: &DualityInstance) -> Result<NodeAttributes> {
    settle(NodeAttributes::unmarked(
        PathDescriptor::root(),
        instance.universe().clone(),
        instance.g().clone(),
        instance.h().clone(),
    ))
}

/// The `i`-th child (1-based) of the node `attr`, already marked, or `None`
/// when there is no such child.
pub fn next(instance: &DualityInstance, attr: &NodeAttributes, i: usize) -> Result<Option<NodeAttributes>> {
    let bound = instance.universe().len() * instance.g().len();
    if i == 0 || i > bound {
        return Err(Error::Domain(format!("child index {i} outside 1..={bound}")));
    }
    if attr.mark != Mark::Nil || attr.h_s.len() <= 1 {
        return Ok(None);
    }
    match child_sets(attr)? {
        ChildSets::Fail(_) => Ok(None),
        ChildSets::Sets(mut sets) => {
            if i > sets.len() {
                return Ok(None);
            }
            let s = sets.swap_remove(i - 1);
            settle(make_child(attr, i, s)).map(Some)
        }
    }
}

/// Attributes of the node labelled `pi`, or `None` when no such node exists.
pub fn pathnode(instance: &DualityInstance, pi: &PathDescriptor) -> Result<Option<NodeAttributes>> {
    pathnode_traced(instance, pi, &mut RunStats::default())
}

fn pathnode_traced(
    instance: &DualityInstance,
    pi: &PathDescriptor,
    stats: &mut RunStats,
) -> Result<Option<NodeAttributes>> {
    let bounds = DescriptorBounds::of(instance);
    if !bounds.admits(pi) {
        return Err(Error::Domain(format!(
            "descriptor {pi} outside the descriptor space (length <= {}, indices <= {})",
            bounds.max_len, bounds.max_index
        )));
    }
    stats.pathnode_calls += 1;
    let mut current = root_attributes(instance)?;
    stats.nodes_evaluated += 1;
    stats.hold(1);
    for &i in pi.indices() {
        match next(instance, &current, i)? {
            Some(child) => {
                stats.nodes_evaluated += 1;
                current = child;
            }
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecomposeMode {
    /// Enumerate the descriptor space and call [`pathnode`] per descriptor.
    Literal,
    /// Depth-first expansion through [`next`].
    #[default]
    Dfs,
}

impl std::str::FromStr for DecomposeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(DecomposeMode::Literal),
            "dfs" => Ok(DecomposeMode::Dfs),
            other => Err(Error::Domain(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub mode: DecomposeMode,
    pub literal_budget: u128,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            mode: DecomposeMode::Dfs,
            literal_budget: DEFAULT_LITERAL_BUDGET,
        }
    }
}

/// A fully built decomposition tree in canonical order: nodes by label
/// (length, then lex), edges by child label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub nodes: Vec<NodeAttributes>,
    pub edges: Vec<(PathDescriptor, PathDescriptor)>,
}

impl DecompositionTree {
    fn canonical(mut nodes: Vec<NodeAttributes>, mut edges: Vec<(PathDescriptor, PathDescriptor)>) -> Self {
        nodes.sort_by(|a, b| a.label.cmp(&b.label));
        edges.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        DecompositionTree { nodes, edges }
    }

    pub fn root(&self) -> &NodeAttributes {
        &self.nodes[0]
    }

    pub fn node(&self, label: &PathDescriptor) -> Option<&NodeAttributes> {
        self.nodes
            .binary_search_by(|n| n.label.cmp(label))
            .ok()
            .map(|k| &self.nodes[k])
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.label.len()).max().unwrap_or(0)
    }

    pub fn children(&self, label: &PathDescriptor) -> impl Iterator<Item = &NodeAttributes> + '_ {
        let label = label.clone();
        self.nodes
            .iter()
            .filter(move |n| n.label.parent().as_ref() == Some(&label))
    }

    pub fn leaves(&self) -> impl Iterator<Item = &NodeAttributes> + '_ {
        self.nodes.iter().filter(|n| n.mark != Mark::Nil)
    }

    /// One JSON object per line: nodes, then edges.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            let record = NodeRecord {
                label: &n.label,
                s: &n.s,
                g_s: n.g_s.edges(),
                h_s: n.h_s.edges(),
                mark: n.mark,
                t: &n.t,
            };
            out.push_str(&serde_json::to_string(&record).expect("serializable"));
            out.push('\n');
        }
        for (p, c) in &self.edges {
            let record = EdgeRecord { edge: (p, c) };
            out.push_str(&serde_json::to_string(&record).expect("serializable"));
            out.push('\n');
        }
        out
    }

    /// Graphviz rendering with descriptor labels as node ids.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  node [shape=box, fontname=\"monospace\"];\n");
        for n in &self.nodes {
            let mut text = format!("{}\\nS={}\\n{}", n.label, n.s, n.mark);
            if n.mark == Mark::Fail {
                text.push_str(&format!(" t={}", n.t));
            }
            let style = match n.mark {
                Mark::Done => ", color=darkgreen",
                Mark::Fail => ", color=red",
                Mark::Nil => "",
            };
            out.push_str(&format!("  \"{}\" [label=\"{}\"{}];\n", n.label, text, style));
        }
        for (p, c) in &self.edges {
            out.push_str(&format!("  \"{p}\" -> \"{c}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize)]
struct NodeRecord<'a> {
    label: &'a PathDescriptor,
    #[serde(rename = "S")]
    s: &'a VertexSet,
    #[serde(rename = "G_S")]
    g_s: &'a [VertexSet],
    #[serde(rename = "H_S")]
    h_s: &'a [VertexSet],
    mark: Mark,
    t: &'a VertexSet,
}

#[derive(Serialize)]
struct EdgeRecord<'a> {
    edge: (&'a PathDescriptor, &'a PathDescriptor),
}

/// Builds `T(G, H)` for an instance that passed the duality precheck.
pub fn decompose(instance: &DualityInstance, options: DecomposeOptions) -> Result<DecompositionTree> {
    decompose_traced(instance, options, &mut RunStats::default())
}

pub fn decompose_traced(
    instance: &DualityInstance,
    options: DecomposeOptions,
    stats: &mut RunStats,
) -> Result<DecompositionTree> {
    let started = Instant::now();
    let tree = match options.mode {
        DecomposeMode::Literal => decompose_literal(instance, options.literal_budget, stats),
        DecomposeMode::Dfs => decompose_dfs(instance, stats),
    };
    stats.wall_time_ms = started.elapsed().as_millis() as u64;
    tree
}

fn decompose_literal(instance: &DualityInstance, budget: u128, stats: &mut RunStats) -> Result<DecompositionTree> {
    let bounds = DescriptorBounds::of(instance);
    let count = bounds.count();
    if count > budget {
        return Err(Error::Capacity {
            what: "literal descriptor budget",
            actual: count,
            limit: budget,
        });
    }
    // One pass over PD. A descriptor pi that addresses a node also witnesses
    // the tree edge from its prefix, since pathnode(pi) only succeeds after
    // rebuilding that prefix; each descriptor is evaluated exactly once.
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for pi in bounds.descriptors() {
        if let Some(node) = pathnode_traced(instance, &pi, stats)? {
            if let Some(parent) = pi.parent() {
                edges.push((parent, pi));
            }
            nodes.push(node);
        }
    }
    Ok(DecompositionTree::canonical(nodes, edges))
}

/// Depth-first walk through [`next`], holding only the current path.
/// `visit` sees every node in pre-order; returning `false` stops the walk.
fn walk_dfs<F>(instance: &DualityInstance, stats: &mut RunStats, mut visit: F) -> Result<()>
where
    F: FnMut(&NodeAttributes) -> bool,
{
    let max_depth = depth_bound(instance.h().len());
    let max_index = instance.universe().len() * instance.g().len();
    let root = root_attributes(instance)?;
    stats.nodes_evaluated += 1;
    if !visit(&root) {
        stats.hold(1);
        return Ok(());
    }
    // (node, index of the next child to try)
    let mut path: Vec<(NodeAttributes, usize)> = vec![(root, 1)];
    stats.hold(1);
    while let Some((top, cursor)) = path.last_mut() {
        let child = if *cursor <= max_index {
            next(instance, top, *cursor)?
        } else {
            None
        };
        *cursor += 1;
        match child {
            None => {
                path.pop();
            }
            Some(child) => {
                stats.nodes_evaluated += 1;
                if child.label.len() > max_depth {
                    return Err(Error::Internal(format!(
                        "node {} exceeds the depth bound {max_depth} for |H| = {}",
                        child.label,
                        instance.h().len()
                    )));
                }
                let keep_going = visit(&child);
                path.push((child, 1));
                stats.hold(path.len());
                if !keep_going {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn decompose_dfs(instance: &DualityInstance, stats: &mut RunStats) -> Result<DecompositionTree> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    walk_dfs(instance, stats, |node| {
        if let Some(parent) = node.label.parent() {
            edges.push((parent, node.label.clone()));
        }
        nodes.push(node.clone());
        true
    })?;
    Ok(DecompositionTree::canonical(nodes, edges))
}

/// The first FAIL node met by a depth-first walk, if any.
pub fn traverse_first_fail(instance: &DualityInstance) -> Result<Option<NodeAttributes>> {
    traverse_first_fail_traced(instance, &mut RunStats::default())
}

pub fn traverse_first_fail_traced(instance: &DualityInstance, stats: &mut RunStats) -> Result<Option<NodeAttributes>> {
    let started = Instant::now();
    let mut found = None;
    walk_dfs(instance, stats, |node| {
        if node.mark == Mark::Fail {
            found = Some(node.clone());
            false
        } else {
            true
        }
    })?;
    stats.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[u32]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied()).unwrap()
    }

    fn hg(u: &[u32], edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::new(vs(u), edges.iter().map(|e| vs(e))).unwrap()
    }

    fn running_example() -> DualityInstance {
        DualityInstance::new(hg(&[1, 2, 3], &[&[1, 2], &[1, 3]]), hg(&[1, 2, 3], &[&[1], &[2, 3]])).unwrap()
    }

    fn node(s: &[u32], g: &[&[u32]], h: &[&[u32]]) -> NodeAttributes {
        NodeAttributes::unmarked(PathDescriptor::root(), vs(s), hg(s, g), hg(s, h))
    }

    fn pd(ix: &[usize]) -> PathDescriptor {
        PathDescriptor::new(ix.to_vec()).unwrap()
    }

    #[test]
    fn frequent_vertex_examples() {
        assert_eq!(
            frequent_vertices(&hg(&[1, 2, 3], &[&[1, 2], &[1, 3], &[2, 3]])),
            vs(&[1, 2, 3])
        );
        assert_eq!(frequent_vertices(&hg(&[1, 2], &[&[1, 2]])), vs(&[1, 2]));
        assert_eq!(frequent_vertices(&hg(&[1, 2], &[])), VertexSet::new());
        // exactly half is not enough
        assert_eq!(frequent_vertices(&hg(&[1, 2, 3], &[&[1, 2], &[3]])), VertexSet::new());
    }

    #[test]
    fn marksmall_cases() {
        let a = marksmall(node(&[1, 2], &[&[1], &[2]], &[])).unwrap();
        assert_eq!((a.mark, a.t), (Mark::Fail, vs(&[1, 2])));

        let a = marksmall(node(&[1, 2], &[&[], &[1]], &[])).unwrap();
        assert_eq!((a.mark, a.t), (Mark::Done, VertexSet::new()));

        let a = marksmall(node(&[1, 2], &[&[1], &[2]], &[&[1, 2]])).unwrap();
        assert_eq!(a.mark, Mark::Done);

        let a = marksmall(node(&[1, 2], &[&[1]], &[&[1, 2]])).unwrap();
        assert_eq!((a.mark, a.t.clone()), (Mark::Fail, vs(&[1])));
        assert!(a.g_s.is_hit_by(&a.t));
        assert!(!a.h_s.edges().iter().any(|e| e.is_subset(&a.t)));

        // smallest missing singleton wins
        let a = marksmall(node(&[1, 2, 3], &[&[2, 3]], &[&[1, 2, 3]])).unwrap();
        assert_eq!(a.t, vs(&[2, 3]));

        let big = node(&[1, 2], &[&[1, 2]], &[&[1], &[2]]);
        assert_eq!(marksmall(big.clone()).unwrap(), big);

        let done = big.marked(Mark::Done, VertexSet::new());
        assert!(matches!(marksmall(done), Err(Error::Contract(_))));
    }

    #[test]
    fn process_case_b_children() {
        let root = node(&[1, 2, 3], &[&[1, 2], &[1, 3]], &[&[1], &[2, 3]]);
        let ProcessOutcome::Children(kids) = process_children(&root).unwrap() else {
            panic!("expected children");
        };
        let sets: Vec<_> = kids.iter().map(|k| k.s.clone()).collect();
        assert_eq!(sets, vec![vs(&[1, 3]), vs(&[2, 3]), vs(&[1, 2])]);
        let hs: Vec<_> = kids.iter().map(|k| k.h_s.edges().to_vec()).collect();
        assert_eq!(hs, vec![vec![vs(&[1])], vec![vs(&[2, 3])], vec![vs(&[1])]]);
        assert_eq!(kids[1].label, pd(&[2]));
        assert!(kids.iter().all(|k| k.mark == Mark::Nil && k.t.is_empty()));
    }

    #[test]
    fn process_case_a_fail() {
        // I = {1} hits the lone G-edge and contains no H-edge
        let a = node(&[1, 2, 3], &[&[1, 2]], &[&[1, 2], &[1, 3]]);
        assert_eq!(process_children(&a).unwrap(), ProcessOutcome::Fail(vs(&[1])));
    }

    #[test]
    fn process_case_c_children() {
        // I = {1,2} hits every G-edge and contains H = {1,2}
        let a = node(&[1, 2, 3], &[&[1], &[2]], &[&[1, 2], &[1, 2, 3]]);
        let ProcessOutcome::Children(kids) = process_children(&a).unwrap() else {
            panic!("expected children");
        };
        let sets: Vec<_> = kids.iter().map(|k| k.s.clone()).collect();
        assert_eq!(sets, vec![vs(&[2, 3]), vs(&[1, 3]), vs(&[1, 2])]);
    }

    #[test]
    fn process_rejects_small_or_marked() {
        let a = node(&[1], &[&[1]], &[&[1]]);
        assert!(matches!(process_children(&a), Err(Error::Contract(_))));
    }

    #[test]
    fn next_examples() {
        let inst = running_example();
        let root = root_attributes(&inst).unwrap();
        assert_eq!(root.mark, Mark::Nil);
        let c = next(&inst, &root, 2).unwrap().unwrap();
        assert_eq!(c.s, vs(&[2, 3]));
        assert_eq!(c.g_s.edges(), &[vs(&[2]), vs(&[3])]);
        assert_eq!(c.h_s.edges(), &[vs(&[2, 3])]);
        assert_eq!(c.mark, Mark::Done);
        assert_eq!(next(&inst, &root, 4).unwrap(), None);
        assert_eq!(next(&inst, &c, 1).unwrap(), None);
        assert!(matches!(next(&inst, &root, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn pathnode_examples() {
        let inst = running_example();
        let root = pathnode(&inst, &PathDescriptor::root()).unwrap().unwrap();
        assert_eq!((root.mark, root.s.clone()), (Mark::Nil, vs(&[1, 2, 3])));
        let two = pathnode(&inst, &pd(&[2])).unwrap().unwrap();
        assert_eq!((two.mark, two.s), (Mark::Done, vs(&[2, 3])));
        assert_eq!(pathnode(&inst, &pd(&[4])).unwrap(), None);
        // |H| = 2 allows depth 1 only; |V||G| = 6
        assert!(pathnode(&inst, &pd(&[1, 1])).is_err());
        assert!(pathnode(&inst, &pd(&[7])).is_err());
    }

    #[test]
    fn decompose_examples() {
        let inst = DualityInstance::new(hg(&[1, 2], &[&[1], &[2]]), hg(&[1, 2], &[&[1, 2]])).unwrap();
        let t = decompose(&inst, DecomposeOptions::default()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.root().mark, Mark::Done);

        let inst = running_example();
        for mode in [DecomposeMode::Dfs, DecomposeMode::Literal] {
            let t = decompose(
                &inst,
                DecomposeOptions {
                    mode,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(t.nodes.len(), 4);
            assert_eq!(t.depth(), 1);
            assert!(t.nodes[1..].iter().all(|n| n.mark == Mark::Done));
            assert_eq!(
                t.edges,
                vec![(pd(&[]), pd(&[1])), (pd(&[]), pd(&[2])), (pd(&[]), pd(&[3]))]
            );
        }

        let inst = DualityInstance::new(hg(&[1, 2], &[&[1], &[2]]), hg(&[1, 2], &[])).unwrap();
        let t = decompose(&inst, DecomposeOptions::default()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!((t.root().mark, t.root().t.clone()), (Mark::Fail, vs(&[1, 2])));
    }

    #[test]
    fn literal_budget_is_enforced() {
        let inst = running_example();
        let err = decompose(
            &inst,
            DecomposeOptions {
                mode: DecomposeMode::Literal,
                literal_budget: 6,
            },
        );
        assert!(matches!(
            err,
            Err(Error::Capacity {
                actual: 7,
                limit: 6,
                ..
            })
        ));
    }

    #[test]
    fn literal_stats_count_descriptors() {
        let inst = running_example();
        let mut stats = RunStats::default();
        decompose_traced(
            &inst,
            DecomposeOptions {
                mode: DecomposeMode::Literal,
                ..Default::default()
            },
            &mut stats,
        )
        .unwrap();
        let pd_count = DescriptorBounds::of(&inst).count() as usize;
        assert_eq!(stats.pathnode_calls, pd_count);
    }

    #[test]
    fn traverse_examples() {
        let mut stats = RunStats::default();
        assert_eq!(
            traverse_first_fail_traced(&running_example(), &mut stats).unwrap(),
            None
        );
        assert!(stats.peak_stored_nodes <= 2);

        let inst = DualityInstance::new(hg(&[1, 2], &[&[1], &[2]]), hg(&[1, 2], &[])).unwrap();
        let f = traverse_first_fail(&inst).unwrap().unwrap();
        assert_eq!((f.label, f.t), (PathDescriptor::root(), vs(&[1, 2])));
    }

    #[test]
    fn descriptor_order_and_enumeration() {
        let b = DescriptorBounds {
            max_len: 2,
            max_index: 2,
        };
        let all: Vec<_> = b.descriptors().collect();
        assert_eq!(all.len() as u128, b.count());
        assert_eq!(
            all,
            vec![
                pd(&[]),
                pd(&[1]),
                pd(&[2]),
                pd(&[1, 1]),
                pd(&[1, 2]),
                pd(&[2, 1]),
                pd(&[2, 2])
            ]
        );
        let mut sorted = all.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, all);
        assert_eq!(
            DescriptorBounds {
                max_len: 3,
                max_index: 0
            }
            .descriptors()
            .count(),
            1
        );
        assert_eq!(
            DescriptorBounds {
                max_len: 3,
                max_index: 0
            }
            .count(),
            1
        );
    }

    #[test]
    fn path_descriptor_parsing() {
        assert_eq!(PathDescriptor::parse("").unwrap(), PathDescriptor::root());
        assert_eq!(PathDescriptor::parse("1, 3").unwrap(), pd(&[1, 3]));
        assert!(PathDescriptor::parse("0").is_err());
        assert!(PathDescriptor::parse("a").is_err());
    }

    #[test]
    fn depth_bound_values() {
        assert_eq!([0, 1, 2, 3, 4, 7, 8].map(depth_bound), [0, 0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn jsonl_shape() {
        let t = decompose(&running_example(), DecomposeOptions::default()).unwrap();
        let out = t.to_jsonl();
        let first = out.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"label":[],"S":[1,2,3],"G_S":[[1,2],[1,3]],"H_S":[[1],[2,3]],"mark":"NIL","t":[]}"#
        );
        assert_eq!(out.lines().last().unwrap(), r#"{"edge":[[],[3]]}"#);
        assert!(t.to_dot().contains("\"()\" -> \"(2)\""));
    }
}
