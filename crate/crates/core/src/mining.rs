//! Database-side uses of duality: itemset borders over Boolean relations,
//! minimal keys of arbitrary relations, and non-dominated coteries.
//!
//! Items and attributes are mapped to vertices `1..=n` in column order.

use serde::Serialize;

use crate::duality::{decide_dual, enumerate_transversals, DualityVerdict, TransversalEnumerator};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId, VertexSet};

/// A table over named columns. `Relation<bool>` is a transaction database;
/// other cell types are only compared for equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation<T = bool> {
    items: Vec<String>,
    tuples: Vec<Vec<T>>,
}

impl<T> Relation<T> {
    pub fn new(items: Vec<String>, tuples: Vec<Vec<T>>) -> Result<Self> {
        for (k, name) in items.iter().enumerate() {
            if items[..k].contains(name) {
                return Err(Error::Domain(format!("duplicate column name {name:?}")));
            }
        }
        if let Some(k) = tuples.iter().position(|t| t.len() != items.len()) {
            return Err(Error::Domain(format!(
                "tuple {} has width {}, expected {}",
                k + 1,
                tuples[k].len(),
                items.len()
            )));
        }
        Ok(Relation { items, tuples })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn tuples(&self) -> &[Vec<T>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `{1, ..., |items|}`.
    pub fn universe(&self) -> VertexSet {
        VertexSet::range(self.items.len() as u32)
    }

    pub fn item_id(&self, name: &str) -> Option<VertexId> {
        self.items
            .iter()
            .position(|n| n == name)
            .map(|k| VertexId::new(k as u32 + 1).expect("positive"))
    }

    pub fn item_name(&self, v: VertexId) -> Option<&str> {
        self.items.get(v.get() as usize - 1).map(String::as_str)
    }

    /// Column names of `set`, in id order.
    pub fn names(&self, set: &VertexSet) -> Vec<&str> {
        set.iter().filter_map(|v| self.item_name(v)).collect()
    }

    /// One itemset per line as space-separated names; `-` is the empty set.
    pub fn format_named(&self, set: &VertexSet) -> String {
        if set.is_empty() {
            "-".to_string()
        } else {
            self.names(set).join(" ")
        }
    }

    /// Reads a family written in the [`Relation::format_named`] line format.
    /// `#` starts a comment.
    pub fn parse_named_family(&self, text: &str) -> Result<Hypergraph> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "-" {
                edges.push(VertexSet::new());
                continue;
            }
            let names: Vec<&str> = line.split_whitespace().collect();
            edges.push(self.ids_of(&names).map_err(|e| Error::parse(idx + 1, e.to_string()))?);
        }
        Hypergraph::new(self.universe(), edges)
    }

    /// Resolves column names to a vertex set.
    pub fn ids_of<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| {
                self.item_id(n.as_ref())
                    .ok_or_else(|| Error::Domain(format!("unknown item {:?}", n.as_ref())))
            })
            .collect()
    }
}

/// Data rows with their 1-based line numbers.
type Rows = Vec<(usize, Vec<String>)>;

fn read_csv(text: &str) -> Result<(Vec<String>, Rows)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.is_empty() || header.iter().any(|h| h.is_empty()) {
        return Err(Error::parse(1, "header must name every column"));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::Parse {
                line,
                column: Some(record.len().min(header.len()) + 1),
                message: format!("row has {} cells, header has {}", record.len(), header.len()),
            });
        }
        rows.push((line, record.iter().map(str::to_owned).collect()));
    }
    Ok((header, rows))
}

impl Relation<bool> {
    /// CSV with a header row of item names and 0/1 cells.
    pub fn parse_boolean(text: &str) -> Result<Self> {
        let (items, rows) = read_csv(text)?;
        let mut tuples = Vec::with_capacity(rows.len());
        for (line, row) in rows {
            let tuple = row
                .iter()
                .enumerate()
                .map(|(c, cell)| match cell.as_str() {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(Error::Parse {
                        line,
                        column: Some(c + 1),
                        message: format!("expected 0 or 1, found {other:?}"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            tuples.push(tuple);
        }
        Relation::new(items, tuples).map_err(|e| Error::parse(1, e.to_string()))
    }
}

impl Relation<String> {
    /// CSV with a header row of attribute names and arbitrary cells.
    pub fn parse_table(text: &str) -> Result<Self> {
        let (items, rows) = read_csv(text)?;
        Relation::new(items, rows.into_iter().map(|(_, r)| r).collect()).map_err(|e| Error::parse(1, e.to_string()))
    }
}

/// Frequency threshold `z` with `0 < z <= |M|`. An itemset is frequent when
/// strictly more than `z` tuples contain it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Threshold(usize);

impl Threshold {
    pub fn new<T>(z: usize, m: &Relation<T>) -> Result<Self> {
        if z == 0 || z > m.len() {
            return Err(Error::Domain(format!(
                "threshold {z} outside 1..={} (relation has {} tuples)",
                m.len(),
                m.len()
            )));
        }
        Ok(Threshold(z))
    }

    /// `ceil(fraction * |M|)`, for a fraction in `(0, 1]`.
    pub fn from_fraction<T>(fraction: f64, m: &Relation<T>) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::Domain(format!("support fraction {fraction} outside (0, 1]")));
        }
        Threshold::new((fraction * m.len() as f64).ceil() as usize, m)
    }

    pub fn get(self) -> usize {
        self.0
    }
}

fn check_items(m: &Relation<bool>, u: &VertexSet) -> Result<()> {
    match u.iter().find(|v| v.get() as usize > m.items.len()) {
        Some(v) => Err(Error::Domain(format!("unknown item id {v}"))),
        None => Ok(()),
    }
}

fn count_containing(m: &Relation<bool>, u: &VertexSet) -> usize {
    m.tuples
        .iter()
        .filter(|t| u.iter().all(|v| t[v.get() as usize - 1]))
        .count()
}

/// Number of tuples containing every item of `u`.
pub fn frequency(m: &Relation<bool>, u: &VertexSet) -> Result<usize> {
    check_items(m, u)?;
    Ok(count_containing(m, u))
}

pub fn is_frequent(m: &Relation<bool>, z: Threshold, u: &VertexSet) -> Result<bool> {
    Ok(frequency(m, u)? > z.get())
}

/// Partial borders: `g` holds known minimal infrequent itemsets, `h` known
/// maximal frequent ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderState {
    pub g: Hypergraph,
    pub h: Hypergraph,
}

impl BorderState {
    pub fn empty(m: &Relation<bool>) -> Self {
        let u = m.universe();
        BorderState {
            g: Hypergraph::new(u.clone(), []).expect("empty family"),
            h: Hypergraph::new(u, []).expect("empty family"),
        }
    }

    /// Checks every edge against the relation.
    pub fn validate(&self, m: &Relation<bool>, z: Threshold) -> Result<()> {
        let u = m.universe();
        if self.g.universe() != &u || self.h.universe() != &u {
            return Err(Error::Domain(
                "border families must range over the item universe".into(),
            ));
        }
        let frequent = |s: &VertexSet| count_containing(m, s) > z.get();
        for e in self.g.edges() {
            if frequent(e) || e.iter().any(|v| !frequent(&e.without(v))) {
                return Err(Error::Domain(format!("{e} is not a minimal infrequent itemset")));
            }
        }
        for e in self.h.edges() {
            if !frequent(e) || u.difference(e).iter().any(|v| frequent(&e.with(v))) {
                return Err(Error::Domain(format!("{e} is not a maximal frequent itemset")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identification {
    Complete,
    /// A minimal transversal of the complements of `h` that is not in `g`;
    /// it leads to a border element missing from the state.
    Incomplete(VertexSet),
}

/// Whether `state` already holds both complete borders, i.e. `g = tr(h^c)`.
pub fn check_identification(m: &Relation<bool>, z: Threshold, state: &BorderState) -> Result<Identification> {
    state.validate(m, z)?;
    let complements = state.h.complement_family(&m.universe())?;
    let verdict = decide_dual(&complements, &state.g)?;
    if verdict.is_dual() {
        return Ok(Identification::Complete);
    }
    verdict
        .minimal_witness
        .map(Identification::Incomplete)
        .ok_or_else(|| Error::Internal("border state admitted no witness".into()))
}

/// Grows a frequent itemset to a maximal one, trying items in ascending order.
pub fn extend_to_maximal_frequent(m: &Relation<bool>, z: Threshold, x: &VertexSet) -> Result<VertexSet> {
    if !is_frequent(m, z, x)? {
        return Err(Error::Contract(format!("{x} is not frequent")));
    }
    let mut current = x.clone();
    for v in m.universe().iter() {
        if current.contains(v) {
            continue;
        }
        let bigger = current.with(v);
        if count_containing(m, &bigger) > z.get() {
            current = bigger;
        }
    }
    Ok(current)
}

/// Shrinks an infrequent itemset to a minimal one, trying items in ascending order.
pub fn shrink_to_minimal_infrequent(m: &Relation<bool>, z: Threshold, x: &VertexSet) -> Result<VertexSet> {
    if is_frequent(m, z, x)? {
        return Err(Error::Contract(format!("{x} is frequent")));
    }
    let mut current = x.clone();
    for v in x.iter() {
        let smaller = current.without(v);
        if count_containing(m, &smaller) <= z.get() {
            current = smaller;
        }
    }
    Ok(current)
}

/// Both borders of a relation at a threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Borders {
    /// IS+.
    pub maximal_frequent: Hypergraph,
    /// IS-.
    pub minimal_infrequent: Hypergraph,
    /// Border elements added, one per duality check that came back incomplete.
    pub iterations: usize,
}

#[derive(Serialize)]
struct BorderSummary {
    is_plus_count: usize,
    is_minus_count: usize,
    iterations: usize,
}

impl Borders {
    pub fn summary_json(&self) -> String {
        serde_json::to_string(&BorderSummary {
            is_plus_count: self.maximal_frequent.len(),
            is_minus_count: self.minimal_infrequent.len(),
            iterations: self.iterations,
        })
        .expect("serializable")
    }
}

/// Computes both borders by alternating duality checks with border extension.
pub fn mine_all(m: &Relation<bool>, z: Threshold) -> Result<Borders> {
    let mut state = BorderState::empty(m);
    let universe = m.universe();
    let mut iterations = 0;
    loop {
        match check_identification(m, z, &state)? {
            Identification::Complete => {
                return Ok(Borders {
                    maximal_frequent: state.h,
                    minimal_infrequent: state.g,
                    iterations,
                })
            }
            Identification::Incomplete(x) => {
                iterations += 1;
                if count_containing(m, &x) > z.get() {
                    let f = extend_to_maximal_frequent(m, z, &x)?;
                    state.h = Hypergraph::new(universe.clone(), state.h.edges().iter().cloned().chain([f]))?;
                } else {
                    let i = shrink_to_minimal_infrequent(m, z, &x)?;
                    state.g = Hypergraph::new(universe.clone(), state.g.edges().iter().cloned().chain([i]))?;
                }
            }
        }
    }
}

/// One edge per pair of distinct tuples: the attributes where they differ.
/// Minimized, so identical tuples collapse everything to `{∅}`.
pub fn disagreement_hypergraph<T: PartialEq>(r: &Relation<T>) -> Hypergraph {
    let n = r.items.len();
    let mut edges = Vec::new();
    for (i, a) in r.tuples.iter().enumerate() {
        for b in &r.tuples[i + 1..] {
            edges.push(
                (0..n)
                    .filter(|&c| a[c] != b[c])
                    .map(|c| VertexId::new(c as u32 + 1).expect("positive"))
                    .collect::<VertexSet>(),
            );
        }
    }
    Hypergraph::new(r.universe(), edges)
        .expect("columns are in the universe")
        .minimize()
}

/// Streams the minimal keys of `r`.
pub fn enumerate_minimal_keys<T: PartialEq>(r: &Relation<T>) -> Result<TransversalEnumerator> {
    enumerate_transversals(&disagreement_hypergraph(r), None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyCheck {
    Complete,
    NewKey(VertexSet),
}

/// Whether `keys` lists every minimal key of `r`.
pub fn check_additional_key<T: PartialEq>(r: &Relation<T>, keys: &Hypergraph) -> Result<KeyCheck> {
    let d = disagreement_hypergraph(r);
    let keys = keys.with_universe(r.universe())?;
    if let Some(k) = keys.edges().iter().find(|k| !d.is_minimal_hit_by(k)) {
        return Err(Error::Domain(format!("{k} is not a minimal key")));
    }
    let verdict = decide_dual(&d, &keys)?;
    if verdict.is_dual() {
        return Ok(KeyCheck::Complete);
    }
    verdict
        .minimal_witness
        .map(KeyCheck::NewKey)
        .ok_or_else(|| Error::Internal("key family admitted no witness".into()))
}

/// A coterie (simple, pairwise intersecting) is non-dominated iff it is self-dual.
pub fn is_nondominated_coterie(h: &Hypergraph) -> Result<bool> {
    Ok(coterie_verdict(h)?.is_dual())
}

/// The self-duality verdict behind [`is_nondominated_coterie`]. When the
/// coterie is dominated, the minimal witness is a minimal transversal that is
/// not a quorum.
pub fn coterie_verdict(h: &Hypergraph) -> Result<DualityVerdict> {
    if !h.is_simple() {
        return Err(Error::Domain("a coterie must be simple".into()));
    }
    for (i, a) in h.edges().iter().enumerate() {
        if let Some(b) = h.edges()[i + 1..].iter().find(|b| !a.intersects(b)) {
            return Err(Error::Domain(format!("{a} and {b} do not intersect; not a coterie")));
        }
    }
    decide_dual(h, h)
}
