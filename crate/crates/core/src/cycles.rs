//! Cycles, disjoint cycle pairs, and their enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// A cycle given by its cyclic vertex sequence, always held in canonical form:
/// the rotation starting at the smallest label, walking toward the smaller of
/// its two neighbors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    /// Canonicalizes a cyclic sequence of at least three distinct labels.
    pub fn new(seq: impl Into<Vec<Vertex>>) -> Result<Self> {
        let seq = seq.into();
        if seq.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "{seq:?} has fewer than three vertices"
            )));
        }
        let distinct: BTreeSet<_> = seq.iter().collect();
        if distinct.len() != seq.len() {
            return Err(Error::InvalidCycle(format!("{seq:?} repeats a vertex")));
        }
        Ok(Self(canonical_rotation(&seq)))
    }

    /// Like [`Cycle::new`], additionally checking that consecutive vertices are
    /// adjacent in `g`.
    pub fn in_graph(seq: impl Into<Vec<Vertex>>, g: &Graph) -> Result<Self> {
        let c = Self::new(seq)?;
        c.check_in(g)?;
        Ok(c)
    }

    pub fn check_in(&self, g: &Graph) -> Result<()> {
        for (a, b) in self.steps() {
            if !g.has_edge(a, b) {
                return Err(Error::InvalidCycle(format!(
                    "{self}: {a} and {b} are not adjacent"
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive vertex pairs in traversal order, closing back to the start.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.steps().map(|(a, b)| Edge::of(a, b))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().any(|f| f == e)
    }

    /// Image under a vertex relabeling, re-canonicalized.
    pub fn relabeled(&self, f: impl Fn(Vertex) -> Option<Vertex>) -> Result<Self> {
        let seq = self
            .0
            .iter()
            .map(|&v| f(v).ok_or(Error::MissingVertex(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(seq)
    }
}

fn canonical_rotation(seq: &[Vertex]) -> Vec<Vertex> {
    let n = seq.len();
    let start = (0..n).min_by_key(|&i| seq[i]).unwrap();
    let next = seq[(start + 1) % n];
    let prev = seq[(start + n - 1) % n];
    if next < prev {
        (0..n).map(|k| seq[(start + k) % n]).collect()
    } else {
        (0..n).map(|k| seq[(start + n - k) % n]).collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Cycle {
    type Err = Error;

    /// Accepts `[1 8 7 2 3]`, `1 8 7 2 3` or comma-separated labels.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let seq = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<Vertex>()
                    .map_err(|_| Error::Parse(format!("bad label `{t}` in cycle `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Cycle::new(seq)
    }
}

impl Serialize for Cycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let seq = Vec::<Vertex>::deserialize(d)?;
        let c = Cycle::new(seq.clone()).map_err(serde::de::Error::custom)?;
        if c.0 != seq {
            return Err(serde::de::Error::custom(format!(
                "cycle {seq:?} is not in canonical form"
            )));
        }
        Ok(c)
    }
}

/// A pair of vertex-disjoint cycles. The longer cycle is stored first; on a
/// length tie the lexicographically smaller canonical form comes first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclePair {
    first: Cycle,
    second: Cycle,
}

impl CyclePair {
    pub fn new(a: Cycle, b: Cycle) -> Result<Self> {
        if a.vertices().iter().any(|v| b.contains(*v)) {
            return Err(Error::InvalidPair(format!("{a} and {b} share a vertex")));
        }
        let swap = match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => b < a,
        };
        Ok(if swap {
            Self { first: b, second: a }
        } else {
            Self { first: a, second: b }
        })
    }

    /// Parses and validates a pair against a host graph.
    pub fn in_graph(a: &[Vertex], b: &[Vertex], g: &Graph) -> Result<Self> {
        Self::new(Cycle::in_graph(a.to_vec(), g)?, Cycle::in_graph(b.to_vec(), g)?)
    }

    pub fn first(&self) -> &Cycle {
        &self.first
    }

    pub fn second(&self) -> &Cycle {
        &self.second
    }

    pub fn components(&self) -> [&Cycle; 2] {
        [&self.first, &self.second]
    }

    /// `(p, q)` with `p >= q`.
    pub fn type_pq(&self) -> (usize, usize) {
        (self.first.len(), self.second.len())
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> bool {
        self.first.len() + self.second.len() == g.n()
            && g
                .vertices()
                .all(|v| self.first.contains(v) || self.second.contains(v))
    }

    pub fn check_in(&self, g: &Graph) -> Result<()> {
        self.first.check_in(g)?;
        self.second.check_in(g)
    }

    /// Which component (0 or 1) uses edge `e`, if any.
    pub fn component_of_edge(&self, e: Edge) -> Option<usize> {
        if self.first.contains_edge(e) {
            Some(0)
        } else if self.second.contains_edge(e) {
            Some(1)
        } else {
            None
        }
    }

    /// True when `e` and `f` lie in different components.
    pub fn separates(&self, e: Edge, f: Edge) -> bool {
        matches!(
            (self.component_of_edge(e), self.component_of_edge(f)),
            (Some(a), Some(b)) if a != b
        )
    }

    pub fn relabeled(&self, f: impl Fn(Vertex) -> Option<Vertex> + Copy) -> Result<Self> {
        Self::new(self.first.relabeled(f)?, self.second.relabeled(f)?)
    }

    pub fn vertex_mask(&self, g: &Graph) -> u64 {
        let idx = g.index_map();
        self.first
            .vertices()
            .iter()
            .chain(self.second.vertices())
            .fold(0, |m, v| m | (1u64 << idx[v]))
    }
}

impl PartialOrd for CyclePair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclePair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.first, &self.second).cmp(&(&other.first, &other.second))
    }
}

impl fmt::Display for CyclePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∪{}", self.first, self.second)
    }
}

impl FromStr for CyclePair {
    type Err = Error;

    /// Accepts `[1 5 3 8 7]∪[4 2 6]`; `U` and `|` also work as separators.
    fn from_str(s: &str) -> Result<Self> {
        let sep = ['∪', 'U', 'u', '|'];
        let (a, b) = s
            .split_once(|c| sep.contains(&c))
            .ok_or_else(|| Error::Parse(format!("pair `{s}` needs a ∪ separator")))?;
        CyclePair::new(a.parse()?, b.parse()?)
    }
}

impl Serialize for CyclePair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.first, &self.second).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclePair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(Cycle, Cycle)>::deserialize(d)?;
        let p = CyclePair::new(a.clone(), b.clone()).map_err(serde::de::Error::custom)?;
        if p.first != a {
            return Err(serde::de::Error::custom(format!(
                "pair {p} is not in canonical component order"
            )));
        }
        Ok(p)
    }
}

/// A named set of disjoint cycle pairs of one host graph, kept sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaSet {
    name: String,
    host: Graph,
    pairs: Vec<CyclePair>,
}

impl LambdaSet {
    pub fn new(
        name: impl Into<String>,
        host: Graph,
        pairs: impl IntoIterator<Item = CyclePair>,
    ) -> Result<Self> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        for p in pairs {
            p.check_in(&host)?;
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidPair(format!("{p} listed twice in {name}")));
            }
        }
        Ok(Self {
            name,
            host,
            pairs: seen.into_iter().collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn pairs(&self) -> &[CyclePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, p: &CyclePair) -> bool {
        self.pairs.binary_search(p).is_ok()
    }

    /// A copy without `p`, under a new name.
    pub fn without(&self, p: &CyclePair, name: impl Into<String>) -> Result<Self> {
        Self::new(
            name,
            self.host.clone(),
            self.pairs.iter().filter(|q| *q != p).cloned(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct LambdaJson {
    name: String,
    graph: Graph,
    pairs: Vec<CyclePair>,
}

impl Serialize for LambdaSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LambdaJson {
            name: self.name.clone(),
            graph: self.host.clone(),
            pairs: self.pairs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LambdaJson::deserialize(d)?;
        LambdaSet::new(raw.name, raw.graph, raw.pairs).map_err(serde::de::Error::custom)
    }
}

/// All cycles of `g` (optionally only those of one length), canonical and sorted.
pub fn enumerate_cycles(g: &Graph, length: Option<usize>) -> Vec<Cycle> {
    let max_len = length.unwrap_or(g.n());
    let mut out = Vec::new();
    for_each_cycle(g, max_len, |seq| {
        if length.is_none_or(|l| seq.len() == l) {
            out.push(Cycle(seq.to_vec()));
        }
    });
    out.sort();
    out
}

/// Calls `visit` with every cycle of length `3..=max_len`, already canonical.
fn for_each_cycle(g: &Graph, max_len: usize, mut visit: impl FnMut(&[Vertex])) {
    let labels: Vec<Vertex> = g.vertices().collect();
    let adj = g.adjacency_masks();
    let n = labels.len();
    let mut path: Vec<usize> = Vec::with_capacity(n);
    let mut seq: Vec<Vertex> = Vec::with_capacity(n);

    fn dfs(
        start: usize,
        adj: &[u64],
        labels: &[Vertex],
        max_len: usize,
        used: u64,
        path: &mut Vec<usize>,
        seq: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]),
    ) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && adj[last] & (1 << start) != 0 && path[1] < last {
            seq.clear();
            seq.extend(path.iter().map(|&i| labels[i]));
            visit(seq);
        }
        if path.len() == max_len {
            return;
        }
        // Only vertices with a larger index than the start may follow it.
        let mut cand = adj[last] & !used & !((1u64 << (start + 1)) - 1);
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(w);
            dfs(start, adj, labels, max_len, used | (1 << w), path, seq, visit);
            path.pop();
        }
    }

    for s in 0..n {
        path.clear();
        path.push(s);
        dfs(s, &adj, &labels, max_len, 1 << s, &mut path, &mut seq, &mut visit);
    }
}

/// All vertex-disjoint cycle pairs of `g` matching the filters, canonical and
/// sorted. `type_pq` is unordered: `(3,4)` and `(4,3)` select the same pairs.
pub fn enumerate_pairs(
    g: &Graph,
    type_pq: Option<(usize, usize)>,
    hamiltonian_only: bool,
) -> Vec<CyclePair> {
    let n = g.n();
    if n < 6 {
        return Vec::new();
    }
    let type_pq = type_pq.map(|(p, q)| (p.max(q), p.min(q)));
    let max_len = match type_pq {
        Some((p, _)) => p,
        None => n - 3,
    };
    let idx = g.index_map();
    let mut by_mask: BTreeMap<u64, Vec<Cycle>> = BTreeMap::new();
    for_each_cycle(g, max_len, |seq| {
        if let Some((p, q)) = type_pq {
            if seq.len() != p && seq.len() != q {
                return;
            }
        }
        let mask = seq.iter().fold(0u64, |m, v| m | (1 << idx[v]));
        by_mask.entry(mask).or_default().push(Cycle(seq.to_vec()));
    });
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let masks: Vec<u64> = by_mask.keys().copied().collect();
    let mut out = Vec::new();
    for (i, &m1) in masks.iter().enumerate() {
        for &m2 in &masks[i + 1..] {
            if m1 & m2 != 0 {
                continue;
            }
            if hamiltonian_only && m1 | m2 != full {
                continue;
            }
            if let Some((p, q)) = type_pq {
                let (a, b) = (m1.count_ones() as usize, m2.count_ones() as usize);
                if (a.max(b), a.min(b)) != (p, q) {
                    continue;
                }
            }
            for c1 in &by_mask[&m1] {
                for c2 in &by_mask[&m2] {
                    out.push(CyclePair::new(c1.clone(), c2.clone()).expect("disjoint masks"));
                }
            }
        }
    }
    out.sort();
    out
}
