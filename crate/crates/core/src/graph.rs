//! Finite simple graphs with positive-integer vertex labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An unordered edge, stored with the smaller label first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Builds the edge `{a, b}`. Loops are rejected.
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
        }
        Ok(Self(a.min(b), a.max(b)))
    }

    /// Builds the edge `{a, b}` for labels known to differ.
    ///
    /// Panics on `a == b`.
    pub fn of(a: Vertex, b: Vertex) -> Self {
        Self::new(a, b).expect("edge endpoints must differ")
    }

    pub fn lo(&self) -> Vertex {
        self.0
    }

    pub fn hi(&self) -> Vertex {
        self.1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    /// True when the two edges are distinct and share no endpoint.
    pub fn is_disjoint_from(&self, other: &Edge) -> bool {
        self != other && !self.contains(other.0) && !self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("edge `{s}` is not of the form u-v")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<Vertex>()
                .map_err(|_| Error::Parse(format!("bad vertex label in edge `{s}`")))
        };
        Edge::new(parse(a)?, parse(b)?)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Vertex; 2]>::deserialize(d)?;
        Edge::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// A finite simple labeled graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        if vertices.contains(&0) {
            return Err(Error::InvalidGraph("vertex labels must be positive".into()));
        }
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
            vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        let mut edge_set = BTreeSet::new();
        for e in edges {
            for v in [e.lo(), e.hi()] {
                if !vertices.contains(&v) {
                    return Err(Error::InvalidGraph(format!(
                        "edge {e} uses unlisted vertex {v}"
                    )));
                }
            }
            if !edge_set.insert(e) {
                return Err(Error::InvalidGraph(format!("repeated edge {e}")));
            }
            adj.get_mut(&e.lo()).unwrap().insert(e.hi());
            adj.get_mut(&e.hi()).unwrap().insert(e.lo());
        }
        Ok(Self {
            vertices,
            edges: edge_set,
            adj,
        })
    }

    /// Convenience constructor from label pairs; duplicates are merged.
    pub fn from_pairs(
        vertices: impl IntoIterator<Item = Vertex>,
        pairs: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for &(a, b) in pairs {
            edges.insert(Edge::new(a, b)?);
        }
        Self::new(vertices, edges)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_label(&self) -> Vertex {
        self.vertices.iter().next_back().copied().unwrap_or(0)
    }

    /// Sorted degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn with_edges_added(&self, extra: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.extend(extra);
        Self::new(self.vertices.iter().copied(), edges)
    }

    pub fn with_edges_removed(&self, removed: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges = self.edges.clone();
        for e in removed {
            if !edges.remove(&e) {
                return Err(Error::MissingEdge(e));
            }
        }
        Self::new(self.vertices.iter().copied(), edges)
    }

    /// True when every vertex and edge of `self` is in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Dense index of each label, in increasing label order.
    pub(crate) fn index_map(&self) -> BTreeMap<Vertex, usize> {
        self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    /// Adjacency bitmasks over dense indices. Requires `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bitmask adjacency needs at most 64 vertices");
        let idx = self.index_map();
        let mut masks = vec![0u64; self.n()];
        for e in &self.edges {
            let (a, b) = (idx[&e.lo()], idx[&e.hi()]);
            masks[a] |= 1 << b;
            masks[b] |= 1 << a;
        }
        masks
    }
}

/// Wire form of a graph: `{"vertices":[...],"edges":[[u,v],...]}` with `u < v`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertices().collect(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let n_edges = raw.edges.len();
        let g = Graph::new(raw.vertices, raw.edges).map_err(serde::de::Error::custom)?;
        if g.edge_count() != n_edges {
            return Err(serde::de::Error::custom("repeated edge"));
        }
        Ok(g)
    }
}

/// `K_n` on the labels `1..=n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete graph needs n >= 1".into()));
    }
    let n = n as Vertex;
    let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| Edge(a, b)));
    Graph::new(1..=n, edges)
}

/// Number of connected components and the list of cut-edges (bridges).
pub fn connectivity_report(g: &Graph) -> (usize, Vec<Edge>) {
    let idx = g.index_map();
    let labels: Vec<Vertex> = g.vertices().collect();
    let n = labels.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut components = 0;
    let mut bridges = Vec::new();

    // Iterative DFS: (vertex, parent, neighbor list, next neighbor position).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        components += 1;
        let nbrs = |i: usize| -> Vec<usize> { g.neighbors(labels[i]).map(|w| idx[&w]).collect() };
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = vec![(root, usize::MAX, nbrs(root), 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, nbrs(w), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push(Edge::of(labels[v], labels[parent]));
                    }
                }
            }
        }
    }
    bridges.sort();
    (components, bridges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_edge_counts() {
        assert_eq!(complete_graph(6).unwrap().edge_count(), 15);
        assert_eq!(complete_graph(1).unwrap().edge_count(), 0);
        assert_eq!(complete_graph(10).unwrap().edge_count(), 45);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn rejects_loops_repeats_and_unlisted_vertices() {
        assert!(Edge::new(3, 3).is_err());
        assert!(Graph::new([1, 2], [Edge::of(1, 3)]).is_err());
        assert!(Graph::new([0, 1], []).is_err());
        let json = r#"{"vertices":[1,2],"edges":[[1,2],[2,1]]}"#;
        assert!(serde_json::from_str::<Graph>(json).is_err());
    }

    #[test]
    fn json_is_canonical() {
        let g = Graph::from_pairs([3, 1, 2], &[(2, 1), (3, 2)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"vertices":[1,2,3],"edges":[[1,2],[2,3]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_parse_and_display() {
        let e: Edge = "9-7".parse().unwrap();
        assert_eq!(e, Edge::of(7, 9));
        assert_eq!(e.to_string(), "7-9");
        assert!("7".parse::<Edge>().is_err());
    }

    #[test]
    fn connectivity_examples() {
        let k6 = complete_graph(6).unwrap();
        assert_eq!(connectivity_report(&k6), (1, vec![]));

        let two_triangles =
            Graph::from_pairs(1..=6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(connectivity_report(&two_triangles), (2, vec![]));

        let barbell = Graph::from_pairs(
            1..=6,
            &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)],
        )
        .unwrap();
        assert_eq!(connectivity_report(&barbell), (1, vec![Edge::of(3, 4)]));

        let path = Graph::from_pairs(1..=3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            connectivity_report(&path),
            (1, vec![Edge::of(1, 2), Edge::of(2, 3)])
        );
    }
}
