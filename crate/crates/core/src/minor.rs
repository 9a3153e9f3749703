//! Subdivision-type minor maps and the graph moves built on them:
//! subdivision, contraction, ΔY/YΔ exchange and vertex splitting.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cycles::{Cycle, CyclePair};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// A realization of `minor` inside `host`: every minor edge expands to a path
/// of the subgraph `G'` (a single edge when not subdivided), and the paths are
/// internally disjoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "MinorMapJson", into = "MinorMapJson")]
pub struct MinorMap {
    minor: Graph,
    host: Graph,
    subgraph_edges: BTreeSet<Edge>,
    expansion: BTreeMap<Edge, Vec<Vertex>>,
    vertex_image: BTreeMap<Vertex, Vertex>,
}

impl MinorMap {
    pub fn new(
        minor: Graph,
        host: Graph,
        expansion: BTreeMap<Edge, Vec<Vertex>>,
        vertex_image: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        let subgraph_edges = expansion
            .values()
            .flat_map(|p| p.windows(2).map(|w| Edge::of(w[0], w[1])))
            .collect();
        let m = Self {
            minor,
            host,
            subgraph_edges,
            expansion,
            vertex_image,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(g: &Graph) -> Self {
        Self {
            minor: g.clone(),
            host: g.clone(),
            subgraph_edges: g.edge_set().clone(),
            expansion: g.edges().map(|e| (e, vec![e.lo(), e.hi()])).collect(),
            vertex_image: g.vertices().map(|v| (v, v)).collect(),
        }
    }

    /// Subdivides each listed edge of `g` by `k` new vertices. Fresh labels
    /// are handed out consecutively from `label_start`, edge by edge in the
    /// given order, each path running from the lower-labeled endpoint.
    pub fn subdivisions(g: &Graph, plan: &[(Edge, usize)], label_start: Vertex) -> Result<Self> {
        let mut expansion: BTreeMap<Edge, Vec<Vertex>> =
            g.edges().map(|e| (e, vec![e.lo(), e.hi()])).collect();
        let mut next = label_start;
        let mut host_vertices: BTreeSet<Vertex> = g.vertex_set().clone();
        for &(e, k) in plan {
            if !g.contains_edge(e) {
                return Err(Error::MissingEdge(e));
            }
            if k == 0 {
                return Err(Error::InvalidArgument(
                    "subdivision needs k >= 1; use the unmodified graph for k = 0".into(),
                ));
            }
            let path = expansion.get_mut(&e).unwrap();
            if path.len() != 2 {
                return Err(Error::InvalidArgument(format!("edge {e} subdivided twice")));
            }
            let mut fresh = Vec::with_capacity(k);
            for _ in 0..k {
                if next == 0 || !host_vertices.insert(next) {
                    return Err(Error::LabelCollision(next));
                }
                fresh.push(next);
                next += 1;
            }
            *path = std::iter::once(e.lo())
                .chain(fresh)
                .chain(std::iter::once(e.hi()))
                .collect();
        }
        let host_edges: Vec<Edge> = expansion
            .values()
            .flat_map(|p| p.windows(2).map(|w| Edge::of(w[0], w[1])))
            .collect();
        let host = Graph::new(host_vertices, host_edges)?;
        let vertex_image = g.vertices().map(|v| (v, v)).collect();
        Self::new(g.clone(), host, expansion, vertex_image)
    }

    /// The same realization viewed inside a larger host graph.
    pub fn into_host(self, host: Graph) -> Result<Self> {
        if !self.host.is_subgraph_of(&host) {
            return Err(Error::InvalidMinorMap(
                "current host is not a subgraph of the new host".into(),
            ));
        }
        let m = Self { host, ..self };
        m.validate()?;
        Ok(m)
    }

    pub fn minor(&self) -> &Graph {
        &self.minor
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn subgraph_edges(&self) -> &BTreeSet<Edge> {
        &self.subgraph_edges
    }

    pub fn expansion(&self) -> &BTreeMap<Edge, Vec<Vertex>> {
        &self.expansion
    }

    pub fn vertex_image(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_image
    }

    /// The subgraph `G'` of the host.
    pub fn subgraph(&self) -> Graph {
        let vertices: BTreeSet<Vertex> = self.expansion.values().flatten().copied().collect();
        let vertices = vertices
            .into_iter()
            .chain(self.vertex_image.values().copied())
            .collect::<BTreeSet<_>>();
        Graph::new(vertices, self.subgraph_edges.iter().copied()).expect("validated")
    }

    pub fn is_identity(&self) -> bool {
        self.minor == self.host
            && self.vertex_image.iter().all(|(a, b)| a == b)
            && self.expansion.values().all(|p| p.len() == 2)
    }

    /// Path in the host realizing the minor edge `a -> b`, oriented from the
    /// image of `a` to the image of `b`.
    pub fn oriented_path(&self, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
        let e = Edge::new(a, b).ok()?;
        let p = self.expansion.get(&e)?;
        let mut p = p.clone();
        if a != e.lo() {
            p.reverse();
        }
        Some(p)
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidMinorMap(s));
        if self.vertex_image.keys().copied().ne(self.minor.vertices()) {
            return bad("vertex image must cover exactly the minor's vertices".into());
        }
        let images: BTreeSet<Vertex> = self.vertex_image.values().copied().collect();
        if images.len() != self.vertex_image.len() {
            return bad("vertex image is not injective".into());
        }
        if let Some(v) = images.iter().find(|v| !self.host.has_vertex(**v)) {
            return bad(format!("image vertex {v} is not in the host"));
        }
        if self.expansion.keys().copied().ne(self.minor.edges()) {
            return bad("expansion must cover exactly the minor's edges".into());
        }
        let mut interior_seen = BTreeSet::new();
        let mut edge_count = 0;
        for (e, path) in &self.expansion {
            if path.len() < 2
                || path[0] != self.vertex_image[&e.lo()]
                || path[path.len() - 1] != self.vertex_image[&e.hi()]
            {
                return bad(format!("expansion of {e} does not join the images of its ends"));
            }
            for w in path.windows(2) {
                if !self.host.has_edge(w[0], w[1]) {
                    return bad(format!("expansion of {e} uses a non-edge {}-{}", w[0], w[1]));
                }
            }
            edge_count += path.len() - 1;
            for &v in &path[1..path.len() - 1] {
                if images.contains(&v) || !interior_seen.insert(v) {
                    return bad(format!("expansion paths are not internally disjoint at {v}"));
                }
            }
        }
        if edge_count != self.subgraph_edges.len() {
            return bad("expansion paths reuse an edge".into());
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MinorMapJson {
    minor: Graph,
    host: Graph,
    expansion: Vec<(Edge, Vec<Vertex>)>,
    #[serde(rename = "vertexImage")]
    vertex_image: Vec<(Vertex, Vertex)>,
}

impl From<MinorMap> for MinorMapJson {
    fn from(m: MinorMap) -> Self {
        Self {
            minor: m.minor,
            host: m.host,
            expansion: m.expansion.into_iter().collect(),
            vertex_image: m.vertex_image.into_iter().collect(),
        }
    }
}

impl TryFrom<MinorMapJson> for MinorMap {
    type Error = Error;

    fn try_from(j: MinorMapJson) -> Result<Self> {
        MinorMap::new(
            j.minor,
            j.host,
            j.expansion.into_iter().collect(),
            j.vertex_image.into_iter().collect(),
        )
    }
}

/// Subdivides `e` by `k >= 1` new vertices labeled `label_start..`.
pub fn subdivide_edge(
    g: &Graph,
    e: Edge,
    k: usize,
    label_start: Vertex,
) -> Result<(Graph, MinorMap)> {
    let m = MinorMap::subdivisions(g, &[(e, k)], label_start)?;
    Ok((m.host().clone(), m))
}

/// Contracts `e`, merging its endpoints into the smaller label and dropping
/// loops and parallel edges.
pub fn contract_edge(g: &Graph, e: Edge) -> Result<Graph> {
    if !g.contains_edge(e) {
        return Err(Error::MissingEdge(e));
    }
    let (keep, gone) = (e.lo(), e.hi());
    let rename = |v: Vertex| if v == gone { keep } else { v };
    let edges: BTreeSet<Edge> = g
        .edges()
        .filter_map(|f| Edge::new(rename(f.lo()), rename(f.hi())).ok())
        .collect();
    Graph::new(g.vertices().filter(|&v| v != gone), edges)
}

/// Δ→Y: deletes the triangle's three edges and joins a new vertex to its corners.
pub fn delta_y(g: &Graph, triangle: [Vertex; 3], new_label: Vertex) -> Result<Graph> {
    let [a, b, c] = triangle;
    let sides = [Edge::new(a, b)?, Edge::new(b, c)?, Edge::new(a, c)?];
    for s in sides {
        if !g.contains_edge(s) {
            return Err(Error::MissingEdge(s));
        }
    }
    if g.has_vertex(new_label) || new_label == 0 {
        return Err(Error::LabelCollision(new_label));
    }
    let edges = g
        .edges()
        .filter(|e| !sides.contains(e))
        .chain(triangle.iter().map(|&v| Edge::of(v, new_label)));
    Graph::new(g.vertices().chain([new_label]), edges)
}

/// Y→Δ: deletes a degree-3 vertex and joins its neighbors pairwise (adding
/// only the missing edges).
pub fn y_delta(g: &Graph, v: Vertex) -> Result<Graph> {
    if !g.has_vertex(v) {
        return Err(Error::MissingVertex(v));
    }
    let nbrs: Vec<Vertex> = g.neighbors(v).collect();
    if nbrs.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "vertex {v} has degree {}, not 3",
            nbrs.len()
        )));
    }
    let mut edges: BTreeSet<Edge> = g.edges().filter(|e| !e.contains(v)).collect();
    edges.insert(Edge::of(nbrs[0], nbrs[1]));
    edges.insert(Edge::of(nbrs[1], nbrs[2]));
    edges.insert(Edge::of(nbrs[0], nbrs[2]));
    Graph::new(g.vertices().filter(|&w| w != v), edges)
}

/// How a vertex splitting changes the topology.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitKind {
    /// One side is empty, creating a degree-1 vertex; not a valid splitting.
    Degenerate,
    /// One side has a single neighbor, so the new edge is a subdivision.
    Trivial,
    NonTrivial,
}

#[derive(Clone, Debug)]
pub struct Splitting {
    pub graph: Graph,
    /// Neighbors kept by the original vertex.
    pub keep: BTreeSet<Vertex>,
    /// Neighbors moved to the new vertex.
    pub moved: BTreeSet<Vertex>,
    pub new_vertex: Vertex,
    pub kind: SplitKind,
}

/// Every splitting of `v` into `v` and a fresh vertex joined by a new edge,
/// one per unordered partition of its neighborhood. The side holding the
/// smallest neighbor stays with `v`.
pub fn vertex_splittings(g: &Graph, v: Vertex) -> Result<Vec<Splitting>> {
    let nbrs: Vec<Vertex> = g
        .neighbor_set(v)
        .ok_or(Error::MissingVertex(v))?
        .iter()
        .copied()
        .collect();
    let d = nbrs.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let new_vertex = g.max_label() + 1;
    let mut out = Vec::with_capacity(1 << (d - 1));
    // Bit 0 (smallest neighbor) always stays on the `keep` side.
    for mask in 0u32..(1 << (d - 1)) {
        let moved_mask = mask << 1;
        let keep: BTreeSet<Vertex> = (0..d)
            .filter(|i| moved_mask & (1 << i) == 0)
            .map(|i| nbrs[i])
            .collect();
        let moved: BTreeSet<Vertex> = (0..d)
            .filter(|i| moved_mask & (1 << i) != 0)
            .map(|i| nbrs[i])
            .collect();
        let kind = match keep.len().min(moved.len()) {
            0 => SplitKind::Degenerate,
            1 => SplitKind::Trivial,
            _ => SplitKind::NonTrivial,
        };
        let edges = g
            .edges()
            .filter(|e| !(e.contains(v) && moved.contains(&e.other(v).unwrap())))
            .chain(moved.iter().map(|&w| Edge::of(w, new_vertex)))
            .chain([Edge::of(v, new_vertex)]);
        let graph = Graph::new(g.vertices().chain([new_vertex]), edges)?;
        out.push(Splitting {
            graph,
            keep,
            moved,
            new_vertex,
            kind,
        });
    }
    Ok(out)
}

fn expand_cycle(m: &MinorMap, c: &Cycle) -> Result<Cycle> {
    let mut seq = Vec::new();
    for (a, b) in c.steps() {
        let path = m
            .oriented_path(a, b)
            .ok_or_else(|| Error::InvalidPair(format!("{a}-{b} is not an edge of the minor")))?;
        seq.extend_from_slice(&path[..path.len() - 1]);
    }
    Cycle::new(seq)
}

/// Pushes a disjoint cycle pair of the minor forward to the host by
/// replacing every edge with its expansion path.
pub fn psi_pair_map(m: &MinorMap, pair: &CyclePair) -> Result<CyclePair> {
    pair.check_in(m.minor())
        .map_err(|e| Error::InvalidPair(format!("{pair} is not a pair of the minor: {e}")))?;
    let [a, b] = pair.components();
    let out = CyclePair::new(expand_cycle(m, a)?, expand_cycle(m, b)?)?;
    out.check_in(m.host())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::perm::is_isomorphic;

    fn k6() -> Graph {
        complete_graph(6).unwrap()
    }

    #[test]
    fn subdivide_rejects_bad_input() {
        let g = k6();
        assert!(subdivide_edge(&g, Edge::of(1, 2), 0, 7).is_err());
        assert!(matches!(
            subdivide_edge(&g, Edge::of(1, 2), 1, 3),
            Err(Error::LabelCollision(3))
        ));
        let path = Graph::from_pairs(1..=3, &[(1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            subdivide_edge(&path, Edge::of(1, 3), 1, 4),
            Err(Error::MissingEdge(_))
        ));
    }

    #[test]
    fn subdivide_then_contract_round_trip() {
        let g = k6();
        let (h, m) = subdivide_edge(&g, Edge::of(2, 5), 3, 7).unwrap();
        assert_eq!(h.n(), 9);
        assert_eq!(h.edge_count(), 18);
        assert_eq!(m.expansion()[&Edge::of(2, 5)], vec![2, 7, 8, 9, 5]);
        let mut back = h.clone();
        for v in [7, 8, 9] {
            back = contract_edge(&back, Edge::of(2, v)).unwrap();
        }
        assert_eq!(back, g);
    }

    #[test]
    fn contract_triangle_edge_of_k6() {
        let g = contract_edge(&k6(), Edge::of(1, 2)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 10);
        assert!(is_isomorphic(&g, &complete_graph(5).unwrap()).unwrap().is_some());
        assert!(contract_edge(&g, Edge::of(1, 2)).is_err());
    }

    #[test]
    fn delta_y_inverse() {
        let q7 = delta_y(&k6(), [1, 2, 3], 7).unwrap();
        assert_eq!(q7.edge_count(), 15);
        assert_eq!(q7.n(), 7);
        assert_eq!(y_delta(&q7, 7).unwrap(), k6());
        assert!(delta_y(&q7, [1, 2, 3], 8).is_err());
        assert!(delta_y(&k6(), [1, 2, 3], 4).is_err());
        assert!(y_delta(&q7, 4).is_err());
    }

    #[test]
    fn splitting_counts_by_degree() {
        let nontrivial = |g: &Graph, v| {
            vertex_splittings(g, v)
                .unwrap()
                .iter()
                .filter(|s| s.kind == SplitKind::NonTrivial)
                .count()
        };
        // degree 3: four unordered partitions, none non-trivial
        let q7 = delta_y(&k6(), [1, 2, 3], 7).unwrap();
        let all = vertex_splittings(&q7, 7).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|s| s.kind != SplitKind::NonTrivial));
        assert_eq!(
            all.iter().filter(|s| s.kind == SplitKind::Degenerate).count(),
            1
        );
        // degree 4 in Q7: three balanced bipartitions
        assert_eq!(nontrivial(&q7, 1), 3);
        // degree 5 in K6: C(5,2)
        assert_eq!(nontrivial(&k6(), 1), 10);
        for s in vertex_splittings(&k6(), 1).unwrap() {
            assert_eq!(s.graph.edge_count(), 16);
            assert_eq!(contract_edge(&s.graph, Edge::of(1, s.new_vertex)).unwrap(), k6());
        }
    }

    #[test]
    fn identity_minor_map_fixes_pairs() {
        let g = k6();
        let m = MinorMap::identity(&g);
        let p: CyclePair = "[1 3 5]∪[2 4 6]".parse().unwrap();
        assert_eq!(psi_pair_map(&m, &p).unwrap(), p);
        assert!(m.is_identity());
    }

    #[test]
    fn minor_map_json_round_trip() {
        let (_, m) = subdivide_edge(&k6(), Edge::of(1, 6), 2, 10).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: MinorMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn into_host_requires_supergraph() {
        let (_, m) = subdivide_edge(&k6(), Edge::of(1, 6), 1, 7).unwrap();
        assert!(m.clone().into_host(complete_graph(7).unwrap()).is_ok());
        assert!(m.into_host(complete_graph(6).unwrap()).is_err());
    }
}
