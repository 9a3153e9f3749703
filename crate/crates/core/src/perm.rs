//! Vertex permutations, automorphism groups and isomorphism search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycles::CyclePair;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Largest vertex count accepted by the backtracking searches.
pub const SEARCH_LIMIT: usize = 12;

/// A bijection on a finite set of vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexPermutation {
    map: BTreeMap<Vertex, Vertex>,
}

impl VertexPermutation {
    pub fn new(map: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        let domain: BTreeSet<_> = map.keys().collect();
        let image: BTreeSet<_> = map.values().collect();
        if domain != image {
            return Err(Error::Permutation(
                "mapping is not a bijection of its domain".into(),
            ));
        }
        Ok(Self { map })
    }

    pub fn identity(domain: impl IntoIterator<Item = Vertex>) -> Self {
        Self {
            map: domain.into_iter().map(|v| (v, v)).collect(),
        }
    }

    /// Parses cycle notation such as `(1 2 3)(4 5 6)` over `domain`; labels
    /// not mentioned are fixed. `()` or an empty string is the identity.
    pub fn from_cycles(notation: &str, domain: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut map: BTreeMap<Vertex, Vertex> = domain.into_iter().map(|v| (v, v)).collect();
        let mut seen = BTreeSet::new();
        for chunk in notation.split('(').skip(1) {
            let body = chunk
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{notation}`")))?
                .0;
            let labels = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<Vertex>()
                        .map_err(|_| Error::Parse(format!("bad label `{t}` in `{notation}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            for (i, &v) in labels.iter().enumerate() {
                if !map.contains_key(&v) {
                    return Err(Error::Permutation(format!("label {v} outside the domain")));
                }
                if !seen.insert(v) {
                    return Err(Error::Permutation(format!("label {v} repeated in `{notation}`")));
                }
                map.insert(v, labels[(i + 1) % labels.len()]);
            }
        }
        Ok(Self { map })
    }

    pub fn apply(&self, v: Vertex) -> Option<Vertex> {
        self.map.get(&v).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.map.keys().copied()
    }

    pub fn mapping(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let map = other
            .map
            .iter()
            .map(|(&v, &w)| {
                self.apply(w)
                    .map(|x| (v, x))
                    .ok_or(Error::Permutation(format!("{w} outside the domain")))
            })
            .collect::<Result<_>>()?;
        Self::new(map)
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// True when the domain is exactly the vertex set and edges map onto edges.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.map.keys().copied().eq(g.vertices())
            && g.edges().all(|e| match (self.apply(e.lo()), self.apply(e.hi())) {
                (Some(a), Some(b)) => g.has_edge(a, b),
                _ => false,
            })
    }

    pub fn image_edge(&self, e: Edge) -> Option<Edge> {
        Some(Edge::of(self.apply(e.lo())?, self.apply(e.hi())?))
    }

    /// Cycle notation with fixed points omitted; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = BTreeSet::new();
        let mut out = String::new();
        for &start in self.map.keys() {
            if seen.contains(&start) || self.map[&start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut v = self.map[&start];
            while v != start {
                seen.insert(v);
                cyc.push(v);
                v = self.map[&v];
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl Serialize for VertexPermutation {
    /// Serialized as `[[v, σ(v)], ...]` in increasing `v`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[Vertex; 2]> = self.map.iter().map(|(&a, &b)| [a, b]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[Vertex; 2]>::deserialize(d)?;
        let n = pairs.len();
        let map: BTreeMap<_, _> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
        if map.len() != n {
            return Err(serde::de::Error::custom("permutation lists a label twice"));
        }
        VertexPermutation::new(map).map_err(serde::de::Error::custom)
    }
}

/// Image of a cycle pair under `perm`, in canonical form.
pub fn apply_permutation(perm: &VertexPermutation, pair: &CyclePair) -> Result<CyclePair> {
    pair.relabeled(|v| perm.apply(v))
}

/// Closure of the generators under composition (breadth-first, so the order
/// of the result is deterministic and starts with the identity).
pub fn generate_group(
    generators: &[VertexPermutation],
    domain: impl IntoIterator<Item = Vertex>,
) -> Result<Vec<VertexPermutation>> {
    let id = VertexPermutation::identity(domain);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p)?;
            if seen.insert(q.clone()) {
                order.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(order)
}

fn check_size(what: &'static str, g: &Graph) -> Result<()> {
    if g.n() > SEARCH_LIMIT {
        return Err(Error::SizeBound {
            what,
            size: g.n(),
            limit: SEARCH_LIMIT,
        });
    }
    Ok(())
}

/// Vertex invariant used for pruning: degree plus sorted neighbor degrees.
fn invariants(g: &Graph) -> BTreeMap<Vertex, (usize, Vec<usize>)> {
    g.vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (v, (g.degree(v), nd))
        })
        .collect()
}

/// Backtracking search for structure-preserving bijections `g -> h`. Calls
/// `found` for each; stops early when it returns `false`.
fn search_isomorphisms(g: &Graph, h: &Graph, mut found: impl FnMut(&VertexPermutation) -> bool) {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return;
    }
    let inv_g = invariants(g);
    let inv_h = invariants(h);
    let mut cg: Vec<_> = inv_g.values().cloned().collect();
    let mut ch: Vec<_> = inv_h.values().cloned().collect();
    cg.sort();
    ch.sort();
    if cg != ch {
        return;
    }

    // Visit g's vertices in BFS order from high-degree vertices so each new
    // vertex has mapped neighbors to check against.
    let mut order: Vec<Vertex> = Vec::with_capacity(g.n());
    let mut placed = BTreeSet::new();
    let mut by_degree: Vec<Vertex> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for &root in &by_degree {
        if placed.contains(&root) {
            continue;
        }
        let mut q = VecDeque::from([root]);
        placed.insert(root);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if placed.insert(w) {
                    q.push_back(w);
                }
            }
        }
    }

    let h_vertices: Vec<Vertex> = h.vertices().collect();
    let mut map: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();

    fn rec(
        k: usize,
        order: &[Vertex],
        g: &Graph,
        h: &Graph,
        h_vertices: &[Vertex],
        inv_g: &BTreeMap<Vertex, (usize, Vec<usize>)>,
        inv_h: &BTreeMap<Vertex, (usize, Vec<usize>)>,
        map: &mut BTreeMap<Vertex, Vertex>,
        used: &mut BTreeSet<Vertex>,
        found: &mut dyn FnMut(&VertexPermutation) -> bool,
    ) -> bool {
        if k == order.len() {
            return found(&VertexPermutation { map: map.clone() });
        }
        let v = order[k];
        for &w in h_vertices {
            if used.contains(&w) || inv_g[&v] != inv_h[&w] {
                continue;
            }
            let consistent = map
                .iter()
                .all(|(&a, &b)| g.has_edge(a, v) == h.has_edge(b, w));
            if !consistent {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            let go_on = rec(k + 1, order, g, h, h_vertices, inv_g, inv_h, map, used, found);
            map.remove(&v);
            used.remove(&w);
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(
        0, &order, g, h, &h_vertices, &inv_g, &inv_h, &mut map, &mut used, &mut found,
    );
}

/// The full automorphism group of `g` (at most [`SEARCH_LIMIT`] vertices),
/// sorted.
pub fn automorphism_group(g: &Graph) -> Result<Vec<VertexPermutation>> {
    check_size("automorphism search", g)?;
    let mut out = Vec::new();
    search_isomorphisms(g, g, |p| {
        out.push(p.clone());
        true
    });
    out.sort();
    Ok(out)
}

/// A witness isomorphism `g -> h`, if one exists. The returned permutation
/// maps labels of `g` to labels of `h`.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<VertexPermutation>> {
    check_size("isomorphism search", g)?;
    check_size("isomorphism search", h)?;
    let mut witness = None;
    search_isomorphisms(g, h, |p| {
        witness = Some(p.clone());
        false
    });
    Ok(witness)
}
