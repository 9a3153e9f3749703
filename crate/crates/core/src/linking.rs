//! Linking numbers and split certificates from abstract crossing data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cycles::CyclePair;
use crate::error::{Error, Result};
use crate::graph::Edge;

/// A crossing reduced to what linking computations need.
///
/// `geo` is the sign of cross(d0, d1) where `d0`, `d1` are the directions of
/// the two strands when their edges are traversed from lower to higher label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCrossing {
    pub edges: [Edge; 2],
    pub over: u8,
    pub geo: i8,
}

/// Crossings of a diagram together with their order along every edge.
#[derive(Clone, Debug, Default)]
pub struct CrossingTable {
    crossings: Vec<TableCrossing>,
    along: BTreeMap<Edge, Vec<(usize, u8)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum SplitCertificate {
    ZeroInterCrossings,
    R2Reduced { steps: usize },
    Unknown,
}

impl SplitCertificate {
    pub fn is_split(&self) -> bool {
        !matches!(self, SplitCertificate::Unknown)
    }
}

impl std::fmt::Display for SplitCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SplitCertificate::ZeroInterCrossings => write!(f, "zero-inter-crossings"),
            SplitCertificate::R2Reduced { steps } => write!(f, "r2-reduced({steps})"),
            SplitCertificate::Unknown => write!(f, "unknown"),
        }
    }
}

struct Orientation {
    of: BTreeMap<Edge, (usize, i8)>,
}

impl Orientation {
    fn new(pair: &CyclePair) -> Self {
        let mut of = BTreeMap::new();
        for (k, c) in pair.components().iter().enumerate() {
            for (a, b) in c.steps() {
                of.insert(Edge::of(a, b), (k, if a < b { 1 } else { -1 }));
            }
        }
        Orientation { of }
    }

    fn get(&self, e: Edge) -> Option<(usize, i8)> {
        self.of.get(&e).copied()
    }
}

impl CrossingTable {
    /// `along[e]` lists `(crossing index, side)` in the order met when
    /// walking `e` from its lower to its higher endpoint.
    pub fn new(crossings: Vec<TableCrossing>, along: BTreeMap<Edge, Vec<(usize, u8)>>) -> Self {
        CrossingTable { crossings, along }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn crossings(&self) -> &[TableCrossing] {
        &self.crossings
    }

    pub fn flip(&mut self, i: usize) {
        self.crossings[i].over ^= 1;
    }

    fn signed(&self, or: &Orientation, i: usize) -> Option<(i8, usize)> {
        let c = &self.crossings[i];
        let (k0, e0) = or.get(c.edges[0])?;
        let (k1, e1) = or.get(c.edges[1])?;
        if k0 == k1 {
            return None;
        }
        let s = e0 * e1 * c.geo;
        let over_comp = if c.over == 0 { k0 } else { k1 };
        Some((if c.over == 0 { s } else { -s }, over_comp))
    }

    /// Indices of crossings between the two components of `pair`.
    pub fn inter_crossings(&self, pair: &CyclePair) -> Vec<usize> {
        let or = Orientation::new(pair);
        (0..self.crossings.len())
            .filter(|&i| self.signed(&or, i).is_some())
            .collect()
    }

    /// Sign of crossing `i` for `pair`, if it is an inter-component crossing.
    pub fn crossing_sign(&self, pair: &CyclePair, i: usize) -> Option<i8> {
        self.signed(&Orientation::new(pair), i).map(|(s, _)| s)
    }

    pub fn linking_number(&self, pair: &CyclePair) -> Result<i64> {
        let or = Orientation::new(pair);
        let sum: i64 = (0..self.crossings.len())
            .filter_map(|i| self.signed(&or, i))
            .map(|(s, _)| s as i64)
            .sum();
        if sum % 2 != 0 {
            return Err(Error::CrossingData(format!(
                "odd signed crossing sum {sum} for {pair}"
            )));
        }
        Ok(sum / 2)
    }

    fn component_walk(&self, pair: &CyclePair, k: usize, member: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let mut seq = Vec::new();
        for (a, b) in pair.components()[k].steps() {
            let e = Edge::of(a, b);
            let Some(occ) = self.along.get(&e) else { continue };
            let keep = occ.iter().map(|&(i, _)| i).filter(|&i| member(i));
            if a < b {
                seq.extend(keep);
            } else {
                let v: Vec<usize> = keep.collect();
                seq.extend(v.into_iter().rev());
            }
        }
        seq
    }

    /// Greedy search for cancellable Reidemeister II pairs between the two
    /// components. Two inter-component crossings cancel when they are
    /// consecutive along both components (counting every crossing of the
    /// sublink), the same component passes over at both, and their signs
    /// are opposite.
    pub fn split_certify(&self, pair: &CyclePair) -> SplitCertificate {
        let or = Orientation::new(pair);
        let info: BTreeMap<usize, (i8, usize)> = (0..self.crossings.len())
            .filter_map(|i| self.signed(&or, i).map(|s| (i, s)))
            .collect();
        if info.is_empty() {
            return SplitCertificate::ZeroInterCrossings;
        }
        let in_sublink = |i: usize| {
            let c = &self.crossings[i];
            or.get(c.edges[0]).is_some() && or.get(c.edges[1]).is_some()
        };
        let mut a = self.component_walk(pair, 0, &in_sublink);
        let mut b = self.component_walk(pair, 1, &in_sublink);
        let mut alive = info.len();
        let mut steps = 0;
        'outer: while alive > 0 {
            let n = a.len();
            for p in 0..n {
                let (c1, c2) = (a[p], a[(p + 1) % n]);
                if c1 == c2 {
                    continue;
                }
                let (Some(&(s1, o1)), Some(&(s2, o2))) = (info.get(&c1), info.get(&c2)) else {
                    continue;
                };
                if o1 != o2 || s1 + s2 != 0 {
                    continue;
                }
                if !cyclically_adjacent(&b, c1, c2) {
                    continue;
                }
                a.retain(|&x| x != c1 && x != c2);
                b.retain(|&x| x != c1 && x != c2);
                alive -= 2;
                steps += 1;
                continue 'outer;
            }
            return SplitCertificate::Unknown;
        }
        SplitCertificate::R2Reduced { steps }
    }
}

fn cyclically_adjacent(seq: &[usize], x: usize, y: usize) -> bool {
    let n = seq.len();
    let Some(i) = seq.iter().position(|&v| v == x) else {
        return false;
    };
    seq[(i + 1) % n] == y || seq[(i + n - 1) % n] == y
}
