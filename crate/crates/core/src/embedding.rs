//! Straight-line embeddings in 3-space and their projections.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::CyclePair;
use crate::diagram::{Diagram, Point, Side};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

pub const COORD_RANGE: i64 = 1_000_000;
pub const MAX_RETRIES: u64 = 64;
/// Largest accepted coordinate magnitude; keeps all predicates inside `i128`.
pub const COORD_LIMIT: i64 = 1_000_000_000;

/// Vertex coordinates of a straight-line spatial embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearEmbedding {
    graph: Graph,
    coordinates: BTreeMap<Vertex, [i64; 3]>,
}

pub fn mix_seed(a: u64, b: u64) -> u64 {
    let mut x = a ^ b.wrapping_mul(0x9e3779b97f4a7c15).rotate_left(17);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn sub(a: [i64; 3], b: [i64; 3]) -> [i128; 3] {
    [
        (a[0] - b[0]) as i128,
        (a[1] - b[1]) as i128,
        (a[2] - b[2]) as i128,
    ]
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl LinearEmbedding {
    pub fn new(graph: Graph, coordinates: BTreeMap<Vertex, [i64; 3]>) -> Result<Self> {
        if graph.vertices().any(|v| !coordinates.contains_key(&v)) || coordinates.len() != graph.n() {
            return Err(Error::Embedding("coordinates must cover exactly the vertices".into()));
        }
        if coordinates.values().flatten().any(|c| c.abs() > COORD_LIMIT) {
            return Err(Error::Embedding(format!("coordinates must lie within ±{COORD_LIMIT}")));
        }
        let e = LinearEmbedding { graph, coordinates };
        e.check_general_position()?;
        Ok(e)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coordinates(&self) -> &BTreeMap<Vertex, [i64; 3]> {
        &self.coordinates
    }

    pub fn coord(&self, v: Vertex) -> [i64; 3] {
        self.coordinates[&v]
    }

    /// No three vertices collinear and no two disjoint edges meeting.
    pub fn check_general_position(&self) -> Result<()> {
        let vs: Vec<(Vertex, [i64; 3])> = self.coordinates.iter().map(|(&v, &c)| (v, c)).collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                for k in j + 1..vs.len() {
                    let c = cross(sub(vs[j].1, vs[i].1), sub(vs[k].1, vs[i].1));
                    if c == [0, 0, 0] {
                        return Err(Error::Embedding(format!(
                            "vertices {}, {}, {} are collinear",
                            vs[i].0, vs[j].0, vs[k].0
                        )));
                    }
                }
            }
        }
        let edges: Vec<Edge> = self.graph.edges().collect();
        for (i, e) in edges.iter().enumerate() {
            for f in &edges[i + 1..] {
                if !e.is_disjoint_from(f) {
                    continue;
                }
                let [a, b, c, d] = [e.lo(), e.hi(), f.lo(), f.hi()].map(|v| self.coord(v));
                if segments_meet(a, b, c, d) {
                    return Err(Error::Embedding(format!("edges {e} and {f} intersect")));
                }
            }
        }
        Ok(())
    }
}

/// Whether segments `ab` and `cd` share a point (both non-degenerate).
fn segments_meet(a: [i64; 3], b: [i64; 3], c: [i64; 3], d: [i64; 3]) -> bool {
    let n = cross(sub(b, a), sub(c, a));
    if dot(n, sub(d, a)) != 0 {
        return false;
    }
    if n == [0, 0, 0] {
        let m = cross(sub(b, a), sub(d, a));
        if m == [0, 0, 0] {
            return true;
        }
        return segments_meet(a, b, d, c);
    }
    let k = (0..3).max_by_key(|&i| n[i].abs()).expect("three axes");
    let drop = |p: [i64; 3]| -> [i128; 2] {
        let q: Vec<i128> = (0..3).filter(|&i| i != k).map(|i| p[i] as i128).collect();
        [q[0], q[1]]
    };
    let [a, b, c, d] = [a, b, c, d].map(drop);
    let orient = |p: [i128; 2], q: [i128; 2], r: [i128; 2]| {
        ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).signum()
    };
    let within = |p: [i128; 2], q: [i128; 2], r: [i128; 2]| {
        (0..2).all(|i| p[i].min(q[i]) <= r[i] && r[i] <= p[i].max(q[i]))
    };
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within(a, b, c))
        || (o2 == 0 && within(a, b, d))
        || (o3 == 0 && within(c, d, a))
        || (o4 == 0 && within(c, d, b))
}

/// Samples an embedding with coordinates uniform in `[-10^6, 10^6]^3`.
pub fn random_linear_embedding(g: &Graph, seed: u64) -> Result<LinearEmbedding> {
    for retry in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, retry));
        let coordinates = g
            .vertices()
            .map(|v| {
                let c = [(); 3].map(|_| rng.random_range(-COORD_RANGE..=COORD_RANGE));
                (v, c)
            })
            .collect();
        if let Ok(e) = LinearEmbedding::new(g.clone(), coordinates) {
            return Ok(e);
        }
    }
    Err(Error::Embedding(format!(
        "no embedding in general position after {MAX_RETRIES} retries (seed {seed})"
    )))
}

/// Fixed sequence of projection directions tried in order.
pub const PROJECTION_DIRECTIONS: [[i64; 3]; 12] = [
    [0, 0, 1],
    [1, 0, 0],
    [0, 1, 0],
    [1, 1, 1],
    [1, 2, 3],
    [3, 1, 2],
    [2, 3, 1],
    [1, -1, 2],
    [2, 1, -1],
    [-1, 2, 1],
    [1, 3, -2],
    [3, -2, 1],
];

fn frame(d: [i64; 3]) -> Result<([i128; 3], [i128; 3], [i128; 3])> {
    if d == [0, 0, 0] {
        return Err(Error::NonGenericDirection(d, "zero vector".into()));
    }
    let dd = [d[0] as i128, d[1] as i128, d[2] as i128];
    let u = if d[0] == 0 && d[1] == 0 {
        [1, 0, 0]
    } else {
        [-dd[1], dd[0], 0]
    };
    let w = cross(dd, u);
    Ok((u, w, dd))
}

/// Orthogonal projection along `direction`; the viewer sits at `+direction`.
pub fn project_to_diagram(e: &LinearEmbedding, direction: [i64; 3]) -> Result<Diagram> {
    let (u, w, d) = frame(direction)?;
    let p3 = |v: Vertex| {
        let c = e.coord(v);
        [c[0] as i128, c[1] as i128, c[2] as i128]
    };
    let placement: BTreeMap<Vertex, Point> = e
        .graph
        .vertices()
        .map(|v| {
            let p = p3(v);
            let x = i64::try_from(dot(p, u)).expect("projected coordinate fits");
            let y = i64::try_from(dot(p, w)).expect("projected coordinate fits");
            (v, Point::int(x, y))
        })
        .collect();
    let height = |v: Vertex| BigInt::from(dot(p3(v), d));
    let mut failure = None;
    let diagram = Diagram::with_rule(e.graph.clone(), placement, BTreeMap::new(), |c| {
        let h = |edge: Edge, t: &num_rational::BigRational| {
            let h0 = num_rational::BigRational::from_integer(height(edge.lo()));
            let h1 = num_rational::BigRational::from_integer(height(edge.hi()));
            &h0 + (h1 - &h0) * t
        };
        let ha = h(c.key.a.edge, &c.key.a.t);
        let hb = h(c.key.b.edge, &c.key.b.t);
        if ha == hb {
            failure = Some(format!("strands meet in space at {}", c.location));
        }
        if ha > hb {
            Side::First
        } else {
            Side::Second
        }
    })
    .map_err(|err| Error::NonGenericDirection(direction, err.to_string()))?;
    if let Some(msg) = failure {
        return Err(Error::NonGenericDirection(direction, msg));
    }
    Ok(diagram)
}

/// Projects along the first direction of the fixed sequence that is generic.
pub fn first_generic_projection(e: &LinearEmbedding) -> Result<([i64; 3], Diagram)> {
    let mut last = None;
    for d in PROJECTION_DIRECTIONS {
        match project_to_diagram(e, d) {
            Ok(diag) => return Ok((d, diag)),
            Err(err) => last = Some(err),
        }
    }
    Err(last.expect("direction list is non-empty"))
}

pub fn linking_number_linear(e: &LinearEmbedding, pair: &CyclePair) -> Result<i64> {
    pair.check_in(&e.graph)?;
    let (_, d) = first_generic_projection(e)?;
    d.linking_number(pair)
}
