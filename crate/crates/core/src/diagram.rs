//! Planar diagrams of spatial graphs with exact rational geometry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cycles::CyclePair;
use crate::error::{Error, Result};
use crate::geometry::{self, EdgeEnds, Exact, Segment, VertexSite, I128_COORD_BOUND};
use crate::graph::{Edge, Graph, Vertex};
use crate::linking::{CrossingTable, SplitCertificate, TableCrossing};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn lerp(&self, other: &Point, t: &Q) -> Point {
        Point {
            x: &self.x + (&other.x - &self.x) * t,
            y: &self.y + (&other.y - &self.y) * t,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_q(&self.x), format_q(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(Point {
            x: parse_q(&x).map_err(D::Error::custom)?,
            y: parse_q(&y).map_err(D::Error::custom)?,
        })
    }
}

/// A point on a strand: segment `segment` of the route of `edge` at parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrandPos {
    pub edge: Edge,
    pub segment: usize,
    pub t: Q,
}

impl fmt::Display for StrandPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}@{}", self.edge, self.segment, format_q(&self.t))
    }
}

impl FromStr for StrandPos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad strand position `{s}`"));
        let (edge, rest) = s.split_once('#').ok_or_else(bad)?;
        let (seg, t) = rest.split_once('@').ok_or_else(bad)?;
        Ok(StrandPos {
            edge: edge.parse()?,
            segment: seg.trim().parse().map_err(|_| bad())?,
            t: parse_q(t)?,
        })
    }
}

/// Canonical identifier of a crossing: its two strand positions in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingKey {
    pub a: StrandPos,
    pub b: StrandPos,
}

impl CrossingKey {
    pub fn new(x: StrandPos, y: StrandPos) -> Self {
        if x <= y {
            CrossingKey { a: x, b: y }
        } else {
            CrossingKey { a: y, b: x }
        }
    }

    pub fn strand(&self, side: Side) -> &StrandPos {
        match side {
            Side::First => &self.a,
            Side::Second => &self.b,
        }
    }
}

impl fmt::Display for CrossingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.a, self.b)
    }
}

impl FromStr for CrossingKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("bad crossing key `{s}`")))?;
        let (a, b): (StrandPos, StrandPos) = (a.parse()?, b.parse()?);
        let key = CrossingKey::new(a.clone(), b.clone());
        if key.a != a {
            return Err(Error::Parse(format!("crossing key `{s}` is not in canonical order")));
        }
        Ok(key)
    }
}

impl Serialize for CrossingKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CrossingKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Side::First => 0,
            Side::Second => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub key: CrossingKey,
    pub location: Point,
    pub over: Side,
    /// Sign of cross(dir a, dir b) with both edges traversed low to high.
    pub geo: i8,
}

impl Crossing {
    pub fn over_edge(&self) -> Edge {
        self.key.strand(self.over).edge
    }

    pub fn under_edge(&self) -> Edge {
        self.key.strand(self.over.other()).edge
    }

    pub fn edges(&self) -> [Edge; 2] {
        [self.key.a.edge, self.key.b.edge]
    }

    pub fn is_between(&self, e: Edge, f: Edge) -> bool {
        (self.key.a.edge == e && self.key.b.edge == f) || (self.key.a.edge == f && self.key.b.edge == e)
    }

    /// Sign when strand `a` is traversed with factor `ea` and strand `b` with `eb`.
    pub fn sign(&self, ea: i8, eb: i8) -> i8 {
        let s = ea * eb * self.geo;
        match self.over {
            Side::First => s,
            Side::Second => -s,
        }
    }

    fn over_label(&self) -> String {
        let st = self.key.strand(self.over);
        if self.key.a.edge == self.key.b.edge {
            format!("{}#{}", st.edge, st.segment)
        } else {
            st.edge.to_string()
        }
    }
}

/// Geometric crossing data before over/under information is attached.
#[derive(Clone, Debug)]
pub struct RawDiagramCrossing {
    pub key: CrossingKey,
    pub location: Point,
    pub geo: i8,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    graph: Graph,
    placement: BTreeMap<Vertex, Point>,
    routes: BTreeMap<Edge, Vec<Point>>,
    crossings: Vec<Crossing>,
    index: BTreeMap<CrossingKey, usize>,
    table: CrossingTable,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.placement == other.placement
            && self.routes == other.routes
            && self.crossings == other.crossings
    }
}

impl Diagram {
    /// Builds and validates a diagram. Missing routes are drawn straight.
    pub fn new(
        graph: Graph,
        placement: BTreeMap<Vertex, Point>,
        routes: BTreeMap<Edge, Vec<Point>>,
        over: BTreeMap<CrossingKey, Side>,
    ) -> Result<Self> {
        let (routes, raw) = analyze_geometry(&graph, &placement, routes)?;
        let found: BTreeSet<&CrossingKey> = raw.iter().map(|c| &c.key).collect();
        let missing: Vec<String> = raw
            .iter()
            .filter(|c| !over.contains_key(&c.key))
            .map(|c| c.key.to_string())
            .collect();
        let extra: Vec<String> = over
            .keys()
            .filter(|k| !found.contains(k))
            .map(|k| k.to_string())
            .collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(Error::CrossingData(format!(
                "missing over/under entries {missing:?}, entries without a crossing {extra:?}"
            )));
        }
        Ok(Self::assemble(graph, placement, routes, raw, |c| over[&c.key]))
    }

    /// Builds a diagram, choosing the over strand of every crossing with `rule`.
    pub fn with_rule(
        graph: Graph,
        placement: BTreeMap<Vertex, Point>,
        routes: BTreeMap<Edge, Vec<Point>>,
        rule: impl FnMut(&RawDiagramCrossing) -> Side,
    ) -> Result<Self> {
        let (routes, raw) = analyze_geometry(&graph, &placement, routes)?;
        Ok(Self::assemble(graph, placement, routes, raw, rule))
    }

    fn assemble(
        graph: Graph,
        placement: BTreeMap<Vertex, Point>,
        routes: BTreeMap<Edge, Vec<Point>>,
        raw: Vec<RawDiagramCrossing>,
        mut rule: impl FnMut(&RawDiagramCrossing) -> Side,
    ) -> Self {
        let crossings: Vec<Crossing> = raw
            .into_iter()
            .map(|r| {
                let over = rule(&r);
                Crossing {
                    key: r.key,
                    location: r.location,
                    over,
                    geo: r.geo,
                }
            })
            .collect();
        let index = crossings
            .iter()
            .enumerate()
            .map(|(i, c)| (c.key.clone(), i))
            .collect();
        let table = build_table(&crossings);
        Diagram {
            graph,
            placement,
            routes,
            crossings,
            index,
            table,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn placement(&self) -> &BTreeMap<Vertex, Point> {
        &self.placement
    }

    pub fn routes(&self) -> &BTreeMap<Edge, Vec<Point>> {
        &self.routes
    }

    /// All crossings, sorted by key.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, key: &CrossingKey) -> Option<&Crossing> {
        self.index.get(key).map(|&i| &self.crossings[i])
    }

    pub fn crossing_index(&self, key: &CrossingKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn table(&self) -> &CrossingTable {
        &self.table
    }

    pub fn over_map(&self) -> BTreeMap<CrossingKey, Side> {
        self.crossings.iter().map(|c| (c.key.clone(), c.over)).collect()
    }

    pub fn crossings_between(&self, e: Edge, f: Edge) -> Vec<&Crossing> {
        self.crossings.iter().filter(|c| c.is_between(e, f)).collect()
    }

    pub fn linking_number(&self, pair: &CyclePair) -> Result<i64> {
        pair.check_in(&self.graph)?;
        self.table.linking_number(pair)
    }

    pub fn split_certify(&self, pair: &CyclePair) -> Result<SplitCertificate> {
        pair.check_in(&self.graph)?;
        Ok(self.table.split_certify(pair))
    }

    pub fn inter_crossings(&self, pair: &CyclePair) -> Vec<&Crossing> {
        self.table
            .inter_crossings(pair)
            .into_iter()
            .map(|i| &self.crossings[i])
            .collect()
    }

    pub fn flip_crossing(&self, key: &CrossingKey) -> Result<Diagram> {
        let i = self
            .crossing_index(key)
            .ok_or_else(|| Error::CrossingData(format!("no crossing with key {key}")))?;
        let mut d = self.clone();
        d.crossings[i].over = d.crossings[i].over.other();
        d.table.flip(i);
        Ok(d)
    }

    pub fn flip_all<'a>(&self, keys: impl IntoIterator<Item = &'a CrossingKey>) -> Result<Diagram> {
        let mut d = self.clone();
        for k in keys {
            d = d.flip_crossing(k)?;
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }
}

fn build_table(crossings: &[Crossing]) -> CrossingTable {
    let mut occ: BTreeMap<Edge, Vec<(&StrandPos, usize, u8)>> = BTreeMap::new();
    for (i, c) in crossings.iter().enumerate() {
        occ.entry(c.key.a.edge).or_default().push((&c.key.a, i, 0));
        occ.entry(c.key.b.edge).or_default().push((&c.key.b, i, 1));
    }
    let along = occ
        .into_iter()
        .map(|(e, mut v)| {
            v.sort_by(|x, y| (x.0.segment, &x.0.t).cmp(&(y.0.segment, &y.0.t)));
            (e, v.into_iter().map(|(_, i, s)| (i, s)).collect())
        })
        .collect();
    let rows = crossings
        .iter()
        .map(|c| TableCrossing {
            edges: c.edges(),
            over: c.over.bit(),
            geo: c.geo,
        })
        .collect();
    CrossingTable::new(rows, along)
}

type Routes = BTreeMap<Edge, Vec<Point>>;

/// Normalizes routes and computes all crossings, rejecting non-generic drawings.
pub fn analyze_geometry(
    graph: &Graph,
    placement: &BTreeMap<Vertex, Point>,
    mut routes: Routes,
) -> Result<(Routes, Vec<RawDiagramCrossing>)> {
    for v in graph.vertices() {
        if !placement.contains_key(&v) {
            return Err(Error::Degenerate(format!("vertex {v} has no placement")));
        }
    }
    if let Some(v) = placement.keys().find(|v| !graph.has_vertex(**v)) {
        return Err(Error::Degenerate(format!("placement for unknown vertex {v}")));
    }
    if let Some(e) = routes.keys().find(|e| !graph.contains_edge(**e)) {
        return Err(Error::Degenerate(format!("route for non-edge {e}")));
    }
    for e in graph.edges() {
        let (p, q) = (&placement[&e.lo()], &placement[&e.hi()]);
        let r = routes.entry(e).or_insert_with(|| vec![p.clone(), q.clone()]);
        if r.len() < 2 {
            return Err(Error::Degenerate(format!("route of {e} has fewer than two points")));
        }
        if r.first() == Some(q) && r.last() == Some(p) && p != q {
            r.reverse();
        }
        if r.first() != Some(p) || r.last() != Some(q) {
            return Err(Error::Degenerate(format!(
                "route of {e} does not join the placements {p} and {q}"
            )));
        }
    }
    let scale = geometry::common_denominator(
        placement
            .values()
            .chain(routes.values().flatten())
            .flat_map(|p| [p.x.denom(), p.y.denom()]),
    );
    let scaled = |v: &Q| -> BigInt { (v * Q::from_integer(scale.clone())).to_integer() };
    let small = placement
        .values()
        .chain(routes.values().flatten())
        .all(|p| [&p.x, &p.y].iter().all(|v| scaled(v).abs() < BigInt::from(I128_COORD_BOUND)));
    let raw = if small {
        run_engine::<i128>(graph, placement, &routes, &scale, &|b| b.to_i128().expect("small"))
    } else {
        run_engine::<BigInt>(graph, placement, &routes, &scale, &|b| b.clone())
    }?;
    let mut seen: BTreeMap<&Point, &CrossingKey> = BTreeMap::new();
    for c in &raw {
        if let Some(k) = seen.insert(&c.location, &c.key) {
            return Err(Error::Degenerate(format!(
                "crossings {k} and {} meet at the same point {}",
                c.key, c.location
            )));
        }
    }
    Ok((routes, raw))
}

fn run_engine<T: Exact>(
    graph: &Graph,
    placement: &BTreeMap<Vertex, Point>,
    routes: &Routes,
    scale: &BigInt,
    conv: &dyn Fn(&BigInt) -> T,
) -> Result<Vec<RawDiagramCrossing>> {
    let sc = Q::from_integer(scale.clone());
    let pt = |p: &Point| -> [T; 2] {
        [
            conv(&(&p.x * &sc).to_integer()),
            conv(&(&p.y * &sc).to_integer()),
        ]
    };
    let vertices: Vec<VertexSite<T>> = placement
        .iter()
        .map(|(&id, p)| VertexSite { id, at: pt(p) })
        .collect();
    let edge_list: Vec<Edge> = graph.edges().collect();
    let ends: Vec<EdgeEnds> = edge_list
        .iter()
        .map(|e| EdgeEnds {
            start: e.lo(),
            end: e.hi(),
        })
        .collect();
    let mut segments = Vec::new();
    for (ei, e) in edge_list.iter().enumerate() {
        let r = &routes[e];
        for k in 0..r.len() - 1 {
            segments.push(Segment {
                edge: ei,
                index: k,
                last: k + 2 == r.len(),
                p0: pt(&r[k]),
                p1: pt(&r[k + 1]),
            });
        }
    }
    let label = |i: usize| edge_list[i].to_string();
    let raw = geometry::analyze(&vertices, &ends, &segments, &label).map_err(|m| {
        if scale.is_one() {
            Error::Degenerate(m)
        } else {
            Error::Degenerate(format!("{m} (coordinates scaled by {scale})"))
        }
    })?;
    let to_q = |p: &geometry::Param<T>| Q::new(p.num.to_big(), p.den.to_big());
    let mut out: Vec<RawDiagramCrossing> = raw
        .iter()
        .map(|c| {
            let (sa, sb) = (&segments[c.a], &segments[c.b]);
            let (ea, eb) = (edge_list[sa.edge], edge_list[sb.edge]);
            let ta = to_q(&c.ta);
            let tb = to_q(&c.tb);
            let r = &routes[&ea];
            let location = r[sa.index].lerp(&r[sa.index + 1], &ta);
            RawDiagramCrossing {
                key: CrossingKey {
                    a: StrandPos {
                        edge: ea,
                        segment: sa.index,
                        t: ta,
                    },
                    b: StrandPos {
                        edge: eb,
                        segment: sb.index,
                        t: tb,
                    },
                },
                location,
                geo: c.geo,
            }
        })
        .collect();
    out.sort_by(|x, y| x.key.cmp(&y.key));
    Ok(out)
}

struct EdgeKeyed<'a, V>(&'a BTreeMap<Edge, V>);

impl<V: Serialize> Serialize for EdgeKeyed<'_, V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

struct OverMap<'a>(&'a [Crossing]);

impl Serialize for OverMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for c in self.0 {
            m.serialize_entry(&c.key.to_string(), &c.over_label())?;
        }
        m.end()
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("graph", &self.graph)?;
        m.serialize_entry("placement", &self.placement)?;
        m.serialize_entry("routes", &EdgeKeyed(&self.routes))?;
        m.serialize_entry("over", &OverMap(&self.crossings))?;
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    graph: Graph,
    placement: BTreeMap<Vertex, Point>,
    #[serde(default)]
    routes: BTreeMap<String, Vec<Point>>,
    #[serde(default)]
    over: BTreeMap<String, String>,
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        let mut routes = BTreeMap::new();
        for (k, v) in j.routes {
            routes.insert(k.parse::<Edge>()?, v);
        }
        let mut over = BTreeMap::new();
        for (k, v) in j.over {
            let key: CrossingKey = k.parse()?;
            let side = parse_over(&key, &v)?;
            over.insert(key, side);
        }
        Diagram::new(j.graph, j.placement, routes, over)
    }
}

fn parse_over(key: &CrossingKey, v: &str) -> Result<Side> {
    let bad = || Error::CrossingData(format!("over value `{v}` does not name a strand of {key}"));
    let (edge, seg) = match v.split_once('#') {
        Some((e, s)) => (e.parse::<Edge>()?, Some(s.trim().parse::<usize>().map_err(|_| bad())?)),
        None => (v.parse::<Edge>()?, None),
    };
    let matches = |p: &StrandPos| p.edge == edge && seg.is_none_or(|s| s == p.segment);
    match (matches(&key.a), matches(&key.b)) {
        (true, false) => Ok(Side::First),
        (false, true) => Ok(Side::Second),
        _ => Err(bad()),
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        Diagram::try_from(j).map_err(D::Error::custom)
    }
}

/// Axis-aligned bounding box of a point set.
pub fn bounding_box(points: impl IntoIterator<Item = Point>) -> Option<(Point, Point)> {
    let mut it = points.into_iter();
    let first = it.next()?;
    let (mut lo, mut hi) = (first.clone(), first);
    for p in it {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x;
        }
        if p.y > hi.y {
            hi.y = p.y;
        }
    }
    Some((lo, hi))
}
