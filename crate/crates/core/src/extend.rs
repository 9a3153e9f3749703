//! Lifting a diagram of a minor to a diagram of its host graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{analyze_geometry, bounding_box, q, q_frac, Crossing, Diagram, Point, Side, Q};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::minor::MinorMap;

/// Number of bent re-routings tried for a fresh edge before giving up.
pub const ROUTING_ATTEMPTS: i64 = 48;

type Origin = (Edge, usize);

/// Draws the host of `m` around the diagram `d` of its minor.
///
/// Subdivision vertices are placed on the first segment of the subdivided
/// route, before its first crossing. Host edges outside the image are drawn
/// afterwards in edge order, each passing under everything drawn before it.
pub fn extend_diagram(d: &Diagram, m: &MinorMap) -> Result<Diagram> {
    if d.graph() != m.minor() {
        return Err(Error::HostMismatch(
            "diagram is not drawn on the minor of the map".into(),
        ));
    }
    let host = m.host();
    let mut placement: BTreeMap<Vertex, Point> = BTreeMap::new();
    for (v, w) in m.vertex_image() {
        placement.insert(*w, d.placement()[v].clone());
    }
    let mut routes: BTreeMap<Edge, Vec<Point>> = BTreeMap::new();
    let mut origin: BTreeMap<Edge, Vec<Origin>> = BTreeMap::new();
    for (&e, path) in m.expansion() {
        let r = &d.routes()[&e];
        let k = path.len() - 2;
        let mut pieces: Vec<(Vec<Point>, Vec<Origin>)> = Vec::new();
        if k == 0 {
            pieces.push((r.clone(), (0..r.len() - 1).map(|i| (e, i)).collect()));
        } else {
            let t_min = d
                .crossings()
                .iter()
                .flat_map(|c| [&c.key.a, &c.key.b])
                .filter(|s| s.edge == e && s.segment == 0)
                .map(|s| s.t.clone())
                .min()
                .unwrap_or_else(|| q(1));
            let cut: Vec<Point> = (1..=k)
                .map(|j| r[0].lerp(&r[1], &(&t_min * q_frac(j as i64, k as i64 + 1))))
                .collect();
            for (j, p) in cut.iter().enumerate() {
                placement.insert(path[j + 1], p.clone());
            }
            let mut prev = r[0].clone();
            for p in &cut {
                pieces.push((vec![prev.clone(), p.clone()], vec![(e, 0)]));
                prev = p.clone();
            }
            let mut last = vec![prev];
            last.extend(r[1..].iter().cloned());
            pieces.push((last, (0..r.len() - 1).map(|i| (e, i)).collect()));
        }
        for (i, (mut pts, mut orig)) in pieces.into_iter().enumerate() {
            let he = Edge::of(path[i], path[i + 1]);
            if he.lo() != path[i] {
                pts.reverse();
                orig.reverse();
            }
            routes.insert(he, pts);
            origin.insert(he, orig);
        }
    }
    place_remaining(host, &mut placement)?;
    let fresh: Vec<Edge> = host.edges().filter(|e| !origin.contains_key(e)).collect();
    let mut drawn: BTreeSet<Edge> = origin.keys().copied().collect();
    for &f in &fresh {
        let route = route_fresh_edge(host, &placement, &routes, &drawn, f)?;
        routes.insert(f, route);
        drawn.insert(f);
    }
    let old: BTreeMap<&Point, &Crossing> = d.crossings().iter().map(|c| (&c.location, c)).collect();
    let mut failure = None;
    let out = Diagram::with_rule(host.clone(), placement, routes, |c| {
        let oa = origin.get(&c.key.a.edge).map(|o| o[c.key.a.segment]);
        let ob = origin.get(&c.key.b.edge).map(|o| o[c.key.b.segment]);
        match (oa, ob) {
            (Some(oa), Some(ob)) => {
                let Some(oc) = old.get(&c.location) else {
                    failure = Some(format!("crossing at {} has no counterpart", c.location));
                    return Side::First;
                };
                let s = oc.key.strand(oc.over);
                let over = (s.edge, s.segment);
                if oa == over {
                    Side::First
                } else if ob == over {
                    Side::Second
                } else {
                    failure = Some(format!("crossing at {} changed strands", c.location));
                    Side::First
                }
            }
            (Some(_), None) => Side::First,
            (None, Some(_)) => Side::Second,
            (None, None) => {
                if c.key.a.edge <= c.key.b.edge {
                    Side::First
                } else {
                    Side::Second
                }
            }
        }
    })?;
    if let Some(msg) = failure {
        return Err(Error::CrossingData(msg));
    }
    Ok(out)
}

fn place_remaining(host: &Graph, placement: &mut BTreeMap<Vertex, Point>) -> Result<()> {
    let missing: Vec<Vertex> = host.vertices().filter(|v| !placement.contains_key(v)).collect();
    if missing.is_empty() {
        return Ok(());
    }
    let (lo, hi) = bounding_box(placement.values().cloned()).unwrap_or((Point::int(0, 0), Point::int(1, 1)));
    let width = &hi.x - &lo.x + q(1);
    for (j, v) in missing.into_iter().enumerate() {
        let j = j as i64 + 1;
        let x = &lo.x + &width * q_frac(j, j + 2);
        let y = &lo.y - q(j * j + 1) * (&width + q(1));
        placement.insert(v, Point::new(x, y));
    }
    Ok(())
}

fn route_fresh_edge(
    host: &Graph,
    placement: &BTreeMap<Vertex, Point>,
    routes: &BTreeMap<Edge, Vec<Point>>,
    drawn: &BTreeSet<Edge>,
    f: Edge,
) -> Result<Vec<Point>> {
    let (p, r) = (&placement[&f.lo()], &placement[&f.hi()]);
    let partial = Graph::new(host.vertices(), drawn.iter().copied().chain([f]))?;
    let dir = Point::new(&r.x - &p.x, &r.y - &p.y);
    let perp = Point::new(-dir.y.clone(), dir.x.clone());
    let mid = p.lerp(r, &q_frac(1, 2));
    let mut last_err = None;
    for attempt in 0..=ROUTING_ATTEMPTS {
        let route = if attempt == 0 {
            vec![p.clone(), r.clone()]
        } else {
            let k = (attempt + 1) / 2;
            let s: Q = q_frac(if attempt % 2 == 1 { k } else { -k }, 11);
            let tilt = &s * q_frac(1, 13);
            let bend = Point::new(
                &mid.x + &perp.x * &s + &dir.x * &tilt,
                &mid.y + &perp.y * &s + &dir.y * &tilt,
            );
            vec![p.clone(), bend, r.clone()]
        };
        let mut trial: BTreeMap<Edge, Vec<Point>> = drawn.iter().map(|e| (*e, routes[e].clone())).collect();
        trial.insert(f, route.clone());
        match analyze_geometry(&partial, placement, trial) {
            Ok(_) => return Ok(route),
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::Degenerate(format!(
        "could not route fresh edge {f}: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}
