use std::collections::BTreeMap;

use num_traits::Signed;

use linkset_core::assets::{certificate_bundle, witness_diagram};
use linkset_core::catalog::{default_lambda, GRAPH_NAMES};
use linkset_core::diagram::{q_frac, Q};
use linkset_core::{CyclePair, Diagram, Edge, Graph, Point, Side, SplitCertificate};

fn two_triangles() -> Graph {
    Graph::from_pairs(1..=6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap()
}

/// Triangle 456 starts inside triangle 123 and leaves it through edge 2-3 twice.
fn hopf_placement() -> BTreeMap<u32, Point> {
    [(1, (0, 0)), (2, (4, 0)), (3, (2, 3)), (4, (2, 1)), (5, (6, 1)), (6, (4, 4))]
        .into_iter()
        .map(|(v, (x, y))| (v, Point::int(x, y)))
        .collect()
}

fn hopf_pair() -> CyclePair {
    "[1 2 3]∪[4 5 6]".parse().unwrap()
}

fn drawn(rule: impl FnMut(&linkset_core::diagram::RawDiagramCrossing) -> Side) -> Diagram {
    Diagram::with_rule(two_triangles(), hopf_placement(), BTreeMap::new(), rule).unwrap()
}

fn first_is(edge: Edge) -> impl FnMut(&linkset_core::diagram::RawDiagramCrossing) -> Side {
    move |c| if c.key.a.edge == edge { Side::First } else { Side::Second }
}

#[test]
fn tree_has_no_crossings() {
    let g = Graph::from_pairs(1..=4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
    let place = [(1, (0, 0)), (2, (1, 0)), (3, (0, 1)), (4, (-1, -1))]
        .into_iter()
        .map(|(v, (x, y))| (v, Point::int(x, y)))
        .collect();
    let d = Diagram::new(g, place, BTreeMap::new(), BTreeMap::new()).unwrap();
    assert!(d.crossings().is_empty());
}

#[test]
fn hopf_diagram_links_once() {
    let mut alternate = 0;
    let d = drawn(|_| {
        alternate += 1;
        if alternate == 1 {
            Side::First
        } else {
            Side::Second
        }
    });
    assert_eq!(d.crossings().len(), 2);
    let p = hopf_pair();
    let lk = d.linking_number(&p).unwrap();
    assert_eq!(lk.abs(), 1);
    assert_eq!(d.split_certify(&p).unwrap(), SplitCertificate::Unknown);
    let both = d.flip_all(d.crossings().iter().map(|c| &c.key)).unwrap();
    assert_eq!(both.linking_number(&p).unwrap(), -lk);
    let one = d.flip_crossing(&d.crossings()[0].key).unwrap();
    assert_eq!(one.linking_number(&p).unwrap(), 0);
    let twice = one.flip_crossing(&d.crossings()[0].key).unwrap();
    assert_eq!(twice, d);
}

#[test]
fn same_strand_over_cancels_by_r2() {
    let d = drawn(first_is(Edge::of(2, 3)));
    let p = hopf_pair();
    assert_eq!(d.linking_number(&p).unwrap(), 0);
    assert_eq!(d.split_certify(&p).unwrap(), SplitCertificate::R2Reduced { steps: 1 });
}

#[test]
fn separated_components_have_zero_inter_crossings() {
    let mut place = hopf_placement();
    for v in 4..=6 {
        let p = place.get_mut(&v).unwrap();
        p.x += Q::from_integer(20.into());
    }
    let d = Diagram::new(two_triangles(), place, BTreeMap::new(), BTreeMap::new()).unwrap();
    assert_eq!(d.split_certify(&hopf_pair()).unwrap(), SplitCertificate::ZeroInterCrossings);
    assert_eq!(d.linking_number(&hopf_pair()).unwrap(), 0);
}

#[test]
fn degenerate_drawings_are_rejected() {
    // Three strands through the origin.
    let g = Graph::from_pairs(1..=6, &[(1, 2), (3, 4), (5, 6)]).unwrap();
    let place = [(1, (-1, 0)), (2, (1, 0)), (3, (0, -1)), (4, (0, 1)), (5, (-1, -1)), (6, (1, 1))]
        .into_iter()
        .map(|(v, (x, y))| (v, Point::int(x, y)))
        .collect();
    assert!(Diagram::with_rule(g.clone(), place, BTreeMap::new(), |_| Side::First).is_err());
    // A vertex lying on a foreign edge.
    let place = [(1, (-1, 0)), (2, (1, 0)), (3, (0, 0)), (4, (0, 1)), (5, (5, 5)), (6, (6, 5))]
        .into_iter()
        .map(|(v, (x, y))| (v, Point::int(x, y)))
        .collect();
    assert!(Diagram::with_rule(g.clone(), place, BTreeMap::new(), |_| Side::First).is_err());
    // Collinear overlap.
    let place = [(1, (0, 0)), (2, (2, 0)), (3, (1, 0)), (4, (3, 0)), (5, (5, 5)), (6, (6, 5))]
        .into_iter()
        .map(|(v, (x, y))| (v, Point::int(x, y)))
        .collect();
    assert!(Diagram::with_rule(g, place, BTreeMap::new(), |_| Side::First).is_err());
}

#[test]
fn over_map_must_be_exact() {
    let d = drawn(|_| Side::First);
    let mut over = d.over_map();
    let routes = BTreeMap::new();
    assert!(Diagram::new(two_triangles(), hopf_placement(), routes.clone(), over.clone()).is_ok());
    let k = over.keys().next().unwrap().clone();
    over.remove(&k);
    assert!(Diagram::new(two_triangles(), hopf_placement(), routes, over).is_err());
}

#[test]
fn json_round_trip_and_key_format() {
    let d = drawn(first_is(Edge::of(2, 3)));
    let text = d.to_json();
    let back: Diagram = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    assert_eq!(back.to_json(), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for (key, over) in v["over"].as_object().unwrap() {
        let (a, b) = key.split_once('|').unwrap();
        assert!(a.contains('#') && a.contains('@') && b.contains('#') && b.contains('@'));
        assert!(a < b || a[..3] == b[..3]);
        assert!(over.as_str().unwrap().contains('-'));
    }
    let p = &v["placement"]["1"];
    assert_eq!(p[0], "0/1");
}

type Seg = (Point, Point, Edge);

fn oriented_segments(d: &Diagram, cycle: &[u32]) -> Vec<Seg> {
    let mut out = Vec::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        let e = Edge::of(a, b);
        let mut r = d.routes()[&e].clone();
        if a != e.lo() {
            r.reverse();
        }
        for w in r.windows(2) {
            out.push((w[0].clone(), w[1].clone(), e));
        }
    }
    out
}

fn cross(ax: &Q, ay: &Q, bx: &Q, by: &Q) -> Q {
    ax * by - ay * bx
}

/// Linking number from scratch: intersect every pair of oriented segments of
/// the two components, read the over strand at the meeting point, and sum
/// sgn(over × under).
fn oracle_lk(d: &Diagram, p: &CyclePair) -> i64 {
    let sa = oriented_segments(d, p.first().vertices());
    let sb = oriented_segments(d, p.second().vertices());
    let mut total = 0;
    for (a0, a1, ea) in &sa {
        for (b0, b1, eb) in &sb {
            let (rx, ry) = (&a1.x - &a0.x, &a1.y - &a0.y);
            let (sx, sy) = (&b1.x - &b0.x, &b1.y - &b0.y);
            let den = cross(&rx, &ry, &sx, &sy);
            if den == Q::from_integer(0.into()) {
                continue;
            }
            let (wx, wy) = (&b0.x - &a0.x, &b0.y - &a0.y);
            let t = cross(&wx, &wy, &sx, &sy) / &den;
            let u = cross(&wx, &wy, &rx, &ry) / &den;
            let zero = Q::from_integer(0.into());
            let one = Q::from_integer(1.into());
            if t <= zero || t >= one || u <= zero || u >= one {
                continue;
            }
            let at = a0.lerp(a1, &t);
            let c = d
                .crossings()
                .iter()
                .find(|c| c.location == at && c.is_between(*ea, *eb))
                .expect("every meeting point is a recorded crossing");
            let a_over = c.over_edge() == *ea;
            let v = if a_over {
                cross(&rx, &ry, &sx, &sy)
            } else {
                cross(&sx, &sy, &rx, &ry)
            };
            total += if v.is_positive() { 1 } else { -1 };
        }
    }
    assert_eq!(total % 2, 0);
    total / 2
}

#[test]
fn linking_numbers_match_independent_count() {
    let d = drawn(first_is(Edge::of(4, 5)));
    assert_eq!(oracle_lk(&d, &hopf_pair()), d.linking_number(&hopf_pair()).unwrap());
    for name in GRAPH_NAMES {
        let lam = default_lambda(name).unwrap();
        let bundle = certificate_bundle(name).unwrap();
        let base = witness_diagram(name).unwrap();
        let mut diagrams = vec![base.clone()];
        for s in &bundle.battery {
            if !s.flips.is_empty() {
                diagrams.push(base.flip_all(&s.flips).unwrap());
                break;
            }
        }
        for d in &diagrams {
            for p in lam.pairs() {
                let lk = d.linking_number(p).unwrap();
                assert_eq!(lk, oracle_lk(d, p), "{name} {p}");
                let swapped = CyclePair::new(p.second().clone(), p.first().clone()).unwrap();
                assert_eq!(d.linking_number(&swapped).unwrap(), lk);
                if d.split_certify(p).unwrap().is_split() {
                    assert_eq!(lk, 0, "{name} {p}: split verdict with lk ≠ 0");
                }
            }
        }
    }
}

#[test]
fn rationals_survive_bends() {
    let g = two_triangles();
    let mut routes = BTreeMap::new();
    let bend = Point::new(q_frac(5, 3), q_frac(-1, 7));
    routes.insert(Edge::of(1, 2), vec![Point::int(0, 0), bend.clone(), Point::int(4, 0)]);
    let d = Diagram::with_rule(g, hopf_placement(), routes, |_| Side::First).unwrap();
    let back: Diagram = serde_json::from_str(&d.to_json()).unwrap();
    assert_eq!(back.routes()[&Edge::of(1, 2)][1], bend);
}
