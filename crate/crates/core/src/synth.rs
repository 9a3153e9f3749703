//! Randomized search for witness diagrams.
//!
//! Vertices live on a small integer grid and edges are polylines with at
//! most two bends. Simulated annealing moves vertices, bends and over/under
//! choices until the drawing meets the witness profile: the designated pair
//! has linking number ±1 and every other listed pair is split-certified.
//! When a flip goal is given, some crossing between the two named edges
//! must, after a crossing change, yield the same profile for the second
//! designated pair.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycles::CyclePair;
use crate::diagram::{CrossingKey, Diagram, Point, Side};
use crate::error::{Error, Result};
use crate::geometry::{self, EdgeEnds, Segment, VertexSite};
use crate::graph::{Edge, Graph, Vertex};
use crate::linking::{CrossingTable, TableCrossing};

#[derive(Clone, Debug)]
pub struct FlipGoal {
    pub edges: [Edge; 2],
    pub designated: CyclePair,
}

#[derive(Clone, Debug)]
pub struct SynthGoal {
    pub graph: Graph,
    pub pairs: Vec<CyclePair>,
    pub designated: CyclePair,
    pub flip: Option<FlipGoal>,
}

#[derive(Clone, Debug)]
pub struct SynthOptions {
    pub seed: u64,
    pub restarts: usize,
    pub iterations: usize,
    pub grid: i64,
    pub max_bends: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            seed: 1,
            restarts: 20,
            iterations: 40_000,
            grid: 60,
            max_bends: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Synthesized {
    pub diagram: Diagram,
    pub flip: Option<CrossingKey>,
    pub restart: usize,
    pub iteration: usize,
}

type SegKey = (usize, usize, usize, usize);

#[derive(Clone)]
struct Layout {
    pos: Vec<[i64; 2]>,
    bends: Vec<Vec<[i64; 2]>>,
    over: HashMap<SegKey, u8>,
}

struct Eval {
    violations: usize,
    cost: f64,
    keys: Vec<SegKey>,
    flip: Option<usize>,
}

struct Ctx<'a> {
    goal: &'a SynthGoal,
    verts: Vec<Vertex>,
    vidx: HashMap<Vertex, usize>,
    edges: Vec<Edge>,
    ends: Vec<EdgeEnds>,
    others: Vec<&'a CyclePair>,
    flip_others: Vec<&'a CyclePair>,
    salt: u64,
}

fn mix(mut x: u64) -> u64 {
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51afd7ed558ccd);
    x ^= x >> 33;
    x = x.wrapping_mul(0xc4ceb9fe1a85ec53);
    x ^ (x >> 33)
}

impl<'a> Ctx<'a> {
    fn new(goal: &'a SynthGoal, salt: u64) -> Self {
        let verts: Vec<Vertex> = goal.graph.vertices().collect();
        let vidx = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<Edge> = goal.graph.edges().collect();
        let ends = edges
            .iter()
            .map(|e| EdgeEnds {
                start: e.lo(),
                end: e.hi(),
            })
            .collect();
        let others = goal.pairs.iter().filter(|p| **p != goal.designated).collect();
        let flip_others = match &goal.flip {
            Some(f) => goal.pairs.iter().filter(|p| **p != f.designated).collect(),
            None => Vec::new(),
        };
        Ctx {
            goal,
            verts,
            vidx,
            edges,
            ends,
            others,
            flip_others,
            salt,
        }
    }

    fn route(&self, l: &Layout, e: usize) -> Vec<[i64; 2]> {
        let edge = self.edges[e];
        let mut r = vec![l.pos[self.vidx[&edge.lo()]]];
        r.extend(l.bends[e].iter().copied());
        r.push(l.pos[self.vidx[&edge.hi()]]);
        r
    }

    fn default_bit(&self, k: &SegKey) -> u8 {
        let h = mix(self.salt ^ mix((k.0 as u64) << 48 ^ (k.1 as u64) << 32 ^ (k.2 as u64) << 16 ^ k.3 as u64));
        (h & 1) as u8
    }

    fn bit(&self, l: &Layout, k: &SegKey) -> u8 {
        l.over.get(k).copied().unwrap_or_else(|| self.default_bit(k))
    }

    fn table(&self, l: &Layout) -> Option<(CrossingTable, Vec<SegKey>)> {
        let vertices: Vec<VertexSite<i128>> = self
            .verts
            .iter()
            .enumerate()
            .map(|(i, &v)| VertexSite {
                id: v,
                at: [l.pos[i][0] as i128, l.pos[i][1] as i128],
            })
            .collect();
        let mut segs = Vec::new();
        for e in 0..self.edges.len() {
            let r = self.route(l, e);
            for k in 0..r.len() - 1 {
                segs.push(Segment {
                    edge: e,
                    index: k,
                    last: k + 2 == r.len(),
                    p0: [r[k][0] as i128, r[k][1] as i128],
                    p1: [r[k + 1][0] as i128, r[k + 1][1] as i128],
                });
            }
        }
        let raw = geometry::analyze(&vertices, &self.ends, &segs, &|i| i.to_string()).ok()?;
        let loc = |c: &geometry::RawCrossing<i128>| {
            let s = &segs[c.a];
            let (n, d) = (c.ta.num, c.ta.den);
            [
                s.p0[0] * d + n * (s.p1[0] - s.p0[0]),
                s.p0[1] * d + n * (s.p1[1] - s.p0[1]),
                d,
            ]
        };
        let locs: Vec<[i128; 3]> = raw.iter().map(loc).collect();
        for i in 0..locs.len() {
            for j in i + 1..locs.len() {
                let (p, q) = (locs[i], locs[j]);
                if p[0] * q[2] == q[0] * p[2] && p[1] * q[2] == q[1] * p[2] {
                    return None;
                }
            }
        }
        let mut keys = Vec::with_capacity(raw.len());
        let mut rows = Vec::with_capacity(raw.len());
        let mut occ: BTreeMap<Edge, Vec<(usize, &geometry::Param<i128>, usize, u8)>> = BTreeMap::new();
        for (i, c) in raw.iter().enumerate() {
            let (sa, sb) = (&segs[c.a], &segs[c.b]);
            let key = (sa.edge, sa.index, sb.edge, sb.index);
            rows.push(TableCrossing {
                edges: [self.edges[sa.edge], self.edges[sb.edge]],
                over: self.bit(l, &key),
                geo: c.geo,
            });
            keys.push(key);
            occ.entry(self.edges[sa.edge]).or_default().push((sa.index, &c.ta, i, 0));
            occ.entry(self.edges[sb.edge]).or_default().push((sb.index, &c.tb, i, 1));
        }
        let along = occ
            .into_iter()
            .map(|(e, mut v)| {
                v.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp_to(y.1)));
                (e, v.into_iter().map(|(_, _, i, s)| (i, s)).collect())
            })
            .collect();
        Some((CrossingTable::new(rows, along), keys))
    }

    fn profile(&self, t: &CrossingTable, designated: &CyclePair, others: &[&CyclePair]) -> usize {
        let mut v = match t.linking_number(designated) {
            Ok(lk) if lk.abs() == 1 => 0,
            _ => 1,
        };
        for p in others {
            if !t.split_certify(p).is_split() {
                v += 1;
            }
        }
        v
    }

    fn evaluate(&self, l: &Layout) -> Option<Eval> {
        let (mut t, keys) = self.table(l)?;
        let mut violations = self.profile(&t, &self.goal.designated, &self.others);
        let mut flip = None;
        if let Some(f) = &self.goal.flip {
            let cands: Vec<usize> = (0..t.len())
                .filter(|&i| {
                    let e = t.crossings()[i].edges;
                    (e[0] == f.edges[0] && e[1] == f.edges[1]) || (e[0] == f.edges[1] && e[1] == f.edges[0])
                })
                .collect();
            if cands.is_empty() {
                violations += 3;
            } else {
                let mut best = usize::MAX;
                for &i in &cands {
                    t.flip(i);
                    let v = self.profile(&t, &f.designated, &self.flip_others);
                    t.flip(i);
                    if v < best {
                        best = v;
                        flip = Some(i);
                    }
                }
                violations += best;
            }
        }
        let bends: usize = l.bends.iter().map(Vec::len).sum();
        let cost = violations as f64 + 0.002 * t.len() as f64 + 0.001 * bends as f64;
        Some(Eval {
            violations,
            cost,
            keys,
            flip,
        })
    }
}

fn random_layout(ctx: &Ctx, rng: &mut ChaCha8Rng, grid: i64) -> Layout {
    let mut pos: Vec<[i64; 2]> = Vec::new();
    while pos.len() < ctx.verts.len() {
        let p = [rng.random_range(0..grid), rng.random_range(0..grid)];
        if !pos.contains(&p) {
            pos.push(p);
        }
    }
    Layout {
        pos,
        bends: vec![Vec::new(); ctx.edges.len()],
        over: HashMap::new(),
    }
}

fn clamp(v: i64, grid: i64) -> i64 {
    v.clamp(0, grid - 1)
}

fn mutate(ctx: &Ctx, l: &Layout, cur: &Eval, rng: &mut ChaCha8Rng, opts: &SynthOptions) -> Layout {
    let mut n = l.clone();
    let g = opts.grid;
    let r: f64 = rng.random();
    if r < 0.45 || (r < 0.7 && opts.max_bends == 0) {
        let v = rng.random_range(0..n.pos.len());
        let s = [1, 3, g / 4][rng.random_range(0..3)].max(1);
        let p = &mut n.pos[v];
        p[0] = clamp(p[0] + rng.random_range(-s..=s), g);
        p[1] = clamp(p[1] + rng.random_range(-s..=s), g);
    } else if r < 0.7 {
        let e = rng.random_range(0..n.bends.len());
        let route = ctx.route(l, e);
        let b = &mut n.bends[e];
        let choice: f64 = rng.random();
        if b.is_empty() || (choice < 0.2 && b.len() < opts.max_bends) {
            let k = rng.random_range(0..route.len() - 1);
            let (a, c) = (route[k], route[k + 1]);
            let s = g / 3;
            let p = [
                clamp((a[0] + c[0]) / 2 + rng.random_range(-s..=s), g),
                clamp((a[1] + c[1]) / 2 + rng.random_range(-s..=s), g),
            ];
            b.insert(k, p);
        } else if choice < 0.4 {
            let k = rng.random_range(0..b.len());
            b.remove(k);
        } else {
            let k = rng.random_range(0..b.len());
            let s = [1, 3, g / 4][rng.random_range(0..3)].max(1);
            b[k][0] = clamp(b[k][0] + rng.random_range(-s..=s), g);
            b[k][1] = clamp(b[k][1] + rng.random_range(-s..=s), g);
        }
    } else if !cur.keys.is_empty() {
        let k = cur.keys[rng.random_range(0..cur.keys.len())];
        let bit = ctx.bit(l, &k);
        n.over.insert(k, bit ^ 1);
    }
    n
}

/// Runs the annealing search. Returns `None` if no restart succeeds.
pub fn synthesize(goal: &SynthGoal, opts: &SynthOptions) -> Result<Option<Synthesized>> {
    goal.designated.check_in(&goal.graph)?;
    for p in &goal.pairs {
        p.check_in(&goal.graph)?;
    }
    if opts.grid < 4 {
        return Err(Error::InvalidArgument("grid must be at least 4".into()));
    }
    for restart in 0..opts.restarts {
        let seed = mix(opts.seed ^ mix(restart as u64 + 1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = Ctx::new(goal, seed);
        let (mut layout, mut cur) = loop {
            let l = random_layout(&ctx, &mut rng, opts.grid);
            if let Some(ev) = ctx.evaluate(&l) {
                break (l, ev);
            }
        };
        let mut temp = 1.0f64;
        let cool = (0.01f64 / temp).powf(1.0 / opts.iterations.max(1) as f64);
        for iteration in 0..opts.iterations {
            if cur.violations == 0 {
                return finish(&ctx, &layout, &cur, restart, iteration).map(Some);
            }
            let cand = mutate(&ctx, &layout, &cur, &mut rng, opts);
            if let Some(ev) = ctx.evaluate(&cand) {
                let delta = ev.cost - cur.cost;
                if delta <= 0.0 || rng.random::<f64>() < (-delta / temp).exp() {
                    layout = cand;
                    cur = ev;
                }
            }
            temp *= cool;
        }
        if cur.violations == 0 {
            return finish(&ctx, &layout, &cur, restart, opts.iterations).map(Some);
        }
    }
    Ok(None)
}

fn finish(ctx: &Ctx, l: &Layout, ev: &Eval, restart: usize, iteration: usize) -> Result<Synthesized> {
    let to_pt = |p: [i64; 2]| Point::int(p[0], p[1]);
    let placement: BTreeMap<Vertex, Point> = ctx
        .verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, to_pt(l.pos[i])))
        .collect();
    let routes: BTreeMap<Edge, Vec<Point>> = (0..ctx.edges.len())
        .map(|e| (ctx.edges[e], ctx.route(l, e).into_iter().map(to_pt).collect()))
        .collect();
    let eidx: HashMap<Edge, usize> = ctx.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let d = Diagram::with_rule(ctx.goal.graph.clone(), placement, routes, |c| {
        let k = (
            eidx[&c.key.a.edge],
            c.key.a.segment,
            eidx[&c.key.b.edge],
            c.key.b.segment,
        );
        if ctx.bit(l, &k) == 0 {
            Side::First
        } else {
            Side::Second
        }
    })?;
    let flip = match ev.flip {
        Some(i) => {
            let k = ev.keys[i];
            let key = d
                .crossings()
                .iter()
                .find(|c| {
                    (eidx[&c.key.a.edge], c.key.a.segment, eidx[&c.key.b.edge], c.key.b.segment) == k
                })
                .map(|c| c.key.clone())
                .ok_or_else(|| Error::CrossingData("flip crossing lost in conversion".into()))?;
            Some(key)
        }
        None => None,
    };
    Ok(Synthesized {
        diagram: d,
        flip,
        restart,
        iteration,
    })
}
