//! Exact segment arrangement analysis on integer coordinates.
//!
//! Diagrams with rational coordinates are scaled to a common denominator
//! before they reach this module, so every predicate here is an integer
//! sign computation. The engine is generic over the integer type: `i128`
//! is used when coordinates are small enough that no intermediate product
//! can overflow, `BigInt` otherwise.

use std::cmp::Ordering;
use std::fmt::Display;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

/// Coordinates with absolute value below this bound are safe for `i128`.
pub const I128_COORD_BOUND: i64 = 1 << 28;

pub trait Exact:
    Clone
    + Ord
    + Display
    + Signed
    + From<i64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub type P2<T> = [T; 2];

/// One straight piece of an edge route.
#[derive(Clone, Debug)]
pub struct Segment<T> {
    pub edge: usize,
    pub index: usize,
    pub last: bool,
    pub p0: P2<T>,
    pub p1: P2<T>,
}

#[derive(Clone, Debug)]
pub struct VertexSite<T> {
    pub id: u32,
    pub at: P2<T>,
}

/// Fraction `num / den` with `den > 0`.
#[derive(Clone, Debug)]
pub struct Param<T> {
    pub num: T,
    pub den: T,
}

impl<T: Exact> Param<T> {
    fn new(num: T, den: T) -> Self {
        if den.is_negative() {
            Param {
                num: T::zero() - num,
                den: T::zero() - den,
            }
        } else {
            Param { num, den }
        }
    }

    pub fn cmp_to(&self, other: &Self) -> Ordering {
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

/// Proper transverse crossing between segment `a` and segment `b` (`a < b`).
#[derive(Clone, Debug)]
pub struct RawCrossing<T> {
    pub a: usize,
    pub b: usize,
    pub ta: Param<T>,
    pub tb: Param<T>,
    /// Sign of cross(dir a, dir b).
    pub geo: i8,
}

fn orient<T: Exact>(a: &P2<T>, b: &P2<T>, c: &P2<T>) -> T {
    let abx = b[0].clone() - a[0].clone();
    let aby = b[1].clone() - a[1].clone();
    let acx = c[0].clone() - a[0].clone();
    let acy = c[1].clone() - a[1].clone();
    abx * acy - aby * acx
}

fn sgn<T: Exact>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn same<T: Exact>(p: &P2<T>, q: &P2<T>) -> bool {
    p[0] == q[0] && p[1] == q[1]
}

fn fmt_pt<T: Exact>(p: &P2<T>) -> String {
    format!("({}, {})", p[0], p[1])
}

/// Whether `p` lies on the closed segment `a b` (assumes `a != b`).
fn on_segment<T: Exact>(p: &P2<T>, a: &P2<T>, b: &P2<T>) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    let within = |i: usize| {
        let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
        *lo <= p[i] && p[i] <= *hi
    };
    within(0) && within(1)
}

fn bbox_disjoint<T: Exact>(s: &Segment<T>, t: &Segment<T>) -> bool {
    (0..2).any(|i| {
        let (slo, shi) = minmax(&s.p0[i], &s.p1[i]);
        let (tlo, thi) = minmax(&t.p0[i], &t.p1[i]);
        shi < tlo || thi < slo
    })
}

fn minmax<'a, T: Ord>(a: &'a T, b: &'a T) -> (&'a T, &'a T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Endpoint data of each edge: the ids of its two vertices, route start first.
#[derive(Clone, Debug)]
pub struct EdgeEnds {
    pub start: u32,
    pub end: u32,
}

/// Checks genericity of the arrangement and returns all proper crossings.
///
/// `segments` must be grouped by edge with consecutive indices per edge.
pub fn analyze<T: Exact>(
    vertices: &[VertexSite<T>],
    edges: &[EdgeEnds],
    segments: &[Segment<T>],
    label: &dyn Fn(usize) -> String,
) -> Result<Vec<RawCrossing<T>>, String> {
    for (i, v) in vertices.iter().enumerate() {
        for w in &vertices[i + 1..] {
            if same(&v.at, &w.at) {
                return Err(format!(
                    "vertices {} and {} share position {}",
                    v.id,
                    w.id,
                    fmt_pt(&v.at)
                ));
            }
        }
    }
    for s in segments {
        if same(&s.p0, &s.p1) {
            return Err(format!(
                "zero-length segment {} of edge {} at {}",
                s.index,
                label(s.edge),
                fmt_pt(&s.p0)
            ));
        }
    }
    for v in vertices {
        for s in segments {
            if !on_segment(&v.at, &s.p0, &s.p1) {
                continue;
            }
            let ends = &edges[s.edge];
            let ok = (s.index == 0 && ends.start == v.id && same(&s.p0, &v.at))
                || (s.last && ends.end == v.id && same(&s.p1, &v.at));
            if !ok {
                return Err(format!(
                    "vertex {} at {} lies on strand {} segment {}",
                    v.id,
                    fmt_pt(&v.at),
                    label(s.edge),
                    s.index
                ));
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (s, t) = (&segments[i], &segments[j]);
            if bbox_disjoint(s, t) {
                continue;
            }
            let o1 = orient(&s.p0, &s.p1, &t.p0);
            let o2 = orient(&s.p0, &s.p1, &t.p1);
            let (g1, g2) = (sgn(&o1), sgn(&o2));
            if g1 * g2 > 0 {
                continue;
            }
            let o3 = orient(&t.p0, &t.p1, &s.p0);
            let o4 = orient(&t.p0, &t.p1, &s.p1);
            let (g3, g4) = (sgn(&o3), sgn(&o4));
            if g3 * g4 > 0 {
                continue;
            }
            if g1 != 0 && g2 != 0 && g3 != 0 && g4 != 0 {
                let ta = Param::new(o3.clone(), o3 - o4);
                let tb = Param::new(o1.clone(), o1 - o2);
                let dsx = s.p1[0].clone() - s.p0[0].clone();
                let dsy = s.p1[1].clone() - s.p0[1].clone();
                let dtx = t.p1[0].clone() - t.p0[0].clone();
                let dty = t.p1[1].clone() - t.p0[1].clone();
                let geo = sgn(&(dsx * dty - dsy * dtx));
                out.push(RawCrossing {
                    a: i,
                    b: j,
                    ta,
                    tb,
                    geo,
                });
                continue;
            }
            touching(s, t, g1 == 0 && g2 == 0, edges, vertices, label)?;
        }
    }
    Ok(out)
}

fn touching<T: Exact>(
    s: &Segment<T>,
    t: &Segment<T>,
    collinear: bool,
    edges: &[EdgeEnds],
    vertices: &[VertexSite<T>],
    label: &dyn Fn(usize) -> String,
) -> Result<(), String> {
    let shared = [(&s.p0, &t.p0), (&s.p0, &t.p1), (&s.p1, &t.p0), (&s.p1, &t.p1)]
        .into_iter()
        .enumerate()
        .find(|(_, (p, q))| same(p, q));
    let fail = |what: &str, at: &P2<T>| {
        Err(format!(
            "{what} between {} segment {} and {} segment {} at {}",
            label(s.edge),
            s.index,
            label(t.edge),
            t.index,
            fmt_pt(at)
        ))
    };
    let Some((which, (p, _))) = shared else {
        let at = [&t.p0, &t.p1, &s.p0, &s.p1]
            .into_iter()
            .find(|p| on_segment(p, &s.p0, &s.p1) && on_segment(p, &t.p0, &t.p1));
        return match at {
            None if collinear => Ok(()),
            None => fail("tangency", &s.p0),
            Some(at) => fail(if collinear { "collinear overlap" } else { "tangency" }, at),
        };
    };
    if collinear {
        // Collinear segments sharing an endpoint are fine only if they leave it in opposite directions.
        let (so, to) = match which {
            0 => (&s.p1, &t.p1),
            1 => (&s.p1, &t.p0),
            2 => (&s.p0, &t.p1),
            _ => (&s.p0, &t.p0),
        };
        let dot = (so[0].clone() - p[0].clone()) * (to[0].clone() - p[0].clone())
            + (so[1].clone() - p[1].clone()) * (to[1].clone() - p[1].clone());
        if dot.is_positive() {
            return fail("collinear overlap", p);
        }
    }
    if s.edge == t.edge {
        if t.index == s.index + 1 && which == 2 {
            return Ok(());
        }
        return fail("self-touching route", p);
    }
    let s_end = route_end_vertex(s, which < 2, &edges[s.edge]);
    let t_end = route_end_vertex(t, which % 2 == 0, &edges[t.edge]);
    match (s_end, t_end) {
        (Some(a), Some(b)) if a == b && vertices.iter().any(|v| v.id == a && same(&v.at, p)) => Ok(()),
        _ => fail("touching strands", p),
    }
}

fn route_end_vertex<T>(s: &Segment<T>, at_start: bool, ends: &EdgeEnds) -> Option<u32> {
    if at_start && s.index == 0 {
        Some(ends.start)
    } else if !at_start && s.last {
        Some(ends.end)
    } else {
        None
    }
}

/// Common scale that turns rational coordinates into integers.
pub fn common_denominator<'a>(dens: impl Iterator<Item = &'a BigInt>) -> BigInt {
    dens.fold(BigInt::from(1), |acc, d| num_integer::Integer::lcm(&acc, d))
}
