//! Bentley–Ottmann sweep over exact rational segments.
//!
//! Events are processed in lexicographic (x, y) order and batched per
//! point. The status is a vector ordered by height just right of the sweep
//! point; a vertical segment sits at the current event's height. Vertices of
//! one diagram that no segment of the other diagram touches are located in
//! the other diagram through the nearest segment of that diagram below them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::segment::IndexedSegment;
use crate::delaunay::MeshKind;
use crate::geometry_core::{rational_to_f64, IntPoint, Rational, RationalPoint};

/// Relative bound under which float comparisons defer to exact ones.
const FILTER: f64 = 1e-11;

fn approx(p: &RationalPoint) -> (f64, f64) {
    (rational_to_f64(&p.x), rational_to_f64(&p.y))
}

/// Ordering of `a` and `b` when their float images `fa`, `fb` separate
/// them clearly; `None` otherwise.
fn filtered(fa: f64, fb: f64, scale: f64) -> Option<Ordering> {
    let d = fa - fb;
    if d.abs() > FILTER * scale {
        Some(if d > 0.0 { Ordering::Greater } else { Ordering::Less })
    } else {
        None
    }
}

/// Queue entry ordered by exact (x, y), filtered through cached floats.
#[derive(Debug, Clone)]
struct EventKey {
    approx: (f64, f64),
    point: RationalPoint,
}

impl EventKey {
    fn new(point: RationalPoint) -> Self {
        EventKey { approx: approx(&point), point }
    }
}

impl PartialEq for EventKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for EventKey {}

impl PartialOrd for EventKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EventKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.approx, other.approx);
        let x = filtered(a.0, b.0, a.0.abs() + b.0.abs()).unwrap_or_else(|| self.point.x.cmp(&other.point.x));
        x.then_with(|| filtered(a.1, b.1, a.1.abs() + b.1.abs()).unwrap_or_else(|| self.point.y.cmp(&other.point.y)))
    }
}

/// A point where closest and farthest cell information meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEvent {
    pub point: RationalPoint,
    pub closest: Vec<u32>,
    pub farthest: Vec<u32>,
}

struct Seg {
    left: RationalPoint,
    right: RationalPoint,
    dx: Rational,
    dy: Rational,
    left_f: (f64, f64),
    right_f: (f64, f64),
    slope_f: f64,
}

impl Seg {
    fn new(left: &RationalPoint, right: &RationalPoint) -> Self {
        let dx = &right.x - &left.x;
        let dy = &right.y - &left.y;
        let slope_f = if dx.is_zero() { f64::NAN } else { rational_to_f64(&(&dy / &dx)) };
        Seg { left_f: approx(left), right_f: approx(right), left: left.clone(), right: right.clone(), dx, dy, slope_f }
    }

    /// Sign of (height at `p.x`) − `p.y`; vertical segments count as level.
    fn cmp_height(&self, p: &RationalPoint, pf: (f64, f64)) -> Ordering {
        if self.vertical() || self.left == *p || self.right == *p {
            return Ordering::Equal;
        }
        let run = pf.0 - self.left_f.0;
        let yf = self.left_f.1 + run * self.slope_f;
        let scale = self.left_f.1.abs() + pf.1.abs() + (pf.0.abs() + self.left_f.0.abs()) * self.slope_f.abs();
        filtered(yf, pf.1, scale).unwrap_or_else(|| self.y_at(&p.x, p).cmp(&p.y))
    }

    fn vertical(&self) -> bool {
        self.dx.is_zero()
    }

    fn y_at(&self, x: &Rational, p: &RationalPoint) -> Rational {
        if self.vertical() {
            p.y.clone()
        } else {
            &self.left.y + (x - &self.left.x) * &self.dy / &self.dx
        }
    }

    /// Order of directions leaving a common point, bottom to top.
    fn cmp_slope(&self, other: &Seg) -> Ordering {
        match (self.vertical(), other.vertical()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.dy * &other.dx).cmp(&(&other.dy * &self.dx)),
        }
    }
}

/// Float side of `q` relative to the line through `a`, when certain.
fn side_f(a: &Seg, q: (f64, f64)) -> Option<Ordering> {
    let (ax, ay) = a.left_f;
    let (bx, by) = a.right_f;
    let ux = bx - ax;
    let uy = by - ay;
    let vx = q.0 - ax;
    let vy = q.1 - ay;
    let scale = (ux.abs() + ax.abs() + bx.abs()) * (vy.abs() + ay.abs() + q.1.abs())
        + (uy.abs() + ay.abs() + by.abs()) * (vx.abs() + ax.abs() + q.0.abs());
    filtered(ux * vy, uy * vx, scale)
}

/// Whether the float filter proves the segments disjoint.
fn surely_disjoint(a: &Seg, b: &Seg) -> bool {
    let apart = |s: &Seg, t: &Seg| match (side_f(s, t.left_f), side_f(s, t.right_f)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    };
    apart(a, b) || apart(b, a)
}

fn intersection(a: &Seg, b: &Seg) -> Option<RationalPoint> {
    if surely_disjoint(a, b) {
        return None;
    }
    let r = RationalPoint::new(a.dx.clone(), a.dy.clone());
    let q = RationalPoint::new(b.dx.clone(), b.dy.clone());
    let denom = r.cross(&q);
    if denom.is_zero() {
        return None;
    }
    let w = &b.left - &a.left;
    let u = w.cross(&q) / &denom;
    let v = w.cross(&r) / &denom;
    let zero = Rational::zero();
    let one = Rational::one();
    if u < zero || u > one || v < zero || v > one {
        return None;
    }
    Some(&a.left + &r.scale(&u))
}

/// All points where segments of both diagrams meet, plus vertices of either
/// diagram (three or more sites of one kind) located in a cell of the other.
/// `sites` are the coordinates the tag indices refer to.
pub fn sweep_intersections(segments: &[IndexedSegment], sites: &[IntPoint]) -> Vec<SweepEvent> {
    sweep(segments, Some(sites))
}

/// Sweep core; without `sites` only direct meetings are reported.
fn sweep(segments: &[IndexedSegment], sites: Option<&[IntPoint]>) -> Vec<SweepEvent> {
    let segs: Vec<Seg> = segments
        .iter()
        .map(|s| {
            let (l, r) = s.ordered();
            Seg::new(l, r)
        })
        .collect();
    let mut queue: BTreeSet<EventKey> = BTreeSet::new();
    let mut starts: BTreeMap<EventKey, Vec<usize>> = BTreeMap::new();
    for (i, s) in segs.iter().enumerate() {
        if s.left == s.right {
            continue;
        }
        queue.insert(EventKey::new(s.left.clone()));
        queue.insert(EventKey::new(s.right.clone()));
        starts.entry(EventKey::new(s.left.clone())).or_default().push(i);
    }
    let mut status: Vec<usize> = Vec::new();
    let mut events = Vec::new();
    while let Some(key) = queue.pop_first() {
        let (p, pf) = (key.point.clone(), key.approx);
        let lo = status.partition_point(|&s| segs[s].cmp_height(&p, pf) == Ordering::Less);
        let hi = lo + status[lo..].partition_point(|&s| segs[s].cmp_height(&p, pf) == Ordering::Equal);
        let upper: Vec<usize> = starts.remove(&key).unwrap_or_default();
        let touching: Vec<usize> = status[lo..hi].iter().copied().chain(upper.iter().copied()).collect();

        let mut continuing: Vec<usize> =
            status[lo..hi].iter().copied().filter(|&s| segs[s].right != p).chain(upper.iter().copied()).collect();
        continuing.sort_by(|&a, &b| segs[a].cmp_slope(&segs[b]));
        let inserted = continuing.len();
        status.splice(lo..hi, continuing);

        let check = |a: usize, b: usize, queue: &mut BTreeSet<EventKey>| {
            if let Some(q) = intersection(&segs[a], &segs[b]) {
                let q = EventKey::new(q);
                if q > key {
                    queue.insert(q);
                }
            }
        };
        if inserted == 0 {
            if lo > 0 && lo < status.len() {
                check(status[lo - 1], status[lo], &mut queue);
            }
        } else {
            if lo > 0 {
                check(status[lo - 1], status[lo], &mut queue);
            }
            let last = lo + inserted - 1;
            if last + 1 < status.len() {
                check(status[last], status[last + 1], &mut queue);
            }
        }

        if let Some(ev) = classify(&p, &touching, segments, &status[..lo], sites) {
            events.push(ev);
        }
    }
    events
}

fn classify(
    p: &RationalPoint,
    touching: &[usize],
    segments: &[IndexedSegment],
    below: &[usize],
    sites: Option<&[IntPoint]>,
) -> Option<SweepEvent> {
    let collect = |kind: MeshKind, real_only: bool| -> Vec<u32> {
        let mut v: Vec<u32> = touching
            .iter()
            .filter(|&&s| !real_only || !segments[s].synthetic)
            .flat_map(|&s| segments[s].sites_of(kind))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let closest = collect(MeshKind::Closest, false);
    let farthest = collect(MeshKind::Farthest, false);
    if !closest.is_empty() && !farthest.is_empty() {
        return Some(SweepEvent { point: p.clone(), closest, farthest });
    }
    let sites = sites?;
    match (closest.is_empty(), farthest.is_empty()) {
        (false, true) if collect(MeshKind::Closest, true).len() >= 3 => {
            let cell = locate(p, below, segments, sites, MeshKind::Farthest);
            Some(SweepEvent { point: p.clone(), closest, farthest: vec![cell] })
        }
        (true, false) if collect(MeshKind::Farthest, true).len() >= 3 => {
            let cell = locate(p, below, segments, sites, MeshKind::Closest);
            Some(SweepEvent { point: p.clone(), closest: vec![cell], farthest })
        }
        _ => None,
    }
}

/// Cell of `kind` containing `p`: the better of the two sites of the first
/// segment of that kind below `p`, or a full scan when there is none.
fn locate(p: &RationalPoint, below: &[usize], segments: &[IndexedSegment], sites: &[IntPoint], kind: MeshKind) -> u32 {
    let candidates: Vec<u32> = below
        .iter()
        .rev()
        .find(|&&s| segments[s].has_kind(kind))
        .map(|&s| segments[s].sites_of(kind).collect())
        .unwrap_or_else(|| (0..sites.len() as u32).collect());
    let dist = |i: &u32| p.dist_sq_int(sites[*i as usize]);
    let pick = match kind {
        MeshKind::Closest => candidates.iter().min_by(|a, b| dist(a).cmp(&dist(b)).then(a.cmp(b))),
        MeshKind::Farthest => candidates.iter().max_by(|a, b| dist(a).cmp(&dist(b)).then(b.cmp(a))),
    };
    *pick.expect("at least one site")
}
