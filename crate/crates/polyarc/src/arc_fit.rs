//! Arcs through two fixed endpoints.
//!
//! Centers live on the perpendicular bisector of the chord, parameterized
//! by signed distance `t` from the chord midpoint along the left normal of
//! the lexicographically ordered chord. The parameter is therefore the same
//! whichever endpoint is called the start.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::geometry_core::IntPoint;

/// Radius threshold, in chord lengths, above which an arc is segment-like.
pub const SEGMENT_LIKE_RATIO: f64 = 1e6;

/// Relative slack on tolerance comparisons for float-fitted arcs.
pub const ARC_TOLERANCE_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcFitError {
    #[error("arc endpoints coincide")]
    CoincidentEndpoints,
    #[error("too few points for arc: {0}")]
    TooFewPoints(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Cw,
    Ccw,
}

/// Chord frame: origin at the midpoint, `e` along the canonical chord,
/// `n` its left normal.
#[derive(Debug, Clone, Copy)]
struct ChordFrame {
    mid: (f64, f64),
    e: (f64, f64),
    n: (f64, f64),
    half: f64,
    /// Whether the caller's start is the canonical second endpoint.
    flipped: bool,
}

impl ChordFrame {
    fn new(a: IntPoint, b: IntPoint) -> Result<Self, ArcFitError> {
        if a == b {
            return Err(ArcFitError::CoincidentEndpoints);
        }
        let flipped = (b.x, b.y) < (a.x, a.y);
        let (p, q) = if flipped { (b, a) } else { (a, b) };
        let dx = (q.x - p.x) as f64;
        let dy = (q.y - p.y) as f64;
        let len = dx.hypot(dy);
        // Midpoint from the exact integer sum keeps half-unit precision.
        let mid = (((p.x as i128 + q.x as i128) as f64) / 2.0, ((p.y as i128 + q.y as i128) as f64) / 2.0);
        let e = (dx / len, dy / len);
        Ok(ChordFrame { mid, e, n: (-e.1, e.0), half: len / 2.0, flipped })
    }

    fn local(&self, p: IntPoint) -> (f64, f64) {
        let x = p.x as f64 - self.mid.0;
        let y = p.y as f64 - self.mid.1;
        (x * self.e.0 + y * self.e.1, x * self.n.0 + y * self.n.1)
    }

    fn center(&self, t: f64) -> (f64, f64) {
        (self.mid.0 + t * self.n.0, self.mid.1 + t * self.n.1)
    }

    fn radius(&self, t: f64) -> f64 {
        self.half.hypot(t)
    }
}

/// Signed radial deviation of local point (u, v) from the circle at `t`,
/// computed without cancellation.
fn deviation(u: f64, v: f64, h: f64, t: f64) -> f64 {
    let d = u.hypot(v - t);
    let r = h.hypot(t);
    (u * u + v * v - 2.0 * v * t - h * h) / (d + r)
}

/// Closed interval on the bisector parameter; infinite ends are open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn lo_closed(&self) -> bool {
        self.lo.is_finite()
    }

    pub fn hi_closed(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Sorted, pairwise disjoint intervals of feasible center parameters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BisectorIntervalSet {
    intervals: Vec<Interval>,
}

impl BisectorIntervalSet {
    pub fn full() -> Self {
        BisectorIntervalSet { intervals: vec![Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }] }
    }

    pub fn empty() -> Self {
        BisectorIntervalSet::default()
    }

    /// Builds from arbitrary closed intervals, merging overlaps.
    pub fn from_intervals(mut v: Vec<Interval>) -> Self {
        v.retain(|i| i.lo <= i.hi);
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for i in v {
            match out.last_mut() {
                Some(last) if i.lo <= last.hi => last.hi = last.hi.max(i.hi),
                _ => out.push(i),
            }
        }
        BisectorIntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(t))
    }

    pub fn finite_endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals.iter().flat_map(|i| [i.lo, i.hi]).filter(|t| t.is_finite())
    }

    /// Intersection of many sets by sorting all boundaries.
    pub fn intersect_all<'a>(sets: impl IntoIterator<Item = &'a BisectorIntervalSet>) -> Self {
        // Opens sort before closes at equal values so touching closed
        // intervals meet in a point.
        let mut bounds: Vec<(f64, u8)> = Vec::new();
        let mut count = 0usize;
        for s in sets {
            count += 1;
            for i in &s.intervals {
                bounds.push((i.lo, 0));
                bounds.push((i.hi, 1));
            }
        }
        if count == 0 {
            return BisectorIntervalSet::full();
        }
        bounds.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut depth = 0usize;
        let mut open_at = 0.0;
        let mut out = Vec::new();
        for (t, kind) in bounds {
            if kind == 0 {
                depth += 1;
                if depth == count {
                    open_at = t;
                }
            } else {
                if depth == count {
                    out.push(Interval { lo: open_at, hi: t });
                }
                depth -= 1;
            }
        }
        BisectorIntervalSet { intervals: out }
    }

    pub fn intersect(&self, other: &BisectorIntervalSet) -> Self {
        BisectorIntervalSet::intersect_all([self, other])
    }
}

/// Up to five sorted, disjoint pieces held inline.
#[derive(Debug, Clone, Copy)]
struct Pieces {
    buf: [Interval; 5],
    len: usize,
}

impl Pieces {
    const NONE: Interval = Interval { lo: 0.0, hi: 0.0 };

    fn empty() -> Self {
        Pieces { buf: [Self::NONE; 5], len: 0 }
    }

    fn full() -> Self {
        let mut p = Pieces::empty();
        p.push(Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY });
        p
    }

    fn push(&mut self, i: Interval) {
        self.buf[self.len] = i;
        self.len += 1;
    }

    fn as_slice(&self) -> &[Interval] {
        &self.buf[..self.len]
    }

    fn is_full(&self) -> bool {
        self.len == 1 && self.buf[0].lo == f64::NEG_INFINITY && self.buf[0].hi == f64::INFINITY
    }

    /// Sorts by lower end and merges touching pieces.
    fn normalize(&mut self) {
        let v = &mut self.buf[..self.len];
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut w = 0;
        for r in 0..self.len {
            let i = self.buf[r];
            if w > 0 && i.lo <= self.buf[w - 1].hi {
                self.buf[w - 1].hi = self.buf[w - 1].hi.max(i.hi);
            } else {
                self.buf[w] = i;
                w += 1;
            }
        }
        self.len = w;
    }
}

fn local_pieces(u: f64, v: f64, h: f64, tol: f64) -> Pieces {
    // Within tol of an endpoint: every circle through it is close enough.
    if (u - h).hypot(v) <= tol || (u + h).hypot(v) <= tol {
        return Pieces::full();
    }
    // |deviation(t)| = tol  ⇔  4(v²−tol²)t² − 4Kvt + (K² − 4tol²h²) = 0
    let k = u * u + v * v - h * h - tol * tol;
    let qa = 4.0 * (v * v - tol * tol);
    let qb = -4.0 * k * v;
    let qc = k * k - 4.0 * tol * tol * h * h;
    let (mut roots, n) = solve_quadratic(qa, qb, qc);
    let roots = &mut roots[..n];
    roots.sort_by(f64::total_cmp);
    let n = if n == 2 && roots[0] == roots[1] { 1 } else { n };
    let roots = &roots[..n];
    let feasible = |t: f64| deviation(u, v, h, t).abs() <= tol;
    if roots.is_empty() {
        return if feasible(0.0) { Pieces::full() } else { Pieces::empty() };
    }
    let probe = |lo: f64, hi: f64| -> f64 {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (false, true) => hi - hi.abs().max(h).max(1.0),
            (true, false) => lo + lo.abs().max(h).max(1.0),
            (false, false) => 0.0,
        }
    };
    let mut cuts = [f64::NEG_INFINITY; 4];
    cuts[1..=n].copy_from_slice(roots);
    cuts[n + 1] = f64::INFINITY;
    let mut pieces = Pieces::empty();
    for w in cuts[..n + 2].windows(2) {
        if feasible(probe(w[0], w[1])) {
            pieces.push(Interval { lo: w[0], hi: w[1] });
        }
    }
    // Tangent roots between two infeasible pieces are single points.
    for &r in roots {
        if !pieces.as_slice().iter().any(|i| i.contains(r))
            && deviation(u, v, h, r).abs() <= tol * (1.0 + ARC_TOLERANCE_SLACK)
        {
            pieces.push(Interval { lo: r, hi: r });
        }
    }
    pieces.normalize();
    pieces
}

fn local_intervals(u: f64, v: f64, h: f64, tol: f64) -> BisectorIntervalSet {
    BisectorIntervalSet { intervals: local_pieces(u, v, h, tol).as_slice().to_vec() }
}

/// Intersection of two sorted disjoint closed-interval lists into `out`.
fn intersect_sorted(a: &[Interval], b: &[Interval], out: &mut Vec<Interval>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].lo.max(b[j].lo);
        let hi = a[i].hi.min(b[j].hi);
        if lo <= hi {
            out.push(Interval { lo, hi });
        }
        if a[i].hi < b[j].hi {
            i += 1;
        } else {
            j += 1;
        }
    }
}

/// Real roots of a·t² + b·t + c, numerically stable.
fn solve_quadratic(a: f64, b: f64, c: f64) -> ([f64; 2], usize) {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return ([0.0; 2], 0);
    }
    // A tiny but nonzero `a` still carries a far root (nearly flat arcs put
    // it at |t| ≫ chord); spurious far roots only add a cut.
    if a == 0.0 {
        return if b != 0.0 { ([-c / b, 0.0], 1) } else { ([0.0; 2], 0) };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // Clamp tiny negatives from rounding into a double root.
        if disc > -1e-12 * b * b {
            return ([-b / (2.0 * a), 0.0], 1);
        }
        return ([0.0; 2], 0);
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return ([0.0; 2], 1);
    }
    ([q / a, c / q], 2)
}

/// Feasible center parameters for one point.
pub fn tolerance_intervals_point(a: IntPoint, b: IntPoint, p: IntPoint, tol: f64) -> Result<BisectorIntervalSet, ArcFitError> {
    let frame = ChordFrame::new(a, b)?;
    let (u, v) = frame.local(p);
    Ok(local_intervals(u, v, frame.half, tol))
}

/// Arc from the first to the last point anchored at source vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedArc {
    pub start: IntPoint,
    pub end: IntPoint,
    pub center: (f64, f64),
    pub radius: f64,
    pub orientation: Orientation,
    /// Approximate sum of squared radial deviations.
    pub sse: f64,
    /// Center parameter on the canonical bisector.
    pub param: f64,
    /// Curvature too small to distinguish from the chord.
    pub segment_like: bool,
}

impl FittedArc {
    /// Signed deviation of `p` from the circle.
    pub fn deviation(&self, p: IntPoint) -> f64 {
        let x = p.x as f64 - self.center.0;
        let y = p.y as f64 - self.center.1;
        x.hypot(y) - self.radius
    }

    fn angle_of(&self, x: f64, y: f64) -> f64 {
        (y - self.center.1).atan2(x - self.center.0)
    }

    /// Sweep angle from start to end in the arc's orientation, in (0, 2π).
    pub fn sweep(&self) -> f64 {
        let s = self.angle_of(self.start.x as f64, self.start.y as f64);
        let e = self.angle_of(self.end.x as f64, self.end.y as f64);
        let d = match self.orientation {
            Orientation::Ccw => e - s,
            Orientation::Cw => s - e,
        };
        d.rem_euclid(TAU)
    }

    /// Angle travelled from the start to `p`'s direction, normalized so the
    /// complement arc splits evenly before the start and after the end.
    pub fn angular_position(&self, p: IntPoint) -> f64 {
        self.angular_frame().position(self, p)
    }

    fn angular_frame(&self) -> AngularFrame {
        AngularFrame { start: self.angle_of(self.start.x as f64, self.start.y as f64), gap: TAU - self.sweep() }
    }
}

/// Start angle and complement gap, computed once per arc.
#[derive(Debug, Clone, Copy)]
struct AngularFrame {
    start: f64,
    gap: f64,
}

impl AngularFrame {
    fn position(&self, arc: &FittedArc, p: IntPoint) -> f64 {
        let a = arc.angle_of(p.x as f64, p.y as f64);
        let d = match arc.orientation {
            Orientation::Ccw => a - self.start,
            Orientation::Cw => self.start - a,
        };
        (d + 0.5 * self.gap).rem_euclid(TAU) - 0.5 * self.gap
    }
}

fn approximate_sse(frame: &ChordFrame, locals: &[(f64, f64)], t: f64) -> f64 {
    let h = frame.half;
    let r2 = h * h + t * t;
    let two_r = 2.0 * r2.sqrt();
    locals
        .iter()
        .map(|&(u, v)| {
            let res = (u * u + v * v - 2.0 * v * t - h * h) / two_r;
            res * res
        })
        .sum()
}

fn make_arc(frame: &ChordFrame, points: &[IntPoint], locals: &[(f64, f64)], t: f64, segment_like: bool) -> FittedArc {
    let start = points[0];
    let end = *points.last().expect("non-empty");
    // Bulge to the right of start→end means counterclockwise travel.
    let bulge: f64 = locals.iter().map(|&(_, v)| v).sum();
    let bulge = if frame.flipped { -bulge } else { bulge };
    let orientation = if bulge > 0.0 { Orientation::Cw } else { Orientation::Ccw };
    FittedArc {
        start,
        end,
        center: frame.center(t),
        radius: frame.radius(t),
        orientation,
        sse: approximate_sse(frame, locals, t),
        param: t,
        segment_like: segment_like || t.abs() > SEGMENT_LIKE_RATIO * 2.0 * frame.half,
    }
}

/// Algebraic least-squares arc through the first and last point.
///
/// Minimizes Σ((‖p−c‖² − r²) / 2r)² with the center on the bisector: a
/// ratio of quadratics in `t` whose stationary points solve a quadratic.
pub fn fit_arc_least_squares(points: &[IntPoint]) -> Result<FittedArc, ArcFitError> {
    if points.len() < 3 {
        return Err(ArcFitError::TooFewPoints(points.len()));
    }
    let frame = ChordFrame::new(points[0], *points.last().unwrap())?;
    let locals: Vec<(f64, f64)> = points.iter().map(|&p| frame.local(p)).collect();
    Ok(least_squares_in_frame(&frame, points, &locals))
}

fn least_squares_in_frame(frame: &ChordFrame, points: &[IntPoint], locals: &[(f64, f64)]) -> FittedArc {
    let h = frame.half;
    let (mut sw2, mut swv, mut sv2) = (0.0, 0.0, 0.0);
    for &(u, v) in locals {
        let w = u * u + v * v - h * h;
        sw2 += w * w;
        swv += w * v;
        sv2 += v * v;
    }
    let (a, b, c) = (sw2, -4.0 * swv, 4.0 * sv2);
    let objective = |t: f64| (a + b * t + c * t * t) / (h * h + t * t);
    // d/dt = 0  ⇔  −b t² + 2(c h² − a) t + b h² = 0; the roots straddle 0.
    let (roots, n) = solve_quadratic(-b, 2.0 * (c * h * h - a), b * h * h);
    let best = roots[..n].iter().copied().filter(|t| t.is_finite()).min_by(|x, y| objective(*x).total_cmp(&objective(*y)));
    match best {
        Some(t) if objective(t) < c || c == 0.0 && objective(t) <= c => make_arc(frame, points, locals, t, false),
        Some(t) => make_arc(frame, points, locals, t, true),
        None => make_arc(frame, points, locals, 0.0, b == 0.0 && c == 0.0 && a > 0.0),
    }
}

/// Radial tolerance plus angular-span check. Segment-like arcs are checked
/// against their chord.
pub fn arc_within_tolerance(arc: &FittedArc, points: &[IntPoint], tol: f64) -> bool {
    let limit = tol * (1.0 + ARC_TOLERANCE_SLACK);
    if arc.segment_like {
        return points.iter().all(|&p| point_segment_distance(p, arc.start, arc.end) <= limit);
    }
    let sweep = arc.sweep();
    let frame = arc.angular_frame();
    points.iter().all(|&p| {
        if arc.deviation(p).abs() > limit {
            return false;
        }
        let phi = frame.position(arc, p);
        // Points past an end are accepted only within tol of that end.
        (0.0..=sweep).contains(&phi)
            || point_distance(p, arc.start) <= limit
            || point_distance(p, arc.end) <= limit
    })
}

fn point_distance(a: IntPoint, b: IntPoint) -> f64 {
    ((a.x - b.x) as f64).hypot((a.y - b.y) as f64)
}

/// Euclidean distance from `p` to segment [a, b].
pub fn point_segment_distance(p: IntPoint, a: IntPoint, b: IntPoint) -> f64 {
    let (dx, dy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
    let (px, py) = ((p.x - a.x) as f64, (p.y - a.y) as f64);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return px.hypot(py);
    }
    let s = ((px * dx + py * dy) / len2).clamp(0.0, 1.0);
    (px - s * dx).hypot(py - s * dy)
}

/// Arc through the first and last point with every point within `tol`, or
/// `None` when the feasible center set on the bisector is empty.
pub fn fit_arc_by_tolerance(points: &[IntPoint], tol: f64) -> Result<Option<FittedArc>, ArcFitError> {
    if points.len() < 4 {
        return Err(ArcFitError::TooFewPoints(points.len()));
    }
    let frame = ChordFrame::new(points[0], *points.last().unwrap())?;
    let locals: Vec<(f64, f64)> = points.iter().map(|&p| frame.local(p)).collect();
    let lsq = least_squares_in_frame(&frame, points, &locals);
    if !lsq.segment_like && arc_within_tolerance(&lsq, points, tol) {
        return Ok(Some(lsq));
    }
    Ok(tolerance_fit_in_frame(&frame, points, &locals, tol, lsq))
}

/// Tolerance-driven fit for a caller that already holds the least-squares
/// arc `lsq` of the same points and found it unacceptable.
pub fn fit_arc_by_tolerance_from(points: &[IntPoint], tol: f64, lsq: FittedArc) -> Result<Option<FittedArc>, ArcFitError> {
    if points.len() < 4 {
        return Err(ArcFitError::TooFewPoints(points.len()));
    }
    let frame = ChordFrame::new(points[0], *points.last().unwrap())?;
    let locals: Vec<(f64, f64)> = points.iter().map(|&p| frame.local(p)).collect();
    Ok(tolerance_fit_in_frame(&frame, points, &locals, tol, lsq))
}

fn tolerance_fit_in_frame(
    frame: &ChordFrame,
    points: &[IntPoint],
    locals: &[(f64, f64)],
    tol: f64,
    lsq: FittedArc,
) -> Option<FittedArc> {
    let inner = &locals[1..locals.len() - 1];
    let dev = |&(u, v): &(f64, f64)| deviation(u, v, frame.half, lsq.param);
    let worst_out = (0..inner.len()).max_by(|&a, &b| dev(&inner[a]).total_cmp(&dev(&inner[b])));
    let worst_in = (0..inner.len()).min_by(|&a, &b| dev(&inner[a]).total_cmp(&dev(&inner[b])));
    let first: Vec<usize> = worst_out.into_iter().chain(worst_in).collect();
    let feasible = feasible_set_ordered(frame, inner, tol, &first);
    if feasible.is_empty() {
        return None;
    }
    if feasible.contains(lsq.param) {
        return Some(lsq);
    }
    // (sse, endpoint, signed room toward the interval's interior)
    let best = feasible
        .intervals
        .iter()
        .flat_map(|i| {
            let room = if i.hi.is_finite() { i.hi - i.lo } else { i.lo.abs().max(frame.half) };
            let back = if i.lo.is_finite() { i.lo - i.hi } else { -i.hi.abs().max(frame.half) };
            [(i.lo, room), (i.hi, back)]
        })
        .filter(|(t, _)| t.is_finite())
        .map(|(t, room)| (approximate_sse(frame, locals, t), t, room))
        .min_by(|x, y| x.0.total_cmp(&y.0));
    Some(match best {
        Some((_, t, room)) => verified_near_endpoint(frame, points, locals, tol, t, room),
        // Only unbounded pieces without finite ends: the line limit.
        None => make_arc(frame, points, locals, lsq.param, true),
    })
}

/// Arc at endpoint `t`, or just inside it when the boundary contact does not
/// survive recomputation in input coordinates (rounding there grows with
/// the radius and can exceed the slack).
fn verified_near_endpoint(
    frame: &ChordFrame,
    points: &[IntPoint],
    locals: &[(f64, f64)],
    tol: f64,
    t: f64,
    room: f64,
) -> FittedArc {
    let at_end = make_arc(frame, points, locals, t, false);
    if room == 0.0 || arc_within_tolerance(&at_end, points, tol) {
        return at_end;
    }
    (1..=12)
        .map(|k| make_arc(frame, points, locals, t + room * 0.1f64.powi(13 - k), false))
        .chain([make_arc(frame, points, locals, t + 0.5 * room, false)])
        .find(|arc| arc_within_tolerance(arc, points, tol))
        .unwrap_or(at_end)
}

/// Intersection of per-point feasible sets for the chord of the first and
/// last point.
pub fn feasible_centers(points: &[IntPoint], tol: f64) -> Result<BisectorIntervalSet, ArcFitError> {
    if points.len() < 2 {
        return Err(ArcFitError::TooFewPoints(points.len()));
    }
    let frame = ChordFrame::new(points[0], *points.last().unwrap())?;
    let locals: Vec<(f64, f64)> = points.iter().map(|&p| frame.local(p)).collect();
    Ok(feasible_set_in_frame(&frame, &locals, tol))
}

fn feasible_set_in_frame(frame: &ChordFrame, locals: &[(f64, f64)], tol: f64) -> BisectorIntervalSet {
    feasible_set_ordered(frame, &locals[1..locals.len() - 1], tol, &[])
}

/// Running intersection with early exit; `first` lists points of `inner`
/// to process before the rest (likely binding constraints).
fn feasible_set_ordered(frame: &ChordFrame, inner: &[(f64, f64)], tol: f64, first: &[usize]) -> BisectorIntervalSet {
    let mut cur = vec![Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }];
    let mut next = Vec::with_capacity(4);
    let order = first.iter().copied().chain((0..inner.len()).filter(|i| !first.contains(i)));
    for i in order {
        let (u, v) = inner[i];
        let pieces = local_pieces(u, v, frame.half, tol);
        if pieces.is_full() {
            continue;
        }
        intersect_sorted(&cur, pieces.as_slice(), &mut next);
        std::mem::swap(&mut cur, &mut next);
        if cur.is_empty() {
            break;
        }
    }
    BisectorIntervalSet { intervals: cur }
}

/// Inserts evenly spaced grid points so consecutive spacing is at most
/// `max_step`; original vertices are kept.
pub fn densify(polyline: &[IntPoint], max_step: f64) -> Vec<IntPoint> {
    assert!(max_step > 0.0, "max_step must be positive");
    let mut out = Vec::with_capacity(polyline.len());
    for (i, &p) in polyline.iter().enumerate() {
        if i > 0 {
            let q = polyline[i - 1];
            let len = point_distance(p, q);
            let pieces = (len / max_step).ceil() as i64;
            for k in 1..pieces {
                let s = k as f64 / pieces as f64;
                let x = q.x as f64 + s * (p.x - q.x) as f64;
                let y = q.y as f64 + s * (p.y - q.y) as f64;
                out.push(IntPoint::new(x.round() as i64, y.round() as i64));
            }
        }
        out.push(p);
    }
    out
}

/// Primitive shapes the direction test understands.
#[derive(Debug, Clone, Copy)]
pub enum Shape<'a> {
    Segment(IntPoint, IntPoint),
    Arc(&'a FittedArc),
}

/// Endpoints match and point projections onto the primitive's natural
/// parameter never step back by more than `slack` (length units).
pub fn direction_and_endpoint_check(points: &[IntPoint], shape: Shape<'_>, slack: f64) -> bool {
    let (Some(&first), Some(&last)) = (points.first(), points.last()) else {
        return false;
    };
    let positions: Vec<f64> = match shape {
        Shape::Segment(a, b) => {
            if first != a || last != b {
                return false;
            }
            let (dx, dy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
            let len = dx.hypot(dy);
            if len == 0.0 {
                return true;
            }
            points.iter().map(|p| ((p.x - a.x) as f64 * dx + (p.y - a.y) as f64 * dy) / len).collect()
        }
        Shape::Arc(arc) => {
            if first != arc.start || last != arc.end {
                return false;
            }
            if arc.segment_like {
                return direction_and_endpoint_check(points, Shape::Segment(arc.start, arc.end), slack);
            }
            let (r, frame) = (arc.radius, arc.angular_frame());
            points.iter().map(|&p| frame.position(arc, p) * r).collect()
        }
    };
    let mut reach = f64::NEG_INFINITY;
    for s in positions {
        if s < reach - slack {
            return false;
        }
        reach = reach.max(s);
    }
    true
}
