//! Minimum-width annulus via the closest and farthest Voronoi diagrams.
//!
//! Both diagrams are converted to cell-boundary segments. Unbounded cells
//! are closed along a far box, then clipped to the configured square, made
//! overlap-free, and swept together. Every sweep event is a candidate center
//! with a lower bound on its width; candidates are verified against all
//! points in ascending bound order until no remaining bound can win.

mod clip;
mod overlap;
mod segment;
mod sweep;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, Zero};
use thiserror::Error;

pub use clip::{clip_segments_square, project_to_outline, zone};
pub use overlap::remove_overlaps;
pub use segment::{xor_into, IndexedSegment, PointKey, SiteTag, TagSet};
pub use sweep::{sweep_intersections, SweepEvent};

use crate::delaunay::{
    bbox_half_diagonal, build_closest, build_farthest, voronoi_from_delaunay, ClipConfig, DelaunayError,
    EdgeGeometry, MeshKind, VoronoiDiagram,
};
use crate::geometry_core::{
    circumcenter, int_rational, rational_to_f64, IntPoint, Rational, RationalPoint, Sign,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnulusError {
    #[error("degenerate point set")]
    DegeneratePointSet,
    #[error("too few points for arc: {0}")]
    TooFewPoints(usize),
    #[error("negative or non-finite tolerance")]
    InvalidTolerance,
    #[error(transparent)]
    Delaunay(#[from] DelaunayError),
}

/// Smallest covering annulus found, in input coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusResult {
    pub center: RationalPoint,
    pub r_inner_sq: Rational,
    pub r_outer_sq: Rational,
    /// √r_outer_sq − √r_inner_sq, for reporting.
    pub width: f64,
    /// Arc angle (radians) the clip square was sized for.
    pub min_arc_angle: f64,
    /// Half side of the clip square around the data center.
    pub clip_half_side: Rational,
}

impl AnnulusResult {
    fn new(center: RationalPoint, r_inner_sq: Rational, r_outer_sq: Rational, clip: &ClipConfig, h: Rational) -> Self {
        let width = rational_to_f64(&r_outer_sq).sqrt() - rational_to_f64(&r_inner_sq).sqrt();
        AnnulusResult { center, r_inner_sq, r_outer_sq, width, min_arc_angle: clip.min_arc_angle, clip_half_side: h }
    }

    /// Whether an arc of this center deviates at most `tol` from every point.
    pub fn feasible_for(&self, tol: f64) -> bool {
        match Rational::from_f64(tol) {
            Some(t) if tol >= 0.0 => width_within(&self.r_inner_sq, &self.r_outer_sq, &t),
            _ => false,
        }
    }

    pub fn feasible_for_exact(&self, tol: &Rational) -> bool {
        width_within(&self.r_inner_sq, &self.r_outer_sq, tol)
    }
}

/// √outer − √inner ≤ 2·tol without square roots.
pub fn width_within(inner_sq: &Rational, outer_sq: &Rational, tol: &Rational) -> bool {
    let four_t2 = tol * tol * int_rational(4);
    let slack = outer_sq - inner_sq - &four_t2;
    if !slack.is_positive() {
        return true;
    }
    &slack * &slack <= four_t2 * int_rational(4) * inner_sq
}

/// Sign of √a + √b − √c − √d for non-negative rationals.
fn sign_sqrt_sums(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Sign {
    let u = a + b - c - d;
    let p = a * b;
    let q = c * d;
    let su = Sign::of_rational(&u);
    let sp = Sign::from(p.cmp(&q));
    let mixed = |z: &Rational| -> Sign {
        // sign(z + 8√(pq))
        if !z.is_negative() {
            if z.is_zero() && (&p * &q).is_zero() {
                Sign::Zero
            } else {
                Sign::Positive
            }
        } else {
            Sign::from((&p * &q * int_rational(64)).cmp(&(z * z)))
        }
    };
    match (su, sp) {
        (Sign::Zero, Sign::Zero) => Sign::Zero,
        (Sign::Zero | Sign::Positive, Sign::Zero | Sign::Positive) => Sign::Positive,
        (Sign::Zero | Sign::Negative, Sign::Zero | Sign::Negative) => Sign::Negative,
        _ => {
            let z = &u * &u - (&p + &q) * int_rational(4);
            let s = mixed(&z);
            if su == Sign::Positive {
                s
            } else {
                -s
            }
        }
    }
}

/// Compares annulus widths √out − √in exactly.
pub fn cmp_width(a_in: &Rational, a_out: &Rational, b_in: &Rational, b_out: &Rational) -> Ordering {
    // √a_out − √a_in vs √b_out − √b_in  ⇔  √a_out + √b_in vs √b_out + √a_in
    match sign_sqrt_sums(a_out, b_in, b_out, a_in) {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    }
}

/// Exact squared inner and outer radii of the points around `c`.
pub fn radii_at(c: &RationalPoint, points: &[IntPoint]) -> (Rational, Rational) {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for &p in points {
        let d = c.dist_sq_int(p);
        if lo.as_ref().is_none_or(|l| d < *l) {
            lo = Some(d.clone());
        }
        if hi.as_ref().is_none_or(|h| d > *h) {
            hi = Some(d);
        }
    }
    (lo.expect("non-empty"), hi.expect("non-empty"))
}

fn distinct_points(points: &[IntPoint]) -> Vec<IntPoint> {
    let mut v = points.to_vec();
    v.sort_by_key(|p| (p.x, p.y));
    v.dedup();
    v
}

fn bbox_center(points: &[IntPoint]) -> IntPoint {
    let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    IntPoint::new(((x0 as i128 + x1 as i128).div_euclid(2)) as i64, ((y0 as i128 + y1 as i128).div_euclid(2)) as i64)
}

/// Half side of the clip square for the given points.
pub fn clip_half_side(points: &[IntPoint], clip: &ClipConfig) -> Rational {
    let r = clip.data_radius.unwrap_or_else(|| bbox_half_diagonal(points));
    let big = clip.clip_radius(r).ceil();
    let big = if big.is_finite() { big.max(1.0) } else { 1.0 };
    Rational::from_f64(big).expect("finite")
}

fn big_rat(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Where the ray from `v` along `d` leaves the box [−F, F]².
fn box_exit(v: &RationalPoint, d: &(BigInt, BigInt), f: &Rational) -> RationalPoint {
    let mut best: Option<Rational> = None;
    for (vc, dc) in [(&v.x, &d.0), (&v.y, &d.1)] {
        if dc.is_zero() {
            continue;
        }
        let target = if dc.is_positive() { f.clone() } else { -f.clone() };
        let t = (target - vc) / big_rat(dc);
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    let t = best.expect("non-zero direction");
    RationalPoint::new(&v.x + &t * big_rat(&d.0), &v.y + &t * big_rat(&d.1))
}

/// Counterclockwise position on the box outline: (side, coordinate). Each
/// side owns its end corner.
fn perimeter_key(p: &RationalPoint, f: &Rational) -> (u8, Rational) {
    let nf = -f.clone();
    if p.x == *f && p.y > nf {
        (0, p.y.clone())
    } else if p.y == *f && p.x < *f {
        (1, -p.x.clone())
    } else if p.x == nf && p.y < *f {
        (2, -p.y.clone())
    } else {
        (3, p.x.clone())
    }
}

fn corner(side: u8, f: &Rational) -> RationalPoint {
    let nf = -f.clone();
    match side {
        0 => RationalPoint::new(f.clone(), f.clone()),
        1 => RationalPoint::new(nf, f.clone()),
        2 => RationalPoint::new(nf.clone(), nf),
        _ => RationalPoint::new(f.clone(), nf),
    }
}

/// Outline path from `a` counterclockwise to `b`.
fn outline_path(a: &RationalPoint, b: &RationalPoint, f: &Rational) -> Vec<RationalPoint> {
    let (sa, ka) = perimeter_key(a, f);
    let (sb, kb) = perimeter_key(b, f);
    let mut path = vec![a.clone()];
    if !(sa == sb && ka < kb) {
        let mut s = sa;
        loop {
            let c = corner(s, f);
            if path.last() != Some(&c) {
                path.push(c);
            }
            s = (s + 1) % 4;
            if s == sb {
                break;
            }
        }
    }
    if path.last() != Some(b) {
        path.push(b.clone());
    }
    path
}

fn owner(p: &RationalPoint, sites: &[IntPoint], kind: MeshKind) -> u32 {
    let mut best = 0usize;
    let mut best_d = p.dist_sq_int(sites[0]);
    for (i, &s) in sites.iter().enumerate().skip(1) {
        let d = p.dist_sq_int(s);
        let better = match kind {
            MeshKind::Closest => d < best_d,
            MeshKind::Farthest => d > best_d,
        };
        if better {
            best = i;
            best_d = d;
        }
    }
    best as u32
}

/// Half side of a box strictly containing every finite feature of `vor`.
fn far_box(vor: &VoronoiDiagram, h: &Rational) -> Rational {
    let mut m = h.clone();
    let mut bump = |r: &Rational| {
        let a = r.abs();
        if a > m {
            m = a;
        }
    };
    for v in &vor.vertices {
        bump(&v.x);
        bump(&v.y);
    }
    for e in &vor.edges {
        if let EdgeGeometry::Line { point, .. } = &e.geometry {
            bump(&point.x);
            bump(&point.y);
        }
    }
    m.ceil() + int_rational(1)
}

/// Cell boundaries of one diagram as indexed segments, with unbounded cells
/// closed along the box of half side `f`.
fn diagram_segments(vor: &VoronoiDiagram, sites: &[IntPoint], f: &Rational) -> Vec<IndexedSegment> {
    let kind = vor.kind;
    let tag = |s| SiteTag { diagram: kind, site: s };
    let mut out = Vec::with_capacity(vor.edges.len() + 8);
    // Exit points with the two cells their edge separates.
    let mut exits: Vec<(RationalPoint, [u32; 2])> = Vec::new();
    for e in &vor.edges {
        let pair = [e.sites.0, e.sites.1];
        let tags = [tag(e.sites.0), tag(e.sites.1)];
        match &e.geometry {
            EdgeGeometry::Segment(a, b) => {
                out.push(IndexedSegment::new(vor.vertices[*a].clone(), vor.vertices[*b].clone(), tags));
            }
            EdgeGeometry::Ray { origin, dir } => {
                let v = &vor.vertices[*origin];
                let x = box_exit(v, dir, f);
                out.push(IndexedSegment::new(v.clone(), x.clone(), tags));
                exits.push((x, pair));
            }
            EdgeGeometry::Line { point, dir } => {
                let back = (-dir.0.clone(), -dir.1.clone());
                let x0 = box_exit(point, &back, f);
                let x1 = box_exit(point, dir, f);
                out.push(IndexedSegment::new(x0.clone(), x1.clone(), tags));
                exits.push((x0, pair));
                exits.push((x1, pair));
            }
        }
    }
    let mut keyed: Vec<((u8, Rational), RationalPoint, [u32; 2])> =
        exits.into_iter().map(|(p, s)| (perimeter_key(&p, f), p, s)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.1 == b.1);
    let k = keyed.len();
    for i in 0..k {
        let (_, a, sa) = &keyed[i];
        let (_, b, sb) = &keyed[(i + 1) % k];
        let path = outline_path(a, b, f);
        // The gap belongs to the cell both bounding edges share; ambiguous
        // cases (parallel lines, coincident exits) fall back to a query.
        let shared: Vec<u32> = sa.iter().copied().filter(|s| sb.contains(s)).collect();
        let cell = if shared.len() == 1 {
            shared[0]
        } else {
            let half = Rational::new(1.into(), 2.into());
            let probe = RationalPoint::new((&path[0].x + &path[1].x) * &half, (&path[0].y + &path[1].y) * &half);
            owner(&probe, sites, kind)
        };
        for w in path.windows(2) {
            out.push(IndexedSegment::closing(w[0].clone(), w[1].clone(), tag(cell)));
        }
    }
    out
}

/// Candidate center with a lower bound on its width.
struct Candidate {
    point: RationalPoint,
    bound: f64,
    scale: f64,
}

fn candidates_from_events(events: &[SweepEvent], sites: &[IntPoint]) -> Vec<Candidate> {
    events
        .iter()
        .map(|ev| {
            let inner = ev.closest.iter().map(|&i| ev.point.dist_sq_int(sites[i as usize])).min().expect("closest site");
            let outer = ev.farthest.iter().map(|&i| ev.point.dist_sq_int(sites[i as usize])).max().expect("farthest site");
            let ro = rational_to_f64(&outer).sqrt();
            let ri = rational_to_f64(&inner).sqrt();
            Candidate { point: ev.point.clone(), bound: ro - ri, scale: ro.max(1.0) }
        })
        .collect()
}

/// Diagnostic counts from one solve.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub segments: usize,
    pub events: usize,
    pub verified: usize,
}

/// Smallest-width annulus covering the points, with centers restricted to
/// the clip square around the data.
pub fn min_width_annulus(points: &[IntPoint], clip: &ClipConfig) -> Result<AnnulusResult, AnnulusError> {
    min_width_annulus_stats(points, clip).map(|(r, _)| r)
}

pub fn min_width_annulus_stats(
    points: &[IntPoint],
    clip: &ClipConfig,
) -> Result<(AnnulusResult, SolveStats), AnnulusError> {
    let distinct = distinct_points(points);
    if distinct.len() < 2 {
        return Err(AnnulusError::DegeneratePointSet);
    }
    let c0 = bbox_center(&distinct);
    let origin = RationalPoint::from(c0);
    let local: Vec<IntPoint> = distinct.iter().map(|p| IntPoint::new(p.x - c0.x, p.y - c0.y)).collect();
    let h = clip_half_side(&local, clip);
    if local.len() == 2 {
        let half = Rational::new(1.into(), 2.into());
        let mid = RationalPoint::new(
            (int_rational(local[0].x) + int_rational(local[1].x)) * &half,
            (int_rational(local[0].y) + int_rational(local[1].y)) * &half,
        );
        let r = mid.dist_sq_int(local[0]);
        let result = AnnulusResult::new(&mid + &origin, r.clone(), r, clip, h);
        return Ok((result, SolveStats::default()));
    }

    let closest = voronoi_from_delaunay(&build_closest(&local)?, None);
    let farthest = voronoi_from_delaunay(&build_farthest(&local)?, None);
    let f = std::cmp::max(far_box(&closest, &h), far_box(&farthest, &h));
    let mut segs = diagram_segments(&closest, &local, &f);
    segs.extend(diagram_segments(&farthest, &local, &f));
    let segs = remove_overlaps(&clip_segments_square(&segs, &h));
    let events = sweep_intersections(&segs, &local);

    let mut cands = candidates_from_events(&events, &local);
    if cands.is_empty() {
        cands.push(Candidate { point: RationalPoint::origin(), bound: 0.0, scale: 1.0 });
    }
    cands.sort_by(|a, b| a.bound.total_cmp(&b.bound));
    let slack = 1e-9 * cands.iter().map(|c| c.scale).fold(1.0, f64::max);
    let mut best: Option<(RationalPoint, Rational, Rational)> = None;
    let mut best_f = f64::INFINITY;
    let mut verified = 0usize;
    for c in &cands {
        if c.bound > best_f + slack {
            break;
        }
        verified += 1;
        let (ri, ro) = radii_at(&c.point, &local);
        let better = match &best {
            None => true,
            Some((_, bi, bo)) => cmp_width(&ri, &ro, bi, bo) == Ordering::Less,
        };
        if better {
            best_f = rational_to_f64(&ro).sqrt() - rational_to_f64(&ri).sqrt();
            best = Some((c.point.clone(), ri, ro));
        }
    }
    let (center, ri, ro) = best.expect("at least one candidate");
    let stats = SolveStats { segments: segs.len(), events: events.len(), verified };
    Ok((AnnulusResult::new(&center + &origin, ri, ro, clip, h), stats))
}

/// Algebraic (Kåsa) circle fit; returns the center or `None` for
/// degenerate input.
pub fn kasa_center(points: &[IntPoint]) -> Option<(f64, f64)> {
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x as f64, sy + p.y as f64));
    let (mx, my) = (mx / n, my / n);
    let (mut suu, mut svv, mut suv, mut suuu, mut svvv, mut suvv, mut svuu) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for p in points {
        let u = p.x as f64 - mx;
        let v = p.y as f64 - my;
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }
    let det = suu * svv - suv * suv;
    if det.abs() <= 1e-12 * (suu * svv).max(f64::MIN_POSITIVE) {
        return None;
    }
    let r1 = 0.5 * (suuu + suvv);
    let r2 = 0.5 * (svvv + svuu);
    let uc = (r1 * svv - r2 * suv) / det;
    let vc = (suu * r2 - suv * r1) / det;
    let c = (uc + mx, vc + my);
    (c.0.is_finite() && c.1.is_finite()).then_some(c)
}

fn feasible_at(c: &RationalPoint, points: &[IntPoint], tol: &Rational) -> bool {
    let (ri, ro) = radii_at(c, points);
    width_within(&ri, &ro, tol)
}

/// Exact infeasibility of four distinct points: every finite candidate and
/// the narrowest strip are wider than 2·tol.
fn quadruple_infeasible(q: [IntPoint; 4], tol: &Rational) -> bool {
    for skip in 0..4 {
        let t: Vec<IntPoint> = (0..4).filter(|&i| i != skip).map(|i| q[i]).collect();
        if let Ok(c) = circumcenter(t[0], t[1], t[2]) {
            if feasible_at(&c, &q, tol) {
                return false;
            }
        }
    }
    for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        if let Some(center) = bisector_crossing(q[a], q[b], q[c], q[d]) {
            if feasible_at(&center, &q, tol) {
                return false;
            }
        }
    }
    let four_t2 = tol * tol * int_rational(4);
    for i in 0..4 {
        for j in i + 1..4 {
            let ex = q[j].x as i128 - q[i].x as i128;
            let ey = q[j].y as i128 - q[i].y as i128;
            let cross = |p: IntPoint| ex * (p.y as i128 - q[i].y as i128) - ey * (p.x as i128 - q[i].x as i128);
            let cs: Vec<i128> = q.iter().map(|&p| cross(p)).collect();
            let spread = Rational::from_integer(BigInt::from(cs.iter().max().unwrap() - cs.iter().min().unwrap()));
            let len2 = Rational::from_integer(BigInt::from(ex * ex + ey * ey));
            if &spread * &spread <= &four_t2 * len2 {
                return false;
            }
        }
    }
    true
}

/// Intersection of the bisectors of (a, b) and (c, d).
pub fn bisector_crossing(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Option<RationalPoint> {
    let big = |v: i64| BigInt::from(v);
    let (a1, b1) = (big(b.x) - big(a.x), big(b.y) - big(a.y));
    let c1 = big(b.x) * big(b.x) + big(b.y) * big(b.y) - big(a.x) * big(a.x) - big(a.y) * big(a.y);
    let (a2, b2) = (big(d.x) - big(c.x), big(d.y) - big(c.y));
    let c2 = big(d.x) * big(d.x) + big(d.y) * big(d.y) - big(c.x) * big(c.x) - big(c.y) * big(c.y);
    // 2(a1 x + b1 y) = c1, 2(a2 x + b2 y) = c2
    let det: BigInt = (&a1 * &b2 - &a2 * &b1) * BigInt::from(2);
    if det.is_zero() {
        return None;
    }
    let x = Rational::new(&c1 * &b2 - &c2 * &b1, det.clone());
    let y = Rational::new(&a1 * &c2 - &a2 * &c1, det);
    Some(RationalPoint::new(x, y))
}

/// Decides whether some circle (center in the clip square, or anywhere for
/// the fast path) has every point within `tol` of it.
pub fn arc_exists_within_tolerance(points: &[IntPoint], tol: f64, clip: &ClipConfig) -> Result<bool, AnnulusError> {
    if points.len() < 4 {
        return Err(AnnulusError::TooFewPoints(points.len()));
    }
    let tol_r = match Rational::from_f64(tol) {
        Some(t) if tol >= 0.0 => t,
        _ => return Err(AnnulusError::InvalidTolerance),
    };
    let distinct = distinct_points(points);
    if distinct.len() <= 2 {
        return Ok(true);
    }
    let fit = kasa_center(&distinct);
    if let Some((cx, cy)) = fit {
        let c = RationalPoint::new(Rational::from_f64(cx).unwrap(), Rational::from_f64(cy).unwrap());
        if feasible_at(&c, &distinct, &tol_r) {
            return Ok(true);
        }
    }
    if distinct.len() >= 4 {
        for q in certificate_quadruples(points, fit) {
            if quadruple_infeasible(q, &tol_r) {
                return Ok(false);
            }
        }
        let (cx, cy) = refine_center(&distinct, fit);
        let c = RationalPoint::new(Rational::from_f64(cx).unwrap(), Rational::from_f64(cy).unwrap());
        if feasible_at(&c, &distinct, &tol_r) {
            return Ok(true);
        }
        for q in active_quadruples(&distinct, (cx, cy)) {
            if quadruple_infeasible(q, &tol_r) {
                return Ok(false);
            }
        }
    }
    Ok(min_width_annulus(&distinct, clip)?.feasible_for_exact(&tol_r))
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 { (x1, f1) } else { (x2, f2) }
}

/// Nested golden-section search of `f` over the square `c ± d`.
fn box_min(f: &dyn Fn(f64, f64) -> f64, c: (f64, f64), d: f64) -> (f64, f64) {
    const ITERS: usize = 60;
    let inner = |x: f64| golden_min(|y| f(x, y), c.1 - d, c.1 + d, ITERS);
    let (x, _) = golden_min(|x| inner(x).1, c.0 - d, c.0 + d, ITERS);
    (x, inner(x).0)
}

/// Float center with small annulus width: minimizes the annulus area
/// (convex in the center) and then the width near that minimizer.
fn refine_center(points: &[IntPoint], start: Option<(f64, f64)>) -> (f64, f64) {
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x as f64, sy + p.y as f64));
    let (mx, my) = (mx / n, my / n);
    let local: Vec<(f64, f64, f64)> = points
        .iter()
        .map(|p| {
            let (x, y) = (p.x as f64 - mx, p.y as f64 - my);
            (x, y, x * x + y * y)
        })
        .collect();
    let diag = local.iter().map(|&(_, _, q)| q.sqrt()).fold(0.0, f64::max) * 2.0;
    let s = start.map_or((0.0, 0.0), |(x, y)| (x - mx, y - my));
    let d = diag.max(s.0.hypot(s.1));
    let area = |x: f64, y: f64| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(px, py, q) in &local {
            let v = q - 2.0 * (px * x + py * y);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        hi - lo
    };
    let width = |x: f64, y: f64| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(px, py, _) in &local {
            let r = (px - x).hypot(py - y);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        hi - lo
    };
    let ca = box_min(&area, s, d);
    let cw = box_min(&width, ca, 0.05 * d);
    let best = if width(cw.0, cw.1) < width(ca.0, ca.1) { cw } else { ca };
    (best.0 + mx, best.1 + my)
}

/// Quadruples of the outermost and innermost points around `c`: the
/// usual defining sets of a locally optimal annulus.
fn active_quadruples(points: &[IntPoint], c: (f64, f64)) -> Vec<[IntPoint; 4]> {
    let mut by_r: Vec<(f64, IntPoint)> =
        points.iter().map(|p| ((p.x as f64 - c.0).hypot(p.y as f64 - c.1), *p)).collect();
    by_r.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = by_r.len();
    let (i1, i2, i3) = (by_r[0].1, by_r[1].1, by_r[2].1);
    let (o1, o2, o3) = (by_r[n - 1].1, by_r[n - 2].1, by_r[n - 3].1);
    let mut out = vec![[o1, o2, i1, i2], [o1, o2, o3, i1], [o1, i1, i2, i3]];
    out.retain(|q| {
        let mut d = q.to_vec();
        d.sort_by_key(|p| (p.x, p.y));
        d.dedup();
        d.len() == 4
    });
    out
}

/// A few four-point subsets likely to witness infeasibility: both ends,
/// the middle, and the extreme residuals of the algebraic fit.
fn certificate_quadruples(points: &[IntPoint], fit: Option<(f64, f64)>) -> Vec<[IntPoint; 4]> {
    let n = points.len();
    let mut picks: Vec<[usize; 4]> = vec![[0, n / 3, (2 * n) / 3, n - 1]];
    if let Some((cx, cy)) = fit {
        let r: Vec<f64> = points.iter().map(|p| ((p.x as f64 - cx).powi(2) + (p.y as f64 - cy).powi(2)).sqrt()).collect();
        let hi = (0..n).max_by(|&a, &b| r[a].total_cmp(&r[b])).unwrap();
        let lo = (0..n).min_by(|&a, &b| r[a].total_cmp(&r[b])).unwrap();
        picks.push([0, n - 1, hi, lo]);
        picks.push([0, n / 2, n - 1, hi]);
        picks.push([0, n / 2, n - 1, lo]);
    }
    picks
        .into_iter()
        .filter_map(|idx| {
            let q = idx.map(|i| points[i]);
            let mut d = q.to_vec();
            d.sort_by_key(|p| (p.x, p.y));
            d.dedup();
            (d.len() == 4).then_some(q)
        })
        .collect()
}
