//! Topology-preserving clipping of cell boundaries by an origin-centered
//! square.
//!
//! Outside parts are projected onto the outline along rays from the origin,
//! so a closed cell stays closed. Segments that leave the square are first
//! cut at the axes and diagonals so every remaining piece lies in one
//! closed octant pair, where projection is monotone.

use num_traits::{Signed, Zero};

use super::segment::IndexedSegment;
use crate::geometry_core::{Rational, RationalPoint};

/// Octant index 0..8 counterclockwise from +x; odd values are the
/// diagonal rays. `None` for the origin.
pub fn zone(p: &RationalPoint) -> Option<u8> {
    let ax = p.x.abs();
    let ay = p.y.abs();
    if p.x.is_zero() && p.y.is_zero() {
        return None;
    }
    let pos_x = p.x.is_positive();
    let pos_y = p.y.is_positive();
    Some(match ax.cmp(&ay) {
        std::cmp::Ordering::Greater => {
            if pos_x {
                0
            } else {
                4
            }
        }
        std::cmp::Ordering::Less => {
            if pos_y {
                2
            } else {
                6
            }
        }
        std::cmp::Ordering::Equal => match (pos_x, pos_y) {
            (true, true) => 1,
            (false, true) => 3,
            (false, false) => 5,
            (true, false) => 7,
        },
    })
}

/// Whether `z` lies in even zone `e` or on one of its bounding diagonals.
fn in_extended(z: u8, e: u8) -> bool {
    z == e || z == (e + 1) % 8 || z == (e + 7) % 8
}

fn inside(p: &RationalPoint, h: &Rational) -> bool {
    p.x.abs() <= *h && p.y.abs() <= *h
}

fn strictly_inside(p: &RationalPoint, h: &Rational) -> bool {
    p.x.abs() < *h && p.y.abs() < *h
}

/// Radial projection onto the outline: p·H / max(|x|, |y|).
pub fn project_to_outline(p: &RationalPoint, h: &Rational) -> RationalPoint {
    let m = std::cmp::max(p.x.abs(), p.y.abs());
    p.scale(&(h / m))
}

/// Exact intersection of the segment with the closed square.
fn clip_exact(seg: &IndexedSegment, h: &Rational) -> Option<IndexedSegment> {
    let d = &seg.p1 - &seg.p0;
    let mut t0 = Rational::zero();
    let mut t1 = Rational::from_integer(1.into());
    for (p, dp) in [(&seg.p0.x, &d.x), (&seg.p0.y, &d.y)] {
        // −h ≤ p + t·dp ≤ h
        if dp.is_zero() {
            if p.abs() > *h {
                return None;
            }
            continue;
        }
        let a = (-h - p) / dp;
        let b = (h - p) / dp;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if lo > t0 {
            t0 = lo;
        }
        if hi < t1 {
            t1 = hi;
        }
    }
    if t0 >= t1 {
        return None;
    }
    Some(seg.with_points(seg.at(&t0), seg.at(&t1)))
}

/// Splits at the first interior point where `f` (an affine function of the
/// point) changes sign strictly between the endpoints.
fn split_where(seg: &IndexedSegment, f: impl Fn(&RationalPoint) -> Rational) -> Option<(IndexedSegment, IndexedSegment)> {
    let f0 = f(&seg.p0);
    let f1 = f(&seg.p1);
    if f0.is_zero() || f1.is_zero() || f0.is_positive() == f1.is_positive() {
        return None;
    }
    let t = &f0 / (&f0 - &f1);
    let m = seg.at(&t);
    Some((seg.with_points(seg.p0.clone(), m.clone()), seg.with_points(m, seg.p1.clone())))
}

/// Clips every segment to the square [−H, H]².
pub fn clip_segments_square(segments: &[IndexedSegment], half_side: &Rational) -> Vec<IndexedSegment> {
    let h = half_side;
    let mut out = Vec::with_capacity(segments.len());
    let mut work: Vec<IndexedSegment> = segments.iter().rev().cloned().collect();
    while let Some(seg) = work.pop() {
        if inside(&seg.p0, h) && inside(&seg.p1, h) {
            out.push(seg);
            continue;
        }
        let (z0, z1) = match (zone(&seg.p0), zone(&seg.p1)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                out.extend(clip_exact(&seg, h));
                continue;
            }
        };
        let pair = (z0.min(z1), z0.max(z1));
        if pair == (0, 4) {
            if let Some((a, b)) = split_where(&seg, |p| p.x.clone()) {
                work.push(b);
                work.push(a);
                continue;
            }
        }
        if pair == (2, 6) {
            if let Some((a, b)) = split_where(&seg, |p| p.y.clone()) {
                work.push(b);
                work.push(a);
                continue;
            }
        }
        if pair == (1, 5) || pair == (3, 7) {
            out.extend(clip_exact(&seg, h));
            continue;
        }
        let Some(even) = [0u8, 2, 4, 6].into_iter().find(|&e| in_extended(z0, e) && in_extended(z1, e)) else {
            let split = split_where(&seg, |p| &p.y - &p.x).or_else(|| split_where(&seg, |p| &p.y + &p.x));
            match split {
                Some((a, b)) => {
                    work.push(b);
                    work.push(a);
                }
                None => out.extend(clip_exact(&seg, h)),
            }
            continue;
        };
        let in0 = strictly_inside(&seg.p0, h);
        let in1 = strictly_inside(&seg.p1, h);
        if !in0 && !in1 {
            let q = seg.with_points(project_to_outline(&seg.p0, h), project_to_outline(&seg.p1, h));
            if !q.is_degenerate() {
                out.push(q);
            }
            continue;
        }
        // One endpoint strictly inside: cut at the outline side of this zone.
        let side = |p: &RationalPoint| -> Rational {
            match even {
                0 => &p.x - h,
                2 => &p.y - h,
                4 => -(&p.x) - h,
                _ => -(&p.y) - h,
            }
        };
        let f0 = side(&seg.p0);
        let f1 = side(&seg.p1);
        let t = &f0 / (&f0 - &f1);
        let m = seg.at(&t);
        if in0 {
            out.push(seg.with_points(seg.p0.clone(), m.clone()));
            work.push(seg.with_points(m, seg.p1.clone()));
        } else {
            // Outside piece first so output follows the segment direction.
            work.push(seg.with_points(m.clone(), seg.p1.clone()));
            work.push(seg.with_points(seg.p0.clone(), m));
        }
    }
    out
}
