use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::segment::{xor_into, IndexedSegment, PointKey, TagSet};
use crate::geometry_core::{Rational, RationalPoint};

/// Primitive integer direction of a segment, sign-normalized so that
/// opposite directions coincide.
fn primitive_direction(d: &RationalPoint) -> (BigInt, BigInt) {
    let l = d.x.denom().lcm(d.y.denom());
    let mut x = (&d.x * Rational::from_integer(l.clone())).to_integer();
    let mut y = (&d.y * Rational::from_integer(l)).to_integer();
    let g = x.gcd(&y);
    x /= &g;
    y /= &g;
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        x = -x;
        y = -y;
    }
    (x, y)
}

/// Splits collinear overlapping segments into disjoint pieces whose tag
/// sets are the coverage parity of each piece. Zero-length input is
/// dropped; output is deterministic and idempotent.
pub fn remove_overlaps(segments: &[IndexedSegment]) -> Vec<IndexedSegment> {
    type LineKey = ((BigInt, BigInt), Rational);
    // Groups keep first-appearance order so output is deterministic.
    let mut slot: HashMap<LineKey, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, s) in segments.iter().enumerate() {
        if s.is_degenerate() {
            continue;
        }
        let (dx, dy) = primitive_direction(&(&s.p1 - &s.p0));
        let dir = RationalPoint::new(Rational::from_integer(dx.clone()), Rational::from_integer(dy.clone()));
        let offset = dir.cross(&s.p0);
        let g = *slot.entry(((dx, dy), offset)).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    let mut out = Vec::with_capacity(segments.len());
    for members in &groups {
        if members.len() == 1 {
            out.push(segments[members[0]].clone());
            continue;
        }
        // Endpoint events carry the tags toggled there; `real_runs` tracks
        // how many non-synthetic segments cover each piece.
        let mut events: BTreeMap<PointKey, TagSet> = BTreeMap::new();
        let mut real_runs: BTreeMap<PointKey, i32> = BTreeMap::new();
        for &i in members {
            let s = &segments[i];
            let (a, b) = s.ordered();
            for p in [a, b] {
                xor_into(events.entry(PointKey(p.clone())).or_default(), &s.tags);
            }
            if !s.synthetic {
                *real_runs.entry(PointKey(a.clone())).or_default() += 1;
                *real_runs.entry(PointKey(b.clone())).or_default() -= 1;
            }
        }
        let mut acc = TagSet::new();
        let mut real_depth = 0i32;
        let mut prev: Option<RationalPoint> = None;
        for (key, tags) in events {
            if let Some(start) = prev.take() {
                if !acc.is_empty() {
                    let mut seg = IndexedSegment {
                        p0: start,
                        p1: key.0.clone(),
                        tags: acc.clone(),
                        synthetic: real_depth == 0,
                    };
                    // Merge with the previous piece when nothing changed at
                    // the shared point.
                    let merge = matches!(out.last(), Some(last) if is_continuation(last, &seg));
                    if merge {
                        let last: IndexedSegment = out.pop().unwrap();
                        seg.p0 = last.p0;
                    }
                    out.push(seg);
                }
            }
            xor_into(&mut acc, &tags);
            real_depth += real_runs.get(&key).copied().unwrap_or(0);
            prev = Some(key.0);
        }
        debug_assert!(acc.is_empty());
    }
    out
}

fn is_continuation(last: &IndexedSegment, next: &IndexedSegment) -> bool {
    last.p1 == next.p0 && last.tags == next.tags && last.synthetic == next.synthetic && {
        let d0 = &last.p1 - &last.p0;
        let d1 = &next.p1 - &next.p0;
        d0.cross(&d1).is_zero()
    }
}
