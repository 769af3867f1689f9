//! Dyadic window scan producing the DP's pruning tables.
//!
//! Windows of 4·2^q vertices are tested level by level. A window that
//! admits no arc (or segment) is reported, and larger windows are only
//! tried in the gaps that avoid every reported window, so the final list
//! holds no pair nested inside another.

use rayon::prelude::*;

use crate::annulus_solver::arc_exists_within_tolerance;
use crate::arc_fit::ARC_TOLERANCE_SLACK;
use crate::delaunay::ClipConfig;
use crate::geometry_core::IntPoint;
use crate::hull_tree::HullTree;

/// Smallest window tested; arcs need at least four points.
pub const MIN_WINDOW: usize = 4;

/// Infeasible vertex ranges sorted by both ends, framed by the sentinels
/// (−1, 0) and (N−1, N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasiblePairList {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl InfeasiblePairList {
    /// Builds the list for `n` vertices from reported inclusive ranges.
    /// Panics when the ranges are not strictly increasing in both ends.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut a = Vec::with_capacity(pairs.len() + 2);
        let mut b = Vec::with_capacity(pairs.len() + 2);
        a.push(-1);
        b.push(0);
        for &(i, j) in pairs {
            assert!(i < j && j < n, "pair ({i}, {j}) out of range");
            let (pa, pb) = (*a.last().unwrap(), *b.last().unwrap());
            assert!(i as i64 > pa && j as i64 > pb, "pairs must increase in both ends");
            a.push(i as i64);
            b.push(j as i64);
        }
        a.push(n as i64 - 1);
        b.push(n as i64);
        InfeasiblePairList { a, b }
    }

    pub fn vertex_count(&self) -> usize {
        *self.b.last().unwrap() as usize
    }

    /// Start indices including sentinels.
    pub fn starts(&self) -> &[i64] {
        &self.a
    }

    /// End indices including sentinels.
    pub fn ends(&self) -> &[i64] {
        &self.b
    }

    /// Reported pairs without sentinels.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.a.len();
        (1..m - 1).map(|p| (self.a[p] as usize, self.b[p] as usize))
    }

    pub fn len(&self) -> usize {
        self.a.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `[i, j]` contains a reported pair.
    pub fn contains_infeasible(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i as i64, j as i64);
        let qa = self.a.partition_point(|&x| x < i);
        let qb = self.b.partition_point(|&x| x <= j);
        qa < qb
    }
}

/// Per-vertex reach of feasible primitives: `first[j]` is the earliest
/// start that avoids every reported pair for a primitive ending at `j`,
/// `last[i]` the latest such end for one starting at `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitIndexArrays {
    pub first: Vec<usize>,
    pub last: Vec<usize>,
}

pub fn build_fit_index_arrays(pairs: &InfeasiblePairList, n: usize) -> FitIndexArrays {
    let (a, b) = (&pairs.a, &pairs.b);
    let mut first = Vec::with_capacity(n);
    let mut p = 0;
    for j in 0..n as i64 {
        while p + 1 < b.len() && b[p + 1] <= j {
            p += 1;
        }
        first.push((a[p] + 1) as usize);
    }
    let mut last = Vec::with_capacity(n);
    let mut p = 0;
    for i in 0..n as i64 {
        while a[p] < i {
            p += 1;
        }
        last.push((b[p] - 1) as usize);
    }
    FitIndexArrays { first, last }
}

/// Window scan settings for arcs.
#[derive(Debug, Clone, Copy)]
pub struct ArcScanConfig {
    pub clip: ClipConfig,
    /// Windows longer than this are skipped; 0 disables the cap.
    pub max_arc_points: usize,
}

impl Default for ArcScanConfig {
    fn default() -> Self {
        ArcScanConfig { clip: ClipConfig::default(), max_arc_points: 512 }
    }
}

/// Number of windows evaluated by a scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanStats {
    pub windows: usize,
}

fn scan<F>(n: usize, max_window: usize, infeasible: F) -> (Vec<(usize, usize)>, ScanStats)
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let mut out = Vec::new();
    let mut stats = ScanStats::default();
    test_part(0, 0, n, max_window, &infeasible, &mut out, &mut stats);
    (out, stats)
}

/// Windows of level `q` inside `[i, j)`, recursing into the gaps.
fn test_part<F>(
    q: u32,
    i: usize,
    j: usize,
    max_window: usize,
    infeasible: &F,
    out: &mut Vec<(usize, usize)>,
    stats: &mut ScanStats,
) where
    F: Fn(usize, usize) -> bool + Sync,
{
    let step = 1usize << q;
    let width = MIN_WINDOW << q;
    if (max_window > 0 && width > max_window) || j < i + width {
        return;
    }
    let starts: Vec<usize> = (i..=j - width).step_by(step).collect();
    stats.windows += starts.len();
    let failed: Vec<bool> = starts.par_iter().map(|&s| infeasible(s, s + width - 1)).collect();
    let mut region = i;
    for (&s, _) in starts.iter().zip(&failed).filter(|(_, &f)| f) {
        let end = s + width - 1;
        test_part(q + 1, region, end, max_window, infeasible, out, stats);
        out.push((s, end));
        region = s + step;
    }
    test_part(q + 1, region, j, max_window, infeasible, out, stats);
}

/// Data radius large enough that every arc of angle ≥ α over any part of
/// the polyline has its center inside each window's clip square.
fn global_clip(points: &[IntPoint], clip: &ClipConfig) -> ClipConfig {
    let (mut x0, mut y0, mut x1, mut y1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let r = 0.5 * ((x1 - x0) as f64).hypot((y1 - y0) as f64);
    let r = clip.data_radius.map_or(r, |d| d.max(r));
    let s = (clip.min_arc_angle / 2.0).sin();
    ClipConfig { min_arc_angle: clip.min_arc_angle, data_radius: Some(r * (1.0 + 2.0 * s) + 1.0) }
}

/// Windows that no circle covers within `tol`.
pub fn test_arcs(polyline: &[IntPoint], tol: f64, config: &ArcScanConfig) -> InfeasiblePairList {
    test_arcs_stats(polyline, tol, config).0
}

pub fn test_arcs_stats(polyline: &[IntPoint], tol: f64, config: &ArcScanConfig) -> (InfeasiblePairList, ScanStats) {
    let n = polyline.len();
    let clip = global_clip(polyline, &config.clip);
    // Slack matches the DP's acceptance so pruning never removes an arc it
    // would accept.
    let tol = tol * (1.0 + 2.0 * ARC_TOLERANCE_SLACK);
    let (pairs, stats) = scan(n, config.max_arc_points, |s, e| {
        !arc_exists_within_tolerance(&polyline[s..=e], tol, &clip).unwrap_or(true)
    });
    (InfeasiblePairList::from_pairs(n, &pairs), stats)
}

/// Windows whose hull is wider than `2·tol`.
pub fn test_segments(polyline: &[IntPoint], tol: f64) -> (InfeasiblePairList, FitIndexArrays) {
    test_segments_with(&HullTree::build(polyline), tol)
}

pub fn test_segments_with(tree: &HullTree, tol: f64) -> (InfeasiblePairList, FitIndexArrays) {
    let n = tree.len();
    let (pairs, _) = scan(n, 0, |s, e| tree.range_min_width_exceeds(s, e, 2.0 * tol));
    let list = InfeasiblePairList::from_pairs(n, &pairs);
    let arrays = build_fit_index_arrays(&list, n);
    (list, arrays)
}
