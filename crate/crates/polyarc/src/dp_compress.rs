//! Lexicographic dynamic program over vertex-anchored segments and arcs.
//!
//! State k holds the best penalty for the prefix ending at vertex k.
//! Predecessors are popped in ascending penalty order from a merge tree,
//! so a scan stops as soon as the predecessor's penalty plus the primitive
//! penalty can no longer beat the incumbent.

use std::cmp::Ordering;
use std::ops::Add;

use thiserror::Error;

use crate::arc_fit::{
    arc_within_tolerance, densify, direction_and_endpoint_check, fit_arc_by_tolerance_from, fit_arc_least_squares,
    FittedArc, Shape,
};
use crate::delaunay::ClipConfig;
use crate::feasibility::{build_fit_index_arrays, test_arcs_stats, test_segments_with, ArcScanConfig, FitIndexArrays};
use crate::geometry_core::{cross_i128, IntPoint};
use crate::hull_tree::{HullTree, Tolerance};
use crate::sorted_range::MergeTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("empty polyline")]
    EmptyPolyline,
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("internal: dangling back pointer")]
    DanglingBackPointer,
}

/// Primitive-count penalty and squared deviation, compared in that order.
#[derive(Debug, Clone, Copy, Default)]
pub struct PenaltyPair {
    pub t_count: u64,
    pub t_sse: f64,
}

impl PenaltyPair {
    pub const ZERO: PenaltyPair = PenaltyPair { t_count: 0, t_sse: 0.0 };

    pub fn new(t_count: u64, t_sse: f64) -> Self {
        PenaltyPair { t_count, t_sse }
    }
}

impl Add for PenaltyPair {
    type Output = PenaltyPair;

    fn add(self, rhs: PenaltyPair) -> PenaltyPair {
        PenaltyPair { t_count: self.t_count + rhs.t_count, t_sse: self.t_sse + rhs.t_sse }
    }
}

impl Ord for PenaltyPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.t_count.cmp(&other.t_count).then(self.t_sse.total_cmp(&other.t_sse))
    }
}

impl PartialOrd for PenaltyPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for PenaltyPair {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PenaltyPair {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompressionMode {
    /// Source vertices must lie within tolerance.
    Vertices,
    /// Source segments must lie within tolerance, approximated by
    /// densifying them first.
    Segments,
}

#[derive(Debug, Clone, Copy)]
pub struct CompressionParams {
    /// Grid units.
    pub tolerance: f64,
    pub penalty_segment: u64,
    pub penalty_arc: u64,
    pub min_arc_points: usize,
    /// 0 removes the cap.
    pub max_arc_points: usize,
    /// Largest backward step of projections along a primitive, grid units.
    pub direction_slack: f64,
    pub mode: CompressionMode,
    /// Arcs flatter than `clip.min_arc_angle` are not considered.
    pub clip: ClipConfig,
}

impl CompressionParams {
    /// Defaults with the direction slack equal to the tolerance.
    pub fn new(tolerance: f64) -> Self {
        CompressionParams {
            tolerance,
            penalty_segment: 2,
            penalty_arc: 3,
            min_arc_points: 4,
            max_arc_points: 512,
            direction_slack: tolerance,
            mode: CompressionMode::Vertices,
            clip: ClipConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), DpError> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(DpError::InvalidTolerance);
        }
        if self.penalty_segment == 0 || self.penalty_arc == 0 {
            return Err(DpError::InvalidParams("penalties must be positive"));
        }
        if self.min_arc_points < 4 {
            return Err(DpError::InvalidParams("arcs need at least four points"));
        }
        if self.max_arc_points != 0 && self.max_arc_points < self.min_arc_points {
            return Err(DpError::InvalidParams("max_arc_points below min_arc_points"));
        }
        if !(self.direction_slack.is_finite() && self.direction_slack >= 0.0) {
            return Err(DpError::InvalidParams("direction slack must be finite and non-negative"));
        }
        if !(self.clip.min_arc_angle > 0.0 && self.clip.min_arc_angle < std::f64::consts::PI) {
            return Err(DpError::InvalidParams("minimum arc angle must be in (0, π)"));
        }
        Ok(())
    }

    /// Smallest start index an arc ending at `k` may use.
    fn arc_span_floor(&self, k: usize) -> usize {
        if self.max_arc_points == 0 {
            0
        } else {
            (k + 1).saturating_sub(self.max_arc_points)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PrimitiveShape {
    Segment,
    Arc(FittedArc),
}

/// One primitive from vertex `start` to vertex `end`.
#[derive(Debug, Clone, PartialEq)]
pub struct Primitive {
    pub start: usize,
    pub end: usize,
    pub sse: f64,
    pub shape: PrimitiveShape,
}

impl Primitive {
    pub fn is_arc(&self) -> bool {
        matches!(self.shape, PrimitiveShape::Arc(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompressedPolyline {
    /// Vertices the primitive indices refer to (densified in segment mode).
    pub vertices: Vec<IntPoint>,
    pub primitives: Vec<Primitive>,
    pub total: PenaltyPair,
}

impl CompressedPolyline {
    pub fn arc_count(&self) -> usize {
        self.primitives.iter().filter(|p| p.is_arc()).count()
    }

    pub fn segment_count(&self) -> usize {
        self.primitives.len() - self.arc_count()
    }

    /// Penalty summed from the primitive chain.
    pub fn recompute_total(&self, params: &CompressionParams) -> PenaltyPair {
        self.primitives.iter().fold(PenaltyPair::ZERO, |acc, p| {
            let count = if p.is_arc() { params.penalty_arc } else { params.penalty_segment };
            acc + PenaltyPair::new(count, p.sse)
        })
    }

    /// Every vertex lies within `tol` of its covering primitive: exact for
    /// segments, float with relative slack for arcs.
    pub fn within_tolerance(&self, tol: f64) -> bool {
        self.primitives.iter().all(|p| {
            let pts = &self.vertices[p.start..=p.end];
            match &p.shape {
                PrimitiveShape::Segment => segment_covers(pts, pts[0], pts[pts.len() - 1], &Tolerance::new(tol)),
                PrimitiveShape::Arc(arc) => arc_within_tolerance(arc, pts, tol),
            }
        })
    }
}

/// Candidate evaluation counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompressStats {
    pub segment_evaluations: usize,
    pub arc_evaluations: usize,
    /// Arc candidates that needed the tolerance-driven fit.
    pub arc_fallbacks: usize,
    pub feasibility_windows: usize,
}

impl CompressStats {
    pub fn evaluations(&self) -> usize {
        self.segment_evaluations + self.arc_evaluations
    }
}

/// Which pruning devices the DP uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pruning {
    /// Bound scans by the feasibility tables.
    pub tables: bool,
    /// Scan in ascending predecessor penalty and stop early.
    pub ordered_stop: bool,
}

impl Pruning {
    pub const FULL: Pruning = Pruning { tables: true, ordered_stop: true };
    pub const NONE: Pruning = Pruning { tables: false, ordered_stop: false };
}

/// Stored transition into a state.
#[derive(Debug, Clone)]
pub struct BackPointer {
    pub from: usize,
    pub total: PenaltyPair,
    pub sse: f64,
    pub shape: PrimitiveShape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Segment,
    Arc,
}

fn kind_of(shape: &PrimitiveShape) -> Kind {
    match shape {
        PrimitiveShape::Segment => Kind::Segment,
        PrimitiveShape::Arc(_) => Kind::Arc,
    }
}

/// Strictly better transition: lower total; on equal totals a segment
/// beats an arc, and within a kind the later start wins.
fn improves(cand: &BackPointer, best: &BackPointer) -> bool {
    match cand.total.cmp(&best.total) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            let (ck, bk) = (kind_of(&cand.shape), kind_of(&best.shape));
            ck < bk || ck == bk && cand.from > best.from
        }
    }
}

fn segment_sse(points: &[IntPoint]) -> f64 {
    let (s, e) = (points[0], points[points.len() - 1]);
    let len2 = s.dist_sq(e);
    points[1..points.len() - 1]
        .iter()
        .map(|&p| {
            let along = (e.x - s.x) as i128 * (p.x - s.x) as i128 + (e.y - s.y) as i128 * (p.y - s.y) as i128;
            if len2 == 0 || along <= 0 {
                p.dist_sq(s) as f64
            } else if along >= len2 {
                p.dist_sq(e) as f64
            } else {
                let c = cross_i128(s, e, p) as f64;
                c * c / len2 as f64
            }
        })
        .sum()
}

/// Direct per-vertex capsule test, exact.
fn segment_covers(points: &[IntPoint], s: IntPoint, e: IntPoint, tol: &Tolerance) -> bool {
    let len2 = s.dist_sq(e);
    points.iter().all(|&p| {
        let along = (e.x - s.x) as i128 * (p.x - s.x) as i128 + (e.y - s.y) as i128 * (p.y - s.y) as i128;
        if len2 == 0 || along <= 0 {
            tol.covers_sq(p.dist_sq(s))
        } else if along >= len2 {
            tol.covers_sq(p.dist_sq(e))
        } else {
            tol.covers_scaled(cross_i128(s, e, p), len2)
        }
    })
}

struct Evaluator<'a> {
    points: &'a [IntPoint],
    params: &'a CompressionParams,
    hulls: Option<&'a HullTree>,
    tolerance: Tolerance,
    stats: CompressStats,
}

impl Evaluator<'_> {
    fn segment(&mut self, from: usize, to: usize) -> Option<(f64, PrimitiveShape)> {
        self.stats.segment_evaluations += 1;
        let pts = &self.points[from..=to];
        let (s, e) = (pts[0], pts[pts.len() - 1]);
        let fits = match self.hulls {
            Some(tree) => tree.segment_within_tolerance(from, to, s, e, self.params.tolerance),
            None => segment_covers(pts, s, e, &self.tolerance),
        };
        (fits && direction_and_endpoint_check(pts, Shape::Segment(s, e), self.params.direction_slack))
            .then(|| (segment_sse(pts), PrimitiveShape::Segment))
    }

    fn acceptable(&self, arc: &FittedArc, pts: &[IntPoint]) -> bool {
        !arc.segment_like
            && arc.sweep() >= self.params.clip.min_arc_angle
            && arc_within_tolerance(arc, pts, self.params.tolerance)
            && direction_and_endpoint_check(pts, Shape::Arc(arc), self.params.direction_slack)
    }

    fn arc(&mut self, from: usize, to: usize) -> Option<(f64, PrimitiveShape)> {
        self.stats.arc_evaluations += 1;
        let pts = &self.points[from..=to];
        let lsq = fit_arc_least_squares(pts).ok()?;
        if self.acceptable(&lsq, pts) {
            return Some((lsq.sse, PrimitiveShape::Arc(lsq)));
        }
        self.stats.arc_fallbacks += 1;
        let arc = fit_arc_by_tolerance_from(pts, self.params.tolerance, lsq).ok()??;
        self.acceptable(&arc, pts).then_some((arc.sse, PrimitiveShape::Arc(arc)))
    }
}

/// Pruning tables for one polyline.
#[derive(Debug, Clone)]
pub struct PruningTables {
    pub segment: FitIndexArrays,
    pub arc: FitIndexArrays,
}

impl PruningTables {
    pub fn build(points: &[IntPoint], hulls: &HullTree, params: &CompressionParams) -> (Self, usize) {
        let (_, segment) = test_segments_with(hulls, params.tolerance);
        let cfg = ArcScanConfig { clip: params.clip, max_arc_points: params.max_arc_points };
        let (pairs, stats) = test_arcs_stats(points, params.tolerance, &cfg);
        let arc = build_fit_index_arrays(&pairs, points.len());
        (PruningTables { segment, arc }, stats.windows)
    }

    /// Tables that prune nothing.
    pub fn open(n: usize) -> Self {
        let full = FitIndexArrays { first: vec![0; n], last: vec![n.saturating_sub(1); n] };
        PruningTables { segment: full.clone(), arc: full }
    }
}

/// Pops predecessors of `k` in `[lo, hi]` by ascending penalty and keeps
/// the best transition. Returns the pop order for instrumentation.
fn candidate_scan(
    tree: &MergeTree<PenaltyPair>,
    lo: usize,
    hi: usize,
    penalty: u64,
    ordered_stop: bool,
    best: &mut BackPointer,
    mut eval: impl FnMut(usize) -> Option<(f64, PrimitiveShape)>,
) -> Vec<usize> {
    let mut order = Vec::new();
    if lo > hi {
        return order;
    }
    let mut visit = |from: usize, base: PenaltyPair, best: &mut BackPointer| {
        if let Some((sse, shape)) = eval(from) {
            let cand = BackPointer { from, total: base + PenaltyPair::new(penalty, sse), sse, shape };
            if improves(&cand, best) {
                *best = cand;
            }
        }
    };
    if ordered_stop {
        let mut heap = tree.open_range(lo, hi);
        while let Some((from, &t)) = heap.pop_min() {
            let bound = t + PenaltyPair::new(penalty, 0.0);
            if best.total <= bound {
                break;
            }
            order.push(from);
            visit(from, t, best);
        }
    } else {
        for from in (lo..=hi).rev() {
            order.push(from);
            visit(from, *tree.value(from), best);
        }
    }
    order
}

pub fn compress(polyline: &[IntPoint], params: &CompressionParams) -> Result<CompressedPolyline, DpError> {
    compress_with(polyline, params, Pruning::FULL).map(|(c, _)| c)
}

/// Runs the DP with the chosen pruning and reports evaluation counts.
pub fn compress_with(
    polyline: &[IntPoint],
    params: &CompressionParams,
    pruning: Pruning,
) -> Result<(CompressedPolyline, CompressStats), DpError> {
    params.validate()?;
    if polyline.is_empty() {
        return Err(DpError::EmptyPolyline);
    }
    let points = match params.mode {
        CompressionMode::Vertices => polyline.to_vec(),
        CompressionMode::Segments => densify(polyline, params.tolerance),
    };
    let n = points.len();
    let hulls = HullTree::build(&points);
    let (tables, windows) = if pruning.tables {
        PruningTables::build(&points, &hulls, params)
    } else {
        (PruningTables::open(n), 0)
    };
    let mut eval = Evaluator {
        points: &points,
        params,
        hulls: Some(&hulls),
        tolerance: Tolerance::new(params.tolerance),
        stats: CompressStats { feasibility_windows: windows, ..CompressStats::default() },
    };
    let mut tree = MergeTree::new();
    tree.append(PenaltyPair::ZERO);
    let mut back: Vec<Option<BackPointer>> = vec![None; n];
    let mut totals = vec![PenaltyPair::ZERO; n];
    for k in 1..n {
        let seed_total = totals[k - 1] + PenaltyPair::new(params.penalty_segment, 0.0);
        let mut best = BackPointer { from: k - 1, total: seed_total, sse: 0.0, shape: PrimitiveShape::Segment };
        if k >= 2 {
            let lo = tables.segment.first[k];
            candidate_scan(&tree, lo, k - 2, params.penalty_segment, pruning.ordered_stop, &mut best, |f| {
                eval.segment(f, k)
            });
        }
        if k + 1 >= params.min_arc_points {
            let lo = tables.arc.first[k].max(params.arc_span_floor(k));
            let hi = k + 1 - params.min_arc_points;
            candidate_scan(&tree, lo, hi, params.penalty_arc, pruning.ordered_stop, &mut best, |f| eval.arc(f, k));
        }
        totals[k] = best.total;
        tree.append(best.total);
        back[k] = Some(best);
    }
    let stats = eval.stats;
    Ok((reconstruct(&back, points)?, stats))
}

/// Follows stored predecessors from the last vertex back to vertex 0.
pub fn reconstruct(back: &[Option<BackPointer>], vertices: Vec<IntPoint>) -> Result<CompressedPolyline, DpError> {
    if back.len() != vertices.len() || vertices.is_empty() {
        return Err(DpError::DanglingBackPointer);
    }
    let mut primitives = Vec::new();
    let mut k = vertices.len() - 1;
    let total = match k {
        0 => PenaltyPair::ZERO,
        _ => back[k].as_ref().ok_or(DpError::DanglingBackPointer)?.total,
    };
    while k > 0 {
        let bp = back[k].as_ref().ok_or(DpError::DanglingBackPointer)?;
        if bp.from >= k {
            return Err(DpError::DanglingBackPointer);
        }
        primitives.push(Primitive { start: bp.from, end: k, sse: bp.sse, shape: bp.shape.clone() });
        k = bp.from;
    }
    primitives.reverse();
    Ok(CompressedPolyline { vertices, primitives, total })
}

/// Reference DP: every predecessor of every state evaluated, segments
/// tested vertex by vertex. Quadratic in candidates; for validation.
pub fn compress_exhaustive(
    polyline: &[IntPoint],
    params: &CompressionParams,
) -> Result<(CompressedPolyline, CompressStats), DpError> {
    params.validate()?;
    if polyline.is_empty() {
        return Err(DpError::EmptyPolyline);
    }
    let points = match params.mode {
        CompressionMode::Vertices => polyline.to_vec(),
        CompressionMode::Segments => densify(polyline, params.tolerance),
    };
    let n = points.len();
    let mut eval = Evaluator {
        points: &points,
        params,
        hulls: None,
        tolerance: Tolerance::new(params.tolerance),
        stats: CompressStats::default(),
    };
    let mut back: Vec<Option<BackPointer>> = vec![None; n];
    let mut totals = vec![PenaltyPair::ZERO; n];
    for k in 1..n {
        let mut best: Option<BackPointer> = None;
        for from in 0..k {
            let seg = if from + 1 == k {
                Some((0.0, PrimitiveShape::Segment))
            } else {
                eval.segment(from, k)
            };
            let arc = (k + 1 - from >= params.min_arc_points && from >= params.arc_span_floor(k))
                .then(|| eval.arc(from, k))
                .flatten();
            for (pen, cand) in [(params.penalty_segment, seg), (params.penalty_arc, arc)] {
                if let Some((sse, shape)) = cand {
                    let c = BackPointer { from, total: totals[from] + PenaltyPair::new(pen, sse), sse, shape };
                    if best.as_ref().is_none_or(|b| improves(&c, b)) {
                        best = Some(c);
                    }
                }
            }
        }
        let best = best.expect("the one-step segment always fits");
        totals[k] = best.total;
        back[k] = Some(best);
    }
    let stats = eval.stats;
    Ok((reconstruct(&back, points)?, stats))
}
