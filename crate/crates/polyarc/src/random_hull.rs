//! Random convex hull generators for benchmarks and builder tests.
//!
//! Generators produce real-valued vertices in counterclockwise order.
//! [`finalize_hull`] quantizes them onto the integer grid and drops any
//! vertex that rounding left collinear or reflex.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use thiserror::Error;

use crate::geometry_core::{convex_hull, orientation, IntPoint, Sign};

#[derive(Debug, Error, PartialEq)]
pub enum HullError {
    #[error("at least 3 vertices are required, got {0}")]
    TooFewVertices(usize),
    #[error("direction vectors stayed collinear after {0} attempts")]
    CollinearDirections(usize),
    #[error("degenerate hull")]
    Degenerate,
    #[error("grid scale must be finite and positive")]
    InvalidScale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HullGenerator {
    RandomWalk,
    Directions,
    FarthestDelaunay,
    Uniform,
}

impl HullGenerator {
    pub const ALL: [HullGenerator; 4] =
        [HullGenerator::RandomWalk, HullGenerator::Directions, HullGenerator::FarthestDelaunay, HullGenerator::Uniform];

    pub fn name(self) -> &'static str {
        match self {
            HullGenerator::RandomWalk => "walk",
            HullGenerator::Directions => "directions",
            HullGenerator::FarthestDelaunay => "fdt",
            HullGenerator::Uniform => "uniform",
        }
    }

    /// Dispatches to the matching generator.
    pub fn generate(self, n: usize, seed: u64) -> Result<HullSample, HullError> {
        match self {
            HullGenerator::RandomWalk => gen_random_walk_hull(n, seed),
            HullGenerator::Directions => gen_directions_hull(n, seed),
            HullGenerator::FarthestDelaunay => gen_fdt_hull(n, seed).map(|r| r.sample),
            HullGenerator::Uniform => gen_uniform_hull(n, seed),
        }
    }
}

impl fmt::Display for HullGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HullGenerator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HullGenerator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator '{s}' (expected walk, directions, fdt or uniform)"))
    }
}

#[derive(Debug, Clone)]
pub struct HullSample {
    /// Counterclockwise vertex sequence.
    pub vertices: Vec<(f64, f64)>,
    pub generator: HullGenerator,
    pub seed: u64,
}

/// Quantized, strictly convex hull ready for the exact modules.
#[derive(Debug, Clone, PartialEq)]
pub struct GridHull {
    pub vertices: Vec<IntPoint>,
    pub generator: HullGenerator,
    pub seed: u64,
    /// Grid units per model unit.
    pub scale: f64,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strict counterclockwise hull of real points (monotone chain).
pub fn float_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let push = |p: (f64, f64), hull: &mut Vec<(f64, f64)>| {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        };
        if pass == 0 {
            for &p in &pts {
                push(p, &mut hull);
            }
        } else {
            for &p in pts.iter().rev() {
                push(p, &mut hull);
            }
        }
        hull.pop();
    }
    hull
}

/// Hull of a walk of `n` points joined by `n − 1` unit steps in uniform
/// random directions, starting at the origin.
pub fn gen_random_walk_hull(n: usize, seed: u64) -> Result<HullSample, HullError> {
    if n < 3 {
        return Err(HullError::TooFewVertices(n));
    }
    let mut rng = rng_for(seed);
    let mut walk = Vec::with_capacity(n);
    let mut at = (0.0f64, 0.0f64);
    walk.push(at);
    for _ in 1..n {
        let angle = rng.gen_range(-PI..PI);
        at = (at.0 + angle.cos(), at.1 + angle.sin());
        walk.push(at);
    }
    Ok(HullSample { vertices: float_hull(&walk), generator: HullGenerator::RandomWalk, seed })
}

/// Unit directions with weights satisfying Σw² = 1 and Σw·dir = 0.
#[derive(Debug, Clone)]
pub struct WeightedDirections {
    pub directions: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

const COLLINEAR_LIMIT: f64 = 1.0 - 1e-9;
const MIN_RADIUS_SQ: f64 = 1e-8;
const MAX_ATTEMPTS: usize = 64;

fn unit_vector(rng: &mut impl Rng) -> (f64, f64) {
    loop {
        let u: f64 = rng.gen_range(-1.0..=1.0);
        let v: f64 = rng.gen_range(-1.0..=1.0);
        let r2 = u * u + v * v;
        if (MIN_RADIUS_SQ..1.0).contains(&r2) {
            let r = r2.sqrt();
            return (u / r, v / r);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subtract_projection(v: &mut [f64], basis: &[f64]) {
    let k = dot(v, basis);
    for (x, b) in v.iter_mut().zip(basis) {
        *x -= k * b;
    }
}

fn normalize(v: &mut [f64]) -> bool {
    let len = dot(v, v).sqrt();
    if len < 1e-12 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= len);
    true
}

/// Samples directions and a uniformly distributed unit weight vector
/// orthogonal to both coordinate vectors. Gram–Schmidt builds the
/// orthonormal pair; a Gaussian vector projected onto the complement and
/// normalized is uniform on its unit sphere.
pub fn sample_weighted_directions(n: usize, rng: &mut impl Rng) -> Result<WeightedDirections, HullError> {
    if n < 3 {
        return Err(HullError::TooFewVertices(n));
    }
    for _ in 0..MAX_ATTEMPTS {
        let directions: Vec<(f64, f64)> = (0..n).map(|_| unit_vector(rng)).collect();
        let mut ex: Vec<f64> = directions.iter().map(|d| d.0).collect();
        let mut ey: Vec<f64> = directions.iter().map(|d| d.1).collect();
        let corr = dot(&ex, &ey) / (dot(&ex, &ex) * dot(&ey, &ey)).sqrt();
        if !corr.is_finite() || corr.abs() > COLLINEAR_LIMIT {
            continue;
        }
        if !normalize(&mut ex) {
            continue;
        }
        subtract_projection(&mut ey, &ex);
        if !normalize(&mut ey) {
            continue;
        }
        let weights = loop {
            let mut g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            // Two passes keep the residual at rounding level.
            for _ in 0..2 {
                subtract_projection(&mut g, &ex);
                subtract_projection(&mut g, &ey);
            }
            if normalize(&mut g) {
                break g;
            }
        };
        return Ok(WeightedDirections { directions, weights });
    }
    Err(HullError::CollinearDirections(MAX_ATTEMPTS))
}

/// Closed polygon from weighted directions sorted by angle and summed.
pub fn gen_directions_hull(n: usize, seed: u64) -> Result<HullSample, HullError> {
    let mut rng = rng_for(seed);
    let wd = sample_weighted_directions(n, &mut rng)?;
    let mut edges: Vec<(f64, f64)> = wd
        .directions
        .iter()
        .zip(&wd.weights)
        .map(|(d, w)| (d.0 * w, d.1 * w))
        .filter(|e| e.0 != 0.0 || e.1 != 0.0)
        .collect();
    edges.sort_by(|a, b| a.1.atan2(a.0).total_cmp(&b.1.atan2(b.0)));
    let mut vertices = Vec::with_capacity(edges.len());
    let mut at = (0.0, 0.0);
    vertices.push(at);
    for e in &edges[..edges.len().saturating_sub(1)] {
        at = (at.0 + e.0, at.1 + e.1);
        vertices.push(at);
    }
    Ok(HullSample { vertices, generator: HullGenerator::Directions, seed })
}

/// Hull of `n` points uniform in the unit disk.
pub fn gen_uniform_hull(n: usize, seed: u64) -> Result<HullSample, HullError> {
    if n < 3 {
        return Err(HullError::TooFewVertices(n));
    }
    let mut rng = rng_for(seed);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| loop {
            let p: (f64, f64) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            if p.0 * p.0 + p.1 * p.1 <= 1.0 {
                break p;
            }
        })
        .collect();
    Ok(HullSample { vertices: float_hull(&points), generator: HullGenerator::Uniform, seed })
}

/// `n` distinct grid points uniform in [−half_extent, half_extent]².
pub fn uniform_grid_points(n: usize, seed: u64, half_extent: i64) -> Vec<IntPoint> {
    assert!(half_extent > 0 && ((2 * half_extent + 1) as u128).pow(2) >= n as u128, "grid too small for {n} points");
    let mut rng = rng_for(seed);
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = IntPoint::new(rng.gen_range(-half_extent..=half_extent), rng.gen_range(-half_extent..=half_extent));
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

/// Circular segment outside hull edge a→b, cut from the circle of the
/// triangle that owns the edge.
#[derive(Debug, Clone, Copy)]
struct CircularSegment {
    a: usize,
    b: usize,
    center: (f64, f64),
    radius: f64,
}

struct SegmentFrame {
    mid: (f64, f64),
    /// Outward unit normal (right of a→b for counterclockwise order).
    normal: (f64, f64),
    along: (f64, f64),
    half_chord: f64,
    /// Distance from the center to the chord line.
    center_distance: f64,
    /// Center on the outward side: the cap is the major part of the circle.
    major: bool,
    height: f64,
}

impl SegmentFrame {
    /// R − d without cancellation.
    fn radius_minus_distance(&self, radius: f64) -> f64 {
        self.half_chord * self.half_chord / (radius + self.center_distance)
    }

    /// Half width of the cap at height `y` above the chord. Written as a
    /// product of non-cancelling factors; flat caps have huge radii.
    fn half_width(&self, radius: f64, y: f64) -> f64 {
        let below_top = (self.height - y).max(0.0);
        let other = if self.major {
            y + self.radius_minus_distance(radius)
        } else {
            2.0 * radius - self.height + y
        };
        (below_top * other).sqrt()
    }
}

impl CircularSegment {
    fn frame(&self, pts: &[(f64, f64)]) -> Option<SegmentFrame> {
        let (pa, pb) = (pts[self.a], pts[self.b]);
        let (dx, dy) = (pb.0 - pa.0, pb.1 - pa.1);
        let len = dx.hypot(dy);
        if !(len > 0.0) || !(self.radius.is_finite()) {
            return None;
        }
        let along = (dx / len, dy / len);
        let normal = (along.1, -along.0);
        let mid = ((pa.0 + pb.0) / 2.0, (pa.1 + pb.1) / 2.0);
        let half_chord = (len / 2.0).min(self.radius);
        let offset = (self.center.0 - mid.0) * normal.0 + (self.center.1 - mid.1) * normal.1;
        let major = offset > 0.0;
        let r = self.radius;
        let center_distance = ((r - half_chord) * (r + half_chord)).max(0.0).sqrt();
        let mut frame = SegmentFrame { mid, normal, along, half_chord, center_distance, major, height: 0.0 };
        frame.height = if major { r + center_distance } else { frame.radius_minus_distance(r) };
        Some(frame)
    }

    fn area(&self, pts: &[(f64, f64)]) -> f64 {
        let Some(f) = self.frame(pts) else { return 0.0 };
        let r = self.radius;
        // Minor cap: R²(θ − sin θ)/2 with θ the central angle.
        let theta = 2.0 * (f.half_chord / r).clamp(0.0, 1.0).asin();
        let theta_minus_sin = if theta < 1e-3 {
            let t3 = theta * theta * theta;
            t3 / 6.0 - t3 * theta * theta / 120.0
        } else {
            theta - theta.sin()
        };
        let minor = 0.5 * r * r * theta_minus_sin;
        if f.major {
            PI * r * r - minor
        } else {
            minor
        }
    }
}

/// Sum tree for area-proportional selection without subtractive drift.
struct SumTree {
    size: usize,
    nodes: Vec<f64>,
}

impl SumTree {
    fn new(capacity: usize) -> Self {
        let size = capacity.next_power_of_two().max(1);
        SumTree { size, nodes: vec![0.0; 2 * size] }
    }

    fn set(&mut self, i: usize, v: f64) {
        let mut k = i + self.size;
        self.nodes[k] = v;
        while k > 1 {
            k /= 2;
            self.nodes[k] = self.nodes[2 * k] + self.nodes[2 * k + 1];
        }
    }

    fn total(&self) -> f64 {
        self.nodes[1]
    }

    /// Leaf whose prefix interval contains `x` in [0, total).
    fn find(&self, mut x: f64) -> usize {
        let mut k = 1;
        while k < self.size {
            let left = self.nodes[2 * k];
            if x < left || self.nodes[2 * k + 1] <= 0.0 {
                k *= 2;
            } else {
                x -= left;
                k = 2 * k + 1;
            }
        }
        k - self.size
    }
}

#[derive(Debug, Clone)]
pub struct FdtHull {
    pub sample: HullSample,
    /// Simulated farthest triangles as indices into generation order.
    pub triangles: Vec<[usize; 3]>,
    /// Points in generation order.
    pub points: Vec<(f64, f64)>,
    /// Set when precision ran out before `n` vertices were placed.
    pub warning: Option<String>,
}

/// Simulates a farthest Delaunay triangulation inside the unit circle.
/// The normalized height of each new point above its chord is Beta(3, 1);
/// the lateral position is uniform across the circle at that height.
pub fn gen_fdt_hull(n: usize, seed: u64) -> Result<FdtHull, HullError> {
    if n < 3 {
        return Err(HullError::TooFewVertices(n));
    }
    let mut rng = rng_for(seed);
    let beta = Beta::new(3.0, 1.0).expect("valid beta parameters");
    let t0: f64 = rng.gen_range(-PI..PI);
    let t1: f64 = rng.gen_range(-PI..PI);
    let mut points = vec![(t0.cos(), t0.sin()), (t1.cos(), t1.sin())];
    if points[0] == points[1] {
        return Err(HullError::Degenerate);
    }
    let mut next = vec![1usize, 0];
    let unit = |a, b| CircularSegment { a, b, center: (0.0, 0.0), radius: 1.0 };
    let mut segments = vec![unit(0, 1), unit(1, 0)];
    let mut tree = SumTree::new(n);
    for (i, s) in segments.iter().enumerate() {
        tree.set(i, s.area(&points));
    }
    let mut triangles = Vec::with_capacity(n - 2);
    let mut warning = None;

    while points.len() < n {
        let total = tree.total();
        if !(total > 0.0) {
            warning = Some(format!("stopped at {} vertices: all circular segments collapsed", points.len()));
            break;
        }
        let slot = tree.find(rng.gen_range(0.0..total)).min(segments.len() - 1);
        let seg = segments[slot];
        let placed = seg.frame(&points).and_then(|f| {
            let y = beta.sample(&mut rng) * f.height;
            let half = f.half_width(seg.radius, y);
            let s = if half > 0.0 { rng.gen_range(-half..=half) } else { 0.0 };
            let p = (f.mid.0 + y * f.normal.0 + s * f.along.0, f.mid.1 + y * f.normal.1 + s * f.along.1);
            let (pa, pb) = (points[seg.a], points[seg.b]);
            let strictly_outside = cross(pa, pb, p) < 0.0;
            let circle = circumcircle_f64(pa, p, pb);
            match circle {
                Some((c, r)) if strictly_outside && p != pa && p != pb => Some((p, c, r)),
                _ => None,
            }
        });
        let Some((p, center, radius)) = placed else {
            // The chosen segment is below float resolution; retire it.
            tree.set(slot, 0.0);
            continue;
        };
        let pi = points.len();
        points.push(p);
        next.push(seg.b);
        next[seg.a] = pi;
        triangles.push([seg.a, pi, seg.b]);
        let left = CircularSegment { a: seg.a, b: pi, center, radius };
        let right = CircularSegment { a: pi, b: seg.b, center, radius };
        segments[slot] = left;
        tree.set(slot, left.area(&points));
        segments.push(right);
        tree.set(segments.len() - 1, right.area(&points));
    }

    let mut vertices = Vec::with_capacity(points.len());
    let mut at = 0;
    loop {
        vertices.push(points[at]);
        at = next[at];
        if at == 0 {
            break;
        }
    }
    Ok(FdtHull {
        sample: HullSample { vertices, generator: HullGenerator::FarthestDelaunay, seed },
        triangles,
        points,
        warning,
    })
}

fn circumcircle_f64(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<((f64, f64), f64)> {
    let (bx, by) = (b.0 - a.0, b.1 - a.1);
    let (cx, cy) = (c.0 - a.0, c.1 - a.1);
    let d = 2.0 * (bx * cy - by * cx);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let r = ux.hypot(uy);
    r.is_finite().then_some(((a.0 + ux, a.1 + uy), r))
}

/// Scale placing the sample's largest coordinate magnitude at `2^bits`.
pub fn grid_scale_for(sample: &HullSample, bits: u32) -> f64 {
    let extent = sample.vertices.iter().fold(0.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
    if extent > 0.0 {
        (1u64 << bits) as f64 / extent
    } else {
        1.0
    }
}

fn strictly_convex_ccw(points: &[IntPoint]) -> bool {
    let n = points.len();
    n >= 3 && (0..n).all(|i| orientation(points[i], points[(i + 1) % n], points[(i + 2) % n]) == Sign::Positive)
}

/// Rounds vertices to the grid and keeps the strictly convex subsequence.
/// When rounding reorders vertices enough that the kept subsequence is no
/// longer convex, the exact hull order is used instead.
pub fn finalize_hull(sample: &HullSample, scale: f64) -> Result<GridHull, HullError> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(HullError::InvalidScale);
    }
    let grid: Vec<IntPoint> = sample
        .vertices
        .iter()
        .map(|&(x, y)| IntPoint::new((x * scale).round() as i64, (y * scale).round() as i64))
        .collect();
    let hull = convex_hull(&grid);
    if hull.len() < 3 {
        return Err(HullError::Degenerate);
    }
    let mut keep = vec![false; grid.len()];
    for &i in &hull {
        keep[i] = true;
    }
    let subsequence: Vec<IntPoint> = (0..grid.len()).filter(|&i| keep[i]).map(|i| grid[i]).collect();
    let vertices = if strictly_convex_ccw(&subsequence) {
        subsequence
    } else {
        hull.iter().map(|&i| grid[i]).collect()
    };
    Ok(GridHull { vertices, generator: sample.generator, seed: sample.seed, scale })
}
