//! Dyadic tree of convex hulls over vertex ranges.
//!
//! Level `q` holds hulls of [k·2^q, (k+1)·2^q − 1] for complete blocks
//! only. Hulls above level 0 are built on first use.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::FromPrimitive;

use crate::geometry_core::{convex_hull, cross_i128, IntPoint, Rational};

/// Strictly convex CCW polygon starting at its lexicographic minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    vertices: Vec<IntPoint>,
    /// Index of the lexicographic maximum; splits lower and upper chains.
    split: usize,
}

impl Hull {
    pub fn of_points(points: &[IntPoint]) -> Hull {
        let idx = convex_hull(points);
        let vertices: Vec<IntPoint> = if idx.is_empty() {
            // Collinear or tiny input: the two lexicographic extremes.
            let lo = points.iter().min_by_key(|p| (p.x, p.y)).copied();
            let hi = points.iter().max_by_key(|p| (p.x, p.y)).copied();
            let mut v: Vec<IntPoint> = lo.into_iter().chain(hi).collect();
            v.dedup();
            v
        } else {
            idx.iter().map(|&i| points[i]).collect()
        };
        let split = (0..vertices.len()).max_by_key(|&i| (vertices[i].x, vertices[i].y)).unwrap_or(0);
        Hull { vertices, split }
    }

    pub fn vertices(&self) -> &[IntPoint] {
        &self.vertices
    }

    /// Position of the maximum of `f` along a monotone chain given by
    /// `m` vertices `at(0..m)`.
    fn chain_max(m: usize, at: impl Fn(usize) -> IntPoint, f: &impl Fn(IntPoint) -> i128) -> usize {
        // Edge differences change sign at most once along a monotone chain.
        if m == 1 {
            return 0;
        }
        let step = |i: usize| f(at(i + 1)) - f(at(i));
        if step(0) > 0 {
            let (mut lo, mut hi) = (0usize, m - 1);
            // First edge that stops increasing.
            while lo < hi {
                let mid = (lo + hi) / 2;
                if step(mid) > 0 {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        } else if f(at(0)) >= f(at(m - 1)) {
            0
        } else {
            m - 1
        }
    }

    /// Index of a vertex maximizing the linear functional `f`.
    pub fn extreme(&self, f: impl Fn(IntPoint) -> i128) -> usize {
        let v = &self.vertices;
        let n = v.len();
        let i = Self::chain_max(self.split + 1, |k| v[k], &f);
        // Upper chain: split..n then back to vertex 0.
        let j = (Self::chain_max(n - self.split + 1, |k| v[(self.split + k) % n], &f) + self.split) % n;
        if f(v[j]) > f(v[i]) {
            j
        } else {
            i
        }
    }
}

/// Reference to a stored hull: level and block index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HullRef {
    pub level: u32,
    pub block: usize,
}

impl HullRef {
    pub fn range(&self) -> (usize, usize) {
        let size = 1usize << self.level;
        (self.block * size, (self.block + 1) * size - 1)
    }
}

#[derive(Debug)]
pub struct HullTree {
    points: Vec<IntPoint>,
    /// levels[q − 1] for q ≥ 1.
    levels: Vec<Vec<OnceLock<Hull>>>,
    singles: Vec<Hull>,
}

impl HullTree {
    pub fn build(points: &[IntPoint]) -> HullTree {
        assert!(!points.is_empty(), "hull tree needs at least one vertex");
        let n = points.len();
        let mut levels = Vec::new();
        let mut q = 1;
        while (1usize << q) <= n {
            levels.push((0..n >> q).map(|_| OnceLock::new()).collect());
            q += 1;
        }
        let singles = points.iter().map(|&p| Hull { vertices: vec![p], split: 0 }).collect();
        HullTree { points: points.to_vec(), levels, singles }
    }

    /// Materializes every hull; answers are unchanged.
    pub fn force_all(&self) {
        for (q, level) in self.levels.iter().enumerate() {
            for k in 0..level.len() {
                self.hull(HullRef { level: q as u32 + 1, block: k });
            }
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[IntPoint] {
        &self.points
    }

    pub fn level_count(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn blocks_at(&self, level: u32) -> usize {
        if level == 0 {
            self.points.len()
        } else {
            self.levels[level as usize - 1].len()
        }
    }

    pub fn hull(&self, r: HullRef) -> &Hull {
        if r.level == 0 {
            return &self.singles[r.block];
        }
        self.levels[r.level as usize - 1][r.block].get_or_init(|| {
            let left = self.hull(HullRef { level: r.level - 1, block: 2 * r.block });
            let right = self.hull(HullRef { level: r.level - 1, block: 2 * r.block + 1 });
            let mut merged = left.vertices.clone();
            merged.extend_from_slice(&right.vertices);
            Hull::of_points(&merged)
        })
    }

    /// Minimal dyadic cover of [i, j], longest blocks first from the left.
    pub fn query_cover(&self, i: usize, j: usize) -> Vec<HullRef> {
        assert!(i <= j && j < self.points.len(), "invalid range");
        let mut out = Vec::new();
        let mut at = i;
        while at <= j {
            let mut q = 0u32;
            loop {
                let size = 1usize << (q + 1);
                let fits = at.is_multiple_of(size) && at + size - 1 <= j && ((q + 1) as usize) < self.level_count();
                if !fits {
                    break;
                }
                q += 1;
            }
            out.push(HullRef { level: q, block: at >> q });
            at += 1 << q;
        }
        out
    }

    /// Every vertex of [i, j] within `tol` of segment [s, e], and the range
    /// ends within `tol` of the matching segment ends.
    pub fn segment_within_tolerance(&self, i: usize, j: usize, s: IntPoint, e: IntPoint, tol: f64) -> bool {
        let t = Tolerance::new(tol);
        if !t.covers_sq(self.points[i].dist_sq(s)) || !t.covers_sq(self.points[j].dist_sq(e)) {
            return false;
        }
        self.query_cover(i, j).iter().all(|&r| hull_within_capsule(self.hull(r), s, e, &t))
    }

    /// Minimum width of the hull of [i, j] strictly above `threshold`.
    pub fn range_min_width_exceeds(&self, i: usize, j: usize, threshold: f64) -> bool {
        let mut merged = Vec::new();
        for r in self.query_cover(i, j) {
            merged.extend_from_slice(self.hull(r).vertices());
        }
        let hull = Hull::of_points(&merged);
        width_exceeds(hull.vertices(), &Tolerance::new(threshold))
    }
}

/// Exact comparisons against a float tolerance, filtered through f64.
#[derive(Debug, Clone)]
pub struct Tolerance {
    value: f64,
    exact: Rational,
}

impl Tolerance {
    pub fn new(value: f64) -> Self {
        assert!(value.is_finite() && value >= 0.0, "tolerance must be finite and non-negative");
        Tolerance { value, exact: Rational::from_f64(value).expect("finite") }
    }

    /// a² ≤ tol² · scale (a, scale ≥ 0).
    pub fn covers_scaled(&self, a: i128, scale: i128) -> bool {
        let a = a.unsigned_abs();
        let lhs = (a as f64) * (a as f64);
        let rhs = self.value * self.value * scale as f64;
        if lhs < rhs * (1.0 - 1e-9) {
            return true;
        }
        if lhs > rhs * (1.0 + 1e-9) {
            return false;
        }
        let a = BigInt::from(a);
        Rational::from_integer(&a * &a) <= &self.exact * &self.exact * Rational::from_integer(BigInt::from(scale))
    }

    /// d² ≤ tol² for a squared distance d².
    pub fn covers_sq(&self, d2: i128) -> bool {
        let lhs = d2 as f64;
        let rhs = self.value * self.value;
        if lhs < rhs * (1.0 - 1e-9) {
            return true;
        }
        if lhs > rhs * (1.0 + 1e-9) {
            return false;
        }
        Rational::from_integer(BigInt::from(d2)) <= &self.exact * &self.exact
    }

    /// a² > tol² · scale: strict counterpart of `covers_scaled`.
    pub fn exceeded_scaled(&self, a: i128, scale: i128) -> bool {
        !self.covers_scaled(a, scale)
    }
}

fn dot(a: IntPoint, b: IntPoint, c: IntPoint) -> i128 {
    (b.x - a.x) as i128 * (c.x - a.x) as i128 + (b.y - a.y) as i128 * (c.y - a.y) as i128
}

/// Every hull vertex within `tol` of segment [s, e].
fn hull_within_capsule(hull: &Hull, s: IntPoint, e: IntPoint, tol: &Tolerance) -> bool {
    let v = hull.vertices();
    if s == e {
        return v.iter().all(|&p| tol.covers_sq(p.dist_sq(s)));
    }
    let len2 = s.dist_sq(e);
    // Strip: extreme signed offsets on both sides of the supporting line.
    let hi = hull.extreme(|p| cross_i128(s, e, p));
    let lo = hull.extreme(|p| -cross_i128(s, e, p));
    if !tol.covers_scaled(cross_i128(s, e, v[hi]), len2) || !tol.covers_scaled(cross_i128(s, e, v[lo]), len2) {
        return false;
    }
    // Caps: vertices projecting past an end must be near that end. They
    // form a contiguous run around the extreme vertex in that direction.
    let ahead = hull.extreme(|p| dot(s, e, p));
    if dot(s, e, v[ahead]) > len2 && !run_near(v, ahead, |p| dot(s, e, p) > len2, e, tol) {
        return false;
    }
    let behind = hull.extreme(|p| -dot(s, e, p));
    if dot(s, e, v[behind]) < 0 && !run_near(v, behind, |p| dot(s, e, p) < 0, s, tol) {
        return false;
    }
    true
}

fn run_near(v: &[IntPoint], start: usize, beyond: impl Fn(IntPoint) -> bool, anchor: IntPoint, tol: &Tolerance) -> bool {
    let n = v.len();
    let ok = |i: usize| tol.covers_sq(v[i].dist_sq(anchor));
    if !ok(start) {
        return false;
    }
    let mut steps = 1;
    while steps < n && beyond(v[(start + steps) % n]) {
        if !ok((start + steps) % n) {
            return false;
        }
        steps += 1;
    }
    let mut back = 1;
    while back + steps <= n && beyond(v[(start + n - back) % n]) {
        if !ok((start + n - back) % n) {
            return false;
        }
        back += 1;
    }
    true
}

/// Minimum width of a strictly convex CCW polygon above `threshold`, by
/// rotating calipers.
fn width_exceeds(v: &[IntPoint], threshold: &Tolerance) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    let mut j = 1;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        while cross_i128(a, b, v[(j + 1) % n]) > cross_i128(a, b, v[j]) {
            j = (j + 1) % n;
        }
        if !threshold.exceeded_scaled(cross_i128(a, b, v[j]), a.dist_sq(b)) {
            return false;
        }
    }
    true
}
