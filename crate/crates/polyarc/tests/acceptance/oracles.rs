//! Reference implementations, written without the library's predicates.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use polyarc::geometry_core::IntPoint;
use rand::Rng;

pub type Q = BigRational;

pub fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn sign_of<T: Signed>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Laplace expansion along the first row.
pub fn det<T>(m: &[Vec<T>]) -> T
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = T::zero();
    for col in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][col].clone() * det(&minor);
        acc = if col % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn lifted_row<T: Clone + Add<Output = T> + Mul<Output = T>>(x: T, y: T, one: T) -> Vec<T> {
    let norm = x.clone() * x.clone() + y.clone() * y.clone();
    vec![x, y, norm, one]
}

/// Sign of the 4×4 determinant with rows (x, y, x² + y², 1).
pub fn incircle_sign(q: [IntPoint; 4]) -> i8 {
    let m: Vec<Vec<BigInt>> =
        q.iter().map(|p| lifted_row(BigInt::from(p.x), BigInt::from(p.y), BigInt::from(1))).collect();
    sign_of(&det(&m))
}

/// Same determinant on rational coordinates.
pub fn incircle_sign_rational(q: &[(Q, Q); 4]) -> i8 {
    let m: Vec<Vec<Q>> = q.iter().map(|(x, y)| lifted_row(x.clone(), y.clone(), q_int(1))).collect();
    sign_of(&det(&m))
}

pub fn orient_sign(a: IntPoint, b: IntPoint, c: IntPoint) -> i8 {
    let v = (b.x as i128 - a.x as i128) * (c.y as i128 - a.y as i128)
        - (b.y as i128 - a.y as i128) * (c.x as i128 - a.x as i128);
    v.signum() as i8
}

/// Translated 3×3 in-circle determinant; exact for |coordinates| ≤ 2^24.
pub fn incircle_small(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> i8 {
    let r = |p: IntPoint| {
        let (x, y) = (p.x as i128 - d.x as i128, p.y as i128 - d.y as i128);
        (x, y, x * x + y * y)
    };
    let (ax, ay, al) = r(a);
    let (bx, by, bl) = r(b);
    let (cx, cy, cl) = r(c);
    let v = ax * (by * cl - bl * cy) - ay * (bx * cl - bl * cx) + al * (bx * cy - by * cx);
    v.signum() as i8
}

/// p ↦ o + (p − o)/‖p − o‖².
pub fn invert(p: IntPoint, o: IntPoint) -> (Q, Q) {
    let (dx, dy) = (p.x as i128 - o.x as i128, p.y as i128 - o.y as i128);
    let n = BigInt::from(dx * dx + dy * dy);
    (
        q_int(o.x) + Q::new(BigInt::from(dx), n.clone()),
        q_int(o.y) + Q::new(BigInt::from(dy), n),
    )
}

/// Distinct uniform points in [−half, half]².
pub fn distinct_points(rng: &mut impl Rng, n: usize, half: i64) -> Vec<IntPoint> {
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = IntPoint::new(rng.gen_range(-half..=half), rng.gen_range(-half..=half));
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

pub fn dedup(points: &[IntPoint]) -> Vec<IntPoint> {
    let mut seen = HashSet::new();
    points.iter().copied().filter(|p| seen.insert(*p)).collect()
}

/// Strict convex hull (monotone chain), counterclockwise.
pub fn strict_hull(points: &[IntPoint]) -> Vec<IntPoint> {
    let mut p = dedup(points);
    p.sort();
    if p.len() < 3 {
        return p;
    }
    let mut hull: Vec<IntPoint> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = hull.len();
        for &q in &p {
            while hull.len() >= start + 2 && orient_sign(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
        if pass == 0 {
            p.reverse();
        }
    }
    hull
}

/// Lattice points on x² + y² = 65.
pub const LATTICE_65: [(i64, i64); 16] = [
    (1, 8), (4, 7), (7, 4), (8, 1), (8, -1), (7, -4), (4, -7), (1, -8),
    (-1, -8), (-4, -7), (-7, -4), (-8, -1), (-8, 1), (-7, 4), (-4, 7), (-1, 8),
];

/// Circle center as (X/W, Y/W) with W > 0.
#[derive(Debug, Clone)]
pub struct Center {
    pub x: BigInt,
    pub y: BigInt,
    pub w: BigInt,
}

impl Center {
    fn normalized(x: BigInt, y: BigInt, w: BigInt) -> Option<Center> {
        if w.is_zero() {
            None
        } else if w.is_negative() {
            Some(Center { x: -x, y: -y, w: -w })
        } else {
            Some(Center { x, y, w })
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let q = |v: &BigInt| rational_f64(&Q::new(v.clone(), self.w.clone()));
        (q(&self.x), q(&self.y))
    }

    pub fn to_rational(&self) -> (Q, Q) {
        (Q::new(self.x.clone(), self.w.clone()), Q::new(self.y.clone(), self.w.clone()))
    }

    /// ‖p − c‖²·W².
    fn scaled_dist_sq(&self, p: IntPoint) -> BigInt {
        let dx = &self.x - BigInt::from(p.x) * &self.w;
        let dy = &self.y - BigInt::from(p.y) * &self.w;
        &dx * &dx + &dy * &dy
    }

    /// Exact (inner², outer²).
    pub fn radii_sq(&self, points: &[IntPoint]) -> (Q, Q) {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for &p in points {
            let d = self.scaled_dist_sq(p);
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d.clone());
            }
            if hi.as_ref().is_none_or(|h| d > *h) {
                hi = Some(d);
            }
        }
        let w2 = &self.w * &self.w;
        (Q::new(lo.expect("points"), w2.clone()), Q::new(hi.expect("points"), w2))
    }
}

pub fn float_width_at(cx: f64, cy: f64, points: &[IntPoint]) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for p in points {
        let d = (p.x as f64 - cx).hypot(p.y as f64 - cy);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    hi - lo
}

pub fn rational_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| {
        // Scale huge numerators and denominators down together.
        let shift = v.numer().bits().max(v.denom().bits()).saturating_sub(1000);
        let n = (v.numer() >> shift).to_f64().unwrap();
        let d = (v.denom() >> shift).to_f64().unwrap();
        n / d
    })
}

pub fn circumcenter(a: IntPoint, b: IntPoint, c: IntPoint) -> Option<Center> {
    let big = BigInt::from;
    let (bx, by) = (big(b.x) - big(a.x), big(b.y) - big(a.y));
    let (cx, cy) = (big(c.x) - big(a.x), big(c.y) - big(a.y));
    let d = (&bx * &cy - &by * &cx) * 2;
    let b2 = &bx * &bx + &by * &by;
    let c2 = &cx * &cx + &cy * &cy;
    let ux = &b2 * &cy - &c2 * &by;
    let uy = &c2 * &bx - &b2 * &cx;
    Center::normalized(big(a.x) * &d + ux, big(a.y) * &d + uy, d)
}

/// Point equidistant from a, b and from c, d.
pub fn bisector_meet(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Option<Center> {
    let big = BigInt::from;
    let line = |p: IntPoint, q: IntPoint| {
        let (u, v) = (big(q.x) - big(p.x), big(q.y) - big(p.y));
        let w = big(q.x) * big(q.x) + big(q.y) * big(q.y) - big(p.x) * big(p.x) - big(p.y) * big(p.y);
        (u * 2, v * 2, w)
    };
    let (a1, b1, c1) = line(a, b);
    let (a2, b2, c2) = line(c, d);
    let det = &a1 * &b2 - &a2 * &b1;
    Center::normalized(&c1 * &b2 - &c2 * &b1, &a1 * &c2 - &a2 * &c1, det)
}

/// a·√p against v, with p ≥ 0.
fn cmp_scaled_root(a: &Q, p: &Q, v: &Q) -> Ordering {
    let lhs = if p.is_zero() { 0 } else { sign_of(a) };
    let rhs = sign_of(v);
    match (lhs, rhs) {
        (l, r) if l >= 0 && r < 0 => Ordering::Greater,
        (l, r) if l <= 0 && r > 0 => Ordering::Less,
        (0, 0) => Ordering::Equal,
        (l, _) if l > 0 => (a * a * p).cmp(&(v * v)),
        _ => (v * v).cmp(&(a * a * p)),
    }
}

/// √a + √d against √b + √c for non-negative rationals.
pub fn cmp_root_sums(a: &Q, d: &Q, b: &Q, c: &Q) -> Ordering {
    let four = q_int(4);
    let u = a + d - b - c;
    let p = &four * a * d;
    let qq = &four * b * c;
    // Sign of u + √p.
    let left = cmp_scaled_root(&q_int(1), &p, &-u.clone());
    match left {
        Ordering::Less => Ordering::Less,
        Ordering::Equal => {
            if qq.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Less
            }
        }
        // (u + √p)² vs q  ⇔  2u√p vs q − u² − p.
        Ordering::Greater => cmp_scaled_root(&(&u * q_int(2)), &p, &(&qq - &u * &u - &p)),
    }
}

/// Compares √o₁ − √i₁ with √o₂ − √i₂.
pub fn cmp_width(i1: &Q, o1: &Q, i2: &Q, o2: &Q) -> Ordering {
    cmp_root_sums(o1, i2, o2, i1)
}

/// √outer − √inner ≤ 2·tol.
pub fn width_at_most(inner: &Q, outer: &Q, tol: &Q) -> bool {
    let lhs = outer - inner - q_int(4) * tol * tol;
    !lhs.is_positive() || &lhs * &lhs <= q_int(16) * tol * tol * inner
}

/// Whether a center lies in the axis-aligned square of half side `h`
/// around `mid`.
pub fn in_square(c: &Center, mid: IntPoint, h: &Q) -> bool {
    let (x, y) = c.to_rational();
    (x - q_int(mid.x)).abs() <= *h && (y - q_int(mid.y)).abs() <= *h
}

/// Bounding-box center, rounded toward −∞.
pub fn box_center(points: &[IntPoint]) -> IntPoint {
    let x0 = points.iter().map(|p| p.x).min().unwrap() as i128;
    let x1 = points.iter().map(|p| p.x).max().unwrap() as i128;
    let y0 = points.iter().map(|p| p.y).min().unwrap() as i128;
    let y1 = points.iter().map(|p| p.y).max().unwrap() as i128;
    IntPoint::new((x0 + x1).div_euclid(2) as i64, (y0 + y1).div_euclid(2) as i64)
}

/// Candidate center with its float position; the exact center is only
/// built for candidates that survive float screening.
pub struct Candidate {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    defining: Defining,
}

enum Defining {
    Circum([IntPoint; 3]),
    Meet([IntPoint; 4]),
}

impl Candidate {
    fn try_exact(&self) -> Option<Center> {
        match self.defining {
            Defining::Circum([a, b, c]) => circumcenter(a, b, c),
            Defining::Meet([a, b, c, d]) => bisector_meet(a, b, c, d),
        }
    }

    pub fn exact(&self) -> Center {
        self.try_exact().expect("float screening saw a finite center")
    }
}

/// (X, Y, W) of the circumcenter in i128, `None` on overflow; W may be 0.
fn circum_i128(a: IntPoint, b: IntPoint, c: IntPoint) -> Option<(i128, i128, i128)> {
    let (bx, by) = (b.x as i128 - a.x as i128, b.y as i128 - a.y as i128);
    let (cx, cy) = (c.x as i128 - a.x as i128, c.y as i128 - a.y as i128);
    let d = bx.checked_mul(cy)?.checked_sub(by.checked_mul(cx)?)?.checked_mul(2)?;
    let b2 = bx.checked_mul(bx)?.checked_add(by.checked_mul(by)?)?;
    let c2 = cx.checked_mul(cx)?.checked_add(cy.checked_mul(cy)?)?;
    let ux = b2.checked_mul(cy)?.checked_sub(c2.checked_mul(by)?)?;
    let uy = c2.checked_mul(bx)?.checked_sub(b2.checked_mul(cx)?)?;
    Some(((a.x as i128).checked_mul(d)?.checked_add(ux)?, (a.y as i128).checked_mul(d)?.checked_add(uy)?, d))
}

fn meet_i128(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Option<(i128, i128, i128)> {
    let line = |p: IntPoint, q: IntPoint| -> Option<(i128, i128, i128)> {
        let (px, py, qx, qy) = (p.x as i128, p.y as i128, q.x as i128, q.y as i128);
        let w = qx.checked_mul(qx)?.checked_add(qy.checked_mul(qy)?)?.checked_sub(px.checked_mul(px)?)?.checked_sub(py.checked_mul(py)?)?;
        Some(((qx - px) * 2, (qy - py) * 2, w))
    };
    let (a1, b1, c1) = line(a, b)?;
    let (a2, b2, c2) = line(c, d)?;
    let det = a1.checked_mul(b2)?.checked_sub(a2.checked_mul(b1)?)?;
    let x = c1.checked_mul(b2)?.checked_sub(c2.checked_mul(b1)?)?;
    let y = a1.checked_mul(c2)?.checked_sub(a2.checked_mul(c1)?)?;
    Some((x, y, det))
}

/// Square membership decided in floats away from the boundary, exactly near it.
struct SquareFilter<'a> {
    mid: IntPoint,
    h: &'a Q,
    hf: f64,
}

impl SquareFilter<'_> {
    fn admit(&self, defining: Defining, scaled: Option<(i128, i128, i128)>, points: &[IntPoint]) -> Option<Candidate> {
        let mut c = Candidate { x: 0.0, y: 0.0, width: 0.0, defining };
        let exact = match scaled {
            Some((_, _, 0)) => return None,
            Some((x, y, w)) => {
                (c.x, c.y) = (x as f64 / w as f64, y as f64 / w as f64);
                None
            }
            // i128 overflow: go exact right away.
            None => {
                let e = c.try_exact()?;
                (c.x, c.y) = e.to_f64();
                Some(e)
            }
        };
        self.finish(c, exact, points)
    }

    fn finish(&self, mut c: Candidate, exact: Option<Center>, points: &[IntPoint]) -> Option<Candidate> {
        let m = (c.x - self.mid.x as f64).abs().max((c.y - self.mid.y as f64).abs());
        if m > self.hf * (1.0 + 1e-9) + 1e-9 {
            return None;
        }
        if m >= self.hf * (1.0 - 1e-9) - 1e-9 && !in_square(&exact.unwrap_or_else(|| c.exact()), self.mid, self.h) {
            return None;
        }
        c.width = float_width_at(c.x, c.y, points);
        Some(c)
    }
}

/// Minimum-width annulus over every combinatorial candidate: the
/// circumcenter of each triple and the meet of each pair of bisectors,
/// restricted to the square. Returns (inner², outer²).
pub fn annulus_exhaustive(points: &[IntPoint], mid: IntPoint, h: &Q) -> Option<(Q, Q)> {
    let n = points.len();
    let sq = SquareFilter { mid, h, hf: rational_f64(h) };
    let mut cands: Vec<Candidate> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [points[i], points[j], points[k]];
                cands.extend(sq.admit(Defining::Circum(t), circum_i128(t[0], t[1], t[2]), points));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[x + 1..] {
            let m = [points[a], points[b], points[c], points[d]];
            cands.extend(sq.admit(Defining::Meet(m), meet_i128(m[0], m[1], m[2], m[3]), points));
        }
    }
    cands.sort_by(|a, b| a.width.total_cmp(&b.width));
    best_candidate(&cands, points)
}

fn best_candidate(sorted: &[Candidate], points: &[IntPoint]) -> Option<(Q, Q)> {
    // Float widths are off by far less than the slack, so only
    // near-minimal candidates can win; they are compared exactly.
    let cutoff = sorted.first()?.width * (1.0 + 1e-6) + 1e-6;
    let mut best: Option<(Q, Q)> = None;
    for c in sorted.iter().take_while(|c| c.width <= cutoff) {
        let (ri, ro) = c.exact().radii_sq(points);
        if best.as_ref().is_none_or(|(bi, bo)| cmp_width(&ri, &ro, bi, bo) == Ordering::Less) {
            best = Some((ri, ro));
        }
    }
    best
}

/// Candidate centers from the Delaunay duals of distinct points, inside
/// the square, sorted by float width: circumcenters of closest and
/// farthest triangles and meets of a closest-edge bisector with a
/// farthest-edge bisector.
pub struct DualCandidates {
    pts: Vec<IntPoint>,
    sorted: Vec<Candidate>,
}

impl DualCandidates {
    pub fn new(points: &[IntPoint], mid: IntPoint, h: &Q) -> DualCandidates {
        use polyarc::delaunay::{build_closest, build_farthest};
        let pts = dedup(points);
        let closest = build_closest(&pts).expect("closest");
        let farthest = build_farthest(&pts).expect("farthest");
        let sq = SquareFilter { mid, h, hf: rational_f64(h) };
        let at = |i: u32| pts[i as usize];
        let mut sorted: Vec<Candidate> = Vec::new();
        for t in closest.triangles().into_iter().chain(farthest.triangles()) {
            let t = [at(t[0]), at(t[1]), at(t[2])];
            sorted.extend(sq.admit(Defining::Circum(t), circum_i128(t[0], t[1], t[2]), &pts));
        }
        let far_edges = farthest.edges();
        for &(a, b) in &closest.edges() {
            for &(c, d) in &far_edges {
                let m = [at(a), at(b), at(c), at(d)];
                sorted.extend(sq.admit(Defining::Meet(m), meet_i128(m[0], m[1], m[2], m[3]), &pts));
            }
        }
        sorted.sort_by(|a, b| a.width.total_cmp(&b.width));
        DualCandidates { pts, sorted }
    }

    /// Minimum width over the candidates, as (inner², outer²).
    pub fn min(&self) -> (Q, Q) {
        best_candidate(&self.sorted, &self.pts).expect("candidates")
    }

    /// Exact decision "some center in the square has width ≤ 2·tol".
    pub fn decide(&self, tol: f64) -> bool {
        let tq = Q::from_float(tol).expect("finite tolerance");
        let margin = 1e-7 * (self.sorted.first().map_or(0.0, |c| c.width) + 1.0);
        self.sorted.iter().take_while(|c| c.width <= 2.0 * tol + margin).any(|c| {
            let (ri, ro) = c.exact().radii_sq(&self.pts);
            width_at_most(&ri, &ro, &tq)
        })
    }
}

/// Chord frame for arcs through the first and last point: centers lie at
/// mid + t·n, with n the left normal of a→b.
pub struct Bisector {
    half: f64,
    locals: Vec<(f64, f64)>,
}

impl Bisector {
    pub fn new(points: &[IntPoint]) -> Bisector {
        let (a, b) = (points[0], *points.last().unwrap());
        let (dx, dy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
        let len = dx.hypot(dy);
        let mid = ((a.x as f64 + b.x as f64) / 2.0, (a.y as f64 + b.y as f64) / 2.0);
        let e = (dx / len, dy / len);
        let locals = points[1..points.len() - 1]
            .iter()
            .map(|p| {
                let (x, y) = (p.x as f64 - mid.0, p.y as f64 - mid.1);
                (x * e.0 + y * e.1, -x * e.1 + y * e.0)
            })
            .collect();
        Bisector { half: len / 2.0, locals }
    }

    /// Largest radial deviation of the interior points for center `t`.
    pub fn max_deviation(&self, t: f64) -> f64 {
        let h = self.half;
        let r = h.hypot(t);
        self.locals
            .iter()
            .map(|&(u, v)| ((u * u + v * v - 2.0 * v * t - h * h) / (u.hypot(v - t) + r)).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest achievable maximum deviation: `samples` centers at
    /// t = h·tan θ over θ ∈ (−π/2, π/2), then golden-section refinement
    /// around the best local minima.
    pub fn min_max_deviation(&self, samples: usize) -> f64 {
        use std::f64::consts::PI;
        let theta = |k: f64| -PI / 2.0 + PI * (k + 0.5) / samples as f64;
        let g = |th: f64| self.max_deviation(self.half * th.tan());
        let vals: Vec<f64> = (0..samples).map(|k| g(theta(k as f64))).collect();
        let mut minima: Vec<usize> = (0..samples)
            .filter(|&k| (k == 0 || vals[k] <= vals[k - 1]) && (k + 1 == samples || vals[k] <= vals[k + 1]))
            .collect();
        minima.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let mut best = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        for &k in minima.iter().take(6) {
            let (mut lo, mut hi) = (theta(k as f64 - 1.0).max(-PI / 2.0 + 1e-12), theta(k as f64 + 1.0).min(PI / 2.0 - 1e-12));
            let mut x1 = hi - phi * (hi - lo);
            let mut x2 = lo + phi * (hi - lo);
            let (mut f1, mut f2) = (g(x1), g(x2));
            for _ in 0..120 {
                if f1 <= f2 {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - phi * (hi - lo);
                    f1 = g(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + phi * (hi - lo);
                    f2 = g(x2);
                }
            }
            best = best.min(f1).min(f2);
        }
        best
    }
}

/// Distance from `p` to the arc from `s` to `e` around `c`, travelled
/// counterclockwise when `ccw`.
pub fn arc_distance(p: IntPoint, s: IntPoint, e: IntPoint, c: (f64, f64), r: f64, ccw: bool) -> f64 {
    use std::f64::consts::TAU;
    let ang = |q: IntPoint| (q.y as f64 - c.1).atan2(q.x as f64 - c.0);
    let dir = if ccw { 1.0 } else { -1.0 };
    let sweep = (dir * (ang(e) - ang(s))).rem_euclid(TAU);
    let pos = (dir * (ang(p) - ang(s))).rem_euclid(TAU);
    let point = |q: IntPoint| ((p.x - q.x) as f64).hypot((p.y - q.y) as f64);
    if pos <= sweep {
        ((p.x as f64 - c.0).hypot(p.y as f64 - c.1) - r).abs()
    } else {
        point(s).min(point(e))
    }
}

pub fn segment_distance(p: IntPoint, a: IntPoint, b: IntPoint) -> f64 {
    let (dx, dy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
    let (px, py) = ((p.x - a.x) as f64, (p.y - a.y) as f64);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { ((px * dx + py * dy) / len2).clamp(0.0, 1.0) };
    (px - s * dx).hypot(py - s * dy)
}
