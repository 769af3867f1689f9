//! Exact planar kernel: integer and rational points, orientation and
//! in-circle predicates, circumcircles and circle inversion.
//!
//! Integer predicates never round. `orientation` runs in `i128`; `incircle`
//! first tries a floating-point evaluation with a static error bound and
//! falls back to 256-bit integers when the bound cannot certify the sign.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use ethnum::I256;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used for circumcenters, sweep events and radii.
pub type Rational = BigRational;

/// Largest admissible absolute coordinate. Keeps every in-circle term below
/// 2^250 so the 256-bit evaluation cannot overflow.
pub const COORD_LIMIT: i64 = 1 << 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("inversion center coincides with point")]
    InversionCenterCoincides,
    #[error("degenerate circumcircle")]
    DegenerateCircumcircle,
    #[error("coordinate {0} exceeds the supported range of ±2^60")]
    CoordinateOutOfRange(i64),
}

/// Point on the integer grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoint {
    pub x: i64,
    pub y: i64,
}

impl IntPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        IntPoint { x, y }
    }

    pub fn checked(x: i64, y: i64) -> Result<Self, GeometryError> {
        for v in [x, y] {
            if v.unsigned_abs() > COORD_LIMIT as u64 {
                return Err(GeometryError::CoordinateOutOfRange(v));
            }
        }
        Ok(IntPoint { x, y })
    }

    pub fn dist_sq(self, other: IntPoint) -> i128 {
        let dx = (self.x - other.x) as i128;
        let dy = (self.y - other.y) as i128;
        dx * dx + dy * dy
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.x as f64, self.y as f64)
    }

    pub fn to_rational(self) -> RationalPoint {
        RationalPoint::from(self)
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Exact sign of a determinant or difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: PartialOrd + Default>(v: T) -> Sign {
        let zero = T::default();
        if v > zero {
            Sign::Positive
        } else if v < zero {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn of_rational(v: &Rational) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn of_bigint(v: &BigInt) -> Sign {
        match v.sign() {
            num_bigint::Sign::Plus => Sign::Positive,
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// Point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint {
            x: Rational::from_integer(BigInt::from(x)),
            y: Rational::from_integer(BigInt::from(y)),
        }
    }

    pub fn origin() -> Self {
        RationalPoint::from_ints(0, 0)
    }

    pub fn dist_sq(&self, other: &RationalPoint) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn dist_sq_int(&self, p: IntPoint) -> Rational {
        let dx = &self.x - Rational::from_integer(BigInt::from(p.x));
        let dy = &self.y - Rational::from_integer(BigInt::from(p.y));
        &dx * &dx + &dy * &dy
    }

    pub fn cross(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &Rational) -> RationalPoint {
        RationalPoint::new(&self.x * k, &self.y * k)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }

    /// Lexicographic comparison by x, then y.
    pub fn cmp_xy(&self, other: &RationalPoint) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }

    /// Whether the point has integer coordinates.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }
}

impl From<IntPoint> for RationalPoint {
    fn from(p: IntPoint) -> Self {
        RationalPoint::from_ints(p.x, p.y)
    }
}

impl Add for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, o: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Circle with exact rational center and squared radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCircle {
    pub center: RationalPoint,
    pub radius_sq: Rational,
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerator and denominator: shift both to f64 range.
        let n = r.numer();
        let d = r.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
        let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
        nf / df
    })
}

pub fn int_rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Sign of (b−a)×(c−a); positive means a, b, c turn counterclockwise.
pub fn orientation(a: IntPoint, b: IntPoint, c: IntPoint) -> Sign {
    let abx = (b.x - a.x) as i128;
    let aby = (b.y - a.y) as i128;
    let acx = (c.x - a.x) as i128;
    let acy = (c.y - a.y) as i128;
    Sign::of(abx * acy - aby * acx)
}

/// Exact cross product (b−a)×(c−a).
pub fn cross_i128(a: IntPoint, b: IntPoint, c: IntPoint) -> i128 {
    let abx = (b.x - a.x) as i128;
    let aby = (b.y - a.y) as i128;
    let acx = (c.x - a.x) as i128;
    let acy = (c.y - a.y) as i128;
    abx * acy - aby * acx
}

/// In-circle predicate: for counterclockwise a, b, c the result is positive
/// iff d lies strictly inside their circumcircle.
pub fn incircle(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Sign {
    debug_assert!([a, b, c, d]
        .iter()
        .all(|p| p.x.unsigned_abs() <= COORD_LIMIT as u64 && p.y.unsigned_abs() <= COORD_LIMIT as u64));
    if let Some(s) = incircle_filtered(a, b, c, d) {
        return s;
    }
    incircle_exact(a, b, c, d)
}

/// Relative error bound of the floating-point evaluation, including the
/// rounding of the input differences. Deliberately loose.
const INCIRCLE_FILTER_EPS: f64 = 1e-12;

fn incircle_filtered(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Option<Sign> {
    let adx = (a.x as i128 - d.x as i128) as f64;
    let ady = (a.y as i128 - d.y as i128) as f64;
    let bdx = (b.x as i128 - d.x as i128) as f64;
    let bdy = (b.y as i128 - d.y as i128) as f64;
    let cdx = (c.x as i128 - d.x as i128) as f64;
    let cdy = (c.y as i128 - d.y as i128) as f64;

    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;

    let bc = bdx * cdy - bdy * cdx;
    let ca = cdx * ady - cdy * adx;
    let ab = adx * bdy - ady * bdx;
    let det = alift * bc + blift * ca + clift * ab;

    let permanent = alift * ((bdx * cdy).abs() + (bdy * cdx).abs())
        + blift * ((cdx * ady).abs() + (cdy * adx).abs())
        + clift * ((adx * bdy).abs() + (ady * bdx).abs());
    let bound = INCIRCLE_FILTER_EPS * permanent;
    if det > bound {
        Some(Sign::Positive)
    } else if det < -bound {
        Some(Sign::Negative)
    } else if permanent == 0.0 {
        Some(Sign::Zero)
    } else {
        None
    }
}

/// 256-bit evaluation of the in-circle determinant, translated to d.
pub fn incircle_exact(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Sign {
    let adx = a.x as i128 - d.x as i128;
    let ady = a.y as i128 - d.y as i128;
    let bdx = b.x as i128 - d.x as i128;
    let bdy = b.y as i128 - d.y as i128;
    let cdx = c.x as i128 - d.x as i128;
    let cdy = c.y as i128 - d.y as i128;

    let alift = I256::from(adx * adx + ady * ady);
    let blift = I256::from(bdx * bdx + bdy * bdy);
    let clift = I256::from(cdx * cdx + cdy * cdy);

    let bc = I256::from(bdx * cdy - bdy * cdx);
    let ca = I256::from(cdx * ady - cdy * adx);
    let ab = I256::from(adx * bdy - ady * bdx);

    let det = alift * bc + blift * ca + clift * ab;
    Sign::of(det)
}

/// In-circle test for the farthest-point triangulation: the negated
/// closest-point determinant, evaluated in the original coordinates.
pub fn incircle_farthest(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Sign {
    -incircle(a, b, c, d)
}

/// Orientation on rational points.
pub fn orientation_rational(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Sign {
    let ab = b - a;
    let ac = c - a;
    Sign::of_rational(&ab.cross(&ac))
}

/// In-circle determinant on rational points, same sign convention as
/// [`incircle`].
pub fn incircle_rational(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
    d: &RationalPoint,
) -> Sign {
    let ad = a - d;
    let bd = b - d;
    let cd = c - d;
    let alift = ad.dot(&ad);
    let blift = bd.dot(&bd);
    let clift = cd.dot(&cd);
    let det = alift * bd.cross(&cd) + blift * cd.cross(&ad) + clift * ad.cross(&bd);
    Sign::of_rational(&det)
}

/// Inversion about the unit circle centered at `o`: o + (p−o)/‖p−o‖².
pub fn invert_point(p: IntPoint, o: IntPoint) -> Result<RationalPoint, GeometryError> {
    invert_rational(&p.to_rational(), &o.to_rational())
}

/// Inversion of a rational point about the unit circle centered at `o`.
pub fn invert_rational(p: &RationalPoint, o: &RationalPoint) -> Result<RationalPoint, GeometryError> {
    let d = p - o;
    let n2 = d.dot(&d);
    if n2.is_zero() {
        return Err(GeometryError::InversionCenterCoincides);
    }
    let inv = n2.recip();
    Ok(o + &d.scale(&inv))
}

/// Exact circumcircle of three non-collinear integer points.
pub fn circumcircle(a: IntPoint, b: IntPoint, c: IntPoint) -> Result<ExactCircle, GeometryError> {
    let center = circumcenter(a, b, c)?;
    let radius_sq = center.dist_sq_int(a);
    Ok(ExactCircle { center, radius_sq })
}

pub fn circumcenter(a: IntPoint, b: IntPoint, c: IntPoint) -> Result<RationalPoint, GeometryError> {
    let bx = BigInt::from(b.x as i128 - a.x as i128);
    let by = BigInt::from(b.y as i128 - a.y as i128);
    let cx = BigInt::from(c.x as i128 - a.x as i128);
    let cy = BigInt::from(c.y as i128 - a.y as i128);
    let d: BigInt = (&bx * &cy - &by * &cx) * 2u32;
    if d.is_zero() {
        return Err(GeometryError::DegenerateCircumcircle);
    }
    let b2 = &bx * &bx + &by * &by;
    let c2 = &cx * &cx + &cy * &cy;
    let ux = &cy * &b2 - &by * &c2;
    let uy = &bx * &c2 - &cx * &b2;
    let x = Rational::new(ux, d.clone()) + int_rational(a.x);
    let y = Rational::new(uy, d) + int_rational(a.y);
    Ok(RationalPoint::new(x, y))
}

/// Exact circumcenter of three rational points.
pub fn circumcenter_rational(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
) -> Result<RationalPoint, GeometryError> {
    let ba = b - a;
    let ca = c - a;
    let d = ba.cross(&ca) * Rational::from_integer(BigInt::from(2));
    if d.is_zero() {
        return Err(GeometryError::DegenerateCircumcircle);
    }
    let b2 = ba.dot(&ba);
    let c2 = ca.dot(&ca);
    let ux = (&ca.y * &b2 - &ba.y * &c2) / &d;
    let uy = (&ba.x * &c2 - &ca.x * &b2) / &d;
    Ok(RationalPoint::new(&a.x + ux, &a.y + uy))
}

/// Strict convex hull (no collinear vertices) as indices into `points`, in
/// counterclockwise order starting at the lexicographically smallest point.
/// Duplicates are tolerated. Fewer than three distinct extreme points yield
/// one or two indices.
pub fn convex_hull(points: &[IntPoint]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].x, points[i].y));
    order.dedup_by_key(|i| points[*i]);
    if order.len() <= 2 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && orientation(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i])
                    != Sign::Positive
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    if hull.len() == 2 && points[hull[0]] == points[hull[1]] {
        hull.pop();
    }
    hull
}
