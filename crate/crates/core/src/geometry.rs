//! Plane geometry for the symmetric quadratic Bézier curve with control
//! points `(p, q)`, `(0, 0)`, `(q, p)`.
//!
//! The curve is `c(t) = (1-t)^2 (p, q) + t^2 (q, p)`. Its two control legs
//! are `alpha(t) = (1-t)(p, q)` and `beta(t) = t(q, p)`, and the chord
//! `gamma_s` from `alpha(s)` to `beta(s)` is tangent to the curve at `c(s)`.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("direction vector must be nonzero")]
    ZeroDirection,
    #[error("tangent parameter must lie in (0, 1), got {0}")]
    ParameterOutOfRange(f64),
    #[error("curve requires p ≥ 1 and q ≥ 0, got ({p}, {q})")]
    InvalidCurve { p: i64, q: i64 },
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// Absolute tolerance at unit scale, relative at large scale:
/// `1e-9 * max(1, scale)`.
pub fn tolerance(scale: f64) -> f64 {
    1e-9 * scale.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Exact for integers below `2^53`.
    #[inline]
    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(x as f64, y as f64)
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2-D cross product.
    #[inline]
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    #[inline]
    fn mul(self, rhs: Point2) -> Point2 {
        Point2::new(self * rhs.x, self * rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// `(1 - t) a + t b`.
#[inline]
pub fn linear_bezier(a: Point2, b: Point2, t: f64) -> Point2 {
    (1.0 - t) * a + t * b
}

/// Straight segment from `start` (A) to `end` (B). Zero length is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point2,
    pub end: Point2,
}

impl Segment {
    #[inline]
    pub const fn new(start: Point2, end: Point2) -> Self {
        Self { start, end }
    }

    /// Affine parametrization `(1 - t) start + t end`.
    #[inline]
    pub fn at(&self, t: f64) -> Point2 {
        linear_bezier(self.start, self.end, t)
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    #[inline]
    pub fn reversed(&self) -> Segment {
        Segment::new(self.end, self.start)
    }
}

/// Endpoint distance
/// `max(min(|A1-A2|, |A1-B2|), min(|B1-A2|, |B1-B2|))`
/// with `l1`'s endpoints outermost. Not symmetric in general, and not the
/// Hausdorff distance between the segments.
pub fn segment_distance(l1: &Segment, l2: &Segment) -> f64 {
    let from = |p: Point2| p.distance(l2.start).min(p.distance(l2.end));
    from(l1.start).max(from(l1.end))
}

/// `max(segment_distance(l1, l2), segment_distance(l2, l1))`, for diagnostics.
pub fn segment_distance_symmetric(l1: &Segment, l2: &Segment) -> f64 {
    segment_distance(l1, l2).max(segment_distance(l2, l1))
}

/// The curve `c_{p,q}` with implicit control points `(p, q)`, `(0, 0)`,
/// `(q, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadBezier {
    p: i64,
    q: i64,
}

impl QuadBezier {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 0 {
            return Err(GeometryError::InvalidCurve { p, q });
        }
        Ok(Self { p, q })
    }

    #[inline]
    pub fn p(&self) -> i64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> i64 {
        self.q
    }

    /// `p == q` collapses the curve onto a single point.
    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.p == self.q
    }

    /// Control points `[P0, P1, P2]`.
    pub fn control_points(&self) -> [Point2; 3] {
        [self.start_point(), Point2::ORIGIN, self.end_point()]
    }

    #[inline]
    pub fn start_point(&self) -> Point2 {
        Point2::from_ints(self.p, self.q)
    }

    #[inline]
    pub fn end_point(&self) -> Point2 {
        Point2::from_ints(self.q, self.p)
    }

    /// Tolerance used when comparing quantities attached to this curve.
    pub fn tolerance(&self) -> f64 {
        tolerance(self.start_point().norm())
    }

    /// `c'(t) = -2(1-t)(p, q) + 2t(q, p)`.
    pub fn derivative(&self, t: f64) -> Point2 {
        -2.0 * (1.0 - t) * self.start_point() + 2.0 * t * self.end_point()
    }
}

/// `(1 - t)(p, q)`.
#[inline]
pub fn alpha(curve: &QuadBezier, t: f64) -> Point2 {
    (1.0 - t) * curve.start_point()
}

/// `t(q, p)`.
#[inline]
pub fn beta(curve: &QuadBezier, t: f64) -> Point2 {
    t * curve.end_point()
}

/// Point at `t` on the chord from `alpha(s)` to `beta(s)`.
#[inline]
pub fn gamma(curve: &QuadBezier, s: f64, t: f64) -> Point2 {
    linear_bezier(alpha(curve, s), beta(curve, s), t)
}

/// `(1-t)^2 (p, q) + t^2 (q, p)`.
#[inline]
pub fn quad_point(curve: &QuadBezier, t: f64) -> Point2 {
    let mt = 1.0 - t;
    (mt * mt) * curve.start_point() + (t * t) * curve.end_point()
}

/// The tangent chord from `alpha(t0)` to `beta(t0)`; its parametrization is
/// `gamma_{t0}`. Degenerate curves (`p == q`) are accepted, see
/// [`QuadBezier::is_degenerate`].
pub fn tangent_segment(curve: &QuadBezier, t0: f64) -> Result<Segment> {
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(GeometryError::ParameterOutOfRange(t0));
    }
    Ok(Segment::new(alpha(curve, t0), beta(curve, t0)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    /// Coordinate along `direction`: `point.dir / |dir|^2`.
    pub t: f64,
    /// `t * direction`, the closest point on the line through the origin.
    pub foot: Point2,
}

/// Orthogonal projection onto the line through the origin spanned by
/// `direction`.
pub fn project_onto_ray(point: Point2, direction: Point2) -> Result<Projection> {
    let len2 = direction.norm_squared();
    if len2 == 0.0 {
        return Err(GeometryError::ZeroDirection);
    }
    let t = point.dot(direction) / len2;
    Ok(Projection {
        t,
        foot: t * direction,
    })
}

/// Distance from `point` to the line through the origin spanned by
/// `direction`: `|x*dy - y*dx| / |dir|`.
pub fn dist_to_origin_line(point: Point2, direction: Point2) -> Result<f64> {
    let len = direction.norm();
    if len == 0.0 {
        return Err(GeometryError::ZeroDirection);
    }
    Ok(point.cross(direction).abs() / len)
}
