//! Planar primitives: points, strictly convex polygons, cyclic index
//! arithmetic, distances, angles and aperture angles.
//!
//! A [`ConvexPolygon`] is an ordered, counter-clockwise, strictly convex
//! vertex list in canonical rotation (the lexicographically smallest vertex
//! comes first), so vertex indices are reproducible across runs. All index
//! arithmetic is modulo the vertex count; [`Cyclic`] packages that.

use alloc::vec::Vec;

use crate::scalar;

/// Relative threshold below which a cross product counts as zero.
/// Polygons containing a triple this close to collinear are rejected.
pub const ORIENTATION_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: Point) -> f64 {
        scalar::hypot(other.x - self.x, other.y - self.y)
    }

    /// Vector from `self` to `other`.
    pub fn to(&self, other: Point) -> Vector {
        Vector {
            x: other.x - self.x,
            y: other.y - self.y,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Vector {
    pub x: f64,
    pub y: f64,
}

impl Vector {
    pub fn dot(&self, other: Vector) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(&self, other: Vector) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(&self) -> f64 {
        scalar::hypot(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Collinear,
    Clockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Collinear => 0,
            Orientation::Clockwise => -1,
        }
    }
}

/// Sign of the cross product `(q - p) x (r - p)`, with a relative tolerance:
/// triples whose turn angle has sine below [`ORIENTATION_EPS`] are reported
/// collinear.
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    let u = p.to(q);
    let v = p.to(r);
    let cross = u.cross(v);
    let bound_sq = ORIENTATION_EPS * ORIENTATION_EPS * u.dot(u) * v.dot(v);
    if cross * cross <= bound_sq {
        Orientation::Collinear
    } else if cross > 0.0 {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Euclidean distance from `v` to the closed segment `st`.
pub fn point_segment_distance(v: Point, s: Point, t: Point) -> Result<f64, GeometryError> {
    if s == t {
        return Err(GeometryError::DegenerateSegment);
    }
    let d = s.to(t);
    let w = s.to(v);
    let r = (w.dot(d) / d.dot(d)).clamp(0.0, 1.0);
    let foot = Point::new(s.x + r * d.x, s.y + r * d.y);
    Ok(v.distance(foot))
}

/// Interior angle at the apex `v` of the triangle `s v t`, in `(0, PI]`.
pub fn angle_at(v: Point, s: Point, t: Point) -> Result<f64, GeometryError> {
    if v == s || v == t {
        return Err(GeometryError::DegenerateApex);
    }
    let a = v.to(s);
    let b = v.to(t);
    Ok(scalar::atan2(scalar::fabs(a.cross(b)), a.dot(b)))
}

/// Angle of the smallest cone with apex `x` containing every point of
/// `points`; `PI` when the spread reaches a half turn. Callers ensure `x` is
/// outside the convex hull of `points` (use [`ConvexPolygon::aperture_angle`]
/// for the full containment-aware version).
pub fn direction_spread(x: Point, points: &[Point]) -> f64 {
    debug_assert!(!points.is_empty());
    // Anchor on the direction towards the centroid so the spread fits in one
    // branch of atan2 as long as it is below PI.
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.x).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.y).sum::<f64>() / n;
    let anchor = scalar::atan2(cy - x.y, cx - x.x);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in points {
        if *p == x {
            continue;
        }
        let a = scalar::atan2(p.y - x.y, p.x - x.x);
        let d = scalar::normalize_angle(a - anchor);
        lo = scalar::min(lo, d);
        hi = scalar::max(hi, d);
    }
    if lo > hi {
        return 0.0;
    }
    scalar::min(hi - lo, scalar::PI)
}

/// Endpoint strictness for cyclic betweenness tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// `p <= u <= q`
    Inclusive,
    /// `p < u <= q`
    ExclusiveStart,
    /// `p <= u < q`
    ExclusiveEnd,
    /// `p < u < q`
    Exclusive,
}

/// Index arithmetic modulo a fixed vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyclic {
    n: usize,
}

impl Cyclic {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "cyclic order over an empty vertex set");
        Cyclic { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn wrap(&self, i: isize) -> usize {
        let n = self.n as isize;
        (((i % n) + n) % n) as usize
    }

    pub fn add(&self, i: usize, delta: isize) -> usize {
        self.wrap(i as isize + delta)
    }

    /// Counter-clockwise step count from `from` to `to`, in `[0, n)`.
    pub fn distance(&self, from: usize, to: usize) -> usize {
        debug_assert!(from < self.n && to < self.n);
        (to + self.n - from) % self.n
    }

    /// Does a counter-clockwise traversal starting at `p` encounter `u`
    /// before (or together with, per `strictness`) `q`?
    pub fn between(&self, p: usize, u: usize, q: usize, strictness: Strictness) -> bool {
        let du = self.distance(p, u);
        let dq = self.distance(p, q);
        match strictness {
            Strictness::Inclusive => du <= dq,
            Strictness::ExclusiveStart => du >= 1 && du <= dq,
            Strictness::ExclusiveEnd => du < dq,
            Strictness::Exclusive => du >= 1 && du < dq,
        }
    }

    /// Indices strictly between `from` and `to`, in counter-clockwise order.
    pub fn strictly_between(&self, from: usize, to: usize) -> impl Iterator<Item = usize> + '_ {
        let len = self.distance(from, to);
        let gap = if len == 0 { 0 } else { len - 1 };
        (1..=gap).map(move |d| self.add(from, d as isize))
    }
}

/// An ordered, counter-clockwise, strictly convex vertex list in canonical
/// rotation (lexicographically smallest vertex first).
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validate and canonicalize a vertex list: at least three finite,
    /// pairwise distinct points, every consecutive triple strictly convex,
    /// winding number one. Clockwise input is reversed.
    pub fn new(mut points: Vec<Point>) -> Result<Self, GeometryError> {
        if points.len() < 3 {
            return Err(GeometryError::TooFewVertices { got: points.len() });
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite { index: i });
            }
        }
        let mut by_coord: Vec<usize> = (0..points.len()).collect();
        by_coord.sort_unstable_by(|&i, &j| {
            (points[i].x, points[i].y)
                .partial_cmp(&(points[j].x, points[j].y))
                .expect("finite coordinates")
        });
        for w in by_coord.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(GeometryError::DuplicateVertex {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }

        let doubled_area: f64 = (0..points.len())
            .map(|i| {
                let p = points[i];
                let q = points[(i + 1) % points.len()];
                p.x * q.y - q.x * p.y
            })
            .sum();
        if doubled_area < 0.0 {
            points.reverse();
        }

        let n = points.len();
        let mut turning = 0.0;
        for i in 0..n {
            let a = points[(i + n - 1) % n];
            let b = points[i];
            let c = points[(i + 1) % n];
            if orientation(a, b, c) != Orientation::CounterClockwise {
                return Err(GeometryError::NotConvex { index: i });
            }
            let u = a.to(b);
            let v = b.to(c);
            turning += scalar::atan2(u.cross(v), u.dot(v));
        }
        // All-left-turn traversals of winding number > 1 (star traversals)
        // pass the triple check; the total turning exposes them.
        if scalar::fabs(turning - scalar::TAU) > 1e-6 {
            return Err(GeometryError::NotConvex { index: 0 });
        }

        let start = (0..n)
            .min_by(|&i, &j| {
                (points[i].x, points[i].y)
                    .partial_cmp(&(points[j].x, points[j].y))
                    .expect("finite coordinates")
            })
            .expect("nonempty");
        points.rotate_left(start);

        Ok(ConvexPolygon { vertices: points })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn vertex_wrapped(&self, i: isize) -> Point {
        self.vertices[self.cycle().wrap(i)]
    }

    pub fn cycle(&self) -> Cyclic {
        Cyclic::new(self.vertices.len())
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.vertices.len())
            .map(|i| self.vertices[i].distance(self.vertices[(i + 1) % self.vertices.len()]))
            .sum()
    }

    /// Average of the vertices; strictly interior for a convex polygon.
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        Point::new(
            self.vertices.iter().map(|p| p.x).sum::<f64>() / n,
            self.vertices.iter().map(|p| p.y).sum::<f64>() / n,
        )
    }

    /// Closed containment: boundary points count as inside.
    pub fn contains(&self, x: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orientation(self.vertices[i], self.vertices[(i + 1) % n], x) != Orientation::Clockwise
        })
    }

    /// Angle of the smallest cone with apex `x` containing the polygon;
    /// `PI` when `x` lies inside or on the boundary.
    pub fn aperture_angle(&self, x: Point) -> f64 {
        if self.contains(x) {
            return scalar::PI;
        }
        direction_spread(x, &self.vertices)
    }

    /// Convex hull of a subset of vertices, as a standalone polygon.
    /// Indices may come in any order but must be distinct and in range.
    pub fn subpolygon(&self, indices: &[usize]) -> Result<ConvexPolygon, GeometryError> {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GeometryError::DuplicateVertex {
                    first: w[0],
                    second: w[1],
                });
            }
        }
        if let Some(&bad) = sorted.iter().find(|&&i| i >= self.vertices.len()) {
            return Err(GeometryError::InvalidIndex {
                index: bad,
                len: self.vertices.len(),
            });
        }
        ConvexPolygon::new(sorted.iter().map(|&i| self.vertices[i]).collect())
    }

    /// Mirror image (reflection across the x axis), re-canonicalized.
    pub fn mirrored(&self) -> ConvexPolygon {
        ConvexPolygon::new(
            self.vertices
                .iter()
                .map(|p| Point::new(p.x, -p.y))
                .collect(),
        )
        .expect("mirror of a valid polygon is valid")
    }

    /// Uniformly scaled copy. The factor must be positive and finite.
    pub fn scaled(&self, factor: f64) -> ConvexPolygon {
        assert!(
            factor.is_finite() && factor > 0.0,
            "scale factor must be positive"
        );
        ConvexPolygon::new(
            self.vertices
                .iter()
                .map(|p| Point::new(p.x * factor, p.y * factor))
                .collect(),
        )
        .expect("scaled copy of a valid polygon is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryError {
    TooFewVertices { got: usize },
    NotConvex { index: usize },
    DuplicateVertex { first: usize, second: usize },
    NonFinite { index: usize },
    DegenerateSegment,
    DegenerateApex,
    InvalidIndex { index: usize, len: usize },
}

impl core::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GeometryError::TooFewVertices { got } => {
                write!(f, "polygon needs at least 3 vertices, got {got}")
            }
            GeometryError::NotConvex { index } => {
                write!(f, "not strictly convex at vertex {index}")
            }
            GeometryError::DuplicateVertex { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            GeometryError::NonFinite { index } => {
                write!(f, "vertex {index} has a non-finite coordinate")
            }
            GeometryError::DegenerateSegment => write!(f, "segment endpoints coincide"),
            GeometryError::DegenerateApex => write!(f, "angle apex coincides with an endpoint"),
            GeometryError::InvalidIndex { index, len } => {
                write!(f, "vertex index {index} out of range for polygon of {len}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GeometryError {}
