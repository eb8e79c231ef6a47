//! General convex bodies: boundary sampling, the tangent-walk inscribed
//! k-gon, and refinement estimates of the best achievable aperture angle.
//!
//! Smooth bodies are parametrized by angle; polygonal bodies by arc length,
//! with sample points snapped onto true corners so that corner turning is
//! never smeared across subdivision points.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{ConvexPolygon, GeometryError, Point};
use crate::measure::ErrorMeasure;
use crate::optimize::{optimal_subpolygon, OptError};
use crate::scalar;

/// Default dense-boundary resolution for walks and certificates.
pub const DEFAULT_DENSE_N: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Disk { radius: f64 },
    Ellipse { a: f64, b: f64 },
    RegularGon { sides: usize, circumradius: f64 },
    Polygon(ConvexPolygon),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BodyError {
    InvalidParameter(&'static str),
    /// Sampling collapsed points or produced a degenerate polygon.
    Degenerate(GeometryError),
    Opt(OptError),
}

impl From<GeometryError> for BodyError {
    fn from(e: GeometryError) -> Self {
        BodyError::Degenerate(e)
    }
}

impl From<OptError> for BodyError {
    fn from(e: OptError) -> Self {
        BodyError::Opt(e)
    }
}

impl core::fmt::Display for BodyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BodyError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            BodyError::Degenerate(e) => write!(f, "degenerate boundary sample: {e}"),
            BodyError::Opt(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BodyError {}

impl ConvexBody {
    fn validate(&self) -> Result<(), BodyError> {
        match self {
            ConvexBody::Disk { radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(BodyError::InvalidParameter("disk radius must be positive"));
                }
            }
            ConvexBody::Ellipse { a, b } => {
                if !(a.is_finite() && b.is_finite() && *a > 0.0 && *b > 0.0) {
                    return Err(BodyError::InvalidParameter("ellipse axes must be positive"));
                }
            }
            ConvexBody::RegularGon {
                sides,
                circumradius,
            } => {
                if *sides < 3 {
                    return Err(BodyError::InvalidParameter("regular body needs 3 sides"));
                }
                if !(circumradius.is_finite() && *circumradius > 0.0) {
                    return Err(BodyError::InvalidParameter("circumradius must be positive"));
                }
            }
            ConvexBody::Polygon(_) => {}
        }
        Ok(())
    }

    /// Corner list for polygonal kinds.
    fn corners(&self) -> Option<Vec<Point>> {
        match self {
            ConvexBody::RegularGon {
                sides,
                circumradius,
            } => Some(
                (0..*sides)
                    .map(|i| {
                        let a = scalar::TAU * (i as f64) / (*sides as f64);
                        Point::new(circumradius * scalar::cos(a), circumradius * scalar::sin(a))
                    })
                    .collect(),
            ),
            ConvexBody::Polygon(p) => Some(p.vertices().to_vec()),
            _ => None,
        }
    }

    /// Point on the boundary at angle parameter `theta` (smooth kinds) or at
    /// the matching arc-length fraction `theta / 2 PI` (polygonal kinds).
    pub fn boundary_point(&self, theta: f64) -> Point {
        match self {
            ConvexBody::Disk { radius } => {
                Point::new(radius * scalar::cos(theta), radius * scalar::sin(theta))
            }
            ConvexBody::Ellipse { a, b } => {
                Point::new(a * scalar::cos(theta), b * scalar::sin(theta))
            }
            _ => {
                let corners = self.corners().expect("polygonal kind");
                let frac = {
                    let mut t = libm::fmod(theta, scalar::TAU);
                    if t < 0.0 {
                        t += scalar::TAU;
                    }
                    t / scalar::TAU
                };
                arc_length_point(&corners, frac)
            }
        }
    }

    /// Inscribed n-gon: uniform angle parameters for smooth kinds, exact
    /// corners when `n` matches a polygonal kind, otherwise arc-length
    /// equidistribution starting at corner zero.
    pub fn sample_boundary(&self, n: usize) -> Result<ConvexPolygon, BodyError> {
        self.validate()?;
        if n < 3 {
            return Err(BodyError::InvalidParameter("need at least 3 samples"));
        }
        if let Some(corners) = self.corners() {
            if n == corners.len() {
                return Ok(ConvexPolygon::new(corners)?);
            }
            let total: f64 = perimeter_of(&corners);
            let cums = cumulative_lengths(&corners);
            let pts: Vec<Point> = (0..n)
                .map(|i| {
                    let s = total * (i as f64) / (n as f64);
                    arc_point_at(&corners, &cums, s)
                })
                .collect();
            // Samples landing on the straight interior of an edge are
            // collinear with their neighbors; only the strict hull is a
            // valid polygon, and dropped samples carry no approximation
            // cost (the minimum aperture over a convex region sits at a
            // corner).
            return Ok(ConvexPolygon::new(drop_collinear_cyclic(pts))?);
        }
        let pts: Vec<Point> = (0..n)
            .map(|i| self.boundary_point(scalar::TAU * (i as f64) / (n as f64)))
            .collect();
        Ok(ConvexPolygon::new(pts)?)
    }

    /// Characteristic length for tolerance scaling.
    pub fn scale(&self) -> f64 {
        match self {
            ConvexBody::Disk { radius } => *radius,
            ConvexBody::Ellipse { a, b } => scalar::max(*a, *b),
            ConvexBody::RegularGon { circumradius, .. } => *circumradius,
            ConvexBody::Polygon(p) => p.perimeter() / (p.vertex_count() as f64),
        }
    }
}

/// Remove points that sit on the straight segment between their cyclic
/// neighbors. Input points are boundary samples of a convex region in
/// counter-clockwise order, so iterating until stable terminates quickly.
fn drop_collinear_cyclic(mut pts: Vec<Point>) -> Vec<Point> {
    use crate::geometry::{orientation, Orientation};
    loop {
        let n = pts.len();
        if n <= 3 {
            return pts;
        }
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                orientation(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n])
                    != Orientation::Collinear
            })
            .collect();
        if keep.iter().all(|&k| k) {
            return pts;
        }
        // Never drop two adjacent points in one pass; a straight run must
        // keep its endpoints.
        let mut next = Vec::with_capacity(n);
        let mut dropped_prev = false;
        for i in 0..n {
            if keep[i] || dropped_prev {
                next.push(pts[i]);
                dropped_prev = false;
            } else {
                dropped_prev = true;
            }
        }
        pts = next;
    }
}

fn perimeter_of(corners: &[Point]) -> f64 {
    (0..corners.len())
        .map(|i| corners[i].distance(corners[(i + 1) % corners.len()]))
        .sum()
}

fn cumulative_lengths(corners: &[Point]) -> Vec<f64> {
    let mut cums = vec![0.0; corners.len() + 1];
    for i in 0..corners.len() {
        cums[i + 1] = cums[i] + corners[i].distance(corners[(i + 1) % corners.len()]);
    }
    cums
}

fn arc_length_point(corners: &[Point], frac: f64) -> Point {
    let cums = cumulative_lengths(corners);
    arc_point_at(corners, &cums, frac * cums[corners.len()])
}

fn arc_point_at(corners: &[Point], cums: &[f64], s: f64) -> Point {
    let total = cums[corners.len()];
    let snap = 1e-9 * total;
    let mut edge = corners.len() - 1;
    for i in 0..corners.len() {
        if s < cums[i + 1] {
            edge = i;
            break;
        }
    }
    // Snap onto corners so polygonal bodies keep their exact vertices.
    if scalar::fabs(s - cums[edge]) <= snap {
        return corners[edge];
    }
    if scalar::fabs(s - cums[edge + 1]) <= snap {
        return corners[(edge + 1) % corners.len()];
    }
    let a = corners[edge];
    let b = corners[(edge + 1) % corners.len()];
    let t = (s - cums[edge]) / (cums[edge + 1] - cums[edge]);
    Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}

/// Walk the dense boundary polygon and emit a vertex whenever the tangent
/// direction has turned by `2 PI / k` since the last emitted vertex. The
/// turn at an emitted vertex is absorbed by that vertex, so the interior
/// turning of every gap stays at or below the threshold, which yields the
/// aperture guarantee `(1 - 2/k) PI` for every boundary point. At most `k`
/// points are emitted.
///
/// Polygonal bodies with at most `k` corners short-circuit to their corner
/// list. The result may have fewer than three points (a flat body with a
/// small `k` can be covered by a segment), so it is returned as a point list
/// rather than a polygon.
pub fn tangent_walk_kgon(
    body: &ConvexBody,
    k: usize,
    dense_n: usize,
) -> Result<Vec<Point>, BodyError> {
    body.validate()?;
    if k < 3 {
        return Err(BodyError::InvalidParameter("tangent walk needs k >= 3"));
    }
    if let Some(corners) = body.corners() {
        if corners.len() <= k {
            return Ok(corners);
        }
    }
    if dense_n < 3 || dense_n <= k {
        return Err(BodyError::InvalidParameter("dense_n must exceed k"));
    }

    let dense = body.sample_boundary(dense_n)?;
    let verts = dense.vertices();
    let n = verts.len();
    let threshold = scalar::TAU / (k as f64) - 1e-12;

    let turn_at = |j: usize| {
        let a = verts[(j + n - 1) % n];
        let b = verts[j];
        let c = verts[(j + 1) % n];
        let u = a.to(b);
        let v = b.to(c);
        scalar::max(0.0, scalar::atan2(u.cross(v), u.dot(v)))
    };

    let mut emitted = vec![verts[0]];
    let mut acc = 0.0;
    for (j, &vertex) in verts.iter().enumerate().skip(1) {
        let turn = turn_at(j);
        if acc + turn >= threshold {
            emitted.push(vertex);
            acc = 0.0;
        } else {
            acc += turn;
        }
    }
    debug_assert!(emitted.len() <= k, "total turning caps emissions at k");
    Ok(emitted)
}

/// Smallest aperture angle over the dense boundary samples of `body` with
/// respect to the hull of `points` — the sampling certificate for a sensor
/// placement.
pub fn min_sampled_aperture(
    body: &ConvexBody,
    points: &[Point],
    dense_n: usize,
) -> Result<f64, BodyError> {
    if points.is_empty() {
        return Err(BodyError::InvalidParameter("empty placement"));
    }
    let dense = body.sample_boundary(dense_n)?;
    // For one or two points the hull is degenerate; fall back to the
    // direction-spread definition with closed membership on the hull.
    let poly = (points.len() >= 3)
        .then(|| ConvexPolygon::new(points.to_vec()).ok())
        .flatten();
    let mut min = scalar::PI;
    for &x in dense.vertices() {
        let aperture = match &poly {
            Some(q) => q.aperture_angle(x),
            None => {
                if on_degenerate_hull(points, x) {
                    scalar::PI
                } else {
                    crate::geometry::direction_spread(x, points)
                }
            }
        };
        min = scalar::min(min, aperture);
    }
    Ok(min)
}

fn on_degenerate_hull(points: &[Point], x: Point) -> bool {
    match points {
        [p] => *p == x,
        [p, q] => crate::geometry::point_segment_distance(x, *p, *q)
            .map(|d| d <= 1e-12)
            .unwrap_or(*p == x),
        _ => false,
    }
}

/// One refinement run: inscribed n-gons of increasing resolution, the exact
/// optimal aperture for each sampled polygon, and the dense-boundary
/// certificate of the chosen placement against the body itself.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RefinementTrace {
    pub k: usize,
    pub samples_n: Vec<usize>,
    /// `PI - phi_k(P_n)`: exact for the inscribed polygon.
    pub inscribed_alphas: Vec<f64>,
    /// Minimum sampled aperture of the chosen k-gon over the dense boundary.
    pub certified_alphas: Vec<f64>,
    /// Chosen placement at the final resolution.
    pub final_placement: Vec<Point>,
}

/// For each n in the schedule, inscribe an n-gon, optimize the aperture
/// complement over its k-subsets, and certify the winner against a dense
/// boundary sample.
pub fn estimate_alpha_ck(
    body: &ConvexBody,
    k: usize,
    schedule: &[usize],
    dense_n: usize,
) -> Result<RefinementTrace, BodyError> {
    body.validate()?;
    if schedule.is_empty() {
        return Err(BodyError::InvalidParameter("empty refinement schedule"));
    }
    let mut trace = RefinementTrace {
        k,
        samples_n: Vec::new(),
        inscribed_alphas: Vec::new(),
        certified_alphas: Vec::new(),
        final_placement: Vec::new(),
    };
    for &n in schedule {
        let sample = body.sample_boundary(n)?;
        let result = optimal_subpolygon(&sample, ErrorMeasure::ApertureComplement, k)?;
        let placement: Vec<Point> = result.chosen.iter().map(|&i| sample.vertex(i)).collect();
        let certified = min_sampled_aperture(body, &placement, dense_n)?;
        trace.samples_n.push(n);
        trace.inscribed_alphas.push(scalar::PI - result.error);
        trace.certified_alphas.push(certified);
        trace.final_placement = placement;
    }
    Ok(trace)
}
