//! The two monotone error functions, the aggregate subpolygon error, and the
//! disk-cap region that characterizes aperture feasibility.
//!
//! Both measures have the bracketed form `psi(v, s, t)`: the penalty of a
//! polygon vertex `v` that a candidate subpolygon skips, where `s` and `t`
//! are the retained vertices on either side. Shrinking the bracket never
//! increases `psi`; everything in [`crate::chords`] and [`crate::optimize`]
//! rests on that monotonicity.

use alloc::vec::Vec;

use crate::geometry::{
    angle_at, orientation, point_segment_distance, ConvexPolygon, GeometryError, Orientation, Point,
};
use crate::scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ErrorMeasure {
    /// `psi(v, s, t)` is the distance from `v` to the segment `st`; the
    /// aggregate equals the Hausdorff distance between the polygon and the
    /// subpolygon.
    Hausdorff,
    /// `psi(v, s, t) = PI - angle(s v t)`; `PI` minus the aggregate is the
    /// smallest aperture angle of any polygon vertex with respect to the
    /// subpolygon.
    ApertureComplement,
}

impl ErrorMeasure {
    pub fn psi(self, v: Point, s: Point, t: Point) -> Result<f64, MeasureError> {
        if v == s || v == t || s == t {
            return Err(MeasureError::DegenerateInput);
        }
        match self {
            ErrorMeasure::Hausdorff => Ok(point_segment_distance(v, s, t)?),
            ErrorMeasure::ApertureComplement => Ok(scalar::PI - angle_at(v, s, t)?),
        }
    }

    /// Whether the measure scales linearly with the polygon (Hausdorff) or
    /// is scale invariant (aperture complement).
    pub fn scales_linearly(self) -> bool {
        matches!(self, ErrorMeasure::Hausdorff)
    }
}

/// Result of evaluating the aggregate error of a vertex subset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiOutcome {
    pub value: f64,
    /// Excluded vertex attaining the maximum; `None` when nothing is excluded.
    pub witness: Option<usize>,
}

/// Aggregate error of the subpolygon spanned by `chosen` (vertex indices of
/// `poly`, any order): the maximum of `psi(v, s, t)` over every excluded
/// vertex `v`, bracketed by the nearest retained vertices `s`, `t`.
pub fn phi(
    measure: ErrorMeasure,
    poly: &ConvexPolygon,
    chosen: &[usize],
) -> Result<PhiOutcome, MeasureError> {
    let n = poly.vertex_count();
    if chosen.len() < 2 {
        return Err(MeasureError::InvalidSubset);
    }
    let mut sorted: Vec<usize> = chosen.to_vec();
    sorted.sort_unstable();
    if sorted.iter().any(|&i| i >= n) || sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(MeasureError::InvalidSubset);
    }
    if sorted.len() == n {
        return Ok(PhiOutcome {
            value: 0.0,
            witness: None,
        });
    }

    let cyc = poly.cycle();
    let mut best = PhiOutcome {
        value: 0.0,
        witness: None,
    };
    for gap in 0..sorted.len() {
        let s = sorted[gap];
        let t = sorted[(gap + 1) % sorted.len()];
        for v in cyc.strictly_between(s, t) {
            let value = measure.psi(poly.vertex(v), poly.vertex(s), poly.vertex(t))?;
            if best.witness.is_none() || value > best.value {
                best = PhiOutcome {
                    value,
                    witness: Some(v),
                };
            }
        }
    }
    Ok(best)
}

/// The set of points to the right of the oriented line `p -> q` that see the
/// segment `pq` at an angle of at least `PI - sigma` — equivalently, whose
/// aperture-complement error against the bracket `(p, q)` is at most
/// `sigma`. Geometrically a disk cap: the intersection of a disk through `p`
/// and `q` with the right half-plane.
#[derive(Debug, Clone, Copy)]
pub struct CapRegion {
    p: Point,
    q: Point,
    sigma: f64,
    center: Point,
    radius: f64,
}

impl CapRegion {
    /// Requires distinct endpoints and `sigma` in `(0, PI)`. The supporting
    /// disk has radius `d(p, q) / (2 sin sigma)` by the inscribed-angle
    /// theorem; for `sigma < PI/2` its center lies strictly left of the
    /// oriented line.
    pub fn new(p: Point, q: Point, sigma: f64) -> Result<Self, MeasureError> {
        if p == q {
            return Err(MeasureError::DegenerateInput);
        }
        if !(sigma > 0.0 && sigma < scalar::PI) {
            return Err(MeasureError::PreconditionViolated(
                "sigma must lie strictly between 0 and PI",
            ));
        }
        let d = p.distance(q);
        let sin_sigma = scalar::sin(sigma);
        let radius = d / (2.0 * sin_sigma);
        let offset = 0.5 * d * scalar::cos(sigma) / sin_sigma;
        let ux = (q.x - p.x) / d;
        let uy = (q.y - p.y) / d;
        // Left normal of p -> q.
        let center = Point::new(
            0.5 * (p.x + q.x) - offset * uy,
            0.5 * (p.y + q.y) + offset * ux,
        );
        Ok(CapRegion {
            p,
            q,
            sigma,
            center,
            radius,
        })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Membership via the supporting disk (closed region). The angle-based
    /// definition is the independent route the tests compare against.
    pub fn contains(&self, x: Point) -> bool {
        if orientation(self.p, self.q, x) == Orientation::CounterClockwise {
            return false;
        }
        let d2 = (x.x - self.center.x) * (x.x - self.center.x)
            + (x.y - self.center.y) * (x.y - self.center.y);
        d2 <= self.radius * self.radius * (1.0 + 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

/// Premise check plus conclusion of the stick-out comparison: two disks with
/// centers left of the oriented line `line`, the chord of `inner` on the
/// line contained in the chord of `outer`, and a point `p` right of the line
/// that is in `inner` but not in `outer`. Under those premises the radius of
/// `inner` must be smaller; the returned bool reports that comparison.
pub fn stick_out_radius_check(
    outer: Disk,
    inner: Disk,
    line: (Point, Point),
    p: Point,
) -> Result<bool, MeasureError> {
    let (a, b) = line;
    if a == b {
        return Err(MeasureError::DegenerateInput);
    }
    let len = a.distance(b);
    let ux = (b.x - a.x) / len;
    let uy = (b.y - a.y) / len;
    // Positive = left of the oriented line.
    let signed = |x: Point| (x.y - a.y) * ux - (x.x - a.x) * uy;
    let along = |x: Point| (x.x - a.x) * ux + (x.y - a.y) * uy;

    if signed(outer.center) <= 0.0 || signed(inner.center) <= 0.0 {
        return Err(MeasureError::PreconditionViolated(
            "disk centers must lie strictly left of the line",
        ));
    }

    let half_chord = |d: Disk| {
        let h = signed(d.center);
        let rr = d.radius * d.radius - h * h;
        if rr > 0.0 {
            Some(scalar::sqrt(rr))
        } else {
            None
        }
    };
    match (half_chord(outer), half_chord(inner)) {
        (Some(ho), Some(hi)) => {
            let (oc, ic) = (along(outer.center), along(inner.center));
            if ic - hi < oc - ho || ic + hi > oc + ho {
                return Err(MeasureError::PreconditionViolated(
                    "inner chord not contained in outer chord",
                ));
            }
        }
        (_, None) => {
            // The inner disk misses the line entirely; with its center on the
            // left no point of it can lie right of the line, so the premise
            // on p is unsatisfiable.
        }
        (None, Some(_)) => {
            return Err(MeasureError::PreconditionViolated(
                "inner chord not contained in outer chord",
            ));
        }
    }

    if signed(p) >= 0.0 {
        return Err(MeasureError::PreconditionViolated(
            "p must lie strictly right of the line",
        ));
    }
    if p.distance(inner.center) > inner.radius {
        return Err(MeasureError::PreconditionViolated(
            "p must lie in the inner disk",
        ));
    }
    if p.distance(outer.center) <= outer.radius {
        return Err(MeasureError::PreconditionViolated(
            "p must lie outside the outer disk",
        ));
    }

    Ok(inner.radius < outer.radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureError {
    DegenerateInput,
    InvalidSubset,
    PreconditionViolated(&'static str),
}

impl From<GeometryError> for MeasureError {
    fn from(_: GeometryError) -> Self {
        MeasureError::DegenerateInput
    }
}

impl core::fmt::Display for MeasureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MeasureError::DegenerateInput => write!(f, "degenerate input points"),
            MeasureError::InvalidSubset => write!(f, "invalid vertex subset"),
            MeasureError::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MeasureError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::regular_polygon;
    use alloc::vec;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn psi_matches_both_definitions() {
        let v = Point::new(1.0, 1.0);
        let s = Point::new(1.0, 0.0);
        let t = Point::new(0.0, 1.0);
        let h = ErrorMeasure::Hausdorff.psi(v, s, t).unwrap();
        assert!((h - core::f64::consts::SQRT_2 / 2.0).abs() < 1e-15);
        let a = ErrorMeasure::ApertureComplement.psi(v, s, t).unwrap();
        assert!((a - scalar::PI / 2.0).abs() < 1e-15);

        // A vertex on the open segment contributes nothing for either measure.
        let mid = Point::new(0.5, 0.5);
        assert!(ErrorMeasure::Hausdorff.psi(mid, s, t).unwrap() < 1e-15);
        assert!(ErrorMeasure::ApertureComplement.psi(mid, s, t).unwrap() < 1e-15);

        assert!(ErrorMeasure::Hausdorff.psi(s, s, t).is_err());
    }

    #[test]
    fn phi_of_square_triangle() {
        let sq = unit_square();
        let out = phi(ErrorMeasure::Hausdorff, &sq, &[0, 1, 3]).unwrap();
        assert!((out.value - core::f64::consts::SQRT_2 / 2.0).abs() < 1e-15);
        assert_eq!(out.witness, Some(2));
    }

    #[test]
    fn phi_of_full_subset_is_zero() {
        let sq = unit_square();
        let out = phi(ErrorMeasure::Hausdorff, &sq, &[0, 1, 2, 3]).unwrap();
        assert_eq!(out.value, 0.0);
        assert_eq!(out.witness, None);
    }

    #[test]
    fn phi_of_pentagon_missing_one_vertex_aperture() {
        // The interior angle of a regular pentagon is 3*PI/5, so skipping a
        // vertex costs PI - 3*PI/5 = 2*PI/5.
        let p = regular_polygon(5, 1.0).unwrap();
        let out = phi(ErrorMeasure::ApertureComplement, &p, &[0, 1, 2, 3]).unwrap();
        assert!((out.value - 2.0 * scalar::PI / 5.0).abs() < 1e-12);
        assert_eq!(out.witness, Some(4));
    }

    #[test]
    fn phi_rejects_bad_subsets() {
        let sq = unit_square();
        assert_eq!(
            phi(ErrorMeasure::Hausdorff, &sq, &[0]).unwrap_err(),
            MeasureError::InvalidSubset
        );
        assert_eq!(
            phi(ErrorMeasure::Hausdorff, &sq, &[0, 0, 1]).unwrap_err(),
            MeasureError::InvalidSubset
        );
        assert_eq!(
            phi(ErrorMeasure::Hausdorff, &sq, &[0, 9]).unwrap_err(),
            MeasureError::InvalidSubset
        );
    }

    #[test]
    fn cap_region_radius_and_center_side() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(2.0, 0.0);
        let acute = CapRegion::new(p, q, 1.0).unwrap();
        assert!((acute.radius() - 1.0 / scalar::sin(1.0)).abs() < 1e-15);
        // sigma < PI/2: center strictly left (positive y here).
        assert!(acute.center().y > 0.0);

        let obtuse = CapRegion::new(p, q, 2.0).unwrap();
        assert!(obtuse.center().y < 0.0);

        let halfway = CapRegion::new(p, q, scalar::PI / 2.0).unwrap();
        assert!(halfway.center().y.abs() < 1e-15);
        assert!((halfway.radius() - 1.0).abs() < 1e-15);

        assert!(CapRegion::new(p, q, 0.0).is_err());
        assert!(CapRegion::new(p, p, 1.0).is_err());
    }

    #[test]
    fn cap_region_contains_segment_and_arc() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(2.0, 0.0);
        let cap = CapRegion::new(p, q, 0.9).unwrap();
        // Interior points of pq see it at angle PI.
        assert!(cap.contains(Point::new(1.0, 0.0)));
        assert!(cap.contains(p) && cap.contains(q));
        // A point on the boundary arc (angle exactly PI - sigma) is in the
        // closed region: construct it from the supporting circle, right side.
        let c = cap.center();
        let r = cap.radius();
        let x = Point::new(c.x + r * scalar::cos(-1.2), c.y + r * scalar::sin(-1.2));
        assert!(x.y < 0.0, "test point must be right of the line");
        assert!(cap.contains(x));
        // Far outside.
        assert!(!cap.contains(Point::new(1.0, -10.0 * r)));
        // Left of the line is excluded regardless of the disk.
        assert!(!cap.contains(Point::new(1.0, 0.1)));
    }

    #[test]
    fn cap_region_scales_exactly_with_powers_of_two() {
        let p = Point::new(0.25, -0.75);
        let q = Point::new(1.5, 0.5);
        let base = CapRegion::new(p, q, 0.8).unwrap();
        for lambda in [0.5, 2.0, 4.0] {
            let scaled = CapRegion::new(
                Point::new(p.x * lambda, p.y * lambda),
                Point::new(q.x * lambda, q.y * lambda),
                0.8,
            )
            .unwrap();
            assert_eq!(scaled.radius(), base.radius() * lambda);
        }
    }

    #[test]
    fn stick_out_hand_built_instance() {
        // Outer disk crosses the x axis with a wide chord, inner disk with a
        // narrower chord inside it but dipping lower near one end.
        let outer = Disk {
            center: Point::new(0.0, 1.5),
            radius: 2.0,
        };
        let inner = Disk {
            center: Point::new(0.5, 0.2),
            radius: 0.8,
        };
        let line = (Point::new(-5.0, 0.0), Point::new(5.0, 0.0));
        // p below the axis, inside inner, outside outer.
        let p = Point::new(0.5, -0.5);
        assert_eq!(stick_out_radius_check(outer, inner, line, p), Ok(true));
    }

    #[test]
    fn stick_out_identical_disks_unsatisfiable() {
        let d = Disk {
            center: Point::new(0.0, 0.5),
            radius: 1.0,
        };
        let line = (Point::new(-5.0, 0.0), Point::new(5.0, 0.0));
        let p = Point::new(0.0, -0.4);
        // p is in both disks, so "p outside the outer disk" fails.
        assert!(matches!(
            stick_out_radius_check(d, d, line, p),
            Err(MeasureError::PreconditionViolated(_))
        ));
    }
}
