//! Minimax approximation of convex polygons by vertex subpolygons.
//!
//! Given a strictly convex polygon `P` and a budget of `k` vertices, this
//! crate computes the best subpolygon of `P` with at most `k` vertices under
//! two monotone error measures: the Hausdorff distance and the aperture-angle
//! complement. On top of the optimizer it provides the combinatorial
//! machinery these problems share — feasible diagonals, chord graphs, bases
//! and witnesses — as executable structure checks, detectors for
//! worst-approximable polygons, and inscribed-polygon refinement for general
//! convex bodies (disks, ellipses, polygons).
//!
//! The crate is `no_std`-compatible (`alloc` required); all float math goes
//! through [`libm`] so results are identical with and without `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod body;
pub mod chords;
pub mod generate;
pub mod geometry;
pub mod measure;
pub mod optimize;
pub mod worst;

mod scalar;

pub use body::{ConvexBody, RefinementTrace};
pub use chords::{build_chord_graph, AuditMode, ChordGraph, StructureReport};
pub use generate::{Generator, SplitMix64};
pub use geometry::{ConvexPolygon, Cyclic, GeometryError, Orientation, Point};
pub use measure::{phi, ErrorMeasure};
pub use optimize::{brute_force_opt, optimal_subpolygon, ApproxResult, Method};
pub use worst::{is_worst_approximable, scan_family, ScanConfig, WorstApproxVerdict};

/// Absolute slack added to every `psi <= sigma` feasibility comparison, and
/// its complement in witness detection. Absorbs rounding without changing
/// combinatorial answers at desk scale.
pub const FEASIBILITY_SLACK: f64 = 1e-12;
