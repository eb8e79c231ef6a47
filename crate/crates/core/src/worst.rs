//! Worst-approximable polygons: exact detection, family scans, and the
//! perimeter bound for equalized (k+1)-gons.
//!
//! A polygon is worst-approximable when every proper subpolygon admits a
//! strictly better k-vertex approximation than the polygon itself. The
//! structural theory says such polygons must be (k+1)-gons for both
//! measures; [`scan_family`] hunts for counterexamples (expected: none) and
//! [`is_worst_approximable`] gives the per-instance verdict by exhausting
//! all proper subpolygons — the definition quantifies over all of them and
//! the optimum is not monotone under vertex deletion, so no delete-one
//! shortcut decides the verdict (it only serves as a fail-fast prefilter).

use alloc::vec::Vec;

use crate::generate::{Generator, SplitMix64};
use crate::geometry::{ConvexPolygon, Point};
use crate::measure::ErrorMeasure;
use crate::optimize::{optimal_subpolygon, OptError};
use crate::scalar;

/// Vertex-count cap for the exhaustive proper-subpolygon enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WorstApproxVerdict {
    pub is_worst: bool,
    pub phi_k: f64,
    /// Largest optimum over the proper subpolygons examined. Exact when
    /// `is_worst`; a witness value (>= `phi_k`) when a blocking subpolygon
    /// cut the search short.
    pub max_proper_phi_k: f64,
    /// A proper subpolygon at least as hard to approximate as the polygon
    /// itself; present exactly when `is_worst` is false and such a
    /// subpolygon of three or more vertices exists.
    pub blocking_subpolygon: Option<Vec<usize>>,
    /// Number of proper subpolygons whose optimum was computed.
    pub subsets_checked: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorstError {
    SizeLimit {
        n: usize,
        limit: usize,
    },
    Opt(OptError),
    WrongVertexCount {
        expected: usize,
        got: usize,
    },
    /// The polygon has zero optimal error, so it cannot be rescaled to the
    /// equalized configuration.
    ZeroError,
    /// Delete-one errors are not all equal to one; carries the worst
    /// offender.
    NotEqualized {
        index: usize,
    },
}

impl From<OptError> for WorstError {
    fn from(e: OptError) -> Self {
        WorstError::Opt(e)
    }
}

impl core::fmt::Display for WorstError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WorstError::SizeLimit { n, limit } => {
                write!(
                    f,
                    "{n} vertices exceed the exhaustive-scan limit of {limit}"
                )
            }
            WorstError::Opt(e) => write!(f, "{e}"),
            WorstError::WrongVertexCount { expected, got } => {
                write!(f, "expected a {expected}-gon, got {got} vertices")
            }
            WorstError::ZeroError => write!(f, "optimal error is zero; cannot rescale"),
            WorstError::NotEqualized { index } => {
                write!(f, "delete-one error at vertex {index} is not 1")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WorstError {}

fn subset_from_mask(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Exact verdict by enumerating every proper subpolygon with more than `k`
/// vertices (smaller ones have optimum zero and can never block a polygon
/// with positive optimum). The delete-one subpolygons run first as a
/// fail-fast prefilter.
pub fn is_worst_approximable(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
) -> Result<WorstApproxVerdict, WorstError> {
    let n = poly.vertex_count();
    if n > EXHAUSTIVE_LIMIT {
        return Err(WorstError::SizeLimit {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let phi_k = optimal_subpolygon(poly, measure, k)?.error;
    if phi_k <= 0.0 {
        // Zero error: the strict inequality is unsatisfiable by convention.
        let blocking = (n >= 4).then(|| (0..n - 1).collect());
        return Ok(WorstApproxVerdict {
            is_worst: false,
            phi_k,
            max_proper_phi_k: 0.0,
            blocking_subpolygon: blocking,
            subsets_checked: 0,
        });
    }

    let mut checked = 0u64;
    let mut max_proper = 0.0f64;

    let evaluate = |subset: &[usize],
                    checked: &mut u64,
                    max_proper: &mut f64|
     -> Result<Option<WorstApproxVerdict>, WorstError> {
        let sub = poly
            .subpolygon(subset)
            .expect("subsets of a strictly convex polygon are valid");
        let value = optimal_subpolygon(&sub, measure, k)?.error;
        *checked += 1;
        *max_proper = scalar::max(*max_proper, value);
        if value >= phi_k {
            return Ok(Some(WorstApproxVerdict {
                is_worst: false,
                phi_k,
                max_proper_phi_k: *max_proper,
                blocking_subpolygon: Some(subset.to_vec()),
                subsets_checked: *checked,
            }));
        }
        Ok(None)
    };

    // Delete-one prefilter (size n-1).
    if n >= 4 {
        for u in 0..n {
            let subset: Vec<usize> = (0..n).filter(|&i| i != u).collect();
            if let Some(v) = evaluate(&subset, &mut checked, &mut max_proper)? {
                return Ok(v);
            }
        }
    }

    // All remaining sizes in (k, n-1).
    for size in k + 1..n.saturating_sub(1) {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let subset = subset_from_mask(n, mask);
            if let Some(v) = evaluate(&subset, &mut checked, &mut max_proper)? {
                return Ok(v);
            }
        }
    }

    Ok(WorstApproxVerdict {
        is_worst: true,
        phi_k,
        max_proper_phi_k: max_proper,
        blocking_subpolygon: None,
        subsets_checked: checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanConfig {
    pub k: usize,
    /// Inclusive vertex-count range.
    pub n_range: (usize, usize),
    /// Instances per vertex count.
    pub instances: usize,
    pub generator: Generator,
    pub seed: u64,
    pub measure: ErrorMeasure,
}

/// A scanned instance contradicting the size theorem: worst-approximable
/// with more than k+1 vertices. Serialized with full vertex coordinates —
/// any occurrence indicates an implementation or tolerance bug and deserves
/// inspection.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counterexample {
    pub n: usize,
    pub k: usize,
    pub instance: usize,
    pub measure: ErrorMeasure,
    pub vertices: Vec<Point>,
    pub phi_k: f64,
    pub max_proper_phi_k: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellStats {
    pub n: usize,
    pub instances: usize,
    pub worst_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanReport {
    pub config: ScanConfig,
    pub cells: Vec<CellStats>,
    pub counterexamples: Vec<Counterexample>,
}

/// The polygon a scan uses for `(n, instance)` under `config` — exposed so
/// scans can be sharded across workers without changing their results.
pub fn scan_instance_polygon(config: &ScanConfig, n: usize, instance: usize) -> ConvexPolygon {
    let mut rng = SplitMix64::derive(config.seed, n, instance);
    config
        .generator
        .generate(n, &mut rng)
        .expect("scan vertex counts are at least 3")
}

/// Generate and test `instances` polygons per vertex count. Every
/// worst-approximable instance with `n > k + 1` is returned as a
/// counterexample to the size theorem; the expected result is an empty list.
pub fn scan_family(config: &ScanConfig) -> Result<ScanReport, WorstError> {
    let (n_lo, n_hi) = config.n_range;
    let mut cells = Vec::new();
    let mut counterexamples = Vec::new();
    for n in n_lo..=n_hi {
        let mut worst_count = 0usize;
        for instance in 0..config.instances {
            let poly = scan_instance_polygon(config, n, instance);
            let verdict = is_worst_approximable(&poly, config.measure, config.k)?;
            if verdict.is_worst {
                worst_count += 1;
                if n > config.k + 1 {
                    counterexamples.push(Counterexample {
                        n,
                        k: config.k,
                        instance,
                        measure: config.measure,
                        vertices: poly.vertices().to_vec(),
                        phi_k: verdict.phi_k,
                        max_proper_phi_k: verdict.max_proper_phi_k,
                    });
                }
            }
        }
        cells.push(CellStats {
            n,
            instances: config.instances,
            worst_count,
        });
    }
    Ok(ScanReport {
        config: *config,
        cells,
        counterexamples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PerimeterCheck {
    /// Perimeter after rescaling the polygon to optimal error one.
    pub perimeter: f64,
    /// `n / sin(PI / n)` for `n = k + 1`.
    pub bound: f64,
    pub holds: bool,
}

/// Rescale a (k+1)-gon so its optimal Hausdorff error is one and compare its
/// perimeter against `n / sin(PI / n)`, which the regular polygon attains.
pub fn perimeter_bound_check(
    poly: &ConvexPolygon,
    k: usize,
    tolerance: f64,
) -> Result<PerimeterCheck, WorstError> {
    let n = poly.vertex_count();
    if n != k + 1 {
        return Err(WorstError::WrongVertexCount {
            expected: k + 1,
            got: n,
        });
    }
    let phi_k = optimal_subpolygon(poly, ErrorMeasure::Hausdorff, k)?.error;
    if phi_k <= 0.0 {
        return Err(WorstError::ZeroError);
    }
    let rescaled = poly.scaled(1.0 / phi_k);
    let perimeter = rescaled.perimeter();
    let bound = (n as f64) / scalar::sin(scalar::PI / (n as f64));
    Ok(PerimeterCheck {
        perimeter,
        bound,
        holds: perimeter >= bound - tolerance,
    })
}

/// The angle between the oriented diagonals `v_{i-1} v_{i+1}` and
/// `v_i v_{i+2}`, for each `i`. These turn angles sum to a full circle on
/// any convex polygon.
pub fn diagonal_turn_angles(poly: &ConvexPolygon) -> Vec<f64> {
    let n = poly.vertex_count();
    (0..n)
        .map(|i| {
            let a = poly.vertex_wrapped(i as isize - 1);
            let b = poly.vertex_wrapped(i as isize + 1);
            let c = poly.vertex(i);
            let d = poly.vertex_wrapped(i as isize + 2);
            let u = a.to(b);
            let v = c.to(d);
            scalar::normalize_angle(scalar::atan2(v.y, v.x) - scalar::atan2(u.y, u.x))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeIdentityCheck {
    pub turn_angles: Vec<f64>,
    pub turn_sum: f64,
    /// Every edge length matches `1 / sin(gamma_i / 2)` within the tolerance.
    pub edge_identity_holds: bool,
    /// The turn angles sum to a full circle within the tolerance.
    pub turn_sum_holds: bool,
}

/// On an equalized (k+1)-gon — every delete-one error equal to one — each
/// edge `v_i v_{i+1}` has length `1 / sin(gamma_i / 2)` where `gamma_i` is
/// the diagonal turn angle at `i`. Inputs whose delete-one errors stray from
/// one by more than 5e-3 are reported as precondition violations.
pub fn edge_length_identity_check(
    poly: &ConvexPolygon,
    tolerance: f64,
) -> Result<EdgeIdentityCheck, WorstError> {
    let n = poly.vertex_count();
    for i in 0..n {
        let value = ErrorMeasure::Hausdorff
            .psi(
                poly.vertex(i),
                poly.vertex_wrapped(i as isize - 1),
                poly.vertex_wrapped(i as isize + 1),
            )
            .expect("polygon vertices are pairwise distinct");
        if scalar::fabs(value - 1.0) > 5e-3 {
            return Err(WorstError::NotEqualized { index: i });
        }
    }

    let turn_angles = diagonal_turn_angles(poly);
    let turn_sum: f64 = turn_angles.iter().sum();
    let edge_identity_holds = (0..n).all(|i| {
        let edge = poly.vertex(i).distance(poly.vertex_wrapped(i as isize + 1));
        scalar::fabs(edge - 1.0 / scalar::sin(turn_angles[i] / 2.0)) <= tolerance
    });
    Ok(EdgeIdentityCheck {
        turn_sum_holds: scalar::fabs(turn_sum - scalar::TAU) <= tolerance,
        turn_angles,
        turn_sum,
        edge_identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_convex, regular_polygon};

    #[test]
    fn regular_k_plus_1_gon_is_worst_approximable() {
        for k in [3usize, 4, 5] {
            let p = regular_polygon(k + 1, 1.0).unwrap();
            for measure in [ErrorMeasure::Hausdorff, ErrorMeasure::ApertureComplement] {
                let v = is_worst_approximable(&p, measure, k).unwrap();
                assert!(v.is_worst, "k={k} {measure:?}");
                assert!(v.phi_k > 0.0);
                assert_eq!(v.max_proper_phi_k, 0.0);
                assert_eq!(v.blocking_subpolygon, None);
            }
        }
    }

    #[test]
    fn regular_k_plus_2_gon_is_not_worst_approximable() {
        let p = regular_polygon(5, 1.0).unwrap();
        let v = is_worst_approximable(&p, ErrorMeasure::ApertureComplement, 3).unwrap();
        assert!(!v.is_worst);
        let blocking = v.blocking_subpolygon.expect("a blocking subpolygon exists");
        assert_eq!(blocking.len(), 4);
        let sub = p.subpolygon(&blocking).unwrap();
        let sub_phi = optimal_subpolygon(&sub, ErrorMeasure::ApertureComplement, 3)
            .unwrap()
            .error;
        assert!(sub_phi >= v.phi_k);
    }

    #[test]
    fn tiny_polygons_are_never_worst() {
        let p = regular_polygon(3, 1.0).unwrap();
        let v = is_worst_approximable(&p, ErrorMeasure::Hausdorff, 3).unwrap();
        assert!(!v.is_worst);
        assert_eq!(v.phi_k, 0.0);
    }

    #[test]
    fn scan_family_small_is_empty_and_counts_worst_cells() {
        let config = ScanConfig {
            k: 3,
            n_range: (4, 7),
            instances: 10,
            generator: Generator::RandomConvex,
            seed: 11,
            measure: ErrorMeasure::Hausdorff,
        };
        let report = scan_family(&config).unwrap();
        assert!(report.counterexamples.is_empty());
        // Every random 4-gon (n = k + 1) is worst-approximable: its proper
        // subpolygons all have at most k vertices.
        assert_eq!(report.cells[0].worst_count, 10);
        for cell in &report.cells[1..] {
            assert_eq!(cell.worst_count, 0, "n={} should have none", cell.n);
        }
    }

    #[test]
    fn scan_instances_are_reproducible() {
        let config = ScanConfig {
            k: 3,
            n_range: (5, 5),
            instances: 3,
            generator: Generator::RandomConvex,
            seed: 99,
            measure: ErrorMeasure::Hausdorff,
        };
        let a = scan_instance_polygon(&config, 5, 2);
        let b = scan_instance_polygon(&config, 5, 2);
        assert_eq!(a.vertices(), b.vertices());
    }

    #[test]
    fn perimeter_bound_tight_for_regular_and_square_by_hand() {
        for k in 3..=8 {
            let p = regular_polygon(k + 1, 1.0).unwrap();
            let check = perimeter_bound_check(&p, k, 1e-9).unwrap();
            assert!(check.holds);
            assert!(
                (check.perimeter - check.bound).abs() < 1e-9,
                "regular polygon attains the bound, k={k}"
            );
        }
        // Square: phi_3 = sqrt(2)/2, rescaled side sqrt(2), perimeter
        // 4 sqrt(2) = 4 / sin(PI/4).
        let square = regular_polygon(4, core::f64::consts::SQRT_2 / 2.0).unwrap();
        let check = perimeter_bound_check(&square, 3, 1e-9).unwrap();
        assert!((check.perimeter - 4.0 * core::f64::consts::SQRT_2).abs() < 1e-9);
        assert!((check.perimeter - check.bound).abs() < 1e-9);
    }

    #[test]
    fn perimeter_bound_rejects_wrong_sizes() {
        let p = regular_polygon(6, 1.0).unwrap();
        assert!(matches!(
            perimeter_bound_check(&p, 3, 1e-9),
            Err(WorstError::WrongVertexCount {
                expected: 4,
                got: 6
            })
        ));
    }

    #[test]
    fn edge_identity_on_equalized_pentagon() {
        let p = regular_polygon(5, 1.0).unwrap();
        let phi_4 = optimal_subpolygon(&p, ErrorMeasure::Hausdorff, 4)
            .unwrap()
            .error;
        let equalized = p.scaled(1.0 / phi_4);
        let check = edge_length_identity_check(&equalized, 1e-9).unwrap();
        assert!(check.edge_identity_holds);
        assert!(check.turn_sum_holds);
        for g in &check.turn_angles {
            assert!((g - scalar::TAU / 5.0).abs() < 1e-9);
        }
    }

    #[test]
    fn edge_identity_rejects_non_equalized_input() {
        let p = regular_polygon(5, 1.0).unwrap();
        assert!(matches!(
            edge_length_identity_check(&p, 1e-9),
            Err(WorstError::NotEqualized { .. })
        ));
    }

    #[test]
    fn turn_angles_sum_to_full_circle_for_any_convex_polygon() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let p = random_convex(6, &mut rng).unwrap();
            let sum: f64 = diagonal_turn_angles(&p).iter().sum();
            assert!((sum - scalar::TAU).abs() < 1e-9);
        }
    }

    #[test]
    fn rescaling_covariance_of_both_measures() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..10 {
            let p = random_convex(7, &mut rng).unwrap();
            let lambda = rng.next_range(0.5, 3.0);
            let scaled = p.scaled(lambda);
            for (measure, linear) in [
                (ErrorMeasure::Hausdorff, true),
                (ErrorMeasure::ApertureComplement, false),
            ] {
                let base = optimal_subpolygon(&p, measure, 4).unwrap();
                let after = optimal_subpolygon(&scaled, measure, 4).unwrap();
                let expected = if linear {
                    base.error * lambda
                } else {
                    base.error
                };
                assert!((after.error - expected).abs() < 1e-9);
                assert_eq!(after.chosen, base.chosen);
            }
        }
    }
}
