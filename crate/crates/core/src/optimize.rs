//! Exact minimax subpolygon optimization.
//!
//! Two routes compute the optimal error of a k-vertex subpolygon:
//!
//! * [`brute_force_opt`] — direct minimum over all k-subsets; the oracle.
//! * [`optimal_subpolygon`] — binary search over the finite set of candidate
//!   error values (every bracketed `psi` value), testing each level with a
//!   greedy longest-chord cover. The optimum is always attained at a
//!   candidate value, so the search is exact, and the two routes must agree.

use alloc::vec;
use alloc::vec::Vec;

use crate::chords::{build_chord_graph, ChordGraph};
use crate::geometry::ConvexPolygon;
use crate::measure::{phi, ErrorMeasure};

/// Default vertex-count cap for brute-force enumeration.
pub const BRUTE_FORCE_LIMIT: usize = 18;

/// Merge radius for candidate error values; floating duplicates closer than
/// this collapse to one binary-search level.
pub const CANDIDATE_MERGE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    BruteForce,
    CandidateSearch,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ApproxResult {
    /// Sorted vertex indices of the chosen subpolygon, at most k of them.
    pub chosen: Vec<usize>,
    /// `phi` of the chosen subset, recomputed from scratch.
    pub error: f64,
    /// Excluded vertex attaining the error, when any vertex is excluded.
    pub witness: Option<usize>,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptError {
    /// Brute force would enumerate too many subsets.
    SizeLimit { n: usize, limit: usize },
    /// The subpolygon problem is posed for k >= 3.
    InvalidK { k: usize },
}

impl core::fmt::Display for OptError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OptError::SizeLimit { n, limit } => {
                write!(f, "{n} vertices exceed the brute-force limit of {limit}")
            }
            OptError::InvalidK { k } => write!(f, "k must be at least 3, got {k}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OptError {}

fn trivial_result(poly: &ConvexPolygon, method: Method) -> ApproxResult {
    ApproxResult {
        chosen: (0..poly.vertex_count()).collect(),
        error: 0.0,
        witness: None,
        method,
    }
}

/// Visit all k-subsets of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact minimum over all k-subsets, with the default size cap.
pub fn brute_force_opt(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
) -> Result<ApproxResult, OptError> {
    brute_force_opt_limited(poly, measure, k, BRUTE_FORCE_LIMIT)
}

/// Exact minimum over all k-subsets of the polygon's vertices. Ties break to
/// the lexicographically smallest index set, which the enumeration order
/// yields for free.
pub fn brute_force_opt_limited(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
    limit: usize,
) -> Result<ApproxResult, OptError> {
    if k < 3 {
        return Err(OptError::InvalidK { k });
    }
    let n = poly.vertex_count();
    if n <= k {
        return Ok(trivial_result(poly, Method::BruteForce));
    }
    if n > limit {
        return Err(OptError::SizeLimit { n, limit });
    }

    let mut best: Option<ApproxResult> = None;
    for_each_combination(n, k, |subset| {
        let outcome = phi(measure, poly, subset).expect("subset indices are valid");
        let better = match &best {
            None => true,
            Some(b) => outcome.value < b.error,
        };
        if better {
            best = Some(ApproxResult {
                chosen: subset.to_vec(),
                error: outcome.value,
                witness: outcome.witness,
                method: Method::BruteForce,
            });
        }
    });
    Ok(best.expect("n > k implies at least one subset"))
}

/// Sorted, deduplicated list of every bracketed `psi` value of the polygon:
/// the only levels at which the optimal error can sit.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    values: Vec<f64>,
}

impl CandidateSet {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// All `psi(v, s, t)` values over cyclic triples `s < v < t`, sorted, with
/// duplicates merged at [`CANDIDATE_MERGE_EPS`].
pub fn candidate_errors(poly: &ConvexPolygon, measure: ErrorMeasure) -> CandidateSet {
    let n = poly.vertex_count();
    let cyc = poly.cycle();
    let mut values = Vec::with_capacity(n * (n - 1) * (n - 2) / 2);
    for s in 0..n {
        for span in 2..n {
            let t = cyc.add(s, span as isize);
            for v in cyc.strictly_between(s, t) {
                values.push(
                    measure
                        .psi(poly.vertex(v), poly.vertex(s), poly.vertex(t))
                        .expect("polygon vertices are pairwise distinct"),
                );
            }
        }
    }
    values.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(values.len());
    for v in values {
        match merged.last() {
            Some(&last) if v - last <= CANDIDATE_MERGE_EPS => {}
            _ => merged.push(v),
        }
    }
    CandidateSet { values: merged }
}

/// Greedy wrap from one start vertex: jump along longest chords until the
/// closing diagonal back to the start is feasible (prefix-closedness makes
/// the closing jump feasible as soon as the chord would reach or pass the
/// start). Returns the vertices of a cover with at most `k` of them.
fn greedy_wrap(graph: &ChordGraph, k: usize, start: usize) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    let mut chosen = vec![start];
    let mut covered = 0usize;
    let mut cur = start;
    loop {
        let len = graph.chord_length(cur);
        if covered + len >= n {
            return Some(chosen);
        }
        if chosen.len() == k {
            return None;
        }
        covered += len;
        cur = graph.successor(cur);
        chosen.push(cur);
    }
}

/// A subset of at most `k` vertices whose subpolygon stays within `sigma`,
/// if one exists: the greedy wrap is run from every start vertex and the
/// lexicographically smallest sorted success is returned.
pub fn feasible_cover(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
    sigma: f64,
) -> Option<Vec<usize>> {
    let n = poly.vertex_count();
    if n <= k {
        return Some((0..n).collect());
    }
    let graph = build_chord_graph(poly, measure, sigma);
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        if let Some(mut cover) = greedy_wrap(&graph, k, start) {
            cover.sort_unstable();
            match &best {
                Some(b) if *b <= cover => {}
                _ => best = Some(cover),
            }
        }
    }
    best
}

/// Exact optimum by binary search over candidate error values, using the
/// greedy cover as the feasibility test. Must agree with
/// [`brute_force_opt`] on the error value whenever both run.
pub fn optimal_subpolygon(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
) -> Result<ApproxResult, OptError> {
    if k < 3 {
        return Err(OptError::InvalidK { k });
    }
    let n = poly.vertex_count();
    if n <= k {
        return Ok(trivial_result(poly, Method::CandidateSearch));
    }

    let candidates = candidate_errors(poly, measure);
    let values = candidates.values();
    debug_assert!(!values.is_empty());
    debug_assert!(
        feasible_cover(poly, measure, k, values[values.len() - 1]).is_some(),
        "every polygon is coverable at the largest candidate level"
    );

    // First feasible candidate level.
    let mut lo = 0usize;
    let mut hi = values.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible_cover(poly, measure, k, values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }

    let chosen = feasible_cover(poly, measure, k, values[lo])
        .expect("binary search maintained feasibility at hi");
    let outcome = phi(measure, poly, &chosen).expect("cover indices are valid");
    Ok(ApproxResult {
        chosen,
        error: outcome.value,
        witness: outcome.witness,
        method: Method::CandidateSearch,
    })
}
