//! Feasible diagonals, chord graphs, bases and witnesses, and the
//! executable structure audit.
//!
//! Fix a polygon, a measure and an error level `sigma`. A diagonal `(p, q)`
//! is feasible when every vertex strictly between `p` and `q` has
//! `psi(v, p, q) <= sigma`; by monotonicity the feasible diagonals from a
//! fixed start form a prefix-closed range of lengths, and the longest one is
//! the *chord* from that vertex. The chord graph (one outgoing chord per
//! vertex) carries a surprising amount of structure whenever the polygon is
//! hardest to approximate among its subpolygons; [`audit_structure`] turns
//! each of those structural claims into a checkable report field.
//!
//! Diagonal and chord lengths are counted in cyclic vertex steps, not
//! Euclidean length.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{ConvexPolygon, Strictness};
use crate::measure::ErrorMeasure;
use crate::FEASIBILITY_SLACK;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagonal {
    pub from: usize,
    pub to: usize,
}

/// Is every vertex strictly between `from` and `to` within `sigma` of the
/// bracket `(from, to)`? Edges (cyclic length one) are vacuously feasible.
pub fn is_feasible(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    from: usize,
    to: usize,
    sigma: f64,
) -> bool {
    debug_assert_ne!(from, to, "diagonal endpoints must differ");
    let s = poly.vertex(from);
    let t = poly.vertex(to);
    poly.cycle().strictly_between(from, to).all(|v| {
        let psi = measure
            .psi(poly.vertex(v), s, t)
            .expect("polygon vertices are pairwise distinct");
        psi <= sigma + FEASIBILITY_SLACK
    })
}

/// Longest feasible diagonal from `from`, by cyclic step count. Length is
/// always at least one. Uses prefix-closedness of feasible lengths for a
/// binary search; debug builds verify the result against a linear scan.
pub fn chord_from(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    from: usize,
    sigma: f64,
) -> Diagonal {
    let cyc = poly.cycle();
    let n = cyc.n();
    let longest =
        if n == 2 || is_feasible(poly, measure, from, cyc.add(from, n as isize - 1), sigma) {
            n - 1
        } else {
            let mut lo = 1usize;
            let mut hi = n - 1;
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if is_feasible(poly, measure, from, cyc.add(from, mid as isize), sigma) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };

    #[cfg(debug_assertions)]
    {
        let linear = (1..n)
            .take_while(|&len| is_feasible(poly, measure, from, cyc.add(from, len as isize), sigma))
            .count();
        debug_assert_eq!(longest, linear, "feasible lengths must be prefix closed");
    }

    Diagonal {
        from,
        to: cyc.add(from, longest as isize),
    }
}

/// Per-vertex successor map of chords at error level `sigma`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChordGraph {
    sigma: f64,
    successor: Vec<usize>,
}

impl ChordGraph {
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn vertex_count(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self, i: usize) -> usize {
        self.successor[i]
    }

    pub fn successors(&self) -> &[usize] {
        &self.successor
    }

    /// Cyclic step count of the chord leaving `i`.
    pub fn chord_length(&self, i: usize) -> usize {
        let n = self.successor.len();
        (self.successor[i] + n - i) % n
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.successor.len()];
        for &t in &self.successor {
            deg[t] += 1;
        }
        deg
    }

    /// The common chord length, if all chords share one.
    pub fn uniform_chord_length(&self) -> Option<usize> {
        let m = self.chord_length(0);
        (1..self.successor.len())
            .all(|i| self.chord_length(i) == m)
            .then_some(m)
    }
}

pub fn build_chord_graph(poly: &ConvexPolygon, measure: ErrorMeasure, sigma: f64) -> ChordGraph {
    ChordGraph {
        sigma,
        successor: (0..poly.vertex_count())
            .map(|i| chord_from(poly, measure, i, sigma).to)
            .collect(),
    }
}

/// Vertices strictly between `from` and `to` exceeding `sigma` against the
/// bracket `(from, to)`. The diagonal is feasible iff this is empty; it is a
/// base of the structural theory iff this has exactly one element.
pub fn find_witnesses(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    from: usize,
    to: usize,
    sigma: f64,
) -> Vec<usize> {
    let s = poly.vertex(from);
    let t = poly.vertex(to);
    poly.cycle()
        .strictly_between(from, to)
        .filter(|&v| {
            measure
                .psi(poly.vertex(v), s, t)
                .expect("polygon vertices are pairwise distinct")
                > sigma + FEASIBILITY_SLACK
        })
        .collect()
}

/// One reconstructed k-gon approximation of the polygon with `witness`
/// deleted: `k - 1` chords plus the base edge `(start, end)` whose unique
/// over-threshold vertex is `witness`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BaseRecord {
    pub witness: usize,
    pub start: usize,
    pub end: usize,
    /// Cyclic step count from `start` to `end`.
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    /// Caller has verified the worst-approximable hypothesis for
    /// `(poly, k, sigma)`; every report field is expected to hold.
    Established,
    /// Exploratory run; the report is data, not a verdict.
    Exploratory,
}

/// Evaluation of every structural claim about chord graphs and bases on one
/// `(polygon, measure, k, sigma)` instance. Option fields are `None` when
/// the quantity they describe does not exist on this instance (no uniform
/// chord length, no complete base map, or a measure without shift
/// structure).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StructureReport {
    pub sigma: f64,
    pub k: usize,
    /// Echo of [`AuditMode`]: true when the caller established the
    /// worst-approximable hypothesis before auditing.
    pub established: bool,
    pub in_degrees: Vec<usize>,
    pub in_degree_all_one: bool,
    /// Common chord length `m`, when uniform.
    pub chord_length_m: Option<usize>,
    /// Common base length, when every vertex has exactly one base and all
    /// bases share a length. Expected to be `m + 1`.
    pub base_length: Option<usize>,
    /// `n == k * m + 1` for the uniform chord length `m`.
    pub n_eq_km_plus_1: bool,
    /// Every vertex has exactly one base and the base end-vertex map is
    /// injective.
    pub t_bijective: bool,
    /// All valid bases found, grouped by deleted vertex (flattened; one
    /// entry per `(witness, base)` pair).
    pub bases: Vec<BaseRecord>,
    pub witnesses_distinct: bool,
    /// Pairs of indices into `bases` realizing a forbidden nested order.
    pub nested_base_violations: Vec<(usize, usize)>,
    /// For every vertex, one of the two adjacent-base witnesses falls
    /// strictly inside that vertex's own base. Vacuously true at `n == k+1`;
    /// false when the prerequisites (uniform `m`, complete base map) are
    /// missing on an instance with `n > k+1`.
    pub near_witness_holds: bool,
    /// Hausdorff only: the uniform shift with `start(v_i) = v_{i-r}`, after
    /// mirror normalization.
    pub r_shift: Option<usize>,
    /// Whether the mirror image was used to normalize the shift.
    pub mirror_applied: bool,
    /// Hausdorff only: `3r > m + 1` for the normalized shift.
    pub three_r_gt_m_plus_1: Option<bool>,
}

/// All bases valid for deleting vertex `u`: ends `t` whose `k - 1`-chord
/// walk lands on an `s` with `(s, t)` witnessing exactly `{u}`.
fn bases_for(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    graph: &ChordGraph,
    k: usize,
    sigma: f64,
    u: usize,
) -> Vec<BaseRecord> {
    let cyc = poly.cycle();
    let n = cyc.n();
    let mut found = Vec::new();
    for t in 0..n {
        if t == u {
            continue;
        }
        let mut cur = t;
        let mut steps = 0usize;
        for _ in 0..k - 1 {
            steps += graph.chord_length(cur);
            cur = graph.successor(cur);
        }
        if steps > n - 1 {
            continue; // walk wrapped past a full turn
        }
        let s = cur;
        if !cyc.between(s, u, t, Strictness::Exclusive) {
            continue;
        }
        let witnesses = find_witnesses(poly, measure, s, t, sigma);
        if witnesses == [u] {
            found.push(BaseRecord {
                witness: u,
                start: s,
                end: t,
                length: n - steps,
            });
        }
    }
    found
}

/// Build the chord graph, reconstruct every per-vertex base, and evaluate
/// the structural claims. Runs on any input; pass
/// [`AuditMode::Established`] only after verifying the worst-approximable
/// hypothesis (see [`crate::worst::is_worst_approximable`]).
pub fn audit_structure(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
    sigma: f64,
    mode: AuditMode,
) -> StructureReport {
    assert!(k >= 3, "the structural theory is restricted to k >= 3");
    let cyc = poly.cycle();
    let n = cyc.n();
    let graph = build_chord_graph(poly, measure, sigma);

    let in_degrees = graph.in_degrees();
    let in_degree_all_one = in_degrees.iter().all(|&d| d == 1);
    let chord_length_m = graph.uniform_chord_length();

    let per_vertex: Vec<Vec<BaseRecord>> = (0..n)
        .map(|u| bases_for(poly, measure, &graph, k, sigma, u))
        .collect();
    let bases: Vec<BaseRecord> = per_vertex.iter().flatten().copied().collect();

    let base_map_complete = per_vertex.iter().all(|b| b.len() == 1);
    let t_bijective = base_map_complete && {
        let mut seen = vec![false; n];
        per_vertex.iter().all(|b| {
            let t = b[0].end;
            !core::mem::replace(&mut seen[t], true)
        })
    };

    let base_length = (base_map_complete && !bases.is_empty())
        .then(|| bases[0].length)
        .filter(|&len| bases.iter().all(|b| b.length == len));

    let n_eq_km_plus_1 = chord_length_m.is_some_and(|m| n == k * m + 1);

    let witnesses_distinct = {
        let mut ok = true;
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                if bases[i].start == bases[j].start && bases[i].end == bases[j].end {
                    ok = false;
                }
            }
        }
        ok
    };

    let mut nested_base_violations = Vec::new();
    for i in 0..bases.len() {
        for j in 0..bases.len() {
            if i == j {
                continue;
            }
            let (outer, inner) = (&bases[i], &bases[j]);
            if outer.start == inner.start && outer.end == inner.end {
                continue;
            }
            // outer.start <= inner.start < inner.end <= outer.end in cyclic
            // order, measured from outer.start.
            let ds = cyc.distance(outer.start, inner.start);
            let de = cyc.distance(outer.start, inner.end);
            let dt = cyc.distance(outer.start, outer.end);
            if ds < de && de <= dt {
                nested_base_violations.push((i, j));
            }
        }
    }

    let near_witness_holds = if n == k + 1 {
        true
    } else {
        match chord_length_m {
            Some(m) if base_map_complete => (0..n).all(|i| {
                let left = find_witnesses(poly, measure, cyc.add(i, -(m as isize) - 1), i, sigma);
                let right = find_witnesses(poly, measure, i, cyc.add(i, m as isize + 1), sigma);
                let own = &per_vertex[i][0];
                let inside = |w: &Vec<usize>| {
                    w.len() == 1 && cyc.between(own.start, w[0], own.end, Strictness::Exclusive)
                };
                inside(&left) || inside(&right)
            }),
            _ => false,
        }
    };

    let (r_shift, mirror_applied, three_r_gt_m_plus_1) = if measure == ErrorMeasure::Hausdorff {
        shift_structure(poly, measure, k, sigma, chord_length_m, &per_vertex)
    } else {
        (None, false, None)
    };

    StructureReport {
        sigma,
        k,
        established: mode == AuditMode::Established,
        in_degrees,
        in_degree_all_one,
        chord_length_m,
        base_length,
        n_eq_km_plus_1,
        t_bijective,
        bases,
        witnesses_distinct,
        nested_base_violations,
        near_witness_holds,
        r_shift,
        mirror_applied,
        three_r_gt_m_plus_1,
    }
}

/// Extract the uniform shift `r` with `start(v_i) = v_{i-r}`. When the raw
/// shift exceeds `(m + 1) / 2` the audit reruns on the mirror image, which
/// realizes the complementary shift `m + 1 - r`.
fn shift_structure(
    poly: &ConvexPolygon,
    measure: ErrorMeasure,
    k: usize,
    sigma: f64,
    chord_length_m: Option<usize>,
    per_vertex: &[Vec<BaseRecord>],
) -> (Option<usize>, bool, Option<bool>) {
    let Some(m) = chord_length_m else {
        return (None, false, None);
    };
    if per_vertex.iter().any(|b| b.len() != 1) {
        return (None, false, None);
    }
    let cyc = poly.cycle();
    let mut shifts = per_vertex
        .iter()
        .enumerate()
        .map(|(u, b)| cyc.distance(b[0].start, u));
    let r = shifts.next().expect("polygon is nonempty");
    if !shifts.all(|s| s == r) {
        return (None, false, None);
    }

    if 2 * r > m + 1 {
        let mirrored = poly.mirrored();
        let graph = build_chord_graph(&mirrored, measure, sigma);
        let mirrored_bases: Vec<Vec<BaseRecord>> = (0..cyc.n())
            .map(|u| bases_for(&mirrored, measure, &graph, k, sigma, u))
            .collect();
        let (mr, _, three) = shift_structure(
            &mirrored,
            measure,
            k,
            sigma,
            graph.uniform_chord_length(),
            &mirrored_bases,
        );
        debug_assert_eq!(
            mr,
            Some(m + 1 - r),
            "mirror image realizes the complementary shift"
        );
        return (mr, true, three);
    }

    (Some(r), false, Some(3 * r > m + 1))
}
