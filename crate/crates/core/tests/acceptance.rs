//! Acceptance suite: one test per claim, each printing a pass line with its
//! measured runtime. Tolerances are pinned in the assertions.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::PI;
use std::time::Instant;

use apexgon_core::body::{estimate_alpha_ck, min_sampled_aperture, tangent_walk_kgon, ConvexBody};
use apexgon_core::chords::{audit_structure, AuditMode};
use apexgon_core::generate::{random_convex, regular_polygon, Generator, SplitMix64};
use apexgon_core::geometry::{orientation, Point};
use apexgon_core::measure::{stick_out_radius_check, CapRegion, Disk, ErrorMeasure};
use apexgon_core::optimize::{brute_force_opt, optimal_subpolygon};
use apexgon_core::worst::{
    edge_length_identity_check, is_worst_approximable, perimeter_bound_check, scan_family,
    scan_instance_polygon, ScanConfig,
};

fn report(criterion: &str, detail: &str, started: Instant) {
    println!(
        "criterion {criterion}: PASS — {detail} ({} ms)",
        started.elapsed().as_millis()
    );
}

/// Aperture bound tightness: the regular (k+1)-gon attains exactly
/// (1 - 2/(k+1)) PI for k = 3..10.
#[test]
fn criterion_01_aperture_tightness_on_regular_polygons() {
    let started = Instant::now();
    for k in 3..=10usize {
        let poly = regular_polygon(k + 1, 1.0).unwrap();
        let result = optimal_subpolygon(&poly, ErrorMeasure::ApertureComplement, k).unwrap();
        let aperture = PI - result.error;
        let expected = (1.0 - 2.0 / ((k + 1) as f64)) * PI;
        assert!(
            (aperture - expected).abs() <= 1e-9,
            "k={k}: aperture {aperture} vs expected {expected}"
        );
    }
    report("1", "regular (k+1)-gon aperture exact for k=3..10", started);
}

/// Hausdorff bound: the unit-perimeter regular (k+1)-gon attains
/// sin(PI/(k+1))/(k+1) exactly, and 500 random unit-perimeter polygons stay
/// below the bound for every k in 3..8.
#[test]
fn criterion_02_hausdorff_bound_for_unit_perimeter() {
    let started = Instant::now();
    for k in 3..=10usize {
        let raw = regular_polygon(k + 1, 1.0).unwrap();
        let poly = raw.scaled(1.0 / raw.perimeter());
        let result = optimal_subpolygon(&poly, ErrorMeasure::Hausdorff, k).unwrap();
        let expected = (PI / ((k + 1) as f64)).sin() / ((k + 1) as f64);
        assert!(
            (result.error - expected).abs() <= 1e-9,
            "regular k={k}: {} vs {expected}",
            result.error
        );
    }

    let mut rng = SplitMix64::new(0xAC02);
    for i in 0..500usize {
        let n = 4 + i % 27; // 4..=30
        let raw = random_convex(n, &mut rng).unwrap();
        let poly = raw.scaled(1.0 / raw.perimeter());
        for k in 3..=8usize {
            let result = optimal_subpolygon(&poly, ErrorMeasure::Hausdorff, k).unwrap();
            let bound = (PI / ((k + 1) as f64)).sin() / ((k + 1) as f64);
            assert!(
                result.error <= bound + 1e-9,
                "instance {i} (n={n}, k={k}): {} exceeds bound {bound}",
                result.error
            );
        }
    }
    report(
        "2",
        "unit-perimeter Hausdorff bound exact on regular, respected on 500 random polygons",
        started,
    );
}

/// Aperture guarantee: every polygon admits a k-subpolygon with aperture at
/// least (1 - 2/(k+1)) PI.
#[test]
fn criterion_03_aperture_guarantee_on_random_polygons() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0xAC03);
    for i in 0..500usize {
        let n = 4 + i % 27;
        let poly = random_convex(n, &mut rng).unwrap();
        for k in 3..=8usize {
            let result = optimal_subpolygon(&poly, ErrorMeasure::ApertureComplement, k).unwrap();
            let floor = (1.0 - 2.0 / ((k + 1) as f64)) * PI;
            assert!(
                PI - result.error >= floor - 1e-9,
                "instance {i} (n={n}, k={k}): aperture {} below {floor}",
                PI - result.error
            );
        }
    }
    report(
        "3",
        "aperture floor held on 500 random polygons, k=3..8",
        started,
    );
}

/// The candidate search agrees with brute force on every instance.
#[test]
fn criterion_04_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0xAC04);
    for i in 0..200usize {
        let n = 5 + i % 10; // 5..=14
        let poly = random_convex(n, &mut rng).unwrap();
        for measure in [ErrorMeasure::Hausdorff, ErrorMeasure::ApertureComplement] {
            for k in 3..n {
                let fast = optimal_subpolygon(&poly, measure, k).unwrap();
                let slow = brute_force_opt(&poly, measure, k).unwrap();
                assert!(
                    (fast.error - slow.error).abs() <= 1e-12,
                    "instance {i} (n={n}, k={k}, {measure:?}): {} vs {}",
                    fast.error,
                    slow.error
                );
            }
        }
    }
    report(
        "4",
        "candidate search equals brute force on 200 polygons, all k, both measures",
        started,
    );
}

/// Size theorem scan: no worst-approximable polygon with n > k + 1 exists;
/// the regular (k+1)-gon is one.
#[test]
fn criterion_05_worst_approximable_size_scan() {
    let started = Instant::now();
    for k in [3usize, 4, 5] {
        for measure in [ErrorMeasure::Hausdorff, ErrorMeasure::ApertureComplement] {
            let config = ScanConfig {
                k,
                n_range: (k + 2, 12),
                instances: 100,
                generator: Generator::RandomConvex,
                seed: 0xAC05,
                measure,
            };
            let scan = scan_family(&config).unwrap();
            assert!(
                scan.counterexamples.is_empty(),
                "k={k} {measure:?}: {} counterexample(s) found: {:?}",
                scan.counterexamples.len(),
                scan.counterexamples
            );
            for cell in &scan.cells {
                assert_eq!(
                    cell.worst_count, 0,
                    "k={k} {measure:?} n={}: unexpected worst-approximable instances",
                    cell.n
                );
            }
            // The regular (k+1)-gon is confirmed worst-approximable.
            let regular = regular_polygon(k + 1, 1.0).unwrap();
            let verdict = is_worst_approximable(&regular, measure, k).unwrap();
            assert!(
                verdict.is_worst,
                "regular {}-gon must be worst, k={k}",
                k + 1
            );
        }
    }
    report(
        "5",
        "zero worst-approximable instances at n in [k+2, 12], k in {3,4,5}, both measures; regular (k+1)-gon confirmed",
        started,
    );
}

/// Structural audit in the established regime: every worst-approximable
/// (k+1)-gon passes all chord-graph and base checks at the handoff level,
/// and the general-m code paths hold on the regular (km+1)-gon example.
#[test]
fn criterion_06_structural_audit() {
    let started = Instant::now();
    for k in [3usize, 4, 5] {
        for measure in [ErrorMeasure::Hausdorff, ErrorMeasure::ApertureComplement] {
            let config = ScanConfig {
                k,
                n_range: (k + 1, k + 1),
                instances: 100,
                generator: Generator::RandomConvex,
                seed: 0xAC05,
                measure,
            };
            for instance in 0..config.instances {
                let poly = scan_instance_polygon(&config, k + 1, instance);
                let verdict = is_worst_approximable(&poly, measure, k).unwrap();
                assert!(verdict.is_worst, "every strictly convex (k+1)-gon is worst");
                let report = audit_structure(
                    &poly,
                    measure,
                    k,
                    verdict.max_proper_phi_k,
                    AuditMode::Established,
                );
                assert!(report.t_bijective, "k={k} {measure:?} #{instance}");
                assert!(report.in_degree_all_one);
                assert_eq!(report.chord_length_m, Some(1));
                assert_eq!(report.base_length, Some(2));
                assert!(report.n_eq_km_plus_1);
                assert!(report.witnesses_distinct);
                assert!(report.nested_base_violations.is_empty());
                assert!(report.near_witness_holds);
            }
        }
    }

    // General-m paths: regular 10-gon with k = 3 at a sigma level between
    // 3-step and 4-step feasibility gives m = 3, bases of length 4.
    let poly = regular_polygon(10, 1.0).unwrap();
    let measure = ErrorMeasure::Hausdorff;
    let psi = |v: usize, s: usize, t: usize| {
        measure
            .psi(poly.vertex(v), poly.vertex(s), poly.vertex(t))
            .unwrap()
    };
    let lower = psi(1, 0, 3)
        .max(psi(2, 0, 3))
        .max(psi(1, 0, 4))
        .max(psi(3, 0, 4));
    let upper = psi(2, 0, 4);
    assert!(lower < upper);
    let sigma = 0.5 * (lower + upper);
    let general = audit_structure(&poly, measure, 3, sigma, AuditMode::Exploratory);
    assert_eq!(general.chord_length_m, Some(3));
    assert_eq!(general.base_length, Some(4));
    assert!(general.n_eq_km_plus_1, "10 = 3 * 3 + 1");
    assert!(general.t_bijective);
    assert!(general.in_degree_all_one);
    assert!(general.witnesses_distinct);
    assert!(general.nested_base_violations.is_empty());

    report(
        "6",
        "audit green on 600 worst-approximable (k+1)-gons; general-m paths exercised on the regular 10-gon",
        started,
    );
}

/// Monotonicity of psi, exhaustively over all bracket 5-tuples of seeded
/// polygons with n <= 10.
#[test]
fn criterion_07_psi_monotonicity_exhaustive() {
    let started = Instant::now();
    let mut violations = 0u64;
    let mut checked = 0u64;
    for n in 4..=10usize {
        let mut rng = SplitMix64::new(0xAC07 + n as u64);
        for _ in 0..50 {
            let poly = random_convex(n, &mut rng).unwrap();
            let cyc = poly.cycle();
            for measure in [ErrorMeasure::Hausdorff, ErrorMeasure::ApertureComplement] {
                for v in 0..n {
                    for near_left in 1..n - 1 {
                        for near_right in 1..n - near_left {
                            for far_left in near_left..n - near_right {
                                for far_right in near_right..=(n - 1 - far_left) {
                                    let value = |left: usize, right: usize| {
                                        measure
                                            .psi(
                                                poly.vertex(v),
                                                poly.vertex(cyc.add(v, -(left as isize))),
                                                poly.vertex(cyc.add(v, right as isize)),
                                            )
                                            .unwrap()
                                    };
                                    checked += 1;
                                    if value(near_left, near_right)
                                        > value(far_left, far_right) + 1e-12
                                    {
                                        violations += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert_eq!(violations, 0, "monotonicity violated");
    report(
        "7",
        &format!("zero violations over {checked} bracket tuples"),
        started,
    );
}

/// Perimeter bound: rescaled (k+1)-gons have perimeter at least
/// n / sin(PI/n), tight for the regular polygon, and the edge-length
/// identity holds on equalized regular instances.
#[test]
fn criterion_08_perimeter_bound_and_edge_identity() {
    let started = Instant::now();
    for k in 3..=8usize {
        let mut rng = SplitMix64::new(0xAC08 + k as u64);
        for i in 0..1000usize {
            let poly = random_convex(k + 1, &mut rng).unwrap();
            let check = perimeter_bound_check(&poly, k, 1e-9).unwrap();
            assert!(
                check.holds,
                "k={k} instance {i}: perimeter {} below bound {}",
                check.perimeter, check.bound
            );
        }

        let regular = regular_polygon(k + 1, 1.0).unwrap();
        let check = perimeter_bound_check(&regular, k, 1e-9).unwrap();
        assert!(
            (check.perimeter - check.bound).abs() <= 1e-9,
            "regular (k+1)-gon must attain the bound"
        );

        let phi_k = optimal_subpolygon(&regular, ErrorMeasure::Hausdorff, k)
            .unwrap()
            .error;
        let equalized = regular.scaled(1.0 / phi_k);
        let identity = edge_length_identity_check(&equalized, 1e-9).unwrap();
        assert!(identity.edge_identity_holds, "k={k}: edge identity");
        assert!(identity.turn_sum_holds, "k={k}: turn angles sum to 2 PI");
    }
    report(
        "8",
        "6000 rescaled (k+1)-gons above the bound; regular attains it; edge identity verified",
        started,
    );
}

/// Region equivalence and the stick-out comparison, by mass sampling.
#[test]
fn criterion_09_cap_region_equivalence_and_stick_out() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0xAC09);

    let mut agreements = 0usize;
    while agreements < 10_000 {
        let p = Point::new(rng.next_range(-2.0, 2.0), rng.next_range(-2.0, 2.0));
        let q = Point::new(rng.next_range(-2.0, 2.0), rng.next_range(-2.0, 2.0));
        if p.distance(q) < 1e-3 {
            continue;
        }
        let sigma = rng.next_range(0.05, PI - 0.05);
        let x = Point::new(rng.next_range(-4.0, 4.0), rng.next_range(-4.0, 4.0));
        if x.distance(p) < 1e-6 || x.distance(q) < 1e-6 {
            continue;
        }
        let cap = CapRegion::new(p, q, sigma).unwrap();
        let by_disk = cap.contains(x);
        let by_angle = orientation(p, q, x).sign() <= 0
            && ErrorMeasure::ApertureComplement.psi(x, p, q).unwrap() <= sigma;
        assert_eq!(by_disk, by_angle, "p={p:?} q={q:?} sigma={sigma} x={x:?}");
        agreements += 1;
    }

    let mut accepted = 0usize;
    while accepted < 100_000 {
        let oy = rng.next_range(0.05, 1.0);
        let outer = Disk {
            center: Point::new(rng.next_range(-1.0, 1.0), oy),
            radius: oy + rng.next_range(0.05, 2.0),
        };
        let iy = rng.next_range(0.02, 0.8);
        let inner = Disk {
            center: Point::new(rng.next_range(-1.5, 1.5), iy),
            radius: iy + rng.next_range(0.02, 1.2),
        };
        let line = (Point::new(-10.0, 0.0), Point::new(10.0, 0.0));
        // Sample a handful of candidate points inside the inner disk.
        for _ in 0..8 {
            let angle = rng.next_range(0.0, 2.0 * PI);
            let radial = inner.radius * rng.next_f64().sqrt();
            let p = Point::new(
                inner.center.x + radial * angle.cos(),
                inner.center.y + radial * angle.sin(),
            );
            match stick_out_radius_check(outer, inner, line, p) {
                Ok(conclusion) => {
                    assert!(
                        conclusion,
                        "stick-out violated: outer {outer:?} inner {inner:?} p {p:?}"
                    );
                    accepted += 1;
                    break;
                }
                Err(_) => continue,
            }
        }
    }

    report(
        "9",
        "10000 region agreements; 100000 stick-out instances all satisfied the radius comparison",
        started,
    );
}

/// Tangent-walk guarantee and disk refinement convergence.
#[test]
fn criterion_10_tangent_walk_and_refinement() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0xAC10);
    let mut bodies = vec![
        ConvexBody::Disk { radius: 1.0 },
        ConvexBody::Ellipse { a: 2.0, b: 1.0 },
    ];
    for _ in 0..20 {
        let n = 8 + (rng.next_u64() % 13) as usize;
        bodies.push(ConvexBody::Polygon(random_convex(n, &mut rng).unwrap()));
    }
    for k in 3..=8usize {
        let guarantee = (1.0 - 2.0 / (k as f64)) * PI;
        for body in &bodies {
            let walk = tangent_walk_kgon(body, k, 4096).unwrap();
            assert!(walk.len() <= k);
            let min = min_sampled_aperture(body, &walk, 4096).unwrap();
            assert!(
                min >= guarantee - 1e-6,
                "k={k} {body:?}: sampled aperture {min} below {guarantee}"
            );
        }
    }

    // Disk refinement along nested schedules of multiples of k; the
    // k = 4 schedule is [8, 16, 32, 64, 128].
    for k in 3..=8usize {
        let schedule: Vec<usize> = [2, 4, 8, 16, 32].iter().map(|c| c * k).collect();
        let trace =
            estimate_alpha_ck(&ConvexBody::Disk { radius: 1.0 }, k, &schedule, 4096).unwrap();
        let target = (1.0 - 1.0 / (k as f64)) * PI;
        let last = *trace.inscribed_alphas.last().unwrap();
        assert!(
            (last - target).abs() <= 1e-3,
            "k={k}: final estimate {last} vs closed form {target}"
        );
        let certified = *trace.certified_alphas.last().unwrap();
        assert!((certified - target).abs() <= 1e-3);
        let floor = (1.0 - 2.0 / ((k + 1) as f64)) * PI;
        for a in &trace.inscribed_alphas {
            assert!(
                *a >= floor - 1e-6,
                "k={k}: estimate {a} below theorem floor"
            );
        }
    }

    report(
        "10",
        "walk guarantee held on 22 bodies for k=3..8; disk refinement converged to (1-1/k) PI",
        started,
    );
}
