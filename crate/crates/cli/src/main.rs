//! `apexgon` — compute best k-vertex subpolygon approximations of convex
//! polygons, audit their chord structure, run verification sweeps, and
//! refine inscribed polygons on general convex bodies.
//!
//! Exit codes: 0 success, 1 a verification sweep found a counterexample,
//! 2 usage or input error.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use apexgon_core::body::{estimate_alpha_ck, min_sampled_aperture, tangent_walk_kgon};
use apexgon_core::chords::{audit_structure, build_chord_graph, AuditMode};
use apexgon_core::generate::Generator;
use apexgon_core::geometry::{ConvexPolygon, Point};
use apexgon_core::measure::{CapRegion, ErrorMeasure};
use apexgon_core::optimize::{brute_force_opt, optimal_subpolygon, ApproxResult};
use apexgon_core::worst::{perimeter_bound_check, scan_instance_polygon, ScanConfig};

mod polyfile;
mod report;
mod shape;
mod svg;

#[derive(Parser)]
#[command(
    name = "apexgon",
    version,
    about = "Minimax subpolygon approximation of convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report JSON to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Write an SVG rendering of the result.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,

    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance for report-level comparisons; never affects combinatorial
    /// decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a polygon JSON file (regular:M[:R], random:N[:SEED],
    /// file:PATH).
    Generate {
        #[arg(long)]
        shape: String,
    },
    /// Compute the optimal k-vertex subpolygon of a polygon.
    Optimize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Run a verification sweep and report counterexamples (exit 1 if any).
    Verify {
        #[arg(long, value_enum)]
        conjecture: ConjectureArg,
        #[arg(long)]
        k: usize,
        /// Inclusive vertex-count range, e.g. 5..9.
        #[arg(long, default_value = "5..9")]
        n: String,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, value_enum, default_value_t = GeneratorArg::Random)]
        generator: GeneratorArg,
        #[arg(long, value_enum, default_value_t = MeasureArg::Hausdorff)]
        measure: MeasureArg,
    },
    /// Dump the chord graph at an error level, with an optional structure
    /// audit.
    Chords {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        sigma: f64,
        /// Audit the base structure for this subpolygon budget.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Inscribed-polygon refinement of a convex body (disk[:R],
    /// ellipse[:A:B], regular:M[:R], random:N[:SEED], file:PATH).
    Body {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        k: usize,
        /// Comma-separated inscribed vertex counts.
        #[arg(long, default_value = "8,16,32,64,128")]
        schedule: String,
        /// Dense boundary resolution for walks and certificates.
        #[arg(long, default_value_t = apexgon_core::body::DEFAULT_DENSE_N)]
        dense: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Hausdorff,
    Aperture,
}

impl MeasureArg {
    fn to_core(self) -> ErrorMeasure {
        match self {
            MeasureArg::Hausdorff => ErrorMeasure::Hausdorff,
            MeasureArg::Aperture => ErrorMeasure::ApertureComplement,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MeasureArg::Hausdorff => "hausdorff",
            MeasureArg::Aperture => "aperture",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Search,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorArg {
    Random,
    Perturbed,
    Regular,
}

impl GeneratorArg {
    fn to_core(self) -> Generator {
        match self {
            GeneratorArg::Random => Generator::RandomConvex,
            GeneratorArg::Perturbed => Generator::RegularPerturbed,
            GeneratorArg::Regular => Generator::RegularExact,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConjectureArg {
    /// Optimal aperture of any polygon is at least (1 - 2/(k+1)) PI.
    Aperture,
    /// Unit-perimeter Hausdorff optimum is at most sin(PI/(k+1))/(k+1).
    Hausdorff,
    /// Worst-approximable polygons have exactly k+1 vertices.
    WorstSize,
    /// (k+1)-gons rescaled to error one have perimeter >= n/sin(PI/n).
    Perimeter,
}

impl ConjectureArg {
    fn name(self) -> &'static str {
        match self {
            ConjectureArg::Aperture => "aperture",
            ConjectureArg::Hausdorff => "hausdorff",
            ConjectureArg::WorstSize => "worst-size",
            ConjectureArg::Perimeter => "perimeter",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let started = Instant::now();
    match cli.command {
        Command::Generate { ref shape } => cmd_generate(&cli, shape),
        Command::Optimize {
            ref input,
            measure,
            k,
            method,
        } => cmd_optimize(&cli, started, input, measure, k, method),
        Command::Verify {
            conjecture,
            k,
            ref n,
            instances,
            generator,
            measure,
        } => cmd_verify(
            &cli, started, conjecture, k, n, instances, generator, measure,
        ),
        Command::Chords {
            ref input,
            measure,
            sigma,
            k,
        } => cmd_chords(&cli, started, input, measure, sigma, k),
        Command::Body {
            ref shape,
            k,
            ref schedule,
            dense,
        } => cmd_body(&cli, started, shape, k, schedule, dense),
    }
}

fn write_svg(path: &Path, scene: &svg::Scene) -> Result<()> {
    std::fs::write(path, scene.to_svg()).with_context(|| format!("writing {}", path.display()))
}

fn cmd_generate(cli: &Cli, shape: &str) -> Result<ExitCode> {
    let poly = shape::parse_polygon_shape(shape, cli.seed)?;
    let text = polyfile::polygon_to_json(&poly);
    match &cli.out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    eprintln!("n={} perimeter={}", poly.vertex_count(), poly.perimeter());
    if let Some(path) = &cli.svg {
        let mut scene = svg::Scene::new();
        scene.polygon(poly.vertices(), "black", "none");
        write_svg(path, &scene)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OptimizeResults {
    measure: &'static str,
    k: usize,
    method: &'static str,
    chosen: Vec<usize>,
    error: f64,
    witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aperture_radians: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aperture_degrees: Option<f64>,
}

fn cmd_optimize(
    cli: &Cli,
    started: Instant,
    input: &Path,
    measure: MeasureArg,
    k: usize,
    method: MethodArg,
) -> Result<ExitCode> {
    if k < 3 {
        bail!("--k must be at least 3");
    }
    let poly = polyfile::load_polygon(input)?;
    let core_measure = measure.to_core();
    let result: ApproxResult = match method {
        MethodArg::Brute => brute_force_opt(&poly, core_measure, k),
        MethodArg::Auto | MethodArg::Search => optimal_subpolygon(&poly, core_measure, k),
    }
    .map_err(|e| anyhow::anyhow!("{e}"))?;

    let aperture = (measure == MeasureArg::Aperture).then_some(PI - result.error);
    let results = OptimizeResults {
        measure: measure.name(),
        k,
        method: match result.method {
            apexgon_core::optimize::Method::BruteForce => "brute",
            apexgon_core::optimize::Method::CandidateSearch => "search",
        },
        chosen: result.chosen.clone(),
        error: result.error,
        witness: result.witness,
        aperture_radians: aperture,
        aperture_degrees: aperture.map(|a| a * 180.0 / PI),
    };

    if let Some(path) = &cli.svg {
        let mut scene = svg::Scene::new();
        scene.polygon(poly.vertices(), "gray", "none");
        let chosen_pts: Vec<Point> = result.chosen.iter().map(|&i| poly.vertex(i)).collect();
        scene.polygon(&chosen_pts, "black", "#cfe8ff");
        if let Some(w) = result.witness {
            scene.dot(poly.vertex(w), "red");
            scene.label(poly.vertex(w), format!("w={w}"));
        }
        write_svg(path, &scene)?;
    }

    let echo = json!({
        "input": input.display().to_string(),
        "measure": measure.name(),
        "k": k,
        "method": match method {
            MethodArg::Auto => "auto",
            MethodArg::Brute => "brute",
            MethodArg::Search => "search",
        },
    });
    report::emit(
        &report::make("optimize", echo, cli.seed, started, results),
        cli.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ChordsResults {
    measure: &'static str,
    sigma: f64,
    successors: Vec<usize>,
    chord_lengths: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<apexgon_core::chords::StructureReport>,
}

fn cmd_chords(
    cli: &Cli,
    started: Instant,
    input: &Path,
    measure: MeasureArg,
    sigma: f64,
    k: Option<usize>,
) -> Result<ExitCode> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        bail!("--sigma must be a finite non-negative number");
    }
    let poly = polyfile::load_polygon(input)?;
    let core_measure = measure.to_core();
    let graph = build_chord_graph(&poly, core_measure, sigma);
    let audit = match k {
        Some(k) if k < 3 => bail!("--k must be at least 3"),
        Some(k) => {
            eprintln!(
                "note: exploratory audit; the worst-approximable hypothesis is not established"
            );
            Some(audit_structure(
                &poly,
                core_measure,
                k,
                sigma,
                AuditMode::Exploratory,
            ))
        }
        None => None,
    };

    if let Some(path) = &cli.svg {
        let mut scene = svg::Scene::new();
        scene.polygon(poly.vertices(), "black", "none");
        for (i, &to) in graph.successors().iter().enumerate() {
            scene.segment(poly.vertex(i), poly.vertex(to), "steelblue", false);
        }
        if let Some(a) = &audit {
            for base in &a.bases {
                scene.segment(
                    poly.vertex(base.start),
                    poly.vertex(base.end),
                    "darkorange",
                    true,
                );
                scene.dot(poly.vertex(base.witness), "red");
                // For the aperture measure the feasibility region of a base
                // is a disk cap; draw its supporting circle.
                if core_measure == ErrorMeasure::ApertureComplement && sigma > 0.0 && sigma < PI {
                    if let Ok(cap) =
                        CapRegion::new(poly.vertex(base.start), poly.vertex(base.end), sigma)
                    {
                        scene.circle(cap.center(), cap.radius(), "darkorange", true);
                    }
                }
            }
        }
        write_svg(path, &scene)?;
    }

    let results = ChordsResults {
        measure: measure.name(),
        sigma,
        chord_lengths: (0..graph.vertex_count())
            .map(|i| graph.chord_length(i))
            .collect(),
        successors: graph.successors().to_vec(),
        audit,
    };
    let echo = json!({
        "input": input.display().to_string(),
        "measure": measure.name(),
        "sigma": sigma,
        "k": k,
    });
    report::emit(
        &report::make("chords", echo, cli.seed, started, results),
        cli.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyCell {
    n: usize,
    instances: usize,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct VerifyResults {
    conjecture: &'static str,
    k: usize,
    measure: &'static str,
    tolerance: f64,
    cells: Vec<VerifyCell>,
    counterexamples: Vec<serde_json::Value>,
}

/// Order-preserving contiguous-chunk parallel map.
fn parallel_map<I, O, F>(jobs: usize, items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut out = Vec::with_capacity(items.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| scope.spawn(|| c.iter().map(&f).collect::<Vec<O>>()))
            .collect();
        for h in handles {
            out.extend(h.join().expect("verification worker panicked"));
        }
    });
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    started: Instant,
    conjecture: ConjectureArg,
    k: usize,
    n_spec: &str,
    instances: usize,
    generator: GeneratorArg,
    measure: MeasureArg,
) -> Result<ExitCode> {
    if k < 3 {
        bail!("--k must be at least 3");
    }
    let (n_lo, n_hi) = match conjecture {
        // The perimeter bound is a statement about (k+1)-gons.
        ConjectureArg::Perimeter => (k + 1, k + 1),
        _ => shape::parse_range(n_spec)?,
    };
    if n_lo < 3 {
        bail!("--n must start at 3 or above");
    }

    let config = ScanConfig {
        k,
        n_range: (n_lo, n_hi),
        instances,
        generator: generator.to_core(),
        seed: cli.seed,
        measure: measure.to_core(),
    };
    let tolerance = cli.tolerance;

    let items: Vec<(usize, usize)> = (n_lo..=n_hi)
        .flat_map(|n| (0..instances).map(move |i| (n, i)))
        .collect();

    // Each item yields (n, pass, optional counterexample payload).
    let outcomes: Vec<(usize, bool, Option<serde_json::Value>)> =
        parallel_map(cli.jobs, &items, |&(n, instance)| {
            let poly = scan_instance_polygon(&config, n, instance);
            let (pass, detail) = check_instance(conjecture, &config, &poly, tolerance);
            let payload = (!pass).then(|| {
                json!({
                    "n": n,
                    "instance": instance,
                    "vertices": poly.vertices().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
                    "detail": detail,
                })
            });
            (n, pass, payload)
        });

    let mut cells: Vec<VerifyCell> = (n_lo..=n_hi)
        .map(|n| VerifyCell {
            n,
            instances,
            passed: 0,
            failed: 0,
        })
        .collect();
    let mut counterexamples = Vec::new();
    for (n, pass, payload) in outcomes {
        let cell = &mut cells[n - n_lo];
        if pass {
            cell.passed += 1;
        } else {
            cell.failed += 1;
            counterexamples.extend(payload);
        }
    }

    let found = !counterexamples.is_empty();
    let results = VerifyResults {
        conjecture: conjecture.name(),
        k,
        measure: measure.name(),
        tolerance,
        cells,
        counterexamples,
    };
    let echo = json!({
        "conjecture": conjecture.name(),
        "k": k,
        "n": format!("{n_lo}..{n_hi}"),
        "instances": instances,
        "generator": match generator {
            GeneratorArg::Random => "random",
            GeneratorArg::Perturbed => "perturbed",
            GeneratorArg::Regular => "regular",
        },
        "measure": measure.name(),
        "jobs": cli.jobs,
    });
    report::emit(
        &report::make("verify", echo, cli.seed, started, results),
        cli.out.as_deref(),
    )?;
    if let Some(path) = &cli.svg {
        eprintln!(
            "note: verify has no scene to draw; ignoring {}",
            path.display()
        );
    }
    Ok(if found {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// One instance of one conjecture: pass/fail plus a human-readable detail
/// for the counterexample payload.
fn check_instance(
    conjecture: ConjectureArg,
    config: &ScanConfig,
    poly: &ConvexPolygon,
    tolerance: f64,
) -> (bool, String) {
    let k = config.k;
    match conjecture {
        ConjectureArg::Aperture => {
            let result = optimal_subpolygon(poly, ErrorMeasure::ApertureComplement, k)
                .expect("scan sizes are within limits");
            let aperture = PI - result.error;
            let floor = (1.0 - 2.0 / ((k + 1) as f64)) * PI;
            (
                aperture >= floor - tolerance,
                format!("aperture {aperture} vs floor {floor}"),
            )
        }
        ConjectureArg::Hausdorff => {
            let unit = poly.scaled(1.0 / poly.perimeter());
            let result = optimal_subpolygon(&unit, ErrorMeasure::Hausdorff, k)
                .expect("scan sizes are within limits");
            let bound = (PI / ((k + 1) as f64)).sin() / ((k + 1) as f64);
            (
                result.error <= bound + tolerance,
                format!("error {} vs bound {bound}", result.error),
            )
        }
        ConjectureArg::WorstSize => {
            match apexgon_core::worst::is_worst_approximable(poly, config.measure, k) {
                Ok(verdict) => {
                    let n = poly.vertex_count();
                    let pass = !(verdict.is_worst && n > k + 1);
                    (
                        pass,
                        format!(
                            "is_worst={} phi_k={} max_proper={}",
                            verdict.is_worst, verdict.phi_k, verdict.max_proper_phi_k
                        ),
                    )
                }
                Err(e) => (false, format!("verdict error: {e}")),
            }
        }
        ConjectureArg::Perimeter => match perimeter_bound_check(poly, k, tolerance) {
            Ok(check) => (
                check.holds,
                format!("perimeter {} vs bound {}", check.perimeter, check.bound),
            ),
            Err(e) => (false, format!("check error: {e}")),
        },
    }
}

#[derive(Serialize)]
struct WalkResults {
    points: Vec<Point>,
    min_sampled_aperture: f64,
    guarantee: f64,
}

#[derive(Serialize)]
struct BodyResults {
    k: usize,
    dense: usize,
    trace: apexgon_core::body::RefinementTrace,
    tangent_walk: WalkResults,
}

fn cmd_body(
    cli: &Cli,
    started: Instant,
    shape_spec: &str,
    k: usize,
    schedule_spec: &str,
    dense: usize,
) -> Result<ExitCode> {
    if k < 3 {
        bail!("--k must be at least 3");
    }
    let body = shape::parse_body_shape(shape_spec, cli.seed)?;
    let schedule = shape::parse_schedule(schedule_spec)?;
    let trace =
        estimate_alpha_ck(&body, k, &schedule, dense).map_err(|e| anyhow::anyhow!("{e}"))?;
    let walk = tangent_walk_kgon(&body, k, dense).map_err(|e| anyhow::anyhow!("{e}"))?;
    let walk_min = min_sampled_aperture(&body, &walk, dense).map_err(|e| anyhow::anyhow!("{e}"))?;

    if let Some(path) = &cli.svg {
        let mut scene = svg::Scene::new();
        let outline = body
            .sample_boundary(256)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        scene.polygon(outline.vertices(), "gray", "none");
        if trace.final_placement.len() >= 3 {
            scene.polygon(&trace.final_placement, "black", "#cfe8ff");
        }
        for p in &trace.final_placement {
            scene.dot(*p, "black");
        }
        for p in &walk {
            scene.dot(*p, "seagreen");
        }
        write_svg(path, &scene)?;
    }

    let results = BodyResults {
        k,
        dense,
        trace,
        tangent_walk: WalkResults {
            points: walk,
            min_sampled_aperture: walk_min,
            guarantee: (1.0 - 2.0 / (k as f64)) * PI,
        },
    };
    let echo = json!({
        "shape": shape_spec,
        "k": k,
        "schedule": schedule,
        "dense": dense,
    });
    report::emit(
        &report::make("body", echo, cli.seed, started, results),
        cli.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}
