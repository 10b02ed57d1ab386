//! Batch front end for the `maghom` library.
//!
//! Each subcommand reads one or two input files (autodetected by their
//! `"type"` field, or CSV point clouds), runs a computation and renders either
//! a text report or JSON. [`run`] returns the rendered output and the exit
//! code instead of printing, so the binary is a thin wrapper.

pub mod report;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maghom::euclid::{closed_caratheodory, core_finite, equivalence_decision_finite};
use maghom::exact::{format_rational, parse_rational};
use maghom::homology::{euler_magnitude_check, ky_compare_table, magnitude_homology};
use maghom::io::{read_input, to_json, Input};
use maghom::magchain::{
    check_phi_face_relations, extend_at_frame_gap, homotopy_sides, thin_chains_by_length, Extension, MetricMap,
};
use maghom::shape2d::{shape_equivalent, BoundaryCurve, CoreDescription, Hole, Shape2D};
use maghom::{Error, ExactLength, FiniteMetricSpace};

pub use report::*;

/// Exit code for success or an equivalent verdict.
pub const EXIT_OK: i32 = 0;
/// Exit code for a negative verdict or a failed check.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "maghom",
    version,
    about = "Exact magnitude homology and core-based equivalence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alignedness, inner boundary and adjacency statistics.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Magnitude homology table.
    Homology {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        /// Largest length, e.g. `3` or `2*sqrt(2)`; defaults to nmax times the diameter.
        #[arg(long)]
        lmax: Option<String>,
        /// Largest chain basis computed per block.
        #[arg(long)]
        cap: Option<usize>,
        /// Compare against thin-chain counts.
        #[arg(long)]
        ky: bool,
        #[arg(long)]
        json: bool,
    },
    /// Thin chains by degree and length.
    Thin {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        #[arg(long)]
        lmax: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide magnitude homology equivalence of two point sets or two shapes.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The core of a point set or shape.
    Core {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Closed Carathéodory certificate for a point of the hull.
    Carath {
        input: PathBuf,
        /// Comma separated coordinates, e.g. `1/2,1/2`.
        #[arg(long)]
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Graded Euler characteristic against the magnitude series.
    EulerCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        lmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Structural checks of the chain homotopy on random chains.
    PhiCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, success: bool) -> Self {
        Self {
            code: if success { EXIT_OK } else { EXIT_MISMATCH },
            stdout,
            stderr: String::new(),
        }
    }
}

/// Runs one command.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: &Command) -> maghom::Result<Outcome> {
    match cmd {
        Command::Analyze { input, json } => analyze(&read_input(input)?, *json),
        Command::Homology {
            input,
            nmax,
            lmax,
            cap,
            ky,
            json,
        } => homology(
            &finite(read_input(input)?)?,
            *nmax,
            parse_length(lmax)?,
            *cap,
            *ky,
            *json,
        ),
        Command::Thin {
            input,
            nmax,
            lmax,
            json,
        } => thin(&finite(read_input(input)?)?, *nmax, parse_length(lmax)?, *json),
        Command::Equiv { a, b, json } => equiv(read_input(a)?, read_input(b)?, *json),
        Command::Core { input, json } => core(read_input(input)?, *json),
        Command::Carath { input, point, json } => carath(read_input(input)?, point, *json),
        Command::EulerCheck { input, lmax, json } => {
            let report = euler_magnitude_check(&finite(read_input(input)?)?, *lmax)?;
            let text = if *json {
                to_json(&report)
            } else if report.matches {
                format!("match up to ℓ={}\n", report.l_max)
            } else {
                let l = report
                    .euler
                    .iter()
                    .zip(&report.magnitude)
                    .position(|(a, b)| a.to_string() != *b)
                    .unwrap_or(0);
                format!(
                    "mismatch at ℓ={l}: euler characteristic {} but magnitude coefficient {}\n",
                    report.euler[l], report.magnitude[l]
                )
            };
            Ok(Outcome::ok(text, report.matches))
        }
        Command::PhiCheck {
            input,
            nmax,
            seed,
            samples,
            json,
        } => phi_check(&finite(read_input(input)?)?, *nmax, *seed, *samples, *json),
    }
}

fn finite(input: Input) -> maghom::Result<FiniteMetricSpace> {
    input
        .metric_space()
        .ok_or_else(|| Error::Precondition("this command needs a finite metric space, not a shape".into()))
}

fn parse_length(text: &Option<String>) -> maghom::Result<Option<ExactLength>> {
    text.as_deref().map(str::parse).transpose()
}

fn tuple(labels: &[String]) -> String {
    format!("({})", labels.join(","))
}

fn labelled<const N: usize>(space: &FiniteMetricSpace, w: [usize; N]) -> [String; N] {
    w.map(|i| space.label(i).to_string())
}

fn analyze(input: &Input, json: bool) -> maghom::Result<Outcome> {
    let report = match input {
        Input::Shape(shape) => AnalyzeReport::Shape {
            holes: shape.holes.len(),
            aligned: true,
            inner_boundary: shape.inner_boundary(),
        },
        other => {
            let space = other.metric_space().expect("finite input");
            let al = space.alignedness();
            let mut adjacency: BTreeMap<ExactLength, usize> = BTreeMap::new();
            for (x, y) in space.adjacent_pairs() {
                if x < y {
                    *adjacency.entry(space.dist(x, y).clone()).or_default() += 1;
                }
            }
            AnalyzeReport::Finite {
                points: space.len(),
                aligned: al.aligned,
                geodetic_violation: al.geodetic_violation.map(|w| labelled(&space, w)),
                four_cut: al.four_cut.map(|w| labelled(&space, w)),
                inner_boundary: space
                    .inner_boundary()
                    .iter()
                    .map(|&i| space.label(i).to_string())
                    .collect(),
                adjacency: adjacency
                    .into_iter()
                    .map(|(distance, pairs)| AdjacencyCount { distance, pairs })
                    .collect(),
            }
        }
    };
    if json {
        return Ok(Outcome::ok(to_json(&report), true));
    }
    let mut out = String::new();
    match &report {
        AnalyzeReport::Finite {
            aligned,
            geodetic_violation,
            four_cut,
            inner_boundary,
            adjacency,
            ..
        } => {
            let mut head = if *aligned {
                "aligned".to_string()
            } else if let Some(c) = four_cut {
                format!("not aligned; 4-cut {}", tuple(c))
            } else {
                let [a, b, x, y] = geodetic_violation.clone().expect("witness");
                format!("not aligned; geodetic violation: {x},{y} ∈ [{a},{b}] are not ordered along it")
            };
            if inner_boundary.is_empty() {
                head.push_str("; inner boundary empty");
            }
            writeln!(out, "{head}").unwrap();
            if !inner_boundary.is_empty() {
                writeln!(out, "inner boundary: {}", inner_boundary.join(", ")).unwrap();
            }
            if !adjacency.is_empty() {
                writeln!(out, "adjacent pairs by distance:").unwrap();
                for a in adjacency {
                    writeln!(out, "  {}: {}", a.distance, a.pairs).unwrap();
                }
            }
        }
        AnalyzeReport::Shape { inner_boundary, .. } => {
            if inner_boundary.is_empty() {
                writeln!(out, "aligned; inner boundary empty").unwrap();
            } else {
                writeln!(out, "aligned").unwrap();
                writeln!(out, "inner boundary:").unwrap();
                for c in inner_boundary {
                    writeln!(out, "  {}", describe_curve(c)).unwrap();
                }
            }
        }
    }
    Ok(Outcome::ok(out, true))
}

fn describe_curve(c: &BoundaryCurve) -> String {
    match c {
        BoundaryCurve::Circle { center, r2 } => format!("circle centre {center}, r^2 = {r2}"),
        BoundaryCurve::PolygonBoundary { vertices } => format!(
            "polygon boundary {}",
            vertices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
        BoundaryCurve::Endpoints { points } => format!(
            "slit endpoints {}",
            points.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
    }
}

fn homology(
    space: &FiniteMetricSpace,
    n_max: usize,
    l_max: Option<ExactLength>,
    cap: Option<usize>,
    ky: bool,
    json: bool,
) -> maghom::Result<Outcome> {
    let table = magnitude_homology(space, n_max, l_max.as_ref(), cap)?;
    let mut report = HomologyReport {
        table,
        ky: None,
        ky_skipped: None,
    };
    if ky {
        let al = space.alignedness();
        if al.aligned {
            report.ky = Some(ky_compare_table(space, &report.table)?);
        } else {
            let why = match (al.four_cut, al.geodetic_violation) {
                (Some(w), _) => format!("not aligned; 4-cut {}", tuple(&labelled(space, w))),
                (None, Some(w)) => format!("not aligned; geodetic violation {}", tuple(&labelled(space, w))),
                _ => "not aligned".to_string(),
            };
            report.ky_skipped = Some(why);
        }
    }
    let success = report.ky.as_ref().is_none_or(|k| k.ok());
    if json {
        return Ok(Outcome::ok(to_json(&report), success));
    }
    let mut out = report.table.render_text();
    if let Some(k) = &report.ky {
        writeln!(
            out,
            "thin-chain check: {} blocks, {} mismatches",
            k.blocks_checked,
            k.mismatches.len()
        )
        .unwrap();
        for m in &k.mismatches {
            let h = m
                .homology
                .as_ref()
                .map_or("uncomputed".to_string(), ToString::to_string);
            writeln!(
                out,
                "  n={} ℓ={}: homology {h}, {} thin chains",
                m.n, m.length, m.thin_count
            )
            .unwrap();
        }
    }
    if let Some(why) = &report.ky_skipped {
        writeln!(out, "thin-chain check skipped: {why}").unwrap();
    }
    Ok(Outcome::ok(out, success))
}

fn thin(space: &FiniteMetricSpace, n_max: usize, l_max: Option<ExactLength>, json: bool) -> maghom::Result<Outcome> {
    let mut blocks = Vec::new();
    for n in 0..=n_max {
        for (length, chains) in thin_chains_by_length(space, n) {
            if l_max.as_ref().is_some_and(|m| length > *m) {
                continue;
            }
            let chains = chains
                .iter()
                .map(|c| c.iter().map(|&i| space.label(i).to_string()).collect())
                .collect();
            blocks.push(ThinBlock { n, length, chains });
        }
    }
    let report = ThinReport { n_max, l_max, blocks };
    if json {
        return Ok(Outcome::ok(to_json(&report), true));
    }
    let mut out = String::new();
    for b in &report.blocks {
        let chains: Vec<String> = b.chains.iter().map(|c| tuple(c)).collect();
        writeln!(out, "n={} ℓ={} ({}): {}", b.n, b.length, chains.len(), chains.join(" ")).unwrap();
    }
    Ok(Outcome::ok(out, true))
}

fn lipschitz(x: &FiniteMetricSpace, y: &FiniteMetricSpace, table: &[usize]) -> bool {
    (0..x.len()).all(|i| (0..x.len()).all(|j| y.dist(table[i], table[j]) <= x.dist(i, j)))
}

fn equiv(a: Input, b: Input, json: bool) -> maghom::Result<Outcome> {
    let report = match (a, b) {
        (Input::Points(x), Input::Points(y)) => {
            let verdict = equivalence_decision_finite(&x, &y)?;
            let f = verdict.f.map(|m| m.table);
            let g = verdict.g.map(|m| m.table);
            let (mx, my) = (x.metric_space(), y.metric_space());
            let verified = match (&f, &g) {
                (Some(f), Some(g)) => lipschitz(&mx, &my, f) && lipschitz(&my, &mx, g),
                _ => false,
            };
            EquivReport::Points {
                equivalent: verdict.equivalent,
                f,
                g,
                lipschitz_verified: verified,
            }
        }
        (Input::Shape(x), Input::Shape(y)) => {
            let verdict = shape_equivalent(&x, &y)?;
            EquivReport::Shape {
                equivalent: verdict.equivalent,
                motion: verdict.motion,
            }
        }
        (a, b) => {
            return Err(Error::Precondition(format!(
                "equivalence needs two point sets or two shapes, got {} and {}",
                a.kind(),
                b.kind()
            )))
        }
    };
    let equivalent = report.equivalent();
    if json {
        return Ok(Outcome::ok(to_json(&report), equivalent));
    }
    let mut out = String::new();
    writeln!(out, "{}", if equivalent { "equivalent" } else { "not equivalent" }).unwrap();
    match &report {
        EquivReport::Points {
            f: Some(f),
            g: Some(g),
            lipschitz_verified,
            ..
        } => {
            writeln!(out, "f: {}", render_table(f)).unwrap();
            writeln!(out, "g: {}", render_table(g)).unwrap();
            if *lipschitz_verified {
                writeln!(out, "both maps are distance-decreasing").unwrap();
            }
        }
        EquivReport::Shape { motion: Some(m), .. } => {
            let [[a, b], [c, d]] = &m.matrix;
            writeln!(
                out,
                "{}: [[{a}, {b}], [{c}, {d}]] + {}",
                if m.reflection { "reflection" } else { "rotation" },
                m.translation
            )
            .unwrap();
        }
        _ => {}
    }
    Ok(Outcome::ok(out, equivalent))
}

fn render_table(t: &[usize]) -> String {
    t.iter()
        .enumerate()
        .map(|(i, j)| format!("{i}->{j}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn core(input: Input, json: bool) -> maghom::Result<Outcome> {
    let report = match input {
        Input::Points(p) => CoreReport::Points { core: core_finite(&p)? },
        Input::Shape(s) => CoreReport::Shape { core: s.core() },
        Input::Finite(_) => {
            return Err(Error::Precondition(
                "cores are defined for point sets and shapes".into(),
            ));
        }
    };
    if json {
        return Ok(Outcome::ok(to_json(&report), true));
    }
    let mut out = String::new();
    match &report {
        CoreReport::Points { core } if core.is_empty() => writeln!(out, "core is empty (the set is convex)").unwrap(),
        CoreReport::Points { core } => {
            writeln!(out, "core has {} points:", core.len()).unwrap();
            for p in &core.points {
                let coords: Vec<String> = p.iter().map(format_rational).collect();
                writeln!(out, "  ({})", coords.join(", ")).unwrap();
            }
        }
        CoreReport::Shape { core } => describe_core(&mut out, core),
    }
    Ok(Outcome::ok(out, true))
}

fn describe_core(out: &mut String, core: &CoreDescription) {
    match core.holes.as_slice() {
        [] => writeln!(out, "core is empty (the shape is convex)").unwrap(),
        [Hole::Disc { center, r2 }] => writeln!(out, "core is the circle centre {center}, r^2 = {r2}").unwrap(),
        holes => {
            writeln!(
                out,
                "core: convex hull of the hole boundaries minus {} open holes",
                holes.len()
            )
            .unwrap();
            let shape = Shape2D {
                outer: maghom::shape2d::ConvexBody2D::Plane,
                holes: holes.to_vec(),
            };
            for c in shape.inner_boundary() {
                writeln!(out, "  {}", describe_curve(&c)).unwrap();
            }
        }
    }
    writeln!(out, "features: {}", core.features.len()).unwrap();
}

fn carath(input: Input, point: &str, json: bool) -> maghom::Result<Outcome> {
    let Input::Points(x) = input else {
        return Err(Error::Precondition("carath needs a point set".into()));
    };
    let a = point
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<maghom::Result<Vec<_>>>()?;
    let certificate = closed_caratheodory(&x, &a)?;
    let verified = certificate.verify(&x, &a);
    let report = CarathReport {
        point: a.iter().map(format_rational).collect(),
        certificate,
        verified,
    };
    if json {
        return Ok(Outcome::ok(to_json(&report), verified));
    }
    let mut out = String::new();
    let c = &report.certificate;
    writeln!(out, "certificate with {} vertices: {:?}", c.subset.len(), c.subset).unwrap();
    let bary: Vec<String> = c.barycentric.iter().map(format_rational).collect();
    writeln!(out, "barycentric coordinates: {}", bary.join(", ")).unwrap();
    writeln!(out, "{}", if verified { "verified" } else { "verification failed" }).unwrap();
    Ok(Outcome::ok(out, verified))
}

/// A random distance-decreasing self-map, found by randomised backtracking.
fn random_lipschitz_map(space: &FiniteMetricSpace, rng: &mut ChaCha8Rng) -> Vec<usize> {
    fn extend(space: &FiniteMetricSpace, table: &mut Vec<usize>, rng: &mut ChaCha8Rng) -> bool {
        let i = table.len();
        if i == space.len() {
            return true;
        }
        let mut candidates: Vec<usize> = (0..space.len()).collect();
        candidates.shuffle(rng);
        for c in candidates {
            if (0..i).all(|j| space.dist(c, table[j]) <= space.dist(i, j)) {
                table.push(c);
                if extend(space, table, rng) {
                    return true;
                }
                table.pop();
            }
        }
        false
    }
    let mut table = Vec::with_capacity(space.len());
    assert!(extend(space, &mut table, rng), "constant maps always exist");
    table
}

fn phi_check(
    space: &FiniteMetricSpace,
    n_max: usize,
    seed: u64,
    samples: usize,
    json: bool,
) -> maghom::Result<Outcome> {
    if space.len() < 2 || n_max == 0 {
        return Err(Error::Precondition(
            "phi-check needs at least two points and nmax ≥ 1".into(),
        ));
    }
    let al = space.alignedness();
    if !al.aligned {
        return Err(Error::NotAligned("phi-check needs an aligned space".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PhiReport {
        seed,
        samples,
        n_max,
        face_relations_checked: 0,
        face_relation_failures: 0,
        degenerate_extensions: 0,
        adjacent_frames: 0,
        identity_failures: 0,
    };
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let mut chain = vec![rng.gen_range(0..space.len())];
        while chain.len() <= n {
            let last = *chain.last().unwrap();
            let next = (last + rng.gen_range(1..space.len())) % space.len();
            chain.push(next);
        }
        let g = MetricMap::new(space, space, random_lipschitz_map(space, &mut rng))?;
        let h = MetricMap::new(space, space, random_lipschitz_map(space, &mut rng))?;
        match extend_at_frame_gap(space, &chain)? {
            Extension::Adjacent => report.adjacent_frames += 1,
            Extension::Degenerate { .. } => report.degenerate_extensions += 1,
            Extension::Proper { .. } => {}
        }
        if let Some(ok) = check_phi_face_relations(space, space, |p| *p, |p| g.apply(*p), &chain)? {
            report.face_relations_checked += 1;
            if !ok {
                report.face_relation_failures += 1;
            }
        }
        // on a finite space the inner boundary is everything, so f = g there means f = g
        let (lhs, rhs) = homotopy_sides(space, space, |p| h.apply(*p), |p| h.apply(*p), &chain)?;
        if lhs != rhs {
            report.identity_failures += 1;
        }
    }
    let success = report.ok();
    if json {
        return Ok(Outcome::ok(to_json(&report), success));
    }
    let out = format!(
        "{} chains (seed {}): face relations checked on {}, {} failures; \
         {} degenerate extensions, {} chains equal to their frame; homotopy identity failures: {}\n",
        report.samples,
        report.seed,
        report.face_relations_checked,
        report.face_relation_failures,
        report.degenerate_extensions,
        report.adjacent_frames,
        report.identity_failures
    );
    Ok(Outcome::ok(out, success))
}

/// Convenience for tests: parses arguments and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: e.to_string(),
        },
    }
}
