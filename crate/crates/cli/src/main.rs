//! `qlucas` — analyses of quaternionic polynomials from the command line:
//! left roots, Gauss-Lucas classification, snail sections and coefficient
//! bounds.

mod svg;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlucas_core::bounds::verify_root_bound_sampled;
use qlucas_core::format::{parse_qpoly, parse_quaternion};
use qlucas_core::glverify::{counterexample_family, perturbation_probe, theorem_check};
use qlucas_core::hull2d::{circular_hull, circular_hull_contains};
use qlucas_core::qroots::{critical_points, left_roots};
use qlucas_core::quat::ImUnit;
use qlucas_core::snail::{snail_contains, snail_cross_section_with, SnailConfig};
use qlucas_core::{Error as CoreError, Hull2D, QPoly, Quaternion, RootSet};

#[derive(Parser)]
#[command(
    name = "qlucas",
    version,
    about = "Quaternionic polynomial analysis: roots, hull classification, snail sections, bounds",
    after_help = "Set QLUCAS_THREADS to cap the worker threads used by sampling loops \
                  (default 1). Exit codes: 0 success, 1 verification failure, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Numerical tolerance for root validation and membership collars.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Plane-lattice sample count for sampled queries.
    #[arg(long, global = true, default_value_t = 2048)]
    samples: usize,

    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format; each command has a natural default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the primary output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Svg,
}

#[derive(Args)]
struct PolySource {
    /// Polynomial in term syntax (`X^2 - X (0,1,1,0) + (0,0,0,1)`) or JSON.
    poly: Option<String>,

    /// Read the polynomial from a UTF-8 file instead.
    #[arg(long, conflicts_with = "poly")]
    file: Option<PathBuf>,

    /// Use the built-in obstruction family member of this degree (≥ 3).
    #[arg(long, conflicts_with_all = ["poly", "file"])]
    family: Option<usize>,
}

impl PolySource {
    fn load(&self) -> Result<QPoly, CliError> {
        if let Some(text) = &self.poly {
            return parse_qpoly(text).map_err(CliError::usage_from_core);
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            return parse_qpoly(text.trim()).map_err(CliError::usage_from_core);
        }
        if let Some(d) = self.family {
            let fam = counterexample_family(d).map_err(CliError::usage_from_core)?;
            return Ok(fam.built);
        }
        Err(CliError::Usage(
            "no polynomial given: pass one inline, via --file, or via --family".into(),
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Left roots: isolated points and whole root spheres.
    Roots {
        #[command(flatten)]
        source: PolySource,
    },
    /// Left evaluation of the polynomial at a quaternion.
    Eval {
        #[command(flatten)]
        source: PolySource,
        /// Evaluation point, e.g. "(0,1,0,0)" or "j" or "2.5".
        #[arg(long)]
        at: String,
    },
    /// The normal polynomial N(P) = P·P^c (real coefficients).
    Normal {
        #[command(flatten)]
        source: PolySource,
    },
    /// Gauss-Lucas classification plus the snail containment check.
    GlCheck {
        #[command(flatten)]
        source: PolySource,
        /// Also run the perturbation probe with this radius.
        #[arg(long)]
        probe_epsilon: Option<f64>,
        /// Trials for the perturbation probe.
        #[arg(long, default_value_t = 50)]
        probe_trials: usize,
    },
    /// Snail membership of a point, with the accepting plane as witness.
    SnailCheck {
        #[command(flatten)]
        source: PolySource,
        /// Query point, e.g. "(0,0.5,0,0)".
        #[arg(long)]
        at: String,
    },
    /// Radial profile of a snail cross-section (CSV) or its picture (SVG).
    SnailSection {
        #[command(flatten)]
        source: PolySource,
        /// Section plane: "i", "j", "k" or an imaginary quaternion.
        #[arg(long, default_value = "i")]
        plane: String,
        /// Angular resolution over [0, π].
        #[arg(long, default_value_t = 180)]
        steps: usize,
    },
    /// Root-norm bounds: C(P), the companion radius ρ, and the slice bound.
    Bounds {
        #[command(flatten)]
        source: PolySource,
        /// Analyze the derivative of the family member of this degree.
        #[arg(long, conflicts_with_all = ["poly", "file", "family"])]
        family_derivative: Option<usize>,
    },
    /// Verify the closed-form expansions of the obstruction family.
    Counterexample {
        /// Family degree (≥ 3).
        #[arg(long)]
        degree: usize,
    },
    /// Reproduce the cubic whose snail section is a limaçon arc.
    DemoLimacon {
        /// Angular resolution of the verified section.
        #[arg(long, default_value_t = 180)]
        steps: usize,
    },
}

enum CliError {
    /// Bad invocation or unparsable input: exit 2.
    Usage(String),
    /// Failed verification or computational error: exit 1.
    Failure(String),
}

impl CliError {
    fn usage_from_core(e: CoreError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, payload: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display()))),
        None => write_stdout(payload),
    }
}

/// Writes to stdout; a closed downstream pipe ends the program quietly
/// instead of panicking.
fn write_stdout(payload: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let result = stdout.write_all(payload.as_bytes()).and_then(|()| {
        if payload.ends_with('\n') {
            Ok(())
        } else {
            stdout.write_all(b"\n")
        }
    });
    match result {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::Failure(format!("cannot write to stdout: {e}"))),
    }
}

fn pick_format(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let format = cli.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(CliError::Usage(
            "this command does not support the requested output format".into(),
        ))
    }
}

fn pretty_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn parse_plane(text: &str) -> Result<ImUnit, CliError> {
    let q = parse_quaternion(text.trim()).map_err(CliError::usage_from_core)?;
    if q.re().abs() > 1e-9 * (1.0 + q.norm()) {
        return Err(CliError::Usage(format!(
            "plane direction must be imaginary, got {q}"
        )));
    }
    q.axis()
        .map_err(|_| CliError::Usage("plane direction must be a nonzero imaginary vector".into()))
}

fn snail_cfg(cli: &Cli) -> SnailConfig {
    SnailConfig {
        n_samples: cli.samples,
        tol: cli.tol,
        refine_depth: 2,
    }
}

fn roots_text(roots: &RootSet) -> String {
    let mut out = String::new();
    for q in &roots.isolated {
        let _ = writeln!(out, "isolated {q}");
    }
    for s in &roots.spheres {
        let _ = writeln!(out, "sphere   re={} rad={}", s.re, s.rad);
    }
    if roots.isolated.is_empty() && roots.spheres.is_empty() {
        out.push_str("no roots\n");
    }
    out
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Roots { source } => {
            let p = source.load()?;
            let roots = left_roots(&p, cli.tol)?;
            let format = pick_format(cli, Format::Json, &[Format::Json, Format::Text])?;
            let payload = match format {
                Format::Json => pretty_json(&roots),
                _ => roots_text(&roots),
            };
            emit(cli, &payload)
        }
        Command::Eval { source, at } => {
            let p = source.load()?;
            let x = parse_quaternion(at).map_err(CliError::usage_from_core)?;
            let value = p.eval_left(x);
            let format = pick_format(cli, Format::Text, &[Format::Json, Format::Text])?;
            let payload = match format {
                Format::Json => pretty_json(&value),
                _ => format!("{value}\n"),
            };
            emit(cli, &payload)
        }
        Command::Normal { source } => {
            let p = source.load()?;
            let np = p.normal_poly()?;
            let format = pick_format(cli, Format::Text, &[Format::Json, Format::Text])?;
            let payload = match format {
                Format::Json => pretty_json(&np),
                _ => format!("{np}\n"),
            };
            emit(cli, &payload)
        }
        Command::GlCheck {
            source,
            probe_epsilon,
            probe_trials,
        } => {
            let p = source.load()?;
            let report = theorem_check(&p, &snail_cfg(cli))?;
            let format = pick_format(cli, Format::Json, &[Format::Json, Format::Text])?;
            let probe = match probe_epsilon {
                Some(eps) => Some(perturbation_probe(&p, *eps, *probe_trials, cli.seed)?),
                None => None,
            };
            let payload = match format {
                Format::Json => match probe {
                    Some(fraction) => {
                        let mut value =
                            serde_json::to_value(&report).expect("report serialization");
                        value["stable_fraction"] =
                            serde_json::Value::from(fraction);
                        serde_json::to_string_pretty(&value).expect("json")
                    }
                    None => pretty_json(&report),
                },
                _ => {
                    let mut text = format!(
                        "gauss-lucas: {}\nviolating points: {}\ntheorem holds: {}\n",
                        report.is_gauss_lucas,
                        report.violating_points.len(),
                        report.theorem_holds
                    );
                    if let Some(fraction) = probe {
                        let _ = writeln!(text, "stable fraction: {fraction}");
                    }
                    text
                }
            };
            emit(cli, &payload)
        }
        Command::SnailCheck { source, at } => {
            let p = source.load()?;
            let x = parse_quaternion(at).map_err(CliError::usage_from_core)?;
            let membership = snail_contains(&p, &x, &snail_cfg(cli))?;
            let format = pick_format(cli, Format::Json, &[Format::Json, Format::Text])?;
            let payload = match format {
                Format::Json => pretty_json(&membership),
                _ => format!(
                    "member: {}\nwitness: {:?}\n",
                    membership.member, membership.witness
                ),
            };
            emit(cli, &payload)
        }
        Command::SnailSection {
            source,
            plane,
            steps,
        } => {
            let p = source.load()?;
            if *steps < 2 {
                return Err(CliError::Usage("--steps must be at least 2".into()));
            }
            let plane = parse_plane(plane)?;
            let ortho = plane.any_orthogonal();
            let format = pick_format(cli, Format::Csv, &[Format::Csv, Format::Svg])?;
            match format {
                Format::Svg => {
                    let picture = section_svg(&p, plane, ortho, *steps, cli.tol)?;
                    emit(cli, &picture)
                }
                _ => {
                    let rows = snail_cross_section_with(&p, plane, ortho, *steps)?;
                    emit(cli, &section_csv(&rows))
                }
            }
        }
        Command::Bounds {
            source,
            family_derivative,
        } => {
            let p = match family_derivative {
                Some(d) => counterexample_family(*d)
                    .map_err(CliError::usage_from_core)?
                    .built
                    .derivative(),
                None => source.load()?,
            };
            let report = verify_root_bound_sampled(&p, cli.tol, cli.samples)?;
            let format = pick_format(cli, Format::Json, &[Format::Json, Format::Text])?;
            let payload = match format {
                Format::Json => pretty_json(&report),
                _ => {
                    let rho = report
                        .rho
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "n/a (monomial)".into());
                    format!(
                        "C(P): {}\nrho: {rho}\nmax root norm: {}\nslice sup C(P^I): {} ({} samples)\n",
                        report.c_of_p,
                        report.max_root_norm,
                        report.slice_sup_estimate,
                        report.slice_sup_samples
                    )
                }
            };
            emit(cli, &payload)
        }
        Command::Counterexample { degree } => run_counterexample(cli, *degree),
        Command::DemoLimacon { steps } => run_demo_limacon(cli, *steps),
    }
}

fn section_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("theta,rho_max\n");
    for &(theta, rho) in rows {
        let _ = writeln!(out, "{theta:.8e},{rho:.8e}");
    }
    out
}

/// Radius of the hull's cross-section with a plane of imaginary directions
/// (the set of radii is an interval starting at 0 whenever 0 is inside).
fn hull_section_radius(hull: &Hull2D) -> Option<f64> {
    if !hull.contains((0.0, 0.0), 1e-9) {
        return None;
    }
    let cap = hull
        .vertices()
        .iter()
        .map(|&(x, y)| (x * x + y * y).sqrt())
        .fold(0.0f64, f64::max);
    let mut lo = 0.0;
    let mut hi = cap + 1.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if hull.contains((0.0, mid), 1e-9) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn section_svg(
    p: &QPoly,
    plane: ImUnit,
    ortho: ImUnit,
    steps: usize,
    tol: f64,
) -> Result<String, CliError> {
    let upper = snail_cross_section_with(p, plane, ortho, steps)?;
    let mirrored = snail_cross_section_with(p, plane, -ortho, steps)?;

    let np = p.normal_poly()?;
    let hull = circular_hull(&np)?;
    let hull_radius = hull_section_radius(&hull);

    let crits = critical_points(p, tol)?;
    let mut critical_circles = Vec::new();
    for s in &crits.spheres {
        if s.re.abs() <= 1e-6 * (1.0 + s.norm()) {
            critical_circles.push(s.rad);
        }
    }
    let mut critical_points_2d = Vec::new();
    for q in &crits.isolated {
        let (pi, pj) = (plane.components(), ortho.components());
        let a = q.x * pi.0 + q.y * pi.1 + q.z * pi.2;
        let b = q.x * pj.0 + q.y * pj.1 + q.z * pj.2;
        let in_plane =
            (q.im_norm().powi(2) - (a * a + b * b)).abs() <= 1e-9 * (1.0 + q.norm_sq());
        if q.re().abs() <= 1e-9 * (1.0 + q.norm()) && in_plane {
            critical_points_2d.push((a, b));
        }
    }

    Ok(svg::render(&svg::SectionPlot {
        upper,
        lower: mirrored,
        hull_radius,
        critical_circles,
        critical_points: critical_points_2d,
    }))
}

fn run_counterexample(cli: &Cli, degree: usize) -> Result<(), CliError> {
    pick_format(cli, Format::Text, &[Format::Text])?;
    let fam = counterexample_family(degree).map_err(CliError::usage_from_core)?;
    let mut out = String::new();
    let mut all_ok = true;
    let record = |name: &str, ok: bool, out: &mut String, all_ok: &mut bool| {
        let _ = writeln!(out, "{name}: {}", if ok { "PASS" } else { "FAIL" });
        *all_ok &= ok;
    };
    record("member expansion", fam.built == fam.expected, &mut out, &mut all_ok);
    record(
        "derivative expansion",
        fam.built.derivative() == fam.expected_derivative,
        &mut out,
        &mut all_ok,
    );
    let np1 = fam.built.derivative().normal_poly()?;
    record(
        "derivative normal expansion",
        np1 == fam.expected_normal_derivative,
        &mut out,
        &mut all_ok,
    );
    emit(cli, &out)?;
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "family expansions diverged at degree {degree}"
        )))
    }
}

fn run_demo_limacon(cli: &Cli, steps: usize) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    let format = pick_format(cli, Format::Text, &[Format::Text, Format::Csv, Format::Svg])?;
    // X³ + 3X + 2i
    let p = parse_qpoly("X^3 + X 3 + (0,2,0,0)").expect("builtin polynomial");
    let plane = ImUnit::I;
    let ortho = plane.any_orthogonal();

    let mut out = String::new();
    let mut all_ok = true;
    let record = |name: &str, ok: bool, out: &mut String, all_ok: &mut bool| {
        let _ = writeln!(out, "{name}: {}", if ok { "PASS" } else { "FAIL" });
        *all_ok &= ok;
    };

    let crits = critical_points(&p, cli.tol)?;
    record(
        "critical set is the unit sphere",
        crits.isolated.is_empty()
            && crits.spheres.len() == 1
            && crits.spheres[0].re.abs() <= 1e-9
            && (crits.spheres[0].rad - 1.0).abs() <= 1e-9,
        &mut out,
        &mut all_ok,
    );

    let rows = snail_cross_section_with(&p, plane, ortho, steps)?;
    let max_dev = rows
        .iter()
        .map(|&(theta, rho)| (rho - 2.0 * (theta / 3.0).cos()).abs())
        .fold(0.0f64, f64::max);
    record(
        "section matches the limaçon arc (1e-3)",
        max_dev <= 1e-3,
        &mut out,
        &mut all_ok,
    );
    record(
        "boundary contact at 2i",
        (rows.first().expect("nonempty").1 - 2.0).abs() <= 1e-3,
        &mut out,
        &mut all_ok,
    );
    record(
        "opposite ray stops at radius 1",
        (rows.last().expect("nonempty").1 - 1.0).abs() <= 1e-3,
        &mut out,
        &mut all_ok,
    );

    let np = p.normal_poly()?;
    let inside_hull = rows.iter().all(|&(theta, rho)| {
        let pt = plane.as_quaternion() * (rho * theta.cos())
            + ortho.as_quaternion() * (rho * theta.sin());
        circular_hull_contains(&np, &pt, 1e-6).unwrap_or(false)
    });
    record(
        "section stays inside the circular root hull",
        inside_hull,
        &mut out,
        &mut all_ok,
    );

    let probe = Quaternion::new(0.0, -1.5, 0.0, 0.0);
    let in_hull = circular_hull_contains(&np, &probe, 1e-9)?;
    let in_snail = snail_contains(&p, &probe, &snail_cfg(cli))?.member;
    record(
        "-1.5i separates hull from snail",
        in_hull && !in_snail,
        &mut out,
        &mut all_ok,
    );

    match format {
        Format::Csv => {
            emit(cli, &section_csv(&rows))?;
            write_stdout(&out)?;
        }
        Format::Svg => {
            let picture = section_svg(&p, plane, ortho, steps, cli.tol)?;
            emit(cli, &picture)?;
            write_stdout(&out)?;
        }
        _ => emit(cli, &out)?,
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failure("limaçon reproduction failed".into()))
    }
}
