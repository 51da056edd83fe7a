//! Command-line front end: region files in, analysis out.
//!
//! Exit codes: 0 on success, 1 on domain errors (empty region where a
//! nonempty one is required, and the like), 2 on usage and parse errors.

use clap::{Args, Parser, Subcommand};
use lmi::analysis::{self, RealInterval};
use lmi::classify;
use lmi::kernel;
use lmi::matrix::MatrixError;
use lmi::oracle;
use lmi::plot::{self, fmt9, Overlay, Viewport};
use lmi::region::{builders, ComplexPoint, LmiRegion};
use lmi::{Complex64, DenseMatrix, ToleranceConfig};
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lmi", version, about = "Analyze LMI regions of the complex plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TolArgs {
    /// Jacobi off-diagonal convergence tolerance (relative).
    #[arg(long, global = false)]
    eig_tol: Option<f64>,
    /// Definiteness margin (relative); env LMI_TOL_DEF also applies.
    #[arg(long)]
    def_margin: Option<f64>,
    /// Absolute tolerance for interval and angle comparisons.
    #[arg(long)]
    geom_tol: Option<f64>,
    /// Emit machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full geometric report for a region.
    Analyze {
        region: PathBuf,
        /// Cross-check the analytic results with brute-force scan oracles.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Test whether a point belongs to the region.
    Contains {
        region: PathBuf,
        /// Point as a complex literal, e.g. "-0.5+2i".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Test against the closure instead of the open region.
        #[arg(long)]
        closure: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// The real-axis interval of the region.
    Interval {
        region: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Half-height of the vertical slice at a given abscissa.
    Slice {
        region: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// A disk inscribed in the region, centered on the real axis.
    Inscribe {
        region: PathBuf,
        /// Center abscissa; defaults to the interval midpoint.
        #[arg(long, allow_negative_numbers = true)]
        x0: Option<f64>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Sampled infimum of inscribed radius over |center|.
    Omega {
        region: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Conic census of the pair regions, plus an elementary decomposition
    /// when the generating matrices allow one.
    Classify {
        region: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Rasterize the region and write SVG/CSV figures.
    Plot {
        region: PathBuf,
        /// World window as xlo,xhi,ylo,yhi; fitted automatically if absent.
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        /// Raster size as W,H pixels.
        #[arg(long, default_value = "128,128")]
        px: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Leading order of the boundary curves; defaults to the region order.
        #[arg(long)]
        minor_order: Option<usize>,
        /// Overlay the inscribed disk at the default center.
        #[arg(long)]
        disk: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Intersection of two regions (block-diagonal stacking).
    Intersect {
        region1: PathBuf,
        region2: PathBuf,
        /// Write the resulting region file here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Shift a region along the real axis.
    Shift {
        region: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Scale a region about the origin.
    Scale {
        region: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Emit a standard region file: halfplane | disk A R | sector THETA |
    /// sliced-sector THETA DELTA | vstrip ALPHA BETA | hstrip W0 |
    /// s-region ALPHA R THETA | parabola EPS.
    Builder {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Is a spectrum (or the spectrum of a system matrix) inside the region?
    Dstable {
        region: PathBuf,
        /// Comma-separated complex literals, e.g. "-1,-2+1i,-2-1i".
        #[arg(long, conflicts_with = "matrix", allow_hyphen_values = true)]
        spectrum: Option<String>,
        /// JSON file holding a square system matrix as an array of rows.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }
}

impl From<analysis::AnalysisError> for CliError {
    fn from(e: analysis::AnalysisError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<classify::ClassifyError> for CliError {
    fn from(e: classify::ClassifyError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ── input parsing ───────────────────────────────────────────────────

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(rename = "L")]
    l: Vec<Vec<f64>>,
    #[serde(rename = "M")]
    m: Vec<Vec<f64>>,
}

fn matrix_from_field(rows: &[Vec<f64>], field: &str) -> Result<DenseMatrix, CliError> {
    DenseMatrix::from_rows(rows).map_err(|e| match e {
        MatrixError::Empty => CliError::usage(format!("field {field}: matrix must be nonempty")),
        MatrixError::NotSquare { rows, cols } => CliError::usage(format!(
            "field {field}: expected a square matrix, found a row of length {cols} in a {rows}-row matrix"
        )),
        MatrixError::NonFinite { row, col } => CliError::usage(format!(
            "field {field}: non-finite entry at row {row}, column {col}"
        )),
        MatrixError::Singular => CliError::usage(format!("field {field}: unexpected singularity")),
    })
}

fn load_region(path: &PathBuf, cfg: &ToleranceConfig) -> Result<(Option<String>, LmiRegion), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let file: RegionFile = serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!("{}: malformed region JSON: {e}", path.display()))
    })?;
    let l = matrix_from_field(&file.l, "L")?;
    let m = matrix_from_field(&file.m, "M")?;
    let region = LmiRegion::new(l, m, cfg).map_err(|e| {
        CliError::usage(format!("{}: {e}", path.display()))
    })?;
    Ok((file.name, region))
}

fn load_matrix(path: &PathBuf) -> Result<DenseMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let rows: Vec<Vec<f64>> = serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!("{}: malformed matrix JSON: {e}", path.display()))
    })?;
    matrix_from_field(&rows, "matrix")
}

fn resolve_tolerances(tol: &TolArgs) -> Result<ToleranceConfig, CliError> {
    let mut cfg = ToleranceConfig::default();
    if let Ok(text) = std::env::var("LMI_TOL_DEF") {
        let v: f64 = text
            .parse()
            .map_err(|_| CliError::usage(format!("LMI_TOL_DEF is not a number: {text}")))?;
        if v <= 0.0 {
            return Err(CliError::usage("LMI_TOL_DEF must be positive"));
        }
        cfg.def_margin = v;
    }
    if let Some(v) = tol.eig_tol {
        cfg.eig_tol = v;
    }
    if let Some(v) = tol.def_margin {
        cfg.def_margin = v;
    }
    if let Some(v) = tol.geom_tol {
        cfg.geom_tol = v;
    }
    if !(cfg.eig_tol > 0.0 && cfg.def_margin > 0.0 && cfg.geom_tol > 0.0) {
        return Err(CliError::usage("tolerances must be strictly positive"));
    }
    Ok(cfg)
}

/// Parse a complex literal "a+bi" with optional sign and decimal floats;
/// plain reals and pure-imaginary forms like "2i" or "-i" are accepted.
fn parse_complex(text: &str) -> Result<ComplexPoint, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::usage("empty complex literal"));
    }
    let bad = || CliError::usage(format!("malformed complex literal: {text}"));
    let parse_real = |part: &str| -> Result<f64, CliError> {
        let v = part.parse::<f64>().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Find the split between real and imaginary parts: the last +/- not
        // directly after an exponent marker and not at the start.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re = parse_real(&body[..k])?;
                let imag_part = &body[k..];
                let im = match imag_part {
                    "+" => 1.0,
                    "-" => -1.0,
                    _ => parse_real(imag_part)?,
                };
                Ok(ComplexPoint::new(re, im))
            }
            None => {
                let im = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    _ => parse_real(body)?,
                };
                Ok(ComplexPoint::new(0.0, im))
            }
        }
    } else {
        Ok(ComplexPoint::new(parse_real(&s)?, 0.0))
    }
}

fn parse_spectrum(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(|part| parse_complex(part).map(|z| Complex64::new(z.x, z.y)))
        .collect()
}

// ── output helpers ──────────────────────────────────────────────────

fn jnum(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v > 0.0 {
        "\"inf\"".to_string()
    } else {
        "\"-inf\"".to_string()
    }
}

fn jstr(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn jname(name: &Option<String>) -> String {
    match name {
        Some(n) => jstr(n),
        None => "null".to_string(),
    }
}

fn matrix_json(m: &DenseMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|row| {
            // v + 0.0 folds negative zero into plain zero.
            let cells: Vec<String> = row.iter().map(|v| format!("{}", v + 0.0)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn region_file_json(name: &Option<String>, r: &LmiRegion) -> String {
    let name_part = match name {
        Some(n) => format!("\"name\":{},", jstr(n)),
        None => String::new(),
    };
    format!("{{{}\"L\":{},\"M\":{}}}", name_part, matrix_json(r.l()), matrix_json(r.m()))
}

fn human_interval(i: &RealInterval) -> String {
    match i.endpoints() {
        None => "empty".to_string(),
        Some((lo, hi)) => format!("({}, {})", fmt9(lo), fmt9(hi)),
    }
}

fn emit_region(
    name: &Option<String>,
    region: &LmiRegion,
    output: &Option<PathBuf>,
    json: bool,
) -> Result<(), CliError> {
    let text = region_file_json(name, region);
    match output {
        Some(path) => {
            std::fs::write(path, text.as_bytes())
                .map_err(|e| CliError::domain(format!("cannot write {}: {e}", path.display())))?;
            if json {
                println!("{{\"written\":{}}}", jstr(&path.display().to_string()));
            } else {
                println!("wrote {}", path.display());
            }
        }
        None => println!("{text}"),
    }
    Ok(())
}

// ── verification (analyze --verify) ─────────────────────────────────

struct VerifySummary {
    interval_scan: RealInterval,
    interval_agrees: bool,
    angle: Option<(f64, f64, bool)>,
    disk_contained: Option<bool>,
}

fn run_verification(
    region: &LmiRegion,
    report: &analysis::RegionReport,
    cfg: &ToleranceConfig,
) -> Result<VerifySummary, CliError> {
    let (win_lo, win_hi) = match report.interval.endpoints() {
        Some((lo, hi)) => {
            let a = if lo.is_finite() { lo - 2.0 } else { -100.0 };
            let b = if hi.is_finite() { hi + 2.0 } else { 100.0 };
            (a, b)
        }
        None => (-100.0, 100.0),
    };
    let scan = oracle::interval_by_scan(region, win_lo, win_hi, 200_000, cfg);
    let interval_agrees = match (report.interval.endpoints(), scan.endpoints()) {
        (None, None) => true,
        (Some((a, b)), Some((c, d))) => {
            // Infinite analytic endpoints show up as the window edge in the scan.
            let lo_ok = if a.is_finite() { (a - c).abs() <= 1e-6 } else { c <= win_lo + 1e-3 };
            let hi_ok = if b.is_finite() { (b - d).abs() <= 1e-6 } else { d >= win_hi - 1e-3 };
            lo_ok && hi_ok
        }
        _ => false,
    };

    let angle = if report.recession.kind == analysis::RecessionKind::ProperCone {
        let analytic = report.recession.angle.unwrap();
        let scanned = oracle::angle_by_ray_scan(region, 1e6, 4096, cfg)
            .map_err(|e| CliError::domain(e.to_string()))?;
        let agrees = (analytic - scanned).abs() <= std::f64::consts::PI / 2048.0;
        Some((analytic, scanned, agrees))
    } else {
        None
    };

    let disk_contained = if report.empty {
        None
    } else {
        match analysis::inscribed_disk(region, None, cfg) {
            Ok(d) => {
                let shrunk = analysis::Disk {
                    center_x: d.center_x,
                    radius: d.radius * (1.0 - 1e-6),
                };
                Some(oracle::containment_by_sampling(region, &shrunk, 720, cfg))
            }
            Err(_) => None,
        }
    };

    Ok(VerifySummary { interval_scan: scan, interval_agrees, angle, disk_contained })
}

// ── dispatch ────────────────────────────────────────────────────────

fn require_finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{name} must be finite")))
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze { region, verify, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (name, r) = load_region(&region, &cfg)?;
            let report = analysis::region_report(&r, &cfg)?;
            let verification = if verify {
                Some(run_verification(&r, &report, &cfg)?)
            } else {
                None
            };
            if tol.json {
                let mut out = format!(
                    "{{\"name\":{},\"report\":{}",
                    jname(&name),
                    report.to_json()
                );
                if let Some(v) = &verification {
                    out.push_str(",\"verify\":{");
                    out.push_str(&format!(
                        "\"interval_scan\":{},\"interval_agrees\":{}",
                        v.interval_scan.to_json(),
                        v.interval_agrees
                    ));
                    if let Some((analytic, scanned, agrees)) = v.angle {
                        out.push_str(&format!(
                            ",\"angle\":{{\"analytic\":{},\"scanned\":{},\"agrees\":{}}}",
                            jnum(analytic),
                            jnum(scanned),
                            agrees
                        ));
                    }
                    if let Some(ok) = v.disk_contained {
                        out.push_str(&format!(",\"disk_contained\":{ok}"));
                    }
                    out.push('}');
                }
                out.push('}');
                println!("{out}");
            } else {
                let label = name.as_deref().unwrap_or("(unnamed)");
                println!("region: {} (order {})", label, report.order);
                println!("empty: {}", report.empty);
                println!("bounded: {}", report.bounded);
                println!("interval: {}", human_interval(&report.interval));
                println!("lineality: {}", report.lineality.as_str());
                match (report.recession.angle, report.recession.orientation) {
                    (Some(a), Some(o)) => println!(
                        "recession: {} (half-angle {}, {})",
                        report.recession.kind.as_str(),
                        fmt9(a),
                        o.as_str()
                    ),
                    (None, Some(o)) => {
                        println!("recession: {} ({})", report.recession.kind.as_str(), o.as_str())
                    }
                    _ => println!("recession: {}", report.recession.kind.as_str()),
                }
                if let Some(v) = &verification {
                    println!(
                        "verify interval: scan {} agrees={}",
                        human_interval(&v.interval_scan),
                        v.interval_agrees
                    );
                    if let Some((analytic, scanned, agrees)) = v.angle {
                        println!(
                            "verify angle: analytic {} scan {} agrees={}",
                            fmt9(analytic),
                            fmt9(scanned),
                            agrees
                        );
                    }
                    if let Some(ok) = v.disk_contained {
                        println!("verify inscribed disk: contained={ok}");
                    }
                }
            }
            let verified_ok = verification
                .as_ref()
                .map(|v| {
                    v.interval_agrees
                        && v.angle.map(|(_, _, ok)| ok).unwrap_or(true)
                        && v.disk_contained.unwrap_or(true)
                })
                .unwrap_or(true);
            if !verified_ok {
                return Err(CliError::domain("verification failed"));
            }
            Ok(())
        }

        Command::Contains { region, z, closure, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (_, r) = load_region(&region, &cfg)?;
            let point = parse_complex(&z)?;
            let inside = if closure {
                r.contains_closure(point, &cfg)
            } else {
                r.contains(point, &cfg)
            };
            if tol.json {
                println!(
                    "{{\"z\":{{\"x\":{},\"y\":{}}},\"closure\":{},\"contains\":{}}}",
                    jnum(point.x),
                    jnum(point.y),
                    closure,
                    inside
                );
            } else {
                println!("{inside}");
            }
            Ok(())
        }

        Command::Interval { region, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (_, r) = load_region(&region, &cfg)?;
            let interval = analysis::real_interval(&r, &cfg);
            if tol.json {
                println!("{}", interval.to_json());
            } else {
                println!("{}", human_interval(&interval));
            }
            Ok(())
        }

        Command::Slice { region, x0, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let x0 = require_finite("--x0", x0)?;
            let (_, r) = load_region(&region, &cfg)?;
            let bound = analysis::slice_bound(&r, x0, &cfg)?;
            if tol.json {
                println!("{{\"x0\":{},\"bound\":{}}}", jnum(x0), jnum(bound));
            } else {
                println!("{}", fmt9(bound));
            }
            Ok(())
        }

        Command::Inscribe { region, x0, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let x0 = x0.map(|v| require_finite("--x0", v)).transpose()?;
            let (_, r) = load_region(&region, &cfg)?;
            let disk = analysis::inscribed_disk(&r, x0, &cfg)?;
            if tol.json {
                println!("{}", disk.to_json());
            } else {
                println!("disk center {} radius {}", fmt9(disk.center_x), fmt9(disk.radius));
            }
            Ok(())
        }

        Command::Omega { region, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (_, r) = load_region(&region, &cfg)?;
            let est = analysis::omega(&r, &cfg)?;
            if tol.json {
                println!("{}", est.to_json());
            } else {
                println!("{} ({} samples)", fmt9(est.value), est.samples);
            }
            Ok(())
        }

        Command::Classify { region, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (_, r) = load_region(&region, &cfg)?;
            if r.order() < 2 {
                return Err(CliError::domain("classification needs order at least 2"));
            }
            let census = classify::curve_census(&r, &cfg)?;
            let mut pairs = Vec::new();
            for i in 1..=r.order() {
                for j in (i + 1)..=r.order() {
                    pairs.push(classify::pij_region(&r, i, j, &cfg)?);
                }
            }
            let decomposition = classify::decomposition_simdiag(&r, &cfg);
            if tol.json {
                let pair_items: Vec<String> = pairs.iter().map(|p| p.to_json()).collect();
                let dec_part = match &decomposition {
                    Ok(d) => format!("\"decomposition\":{}", d.to_json()),
                    Err(e) => format!(
                        "\"decomposition\":null,\"decomposition_error\":{}",
                        jstr(&e.to_string())
                    ),
                };
                println!(
                    "{{\"census\":{},\"pairs\":[{}],{}}}",
                    census.to_json(),
                    pair_items.join(","),
                    dec_part
                );
            } else {
                println!(
                    "census: elliptic={} hyperbolic_or_pair={} parabolic={} degenerate={}",
                    census.elliptic, census.hyperbolic_or_pair, census.parabolic, census.degenerate
                );
                println!(
                    "bounds: elliptic<={} hyperbolic_or_pair<={} (inertia {},{},{})",
                    census.elliptic_bound,
                    census.hyperbolic_bound,
                    census.inertia.n_pos,
                    census.inertia.n_neg,
                    census.inertia.n_zero
                );
                for p in &pairs {
                    println!("pair ({},{}): {}", p.i, p.j, p.kind.as_str());
                }
                match &decomposition {
                    Ok(d) => {
                        println!("decomposition ({} pieces):", d.pieces.len());
                        for piece in &d.pieces {
                            println!("  {}", piece.to_json());
                        }
                    }
                    Err(e) => println!("decomposition: unavailable ({e})"),
                }
            }
            Ok(())
        }

        Command::Plot { region, viewport, px, svg, csv, minor_order, disk, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (_, r) = load_region(&region, &cfg)?;
            let (w, h) = parse_px(&px)?;
            let vp = match viewport {
                Some(spec) => parse_viewport(&spec, w, h)?,
                None => plot::auto_viewport(&r, &cfg, w, h),
            };
            let grid = plot::raster(&r, &vp, &cfg);
            let order = minor_order.unwrap_or(r.order());
            let curves = plot::minor_curves(&r, &vp, order, &cfg)
                .map_err(|e| CliError::domain(e.to_string()))?;
            let mut overlays = Vec::new();
            if disk {
                let d = analysis::inscribed_disk(&r, None, &cfg)?;
                overlays.push(Overlay::Disk(d));
            }
            if let Some(path) = &svg {
                plot::emit_svg(&grid, &curves, &overlays, path)
                    .map_err(|e| CliError::domain(e.to_string()))?;
            }
            if let Some(path) = &csv {
                plot::emit_csv(&grid, path).map_err(|e| CliError::domain(e.to_string()))?;
            }
            if tol.json {
                println!(
                    "{{\"viewport\":{{\"x_lo\":{},\"x_hi\":{},\"y_lo\":{},\"y_hi\":{},\"width_px\":{},\"height_px\":{}}},\"members\":{},\"svg\":{},\"csv\":{}}}",
                    jnum(vp.x_lo),
                    jnum(vp.x_hi),
                    jnum(vp.y_lo),
                    jnum(vp.y_hi),
                    vp.width_px,
                    vp.height_px,
                    grid.member_count(),
                    svg.map(|p| jstr(&p.display().to_string())).unwrap_or_else(|| "null".into()),
                    csv.map(|p| jstr(&p.display().to_string())).unwrap_or_else(|| "null".into()),
                );
            } else {
                println!(
                    "viewport [{}, {}] x [{}, {}], {}x{} px, {} member cells",
                    fmt9(vp.x_lo),
                    fmt9(vp.x_hi),
                    fmt9(vp.y_lo),
                    fmt9(vp.y_hi),
                    vp.width_px,
                    vp.height_px,
                    grid.member_count()
                );
                if let Some(p) = &svg {
                    println!("wrote {}", p.display());
                }
                if let Some(p) = &csv {
                    println!("wrote {}", p.display());
                }
            }
            Ok(())
        }

        Command::Intersect { region1, region2, output, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (n1, r1) = load_region(&region1, &cfg)?;
            let (n2, r2) = load_region(&region2, &cfg)?;
            let joined = r1.intersect(&r2);
            let name = match (n1, n2) {
                (Some(a), Some(b)) => Some(format!("{a} ∩ {b}")),
                _ => None,
            };
            emit_region(&name, &joined, &output, tol.json)
        }

        Command::Shift { region, alpha, output, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let alpha = require_finite("--alpha", alpha)?;
            let (name, r) = load_region(&region, &cfg)?;
            emit_region(&name, &r.shift(alpha), &output, tol.json)
        }

        Command::Scale { region, alpha, output, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let alpha = require_finite("--alpha", alpha)?;
            let (name, r) = load_region(&region, &cfg)?;
            let scaled = r.scale(alpha).map_err(|e| CliError::usage(e.to_string()))?;
            emit_region(&name, &scaled, &output, tol.json)
        }

        Command::Builder { name, params, output, tol } => {
            let region = build_named(&name, &params)?;
            emit_region(&Some(name), &region, &output, tol.json)
        }

        Command::Dstable { region, spectrum, matrix, tol } => {
            let cfg = resolve_tolerances(&tol)?;
            let (_, r) = load_region(&region, &cfg)?;
            let eigs: Vec<Complex64> = match (spectrum, matrix) {
                (Some(list), None) => parse_spectrum(&list)?,
                (None, Some(path)) => {
                    let a = load_matrix(&path)?;
                    kernel::general_eigenvalues(&a)
                        .map_err(|e| CliError::domain(e.to_string()))?
                }
                _ => {
                    return Err(CliError::usage(
                        "dstable needs exactly one of --spectrum or --matrix",
                    ))
                }
            };
            let stable = analysis::dstable(&eigs, &r, &cfg);
            if tol.json {
                let items: Vec<String> = eigs
                    .iter()
                    .map(|e| format!("{{\"re\":{},\"im\":{}}}", jnum(e.re), jnum(e.im)))
                    .collect();
                println!("{{\"stable\":{},\"spectrum\":[{}]}}", stable, items.join(","));
            } else {
                println!("{stable}");
            }
            Ok(())
        }
    }
}

fn parse_px(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::usage("--px expects W,H"));
    }
    let w = parts[0].trim().parse().map_err(|_| CliError::usage("--px width is not an integer"))?;
    let h = parts[1].trim().parse().map_err(|_| CliError::usage("--px height is not an integer"))?;
    Ok((w, h))
}

fn parse_viewport(text: &str, w: usize, h: usize) -> Result<Viewport, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::usage("--viewport expects xlo,xhi,ylo,yhi"));
    }
    let mut vals = [0.0f64; 4];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--viewport component is not a number: {part}")))?;
    }
    Viewport::new(vals[0], vals[1], vals[2], vals[3], w, h)
        .map_err(|_| CliError::usage("viewport must satisfy xlo<xhi, ylo<yhi, px>=16"))
}

fn build_named(name: &str, params: &[f64]) -> Result<LmiRegion, CliError> {
    let need = |n: usize| -> Result<(), CliError> {
        if params.len() == n {
            Ok(())
        } else {
            Err(CliError::usage(format!(
                "builder {name} expects {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let built = match name {
        "halfplane" => {
            need(0)?;
            Ok(builders::left_halfplane())
        }
        "disk" => {
            need(2)?;
            builders::disk(params[0], params[1])
        }
        "sector" => {
            need(1)?;
            builders::conic_sector(params[0])
        }
        "sliced-sector" => {
            need(2)?;
            builders::sliced_sector(params[0], params[1])
        }
        "vstrip" => {
            need(2)?;
            builders::vstrip(params[0], params[1])
        }
        "hstrip" => {
            need(1)?;
            builders::hstrip(params[0])
        }
        "s-region" => {
            need(3)?;
            builders::s_region(params[0], params[1], params[2])
        }
        "parabola" => {
            need(1)?;
            builders::parabola(params[0])
        }
        _ => {
            return Err(CliError::usage(format!(
                "unknown builder {name}; try halfplane, disk, sector, sliced-sector, vstrip, hstrip, s-region or parabola"
            )))
        }
    };
    built.map_err(|e| CliError::usage(e.to_string()))
}
