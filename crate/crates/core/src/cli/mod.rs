//! The `starq` command line: constants, radius tables, coefficient bounds,
//! boundary export, membership runs and α-grid scans.

pub mod format;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeffs::{
    a2_bound, a3_bound, fekete_szego_bound, inverse_coeff_bounds, log_coeff_bound, FeketeParams,
};
use crate::error::Error;
use crate::membership::{
    boundary_polygon, check_convex_order, check_gb, check_m_beta, check_re_f_over_z, check_rho_convex,
    check_sq_inequality, check_subordination_qalpha, convexity_scan, starlike_scan, FunctionHandle,
    MembershipReport, PhiExtremal, PhiFamily, SampleGrid,
};
use crate::radii::{solve, verify, RadiusProblem, RadiusResult, RadiusTag};
use crate::special::{branch_threshold, class_constants, Alpha, BranchClass};
use format::{opt, round_json, sig, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable overriding the angular sample count.
pub const GRID_M_ENV: &str = "STARQ_GRID_M";

const DEFAULT_BOUNDARY_SAMPLES: usize = 4096;
const DEFAULT_SCAN_SAMPLES: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "starq", version, about = "Numerics for the S*_q(α) and S*(q_α) starlike classes")]
pub struct Cli {
    /// Output format; svg only applies to `boundary`.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class constants. CSV columns: alpha,q_min,gamma,macgregor_order,exp_threshold,sg_threshold
    Constants {
        /// α as decimal, fraction (7/9) or range start:end:step.
        #[arg(long)]
        alpha: String,
    },
    /// Smallest root of a radius equation. CSV columns:
    /// class,alpha,gamma,beta,root,residual,bracket_lo,bracket_hi,branch,whole_disk[,inside_verdict,inside_margin]
    Radius(RadiusArgs),
    /// Sampled boundary of q_α(𝔻). CSV columns: index,re,im,cap
    Boundary {
        #[arg(long)]
        alpha: String,
        /// Samples on the unit circle (at least 256).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Coefficient bounds. CSV columns: kind,alpha,param,bound,attained,branch,conditional
    Bound {
        #[arg(value_enum)]
        kind: BoundKind,
        #[arg(long)]
        alpha: String,
        /// Fekete–Szegő weight.
        #[arg(long)]
        t: Option<f64>,
        /// Logarithmic coefficient index.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Grid membership test. CSV columns:
    /// check,function,alpha,param,verdict,worst_margin,witness_re,witness_im,lhs,rhs,low_confidence_points,note
    Membership(MembershipArgs),
    /// Tables over an α grid. CSV columns: convexity/starlike: alpha,minimum,argmin_theta,negative;
    /// radius-table: as `radius`; gamma-table: alpha,q_min,gamma
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub alpha: String,
    /// Target starlikeness order (starlike-order).
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Bound β (mbeta, disk).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Also sample the extremal function inside the root.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Fekete,
    A2,
    A3,
    Inverse,
    Logcoeff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MembershipClass {
    /// Re(zf'/f) > |1 + zf''/f' - zf'/f - α|
    Sq,
    /// zf'/f ≺ q_α
    Sqalpha,
    /// Re(1 + zf''/f') > α
    Convex,
    /// |(1 + zf''/f')/(zf'/f) - 1| < b
    Gb,
    /// Re(ρ(1 + zf''/f') + (1-ρ)zf'/f) ≥ 0
    Mocanu,
    /// Re f/z > γ (γ defaults to γ(α))
    Qgamma,
    /// Re(zf'/f) < β
    Mbeta,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    /// identity | koebe | falpha:<α> | fgamma:<re>[,<im>] | slsharp | phi:<sl|log|exp|sg|sin|cardioid>
    #[arg(long = "f")]
    pub function: String,
    #[arg(long, value_enum)]
    pub class: MembershipClass,
    #[arg(long, default_value = "0")]
    pub alpha: String,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Comma-separated radii (default 0.1,…,0.9,0.99).
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Angular samples per circle.
    #[arg(long)]
    pub m: Option<usize>,
    /// Series order for phi:<family> handles.
    #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Convexity,
    Starlike,
    RadiusTable,
    GammaTable,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub kind: ScanKind,
    #[arg(long)]
    pub alpha: String,
    /// Radius class for radius-table.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Boundary samples for convexity/starlike.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Domain(Error::NoRoot(_)) => EXIT_SOLVER,
            Self::Domain(_) | Self::Usage(_) => EXIT_INVALID,
            Self::Io(_) => EXIT_IO,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// A finished command: a table for CSV, a JSON value, and optionally SVG.
pub struct Output {
    pub table: Table,
    pub json: Value,
    pub svg: Option<String>,
}

/// Parse `0.5`, `7/9` or `-0.25`.
pub fn parse_number(s: &str) -> CliResult<f64> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (f64, f64) = (parse_plain(n)?, parse_plain(d)?);
            if d == 0.0 {
                return usage(format!("zero denominator in '{s}'"));
            }
            n / d
        }
        None => parse_plain(s)?,
    };
    Ok(v)
}

fn parse_plain(s: &str) -> CliResult<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("not a number: '{s}'")))
}

/// A single α or a range `start:end:step` (inclusive end).
pub fn parse_alphas(s: &str) -> CliResult<Vec<Alpha>> {
    let parts: Vec<&str> = s.split(':').collect();
    let values = match parts.as_slice() {
        [one] => vec![parse_number(one)?],
        [a, b, step] => {
            let (a, b, step) = (parse_number(a)?, parse_number(b)?, parse_number(step)?);
            if step.is_nan() || step <= 0.0 || b < a {
                return usage(format!("range '{s}' needs start ≤ end and step > 0"));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize;
            if n > 100_000 {
                return usage(format!("range '{s}' has too many points"));
            }
            (0..=n).map(|k| ((a + step * k as f64) * 1e12).round() / 1e12).collect()
        }
        _ => return usage(format!("α must be a number, a fraction or start:end:step, got '{s}'")),
    };
    values.into_iter().map(|v| Alpha::new(v).map_err(CliError::from)).collect()
}

fn single_alpha(s: &str) -> CliResult<Alpha> {
    match parse_alphas(s)?.as_slice() {
        [a] => Ok(*a),
        _ => usage("this command takes a single α"),
    }
}

/// Parse a function spec into a handle.
pub fn parse_function(s: &str, order: usize) -> CliResult<FunctionHandle> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    let h = match (name.to_ascii_lowercase().as_str(), arg) {
        ("identity", None) => FunctionHandle::Identity,
        ("koebe", None) => FunctionHandle::Koebe,
        ("slsharp", None) => FunctionHandle::SLSharp,
        ("falpha", Some(a)) => FunctionHandle::FAlpha(Alpha::new(parse_number(a)?)?),
        ("fgamma", Some(g)) => {
            let (re, im) = match g.split_once(',') {
                Some((re, im)) => (parse_number(re)?, parse_number(im)?),
                None => (parse_number(g)?, 0.0),
            };
            FunctionHandle::FGammaPoly(Complex64::new(re, im))
        }
        ("phi", Some(f)) => {
            if order < 2 {
                return usage("series order must be at least 2");
            }
            FunctionHandle::PhiExtremal(PhiExtremal::new(f.parse::<PhiFamily>()?, order))
        }
        _ => return usage(format!("unknown function spec '{s}'")),
    };
    Ok(h)
}

/// Angular samples: explicit flag, then `STARQ_GRID_M`, then `default`.
fn angular(flag: Option<usize>, default: usize) -> CliResult<usize> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match std::env::var(GRID_M_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{GRID_M_ENV}='{v}' is not a count"))),
        Err(_) => Ok(default),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_constants(alpha: &str) -> CliResult<Output> {
    let exp = branch_threshold(BranchClass::Exp);
    let sg = branch_threshold(BranchClass::SG);
    let mut table =
        Table::new(vec!["alpha", "q_min", "gamma", "macgregor_order", "exp_threshold", "sg_threshold"]);
    let mut rows = Vec::new();
    for a in parse_alphas(alpha)? {
        let c = class_constants(a);
        table.push(vec![sig(a.value()), sig(c.q_min), sig(c.gamma), sig(c.macgregor_order), sig(exp), sig(sg)]);
        rows.push(json!({
            "alpha": a.value(),
            "q_min": c.q_min,
            "gamma": c.gamma,
            "macgregor_order": c.macgregor_order,
            "exp_threshold": exp,
            "sg_threshold": sg,
        }));
    }
    Ok(Output { table, json: Value::Array(rows), svg: None })
}

const RADIUS_HEADER: [&str; 10] =
    ["class", "alpha", "gamma", "beta", "root", "residual", "bracket_lo", "bracket_hi", "branch", "whole_disk"];

fn radius_row(r: &RadiusResult) -> Vec<String> {
    let p = &r.problem;
    vec![
        p.tag.name().into(),
        sig(p.alpha.value()),
        opt(p.gamma),
        opt(p.beta),
        sig(r.root),
        sig(r.residual),
        sig(r.bracket.0),
        sig(r.bracket.1),
        r.branch.map(|b| format!("{b:?}")).unwrap_or_default(),
        r.whole_disk.to_string(),
    ]
}

fn radius_table(class: &str, alpha: &str, gamma: Option<f64>, beta: Option<f64>, check: bool) -> CliResult<Output> {
    let tag: RadiusTag = class.parse()?;
    let mut header = RADIUS_HEADER.to_vec();
    if check {
        header.extend(["inside_verdict", "inside_margin"]);
    }
    let mut table = Table::new(header);
    let mut rows = Vec::new();
    for a in parse_alphas(alpha)? {
        let p = RadiusProblem::with_params(tag, a, gamma, beta)?;
        let r = solve(&p)?;
        let mut row = radius_row(&r);
        let mut j = to_json(&r);
        if check {
            let v = verify(&p, &r, &SampleGrid::new(SampleGrid::default().radii().to_vec(), angular(None, 1024)?)?)?;
            row.push(format!("{:?}", v.inside.verdict));
            row.push(sig(v.inside.worst_margin));
            j["verification"] = to_json(&v);
        }
        table.push(row);
        rows.push(j);
    }
    Ok(Output { table, json: Value::Array(rows), svg: None })
}

fn cmd_boundary(alpha: &str, samples: Option<usize>, fmt: Format) -> CliResult<Output> {
    let a = single_alpha(alpha)?;
    let curve = boundary_polygon(a, angular(samples, DEFAULT_BOUNDARY_SAMPLES)?)?;
    let mut table = Table::new(vec!["index", "re", "im", "cap"]);
    let (cs, ce) = curve.cap_range;
    for (i, w) in curve.vertices.iter().enumerate() {
        table.push(vec![i.to_string(), sig(w.re), sig(w.im), (cs <= i && i < ce).to_string()]);
    }
    let svg = (fmt == Format::Svg).then(|| format::boundary_svg(&curve, alpha.trim()));
    Ok(Output { table, json: to_json(&curve), svg })
}

fn cmd_bound(kind: BoundKind, alpha: &str, t: Option<f64>, n: Option<usize>) -> CliResult<Output> {
    let mut table = Table::new(vec!["kind", "alpha", "param", "bound", "attained", "branch", "conditional"]);
    let mut rows = Vec::new();
    for a in parse_alphas(alpha)? {
        let (param, bound, attained, branch, conditional, j) = match kind {
            BoundKind::Fekete => {
                let Some(t) = t else { return usage("bound fekete needs --t") };
                let r = fekete_szego_bound(FeketeParams { alpha: a, t });
                (Some(t), r.bound, r.attained, format!("{:?}", r.branch), None, to_json(&r))
            }
            BoundKind::A2 => {
                let b = a2_bound(a);
                (None, b, None, String::new(), None, json!({ "bound": b }))
            }
            BoundKind::A3 => {
                let r = a3_bound(a);
                (None, r.bound, r.attained, format!("{:?}", r.branch), None, to_json(&r))
            }
            BoundKind::Inverse => {
                // One row for |b₃|; the JSON carries both bounds.
                let r = inverse_coeff_bounds(a);
                (None, r.b3, None, format!("{:?}", r.branch), None, to_json(&r))
            }
            BoundKind::Logcoeff => {
                let Some(n) = n else { return usage("bound logcoeff needs --n") };
                let r = log_coeff_bound(a, n)?;
                (Some(n as f64), r.bound, None, String::new(), Some(r.conditional), to_json(&r))
            }
        };
        table.push(vec![
            format!("{kind:?}").to_lowercase(),
            sig(a.value()),
            opt(param),
            sig(bound),
            opt(attained),
            branch,
            conditional.map(|c| c.to_string()).unwrap_or_default(),
        ]);
        let mut j = j;
        j["alpha"] = json!(a.value());
        rows.push(j);
    }
    Ok(Output { table, json: Value::Array(rows), svg: None })
}

fn cmd_membership(m: &MembershipArgs) -> CliResult<Output> {
    let a = single_alpha(&m.alpha)?;
    let h = parse_function(&m.function, m.order)?;
    let grid = SampleGrid::new(
        m.radii.clone().unwrap_or_else(|| SampleGrid::default().radii().to_vec()),
        angular(m.m, SampleGrid::default().angular_count())?,
    )?;
    let (report, param): (MembershipReport, Option<f64>) = match m.class {
        MembershipClass::Sq => (check_sq_inequality(&h, a, &grid)?, None),
        MembershipClass::Sqalpha => {
            let curve = boundary_polygon(a, DEFAULT_BOUNDARY_SAMPLES)?;
            (check_subordination_qalpha(&h, a, &grid, &curve)?, None)
        }
        MembershipClass::Convex => (check_convex_order(&h, a, &grid)?, None),
        MembershipClass::Gb => {
            let b = m.b.unwrap_or(1.0);
            (check_gb(&h, b, &grid)?, Some(b))
        }
        MembershipClass::Mocanu => {
            let rho = m.rho.unwrap_or(-1.0);
            (check_rho_convex(&h, rho, &grid)?, Some(rho))
        }
        MembershipClass::Qgamma => {
            let g = m.gamma.unwrap_or_else(|| class_constants(a).gamma);
            (check_re_f_over_z(&h, g, &grid)?, Some(g))
        }
        MembershipClass::Mbeta => {
            let Some(b) = m.beta else { return usage("membership --class mbeta needs --beta") };
            (check_m_beta(&h, b, &grid)?, Some(b))
        }
    };
    let mut table = Table::new(vec![
        "check",
        "function",
        "alpha",
        "param",
        "verdict",
        "worst_margin",
        "witness_re",
        "witness_im",
        "lhs",
        "rhs",
        "low_confidence_points",
        "note",
    ]);
    let w = report.witness;
    table.push(vec![
        report.check.clone(),
        report.function.clone(),
        sig(a.value()),
        opt(param),
        format!("{:?}", report.verdict),
        sig(report.worst_margin),
        sig(w.z.re),
        sig(w.z.im),
        sig(w.lhs),
        sig(w.rhs),
        report.low_confidence_points.to_string(),
        report.note.into(),
    ]);
    let mut j = to_json(&report);
    j["alpha"] = json!(a.value());
    j["param"] = json!(param);
    Ok(Output { table, json: j, svg: None })
}

fn cmd_scan(s: &ScanArgs) -> CliResult<Output> {
    match s.kind {
        ScanKind::Convexity | ScanKind::Starlike => {
            let m = angular(s.samples, DEFAULT_SCAN_SAMPLES)?;
            if m < 64 {
                return usage("scans need at least 64 samples");
            }
            let mut table = Table::new(vec!["alpha", "minimum", "argmin_theta", "negative"]);
            let mut rows = Vec::new();
            for a in parse_alphas(&s.alpha)? {
                let r = if s.kind == ScanKind::Convexity { convexity_scan(a, m) } else { starlike_scan(a, m) };
                table.push(vec![sig(a.value()), sig(r.minimum), sig(r.argmin_theta), (r.minimum < 0.0).to_string()]);
                rows.push(to_json(&r));
            }
            Ok(Output { table, json: Value::Array(rows), svg: None })
        }
        ScanKind::RadiusTable => {
            let Some(class) = &s.class else { return usage("scan radius-table needs --class") };
            radius_table(class, &s.alpha, s.gamma, s.beta, false)
        }
        ScanKind::GammaTable => {
            let mut table = Table::new(vec!["alpha", "q_min", "gamma"]);
            let mut rows = Vec::new();
            for a in parse_alphas(&s.alpha)? {
                let c = class_constants(a);
                table.push(vec![sig(a.value()), sig(c.q_min), sig(c.gamma)]);
                rows.push(json!({ "alpha": a.value(), "q_min": c.q_min, "gamma": c.gamma }));
            }
            Ok(Output { table, json: Value::Array(rows), svg: None })
        }
    }
}

/// Run a parsed command and render it in the requested format.
pub fn run(cli: &Cli) -> CliResult<Vec<u8>> {
    if cli.format == Format::Svg && !matches!(cli.command, Command::Boundary { .. }) {
        return usage("--format svg is only available for `boundary`");
    }
    let out = match &cli.command {
        Command::Constants { alpha } => cmd_constants(alpha)?,
        Command::Radius(r) => radius_table(&r.class, &r.alpha, r.gamma, r.beta, r.verify)?,
        Command::Boundary { alpha, samples } => cmd_boundary(alpha, *samples, cli.format)?,
        Command::Bound { kind, alpha, t, n } => cmd_bound(*kind, alpha, *t, *n)?,
        Command::Membership(m) => cmd_membership(m)?,
        Command::Scan(s) => cmd_scan(s)?,
    };
    match cli.format {
        Format::Csv => out.table.to_csv().map_err(|e| CliError::Io(e.to_string())),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&round_json(out.json)).expect("serializable");
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Svg => Ok(out.svg.expect("boundary renders svg").into_bytes()),
    }
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> CliResult<()> {
    let res = match path {
        Some(p) => std::fs::write(p, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    };
    res.map_err(|e| CliError::Io(e.to_string()))
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli).and_then(|bytes| write_output(cli.output.as_ref(), &bytes)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("starq: {e}");
            e.exit_code()
        }
    }
}
