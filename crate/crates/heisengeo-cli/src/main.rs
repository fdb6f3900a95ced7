//! Command-line front end for the Heisenberg-group toolkit.
//!
//! Every subcommand delegates to one library operation: distances and norm
//! evaluation, horizontal lifts of planar polylines, geodesic and isometry
//! verification, affine fitting, convexity probes, isoperimetrix models,
//! and a one-shot `reproduce` run of the full acceptance suite.
//!
//! Exit codes form a stable contract for scripting: 0 when the requested
//! property holds (valid norm, geodesic, isometry, ...), 1 when a violation
//! was validated (invalid parameters, positive defect, counterexample
//! witness), and 2 for usage errors, where the message names the offending
//! flag or field.
//!
//! All floating-point values the tool emits — stdout summaries, JSON
//! reports, CSV tables — are formatted with 17 significant digits
//! (`{:.16e}`), so every `f64` round-trips bit for bit and identical
//! (flags, seed) pairs produce byte-identical output.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heisengeo::acceptance::{run_all, RunConfig, TOLERANCE_KEYS};
use heisengeo::convexity::{
    classify_glp_lpa, glp_necessary_condition, probe_horizontal_strict_convexity,
    probe_midpoint, ConvexityReport, ConvexityVerdict, ConvexityWitness,
};
use heisengeo::curves::{length, oriented_loop_area, verify_geodesic, CatalogGeodesic, SineEmbedding};
use heisengeo::group::{distance, GroupDim, HeisPoint};
use heisengeo::homs::{fit_affine, fit_affine_euclidean, FitDesign, HomSpec, SourceKind};
use heisengeo::io::{format_float, read_curve_csv, write_curve_csv};
use heisengeo::isoperimetrix::{build_isoperimetrix, vertical_distance, PlanarNormDescriptor};
use heisengeo::norms::{eval_norm, is_valid_lpa, NormDescriptor};
use heisengeo::tol;

const EXIT_HOLDS: u8 = 0;
const EXIT_VIOLATION: u8 = 1;

#[derive(Parser)]
#[command(
    name = "heisengeo",
    version,
    about = "Heisenberg groups H^n with homogeneous norms: distances, lifts, geodesic and \
             embedding verification, convexity probes, isoperimetrix models, and a \
             reproducible acceptance suite.",
    after_help = "Exit codes: 0 = property holds / value computed, 1 = validated violation \
                  or counterexample, 2 = usage error."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Master RNG seed; every randomized probe derives its stream from it.
    #[arg(long, global = true, env = "HEISENGEO_SEED", default_value_t = 0)]
    seed: u64,

    /// Report format for --out [default: json, or csv when --out ends in .csv].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the structured report here; stdout then carries only summary lines.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override a tolerance as KEY=VALUE (repeatable); `reproduce --help` lists the keys.
    #[arg(long = "tolerance", global = true, value_name = "KEY=VALUE")]
    tolerance: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two points under a homogeneous norm.
    Dist(DistArgs),
    /// Evaluate a homogeneous norm and/or check its parameter validity.
    Norm(NormArgs),
    /// Horizontally lift a planar polyline CSV (columns s, z_1..z_2n).
    Lift(LiftArgs),
    /// Verify the geodesic property of a catalog curve or a curve file.
    GeodesicVerify(GeodesicVerifyArgs),
    /// Probe a built-in embedding for the isometry property.
    EmbedVerify(EmbedVerifyArgs),
    /// Fit left-translation ∘ homogeneous-homomorphism to a map; report the residual.
    FitAffine(FitAffineArgs),
    /// Probe or classify a convexity property of a norm.
    Convexity(ConvexityArgs),
    /// Build the isoperimetrix model of a planar norm.
    Isoperimetrix(IsoperimetrixArgs),
    /// Vertical sub-Finsler distance d((0, t), (0, 0)) for a planar norm.
    Vdist(VdistArgs),
    /// Run the full acceptance suite and report one verdict per criterion.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct DistArgs {
    /// Norm descriptor: koranyi | leenaor | lpa:p=<p>,a=<a> | subfinsler:lp:p=<p>.
    #[arg(long)]
    norm: String,
    /// First point as 2n+1 comma-separated reals x_1..x_n,y_1..y_n,t.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Second point, same layout.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("action").required(true).multiple(true).args(["point", "check_validity"]))]
struct NormArgs {
    /// Norm descriptor: koranyi | leenaor | lpa:p=<p>,a=<a> | subfinsler:lp:p=<p>.
    #[arg(long)]
    norm: String,
    /// Group dimension n of H^n.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Evaluate the norm at this point (2n+1 comma-separated reals).
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Check whether the descriptor parameters define a norm on H^n.
    #[arg(long)]
    check_validity: bool,
}

#[derive(Args)]
struct LiftArgs {
    /// Input CSV: planar (s, z_1..z_2n) to lift, or lifted (…, t) to revalidate.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Starting height t(s_0) for planar inputs.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    /// Also report the curve length under this norm.
    #[arg(long)]
    norm: Option<String>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["builtin", "input"]))]
struct GeodesicVerifyArgs {
    /// Catalog curve: p1 (under N_{1,a}) or pinf (under N_{inf,a}).
    #[arg(long, value_parser = ["p1", "pinf"])]
    builtin: Option<String>,
    /// Verify a curve file instead (requires --norm).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Max-family parameter a for --builtin.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Group dimension n for --builtin.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Norm for --in curve files.
    #[arg(long)]
    norm: Option<String>,
    /// Parameter range lo,hi on which the catalog curve is sampled.
    #[arg(long, default_value = "-10,10", allow_hyphen_values = true)]
    range: String,
    /// Point-pair budget for the distance comparisons.
    #[arg(long, default_value_t = 2200)]
    pairs: usize,
}

#[derive(Args)]
struct EmbedVerifyArgs {
    /// Embedding to probe; `builtin:sine` is the sine embedding H^1 -> H^n.
    #[arg(long, default_value = "builtin:sine")]
    map: String,
    /// Target group dimension n (the sine embedding needs n >= 2).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Max-family parameter a shared by source and target norms.
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Number of random point pairs to probe.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Sampling radius.
    #[arg(long, default_value_t = tol::DEFAULT_RADIUS)]
    radius: f64,
}

#[derive(Args)]
struct FitAffineArgs {
    /// `builtin:sine` (requires --n, --a) or a path to a homomorphism-spec JSON file.
    #[arg(long)]
    map: String,
    /// Target group dimension n for builtin maps.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Max-family parameter a for builtin maps.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Target norm for the residual [default: the builtin's own norm, else koranyi].
    #[arg(long)]
    norm: Option<String>,
    /// Size of the independent residual sample set.
    #[arg(long, default_value_t = 128)]
    samples: u64,
    /// Sampling radius.
    #[arg(long, default_value_t = tol::DEFAULT_RADIUS)]
    radius: f64,
}

#[derive(Args)]
struct ConvexityArgs {
    /// Norm descriptor to probe.
    #[arg(long)]
    norm: String,
    /// Property: glp (geodesic linearity), midpoint, or hsc (horizontal strict convexity).
    #[arg(long, value_parser = ["glp", "midpoint", "hsc"])]
    property: String,
    /// Group dimension n of H^n.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Number of random probes for sampling-based verdicts.
    #[arg(long, default_value_t = 5000)]
    samples: u64,
    /// Sampling radius.
    #[arg(long, default_value_t = tol::DEFAULT_RADIUS)]
    radius: f64,
}

#[derive(Args)]
struct IsoperimetrixArgs {
    /// Planar norm: lp:p=<p> or poly:[[x,y],...].
    #[arg(long)]
    planar: String,
    /// Angular resolution (number of model vertices).
    #[arg(long, default_value_t = tol::DEFAULT_ISO_RESOLUTION)]
    resolution: usize,
}

#[derive(Args)]
struct VdistArgs {
    /// Planar norm: lp:p=<p> or poly:[[x,y],...].
    #[arg(long)]
    planar: String,
    /// Height t of the vertical endpoint (0, t).
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// Angular resolution of the isoperimetrix model.
    #[arg(long, default_value_t = tol::DEFAULT_ISO_RESOLUTION)]
    resolution: usize,
}

#[derive(Args)]
#[command(after_help = tolerance_help())]
struct ReproduceArgs {}

fn tolerance_help() -> String {
    let mut s = String::from("Tolerance keys for --tolerance KEY=VALUE (defaults in brackets):\n");
    for (key, default, what) in TOLERANCE_KEYS {
        s.push_str(&format!("  {key:<18} [{default:e}] {what}\n"));
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = run_config(&cli.global)?;
    match &cli.command {
        Command::Dist(args) => cmd_dist(&cli.global, args),
        Command::Norm(args) => cmd_norm(&cli.global, args),
        Command::Lift(args) => cmd_lift(&cli.global, args),
        Command::GeodesicVerify(args) => cmd_geodesic_verify(&cli.global, &cfg, args),
        Command::EmbedVerify(args) => cmd_embed_verify(&cli.global, &cfg, args),
        Command::FitAffine(args) => cmd_fit_affine(&cli.global, &cfg, args),
        Command::Convexity(args) => cmd_convexity(&cli.global, &cfg, args),
        Command::Isoperimetrix(args) => cmd_isoperimetrix(&cli.global, args),
        Command::Vdist(args) => cmd_vdist(&cli.global, args),
        Command::Reproduce(_) => cmd_reproduce(&cli.global, &cfg),
    }
}

// --- shared plumbing --------------------------------------------------------

fn run_config(global: &GlobalOpts) -> Result<RunConfig> {
    let mut overrides = BTreeMap::new();
    for spec in &global.tolerance {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| anyhow!("invalid --tolerance `{spec}`: expected KEY=VALUE"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| anyhow!("invalid --tolerance `{spec}`: `{value}` is not a number"))?;
        overrides.insert(key.trim().to_string(), value);
    }
    let cfg = RunConfig { seed: global.seed, overrides };
    cfg.validate().context("invalid --tolerance")?;
    Ok(cfg)
}

fn parse_norm(s: &str) -> Result<NormDescriptor> {
    s.parse::<NormDescriptor>().context("invalid --norm")
}

fn parse_point(flag: &str, s: &str) -> Result<HeisPoint> {
    let inner = || -> Result<HeisPoint> {
        let fields: Vec<&str> = s.split(',').collect();
        if fields.len() < 3 || fields.len() % 2 == 0 {
            bail!(
                "expected 2n+1 comma-separated reals x_1..x_n,y_1..y_n,t, got {} fields",
                fields.len()
            );
        }
        let values: Vec<f64> = fields
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| anyhow!("field `{f}` is not a number"))
            })
            .collect::<Result<_>>()?;
        let (z, t) = values.split_at(values.len() - 1);
        Ok(HeisPoint::new(z.to_vec(), t[0])?)
    };
    inner().with_context(|| format!("invalid {flag} `{s}`"))
}

/// Rewrites every f64 in a JSON tree as its 17-significant-digit string, so
/// reports are precision-lossless and byte-stable. Integers stay numeric.
fn seventeen_digits(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => Value::String(format_float(n.as_f64().unwrap())),
        Value::Array(xs) => Value::Array(xs.into_iter().map(seventeen_digits).collect()),
        Value::Object(m) => {
            Value::Object(m.into_iter().map(|(k, x)| (k, seventeen_digits(x))).collect())
        }
        other => other,
    }
}

fn resolve_format(global: &GlobalOpts, path: &Path) -> Format {
    global.format.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Format::Csv,
            _ => Format::Json,
        }
    })
}

/// Flattens a JSON report into `field,value` CSV rows (arrays indexed,
/// objects dotted), the degenerate but uniform tabular rendering.
fn flatten_csv(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_csv(&key, x, rows);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten_csv(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn render_report(report: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{:#}\n", report)),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten_csv("", report, &mut rows);
            let mut text = String::from("field,value\n");
            for (k, v) in rows {
                text.push_str(&format!("{k},{v}\n"));
            }
            Ok(text)
        }
    }
}

/// Writes the structured report to --out (if given) in the chosen format.
fn write_report(global: &GlobalOpts, report: Value) -> Result<()> {
    let Some(path) = &global.out else { return Ok(()) };
    let report = seventeen_digits(report);
    let text = render_report(&report, resolve_format(global, path))?;
    std::fs::write(path, text)
        .with_context(|| format!("cannot write --out {}", path.display()))?;
    Ok(())
}

fn verdict_exit(holds: bool) -> u8 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_VIOLATION
    }
}

// --- subcommands ------------------------------------------------------------

fn cmd_dist(global: &GlobalOpts, args: &DistArgs) -> Result<u8> {
    let norm = parse_norm(&args.norm)?;
    let p = parse_point("--p", &args.p)?;
    let q = parse_point("--q", &args.q)?;
    if p.n() != q.n() {
        bail!("--p is in H^{} but --q is in H^{}", p.n(), q.n());
    }
    let d = distance(&norm, &p, &q)
        .with_context(|| format!("cannot evaluate `{norm}` on the given pair"))?;
    println!("{}", format_float(d));
    write_report(
        global,
        json!({
            "command": "dist",
            "norm": norm.to_string(),
            "n": p.n(),
            "p": serde_json::to_value(&p)?,
            "q": serde_json::to_value(&q)?,
            "distance": d,
        }),
    )?;
    Ok(EXIT_HOLDS)
}

fn cmd_norm(global: &GlobalOpts, args: &NormArgs) -> Result<u8> {
    let desc = parse_norm(&args.norm)?;
    let n = GroupDim::new(args.n).context("invalid --n")?;
    let mut exit = EXIT_HOLDS;
    let mut validity_value = Value::Null;

    if args.check_validity {
        if let NormDescriptor::Lpa { p, a } = &desc {
            let v = is_valid_lpa(n, *p, *a);
            validity_value = serde_json::to_value(&v)?;
            if v.valid {
                println!(
                    "validity: {desc} is a homogeneous norm on H^{} (0 < a = {} <= bound = {})",
                    args.n,
                    format_float(*a),
                    format_float(v.bound)
                );
            } else {
                println!(
                    "validity: {desc} is NOT a norm on H^{}: a = {} exceeds the largest \
                     admissible a = {} (threshold: a <= 1 for p <= 2, a <= (2n)^(1/p - 1/2) \
                     for p > 2)",
                    args.n,
                    format_float(*a),
                    format_float(v.bound)
                );
                exit = EXIT_VIOLATION;
            }
        } else {
            validity_value = json!({ "valid": true });
            println!(
                "validity: {desc} is a homogeneous norm on H^{} (no parameter constraints)",
                args.n
            );
        }
    }

    let mut value = Value::Null;
    if let (Some(point), EXIT_HOLDS) = (&args.point, exit) {
        let pt = parse_point("--point", point)?;
        if pt.n() != args.n {
            bail!("invalid --point: expected {} coordinates for H^{}, got a point in H^{}",
                  2 * args.n + 1, args.n, pt.n());
        }
        let v = eval_norm(&desc, &pt)
            .with_context(|| format!("cannot evaluate `{desc}` at --point"))?;
        println!("{}", format_float(v));
        value = json!(v);
    }

    write_report(
        global,
        json!({
            "command": "norm",
            "norm": desc.to_string(),
            "n": args.n,
            "validity": validity_value,
            "value": value,
        }),
    )?;
    Ok(exit)
}

fn cmd_lift(global: &GlobalOpts, args: &LiftArgs) -> Result<u8> {
    let file = File::open(&args.input)
        .with_context(|| format!("cannot open --in {}", args.input.display()))?;
    let table = read_curve_csv(BufReader::new(file))
        .with_context(|| format!("invalid --in {}", args.input.display()))?;
    let rows = table.rows.clone();
    let curve = table
        .into_curve(args.t0)
        .with_context(|| format!("invalid --in {}: stored t column violates the lift recurrence",
                                 args.input.display()))?;

    let k = curve.samples();
    let n = curve.planar_dim() / 2;
    let mut summary = format!(
        "lifted {k} samples in H^{n}: t_end = {}, height gain = {}",
        format_float(curve.heights()[k - 1]),
        format_float(curve.heights()[k - 1] - curve.heights()[0])
    );
    let mut length_value = Value::Null;
    if let Some(norm) = &args.norm {
        let norm = parse_norm(norm)?;
        let len = length(&curve, &norm)
            .with_context(|| format!("cannot measure length under `{norm}`"))?;
        summary.push_str(&format!(", length = {} under {norm}", format_float(len)));
        length_value = json!(len);
    }
    if k >= 2 && rows[0] == rows[k - 1] {
        let area = oriented_loop_area(&rows)?;
        summary.push_str(&format!(", closed loop enclosing area = {}", format_float(area)));
    }

    match &global.out {
        Some(path) => {
            match resolve_format(global, path) {
                Format::Csv => {
                    let file = File::create(path)
                        .with_context(|| format!("cannot write --out {}", path.display()))?;
                    write_curve_csv(BufWriter::new(file), &curve)
                        .with_context(|| format!("cannot write --out {}", path.display()))?;
                }
                Format::Json => {
                    let report = seventeen_digits(json!({
                        "command": "lift",
                        "grid": curve.grid(),
                        "rows": (0..k).map(|i| curve.planar_row(i).to_vec()).collect::<Vec<_>>(),
                        "heights": curve.heights(),
                        "length": length_value,
                    }));
                    std::fs::write(path, format!("{:#}\n", report))
                        .with_context(|| format!("cannot write --out {}", path.display()))?;
                }
            }
            println!("{summary}");
            println!("written to {}", path.display());
        }
        None => {
            // Without --out the lifted table itself is the product.
            let stdout = std::io::stdout();
            write_curve_csv(stdout.lock(), &curve).context("cannot write curve to stdout")?;
        }
    }
    Ok(EXIT_HOLDS)
}

fn cmd_geodesic_verify(global: &GlobalOpts, cfg: &RunConfig, args: &GeodesicVerifyArgs) -> Result<u8> {
    let tolerance = cfg.tol("geodesic");
    let (label, report) = if let Some(builtin) = &args.builtin {
        let a = args.a.ok_or_else(|| anyhow!("--builtin requires --a"))?;
        let n = GroupDim::new(args.n).context("invalid --n")?;
        let (lo, hi) = parse_range(&args.range)?;
        let curve = match builtin.as_str() {
            "p1" => CatalogGeodesic::p1(n, a),
            _ => CatalogGeodesic::p_inf(n, a),
        }
        .context("invalid --a")?;
        let report = curve.verify(lo, hi, args.pairs, tolerance)?;
        (format!("catalog {builtin} curve under {} on H^{}", curve.norm(), args.n), report)
    } else {
        let path = args.input.as_ref().unwrap();
        let norm = args
            .norm
            .as_ref()
            .ok_or_else(|| anyhow!("--in requires --norm"))
            .and_then(|s| parse_norm(s))?;
        let file = File::open(path)
            .with_context(|| format!("cannot open --in {}", path.display()))?;
        let curve = read_curve_csv(BufReader::new(file))
            .with_context(|| format!("invalid --in {}", path.display()))?
            .into_curve(0.0)
            .with_context(|| format!("invalid --in {}", path.display()))?;
        let report = verify_geodesic(&curve, &norm, args.pairs, tolerance)?;
        (format!("curve {} under {norm}", path.display()), report)
    };

    println!(
        "geodesic: {} — worst defect {} over {} pairs at (s, s') = ({}, {}), tolerance {}",
        report.is_geodesic,
        format_float(report.worst_defect),
        report.pairs_tested,
        format_float(report.worst_pair.0),
        format_float(report.worst_pair.1),
        format_float(report.tolerance)
    );
    let holds = report.is_geodesic;
    write_report(
        global,
        json!({
            "command": "geodesic-verify",
            "subject": label,
            "report": serde_json::to_value(&report)?,
        }),
    )?;
    Ok(verdict_exit(holds))
}

fn cmd_embed_verify(global: &GlobalOpts, cfg: &RunConfig, args: &EmbedVerifyArgs) -> Result<u8> {
    if args.map != "builtin:sine" {
        bail!("invalid --map `{}`: only builtin:sine is available", args.map);
    }
    let n = GroupDim::new(args.n).context("invalid --n")?;
    let embedding = SineEmbedding::new(n, args.a).context("invalid --n/--a for builtin:sine")?;
    let report = heisengeo::homs::isometry_probe(
        |p| embedding.eval(p),
        (&embedding.source_norm(), GroupDim::new(1)?),
        (&embedding.target_norm(), n),
        args.samples,
        cfg.stream(600),
        args.radius,
        cfg.tol("isometry"),
    )?;
    println!(
        "isometry: {} — worst defect {} over {} pairs, tolerance {}",
        report.is_isometry,
        format_float(report.worst_defect),
        report.samples_tested,
        format_float(report.tolerance)
    );
    let holds = report.is_isometry;
    write_report(
        global,
        json!({
            "command": "embed-verify",
            "map": args.map,
            "n": args.n,
            "a": args.a,
            "report": serde_json::to_value(&report)?,
        }),
    )?;
    Ok(verdict_exit(holds))
}

fn cmd_fit_affine(global: &GlobalOpts, cfg: &RunConfig, args: &FitAffineArgs) -> Result<u8> {
    let design = FitDesign {
        residual_samples: args.samples,
        seed: cfg.stream(700),
        radius: args.radius,
        tolerance: cfg.tol("affine-residual"),
    };
    let (label, report) = if args.map == "builtin:sine" {
        let a = args.a.ok_or_else(|| anyhow!("--map builtin:sine requires --a"))?;
        let n = GroupDim::new(args.n).context("invalid --n")?;
        let embedding = SineEmbedding::new(n, a).context("invalid --n/--a for builtin:sine")?;
        let norm = match &args.norm {
            Some(s) => parse_norm(s)?,
            None => embedding.target_norm(),
        };
        let report = fit_affine(|p| embedding.eval(p), GroupDim::new(1)?, (&norm, n), &design)?;
        (format!("builtin:sine into H^{} under {norm}", args.n), report)
    } else {
        let path = Path::new(&args.map);
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read --map {}", path.display()))?;
        let spec: HomSpec = serde_json::from_str(&text)
            .map_err(|e| anyhow!("invalid --map {}: {e}", path.display()))?;
        let n = GroupDim::new(spec.n())?;
        let norm = match &args.norm {
            Some(s) => parse_norm(s)?,
            None => NormDescriptor::Koranyi,
        };
        let report = match spec.source() {
            SourceKind::Heisenberg => {
                fit_affine(|p| spec.apply(p), GroupDim::new(spec.m())?, (&norm, n), &design)?
            }
            SourceKind::Euclidean => {
                fit_affine_euclidean(|x| spec.apply_euclidean(x), spec.m(), (&norm, n), &design)?
            }
        };
        (format!("{} under {norm}", path.display()), report)
    };

    println!(
        "affine: {} — residual {} over {} samples, tolerance {}, hom constraint residual {}",
        report.is_affine,
        format_float(report.residual),
        args.samples,
        format_float(design.tolerance),
        format_float(report.constraint_residual)
    );
    let holds = report.is_affine;
    write_report(
        global,
        json!({
            "command": "fit-affine",
            "subject": label,
            "report": serde_json::to_value(&report)?,
        }),
    )?;
    Ok(verdict_exit(holds))
}

fn cmd_convexity(global: &GlobalOpts, cfg: &RunConfig, args: &ConvexityArgs) -> Result<u8> {
    let desc = parse_norm(&args.norm)?;
    let n = GroupDim::new(args.n).context("invalid --n")?;
    let seed = cfg.stream(800);

    // The max family's geodesic-linearity verdict is a closed classification
    // in p; everything else goes through the sampling probes.
    if args.property == "glp" {
        if let NormDescriptor::Lpa { p, a } = &desc {
            let classification = classify_glp_lpa(*p);
            let witness = classification.witness_for(n, *a).context("invalid --norm")?;
            let holds = classification.glp_holds;
            println!(
                "glp: {} for {desc} on H^{} (classified) — {}",
                if holds { "holds" } else { "fails" },
                args.n,
                classification.provenance
            );
            if let Some(ConvexityWitness::NonlinearGeodesic {
                catalog,
                geodesic_defect,
                collinearity_defect,
                ..
            }) = &witness
            {
                println!(
                    "witness: catalog {} geodesic, geodesic defect {}, collinearity defect {}",
                    format!("{catalog:?}").to_lowercase(),
                    format_float(*geodesic_defect),
                    format_float(*collinearity_defect)
                );
            }
            write_report(
                global,
                json!({
                    "command": "convexity",
                    "norm": desc.to_string(),
                    "n": args.n,
                    "property": "glp",
                    "classification": serde_json::to_value(&classification)?,
                    "witness": serde_json::to_value(&witness)?,
                }),
            )?;
            return Ok(verdict_exit(holds));
        }
    }

    let report: ConvexityReport = match args.property.as_str() {
        "glp" => glp_necessary_condition(&desc, n)?,
        "midpoint" => probe_midpoint(&desc, n, args.samples, seed, args.radius)?,
        _ => probe_horizontal_strict_convexity(&desc, n, args.samples, seed, args.radius)?,
    };
    let word = match report.holds {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "undetermined",
    };
    let how = match report.verdict {
        ConvexityVerdict::HoldsOnSamples => "on samples",
        ConvexityVerdict::CounterexampleFound => "counterexample found",
        ConvexityVerdict::ClassifiedByTheorem => "classified",
        ConvexityVerdict::Undetermined => "probe exhausted",
    };
    println!(
        "{}: {word} for {desc} on H^{} ({how}, {} samples) — {}",
        args.property, args.n, report.samples_tested, report.provenance
    );
    if let Some(ConvexityWitness::MidpointTriple { d12, d1q, d2q, midpoint_offset, .. }) =
        &report.witness
    {
        println!(
            "witness: d(p1,p2) = {}, d(p1,q) = {}, d(p2,q) = {}, offset from affine midpoint = {}",
            format_float(*d12),
            format_float(*d1q),
            format_float(*d2q),
            format_float(*midpoint_offset)
        );
    }
    let holds = report.holds.unwrap_or(true);
    write_report(
        global,
        json!({
            "command": "convexity",
            "norm": desc.to_string(),
            "n": args.n,
            "property": args.property,
            "report": serde_json::to_value(&report)?,
        }),
    )?;
    Ok(verdict_exit(holds))
}

fn cmd_isoperimetrix(global: &GlobalOpts, args: &IsoperimetrixArgs) -> Result<u8> {
    let planar: PlanarNormDescriptor = args.planar.parse().context("invalid --planar")?;
    let model = build_isoperimetrix(&planar, args.resolution).context("invalid --resolution")?;
    println!(
        "isoperimetrix for {planar} at resolution {}: length = {}, area = {}",
        model.resolution,
        format_float(model.length),
        format_float(model.area)
    );
    if let Some(path) = &global.out {
        match resolve_format(global, path) {
            Format::Csv => {
                let mut text = String::from("x,y\n");
                for v in &model.vertices {
                    text.push_str(&format!("{},{}\n", format_float(v[0]), format_float(v[1])));
                }
                std::fs::write(path, text)
                    .with_context(|| format!("cannot write --out {}", path.display()))?;
            }
            Format::Json => {
                let report = seventeen_digits(json!({
                    "command": "isoperimetrix",
                    "planar": planar.to_string(),
                    "model": serde_json::to_value(&model)?,
                }));
                std::fs::write(path, format!("{:#}\n", report))
                    .with_context(|| format!("cannot write --out {}", path.display()))?;
            }
        }
        println!("written to {}", path.display());
    }
    Ok(EXIT_HOLDS)
}

fn cmd_vdist(global: &GlobalOpts, args: &VdistArgs) -> Result<u8> {
    let planar: PlanarNormDescriptor = args.planar.parse().context("invalid --planar")?;
    let value = vertical_distance(&planar, args.t, args.resolution)
        .context("invalid --t/--resolution")?;
    println!("{}", format_float(value));
    write_report(
        global,
        json!({
            "command": "vdist",
            "planar": planar.to_string(),
            "t": args.t,
            "resolution": args.resolution,
            "value": value,
        }),
    )?;
    Ok(EXIT_HOLDS)
}

fn cmd_reproduce(global: &GlobalOpts, cfg: &RunConfig) -> Result<u8> {
    let started = Instant::now();
    let outcomes = run_all(cfg).context("acceptance suite failed to run")?;
    for outcome in &outcomes {
        println!("{}", outcome.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();

    // A criterion that fails under overridden tolerances but passes at the
    // defaults is tolerance-induced, not a defect.
    let mut tolerance_induced: Vec<u32> = Vec::new();
    if !failed.is_empty() && !cfg.overrides.is_empty() {
        let baseline = run_all(&RunConfig { seed: cfg.seed, overrides: BTreeMap::new() })
            .context("acceptance suite failed to run at default tolerances")?;
        tolerance_induced = failed
            .iter()
            .copied()
            .filter(|id| baseline.iter().any(|o| o.id == *id && o.passed))
            .collect();
        for id in &tolerance_induced {
            println!(
                "tolerance-induced failure: criterion {id:02} fails only under the overridden \
                 tolerances (passes at defaults)"
            );
        }
    }

    let passed = outcomes.len() - failed.len();
    println!(
        "summary: {}",
        json!({
            "criteria": outcomes.len(),
            "passed": passed,
            "failed": failed,
            "tolerance_induced": tolerance_induced,
            "seed": cfg.seed,
        })
    );
    // Wall time goes to stderr so stdout is byte-stable across runs.
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());

    write_report(
        global,
        json!({
            "command": "reproduce",
            "seed": cfg.seed,
            "overrides": cfg.overrides,
            "criteria": serde_json::to_value(&outcomes)?,
            "all_passed": failed.is_empty(),
            "tolerance_induced": tolerance_induced,
        }),
    )?;
    Ok(verdict_exit(failed.is_empty()))
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let err = || anyhow!("invalid --range `{s}`: expected lo,hi with lo < hi");
    let (lo, hi) = s.split_once(',').ok_or_else(err)?;
    let lo: f64 = lo.trim().parse().map_err(|_| err())?;
    let hi: f64 = hi.trim().parse().map_err(|_| err())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(err());
    }
    Ok((lo, hi))
}
