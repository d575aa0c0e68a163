//! `apoly`: command-line front end for the A-polynomial integral and
//! Seifert volume computations.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! runtime errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use apoly_core::config::TraceOptions;
use apoly_core::curve::{branch_point, solve_surgery_default, trace, BranchId, SurgerySpec};
use apoly_core::identities::{
    find_identity, integrate_segment, Identity, SegmentOptions, SurgeryPointId,
};
use apoly_core::mahler::mahler_measure;
use apoly_core::plot::emit_plot;
use apoly_core::seifert::SeifertData;
use apoly_core::verify::{verify_paper_with, VerifyConfig, VerifyInputs};
use apoly_core::{builtin, KnotId, LaurentPoly2, Method, SlTildeElt};

#[derive(Parser)]
#[command(
    name = "apoly",
    version,
    about = "Logarithmic integrals on A-polynomial curves and Seifert volumes"
)]
struct Cli {
    /// Emit JSON instead of text where both are available.
    #[arg(long, global = true)]
    json: bool,

    /// Absolute tolerance for pass/fail comparisons (and the Mahler default).
    #[arg(long, global = true, value_name = "TOL")]
    tolerance: Option<f64>,

    /// Tighter quadrature with compensated summation.
    #[arg(long, global = true)]
    extended_precision: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registry knots, surgery points and identities.
    List,
    /// Print a registry polynomial and its structural properties.
    Show { knot: KnotId },
    /// Check even powers of x and reciprocity for a knot or a polynomial.
    Verify(VerifyArgs),
    /// Sample a branch (CSV `s,...`) or trace between surgery points (CSV `arclength,...`).
    Trace(TraceArgs),
    /// Surgery point on the real branch as JSON.
    #[command(allow_negative_numbers = true)]
    SurgeryPoint {
        #[arg(long)]
        knot: KnotId,
        #[arg(short, allow_hyphen_values = true)]
        p: i64,
        #[arg(short, allow_hyphen_values = true)]
        q: i64,
    },
    /// Integral of log x dy/y - log y dx/x between two surgery points.
    Integrate(IntegrateArgs),
    /// Euler number, Euler characteristic and Seifert volume.
    #[command(allow_negative_numbers = true)]
    SeifertVolume {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Singular fiber `p,q`; repeatable.
        #[arg(long = "fiber", value_name = "P,Q", allow_hyphen_values = true)]
        fibers: Vec<String>,
    },
    /// Operations in the universal cover of PSL(2,R).
    Sl2 {
        #[command(subcommand)]
        op: Sl2Command,
    },
    /// Logarithmic Mahler measure of a two-variable polynomial.
    Mahler {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reproduce every identity and report each check.
    VerifyPaper {
        /// Run independent checks concurrently (report order is fixed).
        #[arg(long)]
        parallel: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// SVG view of a branch with its surgery points.
    Plot {
        #[arg(long)]
        knot: KnotId,
        #[arg(long, allow_hyphen_values = true)]
        s_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        s_max: Option<f64>,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    knot: Option<KnotId>,
    #[arg(long, conflicts_with = "knot")]
    poly: Option<String>,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long)]
    knot: KnotId,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    s_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 3.0)]
    s_max: f64,
    #[arg(long, default_value_t = 301)]
    samples: usize,
    /// Start at this surgery point and trace the polynomial's zero set.
    #[arg(
        long,
        value_name = "P,Q",
        allow_hyphen_values = true,
        requires = "to_surgery"
    )]
    from_surgery: Option<SurgerySpec>,
    #[arg(
        long,
        value_name = "P,Q",
        allow_hyphen_values = true,
        requires = "from_surgery"
    )]
    to_surgery: Option<SurgerySpec>,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IntegrateArgs {
    #[arg(long)]
    knot: KnotId,
    #[arg(long, value_name = "P,Q", allow_hyphen_values = true)]
    from_surgery: SurgerySpec,
    #[arg(long, value_name = "P,Q", allow_hyphen_values = true)]
    to_surgery: SurgerySpec,
    #[arg(long, value_enum, default_value_t = MethodArg::Param)]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Param,
    Traced,
}

#[derive(Subcommand)]
enum Sl2Command {
    /// Product of two elements given as `re,im,omega`.
    #[command(allow_negative_numbers = true)]
    Compose {
        #[arg(allow_hyphen_values = true, value_name = "RE,IM,OMEGA")]
        g: String,
        #[arg(allow_hyphen_values = true, value_name = "RE,IM,OMEGA")]
        h: String,
    },
}

fn parse_element(s: &str) -> Result<SlTildeElt> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("expected 're,im,omega', got '{s}'"))?;
    let [re, im, omega] = parts[..] else {
        bail!("expected 're,im,omega', got '{s}'");
    };
    Ok(SlTildeElt::new(Complex64::new(re, im), omega)?)
}

fn parse_fiber(s: &str) -> Result<(i64, i64)> {
    let (p, q) = s
        .split_once(',')
        .with_context(|| format!("expected 'p,q', got '{s}'"))?;
    Ok((p.trim().parse()?, q.trim().parse()?))
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn structure_json(p: &LaurentPoly2) -> Value {
    json!({
        "polynomial": p.to_string(),
        "terms": p.len(),
        "even_x": p.check_even_x(),
        "reciprocal": p.check_reciprocal(),
    })
}

fn cmd_list(cli: &Cli) -> Result<ExitCode> {
    let knots: Vec<Value> = KnotId::ALL
        .iter()
        .map(|&k| json!({"id": k.name(), "description": k.description(), "polynomial": builtin(k).to_string()}))
        .collect();
    let points: Vec<Value> = SurgeryPointId::ALL
        .iter()
        .map(|id| {
            json!({
                "name": id.name(),
                "knot": id.branch().knot().name(),
                "slope": id.spec().to_string(),
                "x": id.reported_x(),
                "manifold": id.manifold().map(|m| m.name()),
            })
        })
        .collect();
    let identities: Vec<Value> = Identity::ALL
        .iter()
        .map(|i| json!({"segment": i.name(), "integral": i.expected().to_string(), "gv_difference": i.expected_gv().to_string()}))
        .collect();
    if cli.json {
        print_json(&json!({"knots": knots, "surgery_points": points, "identities": identities}))?;
    } else {
        println!("knots:");
        for k in KnotId::ALL {
            println!("  {:<5} {}", k.name(), k.description());
        }
        println!("surgery points:");
        for id in SurgeryPointId::ALL {
            let m = id.manifold().map_or("-", |m| m.name());
            println!(
                "  {:<3} {:<5} slope {:>5}  x ~ {:.10}  {}",
                id.name(),
                id.branch().knot().name(),
                id.spec().to_string(),
                id.reported_x(),
                m
            );
        }
        println!("identities:");
        for i in Identity::ALL {
            println!(
                "  {:<7} integral = {:<16} GV difference = {}",
                i.name(),
                i.expected().to_string(),
                i.expected_gv()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_show(cli: &Cli, knot: KnotId) -> Result<ExitCode> {
    let p = builtin(knot);
    if cli.json {
        let mut v = structure_json(&p);
        v["id"] = json!(knot.name());
        v["description"] = json!(knot.description());
        print_json(&v)?;
    } else {
        println!("{} ({})", knot.name(), knot.description());
        println!("A(x,y) = {p}");
        println!(
            "terms: {}, even in x: {}, reciprocal: {}",
            p.len(),
            p.check_even_x(),
            p.check_reciprocal()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode> {
    let p = match (&args.poly, args.knot) {
        (Some(text), _) => text.parse::<LaurentPoly2>()?,
        (None, Some(k)) => builtin(k),
        (None, None) => bail!("give a knot or --poly"),
    };
    let ok = p.check_even_x() && p.check_reciprocal();
    if cli.json {
        let mut v = structure_json(&p);
        v["pass"] = json!(ok);
        print_json(&v)?;
    } else {
        println!("even in x: {}", p.check_even_x());
        println!("reciprocal: {}", p.check_reciprocal());
        println!("{}", if ok { "PASS" } else { "FAIL" });
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_trace(args: &TraceArgs) -> Result<ExitCode> {
    let branch = BranchId::for_knot(args.knot);
    let mut csv = String::new();
    match (args.from_surgery, args.to_surgery) {
        (Some(from), Some(to)) => {
            let poly = builtin(args.knot);
            let start = solve_surgery_default(branch, from)?;
            let path = trace(&poly, &start.point, to, &TraceOptions::with_step(args.step))?;
            csv.push_str("arclength,x,y,a,b,residual\n");
            for (l, p) in path.arclength.iter().zip(&path.points) {
                csv += &format!("{l},{},{},{},{},{:e}\n", p.x, p.y, p.a, p.b, p.residual);
            }
        }
        _ => {
            if args.samples < 2 {
                bail!("--samples must be at least 2");
            }
            csv.push_str("s,x,y,a,b,residual\n");
            for k in 0..args.samples {
                let s =
                    args.s_min + (args.s_max - args.s_min) * k as f64 / (args.samples - 1) as f64;
                let p = branch_point(branch, s)?.point;
                csv += &format!("{s},{},{},{},{},{:e}\n", p.x, p.y, p.a, p.b, p.residual);
            }
        }
    }
    match &args.output {
        Some(path) => {
            fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_surgery_point(knot: KnotId, p: i64, q: i64) -> Result<ExitCode> {
    let spec = SurgerySpec::new(p, q)?;
    let sol = solve_surgery_default(BranchId::for_knot(knot), spec)?;
    let pt = sol.point;
    print_json(&json!({
        "knot": knot.name(),
        "p": p,
        "q": q,
        "s": sol.s,
        "x": pt.x,
        "y": pt.y,
        "a": pt.a,
        "b": pt.b,
        "residual": pt.residual,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_integrate(cli: &Cli, args: &IntegrateArgs) -> Result<ExitCode> {
    let branch = BranchId::for_knot(args.knot);
    let opts = if cli.extended_precision {
        SegmentOptions::extended()
    } else {
        SegmentOptions::default()
    };
    let method = match args.method {
        MethodArg::Param => Method::Parametrized,
        MethodArg::Traced => Method::Traced,
    };
    let poly = builtin(args.knot);
    let r = integrate_segment(
        &poly,
        branch,
        args.from_surgery,
        args.to_surgery,
        method,
        &opts,
    )?;
    let tol = cli.tolerance.unwrap_or(1e-6);
    let expected = find_identity(args.knot, args.from_surgery, args.to_surgery);
    let abs_error = expected.as_ref().map(|e| (r.value - e.to_f64()).abs());
    let pass = abs_error.map(|e| e <= tol);
    print_json(&json!({
        "knot": args.knot.name(),
        "from": args.from_surgery.to_string(),
        "to": args.to_surgery.to_string(),
        "method": r.method,
        "value": r.value,
        "error_estimate": r.error_estimate,
        "gv_difference": -4.0 * r.value,
        "expected": expected.as_ref().map(|e| e.to_string()),
        "expected_value": expected.as_ref().map(|e| e.to_f64()),
        "abs_error": abs_error,
        "tolerance": tol,
        "pass": pass,
    }))?;
    Ok(if pass == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_seifert(genus: u32, fibers: &[String]) -> Result<ExitCode> {
    let fibers = fibers
        .iter()
        .map(|f| parse_fiber(f))
        .collect::<Result<Vec<_>>>()?;
    let d = SeifertData::new(genus, &fibers)?;
    let vol = d.seifert_volume();
    print_json(&json!({
        "data": d.to_string(),
        "e": d.euler_number().to_string(),
        "chi": d.euler_characteristic().to_string(),
        "volume_rational": vol.coefficient_string(),
        "volume": vol.to_string(),
        "volume_decimal": vol.to_f64(),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sl2(op: &Sl2Command) -> Result<ExitCode> {
    let Sl2Command::Compose { g, h } = op;
    let (g, h) = (parse_element(g)?, parse_element(h)?);
    let r = g.compose(&h);
    print_json(&json!({
        "gamma": {"re": r.gamma().re, "im": r.gamma().im},
        "omega": r.omega(),
        "trace": r.trace(),
        "class": r.classify(),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_mahler(cli: &Cli, poly: &str, tol: Option<f64>) -> Result<ExitCode> {
    let p: LaurentPoly2 = poly.parse()?;
    let tol = tol.or(cli.tolerance).unwrap_or(1e-6);
    let m = mahler_measure(&p, tol)?;
    print_json(&json!({
        "polynomial": p.to_string(),
        "value": m.value,
        "error_estimate": m.error_estimate,
        "theta_panels": m.theta_panels,
        "tolerance": tol,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_paper(cli: &Cli, parallel: bool, output: Option<&PathBuf>) -> Result<ExitCode> {
    let mut config = cli
        .tolerance
        .map_or_else(VerifyConfig::default, VerifyConfig::with_tolerance);
    config.parallel = parallel;
    config.extended_precision = cli.extended_precision;
    let report = verify_paper_with(&VerifyInputs::default(), &config);
    if let Some(path) = output {
        fs::write(path, report.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    Ok(if report.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_plot(
    knot: KnotId,
    s_min: Option<f64>,
    s_max: Option<f64>,
    output: &Path,
) -> Result<ExitCode> {
    let branch = BranchId::for_knot(knot);
    let default = match branch {
        BranchId::Fig8C => (0.0, 3.0),
        BranchId::K52C => (0.1, 3.0),
    };
    let (s0, s1) = (s_min.unwrap_or(default.0), s_max.unwrap_or(default.1));
    if !branch.contains(s0) || !branch.contains(s1) {
        bail!("s range [{s0}, {s1}] is outside the {branch} domain");
    }
    emit_plot(branch, s0, s1, output).with_context(|| format!("writing {}", output.display()))?;
    eprintln!("wrote {}", output.display());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            bail!("--tolerance must be positive, got {t}");
        }
    }
    match &cli.command {
        Command::List => cmd_list(cli),
        Command::Show { knot } => cmd_show(cli, *knot),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Trace(args) => cmd_trace(args),
        Command::SurgeryPoint { knot, p, q } => cmd_surgery_point(*knot, *p, *q),
        Command::Integrate(args) => cmd_integrate(cli, args),
        Command::SeifertVolume { genus, fibers } => cmd_seifert(*genus, fibers),
        Command::Sl2 { op } => cmd_sl2(op),
        Command::Mahler { poly, tol } => cmd_mahler(cli, poly, *tol),
        Command::VerifyPaper { parallel, output } => {
            cmd_verify_paper(cli, *parallel, output.as_ref())
        }
        Command::Plot {
            knot,
            s_min,
            s_max,
            output,
        } => cmd_plot(*knot, *s_min, *s_max, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
