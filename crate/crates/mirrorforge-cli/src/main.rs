use clap::{Args, Parser, Subcommand};
use mirrorforge::affine_structures::{
    affine_monodromy_from_periods, build_B_CPS, build_B_CPS_prime, compare_to_BCPS_prime, parabolic_class, q_grid, sample_syz_base,
    trace_affine_line, AffineAtlas,
};
use mirrorforge::disc_potentials::{disc_potential, verify_table, wall_crossing_substitute, MonotoneFanData, WallCrossingRule};
use mirrorforge::lattice_toric::{dual_polytope, minus_one_report, parse_points, summarize, FIXTURES};
use mirrorforge::novikov::{parse_series, skeleton_valuation_image, verify_cover, AnAtlas, QSeries, Q};
use mirrorforge::periods::{
    circle_loop, critical_values, default_region, ramification_points, route, CycleCombination, CyclePath, PeriodEngine,
};
use mirrorforge::repro::{lookup, run_all, run_selected, ReproConfig, CRITERIA};
use mirrorforge::surface_lattice::{euler_configuration_check, parse_configuration, parse_script, run_appendix_a, run_script};
use mirrorforge::{svg, Polytope};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mirrorforge", version, about = "Periods, affine structures and disc potentials of toric del Pezzo mirrors")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Quadrature tolerance (absolute and relative).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Novikov truncation exponent.
    #[arg(long, global = true)]
    cutoff: Option<i64>,
    /// Base point grid `re0:re1:n,im0:im1:m`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,
    /// JSON output file (`-` or `json` for stdout).
    #[arg(long, global = true)]
    out: Option<String>,
    /// SVG picture output file.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Sampling seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Polytopes, fans and the -1 checks.
    Toric {
        #[command(subcommand)]
        cmd: ToricCmd,
    },
    /// Period integrals over the q-line.
    Periods {
        #[command(subcommand)]
        cmd: PeriodsCmd,
    },
    /// Affine manifolds with singularities.
    Affine {
        #[command(subcommand)]
        cmd: AffineCmd,
    },
    /// Novikov series and A_n chart atlases.
    Novikov {
        #[command(subcommand)]
        cmd: NovikovCmd,
    },
    /// Disc potentials and wall-crossing.
    Potential(PotentialArgs),
    /// Picard lattices of blowups.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Run acceptance checks by name or number, or `all`.
    Repro {
        #[arg(required = true)]
        criteria: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Restrict W of the dual polygon to every toric divisor.
    MinusOne {
        #[arg(long)]
        polytope: String,
    },
    /// Polar dual of a reflexive polygon.
    Dual {
        #[arg(long)]
        polytope: String,
    },
    /// Vertices, normal fan and reflexivity.
    Info {
        #[arg(long)]
        polytope: String,
    },
}

#[derive(Subcommand)]
enum PeriodsCmd {
    /// Branch points of the fibre over q.
    Ramification {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Critical values of the superpotential.
    Critical,
    /// Period derivatives of cycle combinations over `--grid`.
    Sweep {
        #[arg(long, default_value = "a,b")]
        cycles: String,
    },
    /// Monodromy of (a, b) around a circle.
    Monodromy {
        #[arg(long, allow_hyphen_values = true)]
        center: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
}

#[derive(Subcommand)]
enum AffineCmd {
    /// Atlas data, local and large-loop monodromies.
    Atlas {
        #[arg(long, default_value = "b-cps-prime")]
        name: String,
    },
    /// Trace an affine line through the cuts.
    Trace {
        #[arg(long, default_value = "b-cps")]
        atlas: String,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        length: f64,
    },
    /// Affine coordinates of the period map over `--grid` (upper half plane).
    Syz,
    /// Compare the period affine structure with the model atlas.
    Compare {
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum NovikovCmd {
    /// Check that the charts cover uv = z^n.
    VerifyCover {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Valuation image of the skeleton at val z = s.
    Skeleton {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
    },
    /// Normalize a series literal such as `2T^0 + 1T^0.5 - 3T^2`.
    Series {
        #[arg(allow_hyphen_values = true)]
        literal: String,
        /// Also invert it up to `--cutoff`.
        #[arg(long)]
        inv: bool,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct PotentialArgs {
    /// Counterclockwise facet normals, `x,y;x,y;...`.
    #[arg(long, allow_hyphen_values = true)]
    normals: Option<String>,
    #[command(subcommand)]
    cmd: Option<PotentialCmd>,
}

#[derive(Subcommand)]
enum PotentialCmd {
    /// Rewrite the potential across a wall.
    Wallcross {
        #[arg(long, allow_hyphen_values = true, default_value = "1,1;-1,1;-1,-1;1,-1")]
        normals: String,
        #[arg(long)]
        rule: String,
    },
    /// All rows of the bundled table.
    Table,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Scripted rational elliptic surface of degree d.
    #[command(name = "appendixA", alias = "appendix-a")]
    AppendixA {
        #[arg(long)]
        d: u32,
        /// `json` or `text`.
        #[arg(long, default_value = "json")]
        report: String,
    },
    /// Run a blowup script file.
    Script {
        #[arg(long)]
        file: PathBuf,
    },
    /// Check that a singular fibre configuration has Euler sum 12.
    Euler { configuration: String },
}

enum Failure {
    Usage(String),
    Check(Value),
}

type Outcome = Result<Value, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn check(pass: bool, v: Value) -> Outcome {
    if pass {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn compute_err(e: impl std::fmt::Display) -> Failure {
    Failure::Check(json!({ "error": e.to_string() }))
}

/// `-2`, `1.5i`, `-2+0.5i`, `-2,0.5`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("bad complex number '{}'", s);
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' && bytes[k - 1] != b'E');
    let im = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(body[..k].parse().map_err(|_| bad())?, im(&body[k..])?)),
        None => Ok(Complex64::new(0.0, im(body)?)),
    }
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| format!("bad point '{}'", s))?;
    match v[..] {
        [x, y] => Ok([x, y]),
        _ => Err(format!("bad point '{}'", s)),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64, usize), String> {
    let p: Vec<&str> = s.split(':').collect();
    let bad = || format!("bad grid range '{}' (expected a:b:n)", s);
    if p.len() != 3 {
        return Err(bad());
    }
    let n: usize = p[2].parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok((p[0].parse().map_err(|_| bad())?, p[1].parse().map_err(|_| bad())?, n))
}

fn parse_grid(s: &str) -> Result<Vec<Complex64>, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("bad grid '{}' (expected re0:re1:n,im0:im1:m)", s))?;
    Ok(q_grid(parse_range(re)?, parse_range(im)?))
}

fn engine(c: &Common) -> Result<PeriodEngine<f64>, Failure> {
    match c.tol {
        Some(t) if !(t > 0.0) => Err(usage("--tol must be positive")),
        Some(t) => Ok(PeriodEngine::with_tol(t)),
        None => Ok(PeriodEngine::default()),
    }
}

fn atlas_by_name(name: &str) -> Result<AffineAtlas, Failure> {
    match name.to_ascii_lowercase().replace('_', "-").as_str() {
        "b-cps" | "bcps" => Ok(build_B_CPS()),
        "b-cps-prime" | "b-cps'" | "bcps-prime" => Ok(build_B_CPS_prime()),
        _ => Err(usage(format!("unknown atlas '{}' (b-cps or b-cps-prime)", name))),
    }
}

/// A polygon file, falling back to the bundled fixture of the same name.
fn load_polytope(path: &str) -> Result<Polytope, Failure> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let base = std::path::Path::new(path).file_name().and_then(|f| f.to_str()).unwrap_or(path);
            match FIXTURES.iter().find(|(n, _)| *n == base || n.trim_end_matches(".txt") == base) {
                Some((_, t)) => t.to_string(),
                None => return Err(usage(format!("{}: {}", path, e))),
            }
        }
    };
    let pts = parse_points(&text).map_err(usage)?;
    Polytope::from_i64(&pts).map_err(usage)
}

fn write_svg(c: &Common, body: impl FnOnce() -> String) -> Result<(), Failure> {
    if let Some(p) = &c.svg {
        std::fs::write(p, body()).map_err(|e| usage(format!("{}: {}", p.display(), e)))?;
    }
    Ok(())
}

fn toric(cmd: ToricCmd) -> Outcome {
    match cmd {
        ToricCmd::MinusOne { polytope } => {
            let delta = load_polytope(&polytope)?;
            let r = minus_one_report(&delta).map_err(compute_err)?;
            check(r.pass, serde_json::to_value(&r).unwrap())
        }
        ToricCmd::Dual { polytope } => {
            let delta = load_polytope(&polytope)?;
            let nabla = dual_polytope(&delta).map_err(compute_err)?;
            Ok(json!({ "delta": summarize(&delta).map_err(compute_err)?, "dual": summarize(&nabla).map_err(compute_err)? }))
        }
        ToricCmd::Info { polytope } => {
            let delta = load_polytope(&polytope)?;
            Ok(serde_json::to_value(summarize(&delta).map_err(compute_err)?).unwrap())
        }
    }
}

fn periods(cmd: PeriodsCmd, c: &Common) -> Outcome {
    let e = engine(c)?;
    match cmd {
        PeriodsCmd::Ramification { q } => {
            let q = parse_complex(&q).map_err(usage)?;
            let r = ramification_points(q);
            if c.svg.is_some() {
                let path = route(q, default_region(q)).map_err(compute_err)?;
                let cycles = CyclePath::<f64>::reference()
                    .iter()
                    .map(|cy| e.transport_along(cy, &path))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(compute_err)?;
                write_svg(c, || svg::cycles_svg(&cycles))?;
            }
            Ok(json!({ "q": [q.re, q.im], "roots": r.roots, "collisions": r.collisions(1e-12) }))
        }
        PeriodsCmd::Critical => Ok(json!({ "critical_values": critical_values() })),
        PeriodsCmd::Sweep { cycles } => {
            let grid = parse_grid(c.grid.as_deref().ok_or_else(|| usage("sweep needs --grid re0:re1:n,im0:im1:m"))?).map_err(usage)?;
            let combos = cycles.split(',').map(CycleCombination::parse).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            let rows = e.sweep(&grid, &combos).map_err(compute_err)?;
            let ok = rows.iter().all(|r| r.converged);
            check(ok, serde_json::to_value(&rows).unwrap())
        }
        PeriodsCmd::Monodromy { center, radius, points } => {
            if !(radius > 0.0) || points < 8 {
                return Err(usage("--radius must be positive and --points at least 8"));
            }
            let center_q = Complex64::new(center, 0.0);
            let base = center_q + radius;
            let (a, b) = e.standard_cycles(base, default_region(base)).map_err(compute_err)?;
            let r = e.monodromy(&circle_loop(center_q, base, points), &[a, b]).map_err(compute_err)?;
            Ok(json!({
                "center": [center, 0.0],
                "base": [base.re, base.im],
                "basis": ["a", "b"],
                "matrix": r.matrix,
                "raw": r.raw,
                "residual": r.residual,
                "parabolic_class": parabolic_class(r.matrix),
                "affine_gluing": affine_monodromy_from_periods(r.matrix),
            }))
        }
    }
}

fn affine(cmd: AffineCmd, c: &Common) -> Outcome {
    match cmd {
        AffineCmd::Atlas { name } => {
            let atlas = atlas_by_name(&name)?;
            atlas.validate().map_err(compute_err)?;
            let local = (0..atlas.len()).map(|i| atlas.local_monodromy(i)).collect::<Result<Vec<_>, _>>().map_err(compute_err)?;
            let large = atlas.large_loop_monodromy(None).map_err(compute_err)?;
            write_svg(c, || svg::atlas_svg(&atlas, &[], &[]))?;
            Ok(json!({ "atlas": atlas.to_json(), "local_monodromy": local, "large_loop": large, "large_loop_class": parabolic_class(large) }))
        }
        AffineCmd::Trace { atlas, start, dir, length } => {
            let atlas = atlas_by_name(&atlas)?;
            let start = parse_pair(&start).map_err(usage)?;
            let dir = parse_pair(&dir).map_err(usage)?;
            let path = trace_affine_line(&atlas, start, dir, length).map_err(compute_err)?;
            write_svg(c, || svg::atlas_svg(&atlas, std::slice::from_ref(&path), &[]))?;
            Ok(json!({ "path": path, "holonomy": path.holonomy() }))
        }
        AffineCmd::Syz => {
            let e = engine(c)?;
            let grid = parse_grid(c.grid.as_deref().ok_or_else(|| usage("syz needs --grid re0:re1:n,im0:im1:m"))?).map_err(usage)?;
            let pts = sample_syz_base(&e, &grid).map_err(compute_err)?;
            let lam = 1.0 / (4.0 * std::f64::consts::PI.powi(2));
            let scaled: Vec<[f64; 2]> = pts.iter().map(|p| [lam * p.x, lam * p.y]).collect();
            write_svg(c, || svg::atlas_svg(&build_B_CPS_prime(), &[], &scaled))?;
            let ok = pts.iter().all(|p| p.converged);
            check(ok, json!({ "samples": pts, "scale": lam }))
        }
        AffineCmd::Compare { samples } => {
            let e = engine(c)?;
            let atlas = build_B_CPS_prime();
            let r = compare_to_BCPS_prime(&e, &atlas, samples).map_err(compute_err)?;
            check(r.pass, serde_json::to_value(&r).unwrap())
        }
    }
}

fn cutoff(c: &Common) -> Result<Q, Failure> {
    match c.cutoff {
        Some(k) if k <= 0 => Err(usage("--cutoff must be positive")),
        Some(k) => Ok(Q::from_integer(k)),
        None => Ok(Q::from_integer(5)),
    }
}

fn novikov(cmd: NovikovCmd, c: &Common) -> Outcome {
    match cmd {
        NovikovCmd::VerifyCover { n, samples } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let r = verify_cover(n, samples, c.seed.unwrap_or(0x5eed), &cutoff(c)?);
            check(r.pass, serde_json::to_value(&r).unwrap())
        }
        NovikovCmd::Skeleton { n, s } => {
            if n == 0 || !(s > 0.0) {
                return Err(usage("--n must be at least 1 and --s positive"));
            }
            let sk = skeleton_valuation_image(&AnAtlas::new(n), s);
            write_svg(c, || svg::skeleton_svg(&sk))?;
            check(sk.is_chain(), json!({ "skeleton": sk, "chain": sk.is_chain() }))
        }
        NovikovCmd::Series { literal, inv } => {
            let x: QSeries = parse_series(&literal).map_err(usage)?;
            let mut v = json!({
                "series": x.to_literal(),
                "valuation": x.val().map(|e| e.to_string()),
            });
            if inv {
                let w = cutoff(c)?;
                v["inverse"] = json!(x.inv(&w).map_err(compute_err)?.to_literal());
                v["cutoff"] = json!(w.to_string());
            }
            Ok(v)
        }
    }
}

fn potential(args: PotentialArgs) -> Outcome {
    match args.cmd {
        Some(PotentialCmd::Wallcross { normals, rule }) => {
            let fan = MonotoneFanData::parse(&normals).map_err(usage)?;
            let rule = WallCrossingRule::parse(&rule).map_err(usage)?;
            let w = disc_potential(&fan).map_err(compute_err)?;
            let t = wall_crossing_substitute(&w, &rule).map_err(compute_err)?;
            Ok(json!({ "potential": w.to_string(), "transformed": t.to_string() }))
        }
        Some(PotentialCmd::Table) => {
            let r = verify_table();
            check(r.matched == r.total, serde_json::to_value(&r).unwrap())
        }
        None => {
            let normals = args.normals.ok_or_else(|| usage("potential needs --normals or a subcommand"))?;
            let fan = MonotoneFanData::parse(&normals).map_err(usage)?;
            let w = disc_potential(&fan).map_err(compute_err)?;
            Ok(json!({ "normals": fan.normals, "multiplicities": fan.multiplicities(), "potential": w.to_string() }))
        }
    }
}

fn surface(cmd: SurfaceCmd) -> Outcome {
    match cmd {
        SurfaceCmd::AppendixA { d, report } => {
            if !(1..=5).contains(&d) {
                return Err(usage("--d must be in 1..=5"));
            }
            let (_, r) = run_appendix_a(d).map_err(compute_err)?;
            match report.as_str() {
                "json" => check(r.pass, serde_json::to_value(&r).unwrap()),
                "text" => {
                    eprintln!(
                        "d = {}: rank {}, K^2 = {}, det = {}, boundary {}, fibres {}",
                        r.d,
                        r.rank,
                        r.k_squared,
                        r.determinant,
                        r.boundary.join(" "),
                        r.configuration
                    );
                    check(r.pass, serde_json::to_value(&r).unwrap())
                }
                other => Err(usage(format!("unknown report format '{}'", other))),
            }
        }
        SurfaceCmd::Script { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| usage(format!("{}: {}", file.display(), e)))?;
            let steps = parse_script(&text).map_err(usage)?;
            let (lat, notes) = run_script(&steps).map_err(compute_err)?;
            Ok(json!({
                "rank": lat.rank(),
                "k_squared": lat.k_squared(),
                "determinant": lat.determinant(),
                "signature": lat.signature(),
                "lattice": lat,
                "notes": notes,
            }))
        }
        SurfaceCmd::Euler { configuration } => {
            let cfg = parse_configuration(&configuration).map_err(usage)?;
            let ok = euler_configuration_check(&cfg).map_err(usage)?;
            check(ok, json!({ "configuration": cfg, "euler_sum_is_12": ok }))
        }
    }
}

fn repro(names: Vec<String>, c: &Common) -> Outcome {
    let mut cfg = ReproConfig::default();
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(t) = c.tol {
        if !(t > 0.0) {
            return Err(usage("--tol must be positive"));
        }
        cfg.tol = t;
    }
    if let Some(k) = c.cutoff {
        if k <= 0 {
            return Err(usage("--cutoff must be positive"));
        }
        cfg.novikov_cutoff = k;
    }
    let report = if names.iter().any(|n| n == "all") {
        run_all(&cfg)
    } else {
        let ids = names
            .iter()
            .map(|n| lookup(n).ok_or_else(|| usage(format!("unknown criterion '{}'; known: {}", n, known_criteria()))))
            .collect::<Result<Vec<_>, _>>()?;
        run_selected(&ids, &cfg)
    };
    for cr in &report.criteria {
        eprintln!("{}", cr.line());
    }
    let v = serde_json::from_str(&report.to_json()).unwrap();
    check(report.all_pass, v)
}

fn known_criteria() -> String {
    CRITERIA.iter().map(|c| c.1).collect::<Vec<_>>().join(", ")
}

fn emit(v: &Value, c: &Common) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).unwrap();
    match c.out.as_deref() {
        None | Some("-") | Some("json") => {
            use std::io::Write;
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{}", text);
            Ok(())
        }
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {}", p, e)),
    }
}

fn cap_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("MIRRORFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("MIRRORFORGE_THREADS must be a positive integer, got '{}'", v))?;
    if n == 0 {
        return Err("MIRRORFORGE_THREADS must be a positive integer".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = cap_threads() {
        eprintln!("error: {}", e);
        return ExitCode::from(2);
    }
    let c = cli.common.clone();
    let outcome = match cli.cmd {
        Cmd::Toric { cmd } => toric(cmd),
        Cmd::Periods { cmd } => periods(cmd, &c),
        Cmd::Affine { cmd } => affine(cmd, &c),
        Cmd::Novikov { cmd } => novikov(cmd, &c),
        Cmd::Potential(args) => potential(args),
        Cmd::Surface { cmd } => surface(cmd),
        Cmd::Repro { criteria } => repro(criteria, &c),
    };
    let (value, code) = match outcome {
        Ok(v) => (v, 0),
        Err(Failure::Check(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            eprintln!("run with --help for usage");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&value, &c) {
        eprintln!("error: {}", e);
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("1.5i").unwrap(), Complex64::new(0.0, 1.5));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("-2+0.5i").unwrap(), Complex64::new(-2.0, 0.5));
        assert_eq!(parse_complex("1e-3-2i").unwrap(), Complex64::new(1e-3, -2.0));
        assert_eq!(parse_complex("-2, 0.5").unwrap(), Complex64::new(-2.0, 0.5));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("-3:-1:3,0:1:2").unwrap().len(), 6);
        // The critical value 0 is skipped.
        assert_eq!(parse_grid("-1:1:3,0:0:1").unwrap().len(), 2);
        assert!(parse_grid("-1:1,0:1:2").is_err());
        assert!(parse_grid("-1:1:0,0:1:2").is_err());
    }
}
