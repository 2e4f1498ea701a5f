//! Command-line entry point.
//!
//! Subcommands: `supertile`, `curve eval`, `curve preimage`, `polygon`,
//! `tessellate`, `matrix`, `solve-decorations`, `verify`. Exit codes: 0 on
//! success, 1 on invariant failures or runtime errors, 2 on usage errors.
//!
//! Rational parameters are passed as `P/Q` strings so exactness survives the
//! command line; floats are accepted only where the input is inherently
//! approximate (`curve preimage`). The palette can be overridden with the
//! `FIBCURVE_COLORS` environment variable, e.g.
//! `FIBCURVE_COLORS="A=#ff0000,B=#00ff00"`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::curve::{eval_rational, preimage, ParamRational};
use crate::export::{
    patch_to_json, patch_to_svg, polygon, polyline_to_csv, polyline_to_svg, tessellate,
    tessellation_to_svg, Style,
};
use crate::prototiles::Label;
use crate::solver::{
    first_conflict, solve_decorations, uniqueness_scan, DecorationSystem, SolverProblem,
};
use crate::substitution::{count_matrix, dominant_eigenvalue, fibonacci_u64, supertile};
use crate::verify::run_all;
use crate::Error;

#[derive(Parser)]
#[command(
    name = "fibcurve",
    version,
    about = "Exact-arithmetic engine for the Fibonacci space-filling curve",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the k-th supertile of a seed prototile
    Supertile(SupertileArgs),
    /// Evaluate the curve or invert a point
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Emit the level-k approximating polygon
    Polygon(PolygonArgs),
    /// Emit the first-quadrant tessellation patch after 2m steps
    Tessellate(TessellateArgs),
    /// Print the 24x24 substitution count matrix
    Matrix(MatrixArgs),
    /// Derive the decoration endpoint table by exhaustive search
    SolveDecorations(SolveArgs),
    /// Run the invariant suite; exits nonzero on any failure
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SupertileArgs {
    /// Seed label, e.g. A1+ or D3-
    #[arg(long)]
    seed: String,
    /// Number of substitution steps
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum, default_value_t = PatchFormat::Json)]
    format: PatchFormat,
    /// Omit decoration endpoints from JSON output
    #[arg(long)]
    no_decorations: bool,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// F(x) to a given partition depth
    Eval(EvalArgs),
    /// A parameter mapping near a target point
    Preimage(PreimageArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Exact rational parameter in [0,1], written P/Q
    #[arg(long)]
    x: String,
    /// Partition levels to descend; error ≤ √2·φ^(-depth)
    #[arg(long, default_value_t = 32)]
    depth: u32,
}

#[derive(Args)]
struct PreimageArgs {
    /// Target point in the unit square, written X,Y (floats)
    #[arg(long)]
    y: String,
    #[arg(long, default_value_t = 24)]
    depth: u32,
}

#[derive(Args)]
struct PolygonArgs {
    /// Partition level (k ≥ 1)
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum, default_value_t = PolyFormat::Svg)]
    format: PolyFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TessellateArgs {
    /// Doubling steps: the patch is the 2m-th supertile of A1+
    #[arg(long)]
    m: u32,
    /// Also draw the three reflected copies covering the other quadrants
    #[arg(long)]
    reflect: bool,
    #[arg(long, value_enum, default_value_t = TessFormat::Svg)]
    format: TessFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    /// Also report the dominant eigenvalue by power iteration
    #[arg(long)]
    eigen: bool,
    /// Power-iteration stopping tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct SolveArgs {
    /// Diagnose the rows exactly as published instead of the corrected ones
    #[arg(long)]
    printed_rows: bool,
    /// Also run the exhaustive connected-curve-system scan
    #[arg(long)]
    uniqueness: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Depth cap for the depth-parameterized checks
    #[arg(long, default_value_t = 8)]
    max_depth: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatchFormat {
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Svg,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TessFormat {
    Svg,
    Json,
}

/// Parse and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Supertile(args) => cmd_supertile(args),
        Command::Curve(CurveCommand::Eval(args)) => cmd_eval(args),
        Command::Curve(CurveCommand::Preimage(args)) => cmd_preimage(args),
        Command::Polygon(args) => cmd_polygon(args),
        Command::Tessellate(args) => cmd_tessellate(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::SolveDecorations(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn style_from_env() -> Style {
    let mut style = Style::default();
    if let Ok(spec) = std::env::var("FIBCURVE_COLORS") {
        for part in spec.split(',') {
            let Some((key, value)) = part.split_once('=') else { continue };
            let slot = match key.trim() {
                "A" | "a" => 0,
                "B" | "b" => 1,
                "C" | "c" => 2,
                "D" | "d" => 3,
                _ => continue,
            };
            style.palette[slot] = value.trim().to_string();
        }
    }
    style
}

fn emit(out: Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn warn_large_level(k: u32) {
    if k > 20 {
        eprintln!(
            "warning: level {k} expands to {} tiles; geometry dumps above k = 20 get large",
            fibonacci_u64(k + 2).pow(2)
        );
    }
}

fn cmd_supertile(args: SupertileArgs) -> Result<i32, Error> {
    let seed: Label = args.seed.parse()?;
    warn_large_level(args.k);
    let patch = supertile(seed, args.k);
    let content = match args.format {
        PatchFormat::Json => patch_to_json(&patch, !args.no_decorations),
        PatchFormat::Svg => patch_to_svg(&patch, &style_from_env()),
    };
    emit(args.out, &content)?;
    Ok(0)
}

fn cmd_eval(args: EvalArgs) -> Result<i32, Error> {
    let x: ParamRational = args.x.parse()?;
    let res = eval_rational(&x, args.depth);
    let (cx, cy) = res.center.to_f64();
    let b = &res.final_box;
    let mut out = String::new();
    writeln!(out, "x = {x}").unwrap();
    writeln!(out, "depth = {}", args.depth).unwrap();
    writeln!(out, "index = {} of {}", res.chain.last().unwrap().1, fibonacci_u64(args.depth + 2).pow(2)).unwrap();
    writeln!(
        out,
        "box = [{:.12}, {:.12}] x [{:.12}, {:.12}]",
        b.x0().to_f64(),
        b.x1().to_f64(),
        b.y0().to_f64(),
        b.y1().to_f64()
    )
    .unwrap();
    writeln!(out, "box exact = [{}, {}] x [{}, {}]", b.x0(), b.x1(), b.y0(), b.y1()).unwrap();
    writeln!(out, "center = ({cx:.12}, {cy:.12})").unwrap();
    writeln!(out, "center exact = {}", res.center).unwrap();
    writeln!(out, "error <= {:.6e}", res.error_bound).unwrap();
    print!("{out}");
    Ok(0)
}

fn cmd_preimage(args: PreimageArgs) -> Result<i32, Error> {
    let parse_err = || Error::ParseParam(args.y.clone());
    let (sx, sy) = args.y.split_once(',').ok_or_else(parse_err)?;
    let y: (f64, f64) = (
        sx.trim().parse().map_err(|_| parse_err())?,
        sy.trim().parse().map_err(|_| parse_err())?,
    );
    let x = preimage(y, args.depth)?;
    println!("y = ({}, {})", y.0, y.1);
    println!("depth = {}", args.depth);
    println!("x = {x}");
    println!("x float = {:.15}", x.to_f64());
    println!("guarantee: |F(x) - y| <= {:.6e}", crate::curve::diameter_bound(args.depth));
    Ok(0)
}

fn cmd_polygon(args: PolygonArgs) -> Result<i32, Error> {
    if args.k < 1 {
        return Err(Error::ParamRange("polygon level must be at least 1".into()));
    }
    warn_large_level(args.k);
    let poly = polygon(args.k);
    let content = match args.format {
        PolyFormat::Svg => {
            let grid = crate::curve::partition(args.k).rects;
            polyline_to_svg(&poly, Some(&grid), &style_from_env())
        }
        PolyFormat::Csv => polyline_to_csv(&poly),
    };
    emit(args.out, &content)?;
    Ok(0)
}

fn cmd_tessellate(args: TessellateArgs) -> Result<i32, Error> {
    if args.m < 1 {
        return Err(Error::ParamRange("tessellation steps must be at least 1".into()));
    }
    warn_large_level(2 * args.m);
    let patch = tessellate(args.m);
    let content = match args.format {
        TessFormat::Svg => tessellation_to_svg(&patch, args.reflect, &style_from_env()),
        TessFormat::Json => {
            if args.reflect {
                return Err(Error::PatchFormat(
                    "--reflect applies to SVG output only; the JSON patch is the quadrant".into(),
                ));
            }
            patch_to_json(&patch, true)
        }
    };
    emit(args.out, &content)?;
    Ok(0)
}

fn cmd_matrix(args: MatrixArgs) -> Result<i32, Error> {
    let m = count_matrix();
    print!("{m}");
    if args.eigen {
        let (lambda, iters) = dominant_eigenvalue(&m, args.tol)?;
        println!("dominant eigenvalue = {lambda:.15} ({iters} iterations, tol {:e})", args.tol);
    }
    Ok(0)
}

fn cmd_solve(args: SolveArgs) -> Result<i32, Error> {
    if args.printed_rows {
        let problem = SolverProblem::printed();
        let solutions = solve_decorations(&problem);
        println!("rows as published, indices pinned: {} system(s)", solutions.len());
        if solutions.is_empty() {
            println!("contradiction against the reference endpoints:");
            if let Some(conflict) = first_conflict(&problem, &DecorationSystem::reference()) {
                println!("  {conflict}");
            }
        }
    } else {
        let corrected = solve_decorations(&SolverProblem::corrected());
        println!("corrected rows, indices pinned: {} system(s)", corrected.len());
        for sol in &corrected {
            print!("{}", sol.system);
        }

        let free = solve_decorations(&SolverProblem::free_d_indices());
        println!("published rows with free D indices: {} system(s)", free.len());
        for sol in &free {
            let picks: Vec<String> =
                sol.d_children.iter().map(|(p, c)| format!("{p} -> {c}")).collect();
            println!("  forced indices: {}", picks.join(", "));
        }

        let printed = solve_decorations(&SolverProblem::printed());
        println!("published rows verbatim: {} system(s)", printed.len());
    }

    if args.uniqueness {
        let report = uniqueness_scan();
        println!(
            "connected curve systems from an A seed: {} total; reference included: {}",
            report.systems.len(),
            report.contains_reference
        );
        println!(
            "orbits: {} under transpose, {} under reversal, {} under both",
            report.transpose_orbits, report.reversal_orbits, report.combined_orbits
        );
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Error> {
    let results = run_all(args.max_depth);
    let mut failed = 0usize;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {} ({} ms): {}", r.name, r.millis, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} checks, {} failed, max depth {}", results.len(), failed, args.max_depth);
    Ok(if failed == 0 { 0 } else { 1 })
}
