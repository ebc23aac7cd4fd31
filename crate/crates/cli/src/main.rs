//! `poncelet`: verify, construct, sample and draw circle-parabola Poncelet polygons.

mod construct;
mod loci;
mod registry;
mod render;
mod scene;
mod sweep;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::registry::Suite;
use crate::scene::SceneArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "poncelet",
    version,
    about = "Poncelet polygons inscribed in a circle and circumscribed about a parabola"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
    /// Override every residual tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Pixels per unit in SVG output.
    #[arg(long, global = true, default_value_t = 100.0)]
    scale: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites against a scene.
    Verify(VerifyArgs),
    /// Build a single polygon or tangent construction.
    Construct(construct::ConstructArgs),
    /// Sample a locus of special points.
    Loci(loci::LociArgs),
    /// Closure residuals over a parameter grid.
    Sweep(sweep::SweepArgs),
    /// Draw a scene or construction JSON as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Triangle,
    QuadEf,
    QuadGeneral,
    CommonTangents,
    Isoperiodic,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[command(flatten)]
    scene: SceneArgs,
    /// Samples per check.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Scene or construction JSON; `-` reads stdin.
    input: PathBuf,
}

/// A command's output and whether its checks held.
struct Outcome {
    text: String,
    pass: bool,
}

fn json<T: serde::Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn verify(cli: &Cli, args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Triangle => vec![Suite::Triangle],
        SuiteArg::QuadEf => vec![Suite::QuadEf],
        SuiteArg::QuadGeneral => vec![Suite::QuadGeneral],
        SuiteArg::CommonTangents => vec![Suite::CommonTangents],
        SuiteArg::Isoperiodic => vec![Suite::Isoperiodic],
    };
    let scene = args.scene.resolve()?;
    let derived = scene.parabola.is_none();
    let gp = scene.parabola_or_pivot()?;
    let opts = verify::Options { samples: args.samples, seed: cli.seed, tol: cli.tol };
    let report = verify::run(&scene, &gp, derived, &suites, &opts)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "result", "status", "samples", "max_residual", "tolerance", "mismatches"])?;
            for c in &report.checks {
                let status = serde_json::to_value(c.status)?.as_str().unwrap_or_default().to_string();
                w.write_record([
                    c.id.to_string(),
                    c.result.to_string(),
                    status,
                    c.samples.to_string(),
                    c.max_residual.map(|v| v.to_string()).unwrap_or_default(),
                    c.tolerance.to_string(),
                    c.mismatches.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Svg => bail!("verify writes json or csv"),
    };
    for c in report.checks.iter().filter(|c| c.status == verify::Status::Fail) {
        eprintln!("FAIL {}: {}", c.id, c.note.as_deref().unwrap_or(c.statement));
    }
    Ok(Outcome { text, pass: report.pass })
}

fn construct(cli: &Cli, args: &construct::ConstructArgs) -> anyhow::Result<Outcome> {
    let c = construct::run(args)?;
    let tol = cli.tol.unwrap_or(1e-8);
    let pass = c.residual <= tol;
    if !pass {
        eprintln!("construction residual {:.3e} exceeds {tol:.1e}", c.residual);
    }
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(&c)?,
        Format::Svg => render::render_svg(&c.figure, cli.scale),
        Format::Csv => bail!("construct writes json or svg"),
    };
    Ok(Outcome { text, pass })
}

fn loci(cli: &Cli, args: &loci::LociArgs) -> anyhow::Result<Outcome> {
    let l = loci::run(args)?;
    let tol = cli.tol.unwrap_or(1e-8);
    let pass = l.max_deviation <= tol;
    if !pass {
        eprintln!("largest deviation {:.3e} exceeds {tol:.1e}", l.max_deviation);
    }
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => loci::to_csv(&l)?,
        Format::Json => json(&l)?,
        Format::Svg => render::render_svg(&l.figure, cli.scale),
    };
    Ok(Outcome { text, pass })
}

fn sweep(cli: &Cli, args: &sweep::SweepArgs) -> anyhow::Result<Outcome> {
    let s = sweep::run(args)?;
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => sweep::to_csv(&s)?,
        Format::Json => json(&s)?,
        Format::Svg => bail!("sweep writes csv or json"),
    };
    Ok(Outcome { text, pass: true })
}

fn render(cli: &Cli, args: &RenderArgs) -> anyhow::Result<Outcome> {
    let text = if args.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?
    };
    if let Some(f) = cli.format {
        if f != Format::Svg {
            bail!("render writes svg");
        }
    }
    let fig = render::figure_from_json(&text)?;
    Ok(Outcome { text: render::render_svg(&fig, cli.scale), pass: true })
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            bail!("--tol must be a finite non-negative number");
        }
    }
    if !(cli.scale.is_finite() && cli.scale > 0.0) {
        bail!("--scale must be positive");
    }
    match &cli.command {
        Command::Verify(a) => verify(cli, a),
        Command::Construct(a) => construct(cli, a),
        Command::Loci(a) => loci(cli, a),
        Command::Sweep(a) => sweep(cli, a),
        Command::Render(a) => render(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli).and_then(|o| emit(cli.out.as_ref(), &o.text).map(|_| o.pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
