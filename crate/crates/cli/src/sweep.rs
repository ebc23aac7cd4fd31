//! `sweep`: closure residuals over a grid of centers and parameters.

use anyhow::{bail, Context};
use clap::Args;
use poncelet_core::oracle::sweep_residual;
use poncelet_core::{CanonicalParabola, Circle, Point2};
use rayon::prelude::*;
use serde::Serialize;

use crate::scene::{read_scene_file, Axis, Frame};

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Scene file with a `sweep` section; flags override it.
    #[arg(long)]
    pub scene: Option<std::path::PathBuf>,
    /// Center x: a value or `from:to:steps`.
    #[arg(long, allow_hyphen_values = true)]
    pub ex: Option<String>,
    /// Center y: a value or `from:to:steps`.
    #[arg(long, allow_hyphen_values = true)]
    pub ey: Option<String>,
    /// Parameter p: a value or `from:to:steps`.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Circle radius.
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Polygon size.
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub n: Option<u8>,
    /// Starts per grid point.
    #[arg(long, default_value_t = 8)]
    pub starts: usize,
    /// Local minima at or below this residual are reported.
    #[arg(long, default_value_t = 1e-6)]
    pub below: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Scored,
    /// No circle point lies outside the parabola.
    NoStart,
    /// Every chain left the circle or degenerated.
    NoOrbit,
    /// `p = 0` or a non-positive radius.
    Invalid,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub x_e: f64,
    pub y_e: f64,
    pub p: f64,
    pub residual: Option<f64>,
    pub completed: usize,
    pub attempted: usize,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep {
    pub n: usize,
    pub starts: usize,
    pub radius: f64,
    pub shape: [usize; 3],
    pub rows: Vec<Row>,
    pub minima: Vec<Row>,
}

fn score(e: Point2, r: f64, p: f64, n: usize, starts: usize) -> Row {
    let row =
        |residual, completed, attempted, status| Row { x_e: e.x, y_e: e.y, p, residual, completed, attempted, status };
    let (Ok(circle), Ok(gp)) = (Circle::new(e, r), CanonicalParabola::new(p).map(|c| c.to_general())) else {
        return row(None, 0, 0, RowStatus::Invalid);
    };
    let Ok(frame) = Frame::new(&circle, &gp) else { return row(None, 0, 0, RowStatus::Invalid) };
    let s = sweep_residual(&frame.circle, &frame.par, n, starts);
    let status = match (s.attempted, s.residual) {
        (0, _) => RowStatus::NoStart,
        (_, None) => RowStatus::NoOrbit,
        _ => RowStatus::Scored,
    };
    row(s.residual, s.completed, s.attempted, status)
}

pub fn run(args: &SweepArgs) -> anyhow::Result<Sweep> {
    let spec = match &args.scene {
        Some(path) => read_scene_file(path)?.sweep,
        None => None,
    };
    let axis = |flag: &Option<String>, from_file: Option<Axis>, name: &str| -> anyhow::Result<Axis> {
        match (flag, from_file) {
            (Some(s), _) => Axis::parse(s),
            (None, Some(a)) => Ok(a),
            (None, None) => bail!("no values for {name}: use --{name} or a scene file with a sweep section"),
        }
    };
    let ex = axis(&args.ex, spec.map(|s| s.ex), "ex")?.values();
    let ey = axis(&args.ey, spec.map(|s| s.ey), "ey")?.values();
    let ps = axis(&args.p, spec.map(|s| s.p), "p")?.values();
    let n = args.n.map(usize::from).or(spec.and_then(|s| s.n)).context("give --n 3 or --n 4")?;
    if !(3..=4).contains(&n) {
        bail!("n must be 3 or 4, got {n}");
    }
    if ex.iter().chain(&ey).chain(&ps).any(|v| !v.is_finite()) || !args.r.is_finite() {
        bail!("sweep values must be finite");
    }
    let shape = [ex.len(), ey.len(), ps.len()];
    let total = shape.iter().product::<usize>();
    if total > 10_000_000 {
        bail!("grid of {total} points is too large");
    }
    let rows: Vec<Row> = (0..total)
        .into_par_iter()
        .map(|k| {
            let (i, j, l) = (k / (shape[1] * shape[2]), (k / shape[2]) % shape[1], k % shape[2]);
            score(Point2::new(ex[i], ey[j]), args.r, ps[l], n, args.starts)
        })
        .collect();
    let minima = local_minima(&rows, shape, args.below);
    Ok(Sweep { n, starts: args.starts, radius: args.r, shape, rows, minima })
}

/// Scored rows no larger than any scored grid neighbor.
fn local_minima(rows: &[Row], shape: [usize; 3], below: f64) -> Vec<Row> {
    let idx = |i: usize, j: usize, l: usize| (i * shape[1] + j) * shape[2] + l;
    let mut out = Vec::new();
    for i in 0..shape[0] {
        for j in 0..shape[1] {
            for l in 0..shape[2] {
                let Some(v) = rows[idx(i, j, l)].residual else { continue };
                if v > below {
                    continue;
                }
                let mut neighbors = Vec::new();
                for (d, (pos, len)) in [(i, shape[0]), (j, shape[1]), (l, shape[2])].into_iter().enumerate() {
                    for q in [pos.wrapping_sub(1), pos + 1] {
                        if q < len {
                            let mut c = [i, j, l];
                            c[d] = q;
                            neighbors.push(idx(c[0], c[1], c[2]));
                        }
                    }
                }
                if neighbors.iter().all(|&k| rows[k].residual.is_none_or(|w| v <= w)) {
                    out.push(rows[idx(i, j, l)].clone());
                }
            }
        }
    }
    out
}

pub fn to_csv(sweep: &Sweep) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x_e", "y_e", "p", "residual", "completed", "attempted", "status"])?;
    for r in &sweep.rows {
        let status = serde_json::to_value(r.status)?.as_str().unwrap_or_default().to_string();
        w.write_record([
            r.x_e.to_string(),
            r.y_e.to_string(),
            r.p.to_string(),
            r.residual.map(|v| v.to_string()).unwrap_or_default(),
            r.completed.to_string(),
            r.attempted.to_string(),
            status,
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
