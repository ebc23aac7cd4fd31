//! `loci`: sampled special points against their analytic loci.

use anyhow::bail;
use clap::{Args, ValueEnum};
use poncelet_core::oracle::admissible_starts;
use poncelet_core::quad::{build_butterfly, build_quad_through_l, l_point, quad_derived_points};
use poncelet_core::triangle::{build_triangle, pedal_curve_terms, pedal_point, q_of};
use poncelet_core::{Line2, Point2};
use serde::Serialize;

use crate::render::{abc, Figure};
use crate::scene::{Frame, SceneArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum What {
    Orthocenter,
    Centroid,
    Ninepoint,
    Pedal,
    Anticenter,
    Midpoints,
}

#[derive(Debug, Clone, Args)]
pub struct LociArgs {
    pub what: What,
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Vertices sampled on the circle.
    #[arg(long, default_value_t = 360)]
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sample {
    pub index: usize,
    /// Angle of the generating vertex (or pedal parameter) in the normalized frame.
    pub angle: f64,
    pub x: f64,
    pub y: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Analytic {
    Line {
        line: [f64; 3],
    },
    /// Pedal curve of the parabola about the circle center.
    PedalCubic {
        center: [f64; 2],
        p: f64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Locus {
    pub what: What,
    pub polygon: &'static str,
    pub analytic: Analytic,
    pub samples: Vec<Sample>,
    pub max_deviation: f64,
    /// Length of the sampled set along the analytic line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extent: Option<f64>,
    pub figure: Figure,
}

#[derive(Clone, Copy, PartialEq)]
enum Polygon {
    Triangle,
    Butterfly,
    PivotQuad,
}

/// Side midpoints or special point of the polygon started at `a`, in the frame.
fn polygon_points(kind: Polygon, a: Point2, frame: &Frame) -> Option<Vec<Point2>> {
    match kind {
        Polygon::Triangle => {
            let t = build_triangle(a, &frame.circle, &frame.par).ok()?;
            (!t.trivial).then(|| t.vertices.to_vec())
        }
        Polygon::Butterfly => build_butterfly(a, &frame.circle, &frame.par).ok().map(|q| q.vertices.to_vec()),
        Polygon::PivotQuad => build_quad_through_l(a, &frame.circle, &frame.par)
            .ok()
            .filter(|q| !q.is_degenerate())
            .map(|q| q.vertices.to_vec()),
    }
}

fn altitude_meet(v: &[Point2]) -> Option<Point2> {
    let ha = Line2::through(v[1], v[2]).ok()?.perpendicular_through(v[0]);
    let hb = Line2::through(v[0], v[2]).ok()?.perpendicular_through(v[1]);
    ha.intersect(&hb)
}

pub fn run(args: &LociArgs) -> anyhow::Result<Locus> {
    let scene = args.scene.resolve()?;
    let gp = scene.parabola_or_pivot()?;
    let frame = Frame::new(&scene.circle, &gp)?;
    let (e, p) = (frame.e(), frame.p());
    let r = scene.circle.radius;
    let focal = q_of(e).abs() <= 1e-9;
    let pivot = e.norm() > 1e-9 && l_point(e).is_ok_and(|(_, ps)| (ps - p).abs() <= 1e-9 * ps.abs().max(1.0));
    let centered = e.norm() <= 1e-9 && p.abs() < 2.0;
    let polygon = match args.what {
        What::Orthocenter | What::Centroid | What::Ninepoint => {
            if !focal {
                bail!("closure condition unmet: the circle does not pass through the focus (Q(E) = {:.3e})", q_of(e));
            }
            Polygon::Triangle
        }
        What::Anticenter => {
            if !pivot {
                bail!("closure condition unmet: the directrix does not pass through L");
            }
            Polygon::PivotQuad
        }
        What::Midpoints | What::Pedal if focal => Polygon::Triangle,
        What::Midpoints | What::Pedal if pivot => Polygon::PivotQuad,
        What::Midpoints | What::Pedal if centered => Polygon::Butterfly,
        What::Midpoints | What::Pedal => {
            bail!("closure condition unmet: no Poncelet triangle or quadrilateral for this circle and parabola")
        }
    };
    let line_x = match args.what {
        What::Orthocenter | What::Anticenter => Some(-p),
        What::Centroid => Some((2.0 * e.x - p) / 3.0),
        What::Ninepoint => Some((e.x - p) / 2.0),
        _ => None,
    };

    let mut samples = Vec::new();
    let push = |samples: &mut Vec<Sample>, angle: f64, q: Point2, dev: f64| {
        let s = frame.back(q);
        samples.push(Sample { index: samples.len(), angle, x: s.x, y: s.y, deviation: dev });
    };
    if args.what == What::Pedal {
        let n = args.samples.max(2);
        for k in 0..n {
            let t = -4.0 + 8.0 * k as f64 / (n - 1) as f64;
            let foot = frame.par.tangent_at(t).foot(e);
            let (v, s) = pedal_curve_terms(foot, e, p);
            let dev = (v.abs() / s).max(foot.dist(pedal_point(t, e, p)));
            push(&mut samples, t, foot, dev);
        }
    } else {
        for a in admissible_starts(&frame.circle, &frame.par, args.samples, 1e-6) {
            let angle = frame.circle.angle_of(a);
            let Some(v) = polygon_points(polygon, a, &frame) else { continue };
            match args.what {
                What::Midpoints => {
                    for i in 0..v.len() {
                        let m = v[i].midpoint(v[(i + 1) % v.len()]);
                        let (val, s) = pedal_curve_terms(m, e, p);
                        push(&mut samples, angle, m, val.abs() / s);
                    }
                }
                What::Anticenter => {
                    let Ok(q) = build_quad_through_l(a, &frame.circle, &frame.par) else { continue };
                    let Ok(dp) = quad_derived_points(&q) else { continue };
                    push(&mut samples, angle, dp.anticenter, (dp.anticenter.x + p).abs() * r);
                }
                _ => {
                    let Some(o) = altitude_meet(&v) else { continue };
                    let pt = match args.what {
                        What::Orthocenter => o,
                        What::Centroid => (v[0] + v[1] + v[2]) * (1.0 / 3.0),
                        _ => o.midpoint(e),
                    };
                    push(&mut samples, angle, pt, (pt.x - line_x.expect("line locus")).abs() * r);
                }
            }
        }
    }
    if samples.is_empty() {
        bail!("no admissible vertex produced a polygon");
    }

    let max_deviation = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    let analytic = match line_x {
        Some(x) => {
            let l = frame.to_scene.apply_line(&Line2::vertical(x));
            Analytic::Line { line: abc(&l) }
        }
        None => {
            Analytic::PedalCubic { center: [scene.circle.center.x, scene.circle.center.y], p: gp.focal_parameter() }
        }
    };
    let extent = line_x.map(|_| {
        let ys: Vec<f64> = samples.iter().map(|s| frame.to_canonical.apply(Point2::new(s.x, s.y)).y).collect();
        let (lo, hi) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), y| (l.min(*y), h.max(*y)));
        (hi - lo) * r
    });

    let mut fig = Figure::default();
    fig.circle(&scene.circle).parabola(&gp);
    match &analytic {
        Analytic::Line { line } => {
            fig.lines.push(*line);
        }
        Analytic::PedalCubic { .. } => {
            let curve: Vec<Point2> =
                (0..=400).map(|k| frame.back(pedal_point(-4.0 + 8.0 * k as f64 / 400.0, e, p))).collect();
            fig.polyline(&curve);
        }
    }
    for s in &samples {
        fig.point(Point2::new(s.x, s.y), "");
    }
    Ok(Locus {
        what: args.what,
        polygon: match polygon {
            Polygon::Triangle => "triangle",
            Polygon::Butterfly => "butterfly",
            Polygon::PivotQuad => "quadrilateral",
        },
        analytic,
        samples,
        max_deviation,
        extent,
        figure: fig,
    })
}

pub fn to_csv(locus: &Locus) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "angle", "x", "y", "deviation"])?;
    for s in &locus.samples {
        w.write_record([
            s.index.to_string(),
            s.angle.to_string(),
            s.x.to_string(),
            s.y.to_string(),
            s.deviation.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
