//! `construct`: single constructions mapped back to the scene frame.

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use poncelet_core::joachimsthal::{eval_s, tangents_from_point};
use poncelet_core::oracle::admissible_starts;
use poncelet_core::quad::{
    build_butterfly, build_quad_through_l, compass_tangents, inscribe_parabola_in_cyclic_quad, PonceletQuad,
};
use poncelet_core::triangle::{build_triangle, centers};
use poncelet_core::{Circle, GeneralParabola, Line2, Point2};
use serde::Serialize;
use serde_json::json;

use crate::render::{abc, xy, Figure};
use crate::scene::{Frame, SceneArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Triangle,
    Butterfly,
    Quad,
    Tangents,
    Inscribe,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    pub kind: Kind,
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Focus `x,y` (tangents).
    #[arg(long, allow_hyphen_values = true)]
    pub focus: Option<String>,
    /// Vertical directrix `x = value` (tangents).
    #[arg(long, allow_hyphen_values = true)]
    pub directrix_x: Option<f64>,
    /// Directrix `a,b,c` for `ax + by + c = 0` (tangents).
    #[arg(long, allow_hyphen_values = true)]
    pub directrix: Option<String>,
    /// External point `x,y` (tangents).
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Four vertices `x,y;x,y;x,y;x,y` in tangency order (inscribe).
    #[arg(long, allow_hyphen_values = true)]
    pub quad: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub kind: &'static str,
    pub result: serde_json::Value,
    /// Largest tangency or agreement defect of the result.
    pub residual: f64,
    pub figure: Figure,
}

pub fn parse_numbers(s: &str, n: usize) -> anyhow::Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number {t:?} in {s:?}")))
        .collect::<anyhow::Result<_>>()?;
    if v.len() != n {
        bail!("expected {n} comma-separated numbers, got {s:?}");
    }
    if v.iter().any(|x| !x.is_finite()) {
        bail!("non-finite value in {s:?}");
    }
    Ok(v)
}

fn parse_point(s: &str) -> anyhow::Result<Point2> {
    let v = parse_numbers(s, 2)?;
    Ok(Point2::new(v[0], v[1]))
}

/// Start vertex in the canonical frame: the given one, or the first admissible one.
fn start(frame: &Frame, vertex: Option<Point2>) -> anyhow::Result<Point2> {
    match vertex {
        Some(v) => Ok(frame.to_canonical.apply(v)),
        None => admissible_starts(&frame.circle, &frame.par, 1, 1e-3)
            .first()
            .copied()
            .context("no circle point lies outside the parabola"),
    }
}

pub fn run(args: &ConstructArgs) -> anyhow::Result<Construction> {
    match args.kind {
        Kind::Triangle => triangle(args),
        Kind::Butterfly | Kind::Quad => quad(args),
        Kind::Tangents => tangents(args),
        Kind::Inscribe => inscribe(args),
    }
}

fn triangle(args: &ConstructArgs) -> anyhow::Result<Construction> {
    let scene = args.scene.resolve()?;
    let gp = scene.require_parabola()?;
    let frame = Frame::new(&scene.circle, &gp)?;
    let a = start(&frame, scene.vertex)?;
    let tri = build_triangle(a, &frame.circle, &frame.par)?;
    let ctr = centers(a, &frame.circle, &frame.par)?;
    let back = |p: Point2| frame.back(p);
    let v = tri.vertices.map(back);
    let (o, g, n) = (back(ctr.orthocenter), back(ctr.centroid), back(ctr.nine_point));
    let mut fig = Figure::default();
    fig.circle(&scene.circle).parabola(&gp).polygon(&v);
    for (p, label) in v.iter().zip(["A", "B", "C"]) {
        fig.point(*p, label);
    }
    fig.point(o, "O").point(g, "G").point(n, "N").point(scene.circle.center, "E");
    if o.dist(scene.circle.center) > 1e-9 {
        fig.line(&Line2::through(o, scene.circle.center)?);
    }
    Ok(Construction {
        kind: "triangle",
        result: json!({
            "vertices": v.map(xy),
            "contacts": tri.contacts.map(|c| xy(back(c))),
            "trivial": tri.trivial,
            "centers": {
                "orthocenter": xy(o),
                "centroid": xy(g),
                "nine_point": xy(n),
                "circumcenter": xy(scene.circle.center),
            },
        }),
        residual: tri.closure_residual,
        figure: fig,
    })
}

fn quad_json(q: &PonceletQuad, frame: &Frame) -> serde_json::Value {
    let back = |p: Point2| xy(frame.back(p));
    json!({
        "vertices": q.vertices.map(back),
        "contacts": q.contacts.map(back),
        "diagonal_point": q.diagonal_point.finite().map(back),
    })
}

fn quad(args: &ConstructArgs) -> anyhow::Result<Construction> {
    let scene = args.scene.resolve()?;
    let (gp, kind) = match args.kind {
        Kind::Butterfly => (scene.require_parabola()?, "butterfly"),
        _ => (scene.parabola_or_pivot()?, "quad"),
    };
    let frame = Frame::new(&scene.circle, &gp)?;
    let a = start(&frame, scene.vertex)?;
    let q = if kind == "butterfly" {
        build_butterfly(a, &frame.circle, &frame.par)?
    } else {
        build_quad_through_l(a, &frame.circle, &frame.par)?
    };
    let v = q.vertices.map(|p| frame.back(p));
    let mut fig = Figure::default();
    fig.circle(&scene.circle).parabola(&gp).polygon(&v);
    for (p, label) in v.iter().zip(["A", "B", "C", "D"]) {
        fig.point(*p, label);
    }
    if let Some(l) = q.diagonal_point.finite() {
        fig.point(frame.back(l), "L");
    }
    let mut result = quad_json(&q, &frame);
    result["parabola"] = json!({ "focus": xy(gp.focus), "directrix": abc(&gp.directrix) });
    Ok(Construction { kind, result, residual: q.closure_residual, figure: fig })
}

fn tangents(args: &ConstructArgs) -> anyhow::Result<Construction> {
    let focus = parse_point(args.focus.as_deref().context("--focus is required")?)?;
    let directrix = match (&args.directrix, args.directrix_x) {
        (Some(s), None) => {
            let v = parse_numbers(s, 3)?;
            Line2::new(v[0], v[1], v[2])?
        }
        (None, Some(x)) => Line2::vertical(x),
        _ => bail!("give exactly one of --directrix or --directrix-x"),
    };
    let a = parse_point(args.point.as_deref().context("--point is required")?)?;
    let gp = GeneralParabola::new(focus, directrix)?;
    let sol = compass_tangents(focus, &directrix, a)?;

    let frame = Frame::new(&Circle::new(focus, 1.0)?, &gp)?;
    let ac = frame.to_canonical.apply(a);
    let mut cross = 0.0f64;
    if eval_s(ac, &frame.par) > 0.0 {
        let tp = tangents_from_point(ac, &frame.par)?;
        for t in &tp.tangents {
            let c = frame.back(t.contact);
            let best = sol.iter().map(|s| s.contact.dist(c) / (1.0 + c.norm())).fold(f64::INFINITY, f64::min);
            cross = cross.max(best);
        }
    }
    let perpendicular = (sol.len() == 2).then(|| sol[0].line.direction().dot(sol[1].line.direction()).abs());
    let mut fig = Figure::default();
    fig.parabola(&gp).point(a, "A").point(focus, "F");
    for (i, t) in sol.iter().enumerate() {
        fig.line(&t.line).point(t.contact, &format!("T{}", i + 1));
    }
    Ok(Construction {
        kind: "tangents",
        result: json!({
            "point": xy(a),
            "tangents": sol.iter().map(|t| json!({
                "line": abc(&t.line),
                "contact": xy(t.contact),
                "foot": xy(t.foot),
                "partner": xy(t.partner),
            })).collect::<Vec<_>>(),
            "perpendicular_cosine": perpendicular,
            "polar_route_gap": cross,
        }),
        residual: cross,
        figure: fig,
    })
}

fn inscribe(args: &ConstructArgs) -> anyhow::Result<Construction> {
    let spec = args.quad.as_deref().context("--quad is required")?;
    let pts: Vec<Point2> = spec.split(';').map(parse_point).collect::<anyhow::Result<_>>()?;
    let [a, b, c, d]: [Point2; 4] = pts.try_into().map_err(|_| anyhow::anyhow!("--quad needs four points"))?;
    let gp = inscribe_parabola_in_cyclic_quad(a, b, c, d)?;
    let circle = Circle::through3(a, b, c)?;
    let sides = [(a, b), (b, c), (c, d), (d, a)];
    let mut residual = 0.0f64;
    for (u, v) in sides {
        let l = Line2::through(u, v)?;
        residual = residual.max(gp.directrix.distance(l.reflect(gp.focus)));
    }
    let mut fig = Figure::default();
    fig.circle(&circle).parabola(&gp).polygon(&[a, b, c, d]).point(gp.focus, "F");
    for (p, label) in [a, b, c, d].iter().zip(["A", "B", "C", "D"]) {
        fig.point(*p, label);
    }
    Ok(Construction {
        kind: "inscribe",
        result: json!({
            "focus": xy(gp.focus),
            "directrix": abc(&gp.directrix),
            "circle": { "center": xy(circle.center), "radius": circle.radius },
        }),
        residual,
        figure: fig,
    })
}
