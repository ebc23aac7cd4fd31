//! Figures and their SVG rendering.

use std::fmt::Write as _;

use anyhow::Context;
use poncelet_core::{Circle, GeneralParabola, Line2, Point2};
use serde::{Deserialize, Serialize};

use crate::scene::{parabola_from_spec, point, SceneFile};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Figure {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub circles: Vec<FigCircle>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parabolas: Vec<FigParabola>,
    /// Infinite lines `[a, b, c]`, clipped to the viewport.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polygons: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polylines: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<FigPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigCircle {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigParabola {
    pub focus: [f64; 2],
    pub directrix: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigPoint {
    pub at: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

pub fn xy(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

pub fn abc(l: &Line2) -> [f64; 3] {
    [l.a(), l.b(), l.c()]
}

impl Figure {
    pub fn circle(&mut self, c: &Circle) -> &mut Self {
        self.circles.push(FigCircle { center: xy(c.center), radius: c.radius });
        self
    }

    pub fn parabola(&mut self, gp: &GeneralParabola) -> &mut Self {
        self.parabolas.push(FigParabola { focus: xy(gp.focus), directrix: abc(&gp.directrix) });
        self
    }

    pub fn line(&mut self, l: &Line2) -> &mut Self {
        self.lines.push(abc(l));
        self
    }

    pub fn polygon(&mut self, pts: &[Point2]) -> &mut Self {
        self.polygons.push(pts.iter().map(|p| xy(*p)).collect());
        self
    }

    pub fn polyline(&mut self, pts: &[Point2]) -> &mut Self {
        self.polylines.push(pts.iter().map(|p| xy(*p)).collect());
        self
    }

    pub fn point(&mut self, p: Point2, label: &str) -> &mut Self {
        let label = (!label.is_empty()).then(|| label.to_string());
        self.points.push(FigPoint { at: xy(p), label });
        self
    }

    pub fn from_scene(s: &SceneFile) -> anyhow::Result<Figure> {
        let mut fig = Figure::default();
        if let Some(c) = s.circle {
            fig.circle(&Circle::new(point(c.center), c.radius)?);
        }
        if let Some(spec) = &s.parabola {
            let gp = parabola_from_spec(spec)?;
            fig.parabola(&gp).point(gp.focus, "F");
        }
        if let Some(v) = s.vertex {
            fig.point(point(v), "A");
        }
        Ok(fig)
    }
}

/// Figure from a render input: a document with a `figure` field, or a scene.
pub fn figure_from_json(text: &str) -> anyhow::Result<Figure> {
    let value: serde_json::Value = serde_json::from_str(text).context("malformed JSON")?;
    let obj = value.as_object().context("expected a JSON object")?;
    if let Some(fig) = obj.get("figure") {
        return serde_json::from_value(fig.clone()).context("invalid figure");
    }
    if obj.contains_key("polygons") || obj.contains_key("points") || obj.contains_key("circles") {
        return serde_json::from_value(value).context("invalid figure");
    }
    let scene: SceneFile = serde_json::from_value(value).context("invalid scene")?;
    Figure::from_scene(&scene)
}

#[derive(Debug, Clone, Copy)]
struct BBox {
    lo: Point2,
    hi: Point2,
}

impl BBox {
    fn empty() -> Self {
        BBox { lo: Point2::new(f64::INFINITY, f64::INFINITY), hi: Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    fn add(&mut self, p: Point2) {
        if p.is_finite() {
            self.lo = Point2::new(self.lo.x.min(p.x), self.lo.y.min(p.y));
            self.hi = Point2::new(self.hi.x.max(p.x), self.hi.y.max(p.y));
        }
    }

    fn is_empty(&self) -> bool {
        self.lo.x.is_nan() || self.lo.x > self.hi.x
    }

    fn corners(&self) -> [Point2; 4] {
        [self.lo, self.hi, Point2::new(self.lo.x, self.hi.y), Point2::new(self.hi.x, self.lo.y)]
    }
}

/// Unit normal toward the focus, focal distance and vertex of a parabola.
fn parabola_axes(f: &FigParabola) -> Option<(Point2, f64, Point2)> {
    let l = Line2::new(f.directrix[0], f.directrix[1], f.directrix[2]).ok()?;
    let focus = point(f.focus);
    let d = l.distance(focus);
    if !(d.is_finite() && d > 0.0) {
        return None;
    }
    let n = (focus - l.foot(focus)) * (1.0 / d);
    Some((n, d, focus - n * (d / 2.0)))
}

fn bounds(fig: &Figure) -> BBox {
    let mut b = BBox::empty();
    for c in &fig.circles {
        let (x, y, r) = (c.center[0], c.center[1], c.radius.abs());
        b.add(Point2::new(x - r, y - r));
        b.add(Point2::new(x + r, y + r));
    }
    for p in &fig.parabolas {
        b.add(point(p.focus));
        if let Some((_, _, v)) = parabola_axes(p) {
            b.add(v);
        }
    }
    for pts in fig.polygons.iter().chain(&fig.polylines) {
        for p in pts {
            b.add(point(*p));
        }
    }
    for p in &fig.points {
        b.add(point(p.at));
    }
    if b.is_empty() {
        return BBox { lo: Point2::new(-1.0, -1.0), hi: Point2::new(1.0, 1.0) };
    }
    let pad = 0.1 * (b.hi.x - b.lo.x).max(b.hi.y - b.lo.y).max(1e-3);
    BBox { lo: b.lo - Point2::new(pad, pad), hi: b.hi + Point2::new(pad, pad) }
}

/// Fixed-precision number without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

fn path(pts: &[Point2], closed: bool) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(p.x), num(p.y));
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub const PARABOLA_SAMPLES: usize = 256;

/// Renders a figure as SVG 1.1 with `scale` pixels per unit and y pointing up.
pub fn render_svg(fig: &Figure, scale: f64) -> String {
    let b = bounds(fig);
    let (w, h) = ((b.hi.x - b.lo.x) * scale, (b.hi.y - b.lo.y) * scale);
    let stroke = 1.5 / scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, num(w), num(h));
    let _ = writeln!(
        s,
        r#"<g transform="matrix({} 0 0 {} {} {})" fill="none" stroke-width="{}">"#,
        num(scale),
        num(-scale),
        num(-b.lo.x * scale),
        num(b.hi.y * scale),
        num(stroke)
    );
    for c in &fig.circles {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" stroke="#1f5fa8"/>"##,
            num(c.center[0]),
            num(c.center[1]),
            num(c.radius.abs())
        );
    }
    let reach = |o: Point2| b.corners().iter().map(|c| c.dist(o)).fold(0.0, f64::max) * 1.1;
    for p in &fig.parabolas {
        let Some((n, d, v)) = parabola_axes(p) else { continue };
        let t_max2 = 2.0 * reach(point(p.focus)) / d - 1.0;
        if t_max2 <= 0.0 {
            continue;
        }
        let t_max = t_max2.sqrt();
        let u = n.perp();
        let pts: Vec<Point2> = (0..PARABOLA_SAMPLES)
            .map(|i| {
                let t = -t_max + 2.0 * t_max * i as f64 / (PARABOLA_SAMPLES - 1) as f64;
                v + n * (d * t * t / 2.0) + u * (d * t)
            })
            .collect();
        let _ = writeln!(s, r##"<path d="{}" stroke="#b8322a"/>"##, path(&pts, false));
        if let Ok(l) = Line2::new(p.directrix[0], p.directrix[1], p.directrix[2]) {
            let _ = writeln!(
                s,
                r##"<path d="{}" stroke="#b8322a" stroke-dasharray="{} {}"/>"##,
                line_path(&l, &b),
                num(4.0 / scale),
                num(3.0 / scale)
            );
        }
    }
    for l in &fig.lines {
        if let Ok(l) = Line2::new(l[0], l[1], l[2]) {
            let _ = writeln!(s, r##"<path d="{}" stroke="#7a7a7a"/>"##, line_path(&l, &b));
        }
    }
    for pts in &fig.polygons {
        let pts: Vec<Point2> = pts.iter().map(|p| point(*p)).collect();
        let _ = writeln!(s, r##"<path d="{}" stroke="#222222"/>"##, path(&pts, true));
    }
    for pts in &fig.polylines {
        let pts: Vec<Point2> = pts.iter().map(|p| point(*p)).collect();
        let _ = writeln!(s, r##"<path d="{}" stroke="#2e8b57"/>"##, path(&pts, false));
    }
    for p in &fig.points {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#222222" stroke="none"/>"##,
            num(p.at[0]),
            num(p.at[1]),
            num(3.0 / scale)
        );
    }
    let _ = writeln!(s, "</g>");
    for p in &fig.points {
        let Some(label) = &p.label else { continue };
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            num((p.at[0] - b.lo.x) * scale + 5.0),
            num((b.hi.y - p.at[1]) * scale - 5.0),
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn line_path(l: &Line2, b: &BBox) -> String {
    let c = b.lo.midpoint(b.hi);
    let half = b.lo.dist(b.hi);
    let f = l.foot(c);
    let d = l.direction();
    path(&[f - d * half, f + d * half], false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_canvas() {
        let svg = render_svg(&Figure::default(), 100.0);
        assert!(svg.contains(r#"width="200.0000" height="200.0000""#));
        assert!(svg.contains("matrix(100.0000 0 0 -100.0000 100.0000 100.0000)"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn parabola_points_are_on_the_curve() {
        let f = FigParabola { focus: [0.0, 0.0], directrix: [1.0, 0.0, 0.5] };
        let (n, d, v) = parabola_axes(&f).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
        for t in [-2.0, 0.3, 1.7] {
            let x = v + n * (d * t * t / 2.0) + n.perp() * (d * t);
            assert!((x.norm() - (x.x + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(num(-0.00001), "0.0000");
        assert_eq!(num(-1.5), "-1.5000");
    }

    #[test]
    fn inputs() {
        assert!(figure_from_json("{}").unwrap().circles.is_empty());
        let fig = figure_from_json(r#"{"circle": {"center": [0, 0], "radius": 2}, "parabola": {"p": 1}}"#).unwrap();
        assert_eq!(fig.circles.len(), 1);
        assert_eq!(fig.parabolas.len(), 1);
        assert!(figure_from_json("{").is_err());
        assert!(figure_from_json(r#"{"figure": {"circles": [{"center": [0, 0]}]}}"#).is_err());
    }
}
