//! Scene files and the flags that override them.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use poncelet_core::{normalize_frame, CanonicalParabola, Circle, GeneralParabola, Line2, Point2, Similarity};
use serde::{Deserialize, Serialize};

/// Scene JSON. Points are `[x, y]`, lines `[a, b, c]` for `ax + by + c = 0`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default)]
    pub circle: Option<CircleSpec>,
    #[serde(default)]
    pub parabola: Option<ParabolaSpec>,
    #[serde(default)]
    pub vertex: Option<[f64; 2]>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub center: [f64; 2],
    #[serde(default = "unit_radius")]
    pub radius: f64,
}

fn unit_radius() -> f64 {
    1.0
}

/// Either `{"p": ..}` (focus at the origin, directrix `x = −p`) or an
/// explicit focus and directrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ParabolaSpec {
    Canonical { p: f64 },
    Focal { focus: [f64; 2], directrix: [f64; 3] },
}

/// A number or an inclusive `{"from", "to", "steps"}` grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Fixed(f64),
    Grid { from: f64, to: f64, steps: usize },
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Axis::Fixed(v) => vec![v],
            Axis::Grid { from, steps: 0 | 1, .. } => vec![from],
            Axis::Grid { from, to, steps } => {
                (0..steps).map(|i| from + (to - from) * i as f64 / (steps - 1) as f64).collect()
            }
        }
    }

    pub fn parse(s: &str) -> anyhow::Result<Axis> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().with_context(|| format!("bad number {t:?} in {s:?}"));
        match parts.as_slice() {
            [v] => Ok(Axis::Fixed(num(v)?)),
            [a, b, n] => Ok(Axis::Grid {
                from: num(a)?,
                to: num(b)?,
                steps: n.trim().parse().with_context(|| format!("bad step count in {s:?}"))?,
            }),
            _ => bail!("expected a value or from:to:steps, got {s:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub ex: Axis,
    pub ey: Axis,
    pub p: Axis,
    #[serde(default)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SceneArgs {
    /// Scene JSON file; flags below override its values.
    #[arg(long)]
    pub scene: Option<PathBuf>,
    /// Circle center x.
    #[arg(long, allow_hyphen_values = true)]
    pub ex: Option<f64>,
    /// Circle center y.
    #[arg(long, allow_hyphen_values = true)]
    pub ey: Option<f64>,
    /// Circle radius.
    #[arg(long)]
    pub r: Option<f64>,
    /// Parabola `y² = 2px + p²` (focus at the origin).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    /// Start vertex x.
    #[arg(long, allow_hyphen_values = true)]
    pub ax: Option<f64>,
    /// Start vertex y.
    #[arg(long, allow_hyphen_values = true)]
    pub ay: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scene {
    pub circle: Circle,
    pub parabola: Option<GeneralParabola>,
    pub vertex: Option<Point2>,
}

pub fn point(v: [f64; 2]) -> Point2 {
    Point2::new(v[0], v[1])
}

pub fn parabola_from_spec(spec: &ParabolaSpec) -> anyhow::Result<GeneralParabola> {
    Ok(match *spec {
        ParabolaSpec::Canonical { p } => CanonicalParabola::new(p)?.to_general(),
        ParabolaSpec::Focal { focus, directrix: [a, b, c] } => {
            GeneralParabola::new(point(focus), Line2::new(a, b, c)?)?
        }
    })
}

pub fn read_scene_file(path: &std::path::Path) -> anyhow::Result<SceneFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing scene {}", path.display()))
}

impl SceneArgs {
    pub fn file(&self) -> anyhow::Result<SceneFile> {
        match &self.scene {
            Some(path) => read_scene_file(path),
            None => Ok(SceneFile::default()),
        }
    }

    /// Merges the file and the flags. The circle is required.
    pub fn resolve(&self) -> anyhow::Result<Scene> {
        let file = self.file()?;
        let base = file.circle;
        if base.is_none() && self.ex.is_none() && self.ey.is_none() && self.r.is_none() {
            bail!("no circle given: use --ex/--ey/--r or a scene file");
        }
        let center = [
            self.ex.or(base.map(|c| c.center[0])).unwrap_or(0.0),
            self.ey.or(base.map(|c| c.center[1])).unwrap_or(0.0),
        ];
        let radius = self.r.or(base.map(|c| c.radius)).unwrap_or(1.0);
        let circle = Circle::new(point(center), radius)?;
        if !circle.center.is_finite() {
            bail!("circle center must be finite");
        }
        let parabola = match (self.p, file.parabola) {
            (Some(p), _) => Some(parabola_from_spec(&ParabolaSpec::Canonical { p })?),
            (None, Some(spec)) => Some(parabola_from_spec(&spec)?),
            (None, None) => None,
        };
        let vertex = match (self.ax, self.ay, file.vertex) {
            (None, None, None) => None,
            (ax, ay, v) => {
                Some(Point2::new(ax.or(v.map(|v| v[0])).unwrap_or(0.0), ay.or(v.map(|v| v[1])).unwrap_or(0.0)))
            }
        };
        Ok(Scene { circle, parabola, vertex })
    }
}

impl Scene {
    pub fn require_parabola(&self) -> anyhow::Result<GeneralParabola> {
        self.parabola.ok_or_else(|| anyhow::anyhow!("no parabola given: use --p or a scene file"))
    }

    /// Parabola of the confocal family at the origin whose directrix passes
    /// through the polar point of the focus, unless one is given.
    pub fn parabola_or_pivot(&self) -> anyhow::Result<GeneralParabola> {
        if let Some(gp) = self.parabola {
            return Ok(gp);
        }
        let e = self.circle.center;
        let n = e.norm2();
        if n <= 1e-24 {
            bail!("circle is centered at the focus; give --p");
        }
        let r2 = self.circle.radius * self.circle.radius;
        let x_l = e.x * (n - r2) / n;
        if x_l.abs() <= 1e-12 {
            bail!("the vertical directrix through L = ({x_l}, ..) passes through the focus");
        }
        Ok(CanonicalParabola::new(-x_l)?.to_general())
    }
}

/// Canonical frame of a scene: unit circle at `E`, parabola `y² = 2px + p²`.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub to_canonical: Similarity,
    pub to_scene: Similarity,
    pub circle: Circle,
    pub par: CanonicalParabola,
}

impl Frame {
    pub fn new(circle: &Circle, gp: &GeneralParabola) -> anyhow::Result<Frame> {
        let (sim, c, par) = normalize_frame(circle, gp)?;
        Ok(Frame { to_canonical: sim, to_scene: sim.inverse(), circle: c, par })
    }

    pub fn e(&self) -> Point2 {
        self.circle.center
    }

    pub fn p(&self) -> f64 {
        self.par.p
    }

    pub fn back(&self, q: Point2) -> Point2 {
        self.to_scene.apply(q)
    }
}
