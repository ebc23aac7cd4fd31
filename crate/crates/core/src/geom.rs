//! Plane primitives: points, lines, circles, parabolas, conic matrices and
//! similarities, plus normalization of a circle/parabola scene to the
//! canonical frame (focus at the origin, axis along +x, unit circle).

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::tol::EPS_GEO;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn approx_eq(self, o: Point2, tol: f64) -> bool {
        self.dist(o) <= tol
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Line `a·x + b·y + c = 0`, stored with `a² + b² = 1` and the first nonzero
/// of `(a, b)` positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    a: f64,
    b: f64,
    c: f64,
}

impl Line2 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let n = a.hypot(b);
        if n == 0.0 || n <= 1e-300 {
            return Err(GeometryError::DegenerateLine);
        }
        let sign = if a > 0.0 || (a == 0.0 && b > 0.0) { 1.0 } else { -1.0 };
        let k = sign / n;
        Ok(Line2 { a: a * k, b: b * k, c: c * k })
    }

    pub fn through(p: Point2, q: Point2) -> Result<Self> {
        let d = q - p;
        if d.norm() <= 1e-300 {
            return Err(GeometryError::DegenerateLine);
        }
        Line2::through_dir(p, d)
    }

    pub fn through_dir(p: Point2, dir: Point2) -> Result<Self> {
        let n = dir.perp();
        Line2::new(n.x, n.y, -n.dot(p))
    }

    pub fn vertical(x: f64) -> Self {
        Line2 { a: 1.0, b: 0.0, c: -x }
    }

    pub fn horizontal(y: f64) -> Self {
        Line2 { a: 0.0, b: 1.0, c: -y }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(self.a, self.b)
    }

    pub fn direction(&self) -> Point2 {
        Point2::new(-self.b, self.a)
    }

    /// Signed distance from the line.
    pub fn eval(&self, p: Point2) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn distance(&self, p: Point2) -> f64 {
        self.eval(p).abs()
    }

    /// `None` for a vertical line.
    pub fn slope(&self) -> Option<f64> {
        if self.b.abs() <= 1e-15 {
            None
        } else {
            Some(-self.a / self.b)
        }
    }

    pub fn is_vertical(&self, tol: f64) -> bool {
        self.b.abs() <= tol
    }

    pub fn foot(&self, p: Point2) -> Point2 {
        p - self.normal() * self.eval(p)
    }

    pub fn reflect(&self, p: Point2) -> Point2 {
        p - self.normal() * (2.0 * self.eval(p))
    }

    /// Some point on the line.
    pub fn point(&self) -> Point2 {
        self.normal() * (-self.c)
    }

    pub fn perpendicular_through(&self, p: Point2) -> Line2 {
        Line2::through_dir(p, self.normal()).expect("unit normal is never zero")
    }

    pub fn parallel_through(&self, p: Point2) -> Line2 {
        Line2 { a: self.a, b: self.b, c: -(self.a * p.x + self.b * p.y) }
    }

    /// `None` when the lines are parallel to within `1e-14` in direction.
    pub fn intersect(&self, o: &Line2) -> Option<Point2> {
        let det = self.a * o.b - self.b * o.a;
        if det.abs() <= 1e-14 {
            return None;
        }
        Some(Point2::new((self.b * o.c - self.c * o.b) / det, (self.c * o.a - self.a * o.c) / det))
    }

    /// Sine of the angle between the two directions.
    pub fn angle_sin(&self, o: &Line2) -> f64 {
        (self.a * o.b - self.b * o.a).abs()
    }

    pub fn approx_eq(&self, o: &Line2, tol: f64) -> bool {
        (self.a - o.a).abs() <= tol && (self.b - o.b).abs() <= tol && (self.c - o.c).abs() <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if radius <= 0.0 {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(Circle { center, radius })
    }

    pub fn unit(center: Point2) -> Self {
        Circle { center, radius: 1.0 }
    }

    /// Circumcircle of three points.
    pub fn through3(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        let d = 2.0 * ((b - a).cross(c - a));
        let scale = (b - a).norm2().max((c - a).norm2()).max(1e-300);
        if d.abs() <= 1e-14 * scale {
            return Err(GeometryError::Degenerate("collinear points have no circumcircle".into()));
        }
        let ba = b - a;
        let ca = c - a;
        let ux = (ca.y * ba.norm2() - ba.y * ca.norm2()) / d;
        let uy = (ba.x * ca.norm2() - ca.x * ba.norm2()) / d;
        let center = a + Point2::new(ux, uy);
        Circle::new(center, center.dist(a))
    }

    /// `|X − E|² − R²`.
    pub fn power(&self, p: Point2) -> f64 {
        (p - self.center).norm2() - self.radius * self.radius
    }

    /// `|X − E| − R`.
    pub fn residual(&self, p: Point2) -> f64 {
        p.dist(self.center) - self.radius
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.residual(p).abs() <= tol
    }

    pub fn point_at(&self, theta: f64) -> Point2 {
        self.center + Point2::new(theta.cos(), theta.sin()) * self.radius
    }

    pub fn angle_of(&self, p: Point2) -> f64 {
        let d = p - self.center;
        d.y.atan2(d.x)
    }

    /// Real intersections with a line, ordered along the line direction.
    pub fn intersect_line(&self, l: &Line2) -> Vec<Point2> {
        let foot = l.foot(self.center);
        let d = l.eval(self.center).abs();
        let r = self.radius;
        if d > r {
            if d - r <= 1e-14 * r {
                return vec![foot];
            }
            return vec![];
        }
        let h = ((r - d) * (r + d)).sqrt();
        if h == 0.0 {
            return vec![foot];
        }
        let dir = l.direction();
        vec![foot - dir * h, foot + dir * h]
    }

    /// Real intersections with another circle (0, 1 or 2 points).
    pub fn intersect_circle(&self, o: &Circle) -> Vec<Point2> {
        let d = o.center - self.center;
        let dist = d.norm();
        if dist == 0.0 {
            return vec![];
        }
        let (r0, r1) = (self.radius, o.radius);
        let a = (dist * dist + r0 * r0 - r1 * r1) / (2.0 * dist);
        let h2 = r0 * r0 - a * a;
        let u = d * (1.0 / dist);
        let base = self.center + u * a;
        if h2 < 0.0 {
            if h2 >= -1e-14 * r0 * r0 {
                return vec![base];
            }
            return vec![];
        }
        let h = h2.sqrt();
        if h == 0.0 {
            return vec![base];
        }
        vec![base - u.perp() * h, base + u.perp() * h]
    }

    pub fn tangent_at(&self, p: Point2) -> Result<Line2> {
        Line2::through_dir(p, (p - self.center).perp())
    }

    /// Inverse of `p` in this circle.
    pub fn invert(&self, p: Point2) -> Result<Point2> {
        let d = p - self.center;
        let n2 = d.norm2();
        if n2 <= 1e-300 {
            return Err(GeometryError::Degenerate("cannot invert the circle center".into()));
        }
        Ok(self.center + d * (self.radius * self.radius / n2))
    }
}

/// `y² = 2px + p²`: focus at the origin, directrix `x = −p`, axis along x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParabola {
    pub p: f64,
}

impl CanonicalParabola {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if p == 0.0 {
            return Err(GeometryError::DegenerateParabola("p must be nonzero".into()));
        }
        Ok(CanonicalParabola { p })
    }

    pub fn focus(&self) -> Point2 {
        Point2::ORIGIN
    }

    pub fn directrix(&self) -> Line2 {
        Line2::vertical(-self.p)
    }

    pub fn vertex(&self) -> Point2 {
        Point2::new(-self.p / 2.0, 0.0)
    }

    /// `y² − 2px − p²`.
    pub fn eval(&self, a: Point2) -> f64 {
        a.y * a.y - 2.0 * self.p * a.x - self.p * self.p
    }

    /// Point with `y = p·t`.
    pub fn point_at(&self, t: f64) -> Point2 {
        Point2::new(0.5 * self.p * (t * t - 1.0), self.p * t)
    }

    /// Tangent `t·y − x = p(t² + 1)/2` at `point_at(t)`.
    pub fn tangent_at(&self, t: f64) -> Line2 {
        Line2::new(-1.0, t, -0.5 * self.p * (t * t + 1.0)).expect("(−1, t) is never zero")
    }

    /// Tangent at the parabola point with ordinate `y`.
    pub fn tangent_at_y(&self, y: f64) -> Line2 {
        self.tangent_at(y / self.p)
    }

    /// Tangency defect `p(a² + b²) − 2ac` of a normalized line; zero iff tangent.
    pub fn line_tangency(&self, l: &Line2) -> f64 {
        self.p * (l.a * l.a + l.b * l.b) - 2.0 * l.a * l.c
    }

    /// Point of contact of a tangent line (vertex tangent gives the vertex).
    pub fn contact_point(&self, l: &Line2) -> Option<Point2> {
        if l.a.abs() <= 1e-15 {
            return None;
        }
        let y = -self.p * l.b / l.a;
        Some(Point2::new((y * y - self.p * self.p) / (2.0 * self.p), y))
    }

    pub fn to_general(&self) -> GeneralParabola {
        GeneralParabola { focus: Point2::ORIGIN, directrix: self.directrix() }
    }
}

/// Parabola given by focus and directrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralParabola {
    pub focus: Point2,
    pub directrix: Line2,
}

impl GeneralParabola {
    pub fn new(focus: Point2, directrix: Line2) -> Result<Self> {
        if !focus.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if directrix.distance(focus) <= 1e-14 * (1.0 + focus.norm()) {
            return Err(GeometryError::DegenerateParabola("focus lies on the directrix".into()));
        }
        Ok(GeneralParabola { focus, directrix })
    }

    /// Signed focus-directrix distance.
    pub fn focal_parameter(&self) -> f64 {
        self.directrix.eval(self.focus)
    }

    /// `|XF| − dist(X, ℓ)`: negative inside, zero on the curve.
    pub fn eval(&self, x: Point2) -> f64 {
        x.dist(self.focus) - self.directrix.distance(x)
    }

    /// Distance from the directrix of the focus reflected in `l`; zero iff `l` is tangent.
    pub fn line_tangency(&self, l: &Line2) -> f64 {
        self.directrix.eval(l.reflect(self.focus))
    }

    /// Contact point of a tangent: the foot of the reflected focus, pushed back along the axis.
    pub fn contact_point(&self, l: &Line2) -> Option<Point2> {
        let img = l.reflect(self.focus);
        let foot = self.directrix.foot(img);
        let axis_line = self.directrix.perpendicular_through(foot);
        l.intersect(&axis_line)
    }

    pub fn vertex(&self) -> Point2 {
        self.focus.midpoint(self.directrix.foot(self.focus))
    }

    pub fn approx_eq(&self, o: &GeneralParabola, tol: f64) -> bool {
        self.focus.approx_eq(o.focus, tol) && self.directrix.approx_eq(&o.directrix, tol)
    }
}

/// Symmetric 3×3 matrix of `ax² + 2bxy + cy² + 2dx + 2ey + f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicMatrix {
    m: Matrix3<f64>,
}

impl ConicMatrix {
    pub fn from_coeffs(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        ConicMatrix { m: Matrix3::new(a, b, d, b, c, e, d, e, f) }
    }

    /// Symmetrizes the input.
    pub fn from_matrix(m: Matrix3<f64>) -> Self {
        ConicMatrix { m: (m + m.transpose()) * 0.5 }
    }

    pub fn circle(c: &Circle) -> Self {
        let (x, y) = (c.center.x, c.center.y);
        ConicMatrix::from_coeffs(1.0, 0.0, 1.0, -x, -y, x * x + y * y - c.radius * c.radius)
    }

    pub fn parabola(par: &CanonicalParabola) -> Self {
        let p = par.p;
        ConicMatrix::from_coeffs(0.0, 0.0, 1.0, -p, 0.0, -p * p)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn eval(&self, p: Point2) -> f64 {
        let v = nalgebra::Vector3::new(p.x, p.y, 1.0);
        (v.transpose() * self.m * v)[(0, 0)]
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    /// Determinant of the upper-left 2×2 block.
    pub fn det2(&self) -> f64 {
        self.m[(0, 0)] * self.m[(1, 1)] - self.m[(0, 1)] * self.m[(1, 0)]
    }

    pub fn scaled(&self, k: f64) -> Self {
        ConicMatrix { m: self.m * k }
    }

    pub fn sub(&self, o: &ConicMatrix) -> Self {
        ConicMatrix { m: self.m - o.m }
    }
}

/// `X ↦ scale·Rot(angle)·X + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub angle: f64,
    pub translation: Point2,
    pub scale: f64,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity { angle: 0.0, translation: Point2::ORIGIN, scale: 1.0 };

    pub fn new(angle: f64, translation: Point2, scale: f64) -> Result<Self> {
        if !(angle.is_finite() && translation.is_finite() && scale.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if scale <= 0.0 {
            return Err(GeometryError::Configuration(format!("similarity scale must be positive, got {scale}")));
        }
        Ok(Similarity { angle, translation, scale })
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        p.rotate(self.angle) * self.scale + self.translation
    }

    /// Applies only the linear part.
    pub fn apply_vector(&self, v: Point2) -> Point2 {
        v.rotate(self.angle) * self.scale
    }

    pub fn inverse(&self) -> Similarity {
        let s = 1.0 / self.scale;
        Similarity { angle: -self.angle, translation: -(self.translation.rotate(-self.angle) * s), scale: s }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity {
            angle: self.angle + other.angle,
            translation: self.apply(other.translation),
            scale: self.scale * other.scale,
        }
    }

    pub fn apply_line(&self, l: &Line2) -> Line2 {
        let p = self.apply(l.point());
        let d = self.apply_vector(l.direction());
        Line2::through_dir(p, d).expect("similarity preserves nonzero directions")
    }

    pub fn apply_circle(&self, c: &Circle) -> Circle {
        Circle { center: self.apply(c.center), radius: c.radius * self.scale }
    }

    pub fn apply_parabola(&self, g: &GeneralParabola) -> GeneralParabola {
        GeneralParabola { focus: self.apply(g.focus), directrix: self.apply_line(&g.directrix) }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let a = self.angle.sin().abs() + (1.0 - self.angle.cos()).abs();
        a <= tol && self.translation.norm() <= tol && (self.scale - 1.0).abs() <= tol
    }
}

/// Maps a scene to the canonical frame.
///
/// The rotation sends the directrix normal (canonical sign) to `+x`, the
/// focus goes to the origin and the circle radius to 1. The returned `p` is
/// the signed focus-directrix distance divided by the input radius.
pub fn normalize_frame(circle: &Circle, parabola: &GeneralParabola) -> Result<(Similarity, Circle, CanonicalParabola)> {
    let parabola = GeneralParabola::new(parabola.focus, parabola.directrix)?;
    let circle = Circle::new(circle.center, circle.radius)?;
    let n = parabola.directrix.normal();
    let angle = -n.y.atan2(n.x);
    let scale = 1.0 / circle.radius;
    let translation = -(parabola.focus.rotate(angle) * scale);
    let sim = Similarity::new(angle, translation, scale)?;
    let center = sim.apply(circle.center);
    let p = parabola.focal_parameter() * scale;
    Ok((sim, Circle { center, radius: 1.0 }, CanonicalParabola::new(p)?))
}

/// True when `a` and `b` coincide to within [`EPS_GEO`].
pub fn coincident(a: Point2, b: Point2) -> bool {
    a.dist(b) <= EPS_GEO
}
