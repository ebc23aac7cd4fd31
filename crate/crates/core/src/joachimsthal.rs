//! Polar-form calculus for the canonical parabola: `S`, `S_AB`, the section
//! equation, tangents from a point and their chords on a circle.

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geom::{CanonicalParabola, Circle, Line2, Point2};
use crate::poly::{self, Root};
use crate::tol::{EPS_ALG, EPS_GEO};

/// `S(A) = y_A² − 2p·x_A − p²`. Positive outside the parabola, negative inside.
pub fn eval_s(a: Point2, par: &CanonicalParabola) -> f64 {
    par.eval(a)
}

/// `S_AB = y_A·y_B − p(x_A + x_B) − p²`.
pub fn s_ab(a: Point2, b: Point2, par: &CanonicalParabola) -> f64 {
    let p = par.p;
    a.y * b.y - p * (a.x + b.x) - p * p
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarForms {
    pub s_aa: f64,
    pub s_ab: f64,
    pub s_bb: f64,
}

impl PolarForms {
    /// `S_AA·S_BB − S_AB²`; zero iff line AB touches the parabola.
    pub fn tangency_defect(&self) -> f64 {
        self.s_aa * self.s_bb - self.s_ab * self.s_ab
    }

    /// Roots `k` of `S_BB·k² + 2·S_AB·k + S_AA = 0`.
    ///
    /// The point `(A + k·B)/(1 + k)` lies on the parabola, so `k` is the
    /// signed ratio in which it divides AB.
    pub fn section_roots(&self) -> Result<Vec<Root>> {
        poly::solve_quadratic(self.s_bb, 2.0 * self.s_ab, self.s_aa)
    }
}

pub fn polar_forms(a: Point2, b: Point2, par: &CanonicalParabola) -> PolarForms {
    PolarForms { s_aa: eval_s(a, par), s_ab: s_ab(a, b, par), s_bb: eval_s(b, par) }
}

/// Tangency defect of the line through `a` and `b`, scaled to be
/// independent of the chord length.
pub fn chord_tangency(a: Point2, b: Point2, par: &CanonicalParabola) -> f64 {
    let d2 = (b - a).norm2();
    if d2 == 0.0 {
        return f64::NAN;
    }
    polar_forms(a, b, par).tangency_defect() / d2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tangent {
    pub line: Line2,
    /// `None` for the vertical tangent.
    pub slope: Option<f64>,
    pub contact: Point2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentPair {
    /// Sorted by contact ordinate, ties broken by slope.
    pub tangents: Vec<Tangent>,
    /// The point lies on the parabola and only one tangent exists.
    pub degenerate: bool,
}

impl TangentPair {
    pub fn lines(&self) -> Vec<Line2> {
        self.tangents.iter().map(|t| t.line).collect()
    }

    pub fn contacts(&self) -> Vec<Point2> {
        self.tangents.iter().map(|t| t.contact).collect()
    }
}

fn contact_from_y(y: f64, par: &CanonicalParabola) -> Point2 {
    let p = par.p;
    Point2::new((y * y - p * p) / (2.0 * p), y)
}

/// Tangent lines from `a` to the parabola.
///
/// The contact ordinates are `y_A ± √S_AA`; the root of larger magnitude is
/// taken directly and the other from the product `p(2x_A + p)`. Each line is
/// anchored at `a` along the tangent direction `(y_c, p)`.
pub fn tangents_from_point(a: Point2, par: &CanonicalParabola) -> Result<TangentPair> {
    tangents_from_point_tol(a, par, EPS_ALG)
}

/// [`tangents_from_point`] with `|S| ≤ on_curve` treated as on the parabola.
pub fn tangents_from_point_tol(a: Point2, par: &CanonicalParabola, on_curve: f64) -> Result<TangentPair> {
    if !a.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let p = par.p;
    let s = eval_s(a, par);
    if s < -EPS_ALG {
        return Err(GeometryError::PointInsideParabola { s });
    }
    if s <= on_curve {
        let line = Line2::through_dir(a, Point2::new(a.y, p))?;
        let contact = contact_from_y(a.y, par);
        return Ok(TangentPair { tangents: vec![Tangent { line, slope: line.slope(), contact }], degenerate: true });
    }
    let sign = if a.y >= 0.0 { 1.0 } else { -1.0 };
    let q = a.y + sign * s.sqrt();
    let w = 2.0 * a.x + p;
    let y2 = p * w / q;
    let l1 = Line2::through_dir(a, Point2::new(q, p))?;
    let l2 = Line2::through_dir(a, Point2::new(w, q))?;
    let mut tangents = vec![
        Tangent { line: l1, slope: l1.slope(), contact: contact_from_y(q, par) },
        Tangent { line: l2, slope: l2.slope(), contact: contact_from_y(y2, par) },
    ];
    tangents.sort_by(|u, v| {
        u.contact
            .y
            .total_cmp(&v.contact.y)
            .then(u.slope.unwrap_or(f64::INFINITY).total_cmp(&v.slope.unwrap_or(f64::INFINITY)))
    });
    Ok(TangentPair { tangents, degenerate: false })
}

/// Roots of `(2x_A + p)m² − 2y_A·m + p = 0`, the slopes of the tangents from `a`.
pub fn tangent_slopes(a: Point2, par: &CanonicalParabola) -> Result<Vec<Root>> {
    poly::solve_quadratic(2.0 * a.x + par.p, -2.0 * a.y, par.p)
}

/// Real intersections of `line` with `circle`, ordered along the line.
pub fn tangent_circle_intersections(line: &Line2, circle: &Circle) -> Vec<Point2> {
    circle.intersect_line(line)
}

/// Second intersection of a line through `v` with the circle.
///
/// For `v` on the circle this is the reflection formula
/// `W = V − 2((V − E)·d)d` with `d` the unit direction. Otherwise the chord
/// is solved in full and the intersection farther from `v` is returned.
pub fn second_intersection(v: Point2, line: &Line2, circle: &Circle) -> Result<Point2> {
    let d = line.direction();
    let rel = v - circle.center;
    let r2 = circle.radius * circle.radius;
    let power = rel.norm2() - r2;
    if power.abs() <= EPS_ALG * r2.max(1.0) {
        return Ok(v - d * (2.0 * rel.dot(d)));
    }
    let b = rel.dot(d);
    let disc = b * b - power;
    if disc < 0.0 {
        return Err(GeometryError::TangentMissesCircle);
    }
    let h = disc.sqrt();
    let (s1, s2) = (-b - h, -b + h);
    let s = if s1.abs() >= s2.abs() { s1 } else { s2 };
    Ok(v + d * s)
}

/// Closed-form abscissa of the second chord point for a line of slope `m`
/// through `a` on the circle; the ordinate follows from the line.
pub fn second_intersection_closed_form(a: Point2, slope: Option<f64>, circle: &Circle) -> Point2 {
    let e = circle.center;
    match slope {
        None => Point2::new(a.x, 2.0 * e.y - a.y),
        Some(m) => {
            let x = ((m * m - 1.0) * a.x - 2.0 * m * (a.y - e.y) + 2.0 * e.x) / (m * m + 1.0);
            Point2::new(x, a.y + m * (x - a.x))
        }
    }
}

/// Abscissae of the chord of slope `m` through `a` on the circle, by the
/// full quadratic in `x`.
pub fn chord_abscissae(a: Point2, m: f64, circle: &Circle) -> Result<Vec<Root>> {
    let e = circle.center;
    let r2 = circle.radius * circle.radius;
    let k = m * a.x - a.y + e.y;
    poly::solve_quadratic(m * m + 1.0, -2.0 * (m * m * a.x + e.x - m * (a.y - e.y)), k * k + e.x * e.x - r2)
}

/// Slope of `CC′`, the chord joining the far ends of the two tangents from
/// `a` on the unit circle. `None` when the chord is vertical (A, E and the
/// focus collinear).
pub fn slope_cc(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<Option<f64>> {
    check_on_circle(a, circle)?;
    let s = eval_s(a, par);
    if s <= 0.0 {
        return Err(GeometryError::NotApplicable(format!("need two tangents from A, S_AA = {s:.3e}")));
    }
    let e = circle.center;
    let num = a.norm2() - a.dot(e);
    let den = a.x * e.y - a.y * e.x;
    if den.abs() <= EPS_ALG * num.abs().max(1.0) {
        return Ok(None);
    }
    Ok(Some(-num / den))
}

/// `f(A, E, p) = p + 2(x_A − x_E)(x_A·x_E + y_A·y_E − x_E² − y_E² + 1)`.
pub fn common_tangency_residual(a: Point2, circle: &Circle, par: &CanonicalParabola) -> f64 {
    let e = circle.center;
    par.p + 2.0 * (a.x - e.x) * (a.dot(e) - e.norm2() + 1.0)
}

pub(crate) fn check_on_circle(a: Point2, circle: &Circle) -> Result<()> {
    let r = circle.residual(a);
    if r.abs() > EPS_GEO {
        return Err(GeometryError::NotApplicable(format!("point is off the circle by {r:.3e}")));
    }
    Ok(())
}
