//! Common tangents of the unit circle `D(E)` and the canonical parabola.
//!
//! Points of common tangency on the circle lie on the conic `ℋ(E, p)`, which
//! is the zero set of `f(A, E, p)` written as a quadratic form. Intersecting
//! it with the circle gives a quartic in `x`.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geom::{CanonicalParabola, Circle, ConicMatrix, Line2, Point2};
use crate::joachimsthal::{self as jt, common_tangency_residual, eval_s};
use crate::poly;
use crate::tol::{EPS_ALG, EPS_GEO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocusKind {
    Hyperbola,
    ParallelLinePair,
    DoubleLine,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommonTangentLocus {
    pub kind: LocusKind,
    pub matrix: ConicMatrix,
    /// Real component lines for the degenerate kinds; empty for a hyperbola
    /// or when the line pair is complex.
    pub lines: Vec<Line2>,
}

/// Matrix of `ℋ(E, p)`.
pub fn h_matrix(e: Point2, p: f64) -> ConicMatrix {
    let (x, y) = (e.x, e.y);
    let k = -2.0 * x * x - y * y + 1.0;
    ConicMatrix::from_matrix(Matrix3::new(
        2.0 * x,
        y,
        k,
        y,
        0.0,
        -x * y,
        k,
        -x * y,
        p + 2.0 * x * (x * x + y * y - 1.0),
    ))
}

pub fn h_conic(e: Point2, p: f64) -> CommonTangentLocus {
    let matrix = h_matrix(e, p);
    if e.norm() <= EPS_GEO {
        return CommonTangentLocus { kind: LocusKind::DoubleLine, matrix, lines: vec![Line2::vertical(-p / 2.0)] };
    }
    if e.y.abs() <= EPS_GEO {
        let disc = 1.0 - 2.0 * p * e.x;
        let lines = if disc < -EPS_ALG {
            vec![]
        } else if disc.abs() <= EPS_ALG {
            vec![Line2::vertical((2.0 * e.x * e.x - 1.0) / (2.0 * e.x))]
        } else {
            let s = disc.sqrt();
            vec![
                Line2::vertical((2.0 * e.x * e.x - 1.0 - s) / (2.0 * e.x)),
                Line2::vertical((2.0 * e.x * e.x - 1.0 + s) / (2.0 * e.x)),
            ]
        };
        return CommonTangentLocus { kind: LocusKind::ParallelLinePair, matrix, lines };
    }
    CommonTangentLocus { kind: LocusKind::Hyperbola, matrix, lines: vec![] }
}

/// Coefficients `[a, b, c, d, e]` of the quartic satisfied by the abscissae
/// of the common-tangent points.
pub fn quartic_coefficients(e: Point2, p: f64) -> [f64; 5] {
    let (x, y) = (e.x, e.y);
    let (x2, y2) = (x * x, y * y);
    [
        4.0 * (x2 + y2),
        -8.0 * x * (2.0 * x2 + 2.0 * y2 - 1.0),
        4.0 * (6.0 * x2 * x2 + 6.0 * x2 * y2 - 6.0 * x2 - y2 + p * x + 1.0),
        -4.0 * (2.0 * x2 - 1.0) * (2.0 * x2 * x + 2.0 * x * y2 + p - 2.0 * x),
        4.0 * x2 * (x2 * x2 + x2 * y2 - 2.0 * x2 - y2 + p * x) + (p - 2.0 * x).powi(2),
    ]
}

/// All four quartic roots, real or complex, with multiplicity.
pub fn quartic_roots_complex(e: Point2, p: f64) -> Result<Vec<Complex64>> {
    poly::complex_roots(&quartic_coefficients(e, p))
}

/// `−b/a` of the quartic.
pub fn quartic_root_sum_vieta(e: Point2) -> f64 {
    let n = e.norm2();
    2.0 * e.x * (2.0 * n - 1.0) / n
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommonTangentSet {
    pub points: Vec<Point2>,
    /// Circle tangents at `points`, which also touch the parabola.
    pub lines: Vec<Line2>,
    /// `|f(A, E, p)|` per point.
    pub residuals: Vec<f64>,
    /// The point also lies on `2x + p = 0` to within tolerance.
    pub on_vertical_branch: Vec<bool>,
}

impl CommonTangentSet {
    fn empty() -> Self {
        CommonTangentSet { points: vec![], lines: vec![], residuals: vec![], on_vertical_branch: vec![] }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub(crate) fn require_unit(circle: &Circle) -> Result<()> {
    if (circle.radius - 1.0).abs() > 1e-12 {
        return Err(GeometryError::Configuration(format!(
            "expected a unit circle, got radius {}; normalize the frame first",
            circle.radius
        )));
    }
    Ok(())
}

/// Newton refinement of a point on `D(E) ∩ {f = 0}`.
fn polish_point(a: Point2, e: Point2, p: f64) -> Point2 {
    let k = e.norm2() - 1.0;
    let g = |q: Point2| {
        let d = q - e;
        (d.norm2() - 1.0, p + 2.0 * d.x * (q.dot(e) - k))
    };
    let mut q = a;
    let (mut g1, mut g2) = g(q);
    for _ in 0..4 {
        let d = q - e;
        let fx = 2.0 * (q.dot(e) - k) + 2.0 * d.x * e.x;
        let fy = 2.0 * d.x * e.y;
        let (j11, j12, j21, j22) = (2.0 * d.x, 2.0 * d.y, fx, fy);
        let det = j11 * j22 - j12 * j21;
        if det.abs() <= 1e-14 {
            break;
        }
        let step = Point2::new((j22 * g1 - j12 * g2) / det, (j11 * g2 - j21 * g1) / det);
        let nq = q - step;
        let (n1, n2) = g(nq);
        if n1.hypot(n2) >= g1.hypot(g2) {
            break;
        }
        q = nq;
        g1 = n1;
        g2 = n2;
    }
    q
}

fn y_lift(x: f64, e: Point2, p: f64) -> f64 {
    let (xe, ye) = (e.x, e.y);
    let num =
        -p - 2.0 * x * x * xe + 4.0 * x * xe * xe + 2.0 * x * ye * ye - 2.0 * x - 2.0 * xe.powi(3) - 2.0 * xe * ye * ye
            + 2.0 * xe;
    num / (2.0 * ye * (x - xe))
}

/// Points of the unit circle where a common tangent with the parabola touches.
pub fn common_tangent_points(circle: &Circle, par: &CanonicalParabola) -> Result<CommonTangentSet> {
    require_unit(circle)?;
    let e = circle.center;
    let p = par.p;
    let mut candidates = Vec::new();

    if e.norm() <= EPS_GEO {
        if p.abs() > 2.0 {
            return Ok(CommonTangentSet::empty());
        }
        let h = (4.0 - p * p).max(0.0).sqrt() / 2.0;
        candidates.push(Point2::new(e.x - p / 2.0, e.y - h));
        candidates.push(Point2::new(e.x - p / 2.0, e.y + h));
    } else if e.y.abs() <= EPS_GEO {
        for l in h_conic(e, p).lines {
            let x = -l.c();
            let w = 1.0 - (x - e.x).powi(2);
            if w < -EPS_ALG {
                continue;
            }
            let h = w.max(0.0).sqrt();
            candidates.push(Point2::new(x, e.y - h));
            candidates.push(Point2::new(x, e.y + h));
        }
    } else {
        let c = quartic_coefficients(e, p);
        for r in poly::solve_poly(&c)? {
            if (r.value - e.x).abs() < EPS_GEO {
                continue;
            }
            candidates.push(Point2::new(r.value, y_lift(r.value, e, p)));
        }
    }

    let mut out = CommonTangentSet::empty();
    for a in candidates {
        let a = polish_point(a, e, p);
        let res = common_tangency_residual(a, circle, par).abs();
        if !a.is_finite() || circle.residual(a).abs() > EPS_GEO || res > 10.0 * EPS_ALG {
            continue;
        }
        if out.points.iter().any(|q| q.dist(a) <= EPS_GEO) {
            continue;
        }
        out.lines.push(circle.tangent_at(a)?);
        out.residuals.push(res);
        out.on_vertical_branch.push((2.0 * a.x + p).abs() <= EPS_GEO);
        out.points.push(a);
    }
    debug_assert!(out.len() <= 4);
    Ok(out)
}

/// Coefficients `[c3, c2, c1, c0]` of `det(λ·A + B)`.
pub fn pencil_cubic(a: &ConicMatrix, b: &ConicMatrix) -> [f64; 4] {
    let (ma, mb) = (a.matrix(), b.matrix());
    let mixed = |mask: [bool; 3]| {
        let mut m = Matrix3::zeros();
        for (j, &from_a) in mask.iter().enumerate() {
            m.set_column(j, &if from_a { ma.column(j) } else { mb.column(j) });
        }
        m.determinant()
    };
    let c2 = mixed([true, true, false]) + mixed([true, false, true]) + mixed([false, true, true]);
    let c1 = mixed([true, false, false]) + mixed([false, true, false]) + mixed([false, false, true]);
    [ma.determinant(), c2, c1, mb.determinant()]
}

/// Number of distinct real `λ` with `det(λ·A + B) = 0`.
pub fn count_real_degenerate(a: &ConicMatrix, b: &ConicMatrix) -> Result<usize> {
    let c = pencil_cubic(a, b);
    let scale = a.matrix().abs().max().max(b.matrix().abs().max()).max(1e-300).powi(3);
    if c.iter().all(|v| v.abs() <= 1e-14 * scale) {
        return Err(GeometryError::DegeneratePencil);
    }
    Ok(poly::solve_poly(&c)?.len())
}

/// Discriminant in `λ` of `det(λ·A + B)`.
pub fn pencil_discriminant(a: &ConicMatrix, b: &ConicMatrix) -> f64 {
    let [c3, c2, c1, c0] = pencil_cubic(a, b);
    poly::cubic_discriminant(c3, c2, c1, c0)
}

/// Circle centered at `e` through the focus: `x² + y² − 2(x·x_E + y·y_E) = 0`.
pub fn focal_circle_matrix(e: Point2) -> ConicMatrix {
    ConicMatrix::from_coeffs(1.0, 0.0, 1.0, -e.x, -e.y, 0.0)
}

/// Returns `(Disc_λ det(λD + P), p²·Disc_μ det(μD + ℋ))`.
///
/// The two agree when `e` is on the unit circle about the focus and `D` is
/// [`focal_circle_matrix`] of `e`, i.e. the unit circle at `e` through the focus.
pub fn pencil_discriminant_pair(d: &ConicMatrix, e: Point2, par: &CanonicalParabola) -> (f64, f64) {
    let lhs = pencil_discriminant(d, &ConicMatrix::parabola(par));
    let rhs = par.p * par.p * pencil_discriminant(d, &h_matrix(e, par.p));
    (lhs, rhs)
}

/// Partner of `a` under the circle-parabola / common-tangent correspondence
/// on a circle through the focus.
///
/// A point of `D ∩ P` maps to the second circle point of its tangent; a
/// common-tangent point maps through its other tangent to a point of `D ∩ P`.
pub fn correspondence_partner(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<Point2> {
    require_unit(circle)?;
    let q = circle.center.norm2() - 1.0;
    if q.abs() > EPS_ALG {
        return Err(GeometryError::NotApplicable(format!("circle misses the focus, Q(E) = {q:.3e}")));
    }
    jt::check_on_circle(a, circle)?;
    let s = eval_s(a, par);
    if s.abs() <= EPS_ALG {
        let tp = jt::tangents_from_point(a, par)?;
        return jt::second_intersection(a, &tp.tangents[0].line, circle);
    }
    let f = common_tangency_residual(a, circle, par);
    if f.abs() <= 10.0 * EPS_ALG && s > 0.0 {
        let radial = a - circle.center;
        let tp = jt::tangents_from_point(a, par)?;
        let other = tp
            .tangents
            .iter()
            .max_by(|u, v| u.line.direction().dot(radial).abs().total_cmp(&v.line.direction().dot(radial).abs()))
            .expect("two tangents");
        return jt::second_intersection(a, &other.line, circle);
    }
    Err(GeometryError::NotApplicable(format!(
        "point is neither on the parabola (S = {s:.3e}) nor a common-tangent point (f = {f:.3e})"
    )))
}

/// Directrix kite for a transversal point `a` of `D ∩ P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectrixKite {
    /// Second circle point of the tangent at `a`.
    pub b: Point2,
    /// Foot of `a` on the directrix.
    pub t1: Point2,
    /// Other point where the circle about `b` through the focus meets the directrix.
    pub t2: Point2,
    /// `|sin|` of the angle between `T₂F` and `BE`.
    pub parallel_sine: f64,
}

pub fn directrix_kite(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<DirectrixKite> {
    let s = eval_s(a, par);
    if s.abs() > EPS_ALG {
        return Err(GeometryError::NotApplicable(format!("point is off the parabola, S = {s:.3e}")));
    }
    jt::check_on_circle(a, circle)?;
    let tangent = par.tangent_at_y(a.y);
    let b = jt::second_intersection(a, &tangent, circle)?;
    let ell = par.directrix();
    let t1 = ell.foot(a);
    let f = par.focus();
    let r = b.dist(f);
    let hits = Circle::new(b, r)?.intersect_line(&ell);
    let t2 = hits
        .into_iter()
        .max_by(|u, v| u.dist(t1).total_cmp(&v.dist(t1)))
        .ok_or_else(|| GeometryError::Degenerate("circle about B misses the directrix".into()))?;
    let u = f - t2;
    let w = circle.center - b;
    let parallel_sine = u.cross(w).abs() / (u.norm() * w.norm()).max(1e-300);
    Ok(DirectrixKite { b, t1, t2, parallel_sine })
}
