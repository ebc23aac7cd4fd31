//! Poncelet quadrilaterals.
//!
//! With the circle centered at the focus every such quadrilateral is a
//! Darboux butterfly (antiparallelogram). Otherwise the diagonals pass through
//! the fixed point `L` where the polar of the focus meets the line through
//! the center and the focus, and the directrix must contain `L`.
//!
//! Quadrilaterals are stored in tangency order: sides AB, BC, CD and DA all
//! touch the parabola.

use serde::Serialize;

use crate::common_tangents::require_unit;
use crate::error::{GeometryError, Result};
use crate::geom::{CanonicalParabola, Circle, GeneralParabola, Line2, Point2};
use crate::joachimsthal::{self as jt, eval_s};
use crate::tol::{EPS_ALG, EPS_GEO};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagonalPoint {
    Finite(Point2),
    /// Parallel diagonals with the given unit direction.
    AtInfinity {
        direction: Point2,
    },
}

impl DiagonalPoint {
    pub fn finite(&self) -> Option<Point2> {
        match self {
            DiagonalPoint::Finite(p) => Some(*p),
            DiagonalPoint::AtInfinity { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PonceletQuad {
    pub vertices: [Point2; 4],
    /// Contact points of sides AB, BC, CD and DA.
    pub contacts: [Point2; 4],
    pub diagonal_point: DiagonalPoint,
    /// Largest side tangency defect.
    pub closure_residual: f64,
}

impl PonceletQuad {
    pub fn sides(&self) -> [(Point2, Point2); 4] {
        let [a, b, c, d] = self.vertices;
        [(a, b), (b, c), (c, d), (d, a)]
    }

    pub fn side_lines(&self) -> Result<[Line2; 4]> {
        let s = self.sides();
        Ok([
            Line2::through(s[0].0, s[0].1)?,
            Line2::through(s[1].0, s[1].1)?,
            Line2::through(s[2].0, s[2].1)?,
            Line2::through(s[3].0, s[3].1)?,
        ])
    }

    pub fn midpoints(&self) -> [Point2; 4] {
        self.sides().map(|(u, v)| u.midpoint(v))
    }

    /// Vertices reordered as the convex trapezoid/quadrilateral `A, B, D, C`.
    pub fn trapezoid_order(&self) -> [Point2; 4] {
        let [a, b, c, d] = self.vertices;
        [a, b, d, c]
    }

    pub fn is_degenerate(&self) -> bool {
        let v = self.vertices;
        (0..4).any(|i| (i + 1..4).any(|j| v[i].dist(v[j]) <= EPS_GEO))
    }
}

fn diagonal_point(v: [Point2; 4]) -> Result<DiagonalPoint> {
    let ac = Line2::through(v[0], v[2])?;
    let bd = Line2::through(v[1], v[3])?;
    Ok(match ac.intersect(&bd) {
        Some(l) if ac.angle_sin(&bd) > 1e-12 => DiagonalPoint::Finite(l),
        _ => DiagonalPoint::AtInfinity { direction: ac.direction() },
    })
}

fn finish_canonical(v: [Point2; 4], par: &CanonicalParabola) -> Result<PonceletQuad> {
    let mut contacts = [Point2::ORIGIN; 4];
    let mut residual = 0.0f64;
    for k in 0..4 {
        let l = Line2::through(v[k], v[(k + 1) % 4])?;
        residual = residual.max(par.line_tangency(&l).abs());
        contacts[k] =
            par.contact_point(&l).ok_or_else(|| GeometryError::Degenerate("side parallel to the axis".into()))?;
    }
    Ok(PonceletQuad { vertices: v, contacts, diagonal_point: diagonal_point(v)?, closure_residual: residual })
}

fn finish_general(v: [Point2; 4], par: &GeneralParabola) -> Result<PonceletQuad> {
    let mut contacts = [Point2::ORIGIN; 4];
    let mut residual = 0.0f64;
    for k in 0..4 {
        let l = Line2::through(v[k], v[(k + 1) % 4])?;
        residual = residual.max(par.line_tangency(&l).abs());
        contacts[k] =
            par.contact_point(&l).ok_or_else(|| GeometryError::Degenerate("side parallel to the axis".into()))?;
    }
    Ok(PonceletQuad { vertices: v, contacts, diagonal_point: diagonal_point(v)?, closure_residual: residual })
}

/// `−p − x_A`: circle points with these abscissae span a tangent chord.
pub fn butterfly_partner_x(x_a: f64, p: f64) -> Result<f64> {
    let x_b = -p - x_a;
    if x_a.abs() > 1.0 || x_b.abs() > 1.0 {
        return Err(GeometryError::NotApplicable(format!("abscissae {x_a} and {x_b} must both lie in [-1, 1]")));
    }
    Ok(x_b)
}

fn require_focal_center(circle: &Circle) -> Result<()> {
    require_unit(circle)?;
    if circle.center.norm() > EPS_GEO {
        return Err(GeometryError::Configuration("circle must be centered at the focus".into()));
    }
    Ok(())
}

/// Butterfly with vertex `a` on the unit circle about the focus.
pub fn build_butterfly(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<PonceletQuad> {
    require_focal_center(circle)?;
    let p = par.p;
    if p.abs() >= 2.0 {
        return Err(GeometryError::Configuration(format!("need |p| < 2R, got p = {p}")));
    }
    jt::check_on_circle(a, circle).map_err(|e| GeometryError::Configuration(e.to_string()))?;
    let s = eval_s(a, par);
    if s <= EPS_ALG {
        return Err(GeometryError::Configuration(format!("vertex must lie outside the parabola, S = {s:.3e}")));
    }
    let x_b = butterfly_partner_x(a.x, p).map_err(|e| GeometryError::Configuration(e.to_string()))?;
    if (x_b - a.x).abs() <= EPS_GEO {
        return Err(GeometryError::Configuration("vertex lies on the vertex tangent".into()));
    }
    let y_b = (1.0 - x_b * x_b).max(0.0).sqrt() * if a.y >= 0.0 { 1.0 } else { -1.0 };
    let v = [a, Point2::new(x_b, y_b), Point2::new(a.x, -a.y), Point2::new(x_b, -y_b)];
    finish_canonical(v, par)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompassTangent {
    pub line: Line2,
    pub contact: Point2,
    /// Foot of the contact point on the directrix.
    pub foot: Point2,
    /// Second point of the circle about the focus through `A` on this tangent.
    pub partner: Point2,
}

/// Tangents from `a` by the four-circle ruler-and-compass construction.
///
/// With `R = |AF|`, the circle of radius `R` about `a` meets the directrix at
/// the feet `T₁`, `T₂` of the contact points; circles of radius `R` about
/// them meet the circle of radius `R` about the focus again at `B`, `D`, and
/// `AB`, `AD` are the tangents.
pub fn compass_tangents(focus: Point2, directrix: &Line2, a: Point2) -> Result<Vec<CompassTangent>> {
    GeneralParabola::new(focus, *directrix)?;
    let r = a.dist(focus);
    let da = directrix.distance(a);
    let tol = EPS_GEO * (1.0 + r);
    if r < da - tol {
        return Ok(vec![]);
    }
    let c1 = Circle::new(focus, r)?;
    let feet: Vec<Point2> =
        if (r - da).abs() <= tol { vec![directrix.foot(a)] } else { Circle::new(a, r)?.intersect_line(directrix) };
    let mut out = Vec::new();
    for t in feet {
        let partner = Circle::new(t, r)?
            .intersect_circle(&c1)
            .into_iter()
            .max_by(|u, v| u.dist(a).total_cmp(&v.dist(a)))
            .unwrap_or(a);
        let line = if partner.dist(a) > 1e-3 * r {
            Line2::through(a, partner)?
        } else {
            Line2::through_dir(a, (t - focus).perp())?
        };
        let n = directrix.normal();
        let s = -(t - focus).norm2() / (2.0 * n.dot(t - focus));
        let contact = t + n * s;
        out.push(CompassTangent { line, contact, foot: t, partner });
    }
    Ok(out)
}

/// The member of the confocal family touching chord `AB`.
pub fn parabola_through_chord(a: Point2, b: Point2) -> Result<CanonicalParabola> {
    let l = Line2::through(a, b)?;
    if l.a().abs() <= EPS_ALG {
        return Err(GeometryError::DegenerateParabola("chord is parallel to the axis".into()));
    }
    if l.c().abs() <= EPS_ALG * (1.0 + a.norm().max(b.norm())) {
        return Err(GeometryError::DegenerateParabola("chord passes through the focus".into()));
    }
    CanonicalParabola::new(2.0 * l.a() * l.c())
}

/// Pole-polar point `L = E·Q(E)/|E|²` on the line through the focus and the
/// center, where the polar of the focus crosses it.
pub fn polar_pivot(e: Point2) -> Result<Point2> {
    let n = e.norm2();
    if n <= EPS_GEO * EPS_GEO {
        return Err(GeometryError::Configuration("L is undefined when the center is the focus".into()));
    }
    Ok(e * ((n - 1.0) / n))
}

/// `L` and the parameter `p = −x_L` of the vertical directrix through it.
pub fn l_point(e: Point2) -> Result<(Point2, f64)> {
    let l = polar_pivot(e)?;
    if l.x.abs() <= EPS_ALG {
        return Err(GeometryError::DegenerateParabola(format!(
            "vertical line through L = ({}, {}) passes through the focus",
            l.x, l.y
        )));
    }
    Ok((l, -l.x))
}

/// Quadrilateral from vertex `a` for the parabola whose directrix passes
/// through `L`.
pub fn build_quad_through_l(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<PonceletQuad> {
    require_unit(circle)?;
    let (l, p_star) = l_point(circle.center)?;
    if (par.p - p_star).abs() > EPS_ALG * p_star.abs().max(1.0) {
        return Err(GeometryError::NoClosure { residual: par.p - p_star });
    }
    jt::check_on_circle(a, circle).map_err(|e| GeometryError::Configuration(e.to_string()))?;
    let s = eval_s(a, par);
    if s <= EPS_ALG {
        return Err(GeometryError::Configuration(format!("vertex must lie outside the parabola, S = {s:.3e}")));
    }
    let tp = jt::tangents_from_point(a, par)?;
    let b = jt::second_intersection(a, &tp.tangents[0].line, circle)?;
    let d = jt::second_intersection(a, &tp.tangents[1].line, circle)?;
    if b.dist(d) > EPS_GEO {
        let off = Line2::through(b, d)?.distance(l);
        if off > 10.0 * EPS_GEO {
            return Err(GeometryError::Validation(format!("L is off the chord BD by {off:.3e}")));
        }
    }
    if a.dist(l) <= EPS_GEO {
        return Err(GeometryError::Degenerate("vertex coincides with L".into()));
    }
    let c = jt::second_intersection(a, &Line2::through(a, l)?, circle)?;
    finish_canonical([a, b, c, d], par)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadDerivedPoints {
    /// `AB ∩ CD`, absent when parallel.
    pub i: Option<Point2>,
    /// `AD ∩ BC`, absent when parallel.
    pub j: Option<Point2>,
    pub anticenter: Point2,
    /// Largest distance from the anticenter to the two unused maltitudes.
    pub anticenter_spread: f64,
    pub centroid: Point2,
    /// Line through the midpoints of the diagonals, absent if they coincide.
    pub newton_gauss: Option<Line2>,
}

fn maltitude(from: (Point2, Point2), to: (Point2, Point2)) -> Result<Line2> {
    let m = from.0.midpoint(from.1);
    Line2::through_dir(m, (to.1 - to.0).perp())
}

pub fn quad_derived_points(q: &PonceletQuad) -> Result<QuadDerivedPoints> {
    let [a, b, c, d] = q.vertices;
    let [ab, bc, cd, da] = q.side_lines()?;
    let meet = |u: &Line2, v: &Line2| if u.angle_sin(v) > 1e-12 { u.intersect(v) } else { None };
    let s = q.sides();
    let m = [maltitude(s[0], s[2])?, maltitude(s[1], s[3])?, maltitude(s[2], s[0])?, maltitude(s[3], s[1])?];
    let anticenter = m[0]
        .intersect(&m[1])
        .or_else(|| m[0].intersect(&m[3]))
        .or_else(|| m[1].intersect(&m[2]))
        .ok_or_else(|| GeometryError::Degenerate("maltitudes are parallel".into()))?;
    let anticenter_spread = m.iter().map(|l| l.distance(anticenter)).fold(0.0, f64::max);
    let (mac, mbd) = (a.midpoint(c), b.midpoint(d));
    Ok(QuadDerivedPoints {
        i: meet(&ab, &cd),
        j: meet(&da, &bc),
        anticenter,
        anticenter_spread,
        centroid: (a + b + c + d) * 0.25,
        newton_gauss: if mac.dist(mbd) > EPS_GEO { Line2::through(mac, mbd).ok() } else { None },
    })
}

/// Residuals of the invariants of a Poncelet quadrilateral in the canonical frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadInvariants {
    /// Distance of the focus from line IJ (center off the focus).
    pub focus_on_ij: Option<f64>,
    /// `|cos|` of the angle between IJ and EF.
    pub ij_perp_ef: Option<f64>,
    /// `|x_T + p|`.
    pub anticenter_on_directrix: f64,
    /// `|x_G − (x_E − p)/2|`.
    pub centroid_line: f64,
    /// `|Σx − 2(x_E − p)|`.
    pub vertex_sum: f64,
    /// `|(y_A + y_C) − (y_B + y_D)|`.
    pub newton_gauss_horizontal: f64,
    /// `|x_I·x_J − 1|` when the center is the focus.
    pub inverse_pair: Option<f64>,
    /// Distances of the focus and of the centroid from the nine-point circle of IJL.
    pub nine_point: Option<(f64, f64)>,
    /// Distance between the anticenter and the orthocenter of `M_AC M_BD L`.
    pub anticenter_as_orthocenter: Option<f64>,
    /// Distance between the centroid and the midpoint of E and the anticenter.
    pub centroid_midpoint: f64,
}

/// Orthocenter of a triangle from two altitudes.
pub fn orthocenter(a: Point2, b: Point2, c: Point2) -> Result<Point2> {
    let ha = Line2::through_dir(a, (c - b).perp())?;
    let hb = Line2::through_dir(b, (c - a).perp())?;
    ha.intersect(&hb).ok_or_else(|| GeometryError::Degenerate("degenerate triangle".into()))
}

pub fn nine_point_circle(a: Point2, b: Point2, c: Point2) -> Result<Circle> {
    Circle::through3(a.midpoint(b), b.midpoint(c), c.midpoint(a))
}

pub fn quad_invariants(q: &PonceletQuad, circle: &Circle, par: &CanonicalParabola) -> Result<QuadInvariants> {
    let dp = quad_derived_points(q)?;
    let [a, b, c, d] = q.vertices;
    let e = circle.center;
    let p = par.p;
    let f = par.focus();
    let centered = e.norm() <= EPS_GEO;
    let ij = match (dp.i, dp.j) {
        (Some(i), Some(j)) if i.dist(j) > EPS_GEO => Some((i, j, Line2::through(i, j)?)),
        _ => None,
    };
    let (focus_on_ij, ij_perp_ef) = match (&ij, centered) {
        (Some((_, _, l)), false) => {
            let ef = (e - f) * (1.0 / e.norm());
            (Some(l.distance(f)), Some(l.direction().dot(ef).abs()))
        }
        _ => (None, None),
    };
    let l_pt = q.diagonal_point.finite();
    let nine_point = match (&ij, l_pt) {
        (Some((i, j, _)), Some(l)) => {
            nine_point_circle(*i, *j, l).ok().map(|npc| (npc.residual(f).abs(), npc.residual(dp.centroid).abs()))
        }
        _ => None,
    };
    let anticenter_as_orthocenter =
        l_pt.and_then(|l| orthocenter(a.midpoint(c), b.midpoint(d), l).ok()).map(|o| o.dist(dp.anticenter));
    Ok(QuadInvariants {
        focus_on_ij,
        ij_perp_ef,
        anticenter_on_directrix: (dp.anticenter.x + p).abs(),
        centroid_line: (dp.centroid.x - (e.x - p) / 2.0).abs(),
        vertex_sum: (a.x + b.x + c.x + d.x - 2.0 * (e.x - p)).abs(),
        newton_gauss_horizontal: ((a.y + c.y) - (b.y + d.y)).abs(),
        inverse_pair: match (dp.i, dp.j, centered) {
            (Some(i), Some(j), true) => Some((i.x * j.x - 1.0).abs()),
            _ => None,
        },
        nine_point,
        anticenter_as_orthocenter,
        centroid_midpoint: dp.centroid.dist(e.midpoint(dp.anticenter)),
    })
}

/// Parabola inscribed in the butterfly of the isosceles trapezoid `ABDC`
/// (`AC ∥ BD`, `|AB| = |CD|`), and the circumcircle.
///
/// The focus is the circumcenter and the directrix is parallel to the
/// midline, on the same side of the focus and twice as far from it.
pub fn inscribe_parabola_in_trapezoid(a: Point2, b: Point2, d: Point2, c: Point2) -> Result<(GeneralParabola, Circle)> {
    let ac = Line2::through(a, c)?;
    let bd = Line2::through(b, d)?;
    let scale = a.dist(d).max(b.dist(c)).max(1e-300);
    if ac.angle_sin(&bd) > EPS_GEO {
        return Err(GeometryError::Validation("AC and BD are not parallel".into()));
    }
    if (a.dist(b) - c.dist(d)).abs() > EPS_GEO * scale {
        return Err(GeometryError::Validation("legs AB and CD differ in length".into()));
    }
    let circle = Circle::through3(a, b, c)?;
    let off = circle.residual(d).abs();
    if off > EPS_GEO * circle.radius {
        return Err(GeometryError::NotConcyclic { residual: off });
    }
    let f = circle.center;
    let mid = a.midpoint(c).midpoint(b.midpoint(d));
    let midline = ac.parallel_through(mid);
    let h = midline.eval(f);
    if h.abs() <= EPS_GEO * circle.radius {
        return Err(GeometryError::Degenerate("midline passes through the center".into()));
    }
    let directrix = midline.parallel_through(f - midline.normal() * (2.0 * h));
    let par = GeneralParabola::new(f, directrix)?;
    let butterfly = [a, b, c, d];
    let worst = (0..4)
        .map(|k| Line2::through(butterfly[k], butterfly[(k + 1) % 4]).map(|l| par.line_tangency(&l).abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    if worst > EPS_GEO * circle.radius {
        return Err(GeometryError::InconsistentQuad { residual: worst });
    }
    Ok((par, circle))
}

/// The parabola inscribed in the cyclic quadrilateral with tangency order
/// `A, B, C, D`, if it exists.
///
/// The focus is `IJ ∩ EL`; the directrix passes through `L` and through the
/// reflections of the focus in the four sides. Parallel diagonals go through
/// the trapezoid construction.
pub fn inscribe_parabola_in_cyclic_quad(a: Point2, b: Point2, c: Point2, d: Point2) -> Result<GeneralParabola> {
    let circle = Circle::through3(a, b, c)?;
    let off = circle.residual(d).abs();
    if off > EPS_GEO * circle.radius {
        return Err(GeometryError::NotConcyclic { residual: off });
    }
    let r = circle.radius;
    let v = [a, b, c, d];
    if v.iter().enumerate().any(|(i, p)| v[i + 1..].iter().any(|q| q.dist(*p) <= EPS_GEO * r)) {
        return Err(GeometryError::Degenerate("repeated vertex".into()));
    }
    let ac = Line2::through(a, c)?;
    let bd = Line2::through(b, d)?;
    if ac.angle_sin(&bd) <= EPS_GEO {
        return inscribe_parabola_in_trapezoid(a, b, d, c).map(|(p, _)| p);
    }
    let l = ac.intersect(&bd).expect("non-parallel diagonals meet");
    let sides = [Line2::through(a, b)?, Line2::through(b, c)?, Line2::through(c, d)?, Line2::through(d, a)?];
    let (ab, bc, cd, da) = (sides[0], sides[1], sides[2], sides[3]);
    let parallel = |u: &Line2, w: &Line2| u.angle_sin(w) <= 1e-12;
    if parallel(&ab, &cd) || parallel(&da, &bc) {
        return Err(GeometryError::InconsistentQuad { residual: f64::INFINITY });
    }
    let i = ab.intersect(&cd).expect("checked");
    let j = da.intersect(&bc).expect("checked");
    let e = circle.center;
    if e.dist(l) <= EPS_GEO * r {
        return Err(GeometryError::InconsistentQuad { residual: f64::INFINITY });
    }
    let ij = Line2::through(i, j)?;
    let el = Line2::through(e, l)?;
    let f = ij.intersect(&el).ok_or(GeometryError::InconsistentQuad { residual: f64::INFINITY })?;
    let through =
        sides.iter().map(|s| s.reflect(f)).max_by(|u, w| u.dist(l).total_cmp(&w.dist(l))).expect("four sides");
    if through.dist(l) <= EPS_GEO * r {
        return Err(GeometryError::Degenerate("directrix is undetermined".into()));
    }
    let directrix = Line2::through(l, through)?;
    let par =
        GeneralParabola::new(f, directrix).map_err(|_| GeometryError::InconsistentQuad { residual: f64::INFINITY })?;
    let worst = sides.iter().map(|s| par.line_tangency(s).abs()).fold(0.0, f64::max);
    if worst > EPS_GEO * r.max(1.0) {
        return Err(GeometryError::InconsistentQuad { residual: worst });
    }
    Ok(par)
}

/// Butterfly inscribed in `circle` with vertex `a` whose opposite sides meet
/// at `e_target`, and the parabola it circumscribes (focus at the center).
///
/// Inside the circle `e_target = AD ∩ BC`; outside it `e_target = AB ∩ CD`.
pub fn quad_with_given_diagonal_point(
    circle: &Circle,
    e_target: Point2,
    a: Point2,
) -> Result<(PonceletQuad, GeneralParabola)> {
    let f = circle.center;
    let r = circle.radius;
    if e_target.dist(f) <= EPS_GEO * r {
        return Err(GeometryError::NotApplicable("target point is the center".into()));
    }
    let pow = circle.power(e_target);
    if pow.abs() <= EPS_GEO * r * r {
        return Err(GeometryError::NotApplicable("target point lies on the circle".into()));
    }
    if circle.residual(a).abs() > EPS_GEO * r {
        return Err(GeometryError::NotApplicable("vertex is off the circle".into()));
    }
    let axis = Line2::through(f, e_target)?;
    if axis.distance(a) <= EPS_GEO * r {
        return Err(GeometryError::Degenerate("vertex lies on the line through the target and the center".into()));
    }
    let g = circle.invert(e_target)?;
    let (inner, outer) = if pow < 0.0 { (e_target, g) } else { (g, e_target) };
    let other = |from: Point2, through: Point2| -> Result<Point2> {
        jt::second_intersection(from, &Line2::through(from, through)?, circle)
    };
    let b = other(a, outer)?;
    let d = other(a, inner)?;
    let c = other(b, inner)?;
    let (par, _) = inscribe_parabola_in_trapezoid(a, b, d, c)?;
    Ok((finish_general([a, b, c, d], &par)?, par))
}
