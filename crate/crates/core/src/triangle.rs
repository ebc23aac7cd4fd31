//! Poncelet triangles: closure when the circle passes through the focus,
//! construction from a vertex, Euler-line centers and their loci, the pedal
//! curve of side midpoints, and the orthocenter-first construction.

use serde::Serialize;

use crate::common_tangents::{common_tangent_points, require_unit};
use crate::error::{GeometryError, Result};
use crate::geom::{CanonicalParabola, Circle, Line2, Point2};
use crate::joachimsthal::{self as jt, common_tangency_residual, eval_s, s_ab};
use crate::poly;
use crate::tol::{EPS_ALG, EPS_GEO};

/// `Q(E) = x_E² + y_E² − 1`; zero iff the unit circle at `E` contains the focus.
pub fn q_of(e: Point2) -> f64 {
    e.norm2() - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PonceletTriangle {
    pub vertices: [Point2; 3],
    /// Contact points of sides AB, BC and CA.
    pub contacts: [Point2; 3],
    /// Tangency defect of side BC (normalized line form).
    pub closure_residual: f64,
    pub trivial: bool,
}

impl PonceletTriangle {
    pub fn sides(&self) -> [(Point2, Point2); 3] {
        let [a, b, c] = self.vertices;
        [(a, b), (b, c), (c, a)]
    }

    pub fn midpoints(&self) -> [Point2; 3] {
        self.sides().map(|(u, v)| u.midpoint(v))
    }
}

/// Far ends `B`, `C` of the tangents from `a` on the circle, with their lines.
fn tangent_chords(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<[(Point2, jt::Tangent); 2]> {
    let tp = jt::tangents_from_point(a, par)?;
    let far = |t: &jt::Tangent| {
        jt::second_intersection(a, &t.line, circle)
            .map_err(|_| GeometryError::Configuration("tangent from the vertex misses the circle".into()))
    };
    let t0 = tp.tangents[0];
    let t1 = *tp.tangents.last().expect("at least one tangent");
    Ok([(far(&t0)?, t0), (far(&t1)?, t1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureDefect {
    /// `S_BB·S_CC − S_BC²`.
    pub defect: f64,
    /// `−4p·S_AA·Q(E)·f(A, E, p) / |A|⁴`.
    pub factored: f64,
    /// `max(1, |S_BB·S_CC|, S_BC²)`, the rounding scale of `defect`.
    pub scale: f64,
}

impl ClosureDefect {
    pub fn gap(&self) -> f64 {
        (self.defect - self.factored).abs() / self.scale
    }
}

/// Tangency defect of `BC` for the triangle started at `a`, together with
/// its factored form.
pub fn closure_defect(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<ClosureDefect> {
    require_unit(circle)?;
    jt::check_on_circle(a, circle)?;
    let [(b, _), (c, _)] = tangent_chords(a, circle, par)?;
    let (sbb, scc, sbc) = (eval_s(b, par), eval_s(c, par), s_ab(b, c, par));
    let defect = sbb * scc - sbc * sbc;
    Ok(ClosureDefect {
        defect,
        factored: closure_defect_factored(a, circle, par),
        scale: 1f64.max((sbb * scc).abs()).max(sbc * sbc),
    })
}

/// `−4p·S_AA·Q(E)·f(A, E, p) / |A|⁴`.
pub fn closure_defect_factored(a: Point2, circle: &Circle, par: &CanonicalParabola) -> f64 {
    let n = a.norm2();
    -4.0 * par.p * eval_s(a, par) * q_of(circle.center) * common_tangency_residual(a, circle, par) / (n * n)
}

fn require_closure(circle: &Circle) -> Result<()> {
    require_unit(circle)?;
    let q = q_of(circle.center);
    if q.abs() > EPS_ALG {
        return Err(GeometryError::NoClosure { residual: q });
    }
    Ok(())
}

/// Triangle with vertex `a` on a unit circle through the focus.
pub fn build_triangle(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<PonceletTriangle> {
    require_closure(circle)?;
    jt::check_on_circle(a, circle)?;
    let [(b, tb), (c, tc)] = tangent_chords(a, circle, par)?;
    let trivial = a.dist(b) <= EPS_GEO || a.dist(c) <= EPS_GEO || b.dist(c) <= EPS_GEO;
    let bc = if b.dist(c) > EPS_GEO { Line2::through(b, c)? } else { other_tangent(b, &tb.line, par)? };
    let contact_bc =
        par.contact_point(&bc).ok_or_else(|| GeometryError::Degenerate("side BC is parallel to the axis".into()))?;
    Ok(PonceletTriangle {
        vertices: [a, b, c],
        contacts: [tb.contact, contact_bc, tc.contact],
        closure_residual: par.line_tangency(&bc).abs(),
        trivial,
    })
}

/// Tangent from `v` other than `known`.
fn other_tangent(v: Point2, known: &Line2, par: &CanonicalParabola) -> Result<Line2> {
    let tp = jt::tangents_from_point(v, par)?;
    Ok(tp
        .tangents
        .iter()
        .max_by(|u, w| known.angle_sin(&u.line).total_cmp(&known.angle_sin(&w.line)))
        .expect("at least one tangent")
        .line)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleCenters {
    pub orthocenter: Point2,
    pub centroid: Point2,
    pub nine_point: Point2,
    pub circumcenter: Point2,
    /// Orthocenter and circumcenter coincide, so the Euler line is undefined.
    pub degenerate_euler: bool,
    /// Closed-form evaluation was singular and the vertex-based values were used.
    pub synthetic: bool,
    /// Distance between the closed-form and vertex-based orthocenters.
    pub cross_check: f64,
}

impl TriangleCenters {
    /// `X_t = (1 − t)E + tO`.
    pub fn euler_point(&self, t: f64) -> Point2 {
        self.circumcenter * (1.0 - t) + self.orthocenter * t
    }
}

/// Centers from the vertices: `O = A + B + C − 2E`.
pub fn synthetic_centers(vertices: [Point2; 3], circumcenter: Point2) -> (Point2, Point2, Point2) {
    let [a, b, c] = vertices;
    let sum = a + b + c;
    let o = sum - circumcenter * 2.0;
    (o, sum * (1.0 / 3.0), o.midpoint(circumcenter))
}

/// Ordinate shift `(x_A + p)(x_E·y_A − x_A·y_E) / (x_A·x_E + y_A·y_E)`, or
/// `None` at the singular denominator.
fn orthocenter_shift(a: Point2, e: Point2, p: f64) -> Option<f64> {
    let den = a.dot(e);
    if den.abs() <= EPS_ALG {
        return None;
    }
    Some((a.x + p) * (e.x * a.y - a.x * e.y) / den)
}

pub fn centers(a: Point2, circle: &Circle, par: &CanonicalParabola) -> Result<TriangleCenters> {
    let tri = build_triangle(a, circle, par)?;
    let e = circle.center;
    let p = par.p;
    let (so, sg, sn) = synthetic_centers(tri.vertices, e);
    let (o, g, n, synthetic) = match orthocenter_shift(a, e, p) {
        Some(k) => (
            Point2::new(-p, a.y + k),
            Point2::new((2.0 * e.x - p) / 3.0, (a.y + 2.0 * e.y + k) / 3.0),
            Point2::new((e.x - p) / 2.0, (a.y + e.y + k) / 2.0),
            false,
        ),
        None => (so, sg, sn, true),
    };
    Ok(TriangleCenters {
        orthocenter: o,
        centroid: g,
        nine_point: n,
        circumcenter: e,
        degenerate_euler: o.dist(e) <= EPS_GEO,
        synthetic,
        cross_check: o.dist(so),
    })
}

/// Arc of the circle from `start` counter-clockwise by `sweep` radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub start_angle: f64,
    pub sweep: f64,
    pub start: Point2,
    pub end: Point2,
}

impl Arc {
    pub fn point_at(&self, circle: &Circle, s: f64) -> Point2 {
        circle.point_at(self.start_angle + s * self.sweep)
    }

    /// Relative position in `[0, 1]` of an angle, or `None` if off the arc.
    pub fn locate(&self, angle: f64) -> Option<f64> {
        let d = (angle - self.start_angle).rem_euclid(std::f64::consts::TAU);
        (d <= self.sweep).then(|| d / self.sweep)
    }
}

/// Circle-parabola intersections, from the quartic in `y`.
pub fn circle_parabola_intersections(circle: &Circle, par: &CanonicalParabola) -> Result<Vec<Point2>> {
    let (e, r, p) = (circle.center, circle.radius, par.p);
    // x = (y² − p²)/2p  into  (x − x_E)² + (y − y_E)² = R²
    let k = -p * p / (2.0 * p) - e.x;
    let a2 = 1.0 / (2.0 * p);
    let coeffs = [a2 * a2, 0.0, 2.0 * a2 * k + 1.0, -2.0 * e.y, k * k + e.y * e.y - r * r];
    let mut pts: Vec<Point2> = poly::solve_poly(&coeffs)?
        .into_iter()
        .map(|root| Point2::new((root.value * root.value - p * p) / (2.0 * p), root.value))
        .collect();
    pts.dedup_by(|u, v| u.dist(*v) <= EPS_GEO);
    Ok(pts)
}

/// Arcs of the circle lying outside the parabola (`S > 0`), longest first.
pub fn outside_arcs(circle: &Circle, par: &CanonicalParabola) -> Result<Vec<Arc>> {
    let mut pts = circle_parabola_intersections(circle, par)?;
    let tau = std::f64::consts::TAU;
    if pts.is_empty() {
        let probe = circle.point_at(0.0);
        if eval_s(probe, par) > 0.0 {
            return Ok(vec![Arc { start_angle: 0.0, sweep: tau, start: probe, end: probe }]);
        }
        return Ok(vec![]);
    }
    pts.sort_by(|u, v| circle.angle_of(*u).total_cmp(&circle.angle_of(*v)));
    let mut arcs = Vec::new();
    for i in 0..pts.len() {
        let (u, v) = (pts[i], pts[(i + 1) % pts.len()]);
        let a0 = circle.angle_of(u);
        let mut sweep = (circle.angle_of(v) - a0).rem_euclid(tau);
        if pts.len() == 1 {
            sweep = tau;
        }
        if sweep <= 1e-12 {
            continue;
        }
        let mid = circle.point_at(a0 + 0.5 * sweep);
        if eval_s(mid, par) > 0.0 {
            arcs.push(Arc { start_angle: a0, sweep, start: u, end: v });
        }
    }
    arcs.sort_by(|x, y| y.sweep.total_cmp(&x.sweep));
    Ok(arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthocenterRange {
    pub arc: Arc,
    pub x: Point2,
    pub x_prime: Point2,
    pub o_at_x: Point2,
    pub o_at_x_prime: Point2,
}

impl OrthocenterRange {
    pub fn o_min(&self) -> Point2 {
        if self.o_at_x.y <= self.o_at_x_prime.y {
            self.o_at_x
        } else {
            self.o_at_x_prime
        }
    }

    pub fn o_max(&self) -> Point2 {
        if self.o_at_x.y <= self.o_at_x_prime.y {
            self.o_at_x_prime
        } else {
            self.o_at_x
        }
    }

    pub fn length(&self) -> f64 {
        self.o_at_x.dist(self.o_at_x_prime)
    }
}

/// Orthocenter segment over the longest outside arc.
pub fn orthocenter_range(circle: &Circle, par: &CanonicalParabola) -> Result<OrthocenterRange> {
    require_closure(circle)?;
    let arc = *outside_arcs(circle, par)?
        .first()
        .ok_or_else(|| GeometryError::Configuration("circle lies inside the parabola".into()))?;
    orthocenter_range_on_arc(circle, par, arc)
}

pub fn orthocenter_range_on_arc(circle: &Circle, par: &CanonicalParabola, arc: Arc) -> Result<OrthocenterRange> {
    require_closure(circle)?;
    if circle.center.norm() <= EPS_GEO {
        return Err(GeometryError::Configuration("circle is centered at the focus".into()));
    }
    let mut on_arc: Vec<(f64, Point2)> = common_tangent_points(circle, par)?
        .points
        .into_iter()
        .filter_map(|x| arc.locate(circle.angle_of(x)).map(|s| (s, x)))
        .filter(|(s, _)| *s > 1e-9 && *s < 1.0 - 1e-9)
        .collect();
    on_arc.sort_by(|u, v| u.0.total_cmp(&v.0));
    if on_arc.len() != 2 {
        return Err(GeometryError::Configuration(format!(
            "expected two common-tangent points on the arc, found {}",
            on_arc.len()
        )));
    }
    let (x, x_prime) = (on_arc[0].1, on_arc[1].1);
    Ok(OrthocenterRange {
        arc,
        x,
        x_prime,
        o_at_x: centers(x, circle, par)?.orthocenter,
        o_at_x_prime: centers(x_prime, circle, par)?.orthocenter,
    })
}

/// Triangle with orthocenter `o` on the directrix, built from the parabola
/// tangents at parameters `t1` and `t2`. Also returns its circumcircle.
pub fn triangle_from_orthocenter(
    o: Point2,
    t1: f64,
    t2: f64,
    par: &CanonicalParabola,
) -> Result<(PonceletTriangle, Circle)> {
    let p = par.p;
    if (o.x + p).abs() > EPS_GEO {
        return Err(GeometryError::NotApplicable(format!("orthocenter is off the directrix by {:.3e}", o.x + p)));
    }
    if (t1 - t2).abs() <= EPS_GEO {
        return Err(GeometryError::Degenerate("tangents coincide".into()));
    }
    if (t1 * t2 + 1.0).abs() <= EPS_GEO {
        return Err(GeometryError::Degenerate("tangents meet on the directrix".into()));
    }
    let (l1, l2) = (par.tangent_at(t1), par.tangent_at(t2));
    let a = Point2::new(p * (t1 * t2 - 1.0) / 2.0, p * (t1 + t2) / 2.0);
    let b = l1.perpendicular_through(o).intersect(&l2).ok_or_else(|| GeometryError::Degenerate("s1 ∥ t2".into()))?;
    let c = l2.perpendicular_through(o).intersect(&l1).ok_or_else(|| GeometryError::Degenerate("s2 ∥ t1".into()))?;
    let circ = Circle::through3(a, b, c)?;
    let bc = Line2::through(b, c)?;
    let contact_bc =
        par.contact_point(&bc).ok_or_else(|| GeometryError::Degenerate("side BC is parallel to the axis".into()))?;
    let tri = PonceletTriangle {
        vertices: [a, b, c],
        contacts: [par.point_at(t2), contact_bc, par.point_at(t1)],
        closure_residual: par.line_tangency(&bc).abs(),
        trivial: a.dist(b) <= EPS_GEO || b.dist(c) <= EPS_GEO || a.dist(c) <= EPS_GEO,
    };
    Ok((tri, circ))
}

/// Value and rounding scale of the pedal cubic of the parabola with pedal
/// point `e`, evaluated at `m`.
pub fn pedal_curve_terms(m: Point2, e: Point2, p: f64) -> (f64, f64) {
    let (x, y, xe, ye) = (m.x, m.y, e.x, e.y);
    let terms = [
        2.0 * x * x * x,
        2.0 * x * y * y,
        (p - 4.0 * xe) * x * x,
        -2.0 * ye * x * y,
        (p - 2.0 * xe) * y * y,
        2.0 * xe * (xe - p) * x,
        2.0 * ye * (xe - p) * y,
        p * (xe * xe + ye * ye),
    ];
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum::<f64>().max(1.0))
}

pub fn pedal_curve_residual(m: Point2, e: Point2, p: f64) -> f64 {
    pedal_curve_terms(m, e, p).0
}

/// Foot of the perpendicular from `e` to the tangent at parameter `t`.
pub fn pedal_point(t: f64, e: Point2, p: f64) -> Point2 {
    let k = (t * e.x + e.y) / (t * t + 1.0);
    Point2::new(-p / 2.0 + t * k, p * t / 2.0 + k)
}

/// Parameters at which the pedal curve passes through its pedal point.
pub fn pedal_self_intersections(e: Point2, p: f64) -> Result<Vec<f64>> {
    Ok(poly::solve_quadratic(p / 2.0, -e.y, e.x + p / 2.0)?
        .into_iter()
        .filter(|r| r.multiplicity == 1)
        .map(|r| r.value)
        .collect())
}
