//! Verification suites. Every check compares a construction against a route
//! that does not share its closed form: orbit iteration, altitude
//! intersection, reflections of the focus, dense sampling.

use std::f64::consts::TAU;

use poncelet_core::common_tangents::{
    common_tangent_points, count_real_degenerate, directrix_kite, focal_circle_matrix, h_matrix,
    pencil_discriminant_pair, quartic_coefficients, quartic_roots_complex,
};
use poncelet_core::joachimsthal::{
    common_tangency_residual, eval_s, second_intersection, second_intersection_closed_form, tangents_from_point,
};
use poncelet_core::oracle::{
    admissible_starts, classify_isoperiodic, detect_period, run_orbit, sweep_residual, Branch, FamilySpec,
    Isoperiodicity,
};
use poncelet_core::quad::{
    build_butterfly, build_quad_through_l, compass_tangents, inscribe_parabola_in_cyclic_quad,
    inscribe_parabola_in_trapezoid, l_point, parabola_through_chord, quad_derived_points,
    quad_with_given_diagonal_point,
};
use poncelet_core::triangle::{
    build_triangle, centers, circle_parabola_intersections, closure_defect, orthocenter_range, pedal_curve_terms,
    pedal_point, pedal_self_intersections, q_of, triangle_from_orthocenter,
};
use poncelet_core::{normalize_frame, poly, CanonicalParabola, Circle, ConicMatrix, GeneralParabola, Line2, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::registry::{check_def, statement, Suite, CHECKS};
use crate::scene::{Frame, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: &'static str,
    pub result: &'static str,
    pub statement: &'static str,
    pub samples: usize,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub mismatches: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameInfo {
    pub center: [f64; 2],
    pub p: f64,
    pub scale: f64,
    pub derived_p: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suites: Vec<&'static str>,
    pub seed: u64,
    pub samples: usize,
    pub scene: Scene,
    pub frame: FrameInfo,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub pass: bool,
}

pub struct Options {
    pub samples: usize,
    pub seed: u64,
    pub tol: Option<f64>,
}

/// Accumulates one check's samples.
#[derive(Default)]
struct Measure {
    samples: usize,
    worst: Option<f64>,
    mismatches: usize,
    notes: Vec<String>,
    skip: Option<String>,
}

impl Measure {
    fn residual(&mut self, r: f64) {
        self.samples += 1;
        if r.is_nan() {
            self.mismatches += 1;
            return;
        }
        self.worst = Some(self.worst.map_or(r, |w| w.max(r)));
    }

    /// Records a yes/no agreement as a sample.
    fn agree(&mut self, ok: bool) {
        self.samples += 1;
        if !ok {
            self.mismatches += 1;
        }
    }

    fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    fn skip(&mut self, why: impl Into<String>) {
        self.skip = Some(why.into());
    }
}

struct Ctx<'a> {
    frame: &'a Frame,
    opts: &'a Options,
    out: Vec<CheckRecord>,
}

impl Ctx<'_> {
    fn circle(&self) -> Circle {
        self.frame.circle
    }

    fn par(&self) -> CanonicalParabola {
        self.frame.par
    }

    fn n(&self) -> usize {
        self.opts.samples.max(1)
    }

    /// Configurations for checks that are expensive per sample.
    fn configs(&self) -> usize {
        (self.opts.samples / 10).max(2)
    }

    fn run(&mut self, id: &'static str, body: impl FnOnce(&mut ChaCha8Rng, &mut Measure)) {
        let def = check_def(id);
        let stream = CHECKS.iter().position(|c| c.id == id).expect("registered") as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        rng.set_stream(stream);
        let mut m = Measure::default();
        body(&mut rng, &mut m);
        let tolerance = if def.tolerance == 0.0 { 0.0 } else { self.opts.tol.unwrap_or(def.tolerance) };
        let status = if let Some(why) = m.skip.take() {
            m.notes.insert(0, why);
            Status::Skipped
        } else if m.samples == 0 {
            m.notes.insert(0, "no admissible samples".into());
            Status::Skipped
        } else if m.mismatches > 0 || m.worst.is_some_and(|w| w > tolerance) {
            Status::Fail
        } else {
            Status::Pass
        };
        let worst = m.worst.map(|w| if w.is_finite() { w } else { f64::MAX });
        self.out.push(CheckRecord {
            id,
            result: def.result,
            statement: statement(def.result).text,
            samples: m.samples,
            max_residual: worst,
            tolerance,
            mismatches: m.mismatches,
            status,
            note: (!m.notes.is_empty()).then(|| m.notes.join("; ")),
        });
    }
}

pub fn run(
    scene: &Scene,
    gp: &GeneralParabola,
    derived_p: bool,
    suites: &[Suite],
    opts: &Options,
) -> anyhow::Result<Report> {
    let frame = Frame::new(&scene.circle, gp)?;
    let mut ctx = Ctx { frame: &frame, opts, out: Vec::new() };
    for s in suites {
        match s {
            Suite::CommonTangents => common_tangents_suite(&mut ctx),
            Suite::Triangle => triangle_suite(&mut ctx),
            Suite::QuadEf => quad_ef_suite(&mut ctx),
            Suite::QuadGeneral => quad_general_suite(&mut ctx),
            Suite::Isoperiodic => isoperiodic_suite(&mut ctx, scene, gp),
        }
    }
    let count = |st: Status| ctx.out.iter().filter(|c| c.status == st).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    let e = frame.e();
    Ok(Report {
        suites: suites.iter().map(|s| s.name()).collect(),
        seed: opts.seed,
        samples: opts.samples,
        scene: *scene,
        frame: FrameInfo { center: [e.x, e.y], p: frame.p(), scale: scene.circle.radius, derived_p },
        passed,
        failed,
        skipped,
        pass: failed == 0,
        checks: ctx.out,
    })
}

fn par(p: f64) -> CanonicalParabola {
    CanonicalParabola::new(p).expect("nonzero p")
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn on_unit_circle(rng: &mut ChaCha8Rng) -> Point2 {
    let th = rng.gen_range(0.0..TAU);
    Point2::new(th.cos(), th.sin())
}

/// Center at distance `r` from the focus in a random direction.
fn at_distance(rng: &mut ChaCha8Rng, r: f64) -> Point2 {
    on_unit_circle(rng) * r
}

fn random_starts(rng: &mut ChaCha8Rng, circle: &Circle, count: usize, accept: impl Fn(Point2) -> bool) -> Vec<Point2> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..200 * count {
        let a = circle.point_at(rng.gen_range(0.0..TAU));
        if accept(a) {
            out.push(a);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

fn altitude_meet(a: Point2, b: Point2, c: Point2) -> Option<Point2> {
    let ha = Line2::through(b, c).ok()?.perpendicular_through(a);
    let hb = Line2::through(a, c).ok()?.perpendicular_through(b);
    ha.intersect(&hb)
}

fn meet(u: (Point2, Point2), v: (Point2, Point2)) -> Option<Point2> {
    let (l1, l2) = (Line2::through(u.0, u.1).ok()?, Line2::through(v.0, v.1).ok()?);
    if l1.angle_sin(&l2) < 1e-9 {
        return None;
    }
    l1.intersect(&l2)
}

/// Coefficient distance between two normalized lines, up to orientation.
fn line_gap(u: &Line2, v: &Line2) -> f64 {
    let d = |s: f64| (u.a() - s * v.a()).abs().max((u.b() - s * v.b()).abs()).max((u.c() - s * v.c()).abs());
    d(1.0).min(d(-1.0))
}

/// Scaled discriminant of `S` restricted to the line through `a` and `b`;
/// zero iff the line touches `y² = 2px + p²`.
fn chord_disc(a: Point2, b: Point2, p: f64) -> f64 {
    let d = b - a;
    let d = d * (1.0 / d.norm());
    let qa = d.y * d.y;
    let qb = 2.0 * a.y * d.y - 2.0 * p * d.x;
    let qc = a.y * a.y - 2.0 * p * a.x - p * p;
    (qb * qb - 4.0 * qa * qc).abs() / (1.0f64).max(qb * qb).max((4.0 * qa * qc).abs())
}

/// Distance from the focus reflected in `line` to the directrix; zero iff
/// the line touches the parabola.
fn reflection_gap(line: &Line2, gp: &GeneralParabola) -> f64 {
    gp.directrix.distance(line.reflect(gp.focus))
}

/// Common-tangent points located by sign changes of the tangency defect of
/// the circle tangents, without the quartic.
fn brute_common_tangents(circle: &Circle, pp: &CanonicalParabola) -> Option<Vec<Point2>> {
    const N: usize = 20_000;
    let g = |th: f64| pp.line_tangency(&circle.tangent_at(circle.point_at(th)).expect("point on circle"));
    let th = |k: usize| TAU * k as f64 / N as f64;
    let vals: Vec<f64> = (0..N).map(|k| g(th(k))).collect();
    if vals.iter().any(|v| v.abs() < 1e-5) {
        return None;
    }
    let mut out = Vec::new();
    for k in 0..N {
        let (v0, v1) = (vals[k], vals[(k + 1) % N]);
        if (v0 > 0.0) == (v1 > 0.0) {
            continue;
        }
        let (mut lo, mut hi) = (th(k), th(k) + TAU / N as f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) > 0.0) == (v0 > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(circle.point_at(0.5 * (lo + hi)));
    }
    Some(out)
}

fn nearest(points: &[Point2], x: Point2) -> f64 {
    points.iter().map(|q| q.dist(x)).fold(f64::INFINITY, f64::min)
}

// ---------------------------------------------------------------- common tangents

fn common_tangents_suite(ctx: &mut Ctx) {
    let n = ctx.n();
    let pp = ctx.par();
    let circle = ctx.circle();

    ctx.run("common-tangents.focal-property", |rng, m| {
        for _ in 0..n {
            let x = pp.point_at(rng.gen_range(-4.0..4.0));
            let foot = pp.directrix().foot(x);
            let tangent = pp.tangent_at(x.y / pp.p);
            m.residual(tangent.reflect(pp.focus()).dist(foot) / (1.0 + x.norm()));
        }
    });

    ctx.run("common-tangents.tangent-pair", |rng, m| {
        let mut routes = 0.0f64;
        for _ in 0..n {
            let a = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)) + circle.center;
            if eval_s(a, &pp) < 1e-3 {
                continue;
            }
            let Ok(tp) = tangents_from_point(a, &pp) else { continue };
            let mut worst = 0.0f64;
            for t in &tp.tangents {
                let far = a + t.line.direction();
                worst = worst.max(chord_disc(a, far, pp.p));
                worst = worst.max(eval_s(t.contact, &pp).abs() / (1.0 + t.contact.norm2()));
                worst = worst.max(t.line.distance(t.contact) / (1.0 + t.contact.norm()));
                let on = circle.point_at(rng.gen_range(0.0..TAU));
                if let Ok(b) = second_intersection(on, &t.line.parallel_through(on), &circle) {
                    let c = second_intersection_closed_form(on, t.line.slope(), &circle);
                    routes = routes.max(b.dist(c));
                }
            }
            m.residual(worst);
        }
        m.note(format!("second intersection, construction vs closed form: {routes:.2e}"));
        if routes > 1e-9 {
            m.mismatches += 1;
        }
    });

    ctx.run("common-tangents.compass-construction", |rng, m| {
        let mut tally = [0usize; 3];
        for _ in 0..n {
            let focus = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let normal = on_unit_circle(rng);
            let dist = rng.gen_range(0.3..2.0);
            let directrix = Line2::through_dir(focus - normal * dist, normal.perp()).expect("unit direction");
            let gp = GeneralParabola::new(focus, directrix).expect("focus off directrix");
            let a = focus + Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let side = gp.eval(a);
            if side.abs() < 1e-6 {
                continue;
            }
            let Ok(sol) = compass_tangents(focus, &directrix, a) else {
                m.agree(false);
                continue;
            };
            tally[sol.len().min(2)] += 1;
            if sol.len() != if side > 0.0 { 2 } else { 0 } {
                m.agree(false);
                continue;
            }
            if sol.is_empty() {
                m.agree(true);
                continue;
            }
            let Ok((sim, _, cp)) = normalize_frame(&Circle::new(focus, 1.0).expect("unit"), &gp) else { continue };
            let back = sim.inverse();
            let Ok(tp) = tangents_from_point(sim.apply(a), &cp) else {
                m.agree(false);
                continue;
            };
            let mut worst = 0.0f64;
            for t in &tp.tangents {
                let line = back.apply_line(&t.line);
                let contact = back.apply(t.contact);
                let best = sol
                    .iter()
                    .map(|s| line_gap(&s.line, &line).max(s.contact.dist(contact) / (1.0 + contact.norm())))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(best);
            }
            m.residual(worst);
        }
        m.note(format!("solution counts (none, one, two): {tally:?}"));
    });

    let configs = ctx.configs();
    ctx.run("common-tangents.locus", |rng, m| {
        for k in 0..configs {
            let (c, pr) = if k == 0 {
                (circle, pp)
            } else {
                {
                    let d = rng.gen_range(0.0..2.5);
                    (Circle::unit(at_distance(rng, d)), par(signed(rng, 0.2, 2.0)))
                }
            };
            let Some(pts) = brute_common_tangents(&c, &pr) else { continue };
            let h = h_matrix(c.center, pr.p);
            for x in pts {
                let scale = 1.0 + x.norm2() * (1.0 + c.center.norm2());
                let on_h = h.eval(x).abs() / scale;
                let on_line = (2.0 * x.x + pr.p).abs();
                m.residual(on_h.min(on_line));
            }
        }
    });

    ctx.run("common-tangents.quartic", |rng, m| {
        for k in 0..configs {
            let (c, pr) = if k == 0 {
                (circle, pp)
            } else {
                {
                    let d = rng.gen_range(0.0..2.5);
                    (Circle::unit(at_distance(rng, d)), par(signed(rng, 0.2, 2.0)))
                }
            };
            let Some(brute) = brute_common_tangents(&c, &pr) else { continue };
            let Ok(set) = common_tangent_points(&c, &pr) else {
                m.agree(false);
                continue;
            };
            if set.len() > 4 || set.len() != brute.len() {
                m.agree(false);
                m.note(format!(
                    "E = ({:.3}, {:.3}), p = {:.3}: quartic {} vs sampled {}",
                    c.center.x,
                    c.center.y,
                    pr.p,
                    set.len(),
                    brute.len()
                ));
                continue;
            }
            let coeffs = quartic_coefficients(c.center, pr.p);
            let mut worst = 0.0f64;
            for x in &brute {
                worst = worst.max(nearest(&set.points, *x));
                worst = worst.max(poly::eval(&coeffs, x.x).abs() / poly::eval_scale(&coeffs, x.x));
            }
            m.residual(worst);
        }
    });

    ctx.run("common-tangents.focal-circle", |rng, m| {
        let origin = Circle::unit(Point2::ORIGIN);
        for k in 0..n {
            let p = if k == 0 && circle.center.norm() <= 1e-12 && pp.p.abs() < 2.0 {
                pp.p
            } else {
                signed(rng, 0.05, 1.95)
            };
            let Ok(set) = common_tangent_points(&origin, &par(p)) else {
                m.agree(false);
                continue;
            };
            let h = (4.0 - p * p).sqrt() / 2.0;
            let expect = [Point2::new(-p / 2.0, -h), Point2::new(-p / 2.0, h)];
            if set.len() != 2 {
                m.agree(false);
                continue;
            }
            m.residual(expect.iter().map(|x| nearest(&set.points, *x)).fold(0.0, f64::max));
        }
    });
}

// ---------------------------------------------------------------- triangles

fn triangle_suite(ctx: &mut Ctx) {
    let n = ctx.n();
    let configs = ctx.configs();
    let pp = ctx.par();
    let circle = ctx.circle();
    let e = circle.center;
    let q = q_of(e);
    let focal = q.abs() <= 1e-9;

    ctx.run("triangle.oracle-closure", |_, m| {
        let starts: Vec<Point2> = admissible_starts(&circle, &pp, n, 1e-3)
            .into_iter()
            .filter(|a| common_tangency_residual(*a, &circle, &pp).abs() > 1e-3)
            .collect();
        if focal {
            for a in starts {
                match detect_period(a, Branch::Upper, &circle, &pp, 8) {
                    Ok(s) if s.period == Some(3) => m.residual(s.report(3).expect("period 3").residual),
                    _ => m.agree(false),
                }
            }
        } else {
            let mut closest = f64::INFINITY;
            for a in starts {
                if let Ok(r) = run_orbit(a, Branch::Upper, &circle, &pp, 3) {
                    closest = closest.min(r.residual);
                    m.agree(r.trivial || r.residual > 1e-6);
                }
            }
            m.note(format!(
                "circle misses the focus (Q(E) = {q:.3e}): no start may close, smallest 3-step gap {closest:.2e}"
            ));
        }
    });

    ctx.run("triangle.tangency-criterion", |rng, m| {
        let (mut closing, mut open) = (0, 0);
        for k in 0..n {
            let e = if k % 2 == 0 {
                on_unit_circle(rng)
            } else {
                let r = if rng.gen_bool(0.5) { rng.gen_range(0.0..0.95) } else { rng.gen_range(1.05..2.5) };
                at_distance(rng, r)
            };
            let c = Circle::unit(e);
            let pr = par(signed(rng, 0.2, 1.8));
            let starts = random_starts(rng, &c, 1, |a| {
                eval_s(a, &pr) > 1e-3 && common_tangency_residual(a, &c, &pr).abs() > 1e-3 && a.norm() > 0.1
            });
            let Some(a) = starts.first().copied() else { continue };
            let (Ok(orbit), Ok(d)) = (run_orbit(a, Branch::Upper, &c, &pr, 3), closure_defect(a, &c, &pr)) else {
                continue;
            };
            let geometric = !orbit.trivial && orbit.residual <= 1e-6;
            let algebraic = d.defect.abs() / d.scale <= 1e-8;
            if geometric {
                closing += 1;
            } else {
                open += 1;
            }
            m.agree(geometric == algebraic);
        }
        m.note(format!("{closing} closing and {open} open configurations"));
    });

    ctx.run("triangle.defect-factorization", |rng, m| {
        for k in 0..n {
            let (c, pr) = if k == 0 {
                (circle, pp)
            } else {
                (
                    Circle::unit(Point2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5))),
                    par(signed(rng, 0.1, 2.5)),
                )
            };
            let starts = random_starts(rng, &c, 1, |a| eval_s(a, &pr) > 1e-6 && a.norm() > 0.1);
            let Some(a) = starts.first() else { continue };
            if let Ok(d) = closure_defect(*a, &c, &pr) {
                m.residual(d.gap());
            }
        }
        m.note("S_BB S_CC - S_BC^2 = -4p S_AA Q(E) f(A, E, p) / |A|^4");
    });

    ctx.run("triangle.parabola-point-partner", |rng, m| {
        for k in 0..configs {
            let (c, pr) = if k == 0 {
                (circle, pp)
            } else {
                (
                    Circle::unit(Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))),
                    par(signed(rng, 0.2, 2.0)),
                )
            };
            let Ok(hits) = circle_parabola_intersections(&c, &pr) else { continue };
            for a in hits {
                if (pr.p + a.x).abs() < 1e-3 {
                    continue;
                }
                let Ok(b) = second_intersection(a, &pr.tangent_at_y(a.y), &c) else { continue };
                let lhs = common_tangency_residual(b, &c, &pr);
                let rhs = common_tangency_residual(a, &c, &pr) * q_of(c.center) / (pr.p + a.x).powi(2);
                m.residual((lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs()));
            }
        }
    });

    ctx.run("triangle.common-tangent-partner", |rng, m| {
        for k in 0..configs {
            let (c, pr) = if k == 0 && focal {
                (circle, pp)
            } else {
                (Circle::unit(on_unit_circle(rng)), par(signed(rng, 0.2, 1.8)))
            };
            let Ok(set) = common_tangent_points(&c, &pr) else { continue };
            for (a, own) in set.points.iter().zip(&set.lines) {
                if eval_s(*a, &pr) <= 1e-6 {
                    continue;
                }
                let Ok(tp) = tangents_from_point(*a, &pr) else { continue };
                let Some(other) =
                    tp.tangents.iter().max_by(|u, v| line_gap(&u.line, own).total_cmp(&line_gap(&v.line, own)))
                else {
                    continue;
                };
                let Ok(b) = second_intersection(*a, &other.line, &c) else { continue };
                let via_core = poncelet_core::common_tangents::correspondence_partner(*a, &c, &pr);
                let route = via_core.map(|z| z.dist(b)).unwrap_or(f64::NAN);
                m.residual((eval_s(b, &pr).abs() / (1.0 + b.norm2())).max(route));
            }
        }
    });

    ctx.run("triangle.directrix-kite", |rng, m| {
        let (mut tangent, mut other) = (0, 0);
        for k in 0..n {
            let e = if k == 0 {
                e
            } else if k % 2 == 0 {
                on_unit_circle(rng)
            } else {
                let r = if rng.gen_bool(0.5) { rng.gen_range(0.2..0.9) } else { rng.gen_range(1.1..2.5) };
                at_distance(rng, r)
            };
            let c = Circle::unit(e);
            let pr = if k == 0 { pp } else { par(signed(rng, 0.2, 1.8)) };
            let Ok(cross) = circle_parabola_intersections(&c, &pr) else { continue };
            let Some(a) = cross.first().copied() else { continue };
            let Ok(kite) = directrix_kite(a, &c, &pr) else { continue };
            let f = common_tangency_residual(kite.b, &c, &pr);
            if f.abs() > 1e-9 && f.abs() < 1e-6 {
                continue;
            }
            let on_h = f.abs() <= 1e-9;
            if on_h {
                tangent += 1;
            } else {
                other += 1;
            }
            m.agree(on_h == (kite.parallel_sine <= 1e-8));
        }
        m.note(format!("{tangent} circles through the focus, {other} others"));
    });

    ctx.run("triangle.pencil-discriminant", |rng, m| {
        for k in 0..n {
            let (e, pr) = if k == 0 && focal { (e, pp) } else { (on_unit_circle(rng), par(signed(rng, 0.1, 2.0))) };
            let (lhs, rhs) = pencil_discriminant_pair(&focal_circle_matrix(e), e, &pr);
            let scale = lhs.abs().max(rhs.abs());
            if scale < 1e-12 {
                continue;
            }
            m.residual((lhs - rhs).abs() / scale);
        }
        m.note("circle written as x^2 + y^2 - 2(x x_E + y y_E) = 0 through the focus");
    });

    ctx.run("triangle.pencil-count", |rng, m| {
        let mut seen = [0usize; 4];
        for k in 0..n {
            let (e, pr) = if k == 0 && focal { (e, pp) } else { (on_unit_circle(rng), par(signed(rng, 0.1, 2.0))) };
            let c = Circle::unit(e);
            if admissible_starts(&c, &pr, 1, 1e-6).is_empty() {
                continue;
            }
            let d = focal_circle_matrix(e);
            let (Ok(np), Ok(nh)) =
                (count_real_degenerate(&d, &ConicMatrix::parabola(&pr)), count_real_degenerate(&d, &h_matrix(e, pr.p)))
            else {
                continue;
            };
            let Ok(hits) = circle_parabola_intersections(&c, &pr) else { continue };
            seen[np.min(3)] += 1;
            let points_match = matches!((np, hits.len()), (1, 2) | (3, 4));
            m.agree(np == nh && points_match);
        }
        m.note(format!("real degenerate members (0..=3): {seen:?}"));
    });

    let focal_circles = |rng: &mut ChaCha8Rng, k: usize| -> (Circle, CanonicalParabola) {
        if k == 0 && focal {
            (circle, pp)
        } else {
            (Circle::unit(on_unit_circle(rng)), par(signed(rng, 0.3, 1.5)))
        }
    };

    ctx.run("triangle.euler-centers", |rng, m| {
        let mut cross = 0.0f64;
        for k in 0..configs {
            let (c, pr) = focal_circles(rng, k);
            let (e, p) = (c.center, pr.p);
            for a in admissible_starts(&c, &pr, 36, 1e-6) {
                let Ok(tri) = build_triangle(a, &c, &pr) else { continue };
                if tri.trivial {
                    continue;
                }
                let [a, b, cc] = tri.vertices;
                let Some(o) = altitude_meet(a, b, cc) else { continue };
                let g = (a + b + cc) * (1.0 / 3.0);
                let nine = o.midpoint(e);
                m.residual(
                    (o.x + p).abs().max((g.x - (2.0 * e.x - p) / 3.0).abs()).max((nine.x - (e.x - p) / 2.0).abs()),
                );
                if let Ok(ctr) = centers(a, &c, &pr) {
                    cross = cross.max(ctr.orthocenter.dist(o) / (1.0 + o.norm()));
                }
            }
        }
        m.note(format!("closed-form orthocenter vs altitude intersection: {cross:.2e}"));
    });

    ctx.run("triangle.orthocenter-construction", |rng, m| {
        for _ in 0..n {
            let p = signed(rng, 0.2, 2.5);
            let pr = par(p);
            let o = Point2::new(-p, rng.gen_range(-3.0..3.0));
            let (t1, t2): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if (t1 - t2).abs() < 0.1 || (t1 * t2 + 1.0).abs() < 0.1 {
                continue;
            }
            let Ok((tri, circ)) = triangle_from_orthocenter(o, t1, t2, &pr) else { continue };
            let [a, b, c] = tri.vertices;
            if (b - a).cross(c - a).abs() < 1e-3 {
                continue;
            }
            let Some(h) = altitude_meet(a, b, c) else { continue };
            let scale = 1.0 + circ.radius + o.norm();
            let tangent = [(a, b), (b, c), (c, a)].iter().map(|(u, v)| chord_disc(*u, *v, p)).fold(0.0, f64::max);
            m.residual(tangent.max(h.dist(o) / (scale * scale)).max((circ.center.norm() - circ.radius).abs() / scale));
        }
    });

    ctx.run("triangle.pedal-midpoints", |rng, m| {
        for k in 0..configs {
            let (c, pr) = focal_circles(rng, k);
            for a in admissible_starts(&c, &pr, 20, 1e-3) {
                let Ok(tri) = build_triangle(a, &c, &pr) else { continue };
                for mid in tri.midpoints() {
                    let (v, s) = pedal_curve_terms(mid, c.center, pr.p);
                    m.residual(v.abs() / s);
                }
            }
        }
        for _ in 0..configs {
            let d = rng.gen_range(1.2..2.5);
            let e = at_distance(rng, d);
            let Ok((l, p)) = l_point(e) else { continue };
            if l.x.abs() < 0.05 {
                continue;
            }
            let (c, pr) = (Circle::unit(e), par(p));
            for a in admissible_starts(&c, &pr, 10, 1e-3) {
                let Ok(quad) = build_quad_through_l(a, &c, &pr) else { continue };
                for mid in quad.midpoints() {
                    let (v, s) = pedal_curve_terms(mid, e, p);
                    m.residual(v.abs() / s);
                }
            }
        }
    });

    ctx.run("triangle.pedal-cubic", |rng, m| {
        for k in 0..n {
            let (e, p) = if k == 0 {
                (e, pp.p)
            } else {
                (Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)), signed(rng, 0.2, 2.5))
            };
            let pr = par(p);
            let t = rng.gen_range(-5.0..5.0);
            let foot = pr.tangent_at(t).foot(e);
            let x = pedal_point(t, e, p);
            let (v, s) = pedal_curve_terms(foot, e, p);
            m.residual((v.abs() / s).max(foot.dist(x) / (1.0 + e.norm() + foot.norm())));
            let side = eval_s(e, &pr);
            if side.abs() > 1e-6 {
                match pedal_self_intersections(e, p) {
                    Ok(ts) => m.agree((ts.len() == 2) == (side > 0.0)),
                    Err(_) => m.agree(false),
                }
            }
        }
    });

    ctx.run("triangle.orthocenter-extremes", |rng, m| {
        for k in 0..configs {
            let (c, pr) = focal_circles(rng, k);
            let Ok(range) = orthocenter_range(&c, &pr) else { continue };
            let (lo, hi) = sampled_extent(&c, &pr, &range.arc, |_, o| o.y);
            if !lo.is_finite() {
                continue;
            }
            m.residual((lo - range.o_min().y).abs().max((hi - range.o_max().y).abs()));
        }
    });

    ctx.run("triangle.euler-segment", |rng, m| {
        for k in 0..configs {
            let (c, pr) = focal_circles(rng, k);
            let Ok(range) = orthocenter_range(&c, &pr) else { continue };
            let (Ok(cx), Ok(cy)) = (centers(range.x, &c, &pr), centers(range.x_prime, &c, &pr)) else { continue };
            for t in [1.0 / 3.0, 0.5, 2.0] {
                let (lo, hi) = sampled_extent(&c, &pr, &range.arc, |e, o| (e * (1.0 - t) + o * t).y);
                if !lo.is_finite() {
                    continue;
                }
                let (u, v) = (cx.euler_point(t).y, cy.euler_point(t).y);
                m.residual((lo - u.min(v)).abs().max((hi - u.max(v)).abs()));
            }
        }
        m.note("Euler points X_t at t = 1/3, 1/2, 2");
    });
}

/// Range of `value(E, O)` over triangles with a vertex on `arc`, with `O`
/// from altitude intersection.
fn sampled_extent(
    circle: &Circle,
    pp: &CanonicalParabola,
    arc: &poncelet_core::triangle::Arc,
    value: impl Fn(Point2, Point2) -> f64,
) -> (f64, f64) {
    const N: usize = 4000;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 1..N {
        let a = arc.point_at(circle, k as f64 / N as f64);
        let Ok(tri) = build_triangle(a, circle, pp) else { continue };
        let [a, b, c] = tri.vertices;
        let Some(o) = altitude_meet(a, b, c) else { continue };
        let v = value(circle.center, o);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

// ---------------------------------------------------------------- quadrilaterals, centered circle

fn quad_ef_suite(ctx: &mut Ctx) {
    let n = ctx.n();
    let pp = ctx.par();
    let circle = ctx.circle();
    let centered = circle.center.norm() <= 1e-9;
    let scene_p = (centered && pp.p.abs() < 2.0).then_some(pp.p);
    let origin = Circle::unit(Point2::ORIGIN);

    ctx.run("quad-ef.existence", |_, m| {
        if !centered {
            m.skip("circle is not centered at the focus");
            return;
        }
        if pp.p.abs() >= 2.0 {
            m.agree(false);
            m.note(format!("|p| >= 2R (|p|/R = {}): the circle lies on one side of the parabola", pp.p.abs()));
            return;
        }
        for a in admissible_starts(&circle, &pp, n, 1e-3) {
            match detect_period(a, Branch::Upper, &circle, &pp, 8) {
                Ok(s) if s.period == Some(4) => m.residual(s.report(4).expect("period 4").residual),
                _ => m.agree(false),
            }
        }
    });

    let butterflies = |rng: &mut ChaCha8Rng| -> Vec<(CanonicalParabola, poncelet_core::quad::PonceletQuad)> {
        let mut out = Vec::new();
        for k in 0..n {
            let pr = match scene_p {
                Some(p) if k % 2 == 0 => par(p),
                _ => par(signed(rng, 0.05, 1.95)),
            };
            let starts = random_starts(rng, &origin, 1, |a| eval_s(a, &pr) > 1e-3);
            if let Some(q) = starts.first().and_then(|a| build_butterfly(*a, &origin, &pr).ok()) {
                out.push((pr, q));
            }
        }
        out
    };

    ctx.run("quad-ef.butterfly-shape", |rng, m| {
        for (pr, q) in butterflies(rng) {
            let [a, b, c, d] = q.vertices;
            let cong = (a.dist(b) - c.dist(d)).abs().max((b.dist(c) - a.dist(d)).abs());
            let vert = (a.x - c.x).abs().max((b.x - d.x).abs());
            let mid = q.midpoints().iter().map(|x| (x.x + pr.p / 2.0).abs()).fold(0.0, f64::max);
            let sides = q.sides().iter().map(|(u, v)| chord_disc(*u, *v, pr.p)).fold(0.0, f64::max);
            m.residual(cong.max(vert).max(mid).max(sides));
        }
    });

    ctx.run("quad-ef.inverse-points", |rng, m| {
        for (_, q) in butterflies(rng) {
            let [a, b, c, d] = q.vertices;
            let (Some(g), Some(h)) = (meet((a, b), (c, d)), meet((a, d), (b, c))) else { continue };
            let same_ray = g.cross(h).abs() / (1.0 + g.norm() * h.norm()) + if g.dot(h) > 0.0 { 0.0 } else { 1.0 };
            m.residual((g.norm() * h.norm() - 1.0).abs().max(same_ray));
        }
    });

    ctx.run("quad-ef.directrix-circle-chord", |rng, m| {
        for _ in 0..n {
            let pr = par(signed(rng, 0.05, 1.95));
            let starts = random_starts(rng, &origin, 1, |a| eval_s(a, &pr) > 1e-3);
            let Some(a) = starts.first().copied() else { continue };
            let Ok(tp) = tangents_from_point(a, &pr) else { continue };
            for t in &tp.tangents {
                let Ok(b) = second_intersection(a, &t.line, &origin) else { continue };
                let tpt = Line2::through(a, b).map(|l| l.reflect(Point2::ORIGIN));
                let Ok(tpt) = tpt else { continue };
                m.residual((tpt.x + pr.p).abs().max((tpt.dist(a) - 1.0).abs()).max((tpt.dist(b) - 1.0).abs()));
            }
        }
    });

    ctx.run("quad-ef.directrix-circle-sides", |rng, m| {
        for (pr, q) in butterflies(rng) {
            for (u, v) in q.sides() {
                let Ok(l) = Line2::through(u, v) else { continue };
                let t = l.reflect(Point2::ORIGIN);
                m.residual((t.x + pr.p).abs().max((t.dist(u) - 1.0).abs()).max((t.dist(v) - 1.0).abs()));
            }
        }
    });

    ctx.run("quad-ef.directrix-circle-tangent", |rng, m| {
        for _ in 0..n {
            let p = signed(rng, 0.05, 1.95);
            let h = (4.0 - p * p).sqrt();
            let t = Point2::new(-p, rng.gen_range(-0.95 * h..0.95 * h));
            let pts = origin.intersect_circle(&Circle::unit(t));
            if pts.len() != 2 || pts[0].dist(pts[1]) < 1e-6 {
                continue;
            }
            m.residual(chord_disc(pts[0], pts[1], p));
        }
    });

    ctx.run("quad-ef.partner-abscissa", |rng, m| {
        for _ in 0..n {
            let p = signed(rng, 0.05, 1.95);
            let x_a = rng.gen_range(-1.0..1.0);
            let x_b = -p - x_a;
            if x_b.abs() >= 1.0 {
                continue;
            }
            let (y_a, y_b) = ((1.0 - x_a * x_a).sqrt(), (1.0 - x_b * x_b).sqrt());
            let a = Point2::new(x_a, y_a);
            for b in [Point2::new(x_b, y_b), Point2::new(x_b, -y_b)] {
                if a.dist(b) < 1e-6 || eval_s(a, &par(p)) < 0.0 {
                    continue;
                }
                m.residual(chord_disc(a, b, p));
            }
        }
    });

    ctx.run("quad-ef.vertex-tangent-circle", |rng, m| {
        for k in 0..n {
            let p = match scene_p {
                Some(p) if k == 0 => p,
                _ => signed(rng, 0.05, 1.95),
            };
            let y = (1.0 - p * p / 4.0).sqrt();
            for a in [Point2::new(-p / 2.0, y), Point2::new(-p / 2.0, -y)] {
                let Ok(t) = origin.tangent_at(a) else { continue };
                m.residual(par(p).line_tangency(&t).abs() / (1.0 + p.abs()));
            }
        }
    });

    ctx.run("quad-ef.trapezoid-round-trip", |rng, m| {
        for (pr, q) in butterflies(rng) {
            let [a, b, c, d] = q.vertices;
            match inscribe_parabola_in_trapezoid(a, b, d, c) {
                Ok((gp, circ)) => {
                    let gap = gp.focus.norm().max(line_gap(&gp.directrix, &pr.directrix()));
                    m.residual(gap.max(circ.center.norm()).max((circ.radius - 1.0).abs()));
                }
                Err(_) => m.agree(false),
            }
        }
    });

    ctx.run("quad-ef.prescribed-diagonal-point", |rng, m| {
        let mut failed = 0;
        for _ in 0..n {
            let r = if rng.gen_bool(0.5) { rng.gen_range(0.2..0.9) } else { rng.gen_range(1.1..3.0) };
            let target = at_distance(rng, r);
            let a = origin.point_at(rng.gen_range(0.0..TAU));
            let Ok((q, gp)) = quad_with_given_diagonal_point(&origin, target, a) else {
                failed += 1;
                continue;
            };
            if q.is_degenerate() {
                continue;
            }
            let [a, b, c, d] = q.vertices;
            let crossing = if r < 1.0 { meet((a, d), (b, c)) } else { meet((a, b), (c, d)) };
            let Some(x) = crossing else { continue };
            let Ok(lines) = q.side_lines() else { continue };
            let tangent = lines.iter().map(|l| reflection_gap(l, &gp)).fold(0.0, f64::max);
            m.residual((x.dist(target) / (1.0 + r)).max(tangent).max(gp.focus.norm()));
        }
        if failed > 0 {
            m.note(format!("{failed} vertices admitted no quadrilateral"));
        }
    });

    ctx.run("quad-ef.confocal-chord", |rng, m| {
        for _ in 0..n {
            let (a, b) = (origin.point_at(rng.gen_range(0.0..TAU)), origin.point_at(rng.gen_range(0.0..TAU)));
            let Ok(l) = Line2::through(a, b) else { continue };
            if l.distance(Point2::ORIGIN) < 1e-3 || l.a().abs() < 1e-3 || a.dist(b) < 1e-3 {
                continue;
            }
            match parabola_through_chord(a, b) {
                Ok(pr) => m.residual(chord_disc(a, b, pr.p)),
                Err(_) => m.agree(false),
            }
        }
    });
}

// ---------------------------------------------------------------- quadrilaterals, general circle

/// Random center with `L` well away from the focal line, and its `p`.
fn pivot_center(rng: &mut ChaCha8Rng) -> (Point2, Point2, f64) {
    loop {
        let e = Point2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        if e.norm() < 1.2 {
            continue;
        }
        if let Ok((l, p)) = l_point(e) {
            if l.x.abs() > 0.2 && p.abs() < 2.5 {
                return (e, l, p);
            }
        }
    }
}

/// 4-step orbit vertices from spread starts.
struct OracleQuads {
    vertices: Vec<Vec<Point2>>,
    residuals: Vec<f64>,
    misses: usize,
}

fn oracle_quads(circle: &Circle, pp: &CanonicalParabola, count: usize) -> OracleQuads {
    let mut out = OracleQuads { vertices: vec![], residuals: vec![], misses: 0 };
    for a in admissible_starts(circle, pp, count, 1e-3) {
        match detect_period(a, Branch::Upper, circle, pp, 8) {
            Ok(s) if s.period == Some(4) => {
                let r = s.report(4).expect("period 4");
                out.vertices.push(r.vertices());
                out.residuals.push(r.residual);
            }
            _ => out.misses += 1,
        }
    }
    out
}

/// Minimizes the 4-step residual over vertical directrices without using `L`.
fn closing_parameter(circle: &Circle) -> Option<(f64, f64)> {
    let res = |p: f64| sweep_residual(circle, &par(p), 4, 4).residual.unwrap_or(f64::INFINITY);
    let grid: Vec<f64> = (0..=300).map(|i| -3.0 + 0.02 * i as f64).filter(|p| p.abs() > 0.05).collect();
    let best = grid.iter().copied().min_by(|u, v| res(*u).total_cmp(&res(*v)))?;
    let (mut lo, mut hi) = (best - 0.02, best + 0.02);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if res(x1) <= res(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let p = 0.5 * (lo + hi);
    Some((p, res(p)))
}

fn quad_general_suite(ctx: &mut Ctx) {
    let n = ctx.n();
    let configs = ctx.configs();
    let pp = ctx.par();
    let circle = ctx.circle();
    let e = circle.center;
    let pivot = if e.norm() <= 1e-9 {
        Err("circle is centered at the focus, so L is undefined".to_string())
    } else {
        l_point(e).map_err(|err| err.to_string())
    };
    let on_pivot = matches!(&pivot, Ok((_, p_star)) if (pp.p - p_star).abs() <= 1e-9 * p_star.abs().max(1.0));
    let OracleQuads { vertices: quads, residuals, misses } = if on_pivot {
        oracle_quads(&circle, &pp, n)
    } else {
        OracleQuads { vertices: vec![], residuals: vec![], misses: 0 }
    };
    let need_pivot = |m: &mut Measure| -> Option<Point2> {
        match &pivot {
            Err(why) => {
                m.skip(why.clone());
                None
            }
            Ok((l, p_star)) if !on_pivot => {
                m.skip(format!(
                    "directrix misses L = ({:.6}, {:.6}); the closing member has p = {p_star:.6}",
                    l.x, l.y
                ));
                None
            }
            Ok((l, _)) => Some(*l),
        }
    };

    ctx.run("quad-general.closure", |_, m| match &pivot {
        Err(why) => m.skip(why.clone()),
        Ok((_, p_star)) if !on_pivot => {
            for a in admissible_starts(&circle, &pp, n, 1e-3) {
                if let Ok(r) = run_orbit(a, Branch::Upper, &circle, &pp, 4) {
                    m.agree(r.trivial || r.residual > 1e-6);
                }
            }
            m.note(format!("p = {:.6} differs from {p_star:.6}: no start may close", pp.p));
        }
        Ok(_) => {
            for r in &residuals {
                m.residual(*r);
            }
            for _ in 0..misses {
                m.agree(false);
            }
        }
    });

    ctx.run("quad-general.diagonal-point", |_, m| {
        let Some(l) = need_pivot(m) else { return };
        for v in &quads {
            match meet((v[0], v[2]), (v[1], v[3])) {
                Some(x) => m.residual(x.dist(l)),
                None => m.agree(false),
            }
        }
    });

    ctx.run("quad-general.anticenter", |_, m| {
        if need_pivot(m).is_none() {
            return;
        }
        for v in &quads {
            let formula = (v[0] + v[1] + v[2] + v[3]) * 0.5 - e;
            let Ok(q) = build_quad_through_l(v[0], &circle, &pp) else {
                m.agree(false);
                continue;
            };
            let Ok(dp) = quad_derived_points(&q) else { continue };
            m.residual((formula.x + pp.p).abs().max(dp.anticenter.dist(formula)).max(dp.anticenter_spread));
        }
    });

    ctx.run("quad-general.vertex-sum", |_, m| {
        if need_pivot(m).is_none() {
            return;
        }
        for v in &quads {
            m.residual((v.iter().map(|q| q.x).sum::<f64>() - 2.0 * (e.x - pp.p)).abs());
        }
    });

    ctx.run("quad-general.root-sum", |rng, m| {
        if need_pivot(m).is_none() {
            return;
        }
        for k in 0..configs {
            let (e, p) = if k == 0 {
                (e, pp.p)
            } else {
                let (e, _, p) = pivot_center(rng);
                (e, p)
            };
            let Ok(roots) = quartic_roots_complex(e, p) else { continue };
            let (re, im) = roots.iter().fold((0.0, 0.0), |(re, im), z| (re + z.re, im + z.im));
            m.residual((re - 2.0 * (e.x - p)).abs().max(f64::abs(im)));
        }
    });

    ctx.run("quad-general.nine-point-circle", |_, m| {
        let Some(l) = need_pivot(m) else { return };
        for v in &quads {
            let (Some(i), Some(j)) = (meet((v[0], v[1]), (v[2], v[3])), meet((v[0], v[3]), (v[1], v[2]))) else {
                continue;
            };
            let Ok(npc) = Circle::through3(i.midpoint(j), j.midpoint(l), l.midpoint(i)) else { continue };
            let g = (v[0] + v[1] + v[2] + v[3]) * 0.25;
            let scale = 1.0 + npc.radius;
            m.residual(npc.residual(Point2::ORIGIN).abs().max(npc.residual(g).abs()) / scale);
        }
    });

    ctx.run("quad-general.directrix-through-pivot", |rng, m| {
        if let Ok((l, _)) = &pivot {
            for v in &quads {
                if let Ok(gp) = inscribe_parabola_in_cyclic_quad(v[0], v[1], v[2], v[3]) {
                    m.residual(gp.directrix.distance(*l));
                }
            }
        }
        let mut located = Vec::new();
        for _ in 0..configs.min(6) {
            let (e, l, _) = pivot_center(rng);
            let c = Circle::unit(e);
            let Some((p, r)) = closing_parameter(&c) else { continue };
            if r > 1e-6 {
                m.agree(false);
                continue;
            }
            located.push(format!("{p:.6}"));
            m.residual((l.x + p).abs());
        }
        m.note(format!("closing members located by residual minimization: p = [{}]", located.join(", ")));
    });

    ctx.run("quad-general.uniqueness", |rng, m| {
        for k in 0..configs.min(6) {
            let (c, p_star) = if k == 0 {
                match &pivot {
                    Ok((_, p)) => (circle, *p),
                    Err(_) => continue,
                }
            } else {
                let (e, _, p) = pivot_center(rng);
                (Circle::unit(e), p)
            };
            let at = sweep_residual(&c, &par(p_star), 4, 8);
            if let Some(r) = at.residual {
                m.residual(r);
            }
            for off in [-0.5, -0.1, -0.01, 0.01, 0.1, 0.5] {
                let p = p_star + off;
                if p.abs() < 0.05 {
                    continue;
                }
                if let Some(r) = sweep_residual(&c, &par(p), 4, 8).residual {
                    m.agree(r > 1e-4);
                }
            }
        }
    });

    ctx.run("quad-general.inscribed-round-trip", |rng, m| {
        for v in &quads {
            match inscribe_parabola_in_cyclic_quad(v[0], v[1], v[2], v[3]) {
                Ok(gp) => m.residual(gp.focus.norm().max(line_gap(&gp.directrix, &pp.directrix()))),
                Err(_) => m.agree(false),
            }
        }
        let mut parallel = 0;
        for _ in 0..configs {
            let c =
                Circle::new(Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), rng.gen_range(0.5..2.0))
                    .expect("positive radius");
            let mut t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..TAU));
            t.sort_by(f64::total_cmp);
            if (0..4).any(|k| (t[(k + 1) % 4] - t[k]).rem_euclid(TAU) < 0.2) {
                continue;
            }
            let v = t.map(|x| c.point_at(x));
            let Ok(gp) = inscribe_parabola_in_cyclic_quad(v[0], v[1], v[2], v[3]) else {
                parallel += 1;
                continue;
            };
            let Ok((sim, cc, pr)) = normalize_frame(&c, &gp) else { continue };
            let a = sim.apply(v[0]);
            if eval_s(a, &pr) < 1e-3 {
                continue;
            }
            match detect_period(a, Branch::Upper, &cc, &pr, 8) {
                Ok(s) if s.period == Some(4) => {
                    let orbit = s.report(4).expect("period 4").vertices();
                    let off = v.iter().map(|w| nearest(&orbit, sim.apply(*w))).fold(0.0, f64::max);
                    m.residual(off);
                }
                _ => m.agree(false),
            }
        }
        if parallel > 0 {
            m.note(format!("{parallel} random quadrilaterals rejected"));
        }
    });
}

// ---------------------------------------------------------------- isoperiodic families

fn isoperiodic_suite(ctx: &mut Ctx, scene: &Scene, gp: &GeneralParabola) {
    let circle = scene.circle;
    let focus = gp.focus;
    let d = circle.center.dist(focus);
    let r = circle.radius;
    let expect = if d <= 1e-9 * r {
        Isoperiodicity::Four
    } else if (d - r).abs() <= 1e-9 * r {
        Isoperiodicity::Three
    } else {
        Isoperiodicity::Neither
    };

    let verdict =
        |m: &mut Measure, family: FamilySpec, expect: Isoperiodicity| match classify_isoperiodic(&circle, &family) {
            Ok(rep) => {
                for member in &rep.members {
                    if member.period.is_some() {
                        m.residual(member.residual);
                    }
                }
                m.agree(rep.kind == expect && rep.verified);
                m.note(
                    format!("{:?}, {} members checked, verified {}", rep.kind, rep.members.len(), rep.verified)
                        .to_lowercase(),
                );
            }
            Err(err) => {
                m.agree(false);
                m.note(err.to_string());
            }
        };

    ctx.run("isoperiodic.confocal", |_, m| {
        verdict(m, FamilySpec::Confocal { focus, axis: gp.directrix.normal() }, expect);
    });

    ctx.run("isoperiodic.pivoting", |_, m| {
        let v = circle.center - focus;
        if v.norm() <= 1e-9 * r {
            m.skip("circle is centered at the focus, so L is undefined");
            return;
        }
        if (v.norm() - r).abs() <= 1e-9 * r {
            m.skip("circle passes through the focus, so L is the focus");
            return;
        }
        let pivot = focus + v * (1.0 - r * r / v.norm2());
        verdict(m, FamilySpec::Pivoting { focus, pivot }, Isoperiodicity::Four);
    });
}
