//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every check uses a route independent of the closed form it validates:
//! orbit iteration for closure, altitude intersection for centers, dense
//! sampling for extremes, complex eigenvalues for root sums.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use poncelet_core::common_tangents::{
    common_tangent_points, directrix_kite, focal_circle_matrix, pencil_discriminant_pair, quartic_coefficients,
    quartic_roots_complex,
};
use poncelet_core::joachimsthal::{common_tangency_residual, eval_s, tangents_from_point};
use poncelet_core::oracle::{
    admissible_starts, classify_isoperiodic, detect_period, run_orbit, sweep_residual, Branch, FamilySpec,
    Isoperiodicity,
};
use poncelet_core::poly::solve_quartic;
use poncelet_core::quad::{
    build_butterfly, build_quad_through_l, compass_tangents, inscribe_parabola_in_cyclic_quad,
    inscribe_parabola_in_trapezoid, l_point, nine_point_circle, orthocenter, quad_derived_points,
};
use poncelet_core::triangle::{build_triangle, closure_defect, orthocenter_range, pedal_curve_terms, q_of};
use poncelet_core::{normalize_frame, CanonicalParabola, Circle, GeneralParabola, Line2, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail, with the reason printed alongside.
const KNOWN_RED: &[(u32, &str)] =
    &[(2, "the stated right-hand side has the wrong sign: the defect equals -4p*S_AA*Q*f/|A|^4 exactly")];

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), notes: vec![] }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
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

/// Coefficient distance between two lines, up to orientation.
fn line_gap(u: &Line2, v: &Line2) -> f64 {
    let d = |s: f64| (u.a() - s * v.a()).abs().max((u.b() - s * v.b()).abs()).max((u.c() - s * v.c()).abs());
    d(1.0).min(d(-1.0))
}

/// Random admissible starts on `circle`, rejection sampled on `accept`.
fn random_starts(
    rng: &mut ChaCha8Rng,
    circle: &Circle,
    count: usize,
    accept: impl Fn(Point2) -> bool,
) -> Option<Vec<Point2>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..200 * count {
        let a = circle.point_at(rng.gen_range(0.0..TAU));
        if accept(a) {
            out.push(a);
            if out.len() == count {
                return Some(out);
            }
        }
    }
    None
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let mut worst_closed = 0.0f64;
    let mut closing_failures = 0;
    let mut configs = 0;
    while configs < 100 {
        let th = rng.gen_range(0.0..TAU);
        let circle = Circle::unit(Point2::new(th.cos(), th.sin()));
        let pr = par(signed(&mut rng, 0.2, 1.8));
        let Some(starts) = random_starts(&mut rng, &circle, 100, |a| eval_s(a, &pr) > 1e-3) else {
            continue;
        };
        configs += 1;
        for a in starts {
            match detect_period(a, Branch::Upper, &circle, &pr, 8) {
                Ok(s) if s.period == Some(3) => worst_closed = worst_closed.max(s.report(3).unwrap().residual),
                _ => closing_failures += 1,
            }
        }
    }
    let mut min_open = f64::INFINITY;
    let mut false_closures = 0;
    let mut broken = 0;
    let mut open_configs = 0;
    while open_configs < 100 {
        let r = if rng.gen_bool(0.5) { rng.gen_range(0.0..0.94) } else { rng.gen_range(1.05..3.0) };
        let th = rng.gen_range(0.0..TAU);
        let e = Point2::new(r * th.cos(), r * th.sin());
        if q_of(e).abs() < 0.1 {
            continue;
        }
        let circle = Circle::unit(e);
        let pr = par(signed(&mut rng, 0.2, 1.8));
        let Some(starts) = random_starts(&mut rng, &circle, 10, |a| {
            eval_s(a, &pr) > 1e-3 && common_tangency_residual(a, &circle, &pr).abs() > 1e-3
        }) else {
            continue;
        };
        open_configs += 1;
        for a in starts {
            match run_orbit(a, Branch::Upper, &circle, &pr, 3) {
                Ok(r) => {
                    min_open = min_open.min(r.residual);
                    if r.residual <= 1e-4 {
                        false_closures += 1;
                    }
                }
                Err(_) => broken += 1,
            }
        }
    }
    Outcome::new(
        closing_failures == 0 && worst_closed <= 1e-8 && false_closures == 0,
        format!(
            "focus on circle: 100 configs x 100 starts, {closing_failures} misses, max residual {worst_closed:.2e}; \
             |Q| >= 0.1: 100 configs, min 3-step residual {min_open:.2e}, {broken} chains left the exterior"
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut literal = 0.0f64;
    let mut corrected = 0.0f64;
    let mut n = 0;
    while n < 1000 {
        let e = Point2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        let circle = Circle::unit(e);
        let pr = par(signed(&mut rng, 0.1, 2.5));
        let a = circle.point_at(rng.gen_range(0.0..TAU));
        if eval_s(a, &pr) < 1e-6 {
            continue;
        }
        let Ok(d) = closure_defect(a, &circle, &pr) else { continue };
        n += 1;
        // `d.factored` carries the corrected sign; the stated form is its negation.
        literal = literal.max((d.defect + d.factored).abs() / d.scale);
        corrected = corrected.max(d.gap());
    }
    Outcome::new(literal <= 1e-8, format!("stated identity: max scaled gap {literal:.2e} over 1000 samples"))
        .note(format!("with the sign flipped the gap is {corrected:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let (mut ortho, mut cent, mut nine, mut formula) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut samples = 0;
    for _ in 0..5 {
        let th = rng.gen_range(0.0..TAU);
        let e = Point2::new(th.cos(), th.sin());
        let circle = Circle::unit(e);
        let pr = par(signed(&mut rng, 0.3, 1.5));
        let p = pr.p;
        for a in admissible_starts(&circle, &pr, 360, 1e-9) {
            let Ok(tri) = build_triangle(a, &circle, &pr) else { continue };
            if tri.trivial {
                continue;
            }
            let [a, b, c] = tri.vertices;
            let o = orthocenter(a, b, c).unwrap();
            let g = (a + b + c) * (1.0 / 3.0);
            let n = o.midpoint(e);
            ortho = ortho.max((o.x + p).abs());
            cent = cent.max((g.x - (2.0 * e.x - p) / 3.0).abs());
            nine = nine.max((n.x - (e.x - p) / 2.0).abs());
            let closed = poncelet_core::triangle::centers(a, &circle, &pr).unwrap();
            formula = formula.max(closed.orthocenter.dist(o)).max(closed.centroid.dist(g));
            samples += 1;
        }
    }
    Outcome::new(
        ortho <= 1e-9 && cent <= 1e-9 && nine <= 1e-9,
        format!("{samples} vertices over 5 circles: |x_O + p| {ortho:.2e}, centroid {cent:.2e}, nine-point {nine:.2e}"),
    )
    .note(format!("closed-form centers vs altitude intersection: {formula:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let (mut end_gap, mut ratio_gap) = (0.0f64, 0.0f64);
    let mut configs = 0;
    let mut skipped = 0;
    while configs < 10 {
        let th = rng.gen_range(0.0..TAU);
        let circle = Circle::unit(Point2::new(th.cos(), th.sin()));
        let pr = par(signed(&mut rng, 0.3, 1.5));
        let Ok(range) = orthocenter_range(&circle, &pr) else {
            skipped += 1;
            continue;
        };
        configs += 1;
        let (mut o_lo, mut o_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut g_lo, mut g_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        const N: usize = 20_000;
        for k in 1..N {
            let a = range.arc.point_at(&circle, k as f64 / N as f64);
            let Ok(tri) = build_triangle(a, &circle, &pr) else { continue };
            let [a, b, c] = tri.vertices;
            let Ok(o) = orthocenter(a, b, c) else { continue };
            let g = (a + b + c) * (1.0 / 3.0);
            o_lo = o_lo.min(o.y);
            o_hi = o_hi.max(o.y);
            g_lo = g_lo.min(g.y);
            g_hi = g_hi.max(g.y);
        }
        end_gap = end_gap.max((o_lo - range.o_min().y).abs()).max((o_hi - range.o_max().y).abs());
        ratio_gap = ratio_gap.max(((g_hi - g_lo) - (o_hi - o_lo) / 3.0).abs());
    }
    Outcome::new(
        end_gap <= 1e-6 && ratio_gap <= 1e-8,
        format!(
            "10 circles (skipped {skipped} without two tangent points on the arc): endpoint gap {end_gap:.2e}, \
             centroid/orthocenter length gap {ratio_gap:.2e}"
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut worst = 0.0f64;
    let mut polygons = 0;
    for _ in 0..20 {
        let th = rng.gen_range(0.0..TAU);
        let circle = Circle::unit(Point2::new(th.cos(), th.sin()));
        let pr = par(signed(&mut rng, 0.3, 1.5));
        for a in admissible_starts(&circle, &pr, 20, 1e-3) {
            let Ok(tri) = build_triangle(a, &circle, &pr) else { continue };
            for m in tri.midpoints() {
                let (v, s) = pedal_curve_terms(m, circle.center, pr.p);
                worst = worst.max(v.abs() / s);
            }
            polygons += 1;
        }
    }
    for _ in 0..20 {
        let e = loop {
            let e = Point2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
            if e.norm() > 0.2 && l_point(e).map(|(l, _)| l.x.abs() > 0.05).unwrap_or(false) {
                break e;
            }
        };
        let circle = Circle::unit(e);
        let (_, p) = l_point(e).unwrap();
        let pr = par(p);
        for a in admissible_starts(&circle, &pr, 20, 1e-3) {
            let Ok(q) = build_quad_through_l(a, &circle, &pr) else { continue };
            for m in q.midpoints() {
                let (v, s) = pedal_curve_terms(m, e, p);
                worst = worst.max(v.abs() / s);
            }
            polygons += 1;
        }
    }
    let mut midline = 0.0f64;
    let circle = Circle::unit(Point2::ORIGIN);
    for _ in 0..100 {
        let pr = par(signed(&mut rng, 0.05, 1.95));
        let Some(starts) = random_starts(&mut rng, &circle, 1, |a| eval_s(a, &pr) > 1e-3) else { continue };
        let Ok(q) = build_butterfly(starts[0], &circle, &pr) else { continue };
        for m in q.midpoints() {
            midline = midline.max((m.x + pr.p / 2.0).abs());
        }
    }
    Outcome::new(
        worst <= 1e-8 && midline <= 1e-12,
        format!("{polygons} triangles and quads: scaled pedal residual {worst:.2e}; centered circle: |x + p/2| {midline:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let circle = Circle::unit(Point2::ORIGIN);
    let (mut cong, mut vert, mut inv, mut mid, mut closure) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut n = 0;
    while n < 100 {
        let pr = par(signed(&mut rng, 0.05, 1.95));
        let Some(starts) = random_starts(&mut rng, &circle, 1, |a| eval_s(a, &pr) > 1e-3) else { continue };
        let Ok(q) = build_butterfly(starts[0], &circle, &pr) else { continue };
        n += 1;
        let [a, b, c, d] = q.vertices;
        cong = cong.max((a.dist(b) - c.dist(d)).abs()).max((b.dist(c) - a.dist(d)).abs());
        vert = vert.max((a.x - c.x).abs()).max((b.x - d.x).abs());
        let dp = quad_derived_points(&q).unwrap();
        let (g, h) = (dp.i.unwrap(), dp.j.unwrap());
        inv = inv.max((g.x * h.x - 1.0).abs()).max(g.y.abs()).max(h.y.abs());
        for m in q.midpoints() {
            mid = mid.max((m.x + pr.p / 2.0).abs());
        }
        let orbit = run_orbit(a, Branch::Upper, &circle, &pr, 4).unwrap();
        closure = closure.max(orbit.residual);
    }
    Outcome::new(
        cong <= 1e-9 && vert <= 1e-10 && inv <= 1e-8 && mid <= 1e-9,
        format!(
            "100 butterflies: congruence {cong:.2e}, diagonal verticality {vert:.2e}, |x_G x_H - 1| {inv:.2e}, \
             midline {mid:.2e}"
        ),
    )
    .note(format!("oracle 4-step residual from the same vertices: {closure:.2e}"))
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    let mut centers = vec![Point2::new(2.0, 1.0)];
    while centers.len() < 6 {
        let e = Point2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        if e.norm() > 1.2 && l_point(e).map(|(l, _)| l.x.abs() > 0.2).unwrap_or(false) {
            centers.push(e);
        }
    }
    let (mut closure, mut diag, mut anti, mut sum, mut vieta, mut npc) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut starts_used = 0;
    let mut misses = 0;
    for e in &centers {
        let circle = Circle::unit(*e);
        let (l, p) = l_point(*e).unwrap();
        let pr = par(p);
        let target = 2.0 * (e.x - p);
        let roots = quartic_roots_complex(*e, p).unwrap();
        let s: num_complex::Complex64 = roots.iter().sum();
        vieta = vieta.max((s.re - target).abs()).max(s.im.abs());
        for a in admissible_starts(&circle, &pr, 50, 1e-3) {
            let search = match detect_period(a, Branch::Upper, &circle, &pr, 8) {
                Ok(s) if s.period == Some(4) => s,
                _ => {
                    misses += 1;
                    continue;
                }
            };
            starts_used += 1;
            let r = search.report(4).unwrap();
            closure = closure.max(r.residual);
            let v = r.vertices();
            let dpt = Line2::through(v[0], v[2]).unwrap().intersect(&Line2::through(v[1], v[3]).unwrap()).unwrap();
            diag = diag.max(dpt.dist(l));
            sum = sum.max((v.iter().map(|q| q.x).sum::<f64>() - target).abs());
            let q = build_quad_through_l(a, &circle, &pr).unwrap();
            let dp = quad_derived_points(&q).unwrap();
            anti = anti.max((dp.anticenter.x + p).abs());
            if let (Some(i), Some(j)) = (dp.i, dp.j) {
                if let Ok(c) = nine_point_circle(i, j, l) {
                    npc = npc.max(c.residual(Point2::ORIGIN).abs()).max(c.residual(dp.centroid).abs());
                }
            }
        }
    }
    Outcome::new(
        misses == 0 && closure <= 1e-8 && diag <= 1e-8 && anti <= 1e-8 && sum <= 1e-8 && vieta <= 1e-8 && npc <= 1e-7,
        format!(
            "{} centers, {starts_used} starts ({misses} misses): 4-step residual {closure:.2e}, |AC∩BD - L| {diag:.2e}, \
             anticenter {anti:.2e}, vertex sum {sum:.2e}, root sum {vieta:.2e}, nine-point circle {npc:.2e}",
            centers.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let circle = Circle::unit(Point2::new(2.0, 1.0));
    let grid: Vec<f64> = (0..=2500).map(|i| -3.0 + i as f64 * 1e-3).collect();
    let res: Vec<Option<f64>> = grid.iter().map(|&p| sweep_residual(&circle, &par(p), 4, 8).residual).collect();
    let flagged = res.iter().filter(|r| r.is_none()).count();
    let mut minima = Vec::new();
    for i in 0..grid.len() {
        let Some(v) = res[i] else { continue };
        let left = i.checked_sub(1).and_then(|j| res[j]).unwrap_or(f64::INFINITY);
        let right = res.get(i + 1).copied().flatten().unwrap_or(f64::INFINITY);
        if v < 1e-6 && v <= left && v <= right {
            minima.push((grid[i], v));
        }
    }
    let pass = minima.len() == 1 && (minima[0].0 + 1.6).abs() <= 1e-3 + 1e-12;
    let at = minima.iter().map(|(p, v)| format!("p = {p:.3} ({v:.1e})")).collect::<Vec<_>>().join(", ");
    Outcome::new(pass, format!("2501 grid values, {flagged} flagged without orbits; minima below 1e-6: [{at}]"))
}

fn criterion_9() -> Outcome {
    let mut rng = rng(9);
    let origin = Circle::unit(Point2::ORIGIN);
    let mut cor = 0.0f64;
    for k in 1..=20 {
        let p = -2.0 + 0.2 * k as f64;
        if p.abs() < 1e-12 {
            continue;
        }
        let set = common_tangent_points(&origin, &par(p)).unwrap();
        let h = (4.0 - p * p).sqrt() / 2.0;
        let expect = [Point2::new(-p / 2.0, -h), Point2::new(-p / 2.0, h)];
        for x in expect {
            cor = cor.max(set.points.iter().map(|q| q.dist(x)).fold(f64::INFINITY, f64::min));
        }
    }
    let c = quartic_coefficients(Point2::new(0.0, 1.0), 1.0);
    let roots = solve_quartic(c[0], c[1], c[2], c[3], c[4]).unwrap();
    let count: u32 = roots.iter().map(|r| r.multiplicity).sum();

    let mut disc = 0.0f64;
    let mut n = 0;
    while n < 500 {
        let th = rng.gen_range(0.0..TAU);
        let e = Point2::new(th.cos(), th.sin());
        let pr = par(signed(&mut rng, 0.1, 2.0));
        let (lhs, rhs) = pencil_discriminant_pair(&focal_circle_matrix(e), e, &pr);
        let scale = lhs.abs().max(rhs.abs());
        if scale < 1e-12 {
            continue;
        }
        disc = disc.max((lhs - rhs).abs() / scale);
        n += 1;
    }

    let (mut agree, mut pos, mut neg) = (0, 0, 0);
    let mut trials = 0;
    while trials < 200 {
        let on = trials % 2 == 0;
        let e = if on {
            let th = rng.gen_range(0.0..TAU);
            Point2::new(th.cos(), th.sin())
        } else {
            let r = if rng.gen_bool(0.5) { rng.gen_range(0.2..0.9) } else { rng.gen_range(1.1..2.5) };
            let th = rng.gen_range(0.0..TAU);
            Point2::new(r * th.cos(), r * th.sin())
        };
        let circle = Circle::unit(e);
        let pr = par(signed(&mut rng, 0.2, 1.8));
        let Ok(cross) = poncelet_core::triangle::circle_parabola_intersections(&circle, &pr) else { continue };
        let Some(a) = cross.first().copied() else { continue };
        let Ok(kite) = directrix_kite(a, &circle, &pr) else { continue };
        let f = common_tangency_residual(kite.b, &circle, &pr);
        if f.abs() > 1e-9 && f.abs() < 1e-6 {
            continue;
        }
        trials += 1;
        let tangent_point = f.abs() <= 1e-9;
        let parallel = kite.parallel_sine <= 1e-8;
        if tangent_point {
            pos += 1;
        } else {
            neg += 1;
        }
        if tangent_point == parallel {
            agree += 1;
        }
    }
    Outcome::new(
        cor <= 1e-15 && count == 2 && disc <= 1e-8 && agree == 200,
        format!(
            "centered points max error {cor:.1e}; real quartic roots for E=(0,1), p=1: {count}; discriminant identity \
             {disc:.2e} over 500; parallel test agrees {agree}/200 ({pos} tangent, {neg} not)"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = rng(10);
    let mut worst = 0.0f64;
    let mut wrong_count = 0;
    let mut n = 0;
    let mut tally = [0usize; 3];
    while n < 500 {
        let focus = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let th = rng.gen_range(0.0..TAU);
        let dist = rng.gen_range(0.3..2.0);
        let normal = Point2::new(th.cos(), th.sin());
        let directrix = Line2::through_dir(focus - normal * dist, normal.perp()).unwrap();
        let gp = GeneralParabola::new(focus, directrix).unwrap();
        let a = Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let kind = gp.eval(a);
        let expect = if kind > 1e-6 {
            2
        } else if kind < -1e-6 {
            0
        } else {
            continue;
        };
        let sol = compass_tangents(focus, &directrix, a).unwrap();
        tally[sol.len()] += 1;
        if sol.len() != expect {
            wrong_count += 1;
            continue;
        }
        if expect == 0 {
            continue;
        }
        n += 1;
        let circle = Circle::new(focus, 1.0).unwrap();
        let (sim, _, cp) = normalize_frame(&circle, &gp).unwrap();
        let back = sim.inverse();
        let tp = tangents_from_point(sim.apply(a), &cp).unwrap();
        for t in &tp.tangents {
            let line = back.apply_line(&t.line);
            let contact = back.apply(t.contact);
            let best = sol
                .iter()
                .map(|s| line_gap(&s.line, &line).max(s.contact.dist(contact) / (1.0 + contact.norm())))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
    }
    let mut on_curve = 0;
    for _ in 0..100 {
        let focus = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let directrix = Line2::vertical(focus.x - rng.gen_range(0.3..2.0));
        let gp = GeneralParabola::new(focus, directrix).unwrap();
        let y = rng.gen_range(-3.0..3.0);
        let h = focus.x - directrix.distance(focus);
        // |XF| = x - h on the curve: x = (h² - f_x² - (y - f_y)²) / (2(h - f_x)).
        let x = (h * h - focus.x * focus.x - (y - focus.y).powi(2)) / (2.0 * (h - focus.x));
        let a = Point2::new(x, y);
        debug_assert!(gp.eval(a).abs() < 1e-9);
        if compass_tangents(focus, &directrix, a).unwrap().len() == 1 {
            on_curve += 1;
        }
    }
    Outcome::new(
        worst <= 1e-9 && wrong_count == 0 && on_curve == 100,
        format!(
            "500 exterior points: max disagreement {worst:.2e}; samples with (0, 1, 2) solutions {tally:?} \
             with {wrong_count} wrong; on-curve points with one solution: {on_curve}/100"
        ),
    )
}

fn criterion_11() -> Outcome {
    let cases = [
        (
            "circle through the focus, confocal",
            Circle::unit(Point2::new(0.6, 0.8)),
            FamilySpec::Confocal { focus: Point2::ORIGIN, axis: Point2::new(1.0, 0.0) },
            Isoperiodicity::Three,
        ),
        (
            "circle centered at the focus, confocal",
            Circle::unit(Point2::ORIGIN),
            FamilySpec::Confocal { focus: Point2::ORIGIN, axis: Point2::new(1.0, 0.0) },
            Isoperiodicity::Four,
        ),
        (
            "E = (2, 1), directrices through (1.6, 0.8)",
            Circle::unit(Point2::new(2.0, 1.0)),
            FamilySpec::Pivoting { focus: Point2::ORIGIN, pivot: Point2::new(1.6, 0.8) },
            Isoperiodicity::Four,
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, circle, family, expect) in cases {
        let r = classify_isoperiodic(&circle, &family).unwrap();
        let ok = r.kind == expect && r.verified && r.members.len() == 10;
        pass &= ok;
        let worst = r.members.iter().map(|m| m.residual).fold(0.0, f64::max);
        parts.push(format!("{name}: {:?}, {} members verified, residual {worst:.1e}", r.kind, r.members.len()));
    }
    let control = classify_isoperiodic(
        &Circle::unit(Point2::new(2.0, 1.0)),
        &FamilySpec::Pivoting { focus: Point2::ORIGIN, pivot: Point2::new(1.0, 0.5) },
    )
    .unwrap();
    Outcome::new(pass, parts.join("; "))
        .note(format!("control pivot (1.0, 0.5): {:?}, verified {}", control.kind, control.verified))
}

fn criterion_12() -> Outcome {
    let mut rng = rng(12);
    let mut quad_gap = 0.0f64;
    let mut quads = 0;
    while quads < 100 {
        let e = Point2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
        if e.norm() < 1.2 || l_point(e).map(|(l, _)| l.x.abs() < 0.2).unwrap_or(true) {
            continue;
        }
        let circle = Circle::unit(e);
        let (_, p) = l_point(e).unwrap();
        let pr = par(p);
        let Some(a) = admissible_starts(&circle, &pr, 7, 1e-3).get(rng.gen_range(0..7)).copied() else { continue };
        let Ok(q) = build_quad_through_l(a, &circle, &pr) else { continue };
        let [a, b, c, d] = q.vertices;
        let got = inscribe_parabola_in_cyclic_quad(a, b, c, d).unwrap();
        let gap = got.focus.norm().max(line_gap(&got.directrix, &Line2::vertical(-p)));
        quad_gap = quad_gap.max(gap);
        quads += 1;
    }
    let circle = Circle::unit(Point2::ORIGIN);
    let mut p_gap = 0.0f64;
    let mut flies = 0;
    while flies < 100 {
        let pr = par(signed(&mut rng, 0.05, 1.95));
        let Some(starts) = random_starts(&mut rng, &circle, 1, |a| eval_s(a, &pr) > 1e-3) else { continue };
        let Ok(q) = build_butterfly(starts[0], &circle, &pr) else { continue };
        let [a, b, c, d] = q.vertices;
        let (gp, _) = inscribe_parabola_in_trapezoid(a, b, d, c).unwrap();
        let l = gp.directrix;
        let p_rec = l.c() / l.a();
        p_gap = p_gap.max((p_rec - pr.p).abs()).max(gp.focus.norm()).max(l.b().abs());
        flies += 1;
    }
    Outcome::new(
        quad_gap <= 1e-7 && p_gap <= 1e-8,
        format!("100 quads: focus/directrix recovery {quad_gap:.2e}; 100 butterflies: p recovery {p_gap:.2e}"),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "triangle orbits close iff the circle passes through the focus", criterion_1),
        (2, "triangle closure defect two-sided identity", criterion_2),
        (3, "orthocenter on the directrix, centroid and nine-point abscissae", criterion_3),
        (4, "orthocenter segment endpoints at the common-tangent points", criterion_4),
        (5, "side midpoints on the pedal cubic", criterion_5),
        (6, "butterfly congruences, verticality, inverse pair, midline", criterion_6),
        (7, "quadrilaterals with diagonals through L", criterion_7),
        (8, "unique closing parameter for E = (2, 1)", criterion_8),
        (9, "common tangents, discriminant identity, parallel test", criterion_9),
        (10, "compass construction matches algebraic tangents", criterion_10),
        (11, "isoperiodic families", criterion_11),
        (12, "inscribed parabola round trips", criterion_12),
    ];
    let mut unexpected = Vec::new();
    let mut known = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let out = run();
        let secs = t.elapsed().as_secs_f64();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} {id:>2} {name}: {} [{secs:.1}s]", out.detail);
        for n in &out.notes {
            println!("        note: {n}");
        }
        let expected_red = KNOWN_RED.iter().find(|(k, _)| *k == id);
        match (out.pass, expected_red) {
            (false, Some((_, why))) => {
                println!("        known: {why}");
                known.push(id);
            }
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} passed but is listed as known red")),
            (true, None) => {}
        }
    }
    println!(
        "summary: {} of 12 pass; known red: {:?}",
        12 - known.len() - unexpected.iter().filter(|u| u.ends_with("failed")).count(),
        known
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in unexpected {
            eprintln!("{u}");
        }
        ExitCode::FAILURE
    }
}
