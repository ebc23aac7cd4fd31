use approx::assert_abs_diff_eq;
use poncelet_core::poly::{cubic_discriminant, eval, solve_cubic, solve_poly, solve_quadratic, solve_quartic};
use poncelet_core::{normalize_frame, CanonicalParabola, Circle, GeneralParabola, GeometryError, Line2, Point2};
use proptest::prelude::*;

#[test]
fn frame_pure_scaling() {
    let circle = Circle::new(Point2::ORIGIN, 2.0).unwrap();
    let gp = GeneralParabola::new(Point2::ORIGIN, Line2::vertical(-4.0)).unwrap();
    let (sim, c, par) = normalize_frame(&circle, &gp).unwrap();
    assert_abs_diff_eq!(sim.scale, 0.5, epsilon = 1e-15);
    assert!(c.center.approx_eq(Point2::ORIGIN, 1e-15));
    assert_abs_diff_eq!(c.radius, 1.0);
    assert_abs_diff_eq!(par.p, 2.0, epsilon = 1e-15);
}

#[test]
fn frame_rotated_scene() {
    let circle = Circle::new(Point2::new(1.0, 3.0), 1.0).unwrap();
    let gp = GeneralParabola::new(Point2::new(1.0, 1.0), Line2::horizontal(-1.0)).unwrap();
    let (sim, c, par) = normalize_frame(&circle, &gp).unwrap();
    assert_abs_diff_eq!(sim.angle.sin(), -1.0, epsilon = 1e-15);
    assert!(c.center.approx_eq(Point2::new(2.0, 0.0), 1e-12));
    assert_abs_diff_eq!(par.p, 2.0, epsilon = 1e-12);
    let back = sim.inverse();
    for q in [Point2::new(0.3, -7.0), Point2::new(5.0, 2.0), circle.center] {
        assert!(back.apply(sim.apply(q)).approx_eq(q, 1e-12));
    }
    let mapped = sim.apply_parabola(&gp);
    assert!(mapped.approx_eq(&par.to_general(), 1e-12));
}

#[test]
fn frame_identity_scene() {
    let circle = Circle::unit(Point2::new(0.6, 0.8));
    let par = CanonicalParabola::new(0.5).unwrap();
    let (sim, c, out) = normalize_frame(&circle, &par.to_general()).unwrap();
    assert!(sim.is_identity(1e-15));
    assert_eq!(c, circle);
    assert_abs_diff_eq!(out.p, 0.5, epsilon = 1e-15);
}

#[test]
fn focus_on_directrix_rejected() {
    assert!(matches!(
        GeneralParabola::new(Point2::ORIGIN, Line2::vertical(0.0)),
        Err(GeometryError::DegenerateParabola(_))
    ));
    assert!(CanonicalParabola::new(0.0).is_err());
}

#[test]
fn solver_examples() {
    let r = solve_quadratic(1.0, -2.0, 1.0).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].multiplicity, 2);
    assert_abs_diff_eq!(r[0].value, 1.0, epsilon = 1e-12);

    let r = solve_quartic(4.0, 0.0, 0.0, 4.0, 1.0).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r[0].value > -1.0 && r[0].value < -0.5);
    assert!(r[1].value > -0.5 && r[1].value < 0.0);

    let r: Vec<f64> = solve_cubic(1.0, 0.0, -1.0, 0.0).unwrap().iter().map(|r| r.value).collect();
    assert_eq!(r.len(), 3);
    for (got, want) in r.iter().zip([-1.0, 0.0, 1.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
    }
    assert!(matches!(solve_quartic(0.0, 0.0, 0.0, 0.0, 0.0), Err(GeometryError::Indeterminate)));
}

#[test]
fn degree_degradation() {
    let r = solve_quartic(1e-20, 0.0, 1.0, 0.0, -4.0).unwrap();
    assert_eq!(r.len(), 2);
    assert_abs_diff_eq!(r[0].value, -2.0, epsilon = 1e-14);
    assert_abs_diff_eq!(r[1].value, 2.0, epsilon = 1e-14);
}

#[test]
fn discriminant_examples() {
    assert_abs_diff_eq!(cubic_discriminant(1.0, 0.0, -3.0, 2.0), 0.0, epsilon = 1e-12);
    assert_eq!(cubic_discriminant(1.0, 0.0, 0.0, 0.0), 0.0);
    assert_abs_diff_eq!(cubic_discriminant(1.0, 0.0, -1.0, 0.0), 4.0, epsilon = 1e-14);
}

fn expand(roots: &[f64], lead: f64) -> Vec<f64> {
    let mut c = vec![lead];
    for r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] -= v * r;
        }
        c = next;
    }
    c
}

proptest! {
    #[test]
    fn frame_round_trip(
        fx in -5.0..5.0f64, fy in -5.0..5.0f64, th in 0.0..std::f64::consts::TAU, d in 0.1..4.0f64,
        ex in -5.0..5.0f64, ey in -5.0..5.0f64, r in 0.1..5.0f64,
        pts in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 10),
    ) {
        let focus = Point2::new(fx, fy);
        let n = Point2::new(th.cos(), th.sin());
        let gp = GeneralParabola::new(focus, Line2::through_dir(focus - n * d, n.perp()).unwrap()).unwrap();
        let circle = Circle::new(Point2::new(ex, ey), r).unwrap();
        let (sim, c, par) = normalize_frame(&circle, &gp).unwrap();
        prop_assert!((c.radius - 1.0).abs() < 1e-15);
        prop_assert!((par.p.abs() - d / r).abs() < 1e-12 * (1.0 + d / r));
        prop_assert!(sim.apply_parabola(&gp).approx_eq(&par.to_general(), 1e-9));
        let back = sim.inverse();
        for (x, y) in pts {
            let q = Point2::new(x, y);
            prop_assert!(back.apply(sim.apply(q)).dist(q) <= 1e-12 * (1.0 + q.norm()));
        }
    }

    #[test]
    fn solver_finds_factored_roots(
        roots in prop::collection::vec(-5.0..5.0f64, 1..=4),
        lead in prop_oneof![-3.0..-0.2f64, 0.2..3.0f64],
    ) {
        let c = expand(&roots, lead);
        let scale = c.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let found = solve_poly(&c).unwrap();
        for w in found.windows(2) {
            prop_assert!(w[0].value <= w[1].value);
        }
        for r in &found {
            prop_assert!(eval(&c, r.value).abs() <= 1e-10 * scale);
        }
        for want in &roots {
            let near = found.iter().map(|r| (r.value - want).abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(near < 1e-3, "missed root {} in {:?}", want, found);
        }
    }

    #[test]
    fn focal_property(p in prop_oneof![-3.0..-0.1f64, 0.1..3.0f64], t in -5.0..5.0f64) {
        let par = CanonicalParabola::new(p).unwrap();
        let x = par.point_at(t);
        let d = par.tangent_at(t).direction();
        let to_focus = (par.focus() - x) * (1.0 / par.focus().dist(x));
        let ray = Point2::new(p.signum(), 0.0);
        let a1 = d.dot(to_focus).abs().acos();
        let a2 = d.dot(ray).abs().acos();
        prop_assert!((a1 - a2).abs() < 1e-9);
    }
}
