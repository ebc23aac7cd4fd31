use approx::assert_abs_diff_eq;
use poncelet_core::common_tangents::*;
use poncelet_core::joachimsthal::{common_tangency_residual, eval_s};
use poncelet_core::triangle::circle_parabola_intersections;
use poncelet_core::{CanonicalParabola, Circle, ConicMatrix, Point2};
use proptest::prelude::*;

fn par(p: f64) -> CanonicalParabola {
    CanonicalParabola::new(p).unwrap()
}

fn nonzero_p() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..-0.2f64, 0.2..3.0f64]
}

/// Common tangents counted by sign changes of the tangency defect of the
/// circle tangent as it rolls around the circle.
fn brute_count(circle: &Circle, pp: &CanonicalParabola) -> Option<usize> {
    let n = 20000;
    let g = |k: usize| {
        let th = std::f64::consts::TAU * k as f64 / n as f64;
        pp.line_tangency(&circle.tangent_at(circle.point_at(th)).unwrap())
    };
    let vals: Vec<f64> = (0..n).map(g).collect();
    if vals.iter().any(|v| v.abs() < 1e-5) {
        return None;
    }
    Some((0..n).filter(|&k| (vals[k] > 0.0) != (vals[(k + 1) % n] > 0.0)).count())
}

#[test]
fn locus_examples() {
    let l = h_conic(Point2::ORIGIN, 1.0);
    assert_eq!(l.kind, LocusKind::DoubleLine);
    assert_abs_diff_eq!(-l.lines[0].c() / l.lines[0].a(), -0.5, epsilon = 1e-15);

    let l = h_conic(Point2::new(1.0, 0.0), 1.0);
    assert_eq!(l.kind, LocusKind::ParallelLinePair);
    assert!(l.lines.is_empty());

    assert_eq!(h_conic(Point2::new(0.0, 1.0), 1.0).kind, LocusKind::Hyperbola);
}

#[test]
fn focal_circle_points() {
    let set = common_tangent_points(&Circle::unit(Point2::ORIGIN), &par(1.0)).unwrap();
    assert_eq!(set.len(), 2);
    let h = 3.0f64.sqrt() / 2.0;
    for want in [Point2::new(-0.5, -h), Point2::new(-0.5, h)] {
        assert!(set.points.iter().any(|q| q.approx_eq(want, 1e-12)));
    }
    assert!(set.on_vertical_branch.iter().all(|&b| b));
    assert!(common_tangent_points(&Circle::unit(Point2::ORIGIN), &par(2.5)).unwrap().is_empty());
}

#[test]
fn quartic_for_e01() {
    let c = quartic_coefficients(Point2::new(0.0, 1.0), 1.0);
    for (got, want) in c.iter().zip([4.0, 0.0, 0.0, 4.0, 1.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
    }
    assert_eq!(common_tangent_points(&Circle::unit(Point2::new(0.0, 1.0)), &par(1.0)).unwrap().len(), 2);
}

#[test]
fn identity_pencil() {
    let id = ConicMatrix::from_coeffs(1.0, 0.0, 1.0, 0.0, 0.0, 1.0);
    let zero = ConicMatrix::from_coeffs(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    assert_eq!(pencil_cubic(&id, &zero), [1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn zero_pencil_rejected() {
    let zero = ConicMatrix::from_coeffs(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    assert!(count_real_degenerate(&zero, &zero).is_err());
}

#[test]
fn concentric_circles_pencil() {
    let a = ConicMatrix::circle(&Circle::unit(Point2::new(0.3, -0.2)));
    let b = ConicMatrix::circle(&Circle::new(Point2::new(0.3, -0.2), 2.0).unwrap());
    let n = count_real_degenerate(&a, &b).unwrap();
    assert!((1..=3).contains(&n));
}

#[test]
fn count_agreement_on_focal_circle() {
    let e = Point2::new(0.6, 0.8);
    let pp = par(0.5);
    let d = focal_circle_matrix(e);
    let direct = count_real_degenerate(&d, &ConicMatrix::parabola(&pp)).unwrap();
    let via_locus = count_real_degenerate(&d, &h_matrix(e, pp.p)).unwrap();
    assert_eq!(direct, via_locus);
}

#[test]
fn kite_when_circle_passes_through_focus() {
    let circle = Circle::unit(Point2::new(0.6, 0.8));
    let pp = par(0.5);
    for a in circle_parabola_intersections(&circle, &pp).unwrap() {
        let k = directrix_kite(a, &circle, &pp).unwrap();
        assert!(k.parallel_sine < 1e-9);
        assert!(common_tangency_residual(k.b, &circle, &pp).abs() < 1e-9);
        assert!(pp.directrix().distance(k.t1) < 1e-12 && pp.directrix().distance(k.t2) < 1e-12);
        assert_abs_diff_eq!(k.b.dist(k.t1), k.b.dist(pp.focus()), epsilon = 1e-9);
    }
}

#[test]
fn kite_fails_off_the_focus() {
    let circle = Circle::unit(Point2::new(0.5, 1.2));
    let pp = par(0.7);
    let hits = circle_parabola_intersections(&circle, &pp).unwrap();
    assert!(!hits.is_empty());
    for a in hits {
        let k = directrix_kite(a, &circle, &pp).unwrap();
        assert!(k.parallel_sine > 1e-4);
    }
}

proptest! {
    #[test]
    fn points_touch_both_curves(ex in -2.5..2.5f64, ey in -2.5..2.5f64, p in nonzero_p()) {
        prop_assume!(ey.abs() > 1e-3);
        let circle = Circle::unit(Point2::new(ex, ey));
        let pp = par(p);
        let set = common_tangent_points(&circle, &pp).unwrap();
        prop_assert!(set.len() <= 4);
        for (a, line) in set.points.iter().zip(&set.lines) {
            prop_assert!(circle.residual(*a).abs() < 1e-9);
            prop_assert!(pp.line_tangency(line).abs() < 1e-8);
            prop_assert!(h_matrix(circle.center, p).eval(*a).abs() < 1e-8);
        }
        if let Some(n) = brute_count(&circle, &pp) {
            prop_assert_eq!(set.len(), n, "E = ({}, {}), p = {}", ex, ey, p);
        }
    }

    #[test]
    fn complex_roots_sum(ex in -2.5..2.5f64, ey in -2.5..2.5f64, p in nonzero_p()) {
        prop_assume!(ey.abs() > 1e-2);
        let e = Point2::new(ex, ey);
        let s: f64 = quartic_roots_complex(e, p).unwrap().iter().map(|z| z.re).sum();
        let v = quartic_root_sum_vieta(e);
        prop_assert!((s - v).abs() < 1e-6 * (1.0 + v.abs()));
    }

    #[test]
    fn locus_family_differs_in_corner(ex in -2.0..2.0f64, ey in -2.0..2.0f64, p1 in nonzero_p(), p2 in nonzero_p()) {
        let e = Point2::new(ex, ey);
        let diff = h_matrix(e, p1).sub(&h_matrix(e, p2));
        for i in 0..3 {
            for j in 0..3 {
                let want = if (i, j) == (2, 2) { p1 - p2 } else { 0.0 };
                prop_assert!((diff.get(i, j) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn discriminants_agree_on_focal_circle(th in 0.0..std::f64::consts::TAU, p in nonzero_p()) {
        let e = Point2::new(th.cos(), th.sin());
        let (lhs, rhs) = pencil_discriminant_pair(&focal_circle_matrix(e), e, &par(p));
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(rhs.abs()).max(1.0));
    }

    #[test]
    fn correspondence_round_trip(th in 0.0..std::f64::consts::TAU, p in nonzero_p()) {
        let circle = Circle::unit(Point2::new(th.cos(), th.sin()));
        let pp = par(p);
        for a in circle_parabola_intersections(&circle, &pp).unwrap() {
            let b = correspondence_partner(a, &circle, &pp).unwrap();
            prop_assume!(b.dist(a) > 1e-3 && eval_s(b, &pp) > 1e-6);
            prop_assert!(common_tangency_residual(b, &circle, &pp).abs() < 1e-9);
            let back = correspondence_partner(b, &circle, &pp).unwrap();
            prop_assert!(back.dist(a) < 1e-8, "{:?} -> {:?} -> {:?}", a, b, back);
            prop_assert!(eval_s(back, &pp).abs() < 1e-8);
        }
    }
}
