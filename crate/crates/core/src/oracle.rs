//! Brute-force closure checks.
//!
//! Iterates the tangent-chord map numerically using only tangent and chord
//! primitives, detects periodic orbits and classifies isoperiodic families.

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geom::{normalize_frame, CanonicalParabola, Circle, GeneralParabola, Line2, Point2};
use crate::joachimsthal::{eval_s, second_intersection, tangents_from_point_tol};
use crate::tol::{EPS_CLOSURE, EPS_GEO};

/// Largest period searched by [`detect_period`].
pub const N_MAX_CAP: usize = 12;

/// Family members checked by [`classify_isoperiodic`].
pub const FAMILY_SAMPLES: usize = 10;

/// Which tangent the first step takes, by contact ordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Lower,
    Upper,
}

impl Branch {
    pub fn reversed(self) -> Branch {
        match self {
            Branch::Lower => Branch::Upper,
            Branch::Upper => Branch::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitStep {
    pub vertex: Point2,
    pub tangent: Line2,
    pub contact: Point2,
    pub next: Point2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub n_target: usize,
    /// `|V_n − V_0|`.
    pub residual: f64,
    pub steps: Vec<OrbitStep>,
    pub closed: bool,
    /// Two of the first `n` vertices coincide.
    pub trivial: bool,
}

impl ClosureReport {
    pub fn vertices(&self) -> Vec<Point2> {
        self.steps.iter().map(|s| s.vertex).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodSearch {
    /// Smallest closing `n`, if any.
    pub period: Option<usize>,
    /// One report per `n = 1..=n_max` actually reached.
    pub reports: Vec<ClosureReport>,
}

impl PeriodSearch {
    pub fn report(&self, n: usize) -> Option<&ClosureReport> {
        self.reports.get(n.checked_sub(1)?)
    }
}

/// One edge of the chain: leave `v` along the tangent not touching at
/// `incoming`, or along `branch` on the first step.
///
/// Any `S > 0` yields two tangents here, so vertices very close to the
/// parabola still turn onto the second tangent.
pub fn step(
    v: Point2,
    incoming: Option<Point2>,
    branch: Branch,
    circle: &Circle,
    par: &CanonicalParabola,
) -> Result<OrbitStep> {
    let pair = tangents_from_point_tol(v, par, 0.0)?;
    let t = if pair.tangents.len() == 1 {
        pair.tangents[0]
    } else {
        match incoming {
            Some(c) => *pair
                .tangents
                .iter()
                .max_by(|a, b| a.contact.dist(c).total_cmp(&b.contact.dist(c)))
                .expect("two tangents"),
            None => match branch {
                Branch::Lower => pair.tangents[0],
                Branch::Upper => pair.tangents[1],
            },
        }
    };
    let next = second_intersection(v, &t.line, circle)?;
    Ok(OrbitStep { vertex: v, tangent: t.line, contact: t.contact, next })
}

fn report_for(v0: Point2, steps: &[OrbitStep]) -> ClosureReport {
    let n = steps.len();
    let residual = steps[n - 1].next.dist(v0);
    let trivial = (0..n).any(|i| (i + 1..n).any(|j| steps[i].vertex.dist(steps[j].vertex) <= EPS_GEO))
        || (n > 1 && steps[0].next.dist(v0) <= EPS_GEO);
    let closed = n >= 3 && residual <= EPS_CLOSURE && !trivial;
    ClosureReport { n_target: n, residual, steps: steps.to_vec(), closed, trivial }
}

/// Runs exactly `n` steps from `v0`.
pub fn run_orbit(
    v0: Point2,
    branch: Branch,
    circle: &Circle,
    par: &CanonicalParabola,
    n: usize,
) -> Result<ClosureReport> {
    if n == 0 {
        return Err(GeometryError::Validation("orbit length must be positive".into()));
    }
    let mut steps = Vec::with_capacity(n);
    let mut v = v0;
    let mut incoming = None;
    for _ in 0..n {
        let s = step(v, incoming, branch, circle, par)?;
        v = s.next;
        incoming = Some(s.contact);
        steps.push(s);
    }
    Ok(report_for(v0, &steps))
}

/// Smallest `n ≤ n_max` for which the orbit from `v0` closes non-trivially.
pub fn detect_period(
    v0: Point2,
    branch: Branch,
    circle: &Circle,
    par: &CanonicalParabola,
    n_max: usize,
) -> Result<PeriodSearch> {
    if n_max == 0 || n_max > N_MAX_CAP {
        return Err(GeometryError::Validation(format!("n_max must be in 1..={N_MAX_CAP}")));
    }
    let mut steps = Vec::with_capacity(n_max);
    let mut reports = Vec::with_capacity(n_max);
    let mut v = v0;
    let mut incoming = None;
    for _ in 0..n_max {
        let s = step(v, incoming, branch, circle, par)?;
        v = s.next;
        incoming = Some(s.contact);
        steps.push(s);
        let r = report_for(v0, &steps);
        let closed = r.closed;
        reports.push(r);
        if closed {
            return Ok(PeriodSearch { period: Some(steps.len()), reports });
        }
    }
    Ok(PeriodSearch { period: None, reports })
}

/// Up to `count` circle points with `S > min_s`, spread evenly over the
/// admissible part of a fine angular grid.
pub fn admissible_starts(circle: &Circle, par: &CanonicalParabola, count: usize, min_s: f64) -> Vec<Point2> {
    const GRID: usize = 4096;
    let ok: Vec<Point2> = (0..GRID)
        .map(|k| circle.point_at((k as f64 + 0.5) * std::f64::consts::TAU / GRID as f64))
        .filter(|a| eval_s(*a, par) > min_s)
        .collect();
    if ok.is_empty() || count == 0 {
        return vec![];
    }
    let count = count.min(ok.len());
    (0..count).map(|i| ok[i * ok.len() / count]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSample {
    /// Largest `n`-step residual over completed non-trivial orbits.
    pub residual: Option<f64>,
    pub completed: usize,
    pub attempted: usize,
}

/// `n`-step residual of a configuration over `starts` spread admissible starts.
pub fn sweep_residual(circle: &Circle, par: &CanonicalParabola, n: usize, starts: usize) -> SweepSample {
    let pts = admissible_starts(circle, par, starts, 1e-6);
    let mut worst: Option<f64> = None;
    let mut completed = 0;
    for a in &pts {
        if let Ok(r) = run_orbit(*a, Branch::Upper, circle, par, n) {
            if r.trivial {
                continue;
            }
            completed += 1;
            worst = Some(worst.map_or(r.residual, |w| w.max(r.residual)));
        }
    }
    SweepSample { residual: worst, completed, attempted: pts.len() }
}

/// A one-parameter family of parabolas sharing a focus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FamilySpec {
    /// Common focus and axis direction, varying parameter.
    Confocal { focus: Point2, axis: Point2 },
    /// Common focus, directrices through `pivot`.
    Pivoting { focus: Point2, pivot: Point2 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isoperiodicity {
    Three,
    Four,
    Neither,
}

impl Isoperiodicity {
    pub fn period(self) -> Option<usize> {
        match self {
            Isoperiodicity::Three => Some(3),
            Isoperiodicity::Four => Some(4),
            Isoperiodicity::Neither => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberCheck {
    pub parabola: GeneralParabola,
    /// Parameter in the normalized frame.
    pub p: f64,
    /// Period found from every start, or `None` if the starts disagree or fail.
    pub period: Option<usize>,
    pub starts: usize,
    /// Largest closing residual at the expected period.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperiodicReport {
    pub kind: Isoperiodicity,
    pub members: Vec<MemberCheck>,
    /// Every member behaves as `kind` predicts.
    pub verified: bool,
}

const MEMBER_STARTS: usize = 5;

fn check_member(circle: &Circle, gp: &GeneralParabola, expect: Option<usize>) -> Option<MemberCheck> {
    let (_, c, par) = normalize_frame(circle, gp).ok()?;
    let starts = admissible_starts(&c, &par, MEMBER_STARTS, 1e-3);
    if starts.len() < MEMBER_STARTS {
        return None;
    }
    let mut periods = Vec::with_capacity(starts.len());
    let mut residual = 0.0f64;
    for a in &starts {
        match detect_period(*a, Branch::Upper, &c, &par, 8) {
            Ok(s) => {
                if let Some(r) = expect.and_then(|n| s.report(n)) {
                    residual = residual.max(r.residual);
                }
                periods.push(s.period);
            }
            Err(_) => periods.push(None),
        }
    }
    let period = if periods.iter().all(|p| *p == periods[0]) { periods[0] } else { None };
    Some(MemberCheck { parabola: *gp, p: par.p, period, starts: starts.len(), residual })
}

fn unit(v: Point2) -> Result<Point2> {
    let n = v.norm();
    if !n.is_finite() || n <= 0.0 {
        return Err(GeometryError::Validation("direction must be nonzero".into()));
    }
    Ok(v * (1.0 / n))
}

/// Classifies a family against `circle` and checks [`FAMILY_SAMPLES`]
/// members with the orbit oracle.
///
/// Confocal families are 3-isoperiodic when the circle passes through the
/// focus and 4-isoperiodic when it is centered there. Pivoting families add
/// the 4-isoperiodic case where the pivot is the polar point of the focus on
/// the line through the focus and the center.
pub fn classify_isoperiodic(circle: &Circle, family: &FamilySpec) -> Result<IsoperiodicReport> {
    let r = circle.radius;
    let focus = match family {
        FamilySpec::Confocal { focus, .. } | FamilySpec::Pivoting { focus, .. } => *focus,
    };
    let ef = circle.center - focus;
    let d = ef.norm();
    let centered = d <= EPS_GEO * r;
    let through = (d - r).abs() <= EPS_GEO * r;
    let kind = match family {
        FamilySpec::Confocal { .. } => {
            if centered {
                Isoperiodicity::Four
            } else if through {
                Isoperiodicity::Three
            } else {
                Isoperiodicity::Neither
            }
        }
        FamilySpec::Pivoting { pivot, .. } => {
            if centered {
                Isoperiodicity::Four
            } else if through {
                Isoperiodicity::Three
            } else {
                let l = focus + ef * ((d * d - r * r) / (d * d));
                if pivot.dist(l) <= EPS_GEO * r {
                    Isoperiodicity::Four
                } else {
                    Isoperiodicity::Neither
                }
            }
        }
    };
    let candidates: Vec<GeneralParabola> = match family {
        FamilySpec::Confocal { axis, .. } => {
            let u = unit(*axis)?;
            (1..=40)
                .flat_map(|k| {
                    let p = 0.05 * k as f64;
                    [-p, p]
                })
                .filter(|p| !centered || p.abs() < 2.0)
                .filter_map(|p| {
                    let foot = focus - u * (p * r);
                    GeneralParabola::new(focus, Line2::through_dir(foot, u.perp()).ok()?).ok()
                })
                .collect()
        }
        FamilySpec::Pivoting { pivot, .. } => (0..64)
            .filter_map(|k| {
                let theta = (k as f64 + 0.5) * std::f64::consts::PI / 64.0;
                let dir = Point2::new(theta.cos(), theta.sin());
                let line = Line2::through_dir(*pivot, dir).ok()?;
                let dist = line.distance(focus);
                if dist <= EPS_GEO * r || (centered && dist >= 2.0 * r) {
                    return None;
                }
                GeneralParabola::new(focus, line).ok()
            })
            .collect(),
    };
    let expect = kind.period();
    let spread = (candidates.len() / FAMILY_SAMPLES).max(1);
    let mut members = Vec::with_capacity(FAMILY_SAMPLES);
    for offset in 0..spread {
        for gp in candidates.iter().skip(offset).step_by(spread) {
            if members.len() == FAMILY_SAMPLES {
                break;
            }
            if members.iter().any(|m: &MemberCheck| m.parabola == *gp) {
                continue;
            }
            if let Some(m) = check_member(circle, gp, expect) {
                members.push(m);
            }
        }
    }
    let verified = members.len() == FAMILY_SAMPLES
        && members.iter().all(|m| match expect {
            Some(n) => m.period == Some(n),
            None => !matches!(m.period, Some(3) | Some(4)),
        });
    Ok(IsoperiodicReport { kind, members, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn butterfly_period_four() {
        let circle = Circle::unit(Point2::ORIGIN);
        let par = CanonicalParabola::new(0.8).unwrap();
        let a = admissible_starts(&circle, &par, 1, 1e-3)[0];
        let s = detect_period(a, Branch::Upper, &circle, &par, 8).unwrap();
        assert_eq!(s.period, Some(4));
    }

    #[test]
    fn triangle_period_three() {
        let circle = Circle::unit(Point2::new(0.6, 0.8));
        let par = CanonicalParabola::new(0.5).unwrap();
        for a in admissible_starts(&circle, &par, 7, 1e-3) {
            let s = detect_period(a, Branch::Lower, &circle, &par, 8).unwrap();
            assert_eq!(s.period, Some(3));
        }
    }

    #[test]
    fn inside_vertex_rejected() {
        let circle = Circle::unit(Point2::new(2.0, 0.0));
        let par = CanonicalParabola::new(2.0).unwrap();
        let err = step(Point2::new(1.0, 0.0), None, Branch::Upper, &circle, &par).unwrap_err();
        assert!(matches!(err, GeometryError::PointInsideParabola { .. }));
    }

    #[test]
    fn n_max_capped() {
        let circle = Circle::unit(Point2::ORIGIN);
        let par = CanonicalParabola::new(1.0).unwrap();
        assert!(detect_period(Point2::new(0.0, 1.0), Branch::Upper, &circle, &par, 13).is_err());
    }
}
