//! Real root finding for polynomials of degree at most four.
//!
//! Roots are isolated between consecutive critical points (the roots of the
//! derivative, found recursively), refined by bisection and polished with
//! Newton steps. A critical point where the polynomial vanishes is reported
//! as a multiple root. Coefficients are given highest degree first.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GeometryError, Result};

/// Leading coefficients at or below this fraction of the largest are dropped.
pub const DEGREE_THRESHOLD: f64 = 1e-12;

/// Relative residual below which a critical point counts as a root.
const MULTIPLE_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
}

impl Root {
    fn simple(value: f64) -> Self {
        Root { value, multiplicity: 1 }
    }
}

/// Horner evaluation, coefficients highest degree first.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// `Σ |c_i|·|x|^i`, the natural rounding scale of `eval` at `x`.
pub fn eval_scale(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    coeffs.iter().fold(0.0, |acc, &c| acc * ax + c.abs())
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len().saturating_sub(1);
    coeffs[..n].iter().enumerate().map(|(i, &c)| c * (n - i) as f64).collect()
}

/// Strips negligible leading coefficients.
///
/// Errors when every coefficient is zero.
pub fn trim_degree(coeffs: &[f64]) -> Result<Vec<f64>> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return Err(GeometryError::Indeterminate);
    }
    let start =
        coeffs.iter().position(|c| c.abs() > DEGREE_THRESHOLD * max).expect("max coefficient exceeds threshold");
    Ok(coeffs[start..].to_vec())
}

pub fn solve_quadratic(c2: f64, c1: f64, c0: f64) -> Result<Vec<Root>> {
    solve_poly(&[c2, c1, c0])
}

pub fn solve_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<Root>> {
    solve_poly(&[c3, c2, c1, c0])
}

pub fn solve_quartic(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<Root>> {
    solve_poly(&[c4, c3, c2, c1, c0])
}

/// Sorted real roots of a polynomial of degree ≤ 4 after degree trimming.
pub fn solve_poly(coeffs: &[f64]) -> Result<Vec<Root>> {
    assert!(coeffs.len() <= 5, "solve_poly supports degree at most four");
    let c = trim_degree(coeffs)?;
    Ok(real_roots(&c))
}

/// Flattens multiplicities into a plain sorted list.
pub fn root_values(roots: &[Root]) -> Vec<f64> {
    roots.iter().map(|r| r.value).collect()
}

fn real_roots(c: &[f64]) -> Vec<Root> {
    match c.len() {
        0 | 1 => vec![],
        2 => vec![Root::simple(-c[1] / c[0])],
        3 => quadratic_roots(c[0], c[1], c[2]),
        _ => isolate(c),
    }
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<Root> {
    let disc = b * b - 4.0 * a * c;
    let scale = b * b + (4.0 * a * c).abs();
    if disc.abs() <= MULTIPLE_ROOT_TOL * scale {
        return vec![Root { value: -b / (2.0 * a), multiplicity: 2 }];
    }
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 {
        let r = (-c / a).sqrt();
        (-r, r)
    } else {
        (q / a, c / q)
    };
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    vec![Root::simple(lo), Root::simple(hi)]
}

fn is_root_at(c: &[f64], x: f64) -> bool {
    eval(c, x).abs() <= MULTIPLE_ROOT_TOL * eval_scale(c, x).max(f64::MIN_POSITIVE)
}

fn isolate(c: &[f64]) -> Vec<Root> {
    let lead = c[0];
    let bound = 1.0 + c[1..].iter().fold(0.0f64, |m, &v| m.max((v / lead).abs()));
    let crit = real_roots(&derivative(c));

    let mut roots = Vec::new();
    let mut lo = -bound;
    for cp in crit.iter().map(Some).chain(std::iter::once(None)) {
        let hi = cp.map_or(bound, |r| r.value);
        if let Some(r) = bracket(c, lo, hi) {
            roots.push(Root::simple(r));
        }
        if let Some(r) = cp {
            if is_root_at(c, r.value) {
                roots.push(Root { value: r.value, multiplicity: r.multiplicity + 1 });
            }
            lo = r.value;
        }
    }
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    roots
}

/// Root in `(lo, hi)` if the endpoint values have strictly opposite signs.
fn bracket(c: &[f64], mut lo: f64, mut hi: f64) -> Option<f64> {
    if lo >= hi {
        return None;
    }
    let mut flo = eval(c, lo);
    let fhi = eval(c, hi);
    if flo == 0.0 || fhi == 0.0 || flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(c, mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(polish(c, 0.5 * (lo + hi), lo, hi))
}

/// Newton polish that never leaves `[lo, hi]` and never worsens the residual.
pub fn polish(c: &[f64], x0: f64, lo: f64, hi: f64) -> f64 {
    let d = derivative(c);
    let mut x = x0;
    let mut fx = eval(c, x).abs();
    for _ in 0..4 {
        let dx = eval(&d, x);
        if dx == 0.0 {
            break;
        }
        let nx = x - eval(c, x) / dx;
        if !(lo..=hi).contains(&nx) {
            break;
        }
        let fn_ = eval(c, nx).abs();
        if fn_ >= fx {
            break;
        }
        x = nx;
        fx = fn_;
    }
    x
}

/// Discriminant of `c3·x³ + c2·x² + c1·x + c0`.
pub fn cubic_discriminant(c3: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    18.0 * c3 * c2 * c1 * c0 - 4.0 * c2.powi(3) * c0 + c2 * c2 * c1 * c1
        - 4.0 * c3 * c1.powi(3)
        - 27.0 * c3 * c3 * c0 * c0
}

/// All complex roots (with multiplicity) via companion-matrix eigenvalues,
/// each polished by complex Newton iteration.
pub fn complex_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let c = trim_degree(coeffs)?;
    let n = c.len() - 1;
    if n == 0 {
        return Ok(vec![]);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -c[j + 1] / c[0];
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    let eig = m.complex_eigenvalues();
    let d = derivative(&c);
    let ceval = |cs: &[f64], z: Complex64| cs.iter().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k);
    let mut out: Vec<Complex64> = eig
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let dz = ceval(&d, z);
                if dz.norm() == 0.0 {
                    break;
                }
                let nz = z - ceval(&c, z) / dz;
                if !nz.is_finite() || ceval(&c, nz).norm() >= ceval(&c, z).norm() {
                    break;
                }
                z = nz;
            }
            z
        })
        .collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}
