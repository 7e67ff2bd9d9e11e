//! Gauss-Legendre evaluation of the integral representations of `f(n)`.
//!
//! Three routes, each normalised with the exact value of `n!/(1/2)_n`:
//!
//! * the double integral of `((1 + cos a cos b)/2)^n` over `[0, pi]^2`,
//! * `sin^n a P_n(1/sin a)` over `[0, pi]`,
//! * the terminating `2F1(-n/2, (1-n)/2; 1/2-n; sin^2 a)` over `[0, pi]`.
//!
//! Gauss nodes are interior, so the removable singularity of the Legendre
//! form at `a = 0, pi` is never sampled.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact::factorial_over_half_pochhammer;
use crate::rational::{int, ratio, to_f64, BigRational};

const MAX_REFINEMENTS: usize = 6;

/// Node count, refinement policy and stopping tolerance for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes_per_axis: usize,
    pub refinement_factor: usize,
    pub target_rel_tol: f64,
}

impl QuadratureSpec {
    pub const DEFAULT_REL_TOL: f64 = 1e-12;

    pub fn new(
        nodes_per_axis: usize,
        refinement_factor: usize,
        target_rel_tol: f64,
    ) -> Result<Self> {
        if nodes_per_axis < 8 {
            return Err(Error::InvalidSpec(format!(
                "nodes_per_axis must be at least 8, got {nodes_per_axis}"
            )));
        }
        if refinement_factor < 2 {
            return Err(Error::InvalidSpec(format!(
                "refinement_factor must be at least 2, got {refinement_factor}"
            )));
        }
        if target_rel_tol.is_nan() || target_rel_tol < 10.0 * f64::EPSILON {
            return Err(Error::InvalidSpec(format!(
                "target_rel_tol {target_rel_tol:e} is below 10 machine epsilons"
            )));
        }
        Ok(Self {
            nodes_per_axis,
            refinement_factor,
            target_rel_tol,
        })
    }

    /// `max(64, 8 ceil(sqrt n))` nodes: the corner peaks have width `~ n^(-1/2)`.
    pub fn for_n(n: u64) -> Self {
        let root = (n as f64).sqrt().ceil() as usize;
        Self {
            nodes_per_axis: (8 * root).max(64),
            refinement_factor: 2,
            target_rel_tol: Self::DEFAULT_REL_TOL,
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    let m = count.div_ceil(2);
    for i in 0..m {
        // Tricomi's initial guess, then Newton on P_count
        let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(count, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(count, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[count - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[count - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes and weights mapped onto `[0, pi]`.
fn rule_on_zero_pi(count: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(count);
    let half = PI / 2.0;
    (
        x.iter().map(|x| half * (x + 1.0)).collect(),
        w.iter().map(|w| half * w).collect(),
    )
}

/// `P_n(x)` by the three-term recurrence.
pub fn legendre_eval(n: usize, x: f64) -> f64 {
    legendre_with_derivative(n, x).0
}

/// `s^n P_n(1/s)` without forming `1/s`.
///
/// `Q_k = s^k P_k(1/s)` obeys `(k+1) Q_{k+1} = (2k+1) Q_k - k s^2 Q_{k-1}`,
/// which stays bounded as `s -> 0` where `Q_n -> (2n)!/(2^n n!^2)`.
pub fn scaled_legendre(n: usize, s: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let s2 = s * s;
    let (mut q0, mut q1) = (1.0, 1.0);
    for k in 1..n {
        let k = k as f64;
        let q2 = ((2.0 * k + 1.0) * q1 - k * s2 * q0) / (k + 1.0);
        q0 = q1;
        q1 = q2;
    }
    q1
}

/// Coefficients of `p_n(z) = 2F1(-n/2, (1-n)/2; 1/2-n; z)` in binary64.
pub fn quadratic_2f1_coeffs(n: u64) -> Vec<f64> {
    let n = n as i64;
    let a = ratio(-n, 2);
    let b = ratio(1 - n, 2);
    let c = ratio(1, 2) - int(n);
    let mut out = Vec::new();
    let mut term = BigRational::from_integer(1.into());
    let mut k = 0i64;
    while k <= n && !num_traits::Zero::is_zero(&term) {
        out.push(to_f64(&term));
        let kq = int(k);
        term = term * (&a + &kq) * (&b + &kq) / ((&c + &kq) * int(k + 1));
        k += 1;
    }
    out
}

/// Refine `eval(nodes)` by `spec.refinement_factor` until two successive
/// estimates agree to `spec.target_rel_tol`.
fn refine<F>(method: &'static str, n: u64, spec: &QuadratureSpec, eval: F) -> Result<f64>
where
    F: Fn(usize) -> f64,
{
    let mut nodes = spec.nodes_per_axis;
    let mut prev = eval(nodes);
    let mut last_change = f64::INFINITY;
    for _ in 0..MAX_REFINEMENTS {
        nodes *= spec.refinement_factor;
        let next = eval(nodes);
        last_change = ((next - prev) / next).abs();
        if last_change <= spec.target_rel_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        method,
        n,
        last_change,
    })
}

fn prefactor(n: u64) -> f64 {
    to_f64(&factorial_over_half_pochhammer(n))
}

/// Sum `w_i * v_i` in a fixed order with Neumaier compensation.
fn compensated_dot(weights: &[f64], values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (w, v) in weights.iter().zip(values) {
        let term = w * v;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn double_integral_at(n: u64, nodes: usize) -> f64 {
    let (theta, w) = rule_on_zero_pi(nodes);
    let cos: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
    let exp = n as i32;
    let rows: Vec<f64> = cos
        .iter()
        .map(|&ca| compensated_dot(&w, cos.iter().map(|&cb| ((1.0 + ca * cb) / 2.0).powi(exp))))
        .collect();
    compensated_dot(&w, rows.into_iter())
}

/// `f(n) = n!^2/(pi^2 (1/2)_n^2) int int ((1 + cos a cos b)/2)^n da db`
/// over the full square.
pub fn f_double_integral(n: u64, spec: &QuadratureSpec) -> Result<f64> {
    let integral = refine("quad2d", n, spec, |nodes| double_integral_at(n, nodes))?;
    let c = factorial_over_half_pochhammer(n);
    Ok(to_f64(&(&c * &c)) / (PI * PI) * integral)
}

/// `f(n) = 2^-n n!^2/(pi (1/2)_n^2) int_0^pi sin^n a P_n(1/sin a) da`.
pub fn f_single_integral_legendre(n: u64, spec: &QuadratureSpec) -> Result<f64> {
    let integral = refine("quad1d-legendre", n, spec, |nodes| {
        let (theta, w) = rule_on_zero_pi(nodes);
        compensated_dot(
            &w,
            theta.iter().map(|t| scaled_legendre(n as usize, t.sin())),
        )
    })?;
    let c = factorial_over_half_pochhammer(n);
    let norm = to_f64(&(&c * &c / BigRational::from_integer(num_bigint::BigInt::from(1) << n)));
    Ok(norm / PI * integral)
}

/// `f(n) = n!/(pi (1/2)_n) int_0^pi p_n(sin^2 a) da`.
pub fn f_single_integral_2f1(n: u64, spec: &QuadratureSpec) -> Result<f64> {
    let coeffs = quadratic_2f1_coeffs(n);
    let integral = refine("quad1d-2f1", n, spec, |nodes| {
        let (theta, w) = rule_on_zero_pi(nodes);
        compensated_dot(
            &w,
            theta.iter().map(|t| {
                let z = t.sin().powi(2);
                coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
            }),
        )
    })?;
    Ok(prefactor(n) / PI * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(7, 2, 1e-10).is_err());
        assert!(QuadratureSpec::new(8, 1, 1e-10).is_err());
        assert!(QuadratureSpec::new(8, 2, 1e-16).is_err());
        assert!(QuadratureSpec::new(8, 2, f64::NAN).is_err());
        assert!(QuadratureSpec::new(8, 2, 1e-12).is_ok());
        assert_eq!(QuadratureSpec::for_n(0).nodes_per_axis, 64);
        assert_eq!(QuadratureSpec::for_n(100).nodes_per_axis, 80);
    }

    #[test]
    fn gauss_rule_integrates_polynomials() {
        for count in [8, 13, 64, 257] {
            let (x, w) = gauss_legendre(count);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            // exact up to degree 2 count - 1
            let deg = 2 * count - 2;
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!(
                (got - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13,
                "count {count}"
            );
        }
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_eval(0, 7.5), 1.0);
        assert_eq!(legendre_eval(1, 3.0), 3.0);
        assert_eq!(legendre_eval(2, 2.0), 5.5);
        for n in 0..30 {
            for s in [0.1f64, 0.5, 0.9, 1.0] {
                let plain = s.powi(n as i32) * legendre_eval(n, 1.0 / s);
                let scaled = scaled_legendre(n, s);
                assert!(
                    (plain - scaled).abs() <= 1e-12 * scaled.abs(),
                    "n {n} s {s}"
                );
            }
        }
    }

    #[test]
    fn quadratic_polynomial_terminates() {
        assert_eq!(quadratic_2f1_coeffs(0), vec![1.0]);
        assert_eq!(quadratic_2f1_coeffs(1), vec![1.0]);
        assert_eq!(quadratic_2f1_coeffs(6).len(), 4);
        assert_eq!(quadratic_2f1_coeffs(7).len(), 4);
    }

    #[test]
    fn non_convergence_is_reported() {
        let spec = QuadratureSpec::new(8, 2, 1e-14).unwrap();
        let err = refine("test", 3, &spec, |nodes| nodes as f64).unwrap_err();
        assert!(matches!(
            err,
            Error::NonConvergence {
                method: "test",
                n: 3,
                ..
            }
        ));
    }
}
