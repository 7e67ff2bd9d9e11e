//! `F_n` from the saddle point of `e^{2w} w^{-n-1}`.
//!
//! With `h(w) = M(1/2, 1, -w)^2` the generating function gives
//! `F_n = (1/2 pi i) oint e^{2w} w^{-n-1} h(w) dw`. Expanding `h` about
//! `w0 = n/2` turns this into the convergent sum `F_n = sum_k A_k Phi_k`,
//! where `A_k` are the Taylor coefficients of `h` and the moments `Phi_k`
//! follow an exact three-term recursion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{generating_coefficient, generating_to_f_factor};
use crate::rational::{from_bigint, int, ratio, to_f64, BigRational};

const SERIES_REL_TOL: f64 = 1e-16;
const SERIES_QUIET_TERMS: usize = 3;
const SERIES_MAX_TERMS: usize = 100_000;

fn is_nonpositive_integer(c: f64) -> bool {
    c <= 0.0 && c.fract() == 0.0
}

/// Plain power series of `M(a, c, x)`; stops once three consecutive terms
/// fall below `1e-16` of the partial sum.
fn kummer_series(a: f64, c: f64, x: f64) -> Result<f64> {
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut quiet = 0;
    for m in 0..SERIES_MAX_TERMS {
        let m = m as f64;
        term *= (a + m) / ((c + m) * (m + 1.0)) * x;
        sum += term;
        if term.abs() < SERIES_REL_TOL * sum.abs() || term == 0.0 {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Domain(format!(
        "M({a}, {c}, {x}) did not converge in {SERIES_MAX_TERMS} terms"
    )))
}

/// Kummer's function `M(a, c, x) = sum_m (a)_m / ((c)_m m!) x^m`.
///
/// Negative arguments go through `M(a, c, x) = e^x M(c - a, c, -x)`, which
/// keeps the summed series free of alternating cancellation.
pub fn kummer_m(a: f64, c: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && c.is_finite() && x.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite argument to M({a}, {c}, {x})"
        )));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!(
            "M(a, c, x) is undefined for c = {c}"
        )));
    }
    if x < 0.0 {
        Ok(x.exp() * kummer_series(c - a, c, -x)?)
    } else {
        kummer_series(a, c, x)
    }
}

/// `I_0(x) = sum_m (x/2)^{2m} / m!^2`.
pub fn bessel_i0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut m = 1.0f64;
    loop {
        term *= q / (m * m);
        sum += term;
        if term < SERIES_REL_TOL * sum {
            return sum;
        }
        m += 1.0;
    }
}

/// `|[e^{w/2} I_0(w/2)]^2 - sum_{n < terms} F_n w^n|` with exact `F_n`.
pub fn generating_function_check(w: f64, terms: usize) -> Result<f64> {
    if !(0.0..=0.2).contains(&w) {
        return Err(Error::Domain(format!("w = {w} outside [0, 0.2]")));
    }
    if terms < 10 {
        return Err(Error::Domain(format!(
            "need at least 10 terms, got {terms}"
        )));
    }
    let closed = ((w / 2.0).exp() * bessel_i0(w / 2.0)).powi(2);
    let partial = (0..terms as u64)
        .rev()
        .fold(0.0, |acc, n| acc * w + to_f64(&generating_coefficient(n)));
    Ok((closed - partial).abs())
}

/// `a_k = (-1)^k (1/2)_k / k!^2 M(1/2 + k, 1 + k, -w0)` for `k < count`,
/// the Taylor coefficients of `M(1/2, 1, -w)` about `w0 = n/2`.
pub fn taylor_a_coeffs(n: u64, count: usize) -> Result<Vec<f64>> {
    if n == 0 || count == 0 {
        return Err(Error::Domain(
            "taylor coefficients need n >= 1 and count >= 1".into(),
        ));
    }
    let w0 = n as f64 / 2.0;
    let mut weight = 1.0f64;
    (0..count)
        .map(|k| {
            if k > 0 {
                let kf = k as f64;
                weight *= -(kf - 0.5) / (kf * kf);
            }
            Ok(weight * kummer_m(0.5 + k as f64, 1.0 + k as f64, -w0)?)
        })
        .collect()
}

/// Cauchy square `A_k = sum_{j<=k} a_j a_{k-j}`, same length as the input.
pub fn square_series(a: &[f64]) -> Vec<f64> {
    (0..a.len())
        .map(|k| (0..=k).map(|j| a[j] * a[k - j]).sum())
        .collect()
}

/// `Phi_0..Phi_{count-1}` with `Phi_0 = 2^n/n!`, `Phi_1 = 0` and
/// `Phi_k = -(k-1)/2 (Phi_{k-1} + w0 Phi_{k-2})`.
pub fn phi_sequence(n: u64, count: usize) -> Result<Vec<BigRational>> {
    if count < 2 {
        return Err(Error::Domain(format!(
            "phi_sequence needs count >= 2, got {count}"
        )));
    }
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= BigInt::from(k);
    }
    let w0 = ratio(n as i64, 2);
    let mut phi = Vec::with_capacity(count);
    phi.push(BigRational::new(BigInt::one() << n, fact));
    phi.push(BigRational::zero());
    for k in 2..count {
        let next = ratio(-(k as i64 - 1), 2) * (&phi[k - 1] + &w0 * &phi[k - 2]);
        phi.push(next);
    }
    Ok(phi)
}

/// Number of terms used when no count is given.
pub fn default_saddle_count(n: u64) -> usize {
    (2 * n as usize + 40).max(40)
}

/// The pieces of the saddle-point sum for one `n`.
#[derive(Debug, Clone)]
pub struct SaddleExpansion {
    pub n: u64,
    pub w0: f64,
    pub a_coeffs: Vec<f64>,
    pub big_a_coeffs: Vec<f64>,
    pub phi: Vec<BigRational>,
}

impl SaddleExpansion {
    pub fn new(n: u64, count: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("the saddle-point route needs n >= 1".into()));
        }
        if count < 2 {
            return Err(Error::Domain(format!("need at least 2 terms, got {count}")));
        }
        let a_coeffs = taylor_a_coeffs(n, count)?;
        let big_a_coeffs = square_series(&a_coeffs);
        let phi = phi_sequence(n, count)?;
        Ok(Self {
            n,
            w0: n as f64 / 2.0,
            a_coeffs,
            big_a_coeffs,
            phi,
        })
    }

    /// `sum_k A_k Phi_k`, summed in index order.
    pub fn value(&self) -> f64 {
        self.big_a_coeffs
            .iter()
            .zip(&self.phi)
            .map(|(a, phi)| a * to_f64(phi))
            .sum()
    }
}

/// `F_n` from the first `count` terms of the saddle-point sum.
pub fn f_via_saddle(n: u64, count: usize) -> Result<f64> {
    Ok(SaddleExpansion::new(n, count)?.value())
}

/// `f(n)` rebuilt from the saddle-point `F_n`.
pub fn f_ratio_via_saddle(n: u64, count: usize) -> Result<f64> {
    Ok(to_f64(&generating_to_f_factor(n)) * f_via_saddle(n, count)?)
}

/// Result of the large-argument expansion of `M(a, c, -x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerAsymptotic {
    pub value: f64,
    /// Set when a summed term exceeds its predecessor, i.e. the series was
    /// continued past its smallest term.
    pub past_smallest_term: bool,
}

/// `M(a, c, -x) ~ x^{-a} Gamma(c)/Gamma(c-a) sum_{m<terms} (a)_m (1+a-c)_m / (m! x^m)`.
pub fn kummer_asymptotic(a: f64, c: f64, x: f64, terms: usize) -> Result<KummerAsymptotic> {
    if x.is_nan() || x <= 0.0 || terms == 0 {
        return Err(Error::Domain(format!(
            "need x > 0 and terms >= 1, got x = {x}, terms = {terms}"
        )));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("Gamma(c) is undefined for c = {c}")));
    }
    let gamma_ratio = if is_nonpositive_integer(c - a) {
        0.0
    } else {
        libm::tgamma(c) / libm::tgamma(c - a)
    };
    let b = 1.0 + a - c;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut past_smallest_term = false;
    for m in 1..terms {
        let mf = (m - 1) as f64;
        let next = term * (a + mf) * (b + mf) / ((mf + 1.0) * x);
        if next.abs() > term.abs() {
            past_smallest_term = true;
        }
        term = next;
        sum += term;
    }
    Ok(KummerAsymptotic {
        value: x.powf(-a) * gamma_ratio * sum,
        past_smallest_term,
    })
}

/// `Phi_k` as the coefficient of `w^n` in `e^{2w} (w - w0)^k`, expanded by
/// the binomial theorem.
pub fn phi_moment(n: u64, k: usize) -> BigRational {
    let w0 = ratio(n as i64, 2);
    let mut fact = vec![BigInt::one()];
    for j in 1..=n as usize {
        let next = &fact[j - 1] * BigInt::from(j);
        fact.push(next);
    }
    let mut binom = BigInt::one();
    let mut acc = BigRational::zero();
    for j in 0..=k {
        if j > 0 {
            binom = binom * BigInt::from(k - j + 1) / BigInt::from(j);
        }
        if j as u64 > n {
            break;
        }
        let power = pow(&(-&w0), k - j);
        let coeff = BigRational::new(
            BigInt::one() << (n as usize - j),
            fact[n as usize - j].clone(),
        );
        acc += from_bigint(binom.clone()) * power * coeff;
    }
    acc
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    (0..e).fold(int(1), |acc, _| acc * base)
}
