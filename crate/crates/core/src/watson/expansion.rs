use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{f_via_3f2, FactorialTable};
use crate::rational::{int, ratio, ser_opt_ratio, ser_ratio, to_f64, BigRational};

use super::{expand_f, EvenSinPoly};

/// Highest order for which the `n!/(1/2)_n` expansion constants are tabulated.
pub const MAX_EXPANSION_ORDER: usize = 5;

/// `Gamma(n+1)/Gamma(n+1/2) ~ sqrt(n) sum_k gamma_k n^(-k)`.
const GAMMA_RATIO: [(i64, i64); MAX_EXPANSION_ORDER + 1] = [
    (1, 1),
    (1, 8),
    (1, 128),
    (-5, 1024),
    (-21, 32768),
    (399, 262144),
];

/// `q` with `int_0^{pi/2} sin^{2m} t dt = q pi`, i.e. `C(2m, m) / (2 4^m)`.
pub fn wallis(m: usize) -> BigRational {
    let table = FactorialTable::new(2 * m);
    BigRational::new(table.binomial(2 * m, m), BigInt::from(2) << (2 * m))
}

/// `int_0^{pi/2} c(t) dt / pi`, term by term.
pub fn integrate_ck(ck: &EvenSinPoly) -> BigRational {
    let degree = ck.y_coeffs().len();
    if degree == 0 {
        return BigRational::zero();
    }
    // wallis(m+1) = wallis(m) (2m+1)/(2m+2)
    let mut w = ratio(1, 2);
    let mut acc = BigRational::zero();
    for (m, c) in ck.y_coeffs().iter().enumerate() {
        acc += c * &w;
        w *= ratio(2 * m as i64 + 1, 2 * m as i64 + 2);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaRatioSeries {
    pub coefficients: Vec<BigRational>,
}

pub fn gamma_ratio_coeffs(order: usize) -> Result<GammaRatioSeries> {
    if order > MAX_EXPANSION_ORDER {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: MAX_EXPANSION_ORDER,
        });
    }
    let coefficients = GAMMA_RATIO[..=order]
        .iter()
        .map(|&(p, q)| ratio(p, q))
        .collect();
    Ok(GammaRatioSeries { coefficients })
}

impl GammaRatioSeries {
    /// `sum_k gamma_k n^(-k)` in binary64.
    pub fn eval_f64(&self, n: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, g| acc / n + to_f64(g))
    }
}

/// `f(n) ~ scale * sum_k e_k n^(-k)` with `e_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticExpansion {
    #[serde(serialize_with = "ser_ratio")]
    pub scale: BigRational,
    #[serde(serialize_with = "ser_ratio_vec")]
    pub coefficients: Vec<BigRational>,
}

fn ser_ratio_vec<S: serde::Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl AsymptoticExpansion {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `scale * sum_{k<=order} e_k n^(-k)`, exactly.
    pub fn evaluate(&self, n: u64, order: usize) -> Result<BigRational> {
        if order > self.order() {
            return Err(Error::UnsupportedOrder {
                requested: order,
                max: self.order(),
            });
        }
        if n == 0 {
            return Err(Error::Domain("the expansion is evaluated at n >= 1".into()));
        }
        let inv = ratio(1, n as i64);
        let sum = self.coefficients[..=order]
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, e| acc * &inv + e);
        Ok(&self.scale * sum)
    }
}

/// Cauchy product of two coefficient lists, truncated to `len` terms.
fn cauchy(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|k| (0..=k).map(|j| &a[j] * &b[k - j]).sum())
        .collect()
}

/// The expansion `f(n) ~ 4 (sum gamma_k n^-k)^2 (sum q_k k! n^-k)`, with `q_k`
/// the integrated `F` coefficients, normalised so that `e_0 = 1`.
pub fn compose_expansion(order: usize) -> Result<AsymptoticExpansion> {
    let gamma = gamma_ratio_coeffs(order)?;
    let f = expand_f(order)?;
    let mut fact = BigRational::one();
    let moments: Vec<BigRational> = f
        .terms()
        .iter()
        .enumerate()
        .map(|(k, ck)| {
            if k > 0 {
                fact *= int(k as i64);
            }
            integrate_ck(ck) * &fact
        })
        .collect();
    let len = order + 1;
    let gamma_sq = cauchy(&gamma.coefficients, &gamma.coefficients, len);
    let raw = cauchy(&gamma_sq, &moments, len);
    let four = int(4);
    let scale = &four * &raw[0];
    let coefficients = raw.iter().map(|c| &four * c / &scale).collect();
    Ok(AsymptoticExpansion {
        scale,
        coefficients,
    })
}

pub fn evaluate_expansion(exp: &AsymptoticExpansion, n: u64, order: usize) -> Result<BigRational> {
    exp.evaluate(n, order)
}

/// One row of the empirical order study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderRow {
    pub n: u64,
    /// `f(n) - truncated expansion`.
    pub remainder: f64,
    /// `remainder * n^(order+1)`, which tends to a constant.
    pub scaled_remainder: f64,
    /// `log2(remainder(n) / remainder(2n))`; `None` when the two remainders
    /// differ in sign.
    pub order_estimate: Option<f64>,
}

pub fn remainder_study(order: usize, n_list: &[u64]) -> Result<Vec<RemainderRow>> {
    if let Some(&bad) = n_list.iter().find(|&&n| n < 2) {
        return Err(Error::Domain(format!(
            "remainder study needs n >= 2, got {bad}"
        )));
    }
    let exp = compose_expansion(order)?;
    let remainder = |n: u64| -> Result<BigRational> { Ok(f_via_3f2(n) - exp.evaluate(n, order)?) };
    n_list
        .iter()
        .map(|&n| {
            let r_n = remainder(n)?;
            let r_2n = remainder(2 * n)?;
            let scaled = &r_n * BigRational::from_integer(BigInt::from(n).pow(order as u32 + 1));
            let order_estimate = if !r_2n.is_zero() && (&r_n / &r_2n).is_positive() {
                Some(to_f64(&(&r_n / &r_2n)).log2())
            } else {
                None
            };
            Ok(RemainderRow {
                n,
                remainder: to_f64(&r_n),
                scaled_remainder: to_f64(&scaled),
                order_estimate,
            })
        })
        .collect()
}

/// Export row: `c_k`, `C_k/pi`, and where tabulated `gamma_k` and `e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientRow {
    pub k: usize,
    pub c_k: EvenSinPoly,
    #[serde(serialize_with = "ser_ratio")]
    pub q_k: BigRational,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub gamma_k: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub e_k: Option<BigRational>,
}

pub fn coefficient_table(order: usize) -> Result<Vec<CoefficientRow>> {
    let f = expand_f(order)?;
    let capped = order.min(MAX_EXPANSION_ORDER);
    let gamma = gamma_ratio_coeffs(capped)?;
    let exp = compose_expansion(capped)?;
    Ok(f.into_terms()
        .into_iter()
        .enumerate()
        .map(|(k, c_k)| CoefficientRow {
            k,
            q_k: integrate_ck(&c_k),
            c_k,
            gamma_k: gamma.coefficients.get(k).cloned(),
            e_k: exp.coefficients.get(k).cloned(),
        })
        .collect())
}
