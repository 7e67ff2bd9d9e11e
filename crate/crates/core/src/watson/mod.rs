//! Symbolic large-`n` expansion of `f(n)` by Watson's lemma.
//!
//! After polar coordinates the dominant part of the double integral becomes
//!
//! ```text
//! f(n) ~ 4 n!^2/(pi^2 (1/2)_n^2) int_0^{pi/2} int_0^{w0} e^{-nw} F(w, t) dw dt
//! ```
//!
//! with `w = -ln(1 - r + 2 sigma r^2)`, `sigma = sin^2 t cos^2 t` and
//! `F = dr/dw [(1 - r cos^2 t)(1 - r sin^2 t)]^(-1/2)`. The coefficients of
//! `F` in `w` are even polynomials in `s = sin t`; integrating them over `t`
//! gives rational multiples of `pi`, and combining those with the expansion
//! of `n!/(1/2)_n` yields the coefficients `e_k` of
//! `f(n) ~ 2 sum_k e_k n^(-k)`.

mod expansion;
mod poly;
mod series;

pub use expansion::{
    coefficient_table, compose_expansion, evaluate_expansion, gamma_ratio_coeffs, integrate_ck,
    remainder_study, wallis, AsymptoticExpansion, CoefficientRow, GammaRatioSeries, RemainderRow,
    MAX_EXPANSION_ORDER,
};
pub use poly::EvenSinPoly;
pub use series::PolySeries;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, BigRational};

/// `1 - e^{-w} = w - w^2/2 + w^3/6 - ...` through `order`.
fn one_minus_exp_neg(order: usize) -> PolySeries {
    let mut coeffs = vec![BigRational::from_integer(0.into())];
    let mut fact = BigRational::one();
    for k in 1..=order as i64 {
        fact *= int(k);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        coeffs.push(int(sign) / &fact);
    }
    PolySeries::from_scalars(order, &coeffs)
}

/// Inverse of the logarithmic map: the series `r(w) = sum_{k>=1} b_k w^k`
/// with `-ln(1 - r + 2 sigma r^2) = w`.
///
/// Solves `r - 2 sigma r^2 = 1 - e^{-w}` by the fixed-point iteration
/// `r <- x + 2 sigma r^2`, which fixes one more coefficient per pass.
pub fn revert_log_map(order: usize) -> Result<PolySeries> {
    if order == 0 {
        return Err(Error::Domain("reversion order must be at least 1".into()));
    }
    let x = one_minus_exp_neg(order);
    let two_sigma = EvenSinPoly::sigma().scale(&int(2));
    let mut r = x.clone();
    for _ in 0..order {
        let next = &x + &(&r * &r).scale_poly(&two_sigma);
        if next == r {
            return Ok(r);
        }
        r = next;
    }
    Ok(r)
}

/// The coefficients `c_0..=c_order` of `F(w, t)` as a series in `w`.
pub fn expand_f(order: usize) -> Result<PolySeries> {
    let r = revert_log_map(order + 1)?;
    let dr = r.derivative();
    let r = r.truncate(order);
    let along_cos = PolySeries::inv_sqrt_one_minus(&r.scale_poly(&EvenSinPoly::cos_sq()));
    let along_sin = PolySeries::inv_sqrt_one_minus(&r.scale_poly(&EvenSinPoly::sin_sq()));
    Ok(&(&dr * &along_cos) * &along_sin)
}

/// Substitute `r(w)` back into `-ln(1 - r + 2 sigma r^2)`.
pub fn log_map_of(r: &PolySeries) -> PolySeries {
    let two_sigma = EvenSinPoly::sigma().scale(&int(2));
    let inner = r - &(r * r).scale_poly(&two_sigma);
    PolySeries::neg_log_one_minus(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn poly(pairs: &[(usize, i64, i64)]) -> EvenSinPoly {
        EvenSinPoly::from_terms(pairs.iter().map(|&(e, p, q)| (e, ratio(p, q)))).unwrap()
    }

    #[test]
    fn reversion_leading_terms() {
        let r1 = revert_log_map(1).unwrap();
        assert_eq!(r1, PolySeries::var(1));

        let r2 = revert_log_map(2).unwrap();
        assert_eq!(r2.coefficient(1), &EvenSinPoly::one());
        assert_eq!(
            r2.coefficient(2),
            &poly(&[(0, -1, 2), (2, 2, 1), (4, -2, 1)])
        );
    }

    #[test]
    fn reversion_rejects_order_zero() {
        assert!(revert_log_map(0).is_err());
    }

    #[test]
    fn reversion_at_s_zero_is_one_minus_exp() {
        let r = revert_log_map(8).unwrap();
        let mut fact = 1i64;
        for k in 1..=8 {
            fact *= k;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(r.coefficient(k as usize).at_zero(), ratio(sign, fact));
        }
    }

    #[test]
    fn first_two_f_coefficients() {
        let f = expand_f(1).unwrap();
        assert_eq!(f.coefficient(0), &EvenSinPoly::one());
        assert_eq!(
            f.coefficient(1),
            &poly(&[(0, -1, 2), (2, 4, 1), (4, -4, 1)])
        );
    }

    #[test]
    fn roundtrip_small_order() {
        let r = revert_log_map(5).unwrap();
        assert_eq!(log_map_of(&r), PolySeries::var(5));
    }
}
