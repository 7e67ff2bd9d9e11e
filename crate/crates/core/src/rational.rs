//! Helpers around [`num_rational::BigRational`].
//!
//! `BigRational` keeps every value reduced with a positive denominator, so
//! equality is structural and identities can be checked with `==`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Nearest binary64 value; large numerators and denominators are fine.
pub fn to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    quotient_to_f64(r.numer(), r.denom())
}

/// `num / den` to within one ulp without reducing the fraction first.
pub fn quotient_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let (n, d) = (num.abs(), den.abs());
    // scale so that the integer quotient carries at least 64 significant bits
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        (n >> (-shift) as usize) / d
    };
    let mantissa = q.to_f64().unwrap_or(f64::INFINITY);
    let exp = (-shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    let v = libm::ldexp(mantissa, exp);
    if negative {
        -v
    } else {
        v
    }
}

/// `p/q` (or `p` for integers); the serialised form of exact values.
pub fn to_ratio_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_ratio(s: &str) -> Option<BigRational> {
    s.trim().parse().ok()
}

/// Decimal expansion rounded half away from zero to `frac_digits` places.
pub fn to_decimal_string(r: &BigRational, frac_digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if frac_digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = frac_digits
    )
}

pub fn ser_ratio<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_opt_ratio<S: serde::Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

pub fn is_canonical(r: &BigRational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
