use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::rational::{int, BigRational};

/// A polynomial in `s = sin t` with even powers only.
///
/// Stored densely in `y = s^2`: `coeffs[m]` multiplies `s^(2m)`. Trailing
/// zeros are trimmed so the zero polynomial has no coefficients and
/// structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EvenSinPoly {
    coeffs: Vec<BigRational>,
}

impl EvenSinPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_y_coeffs(vec![c])
    }

    /// `s^2`.
    pub fn sin_sq() -> Self {
        Self::from_y_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `1 - s^2`, i.e. `cos^2 t`.
    pub fn cos_sq() -> Self {
        Self::from_y_coeffs(vec![BigRational::one(), int(-1)])
    }

    /// `sigma = s^2 (1 - s^2) = sin^2 t cos^2 t`.
    pub fn sigma() -> Self {
        Self::from_y_coeffs(vec![BigRational::zero(), BigRational::one(), int(-1)])
    }

    /// Build from coefficients of `s^0, s^2, s^4, ...`.
    pub fn from_y_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Build from `(exponent of s, coefficient)` pairs; odd exponents are
    /// rejected.
    pub fn from_terms<I>(terms: I) -> Option<Self>
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut coeffs = Vec::new();
        for (exp, c) in terms {
            if exp % 2 != 0 {
                return None;
            }
            let m = exp / 2;
            if coeffs.len() <= m {
                coeffs.resize(m + 1, BigRational::zero());
            }
            coeffs[m] += c;
        }
        Some(Self::from_y_coeffs(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `s` (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1) * 2
    }

    /// Coefficient of `s^exp`; zero for odd or absent exponents.
    pub fn coefficient(&self, exp: usize) -> BigRational {
        if !exp.is_multiple_of(2) {
            return BigRational::zero();
        }
        self.coeffs
            .get(exp / 2)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficients of `s^0, s^2, ...` up to the degree.
    pub fn y_coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero `(exponent of s, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (2 * m, c))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_y_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Value at `s = 0`.
    pub fn at_zero(&self) -> BigRational {
        self.coefficient(0)
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        let y = s * s;
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &y + c)
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        let y = s * s;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + crate::rational::to_f64(c))
    }

    /// Substitute `s^2 -> 1 - s^2`, i.e. `t -> pi/2 - t`.
    pub fn reflect(&self) -> Self {
        let cos_sq = Self::cos_sq();
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &cos_sq) + &Self::constant(c.clone())
        })
    }
}

impl Add for &EvenSinPoly {
    type Output = EvenSinPoly;

    fn add(self, rhs: &EvenSinPoly) -> EvenSinPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..len)
            .map(|m| self.coeffs.get(m).unwrap_or(&zero) + rhs.coeffs.get(m).unwrap_or(&zero))
            .collect();
        EvenSinPoly::from_y_coeffs(coeffs)
    }
}

impl Sub for &EvenSinPoly {
    type Output = EvenSinPoly;

    fn sub(self, rhs: &EvenSinPoly) -> EvenSinPoly {
        self + &(-rhs)
    }
}

impl Neg for &EvenSinPoly {
    type Output = EvenSinPoly;

    fn neg(self) -> EvenSinPoly {
        EvenSinPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &EvenSinPoly {
    type Output = EvenSinPoly;

    fn mul(self, rhs: &EvenSinPoly) -> EvenSinPoly {
        if self.is_zero() || rhs.is_zero() {
            return EvenSinPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        EvenSinPoly::from_y_coeffs(coeffs)
    }
}

impl fmt::Display for EvenSinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if exp == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "s^{exp}")?;
            } else {
                write!(f, "{mag} s^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Serialised as an `exponent -> "p/q"` map of the nonzero terms.
impl Serialize for EvenSinPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for (exp, c) in self.terms() {
            map.serialize_entry(&exp, &c.to_string())?;
        }
        map.end()
    }
}
