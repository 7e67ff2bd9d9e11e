use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, BigRational};

use super::poly::EvenSinPoly;

/// Truncated power series in `w` with [`EvenSinPoly`] coefficients.
///
/// Holds the coefficients of `w^0..=w^order`; everything above `order` is
/// discarded by every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeries {
    terms: Vec<EvenSinPoly>,
}

impl PolySeries {
    pub fn zero(order: usize) -> Self {
        Self {
            terms: vec![EvenSinPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.terms[0] = EvenSinPoly::one();
        s
    }

    /// The series `w`.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.terms[1] = EvenSinPoly::one();
        }
        s
    }

    /// A series with constant (`t`-independent) coefficients.
    pub fn from_scalars(order: usize, coeffs: &[BigRational]) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.terms.iter_mut().zip(coeffs) {
            *slot = EvenSinPoly::constant(c.clone());
        }
        s
    }

    pub fn from_terms(mut terms: Vec<EvenSinPoly>) -> Self {
        if terms.is_empty() {
            terms.push(EvenSinPoly::zero());
        }
        Self { terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[EvenSinPoly] {
        &self.terms
    }

    pub fn coefficient(&self, k: usize) -> &EvenSinPoly {
        &self.terms[k]
    }

    pub fn into_terms(self) -> Vec<EvenSinPoly> {
        self.terms
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut terms: Vec<_> = self.terms.iter().take(order + 1).cloned().collect();
        terms.resize(order + 1, EvenSinPoly::zero());
        Self { terms }
    }

    pub fn scale_poly(&self, p: &EvenSinPoly) -> Self {
        Self {
            terms: self.terms.iter().map(|c| c * p).collect(),
        }
    }

    /// `d/dw`, one order lower.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let terms = self.terms[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&int(k as i64 + 1)))
            .collect();
        Self { terms }
    }

    /// `sum_j a_j u^j` for `u` without constant term, by Horner's rule.
    pub fn compose_scalar_series(a: &[BigRational], u: &PolySeries) -> PolySeries {
        assert!(u.terms[0].is_zero(), "inner series must vanish at w = 0");
        let order = u.order();
        // u^j vanishes to order j, so only a_0..=a_order contribute
        let used = &a[..a.len().min(order + 1)];
        let mut acc = Self::zero(order);
        for c in used.iter().rev() {
            acc = &(&acc * u) + &Self::from_scalars(order, std::slice::from_ref(c));
        }
        acc
    }

    /// `(1 - u)^(-1/2)`.
    pub fn inv_sqrt_one_minus(u: &PolySeries) -> PolySeries {
        let order = u.order();
        let mut a = Vec::with_capacity(order + 1);
        let mut c = BigRational::one();
        for j in 0..=order as i64 {
            a.push(c.clone());
            // C(2j+2, j+1)/4^(j+1) = C(2j, j)/4^j * (2j+1)/(2j+2)
            c *= BigRational::new((2 * j + 1).into(), (2 * j + 2).into());
        }
        Self::compose_scalar_series(&a, u)
    }

    /// `-ln(1 - u)`.
    pub fn neg_log_one_minus(u: &PolySeries) -> PolySeries {
        let order = u.order();
        let a: Vec<BigRational> = (0..=order as i64)
            .map(|j| {
                if j == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(1.into(), j.into())
                }
            })
            .collect();
        Self::compose_scalar_series(&a, u)
    }
}

impl Add for &PolySeries {
    type Output = PolySeries;

    fn add(self, rhs: &PolySeries) -> PolySeries {
        let order = self.order().min(rhs.order());
        let terms = (0..=order)
            .map(|k| &self.terms[k] + &rhs.terms[k])
            .collect();
        PolySeries { terms }
    }
}

impl Sub for &PolySeries {
    type Output = PolySeries;

    fn sub(self, rhs: &PolySeries) -> PolySeries {
        let order = self.order().min(rhs.order());
        let terms = (0..=order)
            .map(|k| &self.terms[k] - &rhs.terms[k])
            .collect();
        PolySeries { terms }
    }
}

impl Mul for &PolySeries {
    type Output = PolySeries;

    fn mul(self, rhs: &PolySeries) -> PolySeries {
        let order = self.order().min(rhs.order());
        let mut terms = vec![EvenSinPoly::zero(); order + 1];
        for (i, a) in self.terms.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.terms.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        PolySeries { terms }
    }
}
