//! Exact evaluation of `P_n`, `f(n)` and `F_n`.
//!
//! Every route is a terminating hypergeometric sum. Terms are built
//! incrementally from the ratio of consecutive terms, so a vanishing
//! numerator Pochhammer makes every later term an exact zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Identity, Result};
use crate::rational::{from_bigint, int, ratio, ser_ratio, BigRational};

/// Factorials `0!..=max!`, built once per top-level call.
///
/// Tables are owned by the caller and never shared, so concurrent callers
/// cannot observe a partially built table.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    fact: Vec<BigInt>,
}

impl FactorialTable {
    pub fn new(max: usize) -> Self {
        let mut fact = Vec::with_capacity(max + 1);
        fact.push(BigInt::one());
        for k in 1..=max {
            let next = &fact[k - 1] * BigInt::from(k);
            fact.push(next);
        }
        Self { fact }
    }

    pub fn max(&self) -> usize {
        self.fact.len() - 1
    }

    /// Extend the table so it covers `max!`.
    pub fn ensure(&mut self, max: usize) {
        for k in self.fact.len()..=max {
            let next = &self.fact[k - 1] * BigInt::from(k);
            self.fact.push(next);
        }
    }

    pub fn factorial(&self, k: usize) -> &BigInt {
        &self.fact[k]
    }

    pub fn binomial(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        &self.fact[n] / (&self.fact[k] * &self.fact[n - k])
    }

    /// `(1/2)_k = (2k)! / (4^k k!)`.
    pub fn pochhammer_half(&self, k: usize) -> BigRational {
        BigRational::new(
            self.fact[2 * k].clone(),
            (BigInt::one() << (2 * k)) * &self.fact[k],
        )
    }
}

/// Rising factorial `(a)_k` of a rational argument.
pub fn pochhammer(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

/// `(1/2)_n` as the product of `(2k-1)/2`.
pub fn pochhammer_half(n: u64) -> BigRational {
    let mut num = BigInt::one();
    for k in 1..=n {
        num *= BigInt::from(2 * k - 1);
    }
    BigRational::new(num, BigInt::one() << n)
}

/// `P_n = (1/n!) sum_{p+q=n} C(2p,p) C(2q,q) (2p)! (2q)! / (p! q!)`.
///
/// The sum is formed over the integers and divided exactly by `n!`.
pub fn clf_number(n: u64) -> Result<BigInt> {
    let n_us = n as usize;
    let table = FactorialTable::new(2 * n_us);
    clf_number_with(&table, n_us)
}

fn clf_number_with(table: &FactorialTable, n: usize) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for p in 0..=n {
        let q = n - p;
        let central = table.binomial(2 * q, q);
        let outer = table.binomial(2 * p, p);
        let fp = table.factorial(2 * p) / table.factorial(p);
        let fq = table.factorial(2 * q) / table.factorial(q);
        sum += outer * central * fp * fq;
    }
    let (quot, rem) = sum.div_rem(table.factorial(n));
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "binomial sum for P_{n} is not divisible by {n}!"
        )));
    }
    Ok(quot)
}

/// `f(n) = 3F2(-n, 1/2, 1/2; 1/2-n, 1/2-n; -1)`.
pub fn f_via_3f2(n: u64) -> BigRational {
    let n = n as i64;
    let half = ratio(1, 2);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n {
        let kq = int(k);
        let top = int(k - n) * (&half + &kq) * (&half + &kq);
        let lower = &half - int(n) + &kq;
        // the (-1)^k factor folds into the ratio as a sign flip
        term *= -top / (int(k + 1) * &lower * &lower);
        sum += &term;
    }
    sum
}

/// `f(n) = 2^n 3F2(-n, -n/2, (1-n)/2; 1/2-n, 1/2-n; 1)`.
pub fn f_via_quadratic(n: u64) -> BigRational {
    let n = n as i64;
    let half = ratio(1, 2);
    let a2 = ratio(-n, 2);
    let a3 = ratio(1 - n, 2);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n {
        if term.is_zero() {
            continue;
        }
        let kq = int(k);
        let top = int(k - n) * (&a2 + &kq) * (&a3 + &kq);
        let lower = &half - int(n) + &kq;
        term *= top / (int(k + 1) * &lower * &lower);
        sum += &term;
    }
    sum * from_bigint(BigInt::one() << n)
}

/// `f(n) = n!/(2^n (1/2)_n) 3F2(-n, -n, 1/2; 1, 1/2-n; -1)`.
pub fn f_via_p4(n: u64) -> BigRational {
    let table = FactorialTable::new(2 * n as usize);
    f_via_p4_with(&table, n)
}

fn f_via_p4_with(table: &FactorialTable, n: u64) -> BigRational {
    let ni = n as i64;
    let half = ratio(1, 2);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..ni {
        let kq = int(k);
        let top = int(k - ni) * int(k - ni) * (&half + &kq);
        let lower = &half - int(ni) + &kq;
        term *= -top / (int(k + 1) * int(k + 1) * lower);
        sum += &term;
    }
    let n_us = n as usize;
    let prefactor = from_bigint(table.factorial(n_us).clone())
        / (from_bigint(BigInt::one() << n_us) * table.pochhammer_half(n_us));
    prefactor * sum
}

/// `F_n = sum_k (1/2)_k/k!^2 (1/2)_{n-k}/(n-k)!^2`, the coefficients of
/// `[e^{w/2} I_0(w/2)]^2`.
pub fn generating_coefficient(n: u64) -> BigRational {
    let table = FactorialTable::new(2 * n as usize);
    generating_coefficient_with(&table, n as usize)
}

fn generating_coefficient_with(table: &FactorialTable, n: usize) -> BigRational {
    let weights: Vec<BigRational> = (0..=n)
        .map(|k| {
            let f = from_bigint(table.factorial(k).clone());
            table.pochhammer_half(k) / (&f * &f)
        })
        .collect();
    (0..=n).map(|k| &weights[k] * &weights[n - k]).sum()
}

/// `n!^3 / (2^n (1/2)_n^2)`, the factor turning `F_n` into `f(n)`.
pub fn generating_to_f_factor(n: u64) -> BigRational {
    let table = FactorialTable::new(2 * n as usize);
    generating_to_f_factor_with(&table, n as usize)
}

fn generating_to_f_factor_with(table: &FactorialTable, n: usize) -> BigRational {
    let f = from_bigint(table.factorial(n).clone());
    let ph = table.pochhammer_half(n);
    &f * &f * &f / (from_bigint(BigInt::one() << n) * &ph * &ph)
}

/// `n!/(1/2)_n = 4^n n!^2/(2n)!` as an exact rational.
pub fn factorial_over_half_pochhammer(n: u64) -> BigRational {
    let table = FactorialTable::new(2 * n as usize);
    from_bigint(table.factorial(n as usize).clone()) / table.pochhammer_half(n as usize)
}

/// One fully cross-checked row of the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClfValue {
    pub n: u64,
    #[serde(serialize_with = "ser_bigint")]
    pub p_n: BigInt,
    #[serde(serialize_with = "ser_ratio")]
    pub f_n: BigRational,
    /// `F_n`, the generating-function coefficient.
    #[serde(rename = "F_n", serialize_with = "ser_ratio")]
    pub generating: BigRational,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Compute every exact route for `n` and check that they agree.
pub fn verify_identities(n: u64) -> Result<ClfValue> {
    let n_us = n as usize;
    let table = FactorialTable::new(2 * n_us);

    let f = f_via_3f2(n);
    if f_via_quadratic(n) != f {
        return Err(Error::IdentityViolation {
            identity: Identity::QuadraticForm,
            n,
        });
    }
    if f_via_p4_with(&table, n) != f {
        return Err(Error::IdentityViolation {
            identity: Identity::BalancedForm,
            n,
        });
    }

    let p_n = clf_number_with(&table, n_us)?;
    if !p_n.is_positive() {
        return Err(Error::Consistency(format!("P_{n} is not positive")));
    }
    let central = from_bigint(table.binomial(2 * n_us, n_us));
    if from_bigint(p_n.clone()) != &central * &central * &f {
        return Err(Error::IdentityViolation {
            identity: Identity::ClfRatio,
            n,
        });
    }

    let generating = generating_coefficient_with(&table, n_us);
    if generating_to_f_factor_with(&table, n_us) * &generating != f {
        return Err(Error::IdentityViolation {
            identity: Identity::GeneratingRatio,
            n,
        });
    }

    Ok(ClfValue {
        n,
        p_n,
        f_n: f,
        generating,
    })
}

/// [`verify_identities`] for `0..=n_max`.
pub fn sequence(n_max: u64) -> Result<Vec<ClfValue>> {
    (0..=n_max).map(verify_identities).collect()
}
