//! Arithmetic in the ring of integers of Q(sqrt(-19)).
//!
//! An element is stored as the pair `(a, b)` standing for `(a + b*sqrt(-19))/2`
//! with `a ≡ b (mod 2)`, so the rational integer `m` is `(2m, 0)`. The only
//! units of the ring are `±1`; an odd power absorbs them, which is what the
//! casework relies on when it writes an element as an exact `p`-th power.

use crate::error::{Error, Result};
use crate::factor::is_prime_u64;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt19 {
    #[serde(with = "crate::dec")]
    a: BigInt,
    #[serde(with = "crate::dec")]
    b: BigInt,
}

impl QuadInt19 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_even() != b.is_even() {
            return Err(Error::ParityMismatch { a: a.to_string(), b: b.to_string() });
        }
        Ok(Self { a, b })
    }

    pub fn one() -> Self {
        Self { a: BigInt::from(2), b: BigInt::zero() }
    }

    pub fn from_integer(m: impl Into<BigInt>) -> Self {
        Self { a: m.into() * 2, b: BigInt::zero() }
    }

    /// Twice the rational part.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Twice the coefficient of `sqrt(-19)`.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b }
    }

    /// `(a^2 + 19 b^2) / 4`.
    pub fn norm(&self) -> BigUint {
        let n: BigInt = (&self.a * &self.a + 19 * &self.b * &self.b) / 4;
        n.magnitude().clone()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &QuadInt19 {
    type Output = QuadInt19;

    fn mul(self, rhs: &QuadInt19) -> QuadInt19 {
        // Both numerators are even because a1 ≡ b1 and a2 ≡ b2 (mod 2).
        let a = (&self.a * &rhs.a - 19 * &self.b * &rhs.b) / 2;
        let b = (&self.a * &rhs.b + &rhs.a * &self.b) / 2;
        QuadInt19 { a, b }
    }
}

impl Mul for QuadInt19 {
    type Output = QuadInt19;

    fn mul(self, rhs: QuadInt19) -> QuadInt19 {
        &self * &rhs
    }
}

impl fmt::Display for QuadInt19 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {}*sqrt(-19))/2", self.a, sign, self.b.abs())
    }
}

pub fn qmul(u: &QuadInt19, v: &QuadInt19) -> QuadInt19 {
    u * v
}

pub fn qpow(u: &QuadInt19, e: u64) -> QuadInt19 {
    u.pow(e)
}

/// Exact binomial coefficient by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `sum_{r=0}^{(p-1)/2} C(p, 2r+1) a^(p-2r-1) (-19)^r b^(2r)`.
///
/// If `((a + b*sqrt(-19))/2)^p = (A + B*sqrt(-19))/2` then
/// `b * S = 2^(p-1) * B`.
pub fn imag_binomial_sum(a: &BigInt, b: &BigInt, p: u64) -> Result<BigInt> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(imag_sum_unchecked(a, b, p))
}

pub(crate) fn imag_sum_unchecked(a: &BigInt, b: &BigInt, p: u64) -> BigInt {
    let z = a * a;
    imag_sum_poly(&(b * b), p)
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &z + c)
}

/// Coefficients of the imaginary-part sum viewed as a polynomial in `z = a^2`,
/// lowest degree first: the coefficient of `z^(h-r)` is `C(p, 2r+1) (-19 b^2)^r`.
pub(crate) fn imag_sum_poly(b_squared: &BigInt, p: u64) -> Vec<BigInt> {
    let half = (p - 1) / 2;
    let step = BigInt::from(-19) * b_squared;
    let mut coeffs = vec![BigInt::zero(); half as usize + 1];
    let mut step_pow = BigInt::one();
    for r in 0..=half {
        coeffs[(half - r) as usize] = BigInt::from(binomial(p, 2 * r + 1)) * &step_pow;
        step_pow *= &step;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadInt19 {
        QuadInt19::new(a, b).unwrap()
    }

    #[test]
    fn parity_is_enforced() {
        assert!(QuadInt19::new(1, 2).is_err());
        assert!(QuadInt19::new(2, 0).is_ok());
    }

    #[test]
    fn qmul_examples() {
        assert_eq!(qmul(&q(1, 1), &q(1, 1)), q(-9, 1));
        let u = q(7, -3);
        assert_eq!(qmul(&u, &QuadInt19::one()), u);
        assert_eq!(qmul(&q(1, -1), &q(1, 1)), q(10, 0));
    }

    #[test]
    fn qpow_examples() {
        // ((1 - sqrt(-19))/2)^7 = -(559 + sqrt(-19))/2
        assert_eq!(qpow(&q(1, -1), 7), q(-559, -1));
        assert_eq!(qpow(&q(3, 5), 0), QuadInt19::one());
        assert_eq!(qpow(&q(3, 5), 1), q(3, 5));
    }

    #[test]
    fn norms() {
        assert_eq!(q(1, 1).norm(), BigUint::from(5u32));
        assert_eq!(q(559, 1).norm(), BigUint::from(78125u32));
        assert_eq!(QuadInt19::from_integer(-3).norm(), BigUint::from(9u32));
    }

    #[test]
    fn imag_sum_examples() {
        let s = |a: i64, b: i64, p| imag_binomial_sum(&a.into(), &b.into(), p).unwrap();
        assert_eq!(s(1, -1, 7), BigInt::from(64));
        assert_eq!(s(1, 1, 3), BigInt::from(-16));
        assert_eq!(s(3, 1, 3), BigInt::from(8));
    }

    #[test]
    fn imag_sum_rejects_non_odd_primes() {
        for p in [0, 1, 2, 9, 15] {
            assert_eq!(
                imag_binomial_sum(&BigInt::one(), &BigInt::one(), p),
                Err(Error::NotOddPrime(p))
            );
        }
    }

    #[test]
    fn imag_sum_matches_term_by_term_formula() {
        for p in [3u64, 5, 7, 13] {
            for (a, b) in [(1i64, 1i64), (3, -1), (5, 19), (-7, 361), (0, 2)] {
                let (a, b) = (BigInt::from(a), BigInt::from(b));
                let mut direct = BigInt::zero();
                for r in 0..=(p - 1) / 2 {
                    direct += BigInt::from(binomial(p, 2 * r + 1))
                        * num_traits::pow(a.clone(), (p - 2 * r - 1) as usize)
                        * num_traits::pow(BigInt::from(-19), r as usize)
                        * num_traits::pow(&b * &b, r as usize);
                }
                assert_eq!(imag_sum_unchecked(&a, &b, p), direct);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(19, 3), BigUint::from(969u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }
}
