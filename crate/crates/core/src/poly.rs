//! Exact integer roots of integer polynomials.
//!
//! The real line is cut at `floor` and `ceil` of every real root of the
//! derivative (found recursively), so the polynomial is strictly monotone on
//! each piece and a bisection over integers finds any integer root. No
//! floating point is involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Integer polynomial, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `self - c`.
    pub fn shifted(&self, c: &BigInt) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        coeffs[0] -= c;
        Self::new(coeffs)
    }

    /// Cauchy bound: every real root satisfies `|x| <= 1 + max |c_i / c_d|`.
    pub fn root_bound(&self) -> BigInt {
        let Some((lead, rest)) = self.coeffs.split_last() else {
            return BigInt::zero();
        };
        let lead = lead.abs();
        let max = rest.iter().map(|c| c.abs()).max().unwrap_or_default();
        BigInt::one() + max.div_ceil(&lead)
    }

    /// All integer roots, ascending. The zero polynomial has none by convention.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        self.brackets().into_iter().filter_map(|b| b.exact).collect()
    }

    /// For every real root: `(floor, ceil)`, plus the root itself when it
    /// is an integer.
    fn brackets(&self) -> Vec<Bracket> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let bound = self.root_bound();
        let mut cuts = vec![-bound.clone()];
        for b in self.derivative().brackets() {
            for c in [b.lo, b.hi] {
                if c > -bound.clone() && c < bound {
                    cuts.push(c);
                }
            }
        }
        cuts.push(bound);
        cuts.sort();
        cuts.dedup();

        let mut out: Vec<Bracket> = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let (flo, fhi) = (self.eval(lo), self.eval(hi));
            if flo.is_zero() {
                out.push(Bracket::exact(lo.clone()));
            }
            if fhi.is_zero() {
                out.push(Bracket::exact(hi.clone()));
                continue;
            }
            if flo.is_zero() || flo.sign() == fhi.sign() {
                continue;
            }
            // Strictly monotone on [lo, hi] with a sign change inside.
            let (mut l, mut h) = (lo.clone(), hi.clone());
            let lo_sign = flo.sign();
            while &h - &l > BigInt::one() {
                let mid: BigInt = (&l + &h).div_floor(&BigInt::from(2));
                let fm = self.eval(&mid);
                if fm.is_zero() {
                    l = mid.clone();
                    h = mid;
                    break;
                }
                if fm.sign() == lo_sign {
                    l = mid;
                } else {
                    h = mid;
                }
            }
            out.push(if l == h { Bracket::exact(l) } else { Bracket { lo: l, hi: h, exact: None } });
        }
        out.sort_by(|a, b| match a.lo.cmp(&b.lo) {
            Ordering::Equal => a.hi.cmp(&b.hi),
            o => o,
        });
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bracket {
    lo: BigInt,
    hi: BigInt,
    exact: Option<BigInt>,
}

impl Bracket {
    fn exact(x: BigInt) -> Self {
        Self { lo: x.clone(), hi: x.clone(), exact: Some(x) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn from_roots(roots: &[i64], lead: i64) -> IntPoly {
        let mut coeffs = vec![BigInt::from(lead)];
        for &r in roots {
            let mut next = vec![BigInt::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        IntPoly::new(coeffs)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn simple_roots() {
        assert_eq!(poly(&[-6, 1, 1]).integer_roots(), big(&[-3, 2]));
        assert_eq!(poly(&[1, 0, 1]).integer_roots(), big(&[]));
        assert_eq!(poly(&[-2, 0, 1]).integer_roots(), big(&[]));
        assert_eq!(poly(&[5]).integer_roots(), big(&[]));
        assert_eq!(poly(&[0, 3]).integer_roots(), big(&[0]));
    }

    #[test]
    fn repeated_and_clustered_roots() {
        assert_eq!(from_roots(&[4, 4, 4, -1], 3).integer_roots(), big(&[-1, 4]));
        assert_eq!(from_roots(&[0, 1, 2, 3, 4, 5], -1).integer_roots(), big(&[0, 1, 2, 3, 4, 5]));
        // (2x - 1)(2x - 3)(x - 7): two non-integer roots one apart
        let p = IntPoly::new(big(&[3, -8, 4]));
        let q = &from_roots(&[7], 1);
        let mut prod = vec![BigInt::zero(); 4];
        for (i, a) in p.coeffs().iter().enumerate() {
            for (j, b) in q.coeffs().iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        assert_eq!(IntPoly::new(prod).integer_roots(), big(&[7]));
    }

    #[test]
    fn huge_coefficients() {
        let r: BigInt = BigInt::from(10).pow(40u32) + 7;
        let p = IntPoly::new(vec![-(&r * &r), BigInt::zero(), BigInt::one()]);
        assert_eq!(p.integer_roots(), vec![-r.clone(), r]);
    }

    #[test]
    fn shifted_and_derivative() {
        let p = poly(&[1, 2, 3]);
        assert_eq!(p.derivative(), poly(&[2, 6]));
        assert_eq!(p.shifted(&BigInt::from(6)), poly(&[-5, 2, 3]));
        assert_eq!(p.shifted(&BigInt::from(6)).integer_roots(), big(&[1]));
    }

    proptest! {
        #[test]
        fn recovers_planted_roots(
            roots in proptest::collection::vec(-200i64..200, 1..6),
            lead in prop_oneof![-5i64..-1, 1i64..5],
        ) {
            let mut want = roots.clone();
            want.sort();
            want.dedup();
            prop_assert_eq!(from_roots(&roots, lead).integer_roots(), big(&want));
        }

        #[test]
        fn roots_match_exhaustive_scan(coeffs in proptest::collection::vec(-30i64..30, 2..6)) {
            let p = poly(&coeffs);
            prop_assume!(p.degree().unwrap_or(0) >= 1);
            let bound: i64 = p.root_bound().try_into().unwrap();
            let scan: Vec<BigInt> = (-bound..=bound)
                .map(BigInt::from)
                .filter(|x| p.eval(x).is_zero())
                .collect();
            prop_assert_eq!(p.integer_roots(), scan);
        }
    }
}
