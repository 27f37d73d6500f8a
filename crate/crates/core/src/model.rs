//! Equation instances, verified solutions and the explicit solution families.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// The fixed leading coefficient on the right-hand side.
pub const LAMBDA: u32 = 4;

/// `19^e` as a big integer.
pub fn pow19(e: u32) -> BigUint {
    BigUint::from(19u32).pow(e)
}

/// The instance `x^2 + 19^(2k+1) = 4 y^n` for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LnInstance {
    k: u32,
    d: BigUint,
}

impl LnInstance {
    pub fn new(k: u32) -> Self {
        Self { k, d: pow19(2 * k + 1) }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `D = 19^(2k+1)`.
    pub fn d(&self) -> &BigUint {
        &self.d
    }

    /// Exact check of `x^2 + D = 4 y^n` for positive `x`, `y`, `n`.
    pub fn is_solution(&self, x: &BigUint, y: &BigUint, n: u32) -> bool {
        if x.is_zero() || y.is_zero() || n == 0 {
            return false;
        }
        x * x + &self.d == BigUint::from(LAMBDA) * y.pow(n)
    }

    /// Wraps `(x, y, n)` as a [`Solution`] if it satisfies this instance.
    pub fn solution(&self, x: BigUint, y: BigUint, n: u32) -> Option<Solution> {
        self.is_solution(&x, &y, n).then_some(Solution { x, y, n })
    }

    /// The family member named by `spec`.
    pub fn instantiate_family(&self, spec: FamilySpec) -> Result<Solution> {
        let (x, y, n) = match spec {
            FamilySpec::N1(t) => {
                let t = BigUint::from(t);
                let y = &t * &t + &t + (&self.d + 1u32) / 4u32;
                (2u32 * t + 1u32, y, 1)
            }
            FamilySpec::N2(t) => {
                if t > self.k {
                    return Err(Error::FamilyParameterTooLarge { k: self.k, t });
                }
                let e = pow19(2 * (self.k - t) + 1);
                let scale = pow19(t);
                let x = &scale * ((&e - 1u32) / 2u32);
                let y = scale * ((e + 1u32) / 4u32);
                (x, y, 2)
            }
            FamilySpec::N7(m) => {
                if u64::from(self.k) != 7 * u64::from(m) {
                    return Err(Error::FamilyNeedsSevenDividesK { k: self.k, m });
                }
                (559u32 * pow19(7 * m), 5u32 * pow19(2 * m), 7)
            }
        };
        let sol = self.solution(x, y, n);
        debug_assert!(sol.is_some(), "family member {spec:?} failed verification");
        sol.ok_or(Error::Precondition(format!("family member {spec:?} is not a solution")))
    }

    /// Every solution with `2 <= n <= n_max` that the classification admits,
    /// sorted by `(n, y)`. `t_max` optionally caps the parameter of the
    /// `n = 2` family below `k`.
    pub fn theorem_solution_set(&self, n_max: u32, t_max: Option<u32>) -> Vec<Solution> {
        let mut out = Vec::new();
        if n_max >= 2 {
            let top = t_max.map_or(self.k, |cap| cap.min(self.k));
            for t in 0..=top {
                out.extend(self.instantiate_family(FamilySpec::N2(t)));
            }
        }
        if n_max >= 7 && self.k.is_multiple_of(7) {
            out.extend(self.instantiate_family(FamilySpec::N7(self.k / 7)));
        }
        out.sort();
        out
    }
}

/// The three parametrized families of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// `(2t+1, t^2 + t + (1 + D)/4, 1)`.
    N1(u64),
    /// `(19^t (19^(2(k-t)+1) - 1)/2, 19^t (19^(2(k-t)+1) + 1)/4, 2)`, `t <= k`.
    N2(u32),
    /// `(559 * 19^(7m), 5 * 19^(2m), 7)`, only when `k = 7m`.
    N7(u32),
}

/// A verified positive solution `(x, y, n)`.
///
/// Ordered by `(n, y, x)`; this is the canonical output order everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Solution {
    #[serde(with = "crate::dec")]
    x: BigUint,
    #[serde(with = "crate::dec")]
    y: BigUint,
    n: u32,
}

impl Solution {
    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn into_parts(self) -> (BigUint, BigUint, u32) {
        (self.x, self.y, self.n)
    }

    /// Multiplies through by `(19^s, 19^t)`; the caller checks the result.
    pub(crate) fn scaled(&self, s: u32, t: u32) -> (BigUint, BigUint) {
        (&self.x * pow19(s), &self.y * pow19(t))
    }
}

impl Ord for Solution {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.y, &self.x).cmp(&(other.n, &other.y, &other.x))
    }
}

impl PartialOrd for Solution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.n)
    }
}

/// `true` when `v` is divisible by 19.
pub(crate) fn divisible_by_19(v: &BigUint) -> bool {
    (v % 19u32).is_zero()
}

/// 19-adic valuation and cofactor of a positive integer.
pub(crate) fn split_19(v: &BigUint) -> (u32, BigUint) {
    let mut v = v.clone();
    let mut e = 0;
    while !v.is_zero() && divisible_by_19(&v) {
        v /= 19u32;
        e += 1;
    }
    (e, v)
}
