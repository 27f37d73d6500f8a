//! Exhaustive search for solutions inside explicit bounds.
//!
//! The scan runs `y` upward for each exponent and tests whether
//! `λ y^n - D` is a perfect square. It makes no use of the casework, so
//! the solver can be checked against it.

use crate::error::{Error, Result};
use crate::model::{LnInstance, Solution, LAMBDA};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Floor square root by Newton's iteration.
pub fn isqrt(v: &BigUint) -> BigUint {
    if v.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << (v.bits().div_ceil(2));
    loop {
        let next = (&x + v / &x) >> 1u32;
        if next >= x {
            return x;
        }
        x = next;
    }
}

pub(crate) fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let bits = 128 - v.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let next = (x + v / x) >> 1;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// Floor `m`-th root by bisection.
pub fn iroot(v: &BigUint, m: u32) -> BigUint {
    assert!(m >= 1, "root index must be positive");
    if m == 1 || v.is_zero() {
        return v.clone();
    }
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (v.bits().div_ceil(u64::from(m)));
    // Invariant: lo^m <= v < hi^m.
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1u32;
        if Pow::pow(&mid, m) <= *v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `r` with `r^m = v`, if there is one.
pub fn perfect_root(v: &BigUint, m: u32) -> Option<BigUint> {
    let r = iroot(v, m);
    (Pow::pow(&r, m) == *v).then_some(r)
}

/// Bounds for [`brute_force`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWindow {
    pub k: u32,
    pub n_min: u32,
    pub n_max: u32,
    #[serde(with = "crate::dec")]
    pub x_max: BigUint,
}

impl SearchWindow {
    pub fn new(k: u32, n_min: u32, n_max: u32, x_max: impl Into<BigUint>) -> Result<Self> {
        let w = Self { k, n_min, n_max, x_max: x_max.into() };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 2 {
            return Err(Error::BadWindow(format!("n_min must be >= 2, got {}", self.n_min)));
        }
        if self.n_max < self.n_min {
            return Err(Error::BadWindow(format!("n_max {} < n_min {}", self.n_max, self.n_min)));
        }
        if self.x_max.is_zero() {
            return Err(Error::BadWindow("x_max must be positive".into()));
        }
        Ok(())
    }

    pub fn contains(&self, s: &Solution) -> bool {
        (self.n_min..=self.n_max).contains(&s.n()) && s.x() <= &self.x_max
    }
}

/// A positive triple `(x, y, n)` found by [`generalized_scan`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub n: u32,
    #[serde(with = "crate::dec")]
    pub y: BigUint,
    #[serde(with = "crate::dec")]
    pub x: BigUint,
}

/// All solutions of `x^2 + 19^(2k+1) = 4 y^n` in the window, sorted by `(n, y)`.
///
/// Only odd `y` are visited. `D ≡ 3 (mod 8)` forces `x` odd, so
/// `x^2 + D ≡ 4 (mod 8)` and `y^n` is odd.
pub fn brute_force(window: &SearchWindow) -> Result<Vec<Solution>> {
    window.validate()?;
    let inst = LnInstance::new(window.k);
    let hits = scan(inst.d(), u64::from(LAMBDA), window.n_min, window.n_max, &window.x_max, true);
    let mut out: Vec<Solution> = hits
        .into_iter()
        .map(|t| {
            inst.solution(t.x, t.y, t.n)
                .expect("scan produced a triple that does not satisfy the equation")
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The same scan for `x^2 + D = λ y^n` with arbitrary `D, λ >= 1`.
pub fn generalized_scan(d: &BigUint, lambda: u64, n_min: u32, n_max: u32, x_max: &BigUint) -> Result<Vec<Triple>> {
    if d.is_zero() || lambda == 0 {
        return Err(Error::BadWindow("D and lambda must be positive".into()));
    }
    if n_min < 1 || n_max < n_min {
        return Err(Error::BadWindow(format!("bad exponent range [{n_min}, {n_max}]")));
    }
    let mut out = scan(d, lambda, n_min, n_max, x_max, false);
    out.sort();
    Ok(out)
}

fn scan(d: &BigUint, lambda: u64, n_min: u32, n_max: u32, x_max: &BigUint, odd_y: bool) -> Vec<Triple> {
    (n_min..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| scan_exponent(d, lambda, n, x_max, odd_y))
        .collect()
}

fn scan_exponent(d: &BigUint, lambda: u64, n: u32, x_max: &BigUint, odd_y: bool) -> Vec<Triple> {
    let limit = x_max * x_max + d;
    let lam = BigUint::from(lambda);
    // Smallest y with λ y^n > D.
    let mut y = iroot(&(d / &lam), n);
    while &lam * Pow::pow(&y, n) <= *d {
        y += 1u32;
    }
    if odd_y && y.is_even() {
        y += 1u32;
    }
    let step: u32 = if odd_y { 2 } else { 1 };
    let mut out = Vec::new();

    if let (Some(limit), Some(d), Some(mut y)) = (limit.to_u128(), d.to_u128(), y.to_u128()) {
        let lam = u128::from(lambda);
        // overflow means v is past any u128 limit
        while let Some(v) = y.checked_pow(n).and_then(|p| p.checked_mul(lam)).filter(|&v| v <= limit) {
            let c = v - d;
            let s = isqrt_u128(c);
            if s * s == c {
                out.push(Triple { n, y: y.into(), x: s.into() });
            }
            y += u128::from(step);
        }
        return out;
    }

    loop {
        let v = &lam * Pow::pow(&y, n);
        if v > limit {
            break;
        }
        let c = v - d;
        let s = isqrt(&c);
        if &s * &s == c {
            out.push(Triple { n, y: y.clone(), x: s });
        }
        y += step;
    }
    out
}
