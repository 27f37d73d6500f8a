//! Integer factorization for the primitive-divisor checks.
//!
//! Trial division by every prime below 10^6, then Pollard rho (Brent's
//! cycle finding) under an iteration budget. Anything left over when the
//! budget runs out is reported as an unfactored cofactor.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

pub const TRIAL_BOUND: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut composite = vec![false; n];
        let mut out = Vec::new();
        for i in 2..n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic for all `u64` (Miller-Rabin with the first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin. Exact below 3.3 * 10^24, probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for a in MR_BASES.iter().chain(&[41, 43, 47, 53, 59, 61, 67, 71]) {
        let mut x = BigUint::from(*a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest prime factor of a small integer.
pub fn least_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    /// Prime factors with multiplicity, ascending.
    pub primes: Vec<(BigUint, u32)>,
    /// Product of the composite parts the budget could not split.
    pub unfactored: Option<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }
}

/// Factors `n >= 1`. `budget` caps the total number of rho iterations.
pub fn factor(n: &BigUint, budget: u64) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.primes.push((pb, e));
        }
    }
    let bound = BigUint::from(TRIAL_BOUND);
    let mut found: Vec<BigUint> = Vec::new();
    let mut unfactored = BigUint::one();
    if rest.is_one() {
        // done
    } else if rest < &bound * &bound || is_probable_prime(&rest) {
        found.push(rest);
    } else {
        let mut remaining = budget;
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if is_probable_prime(&m) {
                found.push(m);
                continue;
            }
            match split(&m, &mut remaining) {
                Some(d) => {
                    let other = &m / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => unfactored *= m,
            }
        }
    }
    found.sort();
    for p in found {
        match out.primes.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.primes.push((p, 1)),
        }
    }
    out.primes.sort();
    if !unfactored.is_one() {
        out.unfactored = Some(unfactored);
    }
    out
}

fn split(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let mut c = 1u32;
    while *budget > 0 {
        if let Some(d) = brent_rho(n, &BigUint::from(c), budget) {
            return Some(d);
        }
        c += 1;
    }
    None
}

/// One Brent-rho attempt with `f(x) = x^2 + c`; returns a proper factor.
fn brent_rho(n: &BigUint, c: &BigUint, budget: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut x;
    let mut ys = y.clone();
    let mut g = one.clone();
    let mut q = one.clone();
    let mut r: u64 = 1;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += steps;
            *budget = budget.saturating_sub(steps);
            if *budget == 0 && g.is_one() {
                return None;
            }
        }
        r *= 2;
        if g == *n {
            // Batch overshot; walk back one step at a time.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
    }
    (g != *n).then_some(g)
}
