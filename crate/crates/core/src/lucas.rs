//! Lucas and Lehmer sequences and primitive divisors of their terms.
//!
//! For a Lucas pair `(α, β)` with `P = α + β` and `Q = αβ`, the terms
//! `u_n = (α^n - β^n)/(α - β)` satisfy `u_0 = 0`, `u_1 = 1`,
//! `u_n = P u_{n-1} - Q u_{n-2}`. A prime is a primitive divisor of `u_n`
//! when it divides `u_n` but neither `(α - β)^2 = P^2 - 4Q` nor any of
//! `u_2, ..., u_{n-1}`.

use crate::error::{Error, Result};
use crate::factor::{factor, is_prime_u64};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LucasPair {
    p: BigInt,
    q: BigInt,
}

impl LucasPair {
    /// Rejects pairs with `P` or `Q` zero, `gcd(P, Q) != 1`, vanishing
    /// discriminant, or `α/β` a root of unity. With the first three
    /// conditions in place the last one only leaves `(±1, 1)`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        let bad = |reason| Error::DegeneratePair { p: p.to_string(), q: q.to_string(), reason };
        if p.is_zero() || q.is_zero() {
            return Err(bad("P and Q must be nonzero"));
        }
        if !p.gcd(&q).is_one() {
            return Err(bad("P and Q must be coprime"));
        }
        if (&p * &p - BigInt::from(4) * &q).is_zero() {
            return Err(bad("discriminant P^2 - 4Q vanishes"));
        }
        if p.abs().is_one() && q.is_one() {
            return Err(bad("alpha/beta is a sixth root of unity"));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `(α - β)^2 = P^2 - 4Q`.
    pub fn discriminant(&self) -> BigInt {
        &self.p * &self.p - 4 * &self.q
    }

    /// `u_0, ..., u_n`.
    pub fn terms(&self, n: u64) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n as usize + 1);
        let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
        for _ in 0..=n {
            out.push(prev.clone());
            let next = &self.p * &cur - &self.q * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }

    pub fn u(&self, n: u64) -> BigInt {
        let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
        for _ in 0..n {
            let next = &self.p * &cur - &self.q * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        prev
    }

    /// `u_n mod m` without materializing the full terms.
    fn u_mod(&self, n: u64, m: &BigInt) -> BigInt {
        let (p, q) = (self.p.mod_floor(m), self.q.mod_floor(m));
        let (mut prev, mut cur) = (BigInt::zero(), BigInt::one() % m);
        for _ in 0..n {
            let next = (&p * &cur - &q * &prev).mod_floor(m);
            prev = std::mem::replace(&mut cur, next);
        }
        prev
    }
}

impl fmt::Display for LucasPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(P = {}, Q = {})", self.p, self.q)
    }
}

pub fn lucas_u(pair: &LucasPair, n: u64) -> BigInt {
    pair.u(n)
}

/// Lehmer number for `R = (α + β)^2` and `Q = αβ`:
/// `(α^n - β^n)/(α - β)` for odd `n`, `(α^n - β^n)/(α^2 - β^2)` for even `n`.
///
/// Evaluated through `v_n = v_{n-1} - Q v_{n-2}` (n even) and
/// `v_n = R v_{n-1} - Q v_{n-2}` (n odd), `v_0 = 0`, `v_1 = 1`.
pub fn lehmer_u(r: impl Into<BigInt>, q: impl Into<BigInt>, n: u64) -> Result<BigInt> {
    let (r, q) = (r.into(), q.into());
    let bad = |reason| Error::DegeneratePair { p: r.to_string(), q: q.to_string(), reason };
    if r.is_zero() || q.is_zero() {
        return Err(bad("R and Q must be nonzero"));
    }
    if !r.gcd(&q).is_one() {
        return Err(bad("R and Q must be coprime"));
    }
    if (&r - BigInt::from(4) * &q).is_zero() {
        return Err(bad("discriminant R - 4Q vanishes"));
    }
    // α/β is a root of unity exactly when R/Q ∈ {0, 1, 2, 3, 4}; coprimality
    // leaves Q = ±1 with R = Q, 2Q or 3Q.
    if q.abs().is_one() && [1, 2, 3].iter().any(|c| r == &q * c) {
        return Err(bad("alpha/beta is a root of unity"));
    }
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for i in 2..=n.max(1) {
        let lead = if i % 2 == 0 { BigInt::one() } else { r.clone() };
        let next = lead * &cur - &q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(if n == 0 { BigInt::zero() } else { cur })
}

/// Which earlier quantity a prime factor of `u_n` already divides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Absorber {
    Discriminant,
    Term(u64),
}

impl fmt::Display for Absorber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Absorber::Discriminant => f.write_str("discriminant"),
            Absorber::Term(j) => write!(f, "u_{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    #[serde(with = "crate::dec")]
    pub prime: BigUint,
    pub absorbed_by: Absorber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDivisorVerdict {
    pub n: u64,
    #[serde(with = "crate::dec")]
    pub u_n: BigInt,
    pub exists: bool,
    /// Smallest primitive prime divisor found.
    #[serde(with = "crate::dec::opt")]
    pub witness: Option<BigUint>,
    /// Prime factors of `u_n` that are not primitive, with the reason.
    pub obstructions: Vec<Obstruction>,
    /// Composite part of `|u_n|` left when the factoring budget ran out.
    #[serde(with = "crate::dec::opt")]
    pub unfactored: Option<BigUint>,
}

impl PrimitiveDivisorVerdict {
    /// No witness and part of `u_n` left unfactored: the answer is unknown.
    pub fn is_indeterminate(&self) -> bool {
        !self.exists && self.unfactored.is_some()
    }
}

/// Searches `u_n` (n >= 2) for a primitive prime divisor.
pub fn primitive_divisor(pair: &LucasPair, n: u64, factoring_budget: u64) -> Result<PrimitiveDivisorVerdict> {
    if n < 2 {
        return Err(Error::Precondition(format!("primitive divisor index must be >= 2, got {n}")));
    }
    let u_n = pair.u(n);
    if u_n.is_zero() {
        return Err(Error::DegeneratePair {
            p: pair.p.to_string(),
            q: pair.q.to_string(),
            reason: "u_n vanishes",
        });
    }
    let disc = pair.discriminant();
    let factors = factor(u_n.magnitude(), factoring_budget);
    let mut witness = None;
    let mut obstructions = Vec::new();
    for (prime, _) in factors.primes {
        let pm = BigInt::from_biguint(Sign::Plus, prime.clone());
        let absorbed_by = if (&disc % &pm).is_zero() {
            Some(Absorber::Discriminant)
        } else {
            (2..n).find(|&j| pair.u_mod(j, &pm).is_zero()).map(Absorber::Term)
        };
        match absorbed_by {
            Some(absorbed_by) => obstructions.push(Obstruction { prime, absorbed_by }),
            None => {
                if witness.is_none() {
                    witness = Some(prime);
                }
            }
        }
    }
    Ok(PrimitiveDivisorVerdict {
        n,
        u_n,
        exists: witness.is_some(),
        witness,
        obstructions,
        unfactored: factors.unfactored,
    })
}

/// How the casework treats an odd prime exponent `p` once it has reduced to
/// `u_p = ±1` for a Lucas pair of the form `((a ± 19^k sqrt(-19))/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateRoute {
    /// `p > 13`: every Lucas number `u_p` has a primitive divisor, so
    /// `u_p = ±1` is impossible.
    AlwaysPrimitive,
    /// `p ∈ {5, 7, 11, 13}`: defective pairs exist and must be checked.
    CheckDefectTable,
    /// `p <= 3`: handled by the dedicated cubic elimination.
    SmallPrime,
}

impl fmt::Display for GateRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateRoute::AlwaysPrimitive => "AlwaysPrimitive",
            GateRoute::CheckDefectTable => "CheckDefectTable",
            GateRoute::SmallPrime => "SmallPrime",
        })
    }
}

/// Routing on the exponent alone; the pair does not affect the route.
pub fn bhv_gate(p: u64) -> Result<GateRoute> {
    if !is_prime_u64(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(match p {
        0..=3 => GateRoute::SmallPrime,
        5 | 7 | 11 | 13 => GateRoute::CheckDefectTable,
        _ => GateRoute::AlwaysPrimitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(p: i64, q: i64) -> LucasPair {
        LucasPair::new(p, q).unwrap()
    }

    #[test]
    fn recurrence_examples() {
        let pq = pair(1, 5);
        assert_eq!(lucas_u(&pq, 7), BigInt::from(1));
        assert_eq!(lucas_u(&pq, 3), BigInt::from(-4));
        assert_eq!(lucas_u(&pq, 1), BigInt::one());
        assert_eq!(lucas_u(&pq, 0), BigInt::zero());
        let terms: Vec<i64> = pq.terms(7).iter().map(|t| t.try_into().unwrap()).collect();
        assert_eq!(terms, vec![0, 1, 1, -4, -9, 11, 56, 1]);
    }

    #[test]
    fn degenerate_pairs_rejected() {
        for (p, q) in [(0, 1), (3, 0), (2, 4), (2, 1), (-2, 1), (1, 1), (-1, 1), (6, 9)] {
            assert!(LucasPair::new(p, q).is_err(), "({p}, {q})");
        }
        assert!(LucasPair::new(1, -1).is_ok());
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(lehmer_u(1, 5, 7).unwrap(), BigInt::from(1));
        assert_eq!(lehmer_u(1, 5, 1).unwrap(), BigInt::from(1));
        assert_eq!(lehmer_u(1, 5, 2).unwrap(), BigInt::from(1));
        assert_eq!(lehmer_u(1, 5, 0).unwrap(), BigInt::zero());
        assert!(lehmer_u(0, 5, 3).is_err());
        assert!(lehmer_u(2, 1, 3).is_err());
        assert!(lehmer_u(4, 1, 3).is_err());
        assert!(lehmer_u(6, 4, 3).is_err());
    }

    #[test]
    fn lehmer_agrees_with_lucas_when_r_is_a_square() {
        // With R = P^2, odd terms coincide and even terms are divided by P.
        for p in 1..6i64 {
            for q in [-7i64, -3, -1, 2, 5, 11] {
                let Ok(pq) = LucasPair::new(p, q) else { continue };
                for n in 0..25u64 {
                    let lucas = pq.u(n);
                    let want = if n % 2 == 0 { lucas / p } else { lucas };
                    assert_eq!(lehmer_u(p * p, q, n).unwrap(), want, "P={p} Q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn primitive_divisor_examples() {
        let pq = pair(1, 5);
        let v = primitive_divisor(&pq, 7, 1000).unwrap();
        assert!(!v.exists && !v.is_indeterminate());
        assert_eq!(v.u_n, BigInt::one());
        assert!(v.obstructions.is_empty());

        let v = primitive_divisor(&pq, 3, 1000).unwrap();
        assert_eq!(v.witness, Some(BigUint::from(2u32)));

        let v = primitive_divisor(&pq, 13, 1000).unwrap();
        assert!(v.exists);
        assert_eq!(v.witness, Some(BigUint::from(15679u32)));
    }

    #[test]
    fn obstructions_name_the_earlier_term() {
        // u_6 = 56 = 2^3 * 7 for (1, 5): 2 already divides u_3, 7 is new.
        let v = primitive_divisor(&pair(1, 5), 6, 1000).unwrap();
        assert_eq!(v.witness, Some(BigUint::from(7u32)));
        assert_eq!(
            v.obstructions,
            vec![Obstruction { prime: BigUint::from(2u32), absorbed_by: Absorber::Term(3) }]
        );
        // u_19 = 19 * 191 * 229: 19 divides the discriminant -19.
        let v = primitive_divisor(&pair(1, 5), 19, 1000).unwrap();
        assert_eq!(v.witness, Some(BigUint::from(191u32)));
        assert_eq!(v.obstructions[0].absorbed_by, Absorber::Discriminant);
    }

    #[test]
    fn primitive_divisor_rejects_small_index() {
        assert!(primitive_divisor(&pair(1, 5), 1, 10).is_err());
    }

    #[test]
    fn gate_routes() {
        assert_eq!(bhv_gate(17).unwrap(), GateRoute::AlwaysPrimitive);
        assert_eq!(bhv_gate(7).unwrap(), GateRoute::CheckDefectTable);
        assert_eq!(bhv_gate(3).unwrap(), GateRoute::SmallPrime);
        assert!(bhv_gate(9).is_err());
    }
}
