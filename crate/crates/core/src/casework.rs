//! The individual steps of the case analysis, each as a procedure that
//! returns a [`CaseVerdict`] together with the congruences it checked.
//!
//! Every verdict is a pure function of the step's inputs, so a recorded
//! verdict can be re-derived by calling the procedure again.

use crate::error::{Error, Result};
use crate::factor::is_prime_u64;
use crate::model::{divisible_by_19, pow19, split_19, FamilySpec, LnInstance, Solution};
use crate::oracle::{isqrt, perfect_root};
use crate::poly::IntPoly;
use crate::quadratic::{imag_sum_poly, QuadInt19};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Contradiction { reason: String },
    Forced { assignments: BTreeMap<String, String> },
    /// The step reduces to the instance with parameter `k` and exponent `n`.
    Reduced { k: u32, n: u32, constraints: Vec<String> },
    Solutions { solutions: Vec<Solution> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub outcome: Outcome,
    /// Congruences and computations applied, in order.
    pub trace: Vec<String>,
}

impl CaseVerdict {
    fn contradiction(reason: impl Into<String>, trace: Vec<String>) -> Self {
        Self { outcome: Outcome::Contradiction { reason: reason.into() }, trace }
    }

    pub fn is_contradiction(&self) -> bool {
        matches!(self.outcome, Outcome::Contradiction { .. })
    }

    /// Solutions carried by the verdict; empty for every other outcome.
    pub fn solutions(&self) -> &[Solution] {
        match &self.outcome {
            Outcome::Solutions { solutions } => solutions,
            _ => &[],
        }
    }
}

/// `x = 19^s X`, `y = 19^t Y` with `19 ∤ X`, `19 ∤ Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationSplit {
    pub s: u32,
    pub t: u32,
    #[serde(with = "crate::dec")]
    pub x_cofactor: BigUint,
    #[serde(with = "crate::dec")]
    pub y_cofactor: BigUint,
}

impl ValuationSplit {
    pub fn new(s: u32, t: u32, x_cofactor: BigUint, y_cofactor: BigUint) -> Result<Self> {
        for (name, v) in [("X", &x_cofactor), ("Y", &y_cofactor)] {
            if v.is_zero() {
                return Err(Error::BadSplit(format!("{name} must be positive")));
            }
            if divisible_by_19(v) {
                return Err(Error::BadSplit(format!("19 divides {name} = {v}; the exponent is not exact")));
            }
        }
        Ok(Self { s, t, x_cofactor, y_cofactor })
    }

    pub fn from_xy(x: &BigUint, y: &BigUint) -> Result<Self> {
        if x.is_zero() || y.is_zero() {
            return Err(Error::BadSplit("x and y must be positive".into()));
        }
        let (s, x_cofactor) = split_19(x);
        let (t, y_cofactor) = split_19(y);
        Ok(Self { s, t, x_cofactor, y_cofactor })
    }

    pub fn x(&self) -> BigUint {
        pow19(self.s) * &self.x_cofactor
    }

    pub fn y(&self) -> BigUint {
        pow19(self.t) * &self.y_cofactor
    }
}

fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// The `n = 1` family member `(2t + 1, t^2 + t + (1 + 19^(2k+1))/4, 1)`.
pub fn n1_parametric(k: u32, t: u64) -> Solution {
    LnInstance::new(k)
        .instantiate_family(FamilySpec::N1(t))
        .expect("the n = 1 family is defined for every t")
}

/// `n = 2m` with `19 ∤ x`.
///
/// `19^(2k+1) = (2y^m - x)(2y^m + x)` with coprime positive factors forces
/// `2y^m - x = 1` and `2y^m + x = 19^(2k+1)`, which pins `x` and `y^m`.
pub fn even_case(k: u32, m: u32) -> Result<CaseVerdict> {
    if m == 0 {
        return Err(Error::Precondition("even case needs m >= 1".into()));
    }
    let inst = LnInstance::new(k);
    let d = inst.d();
    let x = (d - 1u32) / 2u32;
    let ym = (d + 1u32) / 4u32;
    let mut trace = vec![
        format!("19^{} = (2y^{m} - x)(2y^{m} + x); the factors are coprime because 19 ∤ x", 2 * k + 1),
        "coprime factorization forces 2y^m - x = 1 and 2y^m + x = 19^(2k+1)".to_string(),
        format!("x = (19^(2k+1) - 1)/2 = {x}, y^{m} = (19^(2k+1) + 1)/4 = {ym}"),
    ];
    let x3 = (&x % 3u32).to_u32().unwrap_or(0);
    let ym3 = (&ym % 3u32).to_u32().unwrap_or(0);
    trace.push(format!("mod 3: x ≡ {x3}, y^m ≡ {ym3}"));

    if m == 1 {
        let sol = inst.solution(x, ym, 2).expect("even-case formula yields a solution");
        return Ok(CaseVerdict { outcome: Outcome::Solutions { solutions: vec![sol] }, trace });
    }
    if m.is_multiple_of(2) {
        let even_powers: BTreeSet<u64> = (0..3).map(|y| mod_pow(y, u64::from(m), 3)).collect();
        trace.push(format!("y^m mod 3 over y mod 3 for even m: {even_powers:?}"));
        if !even_powers.contains(&u64::from(ym3)) {
            return Ok(CaseVerdict::contradiction(
                format!("y^{m} ≡ {ym3} (mod 3) is impossible for even m"),
                trace,
            ));
        }
    }
    match perfect_root(&ym, m) {
        None => {
            trace.push(format!("{ym} is not a perfect {m}-th power"));
            Ok(CaseVerdict::contradiction(format!("(19^(2k+1) + 1)/4 is not a perfect {m}-th power"), trace))
        }
        Some(y) => {
            trace.push(format!("{ym} = {y}^{m}"));
            let sol = inst.solution(x, y, 2 * m).expect("root of y^m yields a solution");
            Ok(CaseVerdict { outcome: Outcome::Solutions { solutions: vec![sol] }, trace })
        }
    }
}

/// With `b = ±19^t`, `t < k`, the imaginary-part identity reduces mod 19 to
/// `p a^(p-1) ≡ 0`, checked exhaustively over `a = 1..18`.
pub fn mod19_forces_p(k: u32, t: u32, p: u64) -> Result<CaseVerdict> {
    require_odd_prime(p)?;
    if t >= k {
        return Err(Error::Precondition(format!("mod-19 step needs t < k, got t = {t}, k = {k}")));
    }
    let residues: Vec<u64> = (1..19).map(|a| (p % 19) * mod_pow(a, p - 1, 19) % 19).collect();
    let zeros = residues.iter().filter(|&&r| r == 0).count();
    let trace = vec![
        format!("19 divides 2^(p-1) 19^(k-t) (k - t = {}) and every r >= 1 term", k - t),
        format!("mod 19: p a^(p-1) for a = 1..18 with p = {p}: {residues:?}"),
    ];
    if zeros == 0 {
        Ok(CaseVerdict::contradiction(format!("{p} a^{} ≢ 0 (mod 19) for every a coprime to 19", p - 1), trace))
    } else {
        let assignments = BTreeMap::from([("p".to_string(), p.to_string())]);
        Ok(CaseVerdict { outcome: Outcome::Forced { assignments }, trace })
    }
}

/// Exhaustive check of `a^2 ≡ 19^(2t) (2 + 2^(s-1)) (mod 2^(s+1))` over odd
/// residues, where `p = 3 + 2^s m` with `m` odd.
///
/// `t = 0` is accepted as well; the right-hand side stays even.
pub fn mod_pow2_insoluble(p: u64, t: u32) -> Result<CaseVerdict> {
    if p <= 3 || p % 4 != 3 || !is_prime_u64(p) {
        return Err(Error::NotThreeModFour(p));
    }
    let s = (p - 3).trailing_zeros();
    let m = (p - 3) >> s;
    if s + 1 > 24 {
        return Err(Error::ModulusTooLarge { p, bits: s + 1 });
    }
    let modulus = 1u64 << (s + 1);
    let target = mod_pow(19, 2 * u64::from(t), modulus) * ((2 + (1u64 << (s - 1))) % modulus) % modulus;
    let squares: BTreeSet<u64> = (1..modulus).step_by(2).map(|a| a * a % modulus).collect();
    let mut trace = vec![
        format!("p = 3 + 2^{s} * {m}, modulus 2^{} = {modulus}", s + 1),
        format!("odd squares mod {modulus}: {squares:?} ({} residues checked)", modulus / 2),
        format!("19^{} (2 + 2^{}) ≡ {target} (mod {modulus})", 2 * t, s - 1),
    ];
    if squares.contains(&target) {
        trace.push(format!("{target} is an odd square mod {modulus}"));
        let assignments = BTreeMap::from([(format!("a^2 mod {modulus}"), target.to_string())]);
        Ok(CaseVerdict { outcome: Outcome::Forced { assignments }, trace })
    } else {
        Ok(CaseVerdict::contradiction(format!("a^2 ≡ {target} (mod {modulus}) has no odd solution"), trace))
    }
}

/// Residue route for `4 * 19^k = 3a^2 b - 19 b^3`: returns the admissible
/// `b mod 3` and the `(a, b) mod 9` pairs that survive (always none).
pub fn p3_residue_path(k: u32) -> (Vec<u64>, Vec<(u64, u64)>) {
    let cubic = |a: i64, b: i64, m: i64| (3 * a * a * b - 19 * b * b * b).rem_euclid(m);
    let lhs3 = (4 * mod_pow(19, u64::from(k), 3)) as i64 % 3;
    let b_mod3 = (0..3).filter(|&b| cubic(0, b, 3) == lhs3).map(|b| b as u64).collect();
    let lhs9 = (4 * mod_pow(19, u64::from(k), 9)) as i64 % 9;
    let survivors = (0..9)
        .flat_map(|a| (0..9).map(move |b| (a, b)))
        .filter(|&(a, b)| cubic(a, b, 9) == lhs9)
        .map(|(a, b)| (a as u64, b as u64))
        .collect();
    (b_mod3, survivors)
}

/// Odd `(a, b)` with `|a|, |b| <= bound` and `3a^2 b - 19 b^3 = 4 * 19^k`.
pub fn p3_exhaustive(k: u32, bound: u32) -> Vec<(i64, i64)> {
    let Some(target) = 19i128.checked_pow(k).and_then(|v| v.checked_mul(4)) else {
        return Vec::new();
    };
    let bound = i64::from(bound);
    let odd = move || (-bound..=bound).filter(|v| v % 2 != 0);
    let mut out = Vec::new();
    for b in odd() {
        let b128 = i128::from(b);
        let tail = 19 * b128 * b128 * b128;
        for a in odd() {
            let a128 = i128::from(a);
            if 3 * a128 * a128 * b128 - tail == target {
                out.push((a, b));
            }
        }
    }
    out
}

/// Exponent 3 with `19 ∤ x`: imaginary part `4 * 19^k = 3a^2 b - 19 b^3`
/// (real part `4x = a^3 - 57ab^2`) has no odd solutions.
pub fn p3_case(k: u32, search_bound: u32) -> CaseVerdict {
    let (b_mod3, survivors) = p3_residue_path(k);
    let witnesses = p3_exhaustive(k, search_bound);
    let trace = vec![
        format!("mod 3: 4*19^k ≡ 1 and 3a^2 b - 19 b^3 ≡ -b, so b mod 3 ∈ {b_mod3:?}"),
        "b = 3r + 2, mod 9: 4 ≡ 6a^2 - 8, so a^2 ≡ 2 (mod 3)".to_string(),
        "squares mod 3 are {0, 1}".to_string(),
        format!("mod 9 residue scan: {} of 81 (a, b) pairs survive", survivors.len()),
        format!(
            "exhaustive search over odd |a|, |b| <= {search_bound}: {} witnesses",
            witnesses.len()
        ),
    ];
    if witnesses.is_empty() && survivors.is_empty() {
        return CaseVerdict::contradiction("a^2 ≡ 2 (mod 3) is impossible", trace);
    }
    let assignments = witnesses
        .iter()
        .enumerate()
        .map(|(i, (a, b))| (format!("witness_{i}"), format!("({a}, {b})")))
        .chain(survivors.iter().map(|(a, b)| (format!("residue_{a}_{b}"), "mod 9".to_string())))
        .collect();
    CaseVerdict { outcome: Outcome::Forced { assignments }, trace }
}

/// Which of `2s`, `2k+1`, `tn` is the least 19-adic valuation in
/// `19^(2s) X^2 + 19^(2k+1) = 4 * 19^(tn) Y^n`, and what it forces.
pub fn valuation_trichotomy(k: u32, split: &ValuationSplit, n: u32) -> Result<CaseVerdict> {
    valuation_by_exponents(k, split.s, split.t, n)
}

pub(crate) fn valuation_by_exponents(k: u32, s: u32, t: u32, n: u32) -> Result<CaseVerdict> {
    if s == 0 {
        return Err(Error::BadSplit("the 19 | x branch needs s >= 1".into()));
    }
    if n < 2 {
        return Err(Error::Precondition(format!("valuation step needs n >= 2, got {n}")));
    }
    let (two_s, odd, tn) = (2 * u64::from(s), 2 * u64::from(k) + 1, u64::from(t) * u64::from(n));
    let least = two_s.min(odd).min(tn);
    let mut trace = vec![format!("min{{2s, 2k+1, tn}} = min{{{two_s}, {odd}, {tn}}} = {least}")];

    if least == odd {
        if tn > odd {
            trace.push(format!("divide by 19^{odd}: 19^{} X^2 + 1 ≡ 1 (mod 19) but the right side ≡ 0", two_s - odd));
            return Ok(CaseVerdict::contradiction("valuation mismatch: tn must equal 2k+1", trace));
        }
        trace.push(format!("tn = 2k+1 = {odd}: 19 (19^{} X)^2 + 1 = 4 Y^{n}", two_s / 2 - u64::from(k) - 1));
        trace.push("19Z^2 + 1 = 4Y^n has no solutions with n >= 3 (known result; bounded scan in no_19z2_solutions)".into());
        return Ok(CaseVerdict::contradiction("reduces to 19Z^2 + 1 = 4Y^n", trace));
    }
    if least == tn {
        if tn < two_s {
            trace.push(format!(
                "divide by 19^{tn}: 19^{} X^2 + 19^{} ≡ 0 (mod 19) but 4Y^n ≢ 0",
                two_s - tn,
                odd - tn
            ));
            return Ok(CaseVerdict::contradiction("valuation mismatch: tn must equal 2s", trace));
        }
        trace.push(format!("tn = 2s = {two_s}: X^2 + 19^{} = 4Y^{n}", 2 * (k - s) + 1));
        let mut constraints = vec![format!("t*n = 2s = {two_s}")];
        if n % 2 == 1 {
            constraints.push(format!("{n} | s"));
        }
        return Ok(CaseVerdict { outcome: Outcome::Reduced { k: k - s, n, constraints }, trace });
    }
    trace.push(format!("divide by 19^{two_s}: X^2 ≢ 0 (mod 19) but the right side ≡ 0"));
    Ok(CaseVerdict::contradiction("valuation mismatch: tn must equal 2s", trace))
}

/// Scans `19Z^2 + 1 = 4Y^n` for `3 <= n <= n_max`, odd `Z <= z_max`.
pub fn no_19z2_solutions(n_max: u32, z_max: u64) -> CaseVerdict {
    let z_max_b = BigUint::from(z_max);
    let limit = 19u32 * &z_max_b * &z_max_b + 1u32;
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    for n in 3..=n_max {
        let mut y = BigUint::one();
        loop {
            let v = 4u32 * Pow::pow(&y, n);
            if v > limit {
                break;
            }
            checked += 1;
            let c = v - 1u32;
            if (&c % 19u32).is_zero() {
                let z2 = c / 19u32;
                let z = isqrt(&z2);
                if &z * &z == z2 {
                    witnesses.push((z, y.clone(), n));
                }
            }
            y += 1u32;
        }
    }
    let trace = vec![
        format!("scanned 3 <= n <= {n_max}, Z <= {z_max} via {checked} values of 4Y^n - 1"),
        format!("{} witnesses", witnesses.len()),
        "beyond these bounds the statement rests on the known result for 19Z^2 + 1 = 4Y^n".into(),
    ];
    if witnesses.is_empty() {
        return CaseVerdict::contradiction(
            format!("19Z^2 + 1 = 4Y^n has no solution with 3 <= n <= {n_max}, Z <= {z_max}"),
            trace,
        );
    }
    let assignments = witnesses
        .iter()
        .enumerate()
        .map(|(i, (z, y, n))| (format!("witness_{i}"), format!("(Z, Y, n) = ({z}, {y}, {n})")))
        .collect();
    CaseVerdict { outcome: Outcome::Forced { assignments }, trace }
}

/// Solves the imaginary-part identity exactly for `b = ±19^j`.
///
/// With `(x + 19^k sqrt(-19))/2 = ((a + b sqrt(-19))/2)^p`, `b S(a, b) =
/// 2^(p-1) 19^k`. For fixed `b` this is a polynomial equation in `z = a^2`
/// of degree `(p-1)/2`; its integer roots are found exactly, and each odd
/// square root `a` is expanded to recover `x`.
pub fn imaginary_part_roots(k: u32, j: u32, p: u64) -> Result<CaseVerdict> {
    require_odd_prime(p)?;
    if j > k {
        return Err(Error::Precondition(format!("b = ±19^j needs j <= k, got j = {j}, k = {k}")));
    }
    let inst = LnInstance::new(k);
    let b_abs = BigInt::from_biguint(Sign::Plus, pow19(j));
    let want_b = BigInt::from_biguint(Sign::Plus, pow19(k));
    let poly = IntPoly::new(imag_sum_poly(&(&b_abs * &b_abs), p));
    let rhs = BigInt::from(2).pow((p - 1) as u32) * BigInt::from_biguint(Sign::Plus, pow19(k - j));
    let mut trace = vec![format!(
        "b = ±19^{j}: S(z) = ±2^{} 19^{}, degree {} in z = a^2",
        p - 1,
        k - j,
        (p - 1) / 2
    )];
    let mut found = Vec::new();
    for b_sign in [1i32, -1] {
        let target = &rhs * b_sign;
        let roots = poly.shifted(&target).integer_roots();
        trace.push(format!("sign {b_sign:+}: integer roots z = {roots:?}"));
        for z in roots.into_iter().filter(|z| !z.is_negative()) {
            let a = isqrt(z.magnitude());
            if &a * &a != *z.magnitude() || a.is_even() {
                trace.push(format!("z = {z} is not the square of an odd integer"));
                continue;
            }
            let a = BigInt::from_biguint(Sign::Plus, a);
            let b = &b_abs * b_sign;
            for a in [a.clone(), -a] {
                let alpha = QuadInt19::new(a.clone(), b.clone()).expect("a and b are both odd");
                let power = alpha.pow(p);
                if power.b() != &want_b || !power.a().is_positive() {
                    continue;
                }
                let x = power.a().magnitude().clone();
                trace.push(format!("a = {a}, b = {b}: alpha^{p} = {power}"));
                if divisible_by_19(&x) {
                    trace.push(format!("19 | x = {x}; outside the 19 ∤ x branch"));
                    continue;
                }
                let sol = inst.solution(x, alpha.norm(), p as u32).expect("expansion yields a solution");
                found.push(sol);
            }
        }
    }
    found.sort();
    found.dedup();
    if found.is_empty() {
        return Ok(CaseVerdict::contradiction(format!("no odd a solves the exponent-{p} identity with b = ±19^{j}"), trace));
    }
    Ok(CaseVerdict { outcome: Outcome::Solutions { solutions: found }, trace })
}
