//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails. All comparisons are exact.

use ln_kit::casework::{mod_pow2_insoluble, no_19z2_solutions, p3_case, p3_exhaustive, p3_residue_path};
use ln_kit::model::pow19;
use ln_kit::{
    class_number_imag, generalized_scan, imag_binomial_sum, lucas_u, primitive_divisor, qpow, solve, FamilySpec,
    LnInstance, LucasPair, QuadInt19, Solution,
};
use num_bigint::{BigInt, BigUint};
use std::process::ExitCode;
use std::time::Instant;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn parts(v: &[Solution]) -> Vec<(String, String, u32)> {
    v.iter().map(|s| (s.x().to_string(), s.y().to_string(), s.n())).collect()
}

fn triples(v: &[(&str, &str, u32)]) -> Vec<(String, String, u32)> {
    v.iter().map(|(x, y, n)| (x.to_string(), y.to_string(), *n)).collect()
}

fn theorem_window(k: u32, want: &[(&str, &str, u32)]) -> Check {
    let r = solve(k, 30, 10_000_000u32).map_err(|e| e.to_string())?;
    let got = parts(&r.solutions);
    ensure(got == triples(want), format!("solve returned {got:?}"))?;
    let oracle = r.oracle.ok_or("oracle check did not run")?;
    ensure(oracle.in_window == want.len(), format!("oracle found {} solutions", oracle.in_window))?;
    ensure(r.matches_classification, "derived set differs from the classification")?;
    r.trace.replay().map_err(|e| e.to_string())?;
    Ok(format!("{got:?}, oracle agrees, {} trace steps replayed", r.trace.steps.len()))
}

fn c1() -> Check {
    theorem_window(0, &[("9", "5", 2), ("559", "5", 7)])
}

fn c2() -> Check {
    let out = theorem_window(1, &[("171", "95", 2), ("3429", "1715", 2)])?;
    Ok(format!("{out}, no n = 7 entry"))
}

fn c3() -> Check {
    let pair = LucasPair::new(1, 5).map_err(|e| e.to_string())?;
    let u7 = lucas_u(&pair, 7);
    ensure(u7 == BigInt::from(1), format!("u_7 = {u7}"))?;
    let v = primitive_divisor(&pair, 7, 1_000_000).map_err(|e| e.to_string())?;
    ensure(!v.exists && !v.is_indeterminate(), format!("n = 7: {v:?}"))?;
    for n in [3, 5, 11, 13] {
        let v = primitive_divisor(&pair, n, 1_000_000).map_err(|e| e.to_string())?;
        ensure(v.exists, format!("n = {n}: no primitive divisor reported"))?;
    }
    Ok("u_7(1, 5) = 1 without a primitive divisor; n = 3, 5, 11, 13 have one".into())
}

fn c4() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for p in [3u64, 5, 7, 11, 13, 19] {
        let scale = BigInt::from(2).pow((p - 1) as u32);
        for a in (-99i64..=99).step_by(2) {
            for b in (-99i64..=99).step_by(2) {
                let u = QuadInt19::new(a, b).unwrap();
                let big_b = qpow(&u, p).b().clone();
                let s = imag_binomial_sum(&BigInt::from(a), &BigInt::from(b), p).map_err(|e| e.to_string())?;
                ensure(BigInt::from(b) * s == &scale * big_b, format!("fails at a = {a}, b = {b}, p = {p}"))?;
                cases += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, format!("took {secs:.1} s"))?;
    Ok(format!("{cases} cases, 0 failures, {secs:.2} s"))
}

fn c5() -> Check {
    for t in 1..=6 {
        let v = mod_pow2_insoluble(19, t).map_err(|e| e.to_string())?;
        ensure(v.is_contradiction(), format!("t = {t}: {:?}", v.outcome))?;
        ensure(
            v.trace.iter().any(|l| l.contains("16 residues checked")),
            format!("t = {t}: trace does not show the 16 odd residues"),
        )?;
    }
    Ok("Contradiction for t = 1..6, 16 odd residues mod 32 each".into())
}

fn c6() -> Check {
    for k in 0..=2 {
        let witnesses = p3_exhaustive(k, 500);
        ensure(witnesses.is_empty(), format!("k = {k}: witnesses {witnesses:?}"))?;
        let (b_mod3, survivors) = p3_residue_path(k);
        ensure(b_mod3 == [2] && survivors.is_empty(), format!("k = {k}: residue path {b_mod3:?} {survivors:?}"))?;
        let v = p3_case(k, 500);
        ensure(v.is_contradiction(), format!("k = {k}: {:?}", v.outcome))?;
        ensure(
            v.trace.iter().any(|l| l.contains("a^2 ≡ 2 (mod 3)")),
            format!("k = {k}: trace lacks the mod 3 step"),
        )?;
    }
    Ok("k = 0, 1, 2: zero witnesses with |a|, |b| <= 500; a^2 ≡ 2 (mod 3) impossible".into())
}

fn c7() -> Check {
    let c = class_number_imag(-19).map_err(|e| e.to_string())?;
    ensure(c.h == 1 && c.forms == [(1, 1, 5)], format!("-19: {c:?}"))?;
    let c = class_number_imag(-7).map_err(|e| e.to_string())?;
    ensure(c.h == 1, format!("-7: {c:?}"))?;
    let c = class_number_imag(-23).map_err(|e| e.to_string())?;
    ensure(c.h == 3, format!("-23: {c:?}"))?;
    Ok("h(-19) = 1 with [(1, 1, 5)], h(-7) = 1, h(-23) = 3".into())
}

fn c8() -> Check {
    let one = BigUint::from(1u32);
    let hits = generalized_scan(&one, 1, 3, 20, &BigUint::from(100_000u32)).map_err(|e| e.to_string())?;
    ensure(hits.is_empty(), format!("D = 1: {hits:?}"))?;
    let hits = generalized_scan(&BigUint::from(2u32), 1, 3, 3, &BigUint::from(100u32)).map_err(|e| e.to_string())?;
    let got: Vec<_> = hits.iter().map(|t| (t.x.to_string(), t.y.to_string(), t.n)).collect();
    ensure(got == triples(&[("5", "3", 3)]), format!("D = 2: {got:?}"))?;
    Ok("x^2 + 1 = y^n: none; x^2 + 2 = y^3: (5, 3) only".into())
}

fn c9() -> Check {
    let mut checked = 0;
    for k in 0..=8u32 {
        let inst = LnInstance::new(k);
        let mut specs: Vec<FamilySpec> = (0..=40).map(FamilySpec::N1).collect();
        specs.push(FamilySpec::N1(u64::MAX / 4));
        specs.extend((0..=k).map(FamilySpec::N2));
        if k % 7 == 0 {
            specs.push(FamilySpec::N7(k / 7));
        }
        for spec in specs {
            let s = inst.instantiate_family(spec).map_err(|e| format!("k = {k}, {spec:?}: {e}"))?;
            ensure(inst.is_solution(s.x(), s.y(), s.n()), format!("k = {k}, {spec:?} fails"))?;
            checked += 1;
        }
    }
    let s = LnInstance::new(7).instantiate_family(FamilySpec::N7(1)).map_err(|e| e.to_string())?;
    let want = (559u32 * pow19(7), 5u32 * pow19(2), 7);
    ensure(s.clone().into_parts() == want, format!("N7(1) = {s}"))?;
    Ok(format!("{checked} members verified; k = 7 N7(1) = {s}"))
}

fn c10() -> Check {
    let v = no_19z2_solutions(20, 100_000);
    ensure(v.is_contradiction(), format!("{:?}", v.outcome))?;
    Ok("19Z^2 + 1 = 4Y^n: no solutions with 3 <= n <= 20, Z <= 10^5 (unbounded case cited)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("k = 0 reproduction with oracle cross-check", c1),
        ("k = 1 reproduction with oracle cross-check", c2),
        ("Lucas criterion for (P, Q) = (1, 5)", c3),
        ("imaginary-part identity over the full grid", c4),
        ("2-adic congruence insolubility for p = 19", c5),
        ("exponent 3 elimination", c6),
        ("class numbers", c7),
        ("generalized oracle sanity", c8),
        ("family closure", c9),
        ("bounded 19Z^2 + 1 = 4Y^n check", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{secs:.2} s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} [{secs:.2} s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
