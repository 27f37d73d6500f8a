//! The decision procedure for one instance.
//!
//! Dispatch is on the exponent and on whether 19 divides `x`:
//!
//! - `19 ∤ x`, `n = 2m`: [`even_case`].
//! - `19 ∤ x`, `n = p` odd prime: `b = ±19^j` with `j <= k`. For `j < k` the
//!   mod-19 and 2-adic sieves; for `j = k` the Lucas gate, then the defect
//!   check by exact expansion. `p = 3` goes to the cubic elimination.
//! - `19 ∤ x`, odd composite `n`: reduce to the least prime factor.
//! - `19 | x`: the valuation trichotomy, recursing into `k - s`.
//!
//! Every prime branch is also solved exactly through the imaginary-part
//! polynomial; a disagreement with the sieves is a hard error. The result is
//! compared with the brute-force oracle inside `x <= x_max`.

use crate::casework::{
    even_case, imaginary_part_roots, mod19_forces_p, mod_pow2_insoluble, no_19z2_solutions, p3_case,
    valuation_by_exponents, CaseVerdict, Outcome,
};
use crate::error::{Error, Result};
use crate::factor::least_prime_factor;
use crate::lucas::{bhv_gate, lucas_u, primitive_divisor, GateRoute, LucasPair};
use crate::model::{LnInstance, Solution};
use crate::oracle::{brute_force, perfect_root, SearchWindow};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// One proof step: the procedure and its inputs. Running it again must give
/// the recorded verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "procedure", content = "inputs", rename_all = "snake_case")]
pub enum Procedure {
    EvenCase { k: u32, m: u32 },
    ReduceComposite { k: u32, n: u32, p: u32 },
    BhvGate { p: u64 },
    Mod19ForcesP { k: u32, t: u32, p: u64 },
    ModPow2Insoluble { p: u64, t: u32 },
    P3Case { k: u32, bound: u32 },
    LucasU { p: i64, q: i64, n: u64 },
    PrimitiveDivisor { p: i64, q: i64, n: u64, budget: u64 },
    ImaginaryPartRoots { k: u32, j: u32, p: u64 },
    ValuationTrichotomy { k: u32, s: u32, t: u32, n: u32 },
    No19z2Solutions { n_max: u32, z_max: u64 },
}

impl Procedure {
    pub fn name(&self) -> &'static str {
        match self {
            Procedure::EvenCase { .. } => "even_case",
            Procedure::ReduceComposite { .. } => "reduce_composite",
            Procedure::BhvGate { .. } => "bhv_gate",
            Procedure::Mod19ForcesP { .. } => "mod19_forces_p",
            Procedure::ModPow2Insoluble { .. } => "mod_pow2_insoluble",
            Procedure::P3Case { .. } => "p3_case",
            Procedure::LucasU { .. } => "lucas_u",
            Procedure::PrimitiveDivisor { .. } => "primitive_divisor",
            Procedure::ImaginaryPartRoots { .. } => "imaginary_part_roots",
            Procedure::ValuationTrichotomy { .. } => "valuation_trichotomy",
            Procedure::No19z2Solutions { .. } => "no_19z2_solutions",
        }
    }

    pub fn run(&self) -> Result<CaseVerdict> {
        match *self {
            Procedure::EvenCase { k, m } => even_case(k, m),
            Procedure::ReduceComposite { k, n, p } => reduce_composite(k, n, p),
            Procedure::BhvGate { p } => {
                let route = bhv_gate(p)?;
                let trace = vec![format!("bhv_gate({p}) = {route}")];
                Ok(match route {
                    GateRoute::AlwaysPrimitive => CaseVerdict {
                        outcome: Outcome::Contradiction {
                            reason: format!("AlwaysPrimitive: u_{p} has a primitive divisor, so u_{p} ≠ ±1"),
                        },
                        trace,
                    },
                    route => forced([("route", route.to_string())], trace),
                })
            }
            Procedure::Mod19ForcesP { k, t, p } => mod19_forces_p(k, t, p),
            Procedure::ModPow2Insoluble { p, t } => mod_pow2_insoluble(p, t),
            Procedure::P3Case { k, bound } => Ok(p3_case(k, bound)),
            Procedure::LucasU { p, q, n } => {
                let pair = LucasPair::new(p, q)?;
                let terms = pair.terms(n);
                let u_n = lucas_u(&pair, n);
                let trace = vec![format!(
                    "u_0..u_{n} = [{}]",
                    terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                )];
                Ok(forced([("u_n", u_n.to_string())], trace))
            }
            Procedure::PrimitiveDivisor { p, q, n, budget } => {
                let v = primitive_divisor(&LucasPair::new(p, q)?, n, budget)?;
                let trace = v
                    .obstructions
                    .iter()
                    .map(|o| format!("{} divides {}", o.prime, o.absorbed_by))
                    .collect();
                let mut a = BTreeMap::from([
                    ("exists".to_string(), v.exists.to_string()),
                    ("indeterminate".to_string(), v.is_indeterminate().to_string()),
                ]);
                if let Some(w) = &v.witness {
                    a.insert("witness".into(), w.to_string());
                }
                Ok(CaseVerdict { outcome: Outcome::Forced { assignments: a }, trace })
            }
            Procedure::ImaginaryPartRoots { k, j, p } => imaginary_part_roots(k, j, p),
            Procedure::ValuationTrichotomy { k, s, t, n } => valuation_by_exponents(k, s, t, n),
            Procedure::No19z2Solutions { n_max, z_max } => Ok(no_19z2_solutions(n_max, z_max)),
        }
    }
}

fn forced<const N: usize>(pairs: [(&str, String); N], trace: Vec<String>) -> CaseVerdict {
    let assignments = pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    CaseVerdict { outcome: Outcome::Forced { assignments }, trace }
}

/// Every `19 ∤ x` solution with prime exponent `p`, by exact expansion over
/// all `b = ±19^j`.
fn exact_prime_solutions(k: u32, p: u64) -> Result<Vec<Solution>> {
    let mut out = BTreeSet::new();
    for j in 0..=k {
        out.extend(imaginary_part_roots(k, j, p)?.solutions().iter().cloned());
    }
    Ok(out.into_iter().collect())
}

/// Odd composite `n` with least prime factor `p`: a solution `(x, y, n)` is
/// the solution `(x, y^(n/p), p)`, so keep the exponent-`p` solutions whose
/// `y` is an `(n/p)`-th power.
fn reduce_composite(k: u32, n: u32, p: u32) -> Result<CaseVerdict> {
    if p < 3 || !n.is_multiple_of(p) || n == p || least_prime_factor(u64::from(n)) != Some(u64::from(p)) {
        return Err(Error::Precondition(format!("{p} is not the least prime factor of the composite {n}")));
    }
    let inst = LnInstance::new(k);
    let e = n / p;
    let base = exact_prime_solutions(k, u64::from(p))?;
    let mut trace = vec![format!("n = {n} = {p} * {e}: (x, y, {n}) solves iff (x, y^{e}, {p}) does")];
    let mut found = Vec::new();
    for s in &base {
        match perfect_root(s.y(), e) {
            Some(r) => {
                trace.push(format!("y = {} = {r}^{e}", s.y()));
                found.extend(inst.solution(s.x().clone(), r, n));
            }
            None => trace.push(format!("y = {} is not a perfect {e}-th power", s.y())),
        }
    }
    if found.is_empty() {
        return Ok(CaseVerdict {
            outcome: Outcome::Contradiction {
                reason: format!("no exponent-{p} solution has y a perfect {e}-th power"),
            },
            trace,
        });
    }
    Ok(CaseVerdict { outcome: Outcome::Solutions { solutions: found }, trace })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Which branch the step belongs to, e.g. `k = 0, n = 7, 19 ∤ x`.
    pub context: String,
    pub step: Procedure,
    pub verdict: CaseVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub k: u32,
    pub n_max: u32,
    pub steps: Vec<TraceStep>,
    /// Final solution set, sorted by `(n, y)`.
    pub solutions: Vec<Solution>,
}

impl ProofTrace {
    /// Re-runs every step and checks the verdicts match exactly.
    pub fn replay(&self) -> Result<()> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.step.run()? != s.verdict {
                return Err(Error::ReplayMismatch(i));
            }
        }
        Ok(())
    }

    pub fn steps_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a TraceStep> + 'a {
        self.steps.iter().filter(move |s| s.step.name() == name)
    }

    /// Number of steps per procedure name.
    pub fn summary(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for s in &self.steps {
            *out.entry(s.step.name()).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    #[serde(with = "crate::dec")]
    pub x_max: BigUint,
    /// Solutions found by the oracle (all of them also found by the solver).
    pub in_window: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub k: u32,
    pub n_max: u32,
    pub solutions: Vec<Solution>,
    /// `true` when the derived set equals the closed-form classification.
    pub matches_classification: bool,
    pub oracle: Option<OracleCheck>,
    pub trace: ProofTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub k: u32,
    pub n_max: u32,
    /// `None` skips the brute-force comparison.
    pub oracle_x_max: Option<BigUint>,
    pub p3_bound: u32,
    pub factoring_budget: u64,
    /// Bounds for the bounded `19Z^2 + 1 = 4Y^n` scan.
    pub le_n_max: u32,
    pub le_z_max: u64,
}

impl SolveConfig {
    pub fn new(k: u32, n_max: u32) -> Self {
        Self {
            k,
            n_max,
            oracle_x_max: Some(BigUint::from(10_000_000u32)),
            p3_bound: 500,
            factoring_budget: 1_000_000,
            le_n_max: 20,
            le_z_max: 100_000,
        }
    }
}

/// Solves the instance `k` for `2 <= n <= n_max` and checks the result against
/// the oracle with `x <= oracle_x_max`.
pub fn solve(k: u32, n_max: u32, oracle_x_max: impl Into<BigUint>) -> Result<SolveReport> {
    let cfg = SolveConfig { oracle_x_max: Some(oracle_x_max.into()), ..SolveConfig::new(k, n_max) };
    solve_with(&cfg)
}

pub fn solve_with(cfg: &SolveConfig) -> Result<SolveReport> {
    if cfg.n_max < 2 {
        return Err(Error::Precondition(format!("n_max must be >= 2, got {}", cfg.n_max)));
    }
    let window = match &cfg.oracle_x_max {
        Some(x) => Some(SearchWindow::new(cfg.k, 2, cfg.n_max, x.clone())?),
        None => None,
    };
    let (derived, oracle) = rayon::join(
        || Pipeline::new(cfg).run(),
        || window.as_ref().map(brute_force).transpose(),
    );
    let trace = derived?;
    let oracle = oracle?;

    let oracle = match (window, oracle) {
        (Some(w), Some(found)) => {
            let mine: BTreeSet<&Solution> = trace.solutions.iter().filter(|s| w.contains(s)).collect();
            let theirs: BTreeSet<&Solution> = found.iter().collect();
            if mine != theirs {
                return Err(Error::OracleMismatch {
                    solver_only: mine.difference(&theirs).map(|s| (*s).clone()).collect(),
                    oracle_only: theirs.difference(&mine).map(|s| (*s).clone()).collect(),
                });
            }
            Some(OracleCheck { x_max: w.x_max, in_window: found.len() })
        }
        _ => None,
    };
    let classification = LnInstance::new(cfg.k).theorem_solution_set(cfg.n_max, None);
    Ok(SolveReport {
        k: cfg.k,
        n_max: cfg.n_max,
        solutions: trace.solutions.clone(),
        matches_classification: classification == trace.solutions,
        oracle,
        trace,
    })
}

struct Pipeline<'a> {
    cfg: &'a SolveConfig,
    steps: Vec<TraceStep>,
    coprime_cache: HashMap<(u32, u32), Vec<Solution>>,
    prime_cache: HashMap<(u32, u64), Vec<Solution>>,
    le_recorded: bool,
}

impl<'a> Pipeline<'a> {
    fn new(cfg: &'a SolveConfig) -> Self {
        Self {
            cfg,
            steps: Vec::new(),
            coprime_cache: HashMap::new(),
            prime_cache: HashMap::new(),
            le_recorded: false,
        }
    }

    fn run(mut self) -> Result<ProofTrace> {
        let k = self.cfg.k;
        let mut all = BTreeSet::new();
        for n in 2..=self.cfg.n_max {
            all.extend(self.coprime(k, n)?);
            all.extend(self.divisible(k, n)?);
        }
        Ok(ProofTrace { k, n_max: self.cfg.n_max, steps: self.steps, solutions: all.into_iter().collect() })
    }

    fn record(&mut self, context: &str, step: Procedure) -> Result<CaseVerdict> {
        let verdict = step.run()?;
        self.steps.push(TraceStep { context: context.to_string(), step, verdict: verdict.clone() });
        Ok(verdict)
    }

    /// Solutions with `19 ∤ x` and exponent exactly `n`.
    fn coprime(&mut self, k: u32, n: u32) -> Result<Vec<Solution>> {
        if let Some(hit) = self.coprime_cache.get(&(k, n)) {
            return Ok(hit.clone());
        }
        let ctx = format!("k = {k}, n = {n}, 19 ∤ x");
        let out = if n.is_multiple_of(2) {
            self.record(&ctx, Procedure::EvenCase { k, m: n / 2 })?.solutions().to_vec()
        } else {
            let p = least_prime_factor(u64::from(n)).expect("n >= 3") as u32;
            let base = self.prime(k, u64::from(p))?;
            if p == n {
                base
            } else {
                let v = self.record(&ctx, Procedure::ReduceComposite { k, n, p })?;
                let want: Vec<Solution> = base
                    .iter()
                    .filter_map(|s| {
                        let r = perfect_root(s.y(), n / p)?;
                        LnInstance::new(k).solution(s.x().clone(), r, n)
                    })
                    .collect();
                if v.solutions() != want.as_slice() {
                    return Err(Error::CaseworkMismatch { k, p: u64::from(n) });
                }
                want
            }
        };
        self.coprime_cache.insert((k, n), out.clone());
        Ok(out)
    }

    fn prime(&mut self, k: u32, p: u64) -> Result<Vec<Solution>> {
        if let Some(hit) = self.prime_cache.get(&(k, p)) {
            return Ok(hit.clone());
        }
        let ctx = format!("k = {k}, n = {p}, 19 ∤ x");
        let mut derived: BTreeSet<Solution> = BTreeSet::new();
        let mut exact_done = BTreeSet::new();
        if p == 3 {
            let v = self.record(&ctx, Procedure::P3Case { k, bound: self.cfg.p3_bound })?;
            if !v.is_contradiction() {
                return Err(Error::CaseworkMismatch { k, p });
            }
        } else {
            // b = ±19^j with j < k: the 19-adic sieve, then the 2-adic one.
            for j in 0..k {
                let ctx = format!("{ctx}, b = ±19^{j}");
                let v = self.record(&ctx, Procedure::Mod19ForcesP { k, t: j, p })?;
                if !v.is_contradiction() {
                    let v = self.record(&ctx, Procedure::ModPow2Insoluble { p, t: j })?;
                    if !v.is_contradiction() {
                        return Err(Error::CaseworkMismatch { k, p });
                    }
                }
            }
            // b = ±19^k: u_p = ±1 for the Lucas pair ((a ± 19^k sqrt(-19))/2).
            let ctx = format!("{ctx}, b = ±19^{k}");
            let gate = self.record(&ctx, Procedure::BhvGate { p })?;
            if !gate.is_contradiction() {
                if p == 7 && k == 0 {
                    // The defective pair (1 ± sqrt(-19))/2: P = 1, Q = 5.
                    self.record(&ctx, Procedure::LucasU { p: 1, q: 5, n: 7 })?;
                    let budget = self.cfg.factoring_budget;
                    self.record(&ctx, Procedure::PrimitiveDivisor { p: 1, q: 5, n: 7, budget })?;
                }
                let v = self.record(&ctx, Procedure::ImaginaryPartRoots { k, j: k, p })?;
                derived.extend(v.solutions().iter().cloned());
                exact_done.insert(k);
            }
        }

        // Independent exact solve over every b = ±19^j.
        let mut exact: BTreeSet<Solution> = BTreeSet::new();
        for j in 0..=k {
            let v = if exact_done.contains(&j) {
                imaginary_part_roots(k, j, p)?
            } else {
                self.record(&format!("{ctx}, b = ±19^{j}, exact"), Procedure::ImaginaryPartRoots { k, j, p })?
            };
            exact.extend(v.solutions().iter().cloned());
        }
        if exact != derived {
            return Err(Error::CaseworkMismatch { k, p });
        }
        let out: Vec<Solution> = derived.into_iter().collect();
        self.prime_cache.insert((k, p), out.clone());
        Ok(out)
    }

    /// Solutions with `19 | x` and exponent `n`.
    fn divisible(&mut self, k: u32, n: u32) -> Result<Vec<Solution>> {
        let ctx = format!("k = {k}, n = {n}, 19 | x");
        let inst = LnInstance::new(k);
        let mut out = Vec::new();
        // Only tn = 2s <= 2k survives; every other split dies mod 19.
        for s in 1..=k {
            if (2 * s) % n != 0 {
                continue;
            }
            let t = 2 * s / n;
            let v = self.record(&ctx, Procedure::ValuationTrichotomy { k, s, t, n })?;
            let Outcome::Reduced { k: k2, .. } = v.outcome else {
                return Err(Error::CaseworkMismatch { k, p: u64::from(n) });
            };
            for sol in self.coprime(k2, n)? {
                let (x, y) = sol.scaled(s, t);
                let scaled = inst.solution(x, y, n).ok_or(Error::CaseworkMismatch { k, p: u64::from(n) })?;
                out.push(scaled);
            }
        }
        // tn = 2k+1 <= 2s: the 19Z^2 + 1 = 4Y^n branch.
        if n % 2 == 1 && (2 * k + 1).is_multiple_of(n) {
            let t = (2 * k + 1) / n;
            self.record(&ctx, Procedure::ValuationTrichotomy { k, s: k + 1, t, n })?;
            if !self.le_recorded {
                self.le_recorded = true;
                let (n_max, z_max) = (self.cfg.le_n_max, self.cfg.le_z_max);
                self.record(&ctx, Procedure::No19z2Solutions { n_max, z_max })?;
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub k: u32,
    pub window: SearchWindow,
    pub complete: bool,
    pub oracle: Vec<Solution>,
    pub classification: Vec<Solution>,
}

/// Compares the oracle on `window` (applied to instance `k`) with the closed
/// form classification restricted to the same window.
pub fn verify_solution_completeness(k: u32, window: &SearchWindow) -> Result<CompletenessReport> {
    let window = SearchWindow { k, ..window.clone() };
    let oracle = brute_force(&window)?;
    let classification: Vec<Solution> = LnInstance::new(k)
        .theorem_solution_set(window.n_max, None)
        .into_iter()
        .filter(|s| window.contains(s))
        .collect();
    Ok(CompletenessReport { k, complete: oracle == classification, window, oracle, classification })
}
