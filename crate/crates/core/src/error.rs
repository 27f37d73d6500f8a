use crate::model::Solution;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("family N2({t}) needs t <= k, got k = {k}")]
    FamilyParameterTooLarge { k: u32, t: u32 },

    #[error("family N7({m}) needs k = 7m, got k = {k}")]
    FamilyNeedsSevenDividesK { k: u32, m: u32 },

    #[error("({a} + {b}*sqrt(-19))/2 is not an algebraic integer: a and b differ in parity")]
    ParityMismatch { a: String, b: String },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{0} is not congruent to 3 mod 4 with p > 3")]
    NotThreeModFour(u64),

    #[error("2-adic sieve for p = {p} would need 2^{bits} residues")]
    ModulusTooLarge { p: u64, bits: u32 },

    #[error("discriminant {0} must be negative and congruent to 0 or 1 mod 4")]
    BadDiscriminant(i64),

    #[error("degenerate pair (P = {p}, Q = {q}): {reason}")]
    DegeneratePair { p: String, q: String, reason: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid valuation split: {0}")]
    BadSplit(String),

    #[error("invalid search window: {0}")]
    BadWindow(String),

    #[error("casework and exact root solve disagree for k = {k}, p = {p}")]
    CaseworkMismatch { k: u32, p: u64 },

    #[error(
        "solver and oracle disagree below x_max: {} only in solver, {} only in oracle",
        solver_only.len(),
        oracle_only.len()
    )]
    OracleMismatch {
        solver_only: Vec<Solution>,
        oracle_only: Vec<Solution>,
    },

    #[error("trace replay diverged at step {0}")]
    ReplayMismatch(usize),
}
