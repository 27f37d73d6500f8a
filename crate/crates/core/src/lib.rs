//! Computational toolkit for the equation
//!
//! ```text
//! x^2 + 19^(2k+1) = 4 y^n
//! ```
//!
//! over positive integers. The crate generates the known solution families,
//! runs each step of the classical case analysis as an executable procedure
//! that returns a replayable verdict, and checks the resulting solution sets
//! against an exhaustive search.
//!
//! Module map:
//!
//! - [`model`]: equation instances, verified solutions, solution families.
//! - [`quadratic`]: integers of Q(sqrt(-19)) stored as `(a + b*sqrt(-19))/2`.
//! - [`forms`]: reduced binary quadratic forms and class numbers.
//! - [`lucas`]: Lucas and Lehmer sequences, primitive divisors.
//! - [`factor`]: trial division, Miller-Rabin and Pollard-Brent rho.
//! - [`poly`]: exact integer root isolation for integer polynomials.
//! - [`casework`]: the individual proof steps (sieves, reductions, eliminations).
//! - [`oracle`]: integer roots and the brute-force search.
//! - [`solver`]: the full decision procedure with its proof trace.
//! - [`cli`]: the `ln-kit` command-line front end.

pub mod casework;
pub mod cli;
mod dec;
pub mod error;
pub mod factor;
pub mod forms;
pub mod lucas;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod quadratic;
pub mod solver;

pub use casework::{CaseVerdict, Outcome, ValuationSplit};
pub use error::{Error, Result};
pub use forms::{class_number_imag, QuadFormClassCount};
pub use lucas::{bhv_gate, lehmer_u, lucas_u, primitive_divisor, GateRoute, LucasPair, PrimitiveDivisorVerdict};
pub use model::{FamilySpec, LnInstance, Solution};
pub use oracle::{brute_force, generalized_scan, isqrt, perfect_root, SearchWindow};
pub use quadratic::{imag_binomial_sum, qmul, qpow, QuadInt19};
pub use solver::{solve, solve_with, verify_solution_completeness, ProofTrace, SolveConfig, SolveReport};
