//! Transcendence certificates for `Σ 1/αₙ`: hypothesis checks, growth
//! exponents, tail estimators and the search for a witness `N`.

mod critical;
mod formula;
mod growth;
mod hypotheses;
mod partial;
mod sequence;
mod tail;

use thiserror::Error;

pub use critical::{
    critical_lhs_upper, find_certificate, CriticalBound, Certificate, FailureReport, FailureRow, HypothesisDigest,
    RecheckError, SearchParams,
};
pub use formula::eval_formula;
pub use growth::{growth_denominator, growth_exponents, jump_scan, GrowthReport, GrowthRow};
pub use hypotheses::{hypothesis_check, CheckResult, CheckStatus, HypothesisReport, CHECK_NAMES};
pub use partial::{partial_sum_exact, PartialSumReport};
pub use sequence::{Family, Selector, Sequence, SequenceSpec, TailAssumption, TailKind, Term, TermSource, SELECTOR_NAME};
pub use tail::{tail_after, tail_bound_log, tail_bound_polynomial, tail_bound_ratio, Estimator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("malformed sequence spec: {0}")]
    Spec(String),
    #[error("term {n}: {reason}")]
    Term { n: usize, reason: String },
    #[error("no {0} tail assumption declared")]
    AssumptionNotDeclared(&'static str),
    #[error("{kind} assumption fails at n = {n}")]
    AssumptionViolated { kind: &'static str, n: usize },
    #[error("{kind} assumption could not be verified at n = {n}")]
    AssumptionUnverified { kind: &'static str, n: usize },
    #[error("{kind} assumption starts at n = {from}, after the tail start {start}")]
    AssumptionTooLate { kind: &'static str, from: usize, start: usize },
    #[error("prefix too short: term {needed} needed, {have} available")]
    PrefixTooShort { needed: usize, have: usize },
    #[error("empty N range")]
    EmptyRange,
    #[error("N must be at least 1")]
    ZeroWitness,
    #[error("hypotheses not established: {0}")]
    HypothesesNotMet(String),
    #[error("no witness N found in range")]
    NoWitness(Box<FailureReport>),
    #[error("degree bound {bound} exceeds the cap {cap}")]
    DegreeCapExceeded { bound: String, cap: usize },
    #[error("exact arithmetic failed: {0}")]
    Arithmetic(String),
}
