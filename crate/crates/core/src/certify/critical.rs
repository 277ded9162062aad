//! The critical inequality and the search for a witness `N`.
//!
//! If `γ = Σ 1/αₙ` had degree at most `D` and height at most `H`, then for
//! every `N` the bound
//! `tail(N) · (2^(N+1) · H · ∏_{n≤N} house(αₙ))^(D·d^N) ≥ 1`
//! would hold. A certificate is an `N` where the upper bound of the
//! left-hand side is below 1, computed in log₂.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::hypotheses::{CheckStatus, HypothesisReport};
use super::sequence::{Sequence, TailAssumption};
use super::tail::{tail_after, Estimator};
use super::CertifyError;
use crate::dyadic::{parse_rational, Dyadic, Round};
use crate::magnitude::{MagnitudeBound, DECIMAL_DIGITS};

#[derive(Clone, Debug)]
pub struct SearchParams {
    /// `D`, the degree being refuted.
    pub degree: usize,
    /// `d`, the cap on term degrees.
    pub d_cap: usize,
    /// Upper bound on the height.
    pub height_max: MagnitudeBound,
    /// Inclusive range of `N`.
    pub n_range: (usize, usize),
    /// Tried in this order for each `N`.
    pub estimators: Vec<Estimator>,
    /// Use `house(αₙ)^(1/deg αₙ)` in the product.
    pub pisot_salem: bool,
}

impl SearchParams {
    pub fn new(degree: usize, d_cap: usize, height_max: MagnitudeBound, n_range: (usize, usize)) -> Self {
        SearchParams { degree, d_cap, height_max, n_range, estimators: Estimator::ALL.to_vec(), pisot_salem: false }
    }
}

/// Upper bound on the log₂ of the critical left-hand side at one `N`.
#[derive(Clone, Debug)]
pub struct CriticalBound {
    pub n: usize,
    pub estimator: Estimator,
    pub lhs_log2_upper: Dyadic,
    pub tail: MagnitudeBound,
    /// Upper bound on `log₂(2^(N+1)·H·∏ house)`.
    pub base_log2_upper: Dyadic,
    /// `D·d^N`.
    pub exponent: BigInt,
    pub assumption: TailAssumption,
    /// Upper bounds on `log₂ house(αₙ)` for `n ≤ N`.
    pub house_log2_upper: Vec<Dyadic>,
}

fn house_term(t: &super::sequence::Term, pisot_salem: bool) -> Dyadic {
    let h = t.house.log2_hi().expect("nonzero house").clone();
    if pisot_salem {
        h.div_int(&BigInt::from(t.degree), 192, Round::Up)
    } else {
        h
    }
}

/// `log₂` upper bound of `tail(N)·(2^(N+1)·H·∏ house)^(D·d^N)`, with
/// `house^(1/deg)` in place of `house` when `pisot_salem` is set.
pub fn critical_lhs_upper(
    seq: &Sequence,
    n: usize,
    big_d: usize,
    d_cap: usize,
    height_max: &MagnitudeBound,
    est: Estimator,
    pisot_salem: bool,
) -> Result<CriticalBound, CertifyError> {
    if n == 0 {
        return Err(CertifyError::ZeroWitness);
    }
    if n > seq.len() {
        return Err(CertifyError::PrefixTooShort { needed: n, have: seq.len() });
    }
    let (tail, assumption) = tail_after(seq, n, est)?;
    let houses: Vec<Dyadic> = seq.terms[..n].iter().map(|t| house_term(t, pisot_salem)).collect();
    let hmax = height_max.log2_hi().cloned().unwrap_or_else(Dyadic::zero).max(Dyadic::zero());
    let mut base = &Dyadic::from_int(n as i64 + 1) + &hmax;
    for h in &houses {
        base = &base + h;
    }
    let exponent = BigInt::from(big_d) * num_traits::pow(BigInt::from(d_cap), n);
    let tail_hi = tail.log2_hi().expect("nonzero tail bound").clone();
    let lhs = &tail_hi + &base.mul_int(&exponent);
    Ok(CriticalBound {
        n,
        estimator: est,
        lhs_log2_upper: lhs,
        tail,
        base_log2_upper: base,
        exponent,
        assumption,
        house_log2_upper: houses,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HypothesisDigest {
    pub name: String,
    pub status: CheckStatus,
}

/// A proof record: the critical bound is negative at `witness_N`. All
/// bounds are decimal log₂ values rounded upward.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Certificate {
    #[serde(rename = "D")]
    pub big_d: usize,
    pub d: usize,
    #[serde(rename = "Hmax_log2_upper")]
    pub hmax_log2_upper: String,
    #[serde(rename = "witness_N")]
    pub witness_n: usize,
    pub tail_estimator: Estimator,
    pub tail_log2_upper: String,
    /// `D·d^N` as a decimal integer.
    pub exponent: String,
    pub house_log2_upper: Vec<String>,
    pub term_degrees: Vec<usize>,
    pub pisot_salem: bool,
    pub lhs_log2_upper: String,
    pub assumptions: Vec<String>,
    pub tail_assumption: TailAssumption,
    pub hypotheses: Vec<HypothesisDigest>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecheckError {
    #[error("field {0} is not a decimal number")]
    Parse(&'static str),
    #[error("{0} house bounds listed, {1} expected")]
    Length(usize, usize),
    #[error("exponent {found} does not equal D·d^N = {expected}")]
    Exponent { found: String, expected: String },
    #[error("recomputed bound {0} is not negative")]
    NotNegative(String),
}

fn dec(x: &Dyadic) -> String {
    x.to_decimal(DECIMAL_DIGITS, Round::Up)
}

impl Certificate {
    /// Recompute the critical bound from the recorded decimal values in
    /// exact rational arithmetic. Returns the recomputed value.
    pub fn recheck(&self) -> Result<BigRational, RecheckError> {
        let p = |s: &str, f: &'static str| parse_rational(s).ok_or(RecheckError::Parse(f));
        let n = self.witness_n;
        if self.house_log2_upper.len() != n || self.term_degrees.len() != n {
            return Err(RecheckError::Length(self.house_log2_upper.len(), n));
        }
        let expected = BigInt::from(self.big_d) * num_traits::pow(BigInt::from(self.d), n);
        if self.exponent != expected.to_string() {
            return Err(RecheckError::Exponent { found: self.exponent.clone(), expected: expected.to_string() });
        }
        let mut base = BigRational::from_integer(BigInt::from(n + 1)) + p(&self.hmax_log2_upper, "Hmax_log2_upper")?.max(BigRational::zero());
        for (h, &deg) in self.house_log2_upper.iter().zip(&self.term_degrees) {
            let h = p(h, "house_log2_upper")?;
            base += if self.pisot_salem { h / BigRational::from_integer(BigInt::from(deg)) } else { h };
        }
        let lhs = p(&self.tail_log2_upper, "tail_log2_upper")? + base * BigRational::from_integer(expected);
        if !lhs.is_negative() {
            return Err(RecheckError::NotNegative(lhs.to_string()));
        }
        p(&self.lhs_log2_upper, "lhs_log2_upper")?;
        Ok(lhs)
    }

    pub fn lhs(&self) -> BigRational {
        parse_rational(&self.lhs_log2_upper).expect("certificate holds decimal strings")
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FailureRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub best_estimator: Option<Estimator>,
    pub best_lhs_log2_upper: Option<String>,
    /// `∏_{n≤N} deg αₙ`, the exact degree product, for diagnostics.
    pub exact_degree_product: String,
    /// The best bound with `D·∏ deg αₙ` in place of `D·d^N`.
    pub lhs_with_exact_degrees: Option<String>,
    pub unavailable: Vec<(Estimator, String)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FailureReport {
    pub rows: Vec<FailureRow>,
    pub note: Option<String>,
}

/// Scan `N` over the range and the estimators in order; return the first
/// `(N, estimator)` whose bound is negative.
pub fn find_certificate(
    seq: &Sequence,
    params: &SearchParams,
    hyp: &HypothesisReport,
) -> Result<Certificate, CertifyError> {
    let (lo, hi) = params.n_range;
    if lo > hi {
        return Err(CertifyError::EmptyRange);
    }
    if lo == 0 {
        return Err(CertifyError::ZeroWitness);
    }
    if !hyp.all_pass() {
        let bad: Vec<String> =
            hyp.checks.iter().filter(|c| c.status != CheckStatus::Pass).map(|c| format!("{} ({:?})", c.name, c.status)).collect();
        return Err(CertifyError::HypothesesNotMet(bad.join(", ")));
    }
    let big_d = params.degree;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let mut best: Option<CriticalBound> = None;
        let mut unavailable = Vec::new();
        for &est in &params.estimators {
            match critical_lhs_upper(seq, n, big_d, params.d_cap, &params.height_max, est, params.pisot_salem) {
                Ok(b) if b.lhs_log2_upper.is_negative() => return Ok(certificate(seq, params, hyp, b)),
                Ok(b) => {
                    if best.as_ref().is_none_or(|x| b.lhs_log2_upper < x.lhs_log2_upper) {
                        best = Some(b);
                    }
                }
                Err(e) => unavailable.push((est, e.to_string())),
            }
        }
        let degs = seq.terms.iter().take(n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t.degree));
        let exact = best.as_ref().map(|b| {
            let e = BigInt::from(big_d) * &degs;
            dec(&(b.tail.log2_hi().unwrap() + &b.base_log2_upper.mul_int(&e)))
        });
        rows.push(FailureRow {
            n,
            best_estimator: best.as_ref().map(|b| b.estimator),
            best_lhs_log2_upper: best.as_ref().map(|b| dec(&b.lhs_log2_upper)),
            exact_degree_product: degs.to_string(),
            lhs_with_exact_degrees: exact,
            unavailable,
        });
    }
    let note = (big_d == 1 && params.d_cap == 1).then(|| {
        "D = d = 1: irrationality of sums of reciprocals of integers is covered by classical results of Erdős on rapidly growing integer sequences".to_string()
    });
    Err(CertifyError::NoWitness(Box::new(FailureReport { rows, note })))
}

fn certificate(seq: &Sequence, params: &SearchParams, hyp: &HypothesisReport, b: CriticalBound) -> Certificate {
    let assumptions = vec![
        format!("terms beyond n = {} are algebraic integers of degree <= {}", seq.len(), params.d_cap),
        "every term beyond the prefix has modulus equal to its house and positive real or imaginary part, so no tail of the series vanishes".to_string(),
        format!("tail: {}", b.assumption.describe()),
        "no partial sum is a conjugate of the hypothetical algebraic value of the series".to_string(),
    ];
    Certificate {
        big_d: params.degree,
        d: params.d_cap,
        hmax_log2_upper: params.height_max.log2_hi().map(dec).unwrap_or_else(|| "0".into()),
        witness_n: b.n,
        tail_estimator: b.estimator,
        tail_log2_upper: dec(b.tail.log2_hi().unwrap()),
        exponent: b.exponent.to_string(),
        house_log2_upper: b.house_log2_upper.iter().map(dec).collect(),
        term_degrees: seq.terms[..b.n].iter().map(|t| t.degree).collect(),
        pisot_salem: params.pisot_salem,
        lhs_log2_upper: dec(&b.lhs_log2_upper),
        assumptions,
        tail_assumption: b.assumption,
        hypotheses: hyp.checks.iter().map(|c| HypothesisDigest { name: c.name.to_string(), status: c.status }).collect(),
    }
}
