//! Exact partial sums `γ_N = Σ_{n≤N} 1/αₙ`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::sequence::Sequence;
use super::CertifyError;
use crate::algnum::AlgebraicNumber;
use crate::heights::{sum_height_bound, weil_height};
use crate::magnitude::{Comparison, MagnitudeBound};

fn as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialSumReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "gamma")]
    pub value: AlgebraicNumber,
    pub degree: usize,
    /// `∏ deg αₙ`
    #[serde(serialize_with = "as_string")]
    pub degree_bound: BigInt,
    pub height: MagnitudeBound,
    /// `2^N·∏ H(1/αₙ)`
    pub height_bound: MagnitudeBound,
    /// `H(γ_N) ≤ height_bound`
    pub height_check: Comparison,
}

/// `γ_N` by folded exact addition of reciprocals, refusing up front when the
/// degree product exceeds `cap`.
pub fn partial_sum_exact(seq: &Sequence, n: usize, cap: usize) -> Result<PartialSumReport, CertifyError> {
    if n == 0 {
        return Err(CertifyError::ZeroWitness);
    }
    if n > seq.len() {
        return Err(CertifyError::PrefixTooShort { needed: n, have: seq.len() });
    }
    let terms = &seq.terms[..n];
    let degree_bound = terms.iter().fold(BigInt::one(), |acc, t| acc * BigInt::from(t.degree));
    if degree_bound > BigInt::from(cap) {
        return Err(CertifyError::DegreeCapExceeded { bound: degree_bound.to_string(), cap });
    }
    let recips = terms
        .iter()
        .map(|t| t.alpha.reciprocal())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CertifyError::Arithmetic(e.to_string()))?;
    let value = AlgebraicNumber::sum_all(&recips, cap).map_err(|e| CertifyError::Arithmetic(e.to_string()))?;
    let height = weil_height(&value);
    let height_bound = sum_height_bound(&recips).map_err(|e| CertifyError::Arithmetic(e.to_string()))?;
    Ok(PartialSumReport {
        n,
        degree: value.degree(),
        height_check: height.compare_le(&height_bound),
        value,
        degree_bound,
        height,
        height_bound,
    })
}
