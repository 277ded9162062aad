//! Normalized growth exponents `house(αₙ)^(1/(Dⁿ·∏(dⁱ+d)))` and the
//! jump indices along them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::sequence::Sequence;
use crate::magnitude::MagnitudeBound;

fn as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `Dⁿ · ∏_{i=1}^{n−1} (dⁱ + d)`, exactly.
pub fn growth_denominator(n: usize, big_d: usize, d: usize) -> BigInt {
    let (bd, d) = (BigInt::from(big_d), BigInt::from(d));
    let mut acc = num_traits::pow(bd, n);
    let mut di = BigInt::one();
    for _ in 1..n {
        di *= &d;
        acc *= &di + &d;
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub degree: usize,
    pub house: MagnitudeBound,
    #[serde(serialize_with = "as_string")]
    pub denominator: BigInt,
    /// `house^(1/denominator)`; its log₂ is the growth exponent.
    pub normalized: MagnitudeBound,
    /// `n` is a jump index: the next normalized value exceeds
    /// `(1 + 1/n²)` times every earlier one.
    pub jump: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    #[serde(rename = "D")]
    pub big_d: usize,
    pub d: usize,
    pub rows: Vec<GrowthRow>,
    pub jumps: Vec<usize>,
}

pub fn growth_exponents(seq: &Sequence, big_d: usize, d: usize) -> GrowthReport {
    assert!(big_d >= 1 && d >= 1, "degrees must be positive");
    let mut rows: Vec<GrowthRow> = seq
        .terms
        .iter()
        .map(|t| {
            let denominator = growth_denominator(t.n, big_d, d);
            GrowthRow {
                n: t.n,
                degree: t.degree,
                house: t.house.clone(),
                normalized: t.house.pow_ratio(&BigInt::one(), &denominator),
                denominator,
                jump: false,
            }
        })
        .collect();
    let values: Vec<MagnitudeBound> = rows.iter().map(|r| r.normalized.clone()).collect();
    let jumps = jump_scan(&values);
    for &k in &jumps {
        rows[k - 1].jump = true;
    }
    GrowthReport { big_d, d, rows, jumps }
}

/// 1-based indices `k` with `v_{k+1} > (1 + 1/k²)·max_{n≤k} vₙ`, decided
/// strictly on the enclosures.
pub fn jump_scan(values: &[MagnitudeBound]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut running: Option<MagnitudeBound> = None;
    for k in 1..values.len() {
        let m = match running.take() {
            None => values[k - 1].clone(),
            Some(m) => m.max(&values[k - 1]),
        };
        let k2 = BigInt::from(k * k);
        let factor = MagnitudeBound::from_rational(&BigRational::new(&k2 + 1u32, k2), 256);
        if m.mul(&factor).certainly_lt(&values[k]) {
            out.push(k);
        }
        running = Some(m);
    }
    out
}
