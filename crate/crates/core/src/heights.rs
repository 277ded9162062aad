//! Mahler measure, Weil height and house from certified root enclosures,
//! with the classical bounds relating them.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algnum::AlgebraicNumber;
use crate::magnitude::{Comparison, MagnitudeBound};
use crate::roots::modulus_prec;

/// Working precision (bits) for height enclosures.
pub const DEFAULT_PREC: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("not an algebraic integer: leading coefficient {0}")]
    NotAlgebraicInteger(BigInt),
    #[error("the two numbers are equal")]
    EqualNumbers,
    #[error("the two numbers are distinct conjugates")]
    Conjugates,
    #[error("empty list")]
    Empty,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub mahler: MagnitudeBound,
    pub height: MagnitudeBound,
    pub house: MagnitudeBound,
    pub degree: usize,
    pub is_algebraic_integer: bool,
}

/// `|a_d| · ∏ max(1, |αᵢ|)`. The value 0 (minimal polynomial `x`) has measure 1.
pub fn mahler(a: &AlgebraicNumber) -> MagnitudeBound {
    mahler_prec(a, DEFAULT_PREC)
}

pub fn mahler_prec(a: &AlgebraicNumber, prec: u32) -> MagnitudeBound {
    let (conj, _) = a.conjugates(prec + 8);
    conj.iter().fold(MagnitudeBound::from_bigint(&a.minpoly().leading(), prec), |m, d| {
        m.mul(&modulus_prec(d, prec + 16).max_one())
    })
}

/// `M(α)^(1/d)`.
pub fn weil_height(a: &AlgebraicNumber) -> MagnitudeBound {
    weil_height_prec(a, DEFAULT_PREC)
}

pub fn weil_height_prec(a: &AlgebraicNumber, prec: u32) -> MagnitudeBound {
    mahler_prec(a, prec).root(a.degree())
}

/// Largest modulus among the conjugates.
pub fn house(a: &AlgebraicNumber) -> MagnitudeBound {
    house_prec(a, DEFAULT_PREC)
}

pub fn house_prec(a: &AlgebraicNumber, prec: u32) -> MagnitudeBound {
    let (conj, _) = a.conjugates(prec + 8);
    conj.iter().map(|d| modulus_prec(d, prec + 16)).reduce(|x, y| x.max(&y)).expect("nonconstant minimal polynomial")
}

pub fn report(a: &AlgebraicNumber) -> HeightReport {
    report_prec(a, DEFAULT_PREC)
}

pub fn report_prec(a: &AlgebraicNumber, prec: u32) -> HeightReport {
    let (conj, _) = a.conjugates(prec + 8);
    let moduli: Vec<MagnitudeBound> = conj.iter().map(|d| modulus_prec(d, prec + 16)).collect();
    let mahler = moduli
        .iter()
        .fold(MagnitudeBound::from_bigint(&a.minpoly().leading(), prec), |m, x| m.mul(&x.max_one()));
    let house = moduli.iter().cloned().reduce(|x, y| x.max(&y)).expect("nonconstant minimal polynomial");
    HeightReport {
        height: mahler.root(a.degree()),
        mahler,
        house,
        degree: a.degree(),
        is_algebraic_integer: a.is_algebraic_integer(),
    }
}

/// Outcome of checking `M^(1/d) ≤ house ≤ M` on enclosures.
#[derive(Clone, Debug, Serialize)]
pub struct HouseChain {
    /// `M^(1/d) ≤ house`
    pub lower: Comparison,
    /// `house ≤ M`
    pub upper: Comparison,
    pub left_tight: bool,
    pub right_tight: bool,
    /// Neither inequality is refuted by the enclosures.
    pub holds: bool,
    pub report: HeightReport,
}

pub fn check_house_chain(a: &AlgebraicNumber) -> Result<HouseChain, HeightError> {
    check_house_chain_prec(a, DEFAULT_PREC)
}

pub fn check_house_chain_prec(a: &AlgebraicNumber, prec: u32) -> Result<HouseChain, HeightError> {
    if !a.is_algebraic_integer() {
        return Err(HeightError::NotAlgebraicInteger(a.minpoly().leading()));
    }
    let r = report_prec(a, prec);
    let lower = r.height.compare_le(&r.house);
    let upper = r.house.compare_le(&r.mahler);
    Ok(HouseChain {
        lower,
        upper,
        left_tight: lower == Comparison::Tight,
        right_tight: upper == Comparison::Tight,
        holds: lower != Comparison::Violated && upper != Comparison::Violated,
        report: r,
    })
}

/// Enclosure of `1 / (2^(d_a·d_b) · M(a)^(d_b) · M(b)^(d_a))`, a lower bound
/// on `|a − b|` when `a` and `b` are not conjugate.
pub fn liouville_gap(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<MagnitudeBound, HeightError> {
    if a.minpoly() == b.minpoly() {
        return Err(if a.equals(b) { HeightError::EqualNumbers } else { HeightError::Conjugates });
    }
    let (da, db) = (a.degree(), b.degree());
    let denom = MagnitudeBound::pow2((da * db) as i64)
        .mul(&mahler(a).pow_int(&BigInt::from(db)))
        .mul(&mahler(b).pow_int(&BigInt::from(da)));
    Ok(denom.recip())
}

/// Enclosure of `|a − b|`, refined until its lower bound is positive (or the
/// numbers are equal).
pub fn distance(a: &AlgebraicNumber, b: &AlgebraicNumber) -> MagnitudeBound {
    let mut bits = 64;
    loop {
        let d = a.enclosure_rel(bits).sum(&b.enclosure_rel(bits).neg());
        let m = modulus_prec(&d, bits + 16);
        if !m.lower_is_zero() || m.is_exact_zero() || bits >= 1 << 14 {
            return m;
        }
        bits *= 2;
    }
}

/// `2^n · ∏ H(βᵢ)`.
pub fn sum_height_bound(list: &[AlgebraicNumber]) -> Result<MagnitudeBound, HeightError> {
    if list.is_empty() {
        return Err(HeightError::Empty);
    }
    Ok(list.iter().fold(MagnitudeBound::pow2(list.len() as i64), |acc, b| acc.mul(&weil_height(b))))
}

/// `∏ deg βᵢ`.
pub fn sum_degree_bound(list: &[AlgebraicNumber]) -> Result<BigInt, HeightError> {
    if list.is_empty() {
        return Err(HeightError::Empty);
    }
    Ok(list.iter().fold(BigInt::one(), |acc, b| acc * BigInt::from(b.degree())))
}
