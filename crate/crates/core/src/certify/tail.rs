//! Upper bounds on `Σ_{n>N} 1/|αₙ|` from declared tail assumptions, each
//! checked against the computed prefix before use.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::hypotheses::{decide_refining, floor_decision, increase_decision, Decision};
use super::sequence::{Sequence, TailAssumption, TailKind, Term};
use super::CertifyError;
use crate::dyadic::Dyadic;
use crate::interval::{ln2, Interval};
use crate::magnitude::{MagnitudeBound, LOG_PREC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    /// From a polynomial floor `n^(1+ε)`.
    Polynomial,
    /// From a geometric ratio floor.
    Ratio,
    /// From the floor `2ⁿ`.
    Log,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [Estimator::Ratio, Estimator::Log, Estimator::Polynomial];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::Polynomial => "polynomial",
            Estimator::Ratio => "ratio",
            Estimator::Log => "log",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Estimator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "polynomial" | "poly" => Ok(Estimator::Polynomial),
            "ratio" | "geometric" => Ok(Estimator::Ratio),
            "log" | "exponential" => Ok(Estimator::Log),
            other => Err(format!("unknown estimator {other:?} (expected polynomial, ratio or log)")),
        }
    }
}

fn house(t: &Term) -> &MagnitudeBound {
    &t.house
}

fn need(seq: &Sequence, n: usize) -> Result<&Term, CertifyError> {
    seq.term(n).ok_or(CertifyError::PrefixTooShort { needed: n, have: seq.len() })
}

/// Declared assumptions of the matching kind that start no later than `start`.
fn declared<'a>(
    seq: &'a Sequence,
    name: &'static str,
    start: usize,
    pick: impl Fn(&TailKind) -> bool,
) -> Result<Vec<&'a TailAssumption>, CertifyError> {
    let all: Vec<&TailAssumption> = seq.tails().iter().filter(|t| pick(&t.kind)).collect();
    if all.is_empty() {
        return Err(CertifyError::AssumptionNotDeclared(name));
    }
    let ok: Vec<_> = all.iter().copied().filter(|t| t.from_index <= start).collect();
    if ok.is_empty() {
        return Err(CertifyError::AssumptionTooLate { kind: name, from: all[0].from_index, start });
    }
    Ok(ok)
}

/// The houses increase on the prefix from index `from`.
fn verify_increasing(seq: &Sequence, from: usize, name: &'static str) -> Result<(), CertifyError> {
    for n in from.max(1)..seq.len() {
        let (a, b) = (&seq.terms[n - 1], &seq.terms[n]);
        match decide_refining(&[a, b], |t| increase_decision(t[0], t[1], house)) {
            Decision::Yes => {}
            Decision::No => return Err(CertifyError::AssumptionViolated { kind: name, n: n + 1 }),
            Decision::Unknown => return Err(CertifyError::AssumptionUnverified { kind: name, n: n + 1 }),
        }
    }
    Ok(())
}

fn verify_each(
    seq: &Sequence,
    from: usize,
    name: &'static str,
    f: impl Fn(&[&Term]) -> Decision + Copy,
) -> Result<(), CertifyError> {
    for t in seq.terms.iter().skip(from.max(1) - 1) {
        match decide_refining(&[t], f) {
            Decision::Yes => {}
            Decision::No => return Err(CertifyError::AssumptionViolated { kind: name, n: t.n }),
            Decision::Unknown => return Err(CertifyError::AssumptionUnverified { kind: name, n: t.n }),
        }
    }
    Ok(())
}

/// Try each candidate assumption in turn; the first that verifies wins.
fn first_verified<'a, T>(
    cands: Vec<&'a TailAssumption>,
    mut f: impl FnMut(&'a TailAssumption) -> Result<T, CertifyError>,
) -> Result<(T, &'a TailAssumption), CertifyError> {
    let mut last = None;
    for c in cands {
        match f(c) {
            Ok(v) => return Ok((v, c)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one candidate"))
}

/// `Σ_{n≥k} 1/|αₙ| < (2 + 1/ε) / house(α_k)^(ε/(1+ε))` under a declared
/// polynomial floor with exponent at least `eps`, starting at or before `k`.
pub fn tail_bound_polynomial(seq: &Sequence, k: usize, eps: &BigRational) -> Result<MagnitudeBound, CertifyError> {
    polynomial_with(seq, k, Some(eps)).map(|(b, _)| b)
}

fn polynomial_with(
    seq: &Sequence,
    k: usize,
    eps: Option<&BigRational>,
) -> Result<(MagnitudeBound, TailAssumption), CertifyError> {
    const NAME: &str = "polynomial_floor";
    if k == 0 {
        return Err(CertifyError::ZeroWitness);
    }
    let hk = need(seq, k)?;
    let cands = declared(seq, NAME, k, |t| match (t, eps) {
        (TailKind::PolynomialFloor { epsilon }, Some(e)) => epsilon >= e,
        (TailKind::PolynomialFloor { .. }, None) => true,
        _ => false,
    })?;
    let (_, a) = first_verified(cands, |a| {
        let TailKind::PolynomialFloor { epsilon } = &a.kind else { unreachable!() };
        verify_each(seq, a.from_index, NAME, |t| floor_decision(t[0], &t[0].house, t[0].n, epsilon))?;
        verify_increasing(seq, a.from_index, NAME)
    })?;
    let eps = match eps {
        Some(e) => e.clone(),
        None => match &a.kind {
            TailKind::PolynomialFloor { epsilon } => epsilon.clone(),
            _ => unreachable!(),
        },
    };
    let (p, q) = (eps.numer().clone(), eps.denom().clone());
    // 2 + 1/ε = (2p + q)/p, exponent ε/(1+ε) = p/(p+q)
    let c = MagnitudeBound::from_rational(&BigRational::new(BigInt::from(2) * &p + &q, p.clone()), LOG_PREC);
    let bound = c.div(&hk.house.pow_ratio(&p, &(&p + &q)));
    Ok((bound, a.clone()))
}

/// `Σ_{n>k} 1/|αₙ| ≤ (ρ/(ρ−1)) / house(α_{k+1})` under a declared geometric
/// floor starting at or before `k + 1`.
pub fn tail_bound_ratio(seq: &Sequence, k: usize) -> Result<MagnitudeBound, CertifyError> {
    ratio_with(seq, k).map(|(b, _)| b)
}

fn ratio_with(seq: &Sequence, k: usize) -> Result<(MagnitudeBound, TailAssumption), CertifyError> {
    const NAME: &str = "geometric_floor";
    let h = need(seq, k + 1)?;
    let cands = declared(seq, NAME, k + 1, |t| matches!(t, TailKind::GeometricFloor { .. }))?;
    let (rho, a) = first_verified(cands, |a| {
        let TailKind::GeometricFloor { ratio } = &a.kind else { unreachable!() };
        let r = MagnitudeBound::from_rational(ratio, LOG_PREC);
        for n in a.from_index.max(1)..seq.len() {
            let (x, y) = (&seq.terms[n - 1], &seq.terms[n]);
            let d = decide_refining(&[x, y], |t| {
                if let (Some(a), Some(b)) = (t[0].alpha.as_rational(), t[1].alpha.as_rational()) {
                    return if b.abs() >= ratio * a.abs() { Decision::Yes } else { Decision::No };
                }
                let scaled = t[0].house.mul(&r);
                if scaled.certainly_le(&t[1].house) {
                    Decision::Yes
                } else if t[1].house.certainly_lt(&scaled) {
                    Decision::No
                } else {
                    Decision::Unknown
                }
            });
            match d {
                Decision::Yes => {}
                Decision::No => return Err(CertifyError::AssumptionViolated { kind: NAME, n: n + 1 }),
                Decision::Unknown => return Err(CertifyError::AssumptionUnverified { kind: NAME, n: n + 1 }),
            }
        }
        Ok(ratio.clone())
    })?;
    let c = MagnitudeBound::from_rational(&(&rho / (&rho - BigRational::one())), LOG_PREC);
    Ok((c.div(&h.house), a.clone()))
}

/// `Σ_{n>k} 1/|αₙ| ≤ (log₂ h + 1 + 1/ln 2) / h` with `h = house(α_{k+1})`,
/// under a declared floor `house(αₙ) ≥ 2ⁿ` starting at or before `k + 1`.
pub fn tail_bound_log(seq: &Sequence, k: usize) -> Result<MagnitudeBound, CertifyError> {
    log_with(seq, k).map(|(b, _)| b)
}

fn log_with(seq: &Sequence, k: usize) -> Result<(MagnitudeBound, TailAssumption), CertifyError> {
    const NAME: &str = "exponential_floor";
    let h = need(seq, k + 1)?;
    let cands = declared(seq, NAME, k + 1, |t| matches!(t, TailKind::ExponentialFloor))?;
    let (_, a) = first_verified(cands, |a| {
        verify_each(seq, a.from_index, NAME, |t| {
            if let Some(a) = t[0].alpha.as_rational() {
                let floor = BigRational::from_integer(BigInt::one() << t[0].n);
                return if a.abs() >= floor { Decision::Yes } else { Decision::No };
            }
            let floor = MagnitudeBound::pow2(t[0].n as i64);
            if floor.certainly_le(&t[0].house) {
                Decision::Yes
            } else if t[0].house.certainly_lt(&floor) {
                Decision::No
            } else {
                Decision::Unknown
            }
        })?;
        verify_increasing(seq, a.from_index, NAME)
    })?;
    let l = h.house.log2_hi().expect("nonzero house").clone();
    let prec = LOG_PREC;
    let inv_ln2 = Interval::point(Dyadic::one()).div(ln2(), prec);
    let num = Interval::point(&l + &Dyadic::one()).add(&inv_ln2, prec);
    Ok((MagnitudeBound::from_interval(&num, prec).div(&h.house), a.clone()))
}

/// Bound on `Σ_{n>N} 1/|αₙ|` with the given estimator, and the assumption it
/// rests on. The polynomial estimator uses the declared exponent.
pub fn tail_after(seq: &Sequence, big_n: usize, est: Estimator) -> Result<(MagnitudeBound, TailAssumption), CertifyError> {
    match est {
        Estimator::Polynomial => polynomial_with(seq, big_n + 1, None),
        Estimator::Ratio => ratio_with(seq, big_n),
        Estimator::Log => log_with(seq, big_n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::sequence::SequenceSpec;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn approx(m: &MagnitudeBound) -> f64 {
        2f64.powf(m.log2_hi().unwrap().to_f64())
    }

    #[test]
    fn ratio_example() {
        let seq = SequenceSpec::integers([BigInt::from(16), BigInt::from(256), BigInt::from(4096)])
            .with_tail(TailAssumption::geometric(q(2, 1)))
            .materialize()
            .unwrap();
        let b = tail_bound_ratio(&seq, 1).unwrap();
        assert_eq!(b, MagnitudeBound::pow2(-7));
    }

    #[test]
    fn log_example() {
        let seq = SequenceSpec::integers([BigInt::from(2), BigInt::from(1024)])
            .with_tail(TailAssumption::exponential())
            .materialize()
            .unwrap();
        let b = approx(&tail_bound_log(&seq, 1).unwrap());
        let expect = (10.0 + 1.0 + 1.0 / std::f64::consts::LN_2) / 1024.0;
        assert!((b - expect).abs() < 1e-12 && b >= expect, "{b}");
        assert!((b - 0.01215).abs() < 5e-5);
    }

    #[test]
    fn polynomial_example() {
        let seq = SequenceSpec::integers([BigInt::from(1), BigInt::from(4), BigInt::from(9)])
            .with_tail(TailAssumption::polynomial(q(1, 1)))
            .materialize()
            .unwrap();
        let b = tail_bound_polynomial(&seq, 2, &q(1, 1)).unwrap();
        assert!(b.contains_rational(&q(3, 2), 128));
        assert!(b.log2_width().unwrap() < Dyadic::pow2(-150));
        // a larger declared exponent covers a smaller requested one
        assert!(tail_bound_polynomial(&seq, 2, &q(1, 2)).is_ok());
        assert!(matches!(
            tail_bound_polynomial(&seq, 2, &q(2, 1)),
            Err(CertifyError::AssumptionNotDeclared(_))
        ));
        assert!(matches!(tail_bound_polynomial(&seq, 5, &q(1, 1)), Err(CertifyError::PrefixTooShort { .. })));
    }

    #[test]
    fn rejects_false_assumptions() {
        let seq = SequenceSpec::integers((1..=6).map(|n| BigInt::from(n * n)))
            .with_tail(TailAssumption::geometric(q(2, 1)))
            .with_tail(TailAssumption::exponential())
            .materialize()
            .unwrap();
        assert!(matches!(tail_bound_ratio(&seq, 2), Err(CertifyError::AssumptionViolated { .. })));
        assert!(matches!(tail_bound_log(&seq, 2), Err(CertifyError::AssumptionViolated { .. })));
        assert!(matches!(tail_bound_polynomial(&seq, 2, &q(1, 1)), Err(CertifyError::AssumptionNotDeclared(_))));
        let late = SequenceSpec::integers((1..=6).map(|n| BigInt::one() << (n * 3)))
            .with_tail(TailAssumption::geometric(q(2, 1)).starting_at(4))
            .materialize()
            .unwrap();
        assert!(matches!(tail_bound_ratio(&late, 1), Err(CertifyError::AssumptionTooLate { .. })));
        assert!(tail_bound_ratio(&late, 3).is_ok());
    }

    #[test]
    fn bounds_dominate_prefix_sums() {
        // houses 3^n: every estimator applies
        let terms: Vec<BigInt> = (1..=30).map(|n| num_traits::pow(BigInt::from(3), n)).collect();
        let seq = SequenceSpec::integers(terms.clone())
            .with_tail(TailAssumption::geometric(q(3, 1)))
            .with_tail(TailAssumption::exponential())
            .with_tail(TailAssumption::polynomial(q(1, 1)))
            .materialize()
            .unwrap();
        for k in 1..20 {
            let partial: BigRational = terms[k..].iter().map(|t| BigRational::new(BigInt::one(), t.clone())).sum();
            let partial = partial.to_f64().unwrap();
            for est in Estimator::ALL {
                let (b, _) = tail_after(&seq, k, est).unwrap();
                assert!(approx(&b) >= partial, "{est} at {k}");
            }
        }
    }
}
