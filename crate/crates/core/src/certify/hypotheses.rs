//! The five hypotheses of the transcendence criterion, checked on a prefix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::sequence::{Sequence, Term};
use crate::magnitude::MagnitudeBound;

pub const CHECK_NAMES: [&str; 5] = [
    "algebraic integer degree bound",
    "modulus equals house",
    "increasing modulus",
    "polynomial growth floor",
    "positivity",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Violated,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    /// First offending index, or the start index of the growth floor.
    pub index: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub checks: Vec<CheckResult>,
    pub prefix_length: usize,
    pub degree_cap: usize,
    pub max_degree: usize,
    /// Some term has degree exactly `degree_cap`.
    pub degree_attained: bool,
    pub epsilon: String,
    /// Smallest `n₀` with `|αₙ| ≥ n^(1+ε)` for all prefix `n ≥ n₀`.
    pub growth_from_index: Option<usize>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn first_violation(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == CheckStatus::Violated)
    }

    pub fn first_inconclusive(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == CheckStatus::Inconclusive)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Decision {
    Yes,
    No,
    Unknown,
}

/// Run `f` on the terms, and once more on refined copies if undecided.
pub(crate) fn decide_refining(terms: &[&Term], f: impl Fn(&[&Term]) -> Decision) -> Decision {
    match f(terms) {
        Decision::Unknown => {
            let better: Vec<Term> = terms.iter().map(|t| t.refined(t.prec * 2)).collect();
            let refs: Vec<&Term> = better.iter().collect();
            f(&refs)
        }
        d => d,
    }
}

fn abs_rational(t: &Term) -> Option<BigRational> {
    t.alpha.as_rational().map(|q| q.abs())
}

/// `value ≥ n^(1+ε)`, exactly for rational terms.
pub(crate) fn floor_decision(t: &Term, value: &MagnitudeBound, n: usize, eps: &BigRational) -> Decision {
    let (p, q) = (eps.numer(), eps.denom());
    if let (Some(r), Some(qs)) = (abs_rational(t), q.to_usize()) {
        let bits = r.numer().bits() + r.denom().bits();
        if qs <= 64 && bits.saturating_mul(qs as u64) <= 1 << 24 {
            let lhs = num_traits::pow(r, qs);
            let e = (p + q).to_usize().filter(|&e| e <= 1 << 20);
            if let Some(e) = e {
                let rhs = BigRational::from_integer(num_traits::pow(BigInt::from(n), e));
                return if lhs >= rhs { Decision::Yes } else { Decision::No };
            }
        }
    }
    let rhs = MagnitudeBound::from_bigint(&BigInt::from(n), t.prec).pow_ratio(&(p + q), q);
    if rhs.certainly_le(value) {
        Decision::Yes
    } else if value.certainly_lt(&rhs) {
        Decision::No
    } else {
        Decision::Unknown
    }
}

/// `value(b) > value(a)`.
pub(crate) fn increase_decision(a: &Term, b: &Term, pick: fn(&Term) -> &MagnitudeBound) -> Decision {
    if let (Some(x), Some(y)) = (abs_rational(a), abs_rational(b)) {
        return if y > x { Decision::Yes } else { Decision::No };
    }
    if a.alpha.equals(&b.alpha) {
        return Decision::No;
    }
    let (va, vb) = (pick(a), pick(b));
    if va.certainly_lt(vb) {
        Decision::Yes
    } else if vb.certainly_le(va) {
        Decision::No
    } else {
        Decision::Unknown
    }
}

fn result(i: usize, status: CheckStatus, index: Option<usize>, detail: String) -> CheckResult {
    CheckResult { name: CHECK_NAMES[i], status, index, detail }
}

/// Check the five hypotheses on the materialized prefix with floor exponent
/// `eps` and degree cap `d`. Undecided comparisons get one refinement round
/// at doubled precision before being reported inconclusive.
pub fn hypothesis_check(seq: &Sequence, eps: &BigRational, d: usize) -> HypothesisReport {
    assert!(eps.is_positive(), "epsilon must be positive");
    let terms = &seq.terms;
    let max_degree = seq.max_degree();
    let mut checks = Vec::with_capacity(5);

    // (i)
    let bad = terms.iter().find(|t| !t.alpha.is_algebraic_integer() || t.degree > d);
    checks.push(match bad {
        Some(t) if !t.alpha.is_algebraic_integer() => result(
            0,
            CheckStatus::Violated,
            Some(t.n),
            format!("a_{} is not an algebraic integer (leading coefficient {})", t.n, t.alpha.minpoly().leading()),
        ),
        Some(t) => result(0, CheckStatus::Violated, Some(t.n), format!("deg a_{} = {} exceeds d = {d}", t.n, t.degree)),
        None => result(
            0,
            CheckStatus::Pass,
            None,
            format!("max degree {max_degree} <= d = {d}{}", if max_degree == d { " (attained)" } else { " (not attained)" }),
        ),
    });

    // (ii) refuted only when some conjugate is certainly larger
    let bad = terms.iter().find(|t| {
        t.conjugate_moduli.iter().enumerate().any(|(j, m)| j != t.designated && t.modulus.certainly_lt(m))
    });
    checks.push(match bad {
        Some(t) => result(
            1,
            CheckStatus::Violated,
            Some(t.n),
            format!("a_{} has a conjugate of larger modulus (|a| = {}, house = {})", t.n, t.modulus, t.house),
        ),
        None => result(1, CheckStatus::Pass, None, "no conjugate exceeds the designated modulus".into()),
    });

    // (iii)
    let mut status = (CheckStatus::Pass, None);
    for w in terms.windows(2) {
        match decide_refining(&[&w[0], &w[1]], |t| increase_decision(t[0], t[1], |x| &x.modulus)) {
            Decision::Yes => {}
            Decision::No => {
                status = (CheckStatus::Violated, Some(w[1].n));
                break;
            }
            Decision::Unknown => {
                if status.0 == CheckStatus::Pass {
                    status = (CheckStatus::Inconclusive, Some(w[1].n));
                }
            }
        }
    }
    checks.push(match status {
        (CheckStatus::Pass, _) => result(2, CheckStatus::Pass, None, "strictly increasing on the prefix".into()),
        (s, Some(n)) if s == CheckStatus::Violated => {
            result(2, s, Some(n), format!("|a_{n}| <= |a_{}|", n - 1))
        }
        (s, n) => result(2, s, n, format!("could not separate |a_{}| from its predecessor", n.unwrap_or(0))),
    });

    // (iv)
    let decisions: Vec<Decision> = terms
        .iter()
        .map(|t| decide_refining(&[t], |x| floor_decision(x[0], &x[0].modulus, x[0].n, eps)))
        .collect();
    let last_bad = decisions.iter().rposition(|&d| d != Decision::Yes);
    let growth_from_index = match last_bad {
        None => Some(1),
        Some(i) if i + 1 < terms.len() => Some(i + 2),
        Some(_) => None,
    };
    checks.push(match (last_bad, growth_from_index) {
        (_, Some(n0)) => result(3, CheckStatus::Pass, Some(n0), format!("|a_n| >= n^(1+{eps}) for prefix n >= {n0}")),
        (Some(i), None) if decisions[i] == Decision::No => result(
            3,
            CheckStatus::Violated,
            Some(i + 1),
            format!("|a_{}| < {}^(1+{eps}) at the end of the prefix", i + 1, i + 1),
        ),
        (i, None) => result(
            3,
            CheckStatus::Inconclusive,
            i.map(|i| i + 1),
            "growth floor undecided at the last prefix term".into(),
        ),
    });

    // (v)
    let mut status = (CheckStatus::Pass, None);
    for t in terms {
        match decide_refining(&[t], |x| positivity_decision(x[0])) {
            Decision::Yes => {}
            Decision::No => {
                status = (CheckStatus::Violated, Some(t.n));
                break;
            }
            Decision::Unknown => {
                if status.0 == CheckStatus::Pass {
                    status = (CheckStatus::Inconclusive, Some(t.n));
                }
            }
        }
    }
    checks.push(match status {
        (CheckStatus::Pass, _) => result(4, CheckStatus::Pass, None, "Re > 0 or Im > 0 for every term".into()),
        (CheckStatus::Violated, Some(n)) => result(4, CheckStatus::Violated, Some(n), format!("Re(a_{n}) <= 0 and Im(a_{n}) <= 0")),
        (s, n) => result(4, s, n, format!("sign of a_{} undecided", n.unwrap_or(0))),
    });

    HypothesisReport {
        checks,
        prefix_length: terms.len(),
        degree_cap: d,
        max_degree,
        degree_attained: max_degree == d,
        epsilon: eps.to_string(),
        growth_from_index,
    }
}

fn positivity_decision(t: &Term) -> Decision {
    if let Some(q) = t.alpha.as_rational() {
        return if q.is_positive() { Decision::Yes } else { Decision::No };
    }
    let d = &t.disk;
    if d.re_positive() || d.im_positive() {
        return Decision::Yes;
    }
    let re_nonpos = !(&d.re + &d.rad).is_positive();
    let im_nonpos = d.has_real_center() || !(&d.im + &d.rad).is_positive();
    if re_nonpos && im_nonpos {
        Decision::No
    } else {
        Decision::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::sequence::{Selector, SequenceSpec};
    use crate::polyz::IntPolynomial;
    use crate::roots::ComplexDisk;

    fn ints(v: &[i64]) -> Sequence {
        SequenceSpec::integers(v.iter().map(|&x| BigInt::from(x))).materialize().unwrap()
    }

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn status(r: &HypothesisReport, i: usize) -> CheckStatus {
        r.checks[i].status
    }

    #[test]
    fn powers_pass() {
        let seq = ints(&[16, 256, 65536]);
        let r = hypothesis_check(&seq, &one(), 1);
        assert!(r.all_pass(), "{r:?}");
        assert!(r.degree_attained);
        assert_eq!(r.growth_from_index, Some(1));
    }

    #[test]
    fn identity_fails_growth() {
        let seq = ints(&[1, 2, 3, 4, 5, 6]);
        let r = hypothesis_check(&seq, &one(), 1);
        assert_eq!(status(&r, 3), CheckStatus::Violated);
        assert_eq!(r.first_violation().unwrap().name, "polynomial growth floor");
    }

    #[test]
    fn squares_meet_floor_with_equality() {
        let v: Vec<i64> = (1..=10).map(|n| n * n).collect();
        let r = hypothesis_check(&ints(&v), &one(), 1);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn non_increasing_and_negative() {
        let r = hypothesis_check(&ints(&[4, 4, 9]), &one(), 1);
        assert_eq!(status(&r, 2), CheckStatus::Violated);
        assert_eq!(r.checks[2].index, Some(2));
        let r = hypothesis_check(&ints(&[-4, 9]), &one(), 1);
        assert_eq!(status(&r, 4), CheckStatus::Violated);
    }

    #[test]
    fn smaller_conjugate_designated() {
        let p = IntPolynomial::from_i64s(&[-1, -2, 1]);
        let small = ComplexDisk::parse("-0.41", "0", "0.05").unwrap();
        let seq = SequenceSpec::explicit([(p, Some(Selector::Disk(small)))]).materialize().unwrap();
        let r = hypothesis_check(&seq, &one(), 2);
        assert_eq!(status(&r, 1), CheckStatus::Violated);
        assert_eq!(status(&r, 4), CheckStatus::Violated);
    }

    #[test]
    fn degree_cap_and_integrality() {
        let seq = SequenceSpec::dth_roots(3, [BigInt::from(2), BigInt::from(100)]).materialize().unwrap();
        assert_eq!(status(&hypothesis_check(&seq, &one(), 2), 0), CheckStatus::Violated);
        let r = hypothesis_check(&seq, &one(), 3);
        assert_eq!(status(&r, 0), CheckStatus::Pass);
        let half = SequenceSpec::explicit([(IntPolynomial::from_i64s(&[-1, 2]), None)]).materialize().unwrap();
        assert_eq!(status(&hypothesis_check(&half, &one(), 1), 0), CheckStatus::Violated);
    }

    #[test]
    fn complex_terms_use_imaginary_part() {
        // x^2 + 4x + 5 has roots -2 ± i; the one with Im > 0 is admissible
        let p = IntPolynomial::from_i64s(&[5, 4, 1]);
        let up = ComplexDisk::parse("-2", "1", "0.1").unwrap();
        let down = ComplexDisk::parse("-2", "-1", "0.1").unwrap();
        let s = |d| SequenceSpec::explicit([(p.clone(), Some(Selector::Disk(d)))]).materialize().unwrap();
        assert_eq!(status(&hypothesis_check(&s(up), &one(), 2), 4), CheckStatus::Pass);
        assert_eq!(status(&hypothesis_check(&s(down), &one(), 2), 4), CheckStatus::Violated);
    }

    #[test]
    fn check_names_are_stable() {
        let r = hypothesis_check(&ints(&[2]), &BigRational::new(1.into(), 2.into()), 1);
        let names: Vec<_> = r.checks.iter().map(|c| c.name).collect();
        assert_eq!(names, CHECK_NAMES);
    }
}
