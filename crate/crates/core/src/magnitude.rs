//! Enclosures of nonnegative reals kept in log₂ space.
//!
//! Quantities such as `(2^(N+1) · H · ∏ house)^(D·d^N)` leave any fixed-width
//! float range within a handful of terms; storing `[log2 lo, log2 hi]` keeps
//! them representable while every operation still rounds outward.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::dyadic::{Dyadic, Round};
use crate::interval::{log2_bound, Interval};

/// Significant bits kept on log₂ endpoints.
pub const LOG_PREC: u32 = 192;

/// Digits after the decimal point in serialized log₂ bounds.
pub const DECIMAL_DIGITS: u32 = 40;

/// `[2^lo, 2^hi]`. A missing `lo` means the lower bound is 0; a missing `hi`
/// (only together with a missing `lo`) means the value is exactly 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnitudeBound {
    log2_lo: Option<Dyadic>,
    log2_hi: Option<Dyadic>,
}

fn rnd(x: Dyadic, dir: Round) -> Dyadic {
    x.round(LOG_PREC, dir)
}

/// Three-valued comparison of two enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Every point of the left enclosure is `<=` every point of the right.
    Proven,
    /// The enclosures overlap; equality within enclosure width.
    Tight,
    /// Every point of the left enclosure exceeds the right one.
    Violated,
}

impl MagnitudeBound {
    pub fn zero() -> Self {
        MagnitudeBound { log2_lo: None, log2_hi: None }
    }

    pub fn one() -> Self {
        MagnitudeBound::from_log2(Dyadic::zero(), Dyadic::zero())
    }

    /// `2^k` exactly.
    pub fn pow2(k: i64) -> Self {
        let d = Dyadic::from_int(k);
        MagnitudeBound::from_log2(d.clone(), d)
    }

    pub fn from_log2(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted magnitude bound");
        MagnitudeBound { log2_lo: Some(lo), log2_hi: Some(hi) }
    }

    /// Bounds with lower endpoint 0.
    pub fn upper_only(hi: Dyadic) -> Self {
        MagnitudeBound { log2_lo: None, log2_hi: Some(hi) }
    }

    /// From a linear enclosure `[lo, hi]` with `hi >= 0`.
    pub fn from_interval(iv: &Interval, prec: u32) -> Self {
        assert!(!iv.hi.is_negative(), "magnitude of a negative interval");
        if iv.hi.is_zero() {
            return MagnitudeBound::zero();
        }
        let hi = log2_bound(&iv.hi, prec, Round::Up);
        let lo = if iv.lo.is_positive() { Some(log2_bound(&iv.lo, prec, Round::Down)) } else { None };
        MagnitudeBound { log2_lo: lo, log2_hi: Some(hi) }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        if n.is_zero() {
            return MagnitudeBound::zero();
        }
        MagnitudeBound::from_interval(&Interval::point(Dyadic::from_int(n.abs())), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return MagnitudeBound::zero();
        }
        let n = MagnitudeBound::from_bigint(q.numer(), prec);
        let d = MagnitudeBound::from_bigint(q.denom(), prec);
        n.div(&d)
    }

    pub fn log2_lo(&self) -> Option<&Dyadic> {
        self.log2_lo.as_ref()
    }

    pub fn log2_hi(&self) -> Option<&Dyadic> {
        self.log2_hi.as_ref()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.log2_hi.is_none()
    }

    /// Lower bound is 0 (the value may be 0).
    pub fn lower_is_zero(&self) -> bool {
        self.log2_lo.is_none()
    }

    /// Width of the log₂ enclosure; `None` when unbounded below.
    pub fn log2_width(&self) -> Option<Dyadic> {
        match (&self.log2_lo, &self.log2_hi) {
            (Some(l), Some(h)) => Some(h - l),
            (None, None) => Some(Dyadic::zero()),
            _ => None,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return MagnitudeBound::zero();
        }
        let hi = rnd(self.log2_hi.as_ref().unwrap() + o.log2_hi.as_ref().unwrap(), Round::Up);
        let lo = match (&self.log2_lo, &o.log2_lo) {
            (Some(a), Some(b)) => Some(rnd(a + b, Round::Down)),
            _ => None,
        };
        MagnitudeBound { log2_lo: lo, log2_hi: Some(hi) }
    }

    /// `self / o`; `o` must have a positive lower bound.
    pub fn div(&self, o: &Self) -> Self {
        let olo = o.log2_lo.as_ref().expect("division by a magnitude that may be zero");
        let ohi = o.log2_hi.as_ref().unwrap();
        if self.is_exact_zero() {
            return MagnitudeBound::zero();
        }
        let hi = rnd(self.log2_hi.as_ref().unwrap() - olo, Round::Up);
        let lo = self.log2_lo.as_ref().map(|l| rnd(l - ohi, Round::Down));
        MagnitudeBound { log2_lo: lo, log2_hi: Some(hi) }
    }

    pub fn recip(&self) -> Self {
        MagnitudeBound::one().div(self)
    }

    /// `self^n` for a nonnegative integer exponent.
    pub fn pow_int(&self, n: &BigInt) -> Self {
        assert!(!n.is_negative(), "negative exponent");
        if n.is_zero() {
            return MagnitudeBound::one();
        }
        if self.is_exact_zero() {
            return MagnitudeBound::zero();
        }
        MagnitudeBound {
            log2_lo: self.log2_lo.as_ref().map(|l| rnd(l.mul_int(n), Round::Down)),
            log2_hi: self.log2_hi.as_ref().map(|h| rnd(h.mul_int(n), Round::Up)),
        }
    }

    /// `self^(num/den)` for `num >= 0`, `den > 0`.
    pub fn pow_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        assert!(den.is_positive() && !num.is_negative());
        if num.is_zero() {
            return MagnitudeBound::one();
        }
        if self.is_exact_zero() {
            return MagnitudeBound::zero();
        }
        let scale = |x: &Dyadic, dir: Round| x.mul_int(num).div_int(den, LOG_PREC, dir);
        MagnitudeBound {
            log2_lo: self.log2_lo.as_ref().map(|l| scale(l, Round::Down)),
            log2_hi: self.log2_hi.as_ref().map(|h| scale(h, Round::Up)),
        }
    }

    /// `self^(1/d)`.
    pub fn root(&self, d: usize) -> Self {
        self.pow_ratio(&BigInt::one(), &BigInt::from(d))
    }

    /// Pointwise maximum of two enclosed values.
    pub fn max(&self, o: &Self) -> Self {
        let hi = match (&self.log2_hi, &o.log2_hi) {
            (None, x) | (x, None) => x.clone(),
            (Some(a), Some(b)) => Some(a.clone().max(b.clone())),
        };
        let lo = match (&self.log2_lo, &o.log2_lo) {
            (None, x) | (x, None) => x.clone(),
            (Some(a), Some(b)) => Some(a.clone().max(b.clone())),
        };
        MagnitudeBound { log2_lo: lo, log2_hi: hi }
    }

    /// `max(1, x)` applied interval-wise.
    pub fn max_one(&self) -> Self {
        self.max(&MagnitudeBound::one())
    }

    /// Enclosure of the sum of two enclosed values.
    pub fn add(&self, o: &Self) -> Self {
        if self.is_exact_zero() {
            return o.clone();
        }
        if o.is_exact_zero() {
            return self.clone();
        }
        let hi = log_sum(self.log2_hi.as_ref().unwrap(), o.log2_hi.as_ref().unwrap(), Round::Up);
        let lo = match (&self.log2_lo, &o.log2_lo) {
            (Some(a), Some(b)) => Some(log_sum(a, b, Round::Down)),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        MagnitudeBound { log2_lo: lo, log2_hi: Some(hi) }
    }

    /// Linear-space enclosure (exp2 of the endpoints), valid while the
    /// exponents fit in an `i64`.
    pub fn to_interval(&self, prec: u32) -> Interval {
        let lo = match &self.log2_lo {
            Some(l) => crate::interval::exp2_bound(l, prec, Round::Down),
            None => Dyadic::zero(),
        };
        let hi = match &self.log2_hi {
            Some(h) => crate::interval::exp2_bound(h, prec, Round::Up),
            None => Dyadic::zero(),
        };
        Interval::new(lo, hi)
    }

    /// Both endpoints lie within `[lo, hi]` of the linear enclosure.
    pub fn contains_rational(&self, q: &BigRational, prec: u32) -> bool {
        let iv = self.to_interval(prec);
        iv.lo.to_rational() <= *q && *q <= iv.hi.to_rational()
    }

    /// `self <= o` as a three-valued statement about the enclosed values.
    pub fn compare_le(&self, o: &Self) -> Comparison {
        if self.certainly_le(o) {
            Comparison::Proven
        } else if o.certainly_lt(self) {
            Comparison::Violated
        } else {
            Comparison::Tight
        }
    }

    /// Every enclosed value of `self` is `<=` every enclosed value of `o`.
    pub fn certainly_le(&self, o: &Self) -> bool {
        match (&self.log2_hi, &o.log2_lo) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(h), Some(l)) => h <= l,
        }
    }

    pub fn certainly_lt(&self, o: &Self) -> bool {
        match (&self.log2_hi, &o.log2_lo) {
            (None, Some(_)) => true,
            (None, None) => false,
            (Some(_), None) => false,
            (Some(h), Some(l)) => h < l,
        }
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        !self.certainly_lt(o) && !o.certainly_lt(self)
    }

    /// Decimal rendering of the endpoints (outward rounded).
    pub fn log2_lo_string(&self) -> Option<String> {
        self.log2_lo.as_ref().map(|d| d.to_decimal(DECIMAL_DIGITS, Round::Down))
    }

    pub fn log2_hi_string(&self) -> Option<String> {
        self.log2_hi.as_ref().map(|d| d.to_decimal(DECIMAL_DIGITS, Round::Up))
    }
}

/// Directed bound on `log2(2^a + 2^b)`.
fn log_sum(a: &Dyadic, b: &Dyadic, dir: Round) -> Dyadic {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    let diff = small - big; // <= 0
    // 2^diff underflows harmlessly below -LOG_PREC - 64 for the lower bound
    let limit = -(LOG_PREC as i64) - 64;
    let prec = LOG_PREC + 16;
    let t = if diff < Dyadic::from_int(limit) {
        match dir {
            Round::Down => Dyadic::zero(),
            Round::Up => Dyadic::pow2(limit),
        }
    } else {
        crate::interval::exp2_bound(&diff, prec, dir)
    };
    let one_plus = &Dyadic::one() + &t;
    let l = log2_bound(&one_plus, prec, dir);
    rnd(big + &l, dir)
}

impl fmt::Display for MagnitudeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Option<Dyadic>, dir: Round, none: &str| match x {
            Some(d) => d.to_decimal(12, dir),
            None => none.to_string(),
        };
        write!(f, "2^[{}, {}]", show(&self.log2_lo, Round::Down, "-inf"), show(&self.log2_hi, Round::Up, "-inf"))
    }
}

impl Serialize for MagnitudeBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MagnitudeBound", 3)?;
        st.serialize_field("log2_lo", &self.log2_lo_string())?;
        st.serialize_field("log2_hi", &self.log2_hi_string())?;
        st.serialize_field("width", &self.log2_width().map(|w| w.to_decimal(DECIMAL_DIGITS, Round::Up)))?;
        st.end()
    }
}
