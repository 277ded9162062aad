//! Arbitrary-precision dyadic rationals `m · 2^e` with directed rounding.
//!
//! Every enclosure in the crate is built from these. Exact ring operations
//! never round; anything that can lose information (division, square root,
//! conversion from a general rational) takes an explicit [`Round`] direction.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant · 2^exp`, kept canonical (odd mantissa, or zero with exponent 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Floor or ceiling of `n / 2^k`.
fn shr_round(n: &BigInt, k: u64, dir: Round) -> BigInt {
    let d = pow2(k);
    let (q, r) = n.div_mod_floor(&d);
    if dir == Round::Up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

/// Floor or ceiling of `a / b` for `b > 0`.
fn div_round_int(a: &BigInt, b: &BigInt, dir: Round) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if dir == Round::Up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: k }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Number of significant mantissa bits.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)` for nonzero `x`.
    pub fn floor_log2(&self) -> i64 {
        assert!(!self.is_zero(), "floor_log2 of zero");
        self.exp + self.mant.bits() as i64 - 1
    }

    /// True when `|x|` is an exact power of two.
    pub fn is_power_of_two(&self) -> bool {
        self.mant.abs().is_one()
    }

    /// Multiply by `2^k` (exact).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Dyadic::new(&self.mant * n, self.exp)
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let b = self.mant.bits();
        if b <= prec as u64 {
            return self.clone();
        }
        let k = b - prec as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), self.exp + k as i64)
    }

    /// Round to a multiple of `2^e`.
    pub fn round_to_exp(&self, e: i64, dir: Round) -> Self {
        if self.exp >= e || self.is_zero() {
            return self.clone();
        }
        let k = (e - self.exp) as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), e)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_round(&self.mant, (-self.exp) as u64, Round::Down)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_round(&self.mant, (-self.exp) as u64, Round::Up)
        }
    }

    /// `self / other` rounded to `prec` bits.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (mut num, mut den) = (self.mant.clone(), other.mant.clone());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        // Scale so that the quotient carries at least `prec + 2` bits.
        let shift = (prec as i64 + 2 + den.bits() as i64 - num.bits() as i64).max(0) as u64;
        let q = div_round_int(&(num << shift), &den, dir);
        Dyadic::new(q, self.exp - other.exp - shift as i64).round(prec, dir)
    }

    /// `self / n` for a positive integer `n`.
    pub fn div_int(&self, n: &BigInt, prec: u32, dir: Round) -> Self {
        self.div(&Dyadic::from_int(n.clone()), prec, dir)
    }

    /// Square root of a nonnegative value, rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Make the exponent even and the mantissa wide enough.
        let want = 2 * (prec as i64 + 2);
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let e = self.exp - shift;
        let mut r = m.sqrt();
        if dir == Round::Up && &r * &r != m {
            r += 1;
        }
        Dyadic::new(r, e / 2).round(prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Directed rounding of a rational to `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        let n = q.numer();
        let d = q.denom();
        if d.is_one() {
            return Dyadic::from_int(n.clone()).round(prec, dir);
        }
        if d.is_positive() && d.bits() > 0 && (d & (d - BigInt::one())).is_zero() {
            let k = d.bits() - 1;
            return Dyadic::new(n.clone(), -(k as i64)).round(prec, dir);
        }
        Dyadic::from_int(n.clone()).div(&Dyadic::from_int(d.clone()), prec, dir)
    }

    /// Rational with an exact dyadic value, if there is one.
    pub fn try_from_rational(q: &BigRational) -> Option<Self> {
        let d = q.denom();
        if d.is_one() {
            return Some(Dyadic::from_int(q.numer().clone()));
        }
        if (d & (d - BigInt::one())).is_zero() {
            let k = d.bits() - 1;
            return Some(Dyadic::new(q.numer().clone(), -(k as i64)));
        }
        None
    }

    /// Approximate `f64` (saturates to infinities for huge values).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits() as i64;
        let keep = 60i64;
        let (m, e) = if b > keep {
            (&self.mant >> (b - keep) as u64, self.exp + b - keep)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        mf * 2f64.powi(e as i32)
    }

    /// Decimal rendering with `digits` fractional digits, rounded in `dir`.
    /// Trailing zeros are trimmed so exact values print exactly.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = if self.exp >= 0 {
            (&self.mant << self.exp as u64) * &scale
        } else {
            shr_round(&(&self.mant * &scale), (-self.exp) as u64, dir)
        };
        format_scaled(&scaled, digits)
    }
}

fn format_scaled(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let d = digits as usize;
    let (int_part, frac_part) = if s.len() > d {
        (s[..s.len() - d].to_string(), s[s.len() - d..].to_string())
    } else {
        ("0".to_string(), format!("{}{}", "0".repeat(d - s.len()), s))
    };
    let frac = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if neg && (int_part != "0" || !frac.is_empty()) {
        out.push('-');
    }
    out.push_str(&int_part);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

/// Parse a decimal (`-8.125`), integer, or `p/q` string as an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m = parse_rational(m)?;
        let e: i32 = e.parse().ok()?;
        let ten = BigRational::from_integer(BigInt::from(10u32));
        return Some(m * num_traits::pow::Pow::pow(&ten, e));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() {
            return None;
        }
        let int: BigInt = if ip_digits.is_empty() { BigInt::zero() } else { ip_digits.parse().ok()? };
        let frac: BigInt = fp.parse().ok()?;
        let den = BigInt::from(10u32).pow(fp.len() as u32);
        let mut v = BigRational::new(int * &den + frac, den);
        if neg {
            v = -v;
        }
        return Some(v);
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", &self.mant << self.exp as u64)
        } else {
            write!(f, "{}/2^{}", self.mant, -self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: f64) -> Dyadic {
        Dyadic::from_f64(x)
    }

    #[test]
    fn parses_scientific_notation() {
        assert_eq!(parse_rational("1e-3"), parse_rational("1/1000"));
        assert_eq!(parse_rational("2.5E2"), parse_rational("250"));
        assert_eq!(parse_rational("-7/3"), Some(BigRational::new((-7).into(), 3.into())));
        assert!(parse_rational("1e").is_none());
    }

    #[test]
    fn canonical_form_makes_equal_values_equal() {
        assert_eq!(Dyadic::new(BigInt::from(12), 0), Dyadic::new(BigInt::from(3), 2));
        assert_eq!(d(0.75), Dyadic::new(BigInt::from(3), -2));
    }

    #[test]
    fn rounding_directions() {
        let third = Dyadic::one().div(&Dyadic::from_int(3), 20, Round::Down);
        let third_up = Dyadic::one().div(&Dyadic::from_int(3), 20, Round::Up);
        let q = BigRational::new(1.into(), 3.into());
        assert!(third.to_rational() < q && q < third_up.to_rational());
        assert!(third.bits() <= 20);
        let neg = -Dyadic::one();
        let n3 = neg.div(&Dyadic::from_int(3), 10, Round::Down);
        assert!(n3.to_rational() < -q.clone());
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        assert!(&lo * &lo < two && two < &hi * &hi);
        assert!((&hi - &lo) <= Dyadic::pow2(-98));
        assert_eq!(Dyadic::from_int(49).sqrt(10, Round::Up), Dyadic::from_int(7));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Dyadic::from_int(-8).to_decimal(10, Round::Up), "-8");
        assert_eq!(d(0.625).to_decimal(10, Round::Down), "0.625");
        let third = BigRational::new(1.into(), 3.into());
        let lo = Dyadic::from_rational(&third, 64, Round::Down);
        assert_eq!(lo.to_decimal(5, Round::Down), "0.33333");
        assert_eq!(lo.to_decimal(5, Round::Up), "0.33334");
        assert_eq!(parse_rational("-8.125").unwrap(), d(-8.125).to_rational());
        assert_eq!(parse_rational("3/4").unwrap(), d(0.75).to_rational());
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(d(1.5) < d(1.75));
        assert!(d(-3.0) < d(0.001));
        assert!(Dyadic::pow2(-1000) > Dyadic::zero());
        assert_eq!(d(6.0).floor_log2(), 2);
        assert_eq!(d(-2.5).floor(), BigInt::from(-3));
        assert_eq!(d(-2.5).ceil(), BigInt::from(-2));
    }
}
