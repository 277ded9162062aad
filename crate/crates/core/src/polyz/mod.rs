//! Dense univariate polynomials over the integers.
//!
//! Exported polynomials are normalized primitive (content 1, positive leading
//! coefficient) wherever a polynomial stands for a root set rather than a
//! particular multiple.

mod factor;
mod modp;
mod resultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use factor::{factor, factor_with_cap, DEFAULT_DEGREE_CAP};
pub use resultant::{resultant, sylvester_resultant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("constant term is zero; the reciprocal of 0 is undefined")]
    ZeroConstantTerm,
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("malformed polynomial: {0}")]
    Parse(String),
}

/// Integer polynomial, `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPolynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn x() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `x - a`
    pub fn linear_root(a: &BigInt) -> Self {
        IntPolynomial::new(vec![-a, BigInt::one()])
    }

    /// `b x - a`, the primitive polynomial with root `a/b`.
    pub fn from_rational_root(q: &BigRational) -> Self {
        IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]).normalized()
    }

    /// `x^d - a`
    pub fn pure_power(d: usize, a: &BigInt) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = -a;
        c[d] = BigInt::one();
        IntPolynomial::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `c`, which must divide them all exactly.
    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero(), "inexact coefficient division");
                    a / c
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive_normalized(&self) -> bool {
        !self.is_zero() && self.leading().is_positive() && self.content().is_one()
    }

    /// `(c, q)` with `self = c·q` and `q` primitive with positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(BigInt, IntPolynomial), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Ok((c.clone(), self.div_exact_int(&c)))
    }

    /// Primitive normalized form; the zero polynomial is returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.content_primitive() {
            Ok((_, q)) => q,
            Err(_) => self.clone(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `p(a + b·x)`.
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt) -> Self {
        let lin = IntPolynomial::new(vec![a.clone(), b.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| &(&acc * &lin) + &IntPolynomial::constant(c.clone()))
    }

    /// `p(-x)`, normalized.
    pub fn negate_var(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
        .normalized()
    }

    /// Coefficient reversal `x^deg · p(1/x)` without normalization.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    /// `(q, r)` with `lc(d)^(deg a - deg d + 1) · a = q·d + r`.
    pub fn pseudo_divrem(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(!d.is_zero(), "pseudo-division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let steps = self.deg() - dd + 1;
        let mut q = vec![BigInt::zero(); steps];
        for k in (0..steps).rev() {
            let top = r[k + dd].clone();
            for c in q.iter_mut() {
                *c *= &lc;
            }
            q[k] += &top;
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &top * dc;
            }
        }
        (IntPolynomial::new(q), IntPolynomial::new(r))
    }

    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        self.pseudo_divrem(d).1
    }

    /// Exact quotient over the integers, if `d` divides `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let (quo, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &quo * dc;
            }
            q[k] = quo;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (mut a, mut b) = (self.normalized(), other.normalized());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.normalized();
        }
        a.normalized()
    }

    /// `p / gcd(p, p')`, normalized: same roots, all simple.
    pub fn squarefree_part(&self) -> Result<IntPolynomial, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(IntPolynomial::one());
        }
        let g = self.gcd(&self.derivative());
        Ok(self.normalized().div_exact(&g).expect("gcd divides").normalized())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Polynomial whose roots are the reciprocals of this polynomial's roots.
    pub fn recip_poly(&self) -> Result<IntPolynomial, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.coeffs[0].is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        Ok(self.reversed().normalized())
    }

    /// Polynomial of degree `deg p · deg q` vanishing at every `α + β`,
    /// `p(α) = 0`, `q(β) = 0`: `Res_y(p(y), q(x - y))`, normalized.
    ///
    /// The bivariate resultant is obtained by evaluating the integer
    /// resultant at `x = 0..=n` and interpolating in the binomial basis.
    pub fn sum_poly(&self, other: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let n = self.deg() * other.deg();
        let values: Vec<BigInt> = (0..=n)
            .map(|x0| {
                let shifted = other.compose_linear(&BigInt::from(x0), &BigInt::from(-1));
                resultant(self, &shifted)
            })
            .collect();
        Ok(interpolate_consecutive(&values).normalized())
    }

    /// Parse the `[c0, c1, ...]` text form (low to high).
    pub fn parse(s: &str) -> Result<IntPolynomial, PolyError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| PolyError::Parse(format!("expected [c0,c1,...], got {t:?}")))?;
        if inner.trim().is_empty() {
            return Ok(IntPolynomial::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|c| parse_integer(c.trim().trim_matches('"')).ok_or_else(|| PolyError::Parse(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    /// The `[c0,c1,...]` text form.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::from_i64s(&[1])
    }
}

/// Integer in decimal or `b^e` / `-b^e` notation.
pub fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    if let Some((b, e)) = s.split_once('^') {
        let (neg, b) = match b.trim().strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, b.trim()),
        };
        let base: BigInt = b.parse().ok()?;
        let exp: u32 = e.trim().parse().ok()?;
        let v = num_traits::pow(base, exp as usize);
        return Some(if neg { -v } else { v });
    }
    s.parse().ok()
}

/// Coefficients (low to high) of the polynomial of degree `< values.len()`
/// taking `values[k]` at `x = k`.
fn interpolate_consecutive(values: &[BigInt]) -> IntPolynomial {
    // forward differences: Δ^k f(0)
    let mut diffs = values.to_vec();
    let mut lead = Vec::with_capacity(values.len());
    for k in 0..values.len() {
        lead.push(diffs[0].clone());
        for i in 0..values.len() - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let mut result = IntPolynomial::zero();
    let mut falling = IntPolynomial::one(); // x (x-1) ... (x-k+1)
    let mut fact = BigInt::one();
    for (k, d) in lead.into_iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        if !d.is_zero() {
            result = &result + &falling.scale(&(d / &fact));
        }
        falling = &falling * &IntPolynomial::from_i64s(&[-(k as i64), 1]);
    }
    result
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// JSON coefficients: numbers when they fit in 53 bits, decimal strings otherwise.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let limit = BigInt::one() << 53u32;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            if c.abs() < limit {
                seq.serialize_element(&i64::try_from(c).expect("fits"))?;
            } else {
                seq.serialize_element(&c.to_string())?;
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<JsonInt> = Vec::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                JsonInt::Num(n) => Ok(BigInt::from(n)),
                JsonInt::Text(t) => parse_integer(&t).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[-2, 1]) * &p(&[-3, 1]), p(&[6, -5, 1]));
        assert_eq!(&p(&[-1, -1, 1]) + &IntPolynomial::zero(), p(&[-1, -1, 1]));
        assert_eq!(&p(&[-2, 0, 1]) * &p(&[-2, 0, 1]), p(&[4, 0, -4, 0, 1]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPolynomial::zero());
    }

    #[test]
    fn content_and_primitive_part() {
        assert_eq!(p(&[-4, 0, 6]).content_primitive().unwrap(), (BigInt::from(2), p(&[-2, 0, 3])));
        assert_eq!(p(&[1, -1]).content_primitive().unwrap(), (BigInt::from(-1), p(&[-1, 1])));
        assert_eq!(p(&[-2, 0, 1]).content_primitive().unwrap(), (BigInt::one(), p(&[-2, 0, 1])));
        assert_eq!(IntPolynomial::zero().content_primitive(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn reciprocal_polynomials() {
        assert_eq!(p(&[-1, -1, 1]).recip_poly().unwrap(), p(&[-1, 1, 1]));
        assert_eq!(p(&[-2, 1]).recip_poly().unwrap(), p(&[-1, 2]));
        assert_eq!(p(&[-2, 0, 1]).recip_poly().unwrap(), p(&[-1, 0, 2]));
        assert_eq!(p(&[0, 1]).recip_poly(), Err(PolyError::ZeroConstantTerm));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(p(&[0, 0, -8, 0, 1]).squarefree_part().unwrap(), p(&[0, -8, 0, 1]));
        assert_eq!(p(&[-2, 0, 1]).squarefree_part().unwrap(), p(&[-2, 0, 1]));
        let cube = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[-1, 1]);
        assert_eq!(cube.squarefree_part().unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn sum_polynomials() {
        assert_eq!(p(&[-2, 0, 1]).sum_poly(&p(&[-2, 0, 1])).unwrap(), p(&[0, 0, -8, 0, 1]));
        assert_eq!(p(&[-1, 1]).sum_poly(&p(&[-1, 1])).unwrap(), p(&[-2, 1]));
        assert_eq!(p(&[-2, 0, 1]).sum_poly(&p(&[-3, 0, 1])).unwrap(), p(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn text_format() {
        let q = IntPolynomial::parse("[-1,-1,1]").unwrap();
        assert_eq!(q, p(&[-1, -1, 1]));
        assert_eq!(q.to_list_string(), "[-1,-1,1]");
        assert_eq!(q.to_string(), "x^2 - x - 1");
        assert_eq!(IntPolynomial::parse("[\"-2^70\", 1]").unwrap().coeff(0), -(BigInt::one() << 70u32));
        assert!(IntPolynomial::parse("-1,1").is_err());
        let json = serde_json::to_string(&p(&[-1, -1, 1])).unwrap();
        assert_eq!(json, "[-1,-1,1]");
        let big = IntPolynomial::new(vec![-(BigInt::one() << 80u32), BigInt::one()]);
        let back: IntPolynomial = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        assert_eq!(a.div_exact(&p(&[2, 0, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
        let g = (&a * &p(&[3, 1])).gcd(&(&a * &p(&[5, 2])));
        assert_eq!(g, a);
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-9i64..=9, 1..6).prop_map(|v| IntPolynomial::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn double_reversal_is_identity(q in small_poly()) {
            prop_assume!(!q.is_zero() && !q.coeff(0).is_zero());
            let prim = q.normalized();
            prop_assert_eq!(prim.recip_poly().unwrap().recip_poly().unwrap(), prim);
        }

        #[test]
        fn pseudo_division_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.pseudo_divrem(&b);
            let k = (a.deg() + 1).saturating_sub(b.deg()) as u32;
            let lhs = if a.is_zero() || a.deg() < b.deg() { a.clone() } else { a.scale(&num_traits::pow(b.leading(), k as usize)) };
            prop_assert_eq!(lhs, &(&q * &b) + &r);
            prop_assert!(r.is_zero() || r.deg() < b.deg());
        }
    }
}
