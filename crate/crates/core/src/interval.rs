//! Outward-rounded real and rectangular complex intervals over [`Dyadic`]
//! endpoints, plus rigorous `log2`, `exp2` and `ln 2`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::{Dyadic, Round};

/// Closed real interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Interval::point(Dyadic::from_int(n))
    }

    /// Enclosure of an integer with at most `prec` bits per endpoint.
    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        let d = Dyadic::from_int(n.clone());
        Interval { lo: d.round(prec, Round::Down), hi: d.round(prec, Round::Up) }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    /// `[c - r, c + r]`.
    pub fn ball(c: &Dyadic, r: &Dyadic) -> Self {
        Interval { lo: c - r, hi: c + r }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Round both endpoints outward to `prec` bits.
    pub fn round(&self, prec: u32) -> Self {
        Interval { lo: self.lo.round(prec, Round::Down), hi: self.hi.round(prec, Round::Up) }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }.round(prec)
    }

    pub fn sub(&self, o: &Interval, prec: u32) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }.round(prec)
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }.round(prec)
    }

    pub fn sqr(&self, prec: u32) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let (lo, hi) = if self.contains_zero() {
            (Dyadic::zero(), a.max(b))
        } else if a <= b {
            (a, b)
        } else {
            (b, a)
        };
        Interval { lo, hi }.round(prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn scale_int(&self, n: &BigInt, prec: u32) -> Self {
        self.mul(&Interval::point(Dyadic::from_int(n.clone())), prec)
    }

    pub fn div(&self, o: &Interval, prec: u32) -> Self {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let l = a.div(b, prec, Round::Down);
                let h = a.div(b, prec, Round::Up);
                lo = Some(match lo {
                    Some(x) if x <= l => x,
                    _ => l,
                });
                hi = Some(match hi {
                    Some(x) if x >= h => x,
                    _ => h,
                });
            }
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.hi.is_negative(), "sqrt of a negative interval");
        let lo = if self.lo.is_positive() { self.lo.sqrt(prec, Round::Down) } else { Dyadic::zero() };
        Interval { lo, hi: self.hi.sqrt(prec, Round::Up) }
    }

    pub fn abs(&self) -> Self {
        if self.contains_zero() {
            Interval { lo: Dyadic::zero(), hi: self.lo.abs().max(self.hi.abs()) }
        } else if self.lo.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn max(&self, o: &Interval) -> Self {
        Interval { lo: self.lo.clone().max(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn hull(&self, o: &Interval) -> Self {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    /// `log2` of a positive interval.
    pub fn log2(&self, prec: u32) -> Self {
        assert!(self.lo.is_positive(), "log2 needs a positive interval");
        Interval { lo: log2_bound(&self.lo, prec, Round::Down), hi: log2_bound(&self.hi, prec, Round::Up) }
    }

    pub fn exp2(&self, prec: u32) -> Self {
        Interval { lo: exp2_bound(&self.lo, prec, Round::Down), hi: exp2_bound(&self.hi, prec, Round::Up) }
    }
}

/// Directed bound on `log2 x` for `x > 0`, accurate to about `2^-prec`.
///
/// Bits of the fractional part are extracted by repeated squaring of
/// `x / 2^floor(log2 x)`; the squarings are carried as an interval so the
/// extraction stops (and widens the result) the moment a bit is undecided.
pub fn log2_bound(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    assert!(x.is_positive(), "log2 of a nonpositive value");
    let k0 = x.floor_log2();
    if x.is_power_of_two() {
        return Dyadic::from_int(k0);
    }
    let work = prec + 64;
    let y = x.mul_pow2(-k0);
    let two = Dyadic::from_int(2);
    let (mut lo, mut hi) = (y.clone(), y);
    let mut bits = BigInt::zero();
    let mut n: i64 = 0;
    for _ in 0..prec {
        let l2 = (&lo * &lo).round(work, Round::Down);
        let h2 = (&hi * &hi).round(work, Round::Up);
        if l2 >= two {
            bits = (bits << 1u32) + 1;
            lo = l2.mul_pow2(-1);
            hi = h2.mul_pow2(-1);
        } else if h2 < two {
            bits <<= 1u32;
            lo = l2;
            hi = h2;
        } else {
            break;
        }
        n += 1;
    }
    let frac = match dir {
        Round::Down => Dyadic::new(bits, -n),
        Round::Up => Dyadic::new(bits + 1, -n),
    };
    &Dyadic::from_int(k0) + &frac
}

/// Directed bound on `2^x`, relative accuracy about `2^-prec`.
pub fn exp2_bound(x: &Dyadic, prec: u32, dir: Round) -> Dyadic {
    let n = x.floor();
    let n_i64: i64 = i64::try_from(&n).expect("exp2 exponent out of range");
    let frac = x - &Dyadic::from_int(n.clone());
    let work = prec + 32;
    let f = frac.round_to_exp(-(work as i64), dir);
    let scaled = f.mul_pow2(work as i64).floor();
    if scaled == BigInt::one() << work {
        return Dyadic::pow2(n_i64 + 1);
    }
    // 2^f = product over the set bits b_i of f of 2^(2^-i)
    let mut acc = Dyadic::one();
    let mut root = Dyadic::from_int(2);
    for i in 1..=work as u64 {
        root = root.sqrt(work, dir);
        if scaled.bit(work as u64 - i) {
            acc = (&acc * &root).round(work, dir);
        }
    }
    acc.mul_pow2(n_i64).round(prec, dir)
}

/// Rigorous enclosure of `ln 2` (about 256 correct bits).
pub fn ln2() -> &'static Interval {
    static LN2: OnceLock<Interval> = OnceLock::new();
    LN2.get_or_init(|| {
        // ln 2 = sum_{k>=1} 1/(k 2^k); tail after K terms <= 1/((K+1) 2^K)
        let k_max: i64 = 300;
        let prec = 320;
        let mut lo = Dyadic::zero();
        let mut hi = Dyadic::zero();
        for k in 1..=k_max {
            let term_num = Dyadic::pow2(-k);
            let kk = BigInt::from(k);
            lo = &lo + &term_num.div_int(&kk, prec, Round::Down);
            hi = &hi + &term_num.div_int(&kk, prec, Round::Up);
        }
        let tail = Dyadic::pow2(-k_max).div_int(&BigInt::from(k_max + 1), prec, Round::Up);
        hi = &hi + &tail;
        Interval { lo, hi }
    })
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        ComplexInterval { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn real(x: Interval) -> Self {
        ComplexInterval { re: x, im: Interval::zero() }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        ComplexInterval { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        ComplexInterval { re: self.re.sub(&o.re, prec), im: self.im.sub(&o.im, prec) }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        ComplexInterval { re, im }
    }

    pub fn scale_int(&self, n: &BigInt, prec: u32) -> Self {
        ComplexInterval { re: self.re.scale_int(n, prec), im: self.im.scale_int(n, prec) }
    }

    pub fn modulus_sq(&self, prec: u32) -> Interval {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    pub fn modulus(&self, prec: u32) -> Interval {
        self.modulus_sq(prec).sqrt(prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Strict containment in the interior of `outer`.
    pub fn strictly_inside(&self, outer: &Self) -> bool {
        outer.re.lo < self.re.lo && self.re.hi < outer.re.hi && outer.im.lo < self.im.lo && self.im.hi < outer.im.hi
    }
}

/// Horner evaluation of an integer polynomial (low-to-high coefficients).
pub fn eval_complex(coeffs: &[BigInt], z: &ComplexInterval, prec: u32) -> ComplexInterval {
    let mut acc = ComplexInterval::real(Interval::zero());
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re = acc.re.add(&Interval::from_bigint(c, prec), prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_enough(iv: &Interval, x: f64, tol: f64) -> bool {
        iv.lo.to_f64() <= x + tol && iv.hi.to_f64() >= x - tol && iv.width().to_f64() < tol
    }

    #[test]
    fn log2_encloses_known_values() {
        let l3 = Interval::from_int(3).log2(128);
        assert!(close_enough(&l3, 3f64.log2(), 1e-15));
        assert!(l3.width() <= Dyadic::pow2(-120));
        assert_eq!(Interval::from_int(1024).log2(64), Interval::from_int(10));
        let small = Interval::point(Dyadic::from_f64(0.1)).log2(100);
        assert!(close_enough(&small, 0.1f64.log2(), 1e-14));
    }

    #[test]
    fn exp2_inverts_log2() {
        let x = Interval::from_int(97);
        let back = x.log2(128).exp2(128);
        assert!(back.lo <= Dyadic::from_int(97) && Dyadic::from_int(97) <= back.hi);
        assert!(back.width() < Dyadic::pow2(-100));
        let half = Interval::point(Dyadic::from_f64(0.5)).exp2(100);
        assert!(close_enough(&half, std::f64::consts::SQRT_2, 1e-15));
    }

    #[test]
    fn ln2_is_tight() {
        let l = ln2();
        assert!(close_enough(l, std::f64::consts::LN_2, 1e-16));
        assert!(l.width() < Dyadic::pow2(-250));
    }

    #[test]
    fn division_and_sqrt() {
        let a = Interval::from_int(1);
        let b = Interval::from_int(3);
        let q = a.div(&b, 80);
        assert!(q.lo.to_rational() < BigRational::new(1.into(), 3.into()));
        assert!(q.hi.to_rational() > BigRational::new(1.into(), 3.into()));
        let s = Interval::from_int(2).sqrt(80);
        assert!(s.sqr(200).contains(&Dyadic::from_int(2)));
    }

    #[test]
    fn complex_eval_contains_root() {
        // x^2 + 1 at i
        let coeffs = vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)];
        let z = ComplexInterval::point(Dyadic::zero(), Dyadic::one());
        let v = eval_complex(&coeffs, &z, 64);
        assert!(v.contains_zero());
    }
}
