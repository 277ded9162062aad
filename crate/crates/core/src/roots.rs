//! Certified complex root isolation.
//!
//! Roots are approximated by Aberth iteration in multiprecision dyadic
//! arithmetic and then certified with a Gershgorin inclusion built from
//! Weierstrass corrections: with `W_i = p(z_i) / (lc · ∏_{j≠i} (z_i − z_j))`
//! the disks `|z − z_i| ≤ n·|W_i|` each hold exactly one root as soon as they
//! are pairwise disjoint. Refinement of a single disk uses Newton steps
//! certified by a complex Krawczyk test.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dyadic::{parse_rational, Dyadic, Round};
use crate::interval::{eval_complex, ComplexInterval, Interval};
use crate::magnitude::MagnitudeBound;
use crate::polyz::IntPolynomial;

/// First rung of the precision ladder, in bits.
pub const START_PREC: u32 = 64;

/// Last rung of the precision ladder, in bits.
pub const MAX_PREC: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("certification failed up to {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },
}

/// Closed disk with rational center and radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexDisk {
    pub re: BigRational,
    pub im: BigRational,
    pub rad: BigRational,
}

fn sq(x: &BigRational) -> BigRational {
    x * x
}

impl ComplexDisk {
    pub fn new(re: BigRational, im: BigRational, rad: BigRational) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        ComplexDisk { re, im, rad }
    }

    pub fn point(re: BigRational, im: BigRational) -> Self {
        ComplexDisk { re, im, rad: BigRational::zero() }
    }

    /// Disk from decimal or `p/q` strings.
    pub fn parse(re: &str, im: &str, rad: &str) -> Option<Self> {
        let rad = parse_rational(rad)?;
        if rad.is_negative() {
            return None;
        }
        Some(ComplexDisk { re: parse_rational(re)?, im: parse_rational(im)?, rad })
    }

    /// Real-centered disk.
    pub fn real(c: BigRational, rad: BigRational) -> Self {
        ComplexDisk::new(c, BigRational::zero(), rad)
    }

    fn center_dist_sq(&self, o: &ComplexDisk) -> BigRational {
        sq(&(&self.re - &o.re)) + sq(&(&self.im - &o.im))
    }

    pub fn center_abs_sq(&self) -> BigRational {
        sq(&self.re) + sq(&self.im)
    }

    pub fn is_disjoint(&self, o: &ComplexDisk) -> bool {
        self.center_dist_sq(o) > sq(&(&self.rad + &o.rad))
    }

    pub fn intersects(&self, o: &ComplexDisk) -> bool {
        !self.is_disjoint(o)
    }

    /// `o ⊆ self`.
    pub fn contains_disk(&self, o: &ComplexDisk) -> bool {
        self.rad >= o.rad && self.center_dist_sq(o) <= sq(&(&self.rad - &o.rad))
    }

    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        sq(&(&self.re - re)) + sq(&(&self.im - im)) <= sq(&self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.center_abs_sq() <= sq(&self.rad)
    }

    pub fn conj(&self) -> Self {
        ComplexDisk { re: self.re.clone(), im: -&self.im, rad: self.rad.clone() }
    }

    pub fn neg(&self) -> Self {
        ComplexDisk { re: -&self.re, im: -&self.im, rad: self.rad.clone() }
    }

    /// Minkowski sum: encloses `a + b` for `a ∈ self`, `b ∈ o`.
    pub fn sum(&self, o: &ComplexDisk) -> Self {
        ComplexDisk { re: &self.re + &o.re, im: &self.im + &o.im, rad: &self.rad + &o.rad }
    }

    /// Image of the disk under `z ↦ 1/z`, exact. `None` when the disk contains 0.
    pub fn recip(&self) -> Option<Self> {
        let den = self.center_abs_sq() - sq(&self.rad);
        if !den.is_positive() {
            return None;
        }
        Some(ComplexDisk { re: &self.re / &den, im: -&self.im / &den, rad: &self.rad / &den })
    }

    /// Every point has positive real part.
    pub fn re_positive(&self) -> bool {
        self.re > self.rad
    }

    /// Every point has positive imaginary part.
    pub fn im_positive(&self) -> bool {
        self.im > self.rad
    }

    /// For a real polynomial, a certified disk with real center isolates a
    /// real root (the conjugate root lies in the same disk).
    pub fn has_real_center(&self) -> bool {
        self.im.is_zero()
    }

    /// Bounding box, rounded outward.
    pub fn to_box(&self, prec: u32) -> ComplexInterval {
        let lo = |c: &BigRational| Dyadic::from_rational(&(c - &self.rad), prec, Round::Down);
        let hi = |c: &BigRational| Dyadic::from_rational(&(c + &self.rad), prec, Round::Up);
        ComplexInterval::new(Interval::new(lo(&self.re), hi(&self.re)), Interval::new(lo(&self.im), hi(&self.im)))
    }

    /// Floating-point center, for display and diagnostics only.
    pub fn center_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for ComplexDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.center_f64();
        let rad = self.rad.to_f64().unwrap_or(f64::NAN);
        write!(f, "disk({re:.12e} {} {:.12e}i, {rad:.3e})", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

#[derive(Serialize, Deserialize)]
struct DiskRepr {
    re: String,
    im: String,
    rad: String,
}

impl Serialize for ComplexDisk {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiskRepr { re: self.re.to_string(), im: self.im.to_string(), rad: self.rad.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexDisk {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = DiskRepr::deserialize(d)?;
        ComplexDisk::parse(&r.re, &r.im, &r.rad).ok_or_else(|| D::Error::custom("malformed disk"))
    }
}

/// Target accuracy for a disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tolerance {
    /// `radius ≤ tol`
    Absolute(BigRational),
    /// `radius ≤ 2^-bits · |center|` (a zero radius always qualifies)
    Relative(u32),
}

impl Tolerance {
    pub fn satisfied(&self, d: &ComplexDisk) -> bool {
        match self {
            Tolerance::Absolute(t) => d.rad <= *t,
            Tolerance::Relative(bits) => {
                if d.rad.is_zero() {
                    return true;
                }
                let scale = BigRational::from_integer(BigInt::from(1u8) << (2 * *bits as u64));
                sq(&d.rad) * scale <= d.center_abs_sq()
            }
        }
    }
}

/// Multiprecision complex float used only for approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cf {
    re: Dyadic,
    im: Dyadic,
}

impl Cf {
    fn zero() -> Self {
        Cf { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Cf, prec: u32) -> Cf {
        Cf { re: (&self.re + &o.re).round(prec, Round::Down), im: (&self.im + &o.im).round(prec, Round::Down) }
    }

    fn sub(&self, o: &Cf, prec: u32) -> Cf {
        Cf { re: (&self.re - &o.re).round(prec, Round::Down), im: (&self.im - &o.im).round(prec, Round::Down) }
    }

    fn mul(&self, o: &Cf, prec: u32) -> Cf {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Cf { re: re.round(prec, Round::Down), im: im.round(prec, Round::Down) }
    }

    fn div(&self, o: &Cf, prec: u32) -> Cf {
        let den = &(&o.re * &o.re) + &(&o.im * &o.im);
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Cf { re: re.div(&den, prec, Round::Down), im: im.div(&den, prec, Round::Down) }
    }

    /// `floor(log2 max(|re|, |im|))`, `None` for zero.
    fn mag(&self) -> Option<i64> {
        let a = (!self.re.is_zero()).then(|| self.re.floor_log2());
        let b = (!self.im.is_zero()).then(|| self.im.floor_log2());
        a.max(b)
    }

    fn point(&self) -> ComplexInterval {
        ComplexInterval::point(self.re.clone(), self.im.clone())
    }

    fn from_disk(d: &ComplexDisk, prec: u32) -> Cf {
        Cf {
            re: Dyadic::from_rational(&d.re, prec, Round::Down),
            im: Dyadic::from_rational(&d.im, prec, Round::Down),
        }
    }
}

fn eval_with_derivative(coeffs: &[BigInt], z: &Cf, prec: u32) -> (Cf, Cf) {
    let n = coeffs.len() - 1;
    let mut p = Cf { re: Dyadic::from_int(coeffs[n].clone()).round(prec, Round::Down), im: Dyadic::zero() };
    let mut d = Cf::zero();
    for c in coeffs[..n].iter().rev() {
        d = d.mul(z, prec).add(&p, prec);
        p = p.mul(z, prec);
        p.re = (&p.re + &Dyadic::from_int(c.clone())).round(prec, Round::Down);
    }
    (p, d)
}

fn log2_abs_f64(n: &BigInt) -> f64 {
    let b = n.bits();
    if b <= 60 {
        return n.abs().to_f64().unwrap().log2();
    }
    let top = (n.abs() >> (b - 60)).to_f64().unwrap();
    top.log2() + (b - 60) as f64
}

/// `2^x · (cos θ, sin θ)` with `x` possibly far outside the `f64` range.
fn polar(x: f64, theta: f64) -> Cf {
    let e = x.floor();
    let m = 2f64.powf(x - e);
    let k = e as i64;
    Cf {
        re: Dyadic::from_f64(m * theta.cos()).mul_pow2(k),
        im: Dyadic::from_f64(m * theta.sin()).mul_pow2(k),
    }
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(i, log2 |a_i|)`.
fn initial_guesses(coeffs: &[BigInt]) -> Vec<Cf> {
    let n = coeffs.len() - 1;
    let pts: Vec<(usize, f64)> =
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, log2_abs_f64(c))).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2];
            let (i2, y2) = hull[hull.len() - 1];
            // drop the middle point when it lies on or below the chord
            let cross = (i2 as f64 - i1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - i1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    if pts[0].0 > 0 {
        // zero roots are handled separately by the caller
        for _ in 0..pts[0].0 {
            out.push(Cf::zero());
        }
    }
    let tau = std::f64::consts::TAU;
    for w in hull.windows(2) {
        let ((i, yi), (j, yj)) = (w[0], w[1]);
        let k = j - i;
        let x = (yi - yj) / k as f64;
        for t in 0..k {
            let theta = tau * t as f64 / k as f64 + tau * i as f64 / n as f64 + 0.7;
            out.push(polar(x, theta));
        }
    }
    out
}

/// Aberth iteration in place. Entries flagged `fixed` are not moved.
fn aberth(coeffs: &[BigInt], z: &mut [Cf], fixed: &[bool], prec: u32) {
    let n = z.len();
    let max_iter = 60 + 20 * n;
    let one = Cf { re: Dyadic::one(), im: Dyadic::zero() };
    let target = prec as i64 - 6;
    for iter in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            if fixed[i] {
                continue;
            }
            let (pv, dv) = eval_with_derivative(coeffs, &z[i], prec);
            if pv.is_zero() {
                continue;
            }
            if dv.is_zero() {
                // nudge off a critical point
                let bump = Dyadic::pow2(z[i].mag().unwrap_or(0) - 20 - iter as i64);
                z[i].re = &z[i].re + &bump;
                z[i].im = &z[i].im + &bump;
                done = false;
                continue;
            }
            let ratio = pv.div(&dv, prec);
            let mut s = Cf::zero();
            for j in 0..n {
                if j != i {
                    let diff = z[i].sub(&z[j], prec);
                    if !diff.is_zero() {
                        s = s.add(&one.div(&diff, prec), prec);
                    }
                }
            }
            let denom = one.sub(&ratio.mul(&s, prec), prec);
            let w = if denom.is_zero() { ratio } else { ratio.div(&denom, prec) };
            let small = match (w.mag(), z[i].mag()) {
                (None, _) => true,
                (Some(a), Some(b)) => a < b - target,
                (Some(_), None) => false,
            };
            if !small {
                done = false;
            }
            z[i] = z[i].sub(&w, prec);
        }
        if done {
            break;
        }
    }
}

/// Gershgorin/Weierstrass inclusion at the given approximations. Returns the
/// radii when the inclusion disks are pairwise disjoint.
fn certify(coeffs: &[BigInt], z: &[Cf], prec: u32) -> Option<Vec<Dyadic>> {
    let n = z.len();
    let work = 2 * prec + 32;
    let lc = Dyadic::from_int(coeffs[n].abs());
    // lower bounds on pairwise distances
    let mut dist = vec![vec![Dyadic::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let dr = &z[i].re - &z[j].re;
            let di = &z[i].im - &z[j].im;
            let d2 = &(&dr * &dr) + &(&di * &di);
            if d2.is_zero() {
                return None;
            }
            let d = d2.sqrt(work, Round::Down);
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let v = eval_complex(coeffs, &z[i].point(), work);
        let ar = v.re.lo.abs().max(v.re.hi.abs());
        let ai = v.im.lo.abs().max(v.im.hi.abs());
        let num = if v.contains_zero() && v.re.is_point() && v.im.is_point() {
            Dyadic::zero()
        } else {
            (&(&ar * &ar) + &(&ai * &ai)).round(work, Round::Up).sqrt(work, Round::Up)
        };
        let mut prod = lc.clone();
        for j in 0..n {
            if j != i {
                prod = (&prod * &dist[i][j]).round(work, Round::Down);
            }
        }
        let w = num.div(&prod, prec, Round::Up);
        radii.push(w.mul_int(&BigInt::from(n)).round(64, Round::Up));
    }
    for i in 0..n {
        for j in i + 1..n {
            if dist[i][j] <= &radii[i] + &radii[j] {
                return None;
            }
        }
    }
    Some(radii)
}

fn check_input(p: &IntPolynomial) -> Result<(), RootError> {
    if p.is_zero() || p.deg() == 0 {
        return Err(RootError::Constant);
    }
    if !p.is_squarefree() {
        return Err(RootError::NotSquarefree);
    }
    Ok(())
}

fn disk_order(a: &ComplexDisk, b: &ComplexDisk) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Isolate all roots of a squarefree polynomial to absolute radius `tol`.
pub fn isolate_roots(p: &IntPolynomial, tol: &BigRational) -> Result<Vec<ComplexDisk>, RootError> {
    assert!(tol.is_positive(), "tolerance must be positive");
    isolate_roots_with(p, &Tolerance::Absolute(tol.clone()))
}

/// Isolate all roots of a squarefree polynomial, each disk meeting `tol`.
/// Output is sorted by center (real part, then imaginary part).
pub fn isolate_roots_with(p: &IntPolynomial, tol: &Tolerance) -> Result<Vec<ComplexDisk>, RootError> {
    check_input(p)?;
    let coeffs = p.coeffs();
    let n = p.deg();
    if n == 1 {
        let r = BigRational::new(-coeffs[0].clone(), coeffs[1].clone());
        return Ok(vec![ComplexDisk::real(r, BigRational::zero())]);
    }
    let mut z = initial_guesses(coeffs);
    let mut fixed = vec![false; n];
    if coeffs[0].is_zero() {
        fixed[0] = true;
    }
    let mut prec = START_PREC;
    loop {
        for zi in z.iter_mut() {
            zi.re = zi.re.round(prec, Round::Down);
            zi.im = zi.im.round(prec, Round::Down);
        }
        aberth(coeffs, &mut z, &fixed, prec);
        // snap nearly real approximations onto the axis
        let snapped: Vec<Cf> = z
            .iter()
            .map(|zi| match zi.mag() {
                Some(m) if !zi.im.is_zero() && zi.im.floor_log2() < m - (prec as i64) / 2 => {
                    Cf { re: zi.re.clone(), im: Dyadic::zero() }
                }
                _ => zi.clone(),
            })
            .collect();
        let attempt = certify(coeffs, &snapped, prec).map(|r| (snapped, r)).or_else(|| certify(coeffs, &z, prec).map(|r| (z.clone(), r)));
        if let Some((centers, radii)) = attempt {
            let mut disks: Vec<ComplexDisk> = centers
                .iter()
                .zip(&radii)
                .map(|(c, r)| ComplexDisk::new(c.re.to_rational(), c.im.to_rational(), r.to_rational()))
                .collect();
            if disks.iter().all(|d| tol.satisfied(d)) {
                disks.sort_by(disk_order);
                return Ok(disks);
            }
        }
        if prec >= MAX_PREC {
            return Err(RootError::PrecisionExhausted { bits: prec });
        }
        prec *= 2;
    }
}

/// Relative-accuracy isolation: every radius at most `2^-bits` times the
/// modulus of its center.
pub fn isolate_roots_rel(p: &IntPolynomial, bits: u32) -> Result<Vec<ComplexDisk>, RootError> {
    isolate_roots_with(p, &Tolerance::Relative(bits))
}

/// Shrink a certified disk of `p` to radius at most `tol`.
pub fn refine(p: &IntPolynomial, d: &ComplexDisk, tol: &BigRational) -> ComplexDisk {
    refine_with(p, d, &Tolerance::Absolute(tol.clone()))
}

/// Shrink a certified disk of `p` until it meets `tol`. The result lies
/// inside `d` unless the root sits on the boundary of `d`, in which case
/// the smallest certified disk found is returned.
pub fn refine_with(p: &IntPolynomial, d: &ComplexDisk, tol: &Tolerance) -> ComplexDisk {
    if tol.satisfied(d) {
        return d.clone();
    }
    let coeffs = p.coeffs();
    if p.deg() == 1 {
        return ComplexDisk::real(BigRational::new(-coeffs[0].clone(), coeffs[1].clone()), BigRational::zero());
    }
    if let Some(found) = krawczyk_refine(p, d, tol) {
        return found;
    }
    fallback_refine(p, d, tol)
}

fn krawczyk_refine(p: &IntPolynomial, d: &ComplexDisk, tol: &Tolerance) -> Option<ComplexDisk> {
    let coeffs = p.coeffs();
    let dcoeffs = p.derivative().coeffs().to_vec();
    let mut prec = START_PREC;
    let mut z = Cf::from_disk(d, prec);
    while prec <= MAX_PREC {
        z.re = z.re.round(prec, Round::Down);
        z.im = z.im.round(prec, Round::Down);
        let mut step = None;
        for _ in 0..64 {
            let (pv, dv) = eval_with_derivative(coeffs, &z, prec);
            if pv.is_zero() || dv.is_zero() {
                step = None;
                break;
            }
            let w = pv.div(&dv, prec);
            z = z.sub(&w, prec);
            let small = match (w.mag(), z.mag()) {
                (Some(a), Some(b)) => a < b - prec as i64 + 6,
                _ => true,
            };
            step = w.mag();
            if small {
                break;
            }
        }
        let zr = ComplexDisk::point(z.re.to_rational(), z.im.to_rational());
        if !d.contains_point(&zr.re, &zr.im) {
            return None;
        }
        let (pv, _) = eval_with_derivative(coeffs, &z, prec);
        if pv.is_zero() {
            // exact dyadic root; certify with the exact value
            let v = eval_complex(coeffs, &z.point(), 2 * prec);
            if v.re.is_point() && v.im.is_point() && v.contains_zero() {
                return Some(zr);
            }
        }
        let base = z.mag().unwrap_or(0) - prec as i64 + 8;
        let mut rho_exp = step.map_or(base, |s| (s + 3).max(base));
        for _ in 0..4 {
            if let Some(k) = krawczyk_box(coeffs, &dcoeffs, &z, rho_exp, prec) {
                let disk = box_to_disk(&k);
                if d.contains_disk(&disk) && tol.satisfied(&disk) {
                    return Some(disk);
                }
                break;
            }
            rho_exp += 4;
        }
        prec *= 2;
    }
    None
}

/// Krawczyk operator on the square of half-width `2^rho_exp` around `z`;
/// returns the image box when it lies strictly inside the square.
fn krawczyk_box(coeffs: &[BigInt], dcoeffs: &[BigInt], z: &Cf, rho_exp: i64, prec: u32) -> Option<ComplexInterval> {
    let work = 2 * prec + 32;
    let rho = Dyadic::pow2(rho_exp);
    let b = ComplexInterval::new(Interval::ball(&z.re, &rho), Interval::ball(&z.im, &rho));
    let (_, dz) = eval_with_derivative(coeffs, z, prec);
    if dz.is_zero() {
        return None;
    }
    let y = Cf { re: Dyadic::one(), im: Dyadic::zero() }.div(&dz, prec);
    let yi = y.point();
    let pz = eval_complex(coeffs, &z.point(), work);
    let dpb = eval_complex(dcoeffs, &b, work);
    let one = ComplexInterval::point(Dyadic::one(), Dyadic::zero());
    let m = one.sub(&yi.mul(&dpb, work), work);
    let bz = b.sub(&z.point(), work);
    let k = z.point().sub(&yi.mul(&pz, work), work).add(&m.mul(&bz, work), work);
    k.strictly_inside(&b).then_some(k)
}

/// Smallest disk around the center of a box that covers it.
fn box_to_disk(k: &ComplexInterval) -> ComplexDisk {
    let cr = k.re.mid();
    let ci = k.im.mid();
    let hw = (&k.re.hi - &k.re.lo).mul_pow2(-1);
    let hh = (&k.im.hi - &k.im.lo).mul_pow2(-1);
    let r = (&(&hw * &hw) + &(&hh * &hh)).sqrt(64, Round::Up);
    ComplexDisk::new(cr.to_rational(), ci.to_rational(), r.to_rational())
}

fn fallback_refine(p: &IntPolynomial, d: &ComplexDisk, tol: &Tolerance) -> ComplexDisk {
    let sqf = p.squarefree_part().expect("nonzero polynomial");
    let all = isolate_roots_with(&sqf, tol).expect("isolation of a squarefree polynomial");
    let hits: Vec<&ComplexDisk> = all.iter().filter(|c| c.intersects(d)).collect();
    if let Some(inside) = hits.iter().find(|c| d.contains_disk(c)) {
        return (*inside).clone();
    }
    hits.first().map(|c| (*c).clone()).unwrap_or_else(|| d.clone())
}

/// Enclosure of `|z|` over the disk at 128-bit working precision.
pub fn modulus(d: &ComplexDisk) -> MagnitudeBound {
    modulus_prec(d, 128)
}

pub fn modulus_prec(d: &ComplexDisk, prec: u32) -> MagnitudeBound {
    let c2 = d.center_abs_sq();
    if c2.is_zero() && d.rad.is_zero() {
        return MagnitudeBound::zero();
    }
    let work = prec + 16;
    let c = Interval::from_rational(&c2, work).sqrt(work);
    let r = Interval::from_rational(&d.rad, work);
    let lo = (&c.lo - &r.hi).round(work, Round::Down);
    let hi = (&c.hi + &r.hi).round(work, Round::Up);
    let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
    MagnitudeBound::from_interval(&Interval::new(lo, hi), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    // Bisection on a sign change in exact rational arithmetic: an oracle for
    // real roots independent of the complex machinery.
    fn bisect(poly: &IntPolynomial, mut lo: BigRational, mut hi: BigRational, steps: usize) -> BigRational {
        let two = BigRational::from_integer(2.into());
        let slo = poly.eval_rational(&lo).is_positive();
        for _ in 0..steps {
            let mid = (&lo + &hi) / &two;
            if poly.eval_rational(&mid).is_positive() == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn sqrt2_pair() {
        let f = p(&[-2, 0, 1]);
        let tol = rat("1e-10");
        let ds = isolate_roots(&f, &tol).unwrap();
        assert_eq!(ds.len(), 2);
        let s2 = bisect(&f, rat("1"), rat("2"), 80);
        assert!(ds[1].contains_point(&s2, &BigRational::zero()) || ds[1].intersects(&ComplexDisk::real(s2.clone(), rat("1e-20"))));
        assert!(ds[0].intersects(&ComplexDisk::real(-s2, rat("1e-20"))));
        assert!(ds.iter().all(|d| d.rad <= tol && d.has_real_center()));
    }

    #[test]
    fn imaginary_unit_pair() {
        let tol = rat("1e-12");
        let ds = isolate_roots(&p(&[1, 0, 1]), &tol).unwrap();
        assert_eq!(ds.len(), 2);
        for (d, sign) in ds.iter().zip([-1i64, 1]) {
            assert!(d.contains_point(&BigRational::zero(), &BigRational::from_integer(sign.into())));
            assert!(d.rad <= tol);
        }
    }

    #[test]
    fn golden_ratio_roots() {
        let f = p(&[-1, -1, 1]);
        let ds = isolate_roots(&f, &rat("1e-15")).unwrap();
        let phi = bisect(&f, rat("1"), rat("2"), 90);
        let psi = bisect(&f, rat("-1"), rat("0"), 90);
        assert!(ds[1].intersects(&ComplexDisk::real(phi, rat("1e-25"))));
        assert!(ds[0].intersects(&ComplexDisk::real(psi, rat("1e-25"))));
        let (c, _) = ds[1].center_f64();
        assert!((c - 1.6180339887).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(isolate_roots(&p(&[1, 2, 1]), &rat("1e-3")), Err(RootError::NotSquarefree));
        assert_eq!(isolate_roots(&p(&[5]), &rat("1e-3")), Err(RootError::Constant));
    }

    #[test]
    fn zero_root_and_huge_roots() {
        let ds = isolate_roots_rel(&p(&[0, -2, 0, 1]), 60).unwrap();
        assert!(ds.iter().any(|d| d.re.is_zero() && d.im.is_zero() && d.rad.is_zero()));
        let big = IntPolynomial::new(vec![-(BigInt::from(1) << 4096u32), BigInt::zero(), BigInt::from(1)]);
        let ds = isolate_roots_rel(&big, 100).unwrap();
        let m = modulus(&ds[1]);
        assert!(m.overlaps(&MagnitudeBound::pow2(2048)));
    }

    #[test]
    fn refine_examples() {
        let f = p(&[-2, 0, 1]);
        let d = ComplexDisk::real(rat("1.5"), rat("0.2"));
        let tol = rat("1e-20");
        let r = refine(&f, &d, &tol);
        assert!(r.rad <= tol && d.contains_disk(&r));
        let s2 = bisect(&f, rat("1"), rat("2"), 120);
        assert!(r.intersects(&ComplexDisk::real(s2, rat("1e-30"))));
        // already tight enough
        assert_eq!(refine(&f, &d, &rat("0.5")), d);
        // rational root
        let five = refine(&p(&[-5, 1]), &ComplexDisk::real(rat("5"), rat("1")), &rat("1e-9"));
        assert_eq!(five, ComplexDisk::point(rat("5"), BigRational::zero()));
    }

    #[test]
    fn krawczyk_path_certifies() {
        let f = p(&[-2, 0, 1]);
        let d = ComplexDisk::real(rat("1.5"), rat("0.2"));
        let tol = Tolerance::Absolute(rat("1e-60"));
        let r = krawczyk_refine(&f, &d, &tol).expect("Krawczyk succeeds on a simple root");
        assert!(tol.satisfied(&r));
        let big = IntPolynomial::new(vec![-(BigInt::from(1) << 4096u32), BigInt::zero(), BigInt::from(1)]);
        let db = ComplexDisk::real(BigRational::from_integer(BigInt::from(1) << 2048u32), BigRational::from_integer(BigInt::from(1) << 2000u32));
        let r = krawczyk_refine(&big, &db, &Tolerance::Relative(200)).unwrap();
        assert!(db.contains_disk(&r));
    }

    #[test]
    fn refine_complex_root() {
        let f = p(&[1, 1, 1]);
        let ds = isolate_roots(&f, &rat("1e-3")).unwrap();
        for d in &ds {
            let r = refine(&f, d, &rat("1e-40"));
            assert!(r.rad <= rat("1e-40") && d.contains_disk(&r));
        }
    }

    #[test]
    fn modulus_examples() {
        let m = modulus(&ComplexDisk::point(rat("3"), rat("4")));
        assert!(m.contains_rational(&rat("5"), 128));
        assert!(m.log2_width().unwrap() < Dyadic::pow2(-100));
        let m = modulus(&ComplexDisk::real(BigRational::zero(), rat("0.5")));
        assert!(m.lower_is_zero());
        assert!(m.log2_hi().unwrap() <= &Dyadic::from_int(-1));
        assert!(modulus(&ComplexDisk::point(BigRational::zero(), BigRational::zero())).is_exact_zero());
    }

    #[test]
    fn disk_json_round_trip() {
        let d = ComplexDisk::new(rat("1/3"), rat("-2"), rat("1/1024"));
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"re":"1/3","im":"-2","rad":"1/1024"}"#);
        let back: ComplexDisk = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn reciprocal_disk() {
        let d = ComplexDisk::real(rat("2"), rat("1/2"));
        let r = d.recip().unwrap();
        // 1/[1.5, 2.5] = [0.4, 2/3]
        assert!(r.contains_point(&rat("0.4"), &BigRational::zero()));
        assert!(r.contains_point(&rat("2/3"), &BigRational::zero()));
        assert!(ComplexDisk::real(rat("0.1"), rat("1")).recip().is_none());
    }

    fn squarefree_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-9i64..=9, 2..8).prop_filter_map("squarefree", |mut c| {
            if *c.last().unwrap() == 0 {
                *c.last_mut().unwrap() = 1;
            }
            let f = IntPolynomial::from_i64s(&c).squarefree_part().ok()?;
            (f.deg() >= 1).then_some(f)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn isolation_properties(f in squarefree_poly()) {
            let tol = rat("1e-12");
            let ds = isolate_roots(&f, &tol).unwrap();
            prop_assert_eq!(ds.len(), f.deg());
            for (i, a) in ds.iter().enumerate() {
                prop_assert!(a.rad <= tol);
                let v = eval_complex(f.coeffs(), &a.to_box(256), 256);
                prop_assert!(v.contains_zero());
                let mirror = ComplexDisk { rad: &a.rad + &tol, ..a.conj() };
                let closed = ds.iter().any(|b| b.intersects(&mirror));
                prop_assert!(closed);
                for b in &ds[i + 1..] {
                    prop_assert!(a.is_disjoint(b));
                }
            }
        }
    }
}
