//! Algebraic numbers as (minimal polynomial, isolating disk) pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::polyz::{factor_with_cap, IntPolynomial, PolyError, DEFAULT_DEGREE_CAP};
use crate::roots::{isolate_roots_with, modulus_prec, refine_with, ComplexDisk, RootError, Tolerance};

/// Relative accuracies (bits) tried when separating candidate roots.
pub const LADDER: [u32; 8] = [32, 64, 128, 256, 512, 1024, 2048, 4096];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("constant polynomial has no roots")]
    Constant,
    #[error("region contains no root")]
    NoRootInRegion,
    #[error("region contains {count} roots")]
    MultipleRootsInRegion { count: usize },
    #[error("a root lies on the region boundary at every tested precision")]
    BoundaryRoot,
    #[error("candidate roots could not be separated at the precision limit")]
    Ambiguous,
    #[error("operation undefined at zero")]
    Zero,
}

/// A root of an irreducible primitive integer polynomial, designated by a
/// disk that contains no other root of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    minpoly: IntPolynomial,
    iso: ComplexDisk,
    degree: usize,
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

impl AlgebraicNumber {
    /// Trusted constructor: `minpoly` irreducible and normalized, `iso`
    /// isolating for it.
    pub fn from_parts(minpoly: IntPolynomial, iso: ComplexDisk) -> Self {
        let degree = minpoly.deg();
        assert!(degree >= 1, "minimal polynomial must be nonconstant");
        AlgebraicNumber { minpoly, iso, degree }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        AlgebraicNumber::from_parts(IntPolynomial::from_rational_root(q), ComplexDisk::point(q.clone(), BigRational::zero()))
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        AlgebraicNumber::from_rational(&rat(n.into()))
    }

    /// The unique root of `p` inside `region`.
    pub fn make(p: &IntPolynomial, region: &ComplexDisk) -> Result<Self, AlgError> {
        AlgebraicNumber::make_with_cap(p, region, DEFAULT_DEGREE_CAP)
    }

    pub fn make_with_cap(p: &IntPolynomial, region: &ComplexDisk, cap: usize) -> Result<Self, AlgError> {
        let factors = irreducible_factors(p, cap)?;
        if region.rad.is_zero() {
            return make_at_point(&factors, region);
        }
        for level in 0..24u32 {
            let tol = Tolerance::Absolute(&region.rad / rat(BigInt::one() << (4 + 6 * level)));
            let mut inside = Vec::new();
            let mut straddle = false;
            for f in &factors {
                for d in isolate_roots_with(f, &tol)? {
                    if region.contains_disk(&d) {
                        inside.push((f.clone(), d));
                    } else if region.intersects(&d) {
                        straddle = true;
                    }
                }
            }
            if inside.len() >= 2 {
                return Err(AlgError::MultipleRootsInRegion { count: inside.len() });
            }
            if !straddle {
                return match inside.pop() {
                    Some((f, d)) => Ok(AlgebraicNumber::from_parts(f, d)),
                    None => Err(AlgError::NoRootInRegion),
                };
            }
        }
        Err(AlgError::BoundaryRoot)
    }

    /// The root of `p` of largest modulus; among roots whose moduli cannot be
    /// separated, the positive real one.
    pub fn max_modulus_root(p: &IntPolynomial) -> Result<Self, AlgError> {
        AlgebraicNumber::max_modulus_root_with_cap(p, DEFAULT_DEGREE_CAP)
    }

    pub fn max_modulus_root_with_cap(p: &IntPolynomial, cap: usize) -> Result<Self, AlgError> {
        let factors = irreducible_factors(p, cap)?;
        let mut last = Vec::new();
        for &bits in &LADDER[..5] {
            let mut all = Vec::new();
            for f in &factors {
                for d in isolate_roots_with(f, &Tolerance::Relative(bits))? {
                    let m = modulus_prec(&d, bits + 32);
                    all.push((f.clone(), d, m));
                }
            }
            let top = all.iter().map(|(_, _, m)| m.clone()).reduce(|a, b| a.max(&b)).expect("nonconstant");
            let group: Vec<_> = all.into_iter().filter(|(_, _, m)| !m.certainly_lt(&top)).collect();
            if group.len() == 1 {
                let (f, d, _) = group.into_iter().next().unwrap();
                return Ok(AlgebraicNumber::from_parts(f, d));
            }
            last = group;
        }
        let mut positive: Vec<_> = last.into_iter().filter(|(_, d, _)| d.has_real_center() && d.re_positive()).collect();
        if positive.len() == 1 {
            let (f, d, _) = positive.pop().unwrap();
            return Ok(AlgebraicNumber::from_parts(f, d));
        }
        Err(AlgError::Ambiguous)
    }

    /// The unique positive real root of `p`, if there is exactly one.
    pub fn positive_real_root(p: &IntPolynomial) -> Result<Self, AlgError> {
        let factors = irreducible_factors(p, DEFAULT_DEGREE_CAP)?;
        for &bits in &LADDER {
            let mut found = Vec::new();
            let mut unclear = false;
            for f in &factors {
                for d in isolate_roots_with(f, &Tolerance::Relative(bits))? {
                    if d.has_real_center() && d.re_positive() {
                        found.push((f.clone(), d));
                    } else if d.has_real_center() && !(-&d.re > d.rad) {
                        unclear = true;
                    }
                }
            }
            if !unclear {
                return match found.len() {
                    0 => Err(AlgError::NoRootInRegion),
                    1 => {
                        let (f, d) = found.pop().unwrap();
                        Ok(AlgebraicNumber::from_parts(f, d))
                    }
                    n => Err(AlgError::MultipleRootsInRegion { count: n }),
                };
            }
        }
        Err(AlgError::Ambiguous)
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn iso(&self) -> &ComplexDisk {
        &self.iso
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.leading().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 1 && self.minpoly.coeff(0).is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree == 1).then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    /// The designated root is certified real (its disk has a real center).
    pub fn is_real(&self) -> bool {
        self.iso.has_real_center()
    }

    /// Disk around the designated root with radius at most `tol`.
    pub fn enclosure(&self, tol: &BigRational) -> ComplexDisk {
        refine_with(&self.minpoly, &self.iso, &Tolerance::Absolute(tol.clone()))
    }

    /// Disk around the designated root with relative radius at most `2^-bits`.
    pub fn enclosure_rel(&self, bits: u32) -> ComplexDisk {
        refine_with(&self.minpoly, &self.iso, &Tolerance::Relative(bits))
    }

    /// All conjugates, plus the index of the designated one.
    pub fn conjugates(&self, bits: u32) -> (Vec<ComplexDisk>, usize) {
        let mut bits = bits;
        loop {
            let all = isolate_roots_with(&self.minpoly, &Tolerance::Relative(bits)).expect("irreducible polynomials are squarefree");
            let mine = self.enclosure_rel(bits);
            let hits: Vec<usize> = (0..all.len()).filter(|&i| all[i].intersects(&mine)).collect();
            if hits.len() == 1 {
                return (all, hits[0]);
            }
            bits *= 2;
        }
    }

    pub fn negate(&self) -> Self {
        AlgebraicNumber::from_parts(self.minpoly.negate_var(), self.iso.neg())
    }

    pub fn reciprocal(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::Zero);
        }
        let minpoly = self.minpoly.recip_poly()?;
        let mut bits = 8;
        loop {
            let d = self.enclosure_rel(bits);
            if let Some(r) = d.recip() {
                return Ok(AlgebraicNumber::from_parts(minpoly, r));
            }
            bits *= 2;
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgError> {
        self.add_with_cap(o, DEFAULT_DEGREE_CAP)
    }

    /// Exact sum; the minimal polynomial is the factor of the sum polynomial
    /// whose only root inside the enclosure of `self + o` is the sum.
    pub fn add_with_cap(&self, o: &Self, cap: usize) -> Result<Self, AlgError> {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Ok(AlgebraicNumber::from_rational(&(a + b)));
        }
        let s = self.minpoly.sum_poly(&o.minpoly)?;
        let factors = irreducible_factors(&s, cap)?;
        for &bits in &LADDER {
            let e = self.enclosure_rel(bits).sum(&o.enclosure_rel(bits));
            let mut hits = Vec::new();
            for f in &factors {
                for d in isolate_roots_with(f, &Tolerance::Relative(bits))? {
                    if d.intersects(&e) {
                        hits.push((f.clone(), d));
                    }
                }
            }
            if hits.len() == 1 {
                let (f, d) = hits.pop().unwrap();
                return Ok(AlgebraicNumber::from_parts(f, d));
            }
        }
        Err(AlgError::Ambiguous)
    }

    /// Same minimal polynomial and the same root of it.
    pub fn equals(&self, o: &Self) -> bool {
        if self.minpoly != o.minpoly {
            return false;
        }
        if self.degree == 1 {
            return true;
        }
        let mut bits = 32;
        loop {
            let all = isolate_roots_with(&self.minpoly, &Tolerance::Relative(bits)).expect("irreducible polynomials are squarefree");
            let (a, b) = (self.enclosure_rel(bits), o.enclosure_rel(bits));
            let ia: Vec<usize> = (0..all.len()).filter(|&i| all[i].intersects(&a)).collect();
            let ib: Vec<usize> = (0..all.len()).filter(|&i| all[i].intersects(&b)).collect();
            if ia.len() == 1 && ib.len() == 1 {
                return ia == ib;
            }
            bits *= 2;
        }
    }

    /// Left fold of [`AlgebraicNumber::add`].
    pub fn sum_all(terms: &[AlgebraicNumber], cap: usize) -> Result<Self, AlgError> {
        let mut it = terms.iter();
        let first = it.next().expect("nonempty sum").clone();
        it.try_fold(first, |acc, t| acc.add_with_cap(t, cap))
    }
}

/// Distinct irreducible factors of the squarefree part of `p`.
fn irreducible_factors(p: &IntPolynomial, cap: usize) -> Result<Vec<IntPolynomial>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::Poly(PolyError::ZeroPolynomial));
    }
    if p.is_constant() {
        return Err(AlgError::Constant);
    }
    let sqf = p.squarefree_part()?;
    Ok(factor_with_cap(&sqf, cap)?.into_iter().map(|(f, _)| f).collect())
}

fn make_at_point(factors: &[IntPolynomial], region: &ComplexDisk) -> Result<AlgebraicNumber, AlgError> {
    if !region.im.is_zero() {
        // a non-real rational complex point has degree 2
        for f in factors.iter().filter(|f| f.deg() == 2) {
            let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
            let (x, y) = (&region.re, &region.im);
            let a = rat(a);
            let re = &a * (x * x - y * y) + rat(b.clone()) * x + rat(c);
            let im = &a * rat(BigInt::from(2)) * x * y + rat(b) * y;
            if re.is_zero() && im.is_zero() {
                return Ok(AlgebraicNumber::from_parts(f.clone(), region.clone()));
            }
        }
        return Err(AlgError::NoRootInRegion);
    }
    for f in factors {
        if f.eval_rational(&region.re).is_zero() {
            return Ok(AlgebraicNumber::from_parts(f.clone(), region.clone()));
        }
    }
    Err(AlgError::NoRootInRegion)
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "root of {} in {}", self.minpoly, self.iso),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    minpoly: IntPolynomial,
    root: ComplexDisk,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr { minpoly: self.minpoly.clone(), root: self.iso.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    /// Accepts any nonconstant polynomial; the value is rebuilt with [`AlgebraicNumber::make`].
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        AlgebraicNumber::make(&r.minpoly, &r.root).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::parse_rational;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn near(re: &str, rad: &str) -> ComplexDisk {
        ComplexDisk::real(q(re), q(rad))
    }

    fn sqrt(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::positive_real_root(&p(&[-n, 0, 1])).unwrap()
    }

    #[test]
    fn make_examples() {
        let s2 = AlgebraicNumber::make(&p(&[-2, 0, 1]), &near("1.4", "0.1")).unwrap();
        assert_eq!(s2.degree(), 2);
        assert!(s2.is_algebraic_integer());
        let h = AlgebraicNumber::make(&p(&[-3, 2]), &near("1.5", "0.1")).unwrap();
        assert_eq!(h.degree(), 1);
        assert!(!h.is_algebraic_integer());
        assert_eq!(h.as_rational(), Some(q("3/2")));
        let t = AlgebraicNumber::make(&p(&[0, 0, -8, 0, 1]), &near("2.8", "0.1")).unwrap();
        assert_eq!(t.minpoly(), &p(&[-8, 0, 1]));
    }

    #[test]
    fn make_errors() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(AlgebraicNumber::make(&f, &near("5", "1")), Err(AlgError::NoRootInRegion));
        assert_eq!(AlgebraicNumber::make(&f, &near("0", "2")), Err(AlgError::MultipleRootsInRegion { count: 2 }));
        assert_eq!(AlgebraicNumber::make(&p(&[3]), &near("0", "2")), Err(AlgError::Constant));
        let wide = IntPolynomial::new((0..=25).map(|i| BigInt::from(i64::from(i == 25) - i64::from(i == 0) * 2)).collect());
        assert!(matches!(
            AlgebraicNumber::make(&wide, &near("1", "0.5")),
            Err(AlgError::Poly(PolyError::DegreeCapExceeded { .. }))
        ));
        let five = AlgebraicNumber::make(&p(&[-5, 1]), &ComplexDisk::point(q("5"), q("0"))).unwrap();
        assert_eq!(five.as_rational(), Some(q("5")));
    }

    #[test]
    fn add_examples() {
        let s = sqrt(2).add(&sqrt(3)).unwrap();
        assert_eq!(s.minpoly(), &p(&[1, 0, -10, 0, 1]));
        assert_eq!(s.degree(), 4);
        let z = sqrt(2).add(&sqrt(2).negate()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.minpoly(), &p(&[0, 1]));
        let t = sqrt(2).add(&sqrt(2)).unwrap();
        assert_eq!(t.minpoly(), &p(&[-8, 0, 1]));
        assert!(t.iso().re_positive());
    }

    #[test]
    fn reciprocal_examples() {
        let phi = AlgebraicNumber::positive_real_root(&p(&[-1, -1, 1])).unwrap();
        let r = phi.reciprocal().unwrap();
        assert_eq!(r.minpoly(), &p(&[-1, 1, 1]));
        let (c, _) = r.enclosure(&q("1e-12")).center_f64();
        assert!((c - 0.6180339887).abs() < 1e-9);
        let half = AlgebraicNumber::from_integer(2).reciprocal().unwrap();
        assert_eq!(half.minpoly(), &p(&[-1, 2]));
        assert_eq!(half.as_rational(), Some(q("1/2")));
        let back = sqrt(2).reciprocal().unwrap().reciprocal().unwrap();
        assert_eq!(back.minpoly(), sqrt(2).minpoly());
        assert!(back.equals(&sqrt(2)));
        assert_eq!(AlgebraicNumber::from_integer(0).reciprocal(), Err(AlgError::Zero));
    }

    #[test]
    fn negate_equals_enclosure() {
        let n = sqrt(2).negate();
        assert_eq!(n.minpoly(), &p(&[-2, 0, 1]));
        assert!(!n.equals(&sqrt(2)));
        assert!(n.negate().equals(&sqrt(2)));
        let phi = AlgebraicNumber::positive_real_root(&p(&[-1, -1, 1])).unwrap();
        let tol = q("1e-30");
        let e = phi.enclosure(&tol);
        assert!(e.rad <= tol);
        assert!(e.contains_point(&q("1.6180339887498948482045868343656381177203"), &q("0")) || e.intersects(&near("1.6180339887498948482045868343656381177203", "1e-40")));
    }

    #[test]
    fn selectors() {
        let m = AlgebraicNumber::max_modulus_root(&p(&[-1, -2, 1])).unwrap();
        assert!(m.iso().re_positive());
        // all roots of x^3 - 2 share one modulus; the real one is preferred
        let c = AlgebraicNumber::max_modulus_root(&p(&[-2, 0, 0, 1])).unwrap();
        assert!(c.is_real() && c.iso().re_positive());
        // 1 - sqrt(2) is not of maximal modulus
        let small = AlgebraicNumber::make(&p(&[-1, -2, 1]), &near("-0.4", "0.1")).unwrap();
        assert!(!small.equals(&m));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(sqrt(2)).unwrap();
        assert_eq!(v["minpoly"], serde_json::json!([-2, 0, 1]));
        let back: AlgebraicNumber = serde_json::from_value(v).unwrap();
        assert!(back.equals(&sqrt(2)));
    }

    fn quadratic_or_cubic() -> impl Strategy<Value = AlgebraicNumber> {
        (prop::collection::vec(-6i64..=6, 2..4), any::<prop::sample::Index>()).prop_filter_map("irreducible", |(mut c, idx)| {
            c.push(1);
            let f = p(&c);
            let fs = crate::polyz::factor(&f).ok()?;
            let g = fs.into_iter().map(|(g, _)| g).max_by_key(|g| g.deg())?;
            let ds = isolate_roots_with(&g, &Tolerance::Relative(32)).ok()?;
            Some(AlgebraicNumber::from_parts(g, ds[idx.index(ds.len())].clone()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn add_properties(a in quadratic_or_cubic(), b in quadratic_or_cubic()) {
            let ab = a.add(&b).unwrap();
            let ba = b.add(&a).unwrap();
            prop_assert!(ab.degree() <= a.degree() * b.degree());
            prop_assert!(ab.equals(&ba));
            let (conj, _) = ab.conjugates(40);
            prop_assert_eq!(conj.len(), ab.degree());
        }
    }
}
