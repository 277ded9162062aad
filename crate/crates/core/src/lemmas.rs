//! Seeded randomized checks of the height and tail inequalities the
//! certificates rest on. Failures are reported as data, with the offending
//! polynomials verbatim.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algnum::AlgebraicNumber;
use crate::heights::{check_house_chain, distance, liouville_gap, weil_height};
use crate::interval::Interval;
use crate::magnitude::{Comparison, MagnitudeBound};
use crate::polyz::{factor_with_cap, IntPolynomial, DEFAULT_DEGREE_CAP};
use crate::roots::isolate_roots_rel;

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_degree: usize,
    /// Coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig { trials: 200, seed: 42, max_degree: 6, coeff_bound: 20 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    /// Passing trials where the enclosures overlapped instead of separating.
    pub tight: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, trials: 0, passed: 0, tight: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, tight: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passed += 1;
            self.tight += tight as usize;
        } else {
            self.failures.push(witness());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rng_for(cfg: &HarnessConfig, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A random irreducible polynomial of degree in `1..=max_degree` with
/// nonzero constant term, normalized.
pub fn random_irreducible(rng: &mut impl Rng, max_degree: usize, bound: i64, monic: bool) -> IntPolynomial {
    assert!(max_degree >= 1 && bound >= 1);
    loop {
        let deg = rng.gen_range(1..=max_degree);
        let mut c: Vec<BigInt> = (0..deg).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        let lead = if monic {
            1
        } else {
            let v = rng.gen_range(1..=bound);
            if rng.gen_bool(0.5) { -v } else { v }
        };
        c.push(BigInt::from(lead));
        if c[0] == BigInt::from(0) {
            continue;
        }
        let p = IntPolynomial::new(c);
        let Ok(f) = factor_with_cap(&p, DEFAULT_DEGREE_CAP) else { continue };
        if f.len() == 1 && f[0].1 == 1 && f[0].0.deg() == deg {
            return f[0].0.clone();
        }
    }
}

/// A uniformly chosen root of a random irreducible polynomial.
pub fn random_algebraic(rng: &mut impl Rng, max_degree: usize, bound: i64, monic: bool) -> AlgebraicNumber {
    let p = random_irreducible(rng, max_degree, bound, monic);
    let roots = isolate_roots_rel(&p, 32).expect("irreducible polynomials are squarefree");
    let i = rng.gen_range(0..roots.len());
    AlgebraicNumber::from_parts(p, roots[i].clone())
}

fn show(a: &AlgebraicNumber) -> String {
    format!("minpoly {} root {}", a.minpoly().to_list_string(), a.iso())
}

/// `M^(1/d) ≤ house ≤ M` for random algebraic integers.
pub fn house_chain(cfg: &HarnessConfig, max_degree: usize) -> SuiteResult {
    let mut rng = rng_for(cfg, 2);
    let mut r = SuiteResult::new("house chain M^(1/d) <= house <= M");
    for _ in 0..cfg.trials {
        let a = random_algebraic(&mut rng, max_degree, cfg.coeff_bound, true);
        let c = check_house_chain(&a).expect("monic");
        let rep = &c.report;
        let tight = rep.height.overlaps(&rep.house) || rep.house.overlaps(&rep.mahler);
        r.record(c.holds, tight, || show(&a));
    }
    r
}

/// `H(α) = H(1/α)`, and double reversal of the minimal polynomial is exact.
pub fn reciprocal_height(cfg: &HarnessConfig, max_degree: usize) -> SuiteResult {
    let mut rng = rng_for(cfg, 3);
    let mut r = SuiteResult::new("reciprocal height H(a) = H(1/a)");
    for _ in 0..cfg.trials {
        let a = random_algebraic(&mut rng, max_degree, cfg.coeff_bound, false);
        let b = a.reciprocal().expect("nonzero");
        let (ha, hb) = (weil_height(&a), weil_height(&b));
        let twice = a.minpoly().recip_poly().and_then(|q| q.recip_poly());
        let ok = ha.overlaps(&hb) && twice.as_ref() == Ok(a.minpoly());
        r.record(ok, false, || show(&a));
    }
    r
}

/// `deg(α+β) ≤ deg α · deg β` and `H(α+β) ≤ 4·H(α)·H(β)` on exact sums.
pub fn sum_bounds(cfg: &HarnessConfig, max_degree: usize) -> SuiteResult {
    let mut rng = rng_for(cfg, 4);
    let mut r = SuiteResult::new("sum bounds deg(a+b) <= deg a deg b, H(a+b) <= 4 H(a) H(b)");
    for _ in 0..cfg.trials {
        let a = random_algebraic(&mut rng, max_degree, cfg.coeff_bound, false);
        let b = random_algebraic(&mut rng, max_degree, cfg.coeff_bound, false);
        let (ok, tight) = match a.add(&b) {
            Ok(s) => {
                let bound = MagnitudeBound::pow2(2).mul(&weil_height(&a)).mul(&weil_height(&b));
                let cmp = weil_height(&s).compare_le(&bound);
                (s.degree() <= a.degree() * b.degree() && cmp != Comparison::Violated, cmp == Comparison::Tight)
            }
            Err(_) => (false, false),
        };
        r.record(ok, tight, || format!("{} + {}", show(&a), show(&b)));
    }
    r
}

/// `|α − β| ≥ gap(α, β)` for non-conjugate pairs.
pub fn separation_gap(cfg: &HarnessConfig, max_degree: usize) -> SuiteResult {
    let mut rng = rng_for(cfg, 5);
    let mut r = SuiteResult::new("separation |a - b| >= gap(a, b)");
    for _ in 0..cfg.trials {
        let a = random_algebraic(&mut rng, max_degree, cfg.coeff_bound, false);
        let b = loop {
            let b = random_algebraic(&mut rng, max_degree, cfg.coeff_bound, false);
            if b.minpoly() != a.minpoly() {
                break b;
            }
        };
        let gap = liouville_gap(&a, &b).expect("different minimal polynomials");
        let d = distance(&a, &b);
        r.record(gap.certainly_le(&d), false, || format!("{} vs {}", show(&a), show(&b)));
    }
    r
}

/// `n^(−s)` for `n = 0..=upto` (entry 0 unused).
fn inv_powers(s: &BigRational, upto: u64, prec: u32) -> Vec<Interval> {
    let neg_s = Interval::from_rational(s, prec).neg();
    std::iter::once(Interval::zero())
        .chain((1..=upto).map(|n| Interval::from_int(n).log2(prec).mul(&neg_s, prec).exp2(prec)))
        .collect()
}

fn zeta_tail_with(pows: &[Interval], k: u64, s: &BigRational, m: u64, prec: u32) -> Interval {
    let mut acc = Interval::zero();
    for n in k..=k + m {
        acc = acc.add(&pows[n as usize], prec);
    }
    // n^(1−s) = n·n^(−s)
    let big_k = k + m + 1;
    let upper = pows[big_k as usize].scale_int(&BigInt::from(big_k), prec);
    let lower = pows[(big_k - 1) as usize].scale_int(&BigInt::from(big_k - 1), prec);
    let sm1 = Interval::from_rational(&(s - BigRational::from_integer(1.into())), prec);
    let rem = Interval::new(upper.lo, lower.hi).div(&sm1, prec);
    acc.add(&rem, prec)
}

/// Enclosure of `Σ_{n≥k} n^(−s)` for `s > 1`: the terms `k..k+m` summed in
/// interval arithmetic plus `[K^(1−s), (K−1)^(1−s)]/(s−1)` for the rest,
/// `K = k+m+1`.
pub fn zeta_tail(k: u64, s: &BigRational, m: u64, prec: u32) -> Interval {
    assert!(k >= 1);
    zeta_tail_with(&inv_powers(s, k + m + 1, prec), k, s, m, prec)
}

/// `(2 + 1/ε) / a_k^(ε/(1+ε))` with `a_k = k^(1+ε)`, as an interval.
pub fn polynomial_tail_bound(k: u64, eps: &BigRational, prec: u32) -> Interval {
    let one = BigRational::from_integer(1.into());
    let c = Interval::from_rational(&(BigRational::from_integer(2.into()) + one.clone() / eps), prec);
    let e = Interval::from_rational(&(&one + eps), prec);
    let a = Interval::from_int(k).log2(prec).mul(&e, prec).exp2(prec);
    let frac = Interval::from_rational(&(eps / (&one + eps)), prec);
    let denom = a.log2(prec).mul(&frac, prec).exp2(prec);
    c.div(&denom, prec)
}

/// The tail bound against rigorous tail enclosures of `Σ n^(−(1+ε))` for
/// each `ε` and `k = 1..=k_max`.
pub fn tail_bound(epsilons: &[BigRational], k_max: u64) -> SuiteResult {
    let mut r = SuiteResult::new("tail bound sum_{n>=k} 1/a_n < (2+1/e)/a_k^(e/(1+e))");
    let prec = 128;
    for eps in epsilons {
        let s = BigRational::from_integer(1.into()) + eps;
        let pows = inv_powers(&s, k_max + 201, prec);
        for k in 1..=k_max {
            let tail = zeta_tail_with(&pows, k, &s, 200, prec);
            let bound = polynomial_tail_bound(k, eps, prec);
            r.record(tail.hi < bound.lo, false, || format!("eps {eps} k {k}: tail <= {} bound >= {}", tail.hi.to_f64(), bound.lo.to_f64()));
        }
    }
    r
}

/// Every suite at the configured trial count. Degree caps per suite are
/// `min(max_degree, c)` with `c` = 6, 5, 3, 4 for the chain, reciprocal,
/// sum and separation suites, keeping sum polynomials within the
/// factorization cap.
pub fn run_all(cfg: &HarnessConfig) -> Vec<SuiteResult> {
    let m = cfg.max_degree.max(1);
    let half = BigRational::new(1.into(), 2.into());
    vec![
        house_chain(cfg, m.min(6)),
        reciprocal_height(cfg, m.min(5)),
        sum_bounds(cfg, m.min(3)),
        separation_gap(cfg, m.min(4)),
        tail_bound(&[BigRational::from_integer(1.into()), half], 100),
    ]
}
