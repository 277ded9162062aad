//! Factorization over the integers: squarefree decomposition, then
//! Zassenhaus (modular factorization, Hensel lifting, subset recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::{IntPolynomial, PolyError};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// Number of good primes tried before settling on the one with the fewest
/// modular factors.
const PRIME_CANDIDATES: usize = 6;

/// Complete factorization with the default degree cap.
pub fn factor(p: &IntPolynomial) -> Result<Vec<(IntPolynomial, usize)>, PolyError> {
    factor_with_cap(p, DEFAULT_DEGREE_CAP)
}

/// Irreducible primitive factors with multiplicities, sorted by degree then
/// coefficients. The content of `p` is dropped.
pub fn factor_with_cap(p: &IntPolynomial, cap: usize) -> Result<Vec<(IntPolynomial, usize)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.deg() > cap {
        return Err(PolyError::DegreeCapExceeded { degree: p.deg(), cap });
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.normalized()) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Yun's algorithm over `Z[x]` on a primitive polynomial.
fn squarefree_decomposition(a: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    if a.is_constant() {
        return out;
    }
    let b = a.derivative();
    let c = a.gcd(&b);
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut y = b.div_exact(&c).expect("gcd divides derivative");
    let mut i = 1;
    while !w.is_constant() {
        let z = &y - &w.derivative();
        let g = w.gcd(&z);
        if !g.is_constant() {
            out.push((g.normalized(), i));
        }
        w = w.div_exact(&g).expect("divides");
        y = z.div_exact(&g).expect("divides");
        i += 1;
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Factor a primitive squarefree polynomial of positive degree.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let f = f.normalized();
    if f.deg() <= 1 {
        return vec![f];
    }
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPolynomial::x()).expect("x divides");
        let mut out = vec![IntPolynomial::x()];
        if !rest.is_constant() {
            out.extend(factor_squarefree(&rest));
        }
        return out;
    }

    let lc = f.leading();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut cand = 3u64;
    while tried < PRIME_CANDIDATES {
        if is_prime(cand) && !(lc.clone() % cand).is_zero() {
            let fp = modp::from_int_poly(f.coeffs(), cand);
            if fp.len() == f.coeffs().len() && modp::is_squarefree(&fp, cand) {
                tried += 1;
                let factors = factor_mod_p(&fp, cand);
                let better = match &best {
                    None => true,
                    Some((_, b)) => factors.len() < b.len(),
                };
                if better {
                    best = Some((cand, factors));
                }
                if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
                    break;
                }
            }
        }
        cand += 2;
    }
    let (prime, modular) = best.expect("a good prime exists");
    if modular.len() == 1 {
        return vec![f];
    }

    let bound = coefficient_bound(&f);
    let pb = BigInt::from(prime);
    let mut k: u32 = 1;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(&f, &modular, prime, k);
    recombine(&f, lifted, &modulus)
}

/// Monic factors of `f` over `F_p` (`f` squarefree, `deg f` preserved mod p).
fn factor_mod_p(f: &Fp, p: u64) -> Vec<Fp> {
    let m = modp::monic(f, p);
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5eed);
    let mut out = Vec::new();
    for (part, d) in modp::distinct_degree(&m, p) {
        out.extend(modp::equal_degree(&part, d, p, &mut rng));
    }
    out.sort();
    out
}

/// `2 · |lc| · 2^n · (||f||_2 + 1)`: any factor `g` of `f`, rescaled to
/// leading coefficient `lc(f)`, has coefficients below half of this.
fn coefficient_bound(f: &IntPolynomial) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    BigInt::from(2) * f.leading().abs() * (BigInt::one() << f.deg()) * norm
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_int(a: &Fp) -> IntPolynomial {
    IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce(a: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &IntPolynomial, b: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    reduce(&(a * b), m)
}

/// Lift the monic modular factorization `f ≡ lc · ∏ gᵢ (mod p)` to `mod p^k`.
fn hensel_lift_all(f: &IntPolynomial, factors: &[Fp], p: u64, k: u32) -> Vec<IntPolynomial> {
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv = lc_inverse(&f.leading(), &pk);
    let mut target = reduce(&f.scale(&lc_inv), &pk);
    let mut out = Vec::with_capacity(factors.len());
    for i in 0..factors.len() - 1 {
        let g = factors[i].clone();
        let h = factors[i + 1..].iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
        let (gl, hl) = hensel_lift_pair(&target, &g, &h, p, k);
        out.push(gl);
        target = hl;
    }
    out.push(target);
    out
}

fn lc_inverse(lc: &BigInt, m: &BigInt) -> BigInt {
    // extended Euclid on integers
    let (mut r0, mut r1) = (lc.mod_floor(m), m.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    debug_assert!(r0.is_one(), "leading coefficient not invertible");
    s0.mod_floor(m)
}

/// Linear Hensel lifting of `target ≡ g·h (mod p)` (all monic) to `mod p^k`.
fn hensel_lift_pair(target: &IntPolynomial, g: &Fp, h: &Fp, p: u64, k: u32) -> (IntPolynomial, IntPolynomial) {
    let (one, s, t) = modp::ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1u64]);
    let pb = BigInt::from(p);
    let mut gl = to_int(g);
    let mut hl = to_int(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let err = reduce(&(target - &(&gl * &hl)), &next);
        let e: Fp = modp::trim(
            err.coeffs()
                .iter()
                .map(|c| {
                    debug_assert!((c % &pj).is_zero());
                    modp::reduce_bigint(&(c / &pj), p)
                })
                .collect(),
        );
        if !e.is_empty() {
            let sigma = modp::rem(&modp::mul(&e, &s, p), h, p);
            let tau = modp::rem(&modp::mul(&e, &t, p), g, p);
            gl = reduce(&(&gl + &to_int(&tau).scale(&pj)), &next);
            hl = reduce(&(&hl + &to_int(&sigma).scale(&pj)), &next);
        }
        pj = next;
    }
    (gl, hl)
}

/// Combine lifted factors into true factors, smallest subsets first.
fn recombine(f: &IntPolynomial, mut lifted: Vec<IntPolynomial>, modulus: &BigInt) -> Vec<IntPolynomial> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lc = rest.leading();
            let mut cand = IntPolynomial::constant(lc.clone());
            for &i in &idx {
                cand = mul_mod(&cand, &lifted[i], modulus);
            }
            let cand = IntPolynomial::new(cand.coeffs().iter().map(|c| symmetric_mod(c, modulus)).collect());
            if !cand.is_zero() {
                let prim = cand.normalized();
                let quick = {
                    let c0 = prim.coeff(0);
                    !c0.is_zero() && (rest.coeff(0) % &c0).is_zero()
                };
                if quick {
                    if let Some(q) = rest.div_exact(&prim) {
                        found.push(prim);
                        rest = q.normalized();
                        for &i in idx.iter().rev() {
                            lifted.remove(i);
                        }
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if !rest.is_constant() {
        found.push(rest.normalized());
    }
    found
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
