//! Polynomials over a small prime field `F_p` (`p < 2^31`), low-to-high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn reduce_bigint(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

pub(crate) fn from_int_poly(c: &[BigInt], p: u64) -> Fp {
    trim(c.iter().map(|x| reduce_bigint(x, p)).collect())
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

fn deg(a: &Fp) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, bj, p)) % p;
            }
        }
    }
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` monic.
pub(crate) fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = *r0.last().expect("gcd of zero polynomials");
    let li = inv_mod(l, p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
}

/// `base^e mod m` for a big exponent.
pub(crate) fn powmod_big(base: &Fp, e: &BigInt, m: &Fp, p: u64) -> Fp {
    let mut result = vec![1u64];
    let b = rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = rem(&mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
    }
    result
}

pub(crate) fn is_squarefree(a: &Fp, p: u64) -> bool {
    let d = derivative(a, p);
    if d.is_empty() {
        return false;
    }
    gcd(a, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub(crate) fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigInt::from(p);
    let mut d = 0;
    while deg(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod_big(&h, &pb, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, d));
        }
    }
    if deg(&rest).unwrap_or(0) >= 1 {
        let dd = deg(&rest).unwrap();
        out.push((rest, dd));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd `p`).
pub(crate) fn equal_degree<R: Rng>(f: &Fp, d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = deg(f).unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let exp = (num_traits::pow(BigInt::from(p), d) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g0 = gcd(&a, f, p);
        let g = if g0.len() > 1 {
            g0
        } else {
            let b = powmod_big(&a, &exp, f, p);
            gcd(&sub(&b, &vec![1u64], p), f, p)
        };
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        // x^4 - 1 splits completely mod 5
        let f = vec![4u64, 0, 0, 0, 1];
        let parts = distinct_degree(&f, 5);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let lin = equal_degree(&parts[0].0, 1, 5, &mut rng);
        assert_eq!(lin.len(), 4);
        let prod = lin.iter().fold(vec![1u64], |acc, g| mul(&acc, g, 5));
        assert_eq!(prod, f);
    }

    #[test]
    fn ext_gcd_identity() {
        let a = vec![1u64, 2, 1]; // (x+1)^2
        let b = vec![3u64, 1]; // x+3
        let (g, s, t) = ext_gcd(&a, &b, 7);
        assert_eq!(g, vec![1]);
        // s·a + t·b = s·a − (7 − 1)·t·b mod 7
        let tb = mul(&mul(&t, &b, 7), &vec![6], 7);
        assert_eq!(sub(&mul(&s, &a, 7), &tb, 7), vec![1]);
        assert!(sub(&a, &a, 7).is_empty());
    }
}
