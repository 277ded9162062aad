use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPolynomial;

/// Resultant with the convention `Res(p, q) = lc(p)^deg q · ∏ q(αᵢ)` over the
/// roots `αᵢ` of `p`, by the subresultant PRS.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    if p.deg() == 0 {
        return num_traits::pow(p.leading(), q.deg());
    }
    if q.deg() == 0 {
        return num_traits::pow(q.leading(), p.deg());
    }
    let ca = p.content();
    let cb = q.content();
    let mut a = p.div_exact_int(&ca);
    let mut b = q.div_exact_int(&cb);
    let t = num_traits::pow(ca, q.deg()) * num_traits::pow(cb, p.deg());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_exact_int(&divisor);
        g = a.leading();
        if delta > 0 {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            debug_assert!(num.is_multiple_of(&den));
            h = num / den;
        }
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.deg() == 0 {
            let da = a.deg();
            let num = num_traits::pow(b.leading(), da);
            let den = num_traits::pow(h, da - 1);
            return s * t * (num / den);
        }
    }
}

/// Resultant as the determinant of the Sylvester matrix (fraction-free
/// Bareiss elimination). Slow; kept as an independent check of [`resultant`].
pub fn sylvester_resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (p.deg(), q.deg());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows 0..n: shifts of p (highest coefficient first); rows n..n+m: shifts of q
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = p.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = q.coeff(n - j);
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])), BigInt::from(-1));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), BigInt::from(1));
        let q = p(&[3, -1, 4, 1]);
        assert!(resultant(&q, &q).is_zero());
        // constant cases
        assert_eq!(resultant(&p(&[3]), &p(&[1, 0, 1])), BigInt::from(9));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[2])), BigInt::from(4));
    }

    #[test]
    fn sign_convention_matches_root_product() {
        // Res(2x - 3, x^2 - 5) = 2^2 · ((3/2)^2 - 5) = 9 - 20 = -11
        assert_eq!(resultant(&p(&[-3, 2]), &p(&[-5, 0, 1])), BigInt::from(-11));
        // swapped order: (-1)^(1·2) · Res = -11
        assert_eq!(resultant(&p(&[-5, 0, 1]), &p(&[-3, 2])), BigInt::from(-11));
        // Res(x^2 - 5, x - 1): (-1)^2 · Res(x - 1, x^2 - 5) = 1 - 5
        assert_eq!(resultant(&p(&[-5, 0, 1]), &p(&[-1, 1])), BigInt::from(-4));
    }

    proptest! {
        #[test]
        fn subresultant_matches_sylvester(
            a in prop::collection::vec(-12i64..=12, 1..7),
            b in prop::collection::vec(-12i64..=12, 1..7),
        ) {
            let (pa, pb) = (p(&a), p(&b));
            prop_assert_eq!(resultant(&pa, &pb), sylvester_resultant(&pa, &pb));
        }
    }
}
