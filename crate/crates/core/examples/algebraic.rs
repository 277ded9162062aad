//! Exact algebraic number arithmetic. Every result carries its minimal
//! polynomial and an isolating disk.

use recip_series::algnum::AlgebraicNumber;
use recip_series::polyz::IntPolynomial;

fn main() {
    let sqrt2 = AlgebraicNumber::positive_real_root(&IntPolynomial::from_i64s(&[-2, 0, 1])).unwrap();
    let cbrt3 = AlgebraicNumber::positive_real_root(&IntPolynomial::from_i64s(&[-3, 0, 0, 1])).unwrap();
    let s = sqrt2.add(&cbrt3).unwrap();
    println!("sqrt2 + cbrt3: degree {}, minpoly {}", s.degree(), s.minpoly());
    let r = s.reciprocal().unwrap();
    println!("1/(sqrt2 + cbrt3): minpoly {}", r.minpoly());
    println!("  isolating disk {}", r.iso());

    let z = sqrt2.add(&sqrt2.negate()).unwrap();
    println!("sqrt2 - sqrt2 = {}", z.as_rational().map(|q| q.to_string()).unwrap_or_default());
}
