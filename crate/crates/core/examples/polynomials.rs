//! Integer polynomial toolkit: factoring, resultants, and the polynomial whose
//! roots are the pairwise sums of roots.

use recip_series::polyz::{factor, resultant, IntPolynomial};

fn main() {
    let p = IntPolynomial::parse("[-1, 0, 0, 0, 1]").expect("valid list"); // x^4 - 1
    println!("p = {p}");
    for (f, m) in factor(&p).expect("within cap") {
        println!("  factor {f} (multiplicity {m})");
    }

    let a = IntPolynomial::from_i64s(&[-2, 0, 1]);
    let b = IntPolynomial::from_i64s(&[-3, 0, 1]);
    println!("res({a}, {b}) = {}", resultant(&a, &b));
    println!("sum_poly = {}", a.sum_poly(&b).expect("nonzero"));
    println!("recip_poly of x^3 - 2x + 5 = {}", IntPolynomial::from_i64s(&[5, -2, 0, 1]).recip_poly().unwrap());
}
