//! Mahler measure, house and absolute Weil height as rigorous enclosures.

use recip_series::algnum::AlgebraicNumber;
use recip_series::heights::{check_house_chain, liouville_gap, distance};
use recip_series::polyz::IntPolynomial;

fn main() {
    for c in [&[-1i64, -1, 1][..], &[-1, -1, 0, 1], &[1, -3, 0, 1], &[-97, 0, 0, 0, 0, 1]] {
        let p = IntPolynomial::from_i64s(c);
        let a = AlgebraicNumber::max_modulus_root(&p).unwrap();
        let chain = check_house_chain(&a).unwrap();
        let r = &chain.report;
        println!("{p}: H = {}, house = {}, M = {}", r.height, r.house, r.mahler);
        println!("  M^(1/d) <= house: {:?}, house <= M: {:?}", chain.lower, chain.upper);
    }

    let a = AlgebraicNumber::positive_real_root(&IntPolynomial::from_i64s(&[-2, 0, 1])).unwrap();
    let b = AlgebraicNumber::from_rational(&num_rational::BigRational::new(99.into(), 70.into()));
    println!("|sqrt2 - 99/70| = {} >= gap {}", distance(&a, &b), liouville_gap(&a, &b).unwrap());
}
