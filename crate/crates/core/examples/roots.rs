//! Certified root isolation: disjoint disks, each holding exactly one root.

use num_rational::BigRational;
use recip_series::polyz::IntPolynomial;
use recip_series::roots::{isolate_roots, modulus};

fn main() {
    let p = IntPolynomial::from_i64s(&[-1, -1, 0, 0, 0, 1]); // x^5 - x - 1
    let tol = BigRational::new(1.into(), BigRational::from_integer(10.into()).numer().pow(30));
    let disks = isolate_roots(&p, &tol).expect("squarefree");
    println!("roots of {p}:");
    for d in &disks {
        println!("  {d}  |z| = {}", modulus(d));
    }
}
