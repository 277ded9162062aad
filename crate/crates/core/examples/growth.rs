//! Normalized growth exponents of a dth-root family and the positions where
//! the sequence jumps past its running maximum.

use recip_series::certify::{growth_exponents, SequenceSpec};

fn main() {
    let spec = SequenceSpec::from_json_str(r#"{"family": "dth_root", "d": 2, "formula": "2^(3^n) + n", "prefix_length": 6}"#).unwrap();
    let seq = spec.materialize().unwrap();
    let g = growth_exponents(&seq, 1, 2);
    for row in &g.rows {
        println!("n={} deg={} denom={} t_n={}{}", row.n, row.degree, row.denominator, row.normalized, if row.jump { " jump" } else { "" });
    }
    println!("jumps at {:?}", g.jumps);
}
