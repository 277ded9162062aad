//! Exact partial sums of reciprocals with their degree and height bounds.

use recip_series::certify::{partial_sum_exact, SequenceSpec};

fn main() {
    let spec = SequenceSpec::from_json_str(r#"{"family": "dth_root", "d": 2, "terms": [2, 3, 5]}"#).unwrap();
    let seq = spec.materialize().unwrap();
    for n in 1..=3 {
        let r = partial_sum_exact(&seq, n, 24).unwrap();
        println!("N={n}: degree {} (bound {}), minpoly {}", r.degree, r.degree_bound, r.value.minpoly());
        println!("  H = {} <= {}: {:?}", r.height, r.height_bound, r.height_check);
    }
}
