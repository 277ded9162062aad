//! Refute low-degree algebraicity of sum 1/2^(4^n) and recheck the
//! certificate from its JSON.

use num_rational::BigRational;
use num_traits::One;
use recip_series::certify::{find_certificate, hypothesis_check, Certificate, SearchParams, SequenceSpec};
use recip_series::magnitude::MagnitudeBound;

fn main() {
    let spec = SequenceSpec::from_json_str(
        r#"{"family": "integer", "formula": "2^(4^n)", "prefix_length": 4, "d": 1,
            "tail": {"kind": "geometric_floor", "params": {"ratio": "2"}, "from_index": 1}}"#,
    )
    .unwrap();
    let seq = spec.materialize().unwrap();
    let hyp = hypothesis_check(&seq, &BigRational::one(), 1);
    for k in [1, 10, 100] {
        let params = SearchParams::new(1, 1, MagnitudeBound::pow2(k), (1, 3));
        match find_certificate(&seq, &params, &hyp) {
            Ok(c) => {
                let json = serde_json::to_string(&c).unwrap();
                let back: Certificate = serde_json::from_str(&json).unwrap();
                println!("H <= 2^{k}: N = {}, log2 LHS <= {}, recheck {:?}", c.witness_n, c.lhs_log2_upper, back.recheck().is_ok());
            }
            Err(e) => println!("H <= 2^{k}: {e}"),
        }
    }
}
