//! The randomized inequality suites, timed one by one.

use std::time::Instant;

use num_rational::BigRational;
use recip_series::lemmas::{house_chain, reciprocal_height, separation_gap, sum_bounds, tail_bound, HarnessConfig};

fn main() {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let cfg = HarnessConfig { trials, ..HarnessConfig::default() };
    let one = BigRational::from_integer(1.into());
    let suites: Vec<(&str, Box<dyn Fn() -> recip_series::lemmas::SuiteResult>)> = vec![
        ("chain", Box::new(|| house_chain(&cfg, 6))),
        ("reciprocal", Box::new(|| reciprocal_height(&cfg, 5))),
        ("sum", Box::new(|| sum_bounds(&cfg, 3))),
        ("separation", Box::new(|| separation_gap(&cfg, 4))),
        ("tail", Box::new(move || tail_bound(&[one.clone()], 50))),
    ];
    for (name, f) in suites {
        let t = Instant::now();
        let r = f();
        println!("{name:>10}: {}/{} passed, {} tight, {:.2?}", r.passed, r.trials, r.tight, t.elapsed());
    }
}
