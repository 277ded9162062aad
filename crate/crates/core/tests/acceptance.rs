//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use recip_series::algnum::AlgebraicNumber;
use recip_series::certify::{
    find_certificate, growth_denominator, hypothesis_check, CertifyError, Estimator, SearchParams, SequenceSpec,
};
use recip_series::cli;
use recip_series::dyadic::parse_rational;
use recip_series::heights::{house_prec, mahler_prec};
use recip_series::lemmas::{house_chain, reciprocal_height, separation_gap, sum_bounds, tail_bound, zeta_tail, HarnessConfig};
use recip_series::magnitude::MagnitudeBound;
use recip_series::polyz::IntPolynomial;

type Outcome = Result<String, String>;

fn cfg(trials: usize, max_degree: usize) -> HarnessConfig {
    HarnessConfig { trials, seed: 42, max_degree, coeff_bound: 20 }
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn tol20() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(20))
}

/// Absolute width of the enclosure of `m`, as an exact rational.
fn abs_width(m: &MagnitudeBound) -> BigRational {
    m.to_interval(256).width().to_rational()
}

fn suite(r: recip_series::lemmas::SuiteResult, want: usize) -> Outcome {
    if r.trials != want {
        return Err(format!("{}: ran {} trials, expected {want}", r.name, r.trials));
    }
    if !r.all_passed() {
        return Err(format!("{}: {} failures, first: {}", r.name, r.failures.len(), r.failures[0]));
    }
    Ok(format!("{}/{} passed ({} tight)", r.passed, r.trials, r.tight))
}

fn house_chain_200() -> Outcome {
    let t = Instant::now();
    let r = suite(house_chain(&cfg(200, 6), 6), 200)?;
    let el = t.elapsed();
    if el > Duration::from_secs(60) {
        return Err(format!("{r}, but took {el:.1?}"));
    }
    Ok(format!("{r} in {el:.1?}"))
}

fn equality_cases() -> Outcome {
    let tol = tol20();
    for d in [2usize, 3, 5] {
        for a in [2i64, 10, 97] {
            let alpha = AlgebraicNumber::positive_real_root(&IntPolynomial::pure_power(d, &BigInt::from(a)))
                .map_err(|e| e.to_string())?;
            let m = mahler_prec(&alpha, 160);
            if !m.contains_rational(&BigRational::from_integer(a.into()), 160) {
                return Err(format!("M(x^{d}-{a}) enclosure {m} misses {a}"));
            }
            if abs_width(&m) > tol {
                return Err(format!("M(x^{d}-{a}) enclosure too wide"));
            }
        }
    }
    for c in [&[-1i64, -1, 1][..], &[-1, -1, 0, 1]] {
        let poly = p(c);
        let alpha = AlgebraicNumber::max_modulus_root(&poly).map_err(|e| e.to_string())?;
        let (m, h) = (mahler_prec(&alpha, 160), house_prec(&alpha, 160));
        if !m.overlaps(&h) {
            return Err(format!("{}: M {m} and house {h} do not overlap", poly.to_list_string()));
        }
        if abs_width(&m) > tol || abs_width(&h) > tol {
            return Err(format!("{}: enclosures too wide", poly.to_list_string()));
        }
    }
    Ok("9 pure powers contain a; 2 Pisot cases overlap; widths <= 1e-20".into())
}

fn sums_100() -> Outcome {
    let r = suite(sum_bounds(&cfg(100, 3), 3), 100)?;
    let two = AlgebraicNumber::positive_real_root(&p(&[-2, 0, 1])).map_err(|e| e.to_string())?;
    let three = AlgebraicNumber::positive_real_root(&p(&[-3, 0, 1])).map_err(|e| e.to_string())?;
    let s = two.add(&three).map_err(|e| e.to_string())?;
    if s.minpoly() != &p(&[1, 0, -10, 0, 1]) {
        return Err(format!("minpoly of sqrt2+sqrt3 is {}", s.minpoly().to_list_string()));
    }
    Ok(format!("{r}; sqrt2+sqrt3 has minpoly x^4-10x^2+1"))
}

fn tail_bounds() -> Outcome {
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let r = suite(tail_bound(&[one, half], 100), 200)?;
    let two = BigRational::from_integer(2.into());
    let t = zeta_tail(2, &two, 200, 128);
    let (lo, hi) = (t.lo.to_f64(), t.hi.to_f64());
    if !(lo <= 0.644935 && hi >= 0.644934 && hi < 0.6450) {
        return Err(format!("k=2 tail enclosure [{lo}, {hi}] does not match 0.6449"));
    }
    if !(t.hi.to_rational() <= BigRational::new(3.into(), 2.into())) {
        return Err("k=2 tail exceeds 1.5".into());
    }
    Ok(format!("{r}; k=2 tail in [{lo:.6}, {hi:.6}] <= 1.5"))
}

fn tower(prefix: usize) -> SequenceSpec {
    let v = serde_json::json!({
        "family": "integer",
        "formula": "2^(4^n)",
        "prefix_length": prefix,
        "d": 1,
        "tail": {"kind": "geometric_floor", "params": {"ratio": "2"}, "from_index": 1}
    });
    SequenceSpec::from_value(&v).expect("valid spec")
}

fn certificate_reproduction() -> Outcome {
    let t = Instant::now();
    let seq = tower(4).materialize().map_err(|e| e.to_string())?;
    let hyp = hypothesis_check(&seq, &BigRational::one(), 1);
    let run = |hmax: MagnitudeBound| {
        let mut params = SearchParams::new(1, 1, hmax, (1, 3));
        params.estimators = vec![Estimator::Ratio];
        find_certificate(&seq, &params, &hyp)
    };
    let c = run(MagnitudeBound::pow2(1)).map_err(|e| format!("Hmax=2: {e}"))?;
    let lhs = parse_rational(&c.lhs_log2_upper).ok_or("unparsable lhs")?;
    if c.witness_n != 1 || lhs > BigRational::from_integer((-8).into()) {
        return Err(format!("Hmax=2: witness {} with lhs {}", c.witness_n, c.lhs_log2_upper));
    }
    c.recheck().map_err(|e| format!("Hmax=2 recheck: {e}"))?;
    let c10 = run(MagnitudeBound::pow2(10)).map_err(|e| format!("Hmax=2^10: {e}"))?;
    if c10.witness_n != 2 {
        return Err(format!("Hmax=2^10: witness {}", c10.witness_n));
    }
    c10.recheck().map_err(|e| format!("Hmax=2^10 recheck: {e}"))?;
    let el = t.elapsed();
    if el > Duration::from_secs(5) {
        return Err(format!("took {el:.1?}"));
    }
    Ok(format!(
        "Hmax=2: N=1, lhs <= {}; Hmax=2^10: N=2, lhs <= {}; {el:.1?}",
        c.lhs_log2_upper, c10.lhs_log2_upper
    ))
}

fn erdos_denominators() -> Outcome {
    for n in 1..=30usize {
        let got = growth_denominator(n, 1, 1);
        let want = BigInt::one() << (n - 1);
        if got != want {
            return Err(format!("n={n}: {got} != {want}"));
        }
    }
    Ok("denominators equal 2^(n-1) for n = 1..30".into())
}

fn negative_control() -> Outcome {
    let spec = SequenceSpec::from_value(&serde_json::json!({
        "family": "integer",
        "terms": (1..=51).map(|n: u64| (n * n).to_string()).collect::<Vec<_>>(),
        "tail": {"kind": "polynomial_floor", "params": {"epsilon": "1"}, "from_index": 1}
    }))
    .map_err(|e| e.to_string())?;
    let seq = spec.materialize().map_err(|e| e.to_string())?;
    let hyp = hypothesis_check(&seq, &BigRational::one(), 1);
    let mut params = SearchParams::new(1, 1, MagnitudeBound::pow2(1), (1, 50));
    params.estimators = vec![Estimator::Polynomial];
    match find_certificate(&seq, &params, &hyp) {
        Ok(c) => Err(format!("certificate found at N = {}", c.witness_n)),
        Err(CertifyError::NoWitness(r)) => {
            if r.rows.len() != 50 {
                return Err(format!("{} rows, expected 50", r.rows.len()));
            }
            let mut min: Option<BigRational> = None;
            for row in &r.rows {
                let s = row.best_lhs_log2_upper.as_ref().ok_or(format!("N={}: no bound", row.n))?;
                let v = parse_rational(s).ok_or("unparsable bound")?;
                if v.is_negative() {
                    return Err(format!("N={}: bound {s} < 0", row.n));
                }
                min = Some(match min {
                    Some(m) if m <= v => m,
                    _ => v,
                });
            }
            let min = min.unwrap_or_else(BigRational::zero);
            Ok(format!("no witness for N <= 50; smallest bound {:.4}", to_f64(&min)))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn capture(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("recip-series").chain(args.iter().copied()), &mut o, &mut e);
    (code, o, e)
}

fn determinism() -> Outcome {
    let fx = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/");
    let tower = format!("{fx}tower.json");
    let surds = format!("{fx}surds.json");
    let squares = format!("{fx}squares.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["certify", "--spec", &tower],
        vec!["certify", "--spec", &tower, "--format", "text", "--height-max", "2^10"],
        vec!["certify", "--spec", &squares, "--estimators", "polynomial"],
        vec!["analyze", "--spec", &tower, "--format", "json"],
        vec!["analyze", "--spec", &surds],
        vec!["sum-info", "--spec", &surds, "--format", "json"],
        vec!["check-lemmas", "--trials", "20", "--seed", "9", "--max-degree", "4"],
        vec!["check-lemmas", "--trials", "20", "--seed", "9", "--format", "json"],
    ];
    for args in &runs {
        let a = capture(args);
        let b = capture(args);
        if a != b {
            return Err(format!("outputs differ for {}", args.join(" ")));
        }
        if a.1.is_empty() {
            return Err(format!("no output for {}", args.join(" ")));
        }
    }
    Ok(format!("{} command lines byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 house chain, 200 trials, degree <= 6", house_chain_200),
        ("2 equality cases", equality_cases),
        ("3 reciprocal height, 100 trials, degree <= 5", || suite(reciprocal_height(&cfg(100, 5), 5), 100)),
        ("4 sum degree and height bounds, 100 pairs, degree <= 3", sums_100),
        ("5 separation gap, 100 pairs, degree <= 4", || suite(separation_gap(&cfg(100, 4), 4), 100)),
        ("6 polynomial tail bound", tail_bounds),
        ("7 certificate for 2^(4^n)", certificate_reproduction),
        ("8 growth denominators for D = d = 1", erdos_denominators),
        ("9 negative control n^2", negative_control),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
