//! Command-line front end. [`run`] writes to the given sinks and returns the
//! process exit code, so the binary stays a one-liner and tests can capture
//! output.
//!
//! Exit codes: 0 ok, 1 hypothesis violation (or a failed check), 2 malformed
//! input, 3 no witness found, 4 degree cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::certify::{
    find_certificate, growth_exponents, hypothesis_check, partial_sum_exact, Certificate, CertifyError, CheckStatus,
    Estimator, FailureReport, HypothesisReport, SearchParams, Sequence, SequenceSpec,
};
use crate::dyadic::{parse_rational, Dyadic};
use crate::lemmas::{run_all, HarnessConfig};
use crate::magnitude::MagnitudeBound;
use crate::polyz::DEFAULT_DEGREE_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NO_WITNESS: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "recip-series", version, about = "Degree certificates for series of reciprocals of algebraic integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-term table (degree, house, Mahler measure, height, growth exponent) and hypothesis checks.
    Analyze(AnalyzeArgs),
    /// Search for a witness N and emit a certificate.
    Certify(CertifyArgs),
    /// Seeded randomized checks of the height and tail inequalities.
    CheckLemmas(LemmaArgs),
    /// Exact partial sum of reciprocals with degree and height bounds.
    SumInfo(SumArgs),
    /// Re-evaluate a certificate from its recorded values.
    Recheck(RecheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    /// Sequence description (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    /// Degree D being refuted.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree: u64,
    /// Cap d on term degrees [default: d from the sequence file, else the largest term degree].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dcap: Option<u64>,
    /// Growth floor exponent p/q [default: the declared polynomial floor, else 1].
    #[arg(long, value_parser = positive_rational)]
    pub epsilon: Option<BigRational>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Absolute radius p/q for the printed enclosure of each term.
    #[arg(long, value_parser = positive_rational)]
    pub tol: Option<BigRational>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Height cap, decimal or 2^k.
    #[arg(long, default_value = "2", value_parser = height_cap)]
    pub height_max: MagnitudeBound,
    /// Inclusive range a..b of N [default: 1..(prefix length − 1)].
    #[arg(long, value_parser = n_range)]
    pub n_range: Option<(usize, usize)>,
    /// Comma-separated estimator order.
    #[arg(long, default_value = "ratio,log,polynomial", value_delimiter = ',', value_parser = estimators)]
    pub estimators: Vec<Estimator>,
    /// Use house^(1/deg) in the critical product.
    #[arg(long)]
    pub pisot_salem: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Degree cap for random polynomials (the sum suite uses at most 3, the separation suite at most 4).
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SumArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Use N = b of a..b [default: the whole prefix].
    #[arg(long, value_parser = n_range)]
    pub n_range: Option<(usize, usize)>,
    /// Factorization degree cap.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: u64,
    /// Absolute radius p/q for the printed enclosure.
    #[arg(long, value_parser = positive_rational)]
    pub tol: Option<BigRational>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RecheckArgs {
    /// Certificate JSON.
    #[arg(long)]
    pub certificate: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn positive_rational(s: &str) -> Result<BigRational, String> {
    let q = parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))?;
    if !q.is_positive() {
        return Err("must be positive".into());
    }
    Ok(q)
}

fn height_cap(s: &str) -> Result<MagnitudeBound, String> {
    if let Some(k) = s.trim().strip_prefix("2^") {
        let k: i64 = k.trim().parse().map_err(|_| format!("bad exponent in {s}"))?;
        if k < 0 {
            return Err("height cap below 1".into());
        }
        return Ok(MagnitudeBound::pow2(k));
    }
    let q = positive_rational(s)?;
    if q < BigRational::from_integer(1.into()) {
        return Err("height cap below 1".into());
    }
    Ok(MagnitudeBound::from_rational(&q, 128))
}

fn n_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad N in {s}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let a = parse(s)?;
            (a, a)
        }
    };
    if a == 0 {
        return Err("N starts at 1".into());
    }
    Ok((a, b))
}

fn estimators(s: &str) -> Result<Estimator, String> {
    s.parse()
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let r = match &cli.command {
        Command::Analyze(a) => analyze(a, out),
        Command::Certify(a) => certify(a, out),
        Command::CheckLemmas(a) => check_lemmas(a, out),
        Command::SumInfo(a) => sum_info(a, out),
        Command::Recheck(a) => recheck(a, out),
    };
    match r {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn malformed(e: impl ToString) -> (i32, String) {
    (EXIT_MALFORMED, e.to_string())
}

fn io(e: std::io::Error) -> (i32, String) {
    (EXIT_MALFORMED, format!("write failed: {e}"))
}

fn exit_for(e: &CertifyError) -> i32 {
    match e {
        CertifyError::NoWitness(_) => EXIT_NO_WITNESS,
        CertifyError::HypothesesNotMet(_) => EXIT_VIOLATION,
        CertifyError::DegreeCapExceeded { .. } => EXIT_CAP,
        CertifyError::Arithmetic(m) if m.contains("cap") => EXIT_CAP,
        _ => EXIT_MALFORMED,
    }
}

fn load(path: &PathBuf) -> Result<Sequence, (i32, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    let spec = SequenceSpec::from_json_str(&text).map_err(malformed)?;
    spec.materialize().map_err(|e| (exit_for(&e), e.to_string()))
}

fn json_line(out: &mut dyn Write, v: &Value) -> Result<(), (i32, String)> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable")).map_err(io)
}

fn settings(seq: &Sequence, a: &SeqArgs) -> (usize, usize, BigRational) {
    let d = a.dcap.map(|d| d as usize).unwrap_or_else(|| seq.degree_cap());
    let eps = a.epsilon.clone().or_else(|| seq.declared_epsilon()).unwrap_or_else(|| BigRational::from_integer(1.into()));
    (a.degree as usize, d, eps)
}

fn hyp_lines(r: &HypothesisReport) -> Vec<String> {
    r.checks
        .iter()
        .map(|c| {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Violated => "VIOLATED",
                CheckStatus::Inconclusive => "inconclusive",
            };
            format!("[{tag}] {}: {}", c.name, c.detail)
        })
        .collect()
}

fn hyp_exit(r: &HypothesisReport) -> i32 {
    if r.all_pass() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> CmdResult {
    let seq = load(&a.seq.spec)?;
    let (big_d, d, eps) = settings(&seq, &a.seq);
    let hyp = hypothesis_check(&seq, &eps, d);
    let growth = growth_exponents(&seq, big_d, d);
    let disks: Vec<_> = seq
        .terms
        .iter()
        .map(|t| match &a.tol {
            Some(tol) => t.alpha.enclosure(tol),
            None => t.disk.clone(),
        })
        .collect();
    match a.format {
        Format::Json => {
            let terms: Vec<Value> = seq
                .terms
                .iter()
                .zip(&growth.rows)
                .zip(&disks)
                .map(|((t, g), disk)| {
                    json!({
                        "n": t.n,
                        "minpoly": t.alpha.minpoly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "root": disk,
                        "degree": t.degree,
                        "modulus": t.modulus,
                        "house": t.house,
                        "mahler": t.mahler,
                        "height": t.height(),
                        "denominator": g.denominator.to_string(),
                        "normalized": g.normalized,
                        "jump": g.jump,
                    })
                })
                .collect();
            json_line(
                out,
                &json!({ "D": big_d, "d": d, "epsilon": eps.to_string(), "terms": terms, "jumps": growth.jumps, "hypotheses": hyp }),
            )?;
        }
        Format::Text => {
            let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io);
            w(out, format!("D = {big_d}, d = {d}, epsilon = {eps}, {} terms", seq.len()))?;
            for ((t, g), disk) in seq.terms.iter().zip(&growth.rows).zip(&disks) {
                w(
                    out,
                    format!(
                        "n={} deg={} root={} house={} M={} H={} t=log2 {}{}",
                        t.n,
                        t.degree,
                        disk,
                        t.house,
                        t.mahler,
                        t.height(),
                        short_log2(&g.normalized),
                        if g.jump { " jump" } else { "" }
                    ),
                )?;
            }
            for l in hyp_lines(&hyp) {
                w(out, l)?;
            }
        }
    }
    Ok(hyp_exit(&hyp))
}

fn short_log2(m: &MagnitudeBound) -> String {
    let f = |x: Option<&Dyadic>, dir| x.map(|d| d.to_decimal(12, dir)).unwrap_or_else(|| "-inf".into());
    format!("[{}, {}]", f(m.log2_lo(), crate::dyadic::Round::Down), f(m.log2_hi(), crate::dyadic::Round::Up))
}

fn certify(a: &CertifyArgs, out: &mut dyn Write) -> CmdResult {
    let seq = load(&a.seq.spec)?;
    let (big_d, d, eps) = settings(&seq, &a.seq);
    let hyp = hypothesis_check(&seq, &eps, d);
    let range = a.n_range.unwrap_or((1, seq.len().saturating_sub(1).max(1)));
    let params = SearchParams {
        degree: big_d,
        d_cap: d,
        height_max: a.height_max.clone(),
        n_range: range,
        estimators: a.estimators.clone(),
        pisot_salem: a.pisot_salem || seq.spec.pisot_salem,
    };
    if !hyp.all_pass() {
        match a.format {
            Format::Json => json_line(out, &json!({ "status": "hypotheses_not_met", "hypotheses": hyp }))?,
            Format::Text => {
                for l in hyp_lines(&hyp) {
                    writeln!(out, "{l}").map_err(io)?;
                }
            }
        }
        return Ok(EXIT_VIOLATION);
    }
    match find_certificate(&seq, &params, &hyp) {
        Ok(c) => {
            match a.format {
                Format::Json => json_line(out, &serde_json::to_value(&c).expect("serializable"))?,
                Format::Text => {
                    writeln!(
                        out,
                        "certificate: witness N = {}, estimator {}, log2 LHS <= {}",
                        c.witness_n, c.tail_estimator, c.lhs_log2_upper
                    )
                    .map_err(io)?;
                    writeln!(out, "refutes degree <= {} with height <= 2^{} (term degree cap {})", c.big_d, c.hmax_log2_upper, c.d)
                        .map_err(io)?;
                    for s in &c.assumptions {
                        writeln!(out, "assuming: {s}").map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Err(CertifyError::NoWitness(report)) => {
            write_failure(out, a.format, &report)?;
            Ok(EXIT_NO_WITNESS)
        }
        Err(e) => Err((exit_for(&e), e.to_string())),
    }
}

fn write_failure(out: &mut dyn Write, format: Format, r: &FailureReport) -> Result<(), (i32, String)> {
    match format {
        Format::Json => json_line(out, &json!({ "status": "no_witness", "report": r })),
        Format::Text => {
            writeln!(out, "no witness found").map_err(io)?;
            for row in &r.rows {
                let best = match (&row.best_estimator, &row.best_lhs_log2_upper) {
                    (Some(e), Some(v)) => format!("best log2 LHS <= {v} ({e})"),
                    _ => "no estimator applicable".into(),
                };
                writeln!(out, "N={}: {best}; exact degree product {}", row.n, row.exact_degree_product).map_err(io)?;
                for (e, why) in &row.unavailable {
                    writeln!(out, "  {e}: {why}").map_err(io)?;
                }
            }
            if let Some(n) = &r.note {
                writeln!(out, "note: {n}").map_err(io)?;
            }
            Ok(())
        }
    }
}

fn check_lemmas(a: &LemmaArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = HarnessConfig { trials: a.trials, seed: a.seed, max_degree: a.max_degree as usize, coeff_bound: 20 };
    let suites = run_all(&cfg);
    let warning = (a.trials == 0).then_some("0 trials: randomized suites pass vacuously");
    let ok = suites.iter().all(|s| s.all_passed());
    match a.format {
        Format::Json => json_line(
            out,
            &json!({ "seed": a.seed, "trials": a.trials, "max_degree": a.max_degree, "warning": warning, "suites": suites }),
        )?,
        Format::Text => {
            writeln!(out, "seed {}, trials {}, max degree {}", a.seed, a.trials, a.max_degree).map_err(io)?;
            if let Some(w) = warning {
                writeln!(out, "warning: {w}").map_err(io)?;
            }
            for s in &suites {
                let tag = if s.all_passed() { "pass" } else { "FAIL" };
                writeln!(
                    out,
                    "[{tag}] {}: {}/{} passed, {} failed, {} tight",
                    s.name,
                    s.passed,
                    s.trials,
                    s.failures.len(),
                    s.tight
                )
                .map_err(io)?;
                for f in &s.failures {
                    writeln!(out, "  counterexample: {f}").map_err(io)?;
                }
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn sum_info(a: &SumArgs, out: &mut dyn Write) -> CmdResult {
    let seq = load(&a.spec)?;
    let n = a.n_range.map(|r| r.1).unwrap_or(seq.len());
    let r = partial_sum_exact(&seq, n, a.max_degree as usize).map_err(|e| (exit_for(&e), e.to_string()))?;
    let disk = match &a.tol {
        Some(t) => r.value.enclosure(t),
        None => r.value.iso().clone(),
    };
    match a.format {
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["enclosure"] = serde_json::to_value(&disk).expect("serializable");
            json_line(out, &v)?;
        }
        Format::Text => {
            writeln!(out, "N = {n}").map_err(io)?;
            match r.value.as_rational() {
                Some(q) => writeln!(out, "gamma_N = {q}").map_err(io)?,
                None => {
                    writeln!(out, "gamma_N minpoly: {}", r.value.minpoly()).map_err(io)?;
                    writeln!(out, "gamma_N in {disk}").map_err(io)?;
                }
            }
            writeln!(out, "degree {} <= bound {}", r.degree, r.degree_bound).map_err(io)?;
            writeln!(out, "height {} <= bound {}: {:?}", r.height, r.height_bound, r.height_check).map_err(io)?;
        }
    }
    let degree_ok = BigInt::from(r.degree) <= r.degree_bound;
    let height_ok = r.height_check != crate::magnitude::Comparison::Violated;
    Ok(if degree_ok && height_ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn recheck(a: &RecheckArgs, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(&a.certificate).map_err(|e| malformed(format!("{}: {e}", a.certificate.display())))?;
    let c: Certificate = serde_json::from_str(&text).map_err(|e| malformed(format!("invalid certificate: {e}")))?;
    let (code, msg) = match c.recheck() {
        Ok(v) => (EXIT_OK, format!("valid: recomputed log2 LHS = {v}")),
        Err(e) => (EXIT_VIOLATION, format!("invalid: {e}")),
    };
    match a.format {
        Format::Json => json_line(out, &json!({ "valid": code == EXIT_OK, "message": msg }))?,
        Format::Text => writeln!(out, "{msg}").map_err(io)?,
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_parsers() {
        assert_eq!(n_range("1..5").unwrap(), (1, 5));
        assert_eq!(n_range("3").unwrap(), (3, 3));
        assert_eq!(n_range("2..=4").unwrap(), (2, 4));
        assert!(n_range("0..3").is_err());
        assert_eq!(height_cap("2^10").unwrap(), MagnitudeBound::pow2(10));
        assert_eq!(height_cap("2").unwrap(), MagnitudeBound::pow2(1));
        assert!(height_cap("1/2").is_err());
        assert!(positive_rational("-1/2").is_err());
        assert_eq!(estimators("geometric").unwrap(), Estimator::Ratio);
    }

    #[test]
    fn bad_flags_exit_2() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["recip-series", "certify", "--spec", "x.json", "--degree", "0"], &mut o, &mut e), EXIT_MALFORMED);
        assert_eq!(run(["recip-series", "analyze", "--spec", "/nonexistent.json"], &mut o, &mut e), EXIT_MALFORMED);
        assert_eq!(run(["recip-series", "--help"], &mut o, &mut e), EXIT_OK);
    }
}
