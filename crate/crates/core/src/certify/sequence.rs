//! Sequence descriptions (JSON) and their materialized terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::formula::eval_formula;
use super::CertifyError;
use crate::algnum::AlgebraicNumber;
use crate::dyadic::parse_rational;
use crate::heights::DEFAULT_PREC;
use crate::magnitude::MagnitudeBound;
use crate::polyz::{parse_integer, IntPolynomial, DEFAULT_DEGREE_CAP};
use crate::roots::{modulus_prec, ComplexDisk};

pub const SELECTOR_NAME: &str = "max-modulus-preferring-positive-real";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `αₙ = aₙ ∈ ℤ`.
    Integer,
    /// `αₙ` the positive real root of `x^d − aₙ`.
    DthRoot,
    /// `αₙ` given by minimal polynomial and selector.
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    MaxModulusPreferringPositiveReal,
    Disk(ComplexDisk),
}

/// An asserted growth law for the terms beyond the prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// `house(αₙ) ≥ n^(1+ε)`
    PolynomialFloor { epsilon: BigRational },
    /// `house(αₙ₊₁) ≥ ρ·house(αₙ)`
    GeometricFloor { ratio: BigRational },
    /// `house(αₙ) ≥ 2ⁿ`
    ExponentialFloor,
}

/// A [`TailKind`] claimed for every `n ≥ from_index`, together with
/// monotonicity of the houses there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailAssumption {
    pub kind: TailKind,
    pub from_index: usize,
}

impl TailAssumption {
    pub fn polynomial(epsilon: BigRational) -> Self {
        TailAssumption { kind: TailKind::PolynomialFloor { epsilon }, from_index: 1 }
    }

    pub fn geometric(ratio: BigRational) -> Self {
        TailAssumption { kind: TailKind::GeometricFloor { ratio }, from_index: 1 }
    }

    pub fn exponential() -> Self {
        TailAssumption { kind: TailKind::ExponentialFloor, from_index: 1 }
    }

    pub fn starting_at(mut self, n: usize) -> Self {
        self.from_index = n;
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            TailKind::PolynomialFloor { .. } => "polynomial_floor",
            TailKind::GeometricFloor { .. } => "geometric_floor",
            TailKind::ExponentialFloor => "exponential_floor",
        }
    }

    pub fn describe(&self) -> String {
        let law = match &self.kind {
            TailKind::PolynomialFloor { epsilon } => format!("house(a_n) >= n^(1+{epsilon})"),
            TailKind::GeometricFloor { ratio } => format!("house(a_(n+1)) >= {ratio}*house(a_n)"),
            TailKind::ExponentialFloor => "house(a_n) >= 2^n".to_string(),
        };
        format!("{law} and houses increasing, for all n >= {}", self.from_index)
    }

    pub fn to_json(&self) -> Value {
        let params = match &self.kind {
            TailKind::PolynomialFloor { epsilon } => json!({ "epsilon": epsilon.to_string() }),
            TailKind::GeometricFloor { ratio } => json!({ "ratio": ratio.to_string() }),
            TailKind::ExponentialFloor => json!({}),
        };
        json!({ "kind": self.kind_name(), "params": params, "from_index": self.from_index })
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        let obj = v.as_object().ok_or("tail assumption must be an object")?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or("tail assumption needs a \"kind\"")?;
        let empty = serde_json::Map::new();
        let params = match obj.get("params") {
            Some(Value::Object(m)) => m,
            Some(_) => return Err("\"params\" must be an object".into()),
            None => &empty,
        };
        let field = |name: &str| params.get(name).or_else(|| obj.get(name));
        let positive = |name: &str| -> Result<BigRational, String> {
            let raw = field(name).ok_or(format!("{kind} needs \"{name}\""))?;
            let q = rational_value(raw).ok_or(format!("bad {name}"))?;
            if !q.is_positive() {
                return Err(format!("{name} must be positive"));
            }
            Ok(q)
        };
        let kind = match kind {
            "polynomial_floor" => TailKind::PolynomialFloor { epsilon: positive("epsilon")? },
            "geometric_floor" => {
                let ratio = positive("ratio")?;
                if ratio <= BigRational::one() {
                    return Err("ratio must exceed 1".into());
                }
                TailKind::GeometricFloor { ratio }
            }
            "exponential_floor" => TailKind::ExponentialFloor,
            other => return Err(format!("unknown tail kind {other:?}")),
        };
        let from_index = match field("from_index") {
            None => 1,
            Some(x) => x.as_u64().filter(|&n| n >= 1).ok_or("from_index must be a positive integer")? as usize,
        };
        Ok(TailAssumption { kind, from_index })
    }
}

impl Serialize for TailAssumption {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TailAssumption {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        TailAssumption::from_json(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

fn rational_value(v: &Value) -> Option<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => None,
    }
}

/// Integer literal: decimal, `b^e`, or a JSON number.
fn integer_value(v: &Value) -> Option<BigInt> {
    let s = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return None,
    };
    if let Some((b, e)) = s.split_once('^') {
        let b = parse_integer(b.trim())?;
        let e: u32 = e.trim().parse().ok()?;
        if b.bits().saturating_mul(e as u64) > 1 << 26 {
            return None;
        }
        return Some(num_traits::pow(b, e as usize));
    }
    parse_integer(&s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermSource {
    Integer(BigInt),
    Radicand(BigInt),
    Explicit { minpoly: IntPolynomial, selector: Option<Selector> },
}

/// A sequence description: a finite prefix of terms plus the assumptions
/// that stand in for its infinite tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub family: Family,
    pub terms: Vec<TermSource>,
    /// Declared degree cap `d`; for `dth_root` also the root order.
    pub d: Option<usize>,
    pub selector: Selector,
    pub tails: Vec<TailAssumption>,
    /// Use `house(αₙ)^(1/deg αₙ)` in the critical estimate.
    pub pisot_salem: bool,
}

fn selector_value(v: &Value) -> Result<Selector, String> {
    match v {
        Value::String(s) if s == SELECTOR_NAME => Ok(Selector::MaxModulusPreferringPositiveReal),
        Value::String(s) => Err(format!("unknown selector {s:?}")),
        Value::Object(_) => serde_json::from_value::<ComplexDisk>(v.clone())
            .map(Selector::Disk)
            .map_err(|e| format!("bad selector disk: {e}")),
        _ => Err("selector must be a name or a disk".into()),
    }
}

impl SequenceSpec {
    pub fn integers<I: IntoIterator<Item = BigInt>>(terms: I) -> Self {
        SequenceSpec {
            family: Family::Integer,
            terms: terms.into_iter().map(TermSource::Integer).collect(),
            d: Some(1),
            selector: Selector::MaxModulusPreferringPositiveReal,
            tails: Vec::new(),
            pisot_salem: false,
        }
    }

    pub fn dth_roots<I: IntoIterator<Item = BigInt>>(d: usize, radicands: I) -> Self {
        SequenceSpec {
            family: Family::DthRoot,
            terms: radicands.into_iter().map(TermSource::Radicand).collect(),
            d: Some(d),
            selector: Selector::MaxModulusPreferringPositiveReal,
            tails: Vec::new(),
            pisot_salem: false,
        }
    }

    pub fn explicit<I: IntoIterator<Item = (IntPolynomial, Option<Selector>)>>(terms: I) -> Self {
        SequenceSpec {
            family: Family::Explicit,
            terms: terms.into_iter().map(|(minpoly, selector)| TermSource::Explicit { minpoly, selector }).collect(),
            d: None,
            selector: Selector::MaxModulusPreferringPositiveReal,
            tails: Vec::new(),
            pisot_salem: false,
        }
    }

    pub fn with_tail(mut self, t: TailAssumption) -> Self {
        self.tails.push(t);
        self
    }

    pub fn prefix_length(&self) -> usize {
        self.terms.len()
    }

    pub fn from_json_str(s: &str) -> Result<Self, CertifyError> {
        let v: Value = serde_json::from_str(s).map_err(|e| CertifyError::Spec(format!("invalid JSON: {e}")))?;
        SequenceSpec::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, CertifyError> {
        let bad = |m: String| CertifyError::Spec(m);
        let obj = v.as_object().ok_or_else(|| bad("spec must be a JSON object".into()))?;
        let family = match obj.get("family").and_then(Value::as_str) {
            Some("integer") | Some("integer_list") => Family::Integer,
            Some("dth_root") => Family::DthRoot,
            Some("explicit") => Family::Explicit,
            Some(f) => return Err(bad(format!("unknown family {f:?}"))),
            None => return Err(bad("missing \"family\"".into())),
        };
        let d = match obj.get("d") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_u64().filter(|&d| d >= 1).ok_or_else(|| bad("d must be a positive integer".into()))? as usize),
        };
        if family == Family::DthRoot && d.is_none() {
            return Err(bad("dth_root family needs \"d\"".into()));
        }
        let selector = match obj.get("selector") {
            None => Selector::MaxModulusPreferringPositiveReal,
            Some(s) => selector_value(s).map_err(bad)?,
        };
        let tails = match obj.get("tail") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(a)) => a.iter().map(TailAssumption::from_json).collect::<Result<_, _>>().map_err(bad)?,
            Some(t) => vec![TailAssumption::from_json(t).map_err(bad)?],
        };
        let pisot_salem = obj.get("pisot_salem").and_then(Value::as_bool).unwrap_or(false);

        let mut raw: Vec<Value> = match obj.get("terms") {
            None => Vec::new(),
            Some(Value::Array(a)) => a.clone(),
            Some(_) => return Err(bad("\"terms\" must be a list".into())),
        };
        let prefix = match obj.get("prefix_length") {
            None => None,
            Some(x) => Some(x.as_u64().ok_or_else(|| bad("prefix_length must be a nonnegative integer".into()))? as usize),
        };
        if let Some(f) = obj.get("formula") {
            if family == Family::Explicit {
                return Err(bad("formula is not available for explicit terms".into()));
            }
            if !raw.is_empty() {
                return Err(bad("give either terms or formula, not both".into()));
            }
            let f = f.as_str().ok_or_else(|| bad("formula must be a string".into()))?;
            let len = prefix.ok_or_else(|| bad("formula needs prefix_length".into()))?;
            for n in 1..=len {
                let v = eval_formula(f, n as u64).map_err(|e| bad(format!("formula at n={n}: {e}")))?;
                raw.push(Value::String(v.to_string()));
            }
        } else if let Some(len) = prefix {
            if len > raw.len() {
                return Err(bad(format!("prefix_length {len} exceeds the {} listed terms", raw.len())));
            }
            raw.truncate(len);
        }
        if raw.is_empty() {
            return Err(bad("empty term list".into()));
        }

        let mut terms = Vec::with_capacity(raw.len());
        for (i, t) in raw.iter().enumerate() {
            let n = i + 1;
            let term = match family {
                Family::Integer => {
                    let a = integer_value(t).ok_or_else(|| bad(format!("term {n}: not an integer")))?;
                    if a.is_zero() {
                        return Err(bad(format!("term {n}: zero has no reciprocal")));
                    }
                    TermSource::Integer(a)
                }
                Family::DthRoot => {
                    let a = integer_value(t).ok_or_else(|| bad(format!("term {n}: not an integer")))?;
                    if !a.is_positive() {
                        return Err(bad(format!("term {n}: radicand must be positive")));
                    }
                    TermSource::Radicand(a)
                }
                Family::Explicit => {
                    let o = t.as_object().ok_or_else(|| bad(format!("term {n}: expected an object")))?;
                    let mp = o.get("minpoly").ok_or_else(|| bad(format!("term {n}: missing minpoly")))?;
                    let minpoly = poly_value(mp).map_err(|e| bad(format!("term {n}: {e}")))?;
                    let sel = match o.get("root").or_else(|| o.get("selector")) {
                        None => None,
                        Some(s) => Some(selector_value(s).map_err(|e| bad(format!("term {n}: {e}")))?),
                    };
                    TermSource::Explicit { minpoly, selector: sel }
                }
            };
            terms.push(term);
        }
        Ok(SequenceSpec { family, terms, d, selector, tails, pisot_salem })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| match t {
                TermSource::Integer(a) | TermSource::Radicand(a) => Value::String(a.to_string()),
                TermSource::Explicit { minpoly, selector } => {
                    let mut o = json!({ "minpoly": minpoly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>() });
                    if let Some(s) = selector {
                        o["root"] = selector_json(s);
                    }
                    o
                }
            })
            .collect();
        json!({
            "family": self.family,
            "terms": terms,
            "d": self.d,
            "selector": selector_json(&self.selector),
            "tail": self.tails.iter().map(TailAssumption::to_json).collect::<Vec<_>>(),
            "pisot_salem": self.pisot_salem,
        })
    }

    /// Materialize every term at the default precision.
    pub fn materialize(&self) -> Result<Sequence, CertifyError> {
        self.materialize_prec(DEFAULT_PREC)
    }

    pub fn materialize_prec(&self, prec: u32) -> Result<Sequence, CertifyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, src) in self.terms.iter().enumerate() {
            let n = i + 1;
            let alpha = self.build(src).map_err(|e| CertifyError::Term { n, reason: e })?;
            terms.push(Term::compute(n, alpha, prec));
        }
        Ok(Sequence { spec: self.clone(), terms, prec })
    }

    fn build(&self, src: &TermSource) -> Result<AlgebraicNumber, String> {
        match src {
            TermSource::Integer(a) => Ok(AlgebraicNumber::from_integer(a.clone())),
            TermSource::Radicand(a) => {
                let d = self.d.expect("dth_root family carries d");
                let p = IntPolynomial::pure_power(d, a);
                AlgebraicNumber::positive_real_root(&p).map_err(|e| e.to_string())
            }
            TermSource::Explicit { minpoly, selector } => {
                if minpoly.is_constant() {
                    return Err("constant minimal polynomial".into());
                }
                let sel = selector.as_ref().unwrap_or(&self.selector);
                let a = match sel {
                    Selector::MaxModulusPreferringPositiveReal => {
                        AlgebraicNumber::max_modulus_root_with_cap(minpoly, DEFAULT_DEGREE_CAP)
                    }
                    Selector::Disk(d) => AlgebraicNumber::make_with_cap(minpoly, d, DEFAULT_DEGREE_CAP),
                }
                .map_err(|e| e.to_string())?;
                if a.is_zero() {
                    return Err("zero has no reciprocal".into());
                }
                Ok(a)
            }
        }
    }
}

fn selector_json(s: &Selector) -> Value {
    match s {
        Selector::MaxModulusPreferringPositiveReal => Value::String(SELECTOR_NAME.into()),
        Selector::Disk(d) => serde_json::to_value(d).expect("disk serializes"),
    }
}

fn poly_value(v: &Value) -> Result<IntPolynomial, String> {
    match v {
        Value::String(s) => IntPolynomial::parse(s).map_err(|e| e.to_string()),
        Value::Array(a) => {
            let cs = a.iter().map(|c| integer_value(c).ok_or("bad coefficient")).collect::<Result<Vec<_>, _>>()?;
            let p = IntPolynomial::new(cs);
            if p.is_zero() {
                return Err("zero polynomial".into());
            }
            Ok(p)
        }
        _ => Err("minpoly must be a coefficient list or string".into()),
    }
}

impl Serialize for SequenceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SequenceSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SequenceSpec::from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// One materialized term with its conjugate data.
#[derive(Clone, Debug)]
pub struct Term {
    /// 1-based index.
    pub n: usize,
    pub alpha: AlgebraicNumber,
    pub degree: usize,
    /// `|αₙ|`
    pub modulus: MagnitudeBound,
    pub house: MagnitudeBound,
    pub mahler: MagnitudeBound,
    pub conjugate_moduli: Vec<MagnitudeBound>,
    /// Index of `αₙ` among the conjugates.
    pub designated: usize,
    /// Enclosure of `αₙ` used for sign tests.
    pub disk: ComplexDisk,
    pub prec: u32,
}

impl Term {
    pub fn compute(n: usize, alpha: AlgebraicNumber, prec: u32) -> Self {
        let (conj, idx) = alpha.conjugates(prec + 8);
        let moduli: Vec<MagnitudeBound> = conj.iter().map(|d| modulus_prec(d, prec + 16)).collect();
        let house = moduli.iter().cloned().reduce(|a, b| a.max(&b)).expect("nonconstant");
        let mahler = moduli
            .iter()
            .fold(MagnitudeBound::from_bigint(&alpha.minpoly().leading(), prec), |m, x| m.mul(&x.max_one()));
        Term {
            n,
            degree: alpha.degree(),
            modulus: moduli[idx].clone(),
            house,
            mahler,
            disk: conj[idx].clone(),
            conjugate_moduli: moduli,
            designated: idx,
            alpha,
            prec,
        }
    }

    /// The same term at a higher precision.
    pub fn refined(&self, prec: u32) -> Self {
        Term::compute(self.n, self.alpha.clone(), prec)
    }

    pub fn height(&self) -> MagnitudeBound {
        self.mahler.root(self.degree)
    }
}

/// A materialized prefix.
#[derive(Clone, Debug)]
pub struct Sequence {
    pub spec: SequenceSpec,
    pub terms: Vec<Term>,
    pub prec: u32,
}

impl Sequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term `n` (1-based).
    pub fn term(&self, n: usize) -> Option<&Term> {
        n.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|t| t.degree).max().unwrap_or(0)
    }

    /// Declared cap, falling back to the largest degree in the prefix.
    pub fn degree_cap(&self) -> usize {
        self.spec.d.unwrap_or_else(|| self.max_degree())
    }

    pub fn tails(&self) -> &[TailAssumption] {
        &self.spec.tails
    }

    /// `ε` of the first declared polynomial floor.
    pub fn declared_epsilon(&self) -> Option<BigRational> {
        self.spec.tails.iter().find_map(|t| match &t.kind {
            TailKind::PolynomialFloor { epsilon } => Some(epsilon.clone()),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_spec() {
        let s = SequenceSpec::from_json_str(
            r#"{"family":"integer","terms":["2^4","2^16",256],"d":1,
                "tail":{"kind":"geometric_floor","params":{"ratio":"2"}}}"#,
        )
        .unwrap();
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[0], TermSource::Integer(BigInt::from(16)));
        assert_eq!(s.tails, vec![TailAssumption::geometric(BigRational::from_integer(2.into()))]);
        let again = SequenceSpec::from_value(&s.to_json()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn parses_formula_and_tails() {
        let s = SequenceSpec::from_json_str(
            r#"{"family":"dth_root","d":2,"formula":"2^(4^n)","prefix_length":3,
                "tail":[{"kind":"polynomial_floor","params":{"epsilon":"1/2"},"from_index":2},
                        {"kind":"exponential_floor"}]}"#,
        )
        .unwrap();
        assert_eq!(s.terms[2], TermSource::Radicand(BigInt::one() << 64));
        assert_eq!(s.tails[0].from_index, 2);
        assert_eq!(s.tails[1].kind, TailKind::ExponentialFloor);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "not json",
            r#"{"terms":[1]}"#,
            r#"{"family":"integer","terms":[]}"#,
            r#"{"family":"integer","terms":[0]}"#,
            r#"{"family":"integer","terms":["x"]}"#,
            r#"{"family":"dth_root","terms":[2]}"#,
            r#"{"family":"dth_root","d":2,"terms":[-2]}"#,
            r#"{"family":"integer","terms":[2],"tail":{"kind":"geometric_floor","params":{"ratio":"1"}}}"#,
            r#"{"family":"explicit","terms":[{"minpoly":[0,1]}]}"#,
        ] {
            let r = SequenceSpec::from_json_str(bad).and_then(|s| s.materialize().map(|_| ()));
            assert!(r.is_err(), "{bad}");
        }
    }

    #[test]
    fn materializes_terms() {
        let s = SequenceSpec::dth_roots(2, [BigInt::from(2), BigInt::from(9)]);
        let seq = s.materialize().unwrap();
        assert_eq!(seq.len(), 2);
        assert_eq!(seq.terms[0].degree, 2);
        assert_eq!(seq.terms[1].degree, 1);
        assert!(seq.terms[1].house.contains_rational(&BigRational::from_integer(3.into()), 64));
        let e = SequenceSpec::explicit([(IntPolynomial::from_i64s(&[-1, -2, 1]), None)]).materialize().unwrap();
        let (re, _) = e.terms[0].disk.center_f64();
        assert!((re - (1.0 + 2f64.sqrt())).abs() < 1e-9);
    }
}
