//! Integer term formulas in one variable `n`, e.g. `2^(4^n)` or `n^2 + 1`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Largest exponent accepted by `^`, in bits of the result.
const MAX_BITS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    N,
    Op(char),
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = cs[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            'n' => out.push(Tok::N),
            '+' | '-' | '*' | '^' => out.push(Tok::Op(c)),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            _ => return Err(format!("unexpected character {c:?}")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    n: &'a BigInt,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn sum(&mut self) -> Result<BigInt, String> {
        let mut acc = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<BigInt, String> {
        let mut acc = self.power()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            acc *= self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<BigInt, String> {
        let base = self.unary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.power()?;
            if e.is_negative() {
                return Err("negative exponent".into());
            }
            let e = e.to_u64().ok_or("exponent too large")?;
            if base.bits().saturating_mul(e) > MAX_BITS {
                return Err("power too large".into());
            }
            return Ok(num_traits::pow(base, e as usize));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<BigInt, String> {
        match self.peek().cloned() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::N) => {
                self.pos += 1;
                Ok(self.n.clone())
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Evaluate `formula` at `n`.
pub fn eval_formula(formula: &str, n: u64) -> Result<BigInt, String> {
    let toks = lex(formula)?;
    if toks.is_empty() {
        return Err("empty formula".into());
    }
    let nb = BigInt::from(n);
    let mut p = Parser { toks: &toks, pos: 0, n: &nb };
    let v = p.sum()?;
    if p.pos != toks.len() {
        return Err("trailing input".into());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates() {
        assert_eq!(eval_formula("2^(4^n)", 1).unwrap(), BigInt::from(16));
        assert_eq!(eval_formula("2^4^n", 2).unwrap(), BigInt::from(65536));
        assert_eq!(eval_formula("n^2 + 3*n - 1", 4).unwrap(), BigInt::from(27));
        assert_eq!(eval_formula("-(n+1)", 2).unwrap(), BigInt::from(-3));
        assert!(eval_formula("2^(n", 1).is_err());
        assert!(eval_formula("2^(2^40)", 1).is_err());
        assert!(eval_formula("x", 1).is_err());
    }
}
