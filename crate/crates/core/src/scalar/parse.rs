//! Recursive-descent parser for scalar expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-'* power`, `power := atom ('^' uint)?`,
//! `atom := uint | name | '(' expr ')'`.
//!
//! Names: `alpha`, `mu`, `beta<k>`, `gamma<k>`, `lambda<i><j>` (single digits)
//! or `lambda_<i>_<j>`, `eta<digits>` (one element per digit) or
//! `eta_<i1>_<i2>_…`.

use crate::setcombin::SubsetIndex;

use super::param::ParamName;
use super::{Scalar, ScalarError};

pub fn parse(input: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        at: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.at != p.chars.len() {
        return Err(err(format!("trailing input at column {}", p.at + 1)));
    }
    Ok(v)
}

fn err(msg: String) -> ScalarError {
    ScalarError::Parse(msg)
}

struct Parser {
    chars: Vec<char>,
    at: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|c| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?).map_err(|_| err("division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            if e > 64 {
                return Err(err(format!("exponent {e} too large")));
            }
            return base.powi(e as i64).map_err(|_| err("zero base".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(err("expected ')'".into()));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from_i64(self.uint()? as i64)),
            Some(c) if c.is_ascii_alphabetic() => self.name(),
            other => Err(err(format!("unexpected {other:?}"))),
        }
    }

    fn uint(&mut self) -> Result<u64, ScalarError> {
        self.skip_ws();
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return Err(err("expected a number".into()));
        }
        let s: String = self.chars[start..self.at].iter().collect();
        s.parse().map_err(|_| err(format!("bad integer {s}")))
    }

    fn name(&mut self) -> Result<Scalar, ScalarError> {
        let start = self.at;
        while self
            .chars
            .get(self.at)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.at += 1;
        }
        let word: String = self.chars[start..self.at].iter().collect();
        let param = parse_param(&word).ok_or_else(|| err(format!("unknown name `{word}`")))?;
        Ok(Scalar::param(param))
    }
}

pub(crate) fn parse_param(word: &str) -> Option<ParamName> {
    match word {
        "alpha" => return Some(ParamName::Alpha),
        "mu" => return Some(ParamName::Mu),
        _ => {}
    }
    for (prefix, kind) in [("beta", 'b'), ("gamma", 'g'), ("lambda", 'l'), ("eta", 'e')] {
        let Some(rest) = word.strip_prefix(prefix) else {
            continue;
        };
        let indices: Vec<u8> = if let Some(tail) = rest.strip_prefix('_') {
            tail.split('_')
                .map(|part| part.parse().ok())
                .collect::<Option<Vec<u8>>>()?
        } else if kind == 'b' || kind == 'g' {
            vec![rest.parse().ok()?]
        } else {
            rest.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<Vec<u8>>>()?
        };
        return match (kind, indices.as_slice()) {
            ('b', &[i]) if i >= 1 => Some(ParamName::Beta(i)),
            ('g', &[i]) if i >= 1 => Some(ParamName::Gamma(i)),
            ('l', &[i, j]) if i >= 1 && j >= 1 && i != j => Some(ParamName::lambda(i, j)),
            ('e', elems) if !elems.is_empty() => {
                let mut sorted = elems.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != elems.len() || sorted[0] == 0 {
                    return None;
                }
                Some(ParamName::eta(SubsetIndex::new(&sorted).ok()?))
            }
            _ => None,
        };
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_params_and_arithmetic() {
        assert_eq!(parse("alpha").unwrap(), Scalar::param(ParamName::Alpha));
        assert_eq!(
            parse("lambda21").unwrap(),
            Scalar::param(ParamName::Lambda(1, 2))
        );
        assert_eq!(
            parse("eta13").unwrap(),
            Scalar::param(ParamName::eta(SubsetIndex::new(&[1, 3]).unwrap()))
        );
        assert_eq!(
            parse("eta_2_11").unwrap(),
            Scalar::param(ParamName::eta(SubsetIndex::new(&[2, 11]).unwrap()))
        );
        let v = parse("gamma1^2/(4*alpha)").unwrap();
        let g = Scalar::param(ParamName::Gamma(1));
        let a = Scalar::param(ParamName::Alpha);
        assert_eq!(v, g.mul(&g).div(&a.scale_i64(4)).unwrap());
        assert_eq!(parse("-2*3 + 1").unwrap(), Scalar::from_i64(-5));
        assert_eq!(parse("1/2 + 1/2").unwrap(), Scalar::one());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("bogus").is_err());
        assert!(parse("eta").is_err());
        assert!(parse("lambda11").is_err());
        assert!(parse("1 +").is_err());
        assert!(parse("(alpha").is_err());
        assert!(parse("1/0").is_err());
    }
}
