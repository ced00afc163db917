//! Parser for the coefficient strings the library prints: rationals and
//! rational functions of `s1, s2, s3` built with `+ - * / ^` and brackets.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::PolyS;
use super::ratfunc::RatFuncS;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(s.clone()))?));
        } else if c == 's' {
            let d = chars.get(i + 1).and_then(|d| d.to_digit(10));
            match d {
                Some(k @ 1..=3) => out.push(Tok::Var(k as usize - 1)),
                _ => return Err(Error::Parse(alloc::format!("unknown variable at offset {}", i))),
            }
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(alloc::format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFuncS> {
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

    fn term(&mut self) -> Result<RatFuncS> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFuncS> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFuncS> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent expected".into()));
            };
            self.pos += 1;
            let k: i32 = i32::try_from(&n).map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFuncS> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFuncS::from_rational(BigRational::from_integer(n)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(RatFuncS::from_poly(PolyS::var(i)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(alloc::format!("unexpected token {:?}", other))),
        }
    }
}

/// Parses a rational function of `s1, s2, s3`.
pub fn parse_ratfunc(src: &str) -> Result<RatFuncS> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(alloc::format!("trailing input in {:?}", src)));
    }
    Ok(v)
}

/// Parses a rational number such as `-3/7`.
pub fn parse_rational(src: &str) -> Result<BigRational> {
    let v = parse_ratfunc(src)?;
    v.as_constant().ok_or_else(|| Error::Parse(alloc::format!("{:?} is not a number", src)))
}

/// Parses `a,b,c` into a point of `Q^3`.
pub fn parse_point(src: &str) -> Result<[BigRational; 3]> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(alloc::format!("expected three coordinates, got {:?}", src)));
    }
    Ok([parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?])
}

/// Canonical string of a rational.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn round_trips() {
        for s in ["(s2 + s3)/(s1)", "-3/2", "(1/4)/(1/2*s1 + s3)", "s1^2*s2 - 3*s3 + 7", "0"] {
            let v = parse_ratfunc(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn arithmetic() {
        let v = parse_ratfunc("(s1^2 - s2^2)/(s1 + s2)").unwrap();
        assert_eq!(v.to_string(), "s1 - s2");
        assert_eq!(parse_ratfunc("s1^-1*s1").unwrap().to_string(), "1");
        assert_eq!(parse_point("1,-2/3,5").unwrap()[1], ratio(-2, 3));
        assert!(parse_ratfunc("s4").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("(s1").is_err());
    }
}
