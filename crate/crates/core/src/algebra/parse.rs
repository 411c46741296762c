//! Infix syntax for rational functions: `-2*x/(3*t+1)`, `h[1,1,2]/h[1,1,0]`,
//! `t4^2 + pi3`. Variables print the same way they parse.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<u32> {
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| self.err("index too large"))
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(RationalFunction::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = self.variable()?;
                Ok(RationalFunction::from_poly(Polynomial::var(v)))
            }
            _ => Err(self.err("expected an operand")),
        }
    }

    fn variable(&mut self) -> Result<Var> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
        let has_digit = self.pos < self.src.len() && self.src[self.pos].is_ascii_digit();
        match name.as_str() {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "t" if !has_digit => Ok(Var::T),
            "t" => {
                let n = self.small()?;
                if n == 0 {
                    return Err(self.err("time variables start at t1"));
                }
                Ok(Var::Time(n))
            }
            "pi" if has_digit => Ok(Var::Pi(self.small()?)),
            "a" if has_digit => Ok(Var::Aux(self.small()?)),
            "h" => {
                if !self.eat(b'[') {
                    return Err(self.err("expected h[i,j,k]"));
                }
                let i = self.small()?;
                if !self.eat(b',') {
                    return Err(self.err("expected ','"));
                }
                let j = self.small()?;
                if !self.eat(b',') {
                    return Err(self.err("expected ','"));
                }
                let k = self.small()?;
                if !self.eat(b']') {
                    return Err(self.err("expected ']'"));
                }
                if i == 0 || j == 0 {
                    return Err(self.err("h indices i, j start at 1"));
                }
                Ok(Var::h(i, j, k))
            }
            _ => Err(self.err(&format!("unknown variable {name:?}"))),
        }
    }
}

/// Parse an infix rational-function expression.
pub fn parse_rational_function(src: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse an expression that must be a polynomial.
pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let f = parse_rational_function(src)?;
    f.as_polynomial().cloned().ok_or_else(|| Error::Parse(format!("{src:?} is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_u1() {
        let u = parse_rational_function("-2*x/(3*t+1)").unwrap();
        let num = Polynomial::var(Var::X).scale(&BigRational::from_integer((-2).into()));
        let den = Polynomial::var(Var::T).scale(&BigRational::from_integer(3.into())) + Polynomial::one();
        assert_eq!(u, RationalFunction::new(num, &den).unwrap());
    }

    #[test]
    fn display_round_trip() {
        for s in ["h[1,1,2]/h[1,1,0]", "3/4*x^2 - y + t4*pi2", "(x + 1)/(x - 1)^2", "a0 - t"] {
            let f = parse_rational_function(s).unwrap();
            let back = parse_rational_function(&f.to_string()).unwrap();
            assert_eq!(back, f, "{s}");
        }
    }

    #[test]
    fn errors() {
        assert!(parse_rational_function("x +").is_err());
        assert!(parse_rational_function("1/(x-x)").is_err());
        assert!(parse_rational_function("h[0,1,1]").is_err());
        assert!(parse_rational_function("q").is_err());
        assert!(parse_polynomial("1/x").is_err());
    }
}
