//! Tiny arithmetic evaluator for connective-constant inputs such as
//! `sqrt(2+sqrt(2))`.
//!
//! Grammar: `+ - * / ^`, unary minus, parentheses, decimal literals, the
//! constants `pi` and `e`, and the functions `sqrt cbrt exp ln log sin cos`.
//! `^` is right-associative and binds tighter than unary minus.

use crate::error::{Error, Result};

pub fn eval(src: &str) -> Result<f64> {
    let mut p = Parser {
        s: src.as_bytes(),
        pos: 0,
    };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    if !v.is_finite() {
        return Err(Error::Expression(format!("{src:?} is not finite")));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Expression(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<f64> {
        let mut v = self.product()?;
        loop {
            if self.eat(b'+') {
                v += self.product()?;
            } else if self.eat(b'-') {
                v -= self.product()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn product(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        loop {
            if self.eat(b'*') {
                v *= self.unary()?;
            } else if self.eat(b'/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<f64> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.unary()?;
            return Ok(base.powf(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<f64> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match name {
                    "pi" => return Ok(std::f64::consts::PI),
                    "e" => return Ok(std::f64::consts::E),
                    _ => {}
                }
                let f: fn(f64) -> f64 = match name {
                    "sqrt" => f64::sqrt,
                    "cbrt" => f64::cbrt,
                    "exp" => f64::exp,
                    "ln" | "log" => f64::ln,
                    "sin" => f64::sin,
                    "cos" => f64::cos,
                    _ => return Err(Error::Expression(format!("unknown name {name:?}"))),
                };
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after function name"));
                }
                let v = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(f(v))
            }
            _ => Err(self.err("expected a value")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self
            .s
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || *c == b'.')
        {
            self.pos += 1;
        }
        if matches!(self.s.get(self.pos), Some(b'e' | b'E'))
            && self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit() || *c == b'-' || *c == b'+')
        {
            self.pos += 2;
            while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        text.parse()
            .map_err(|_| Error::Expression(format!("bad number {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::eval;

    #[test]
    fn values() {
        assert_eq!(eval("sqrt(2+sqrt(2))").unwrap(), (2.0 + 2f64.sqrt()).sqrt());
        assert_eq!(eval("1 + 2*3").unwrap(), 7.0);
        assert_eq!(eval("-2^2").unwrap(), -4.0);
        assert_eq!(eval("2^3^2").unwrap(), 512.0);
        assert_eq!(eval("(1+sqrt(5))/2").unwrap(), (1.0 + 5f64.sqrt()) / 2.0);
        assert_eq!(eval("1.5e1").unwrap(), 15.0);
        assert_eq!(eval("2*pi").unwrap(), 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn errors() {
        for bad in ["", "sqrt 2", "1+", "foo(1)", "(1", "1/0", "2 3"] {
            assert!(eval(bad).is_err(), "{bad}");
        }
    }
}
