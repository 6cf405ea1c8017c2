//! Recursive-descent parser for the rational-function text format.
//!
//! ```text
//! ratfunc := sum ( '/' sum )?
//! sum     := ('+' | '-')? product ( ('+' | '-') product )*
//! product := power ( '*' power )*
//! power   := atom ( '^' integer )?
//! atom    := integer | 'p' | '(' sum ')'
//! ```
//!
//! Whitespace is ignored everywhere. Only one `/` is allowed, at top level.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, RationalFunction};
use crate::error::{Error, Result};

pub(super) fn parse(src: &str) -> Result<RationalFunction> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let num = parser.sum()?;
    let den = if parser.eat(b'/') {
        parser.sum()?
    } else {
        Polynomial::one()
    };
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    RationalFunction::normalize(num, den)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat(b'-') {
            -&self.product()?
        } else {
            self.eat(b'+');
            self.product()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.product()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e: u32 = digits.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "expected a nonnegative exponent".into(),
            })?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'p') => {
                self.pos += 1;
                Ok(Polynomial::var())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("digits parse as an integer");
                Ok(Polynomial::constant(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.error("expected an integer, 'p' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}
