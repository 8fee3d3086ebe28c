//! Infix parser for the textual form of polynomials and rational functions.
//!
//! Grammar: `expr = term (('+'|'-') term)*`, `term = unary (('*'|'/') unary)*`,
//! `unary = '-' unary | power`, `power = atom ('^' '-'? int)?`,
//! `atom = int | symbol | '(' expr ')'`. Symbols must belong to the global
//! namespace.

use num_bigint::BigInt;

use super::rat::Rat;
use super::ratfn::RatFn;
use super::symbol::Symbol;
use crate::error::{Error, Result};

pub fn parse_ratfn(src: &str) -> Result<RatFn> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
        let e: i32 = digits.parse().map_err(|_| self.err("expected exponent"))?;
        base.pow(if neg { -e } else { e })
            .map_err(|_| self.err("negative power of zero"))
    }

    fn atom(&mut self) -> Result<RatFn> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFn::constant(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.take_while(|c| c.is_ascii_alphanumeric());
                self.take_while(|c| c == '\'');
                let name = &self.src[start..self.pos];
                let s: Symbol = name.parse()?;
                Ok(RatFn::var(s))
            }
            _ => Err(self.err("expected number, symbol or `(`")),
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
        &self.src[start..self.pos]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly::Poly;
    use crate::ring::rat::{half, int};

    #[test]
    fn parses_x_alpha() {
        let f = parse_ratfn("(1/2*x21 - x31)/(x21^2 + x32)").unwrap();
        let num = &Poly::var(Symbol::X21).scale(&half()) - &Poly::var(Symbol::X31);
        let den = &Poly::var(Symbol::X21).pow(2) + &Poly::var(Symbol::X32);
        assert_eq!(f, RatFn::new(num, den).unwrap());
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_ratfn("-2^2").unwrap(), RatFn::constant(int(-4)));
        assert_eq!(parse_ratfn("1 + 2*3").unwrap(), RatFn::constant(int(7)));
        assert_eq!(parse_ratfn("x^-1 * x").unwrap(), RatFn::one());
        assert_eq!(parse_ratfn("y10' - y10'").unwrap(), RatFn::zero());
    }

    #[test]
    fn unknown_symbol_rejected() {
        assert_eq!(parse_ratfn("x21 + x22"), Err(Error::UnknownSymbol("x22".into())));
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_ratfn("(x21"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfn("x21 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfn("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfn("x21 x31"), Err(Error::Parse { .. })));
    }
}
