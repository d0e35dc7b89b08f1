//! Recursive-descent parser for Puiseux expressions.
//!
//! ```text
//! series  := ['-'] term (('+'|'-') term)*
//! term    := coeff ['*' tpow] | tpow
//! tpow    := 't' ['^' expnt]
//! expnt   := int | int '/' posint | '(' int '/' posint ')'
//! coeff   := int | int '/' posint
//! ```
//! Whitespace is ignored everywhere; error positions refer to the raw input.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::PuiseuxPoly;
use crate::error::{Error, Result};
use crate::ext::Rational;

pub fn parse_puiseux(text: &str) -> Result<PuiseuxPoly> {
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser {
        chars,
        pos: 0,
        end: text.chars().count(),
    };
    parser.series()
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.position(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn series(&mut self) -> Result<PuiseuxPoly> {
        if self.peek().is_none() {
            return self.error("empty expression");
        }
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        loop {
            let (e, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((e, c));
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(other) => return self.error(format!("unexpected '{other}'")),
            }
            self.pos += 1;
        }
        Ok(PuiseuxPoly::from_terms(terms))
    }

    /// Returns `(exponent, coefficient)`.
    fn term(&mut self) -> Result<(Rational, Rational)> {
        match self.peek() {
            Some('t') => Ok((self.tpow()?, Rational::one())),
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.fraction(false)?;
                if self.eat('*') {
                    if self.peek() != Some('t') {
                        return self.error("expected 't' after '*'");
                    }
                    Ok((self.tpow()?, coeff))
                } else {
                    Ok((Rational::zero(), coeff))
                }
            }
            Some(other) => self.error(format!("expected a term, found '{other}'")),
            None => self.error("expected a term, found end of input"),
        }
    }

    fn tpow(&mut self) -> Result<Rational> {
        debug_assert_eq!(self.peek(), Some('t'));
        self.pos += 1;
        if !self.eat('^') {
            return Ok(Rational::one());
        }
        if self.eat('(') {
            let start = self.pos;
            let e = self.fraction(true)?;
            if e.is_integer() && !self.chars[start..self.pos].iter().any(|&(_, c)| c == '/') {
                return self.error("parenthesized exponent must be a fraction");
            }
            if !self.eat(')') {
                return self.error("expected ')'");
            }
            Ok(e)
        } else {
            self.fraction(true)
        }
    }

    /// `int ['/' posint]`, with an optional leading '-' when `signed`.
    fn fraction(&mut self, signed: bool) -> Result<Rational> {
        let negative = signed && self.eat('-');
        let numer = self.digits()?;
        let numer = if negative { -numer } else { numer };
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.position();
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(Error::ZeroDenominator { position: at });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(s.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{rat, ratio};

    #[test]
    fn worked_example_entries() {
        let f = parse_puiseux("3*t + t^3").unwrap();
        assert_eq!(f.coeff(&rat(1)), rat(3));
        assert_eq!(f.coeff(&rat(3)), rat(1));
        assert_eq!(f.len(), 2);

        let g = parse_puiseux("1 - t^5").unwrap();
        assert_eq!(g.coeff(&rat(0)), rat(1));
        assert_eq!(g.coeff(&rat(5)), rat(-1));

        assert!(parse_puiseux("0").unwrap().is_zero());
    }

    #[test]
    fn exponent_forms() {
        let a = parse_puiseux("t^1/2").unwrap();
        let b = parse_puiseux("t^(1/2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.val(), crate::ext::ExtRational::Finite(ratio(1, 2)));
        assert_eq!(parse_puiseux("2/3*t^-2").unwrap().coeff(&rat(-2)), ratio(2, 3));
        assert_eq!(parse_puiseux(" - t ").unwrap().coeff(&rat(1)), rat(-1));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_puiseux("1 + * t") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_puiseux("t^1/0"),
            Err(Error::ZeroDenominator { position: 4 })
        );
        assert!(parse_puiseux("").is_err());
        assert!(parse_puiseux("3t").is_err());
        assert!(parse_puiseux("x").is_err());
        assert!(parse_puiseux("t^(3)").is_err());
    }
}
