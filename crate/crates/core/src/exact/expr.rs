//! Parser for rational-function expressions in `t`.
//!
//! Grammar: integers, decimal-free rationals, the variable `t`, binary
//! `+ - * /`, unary minus, `^` with an integer exponent and parentheses.
//! Juxtaposition such as `2t` or `3(t+1)` is read as multiplication.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {column} in {input:?}")]
pub struct ExprError {
    pub input: String,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

pub fn parse_ratfunc(input: &str) -> Result<RatFunc, ExprError> {
    let toks = tokenize(input)?;
    let mut p = Parser { input, toks, pos: 0 };
    if p.toks.is_empty() {
        return Err(p.error(1, "empty expression"));
    }
    let v = p.expr()?;
    if let Some((_, col)) = p.toks.get(p.pos) {
        return Err(p.error(*col, "unexpected token"));
    }
    Ok(v)
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Num(s.parse().unwrap()), col));
                continue;
            }
            't' => Tok::T,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ExprError {
                    input: input.to_string(),
                    column: col,
                    message: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, column: usize, message: &str) -> ExprError {
        ExprError {
            input: self.input.to_string(),
            column,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.input.chars().count() + 1)
    }

    fn expr(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add_ref(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul_ref(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.column();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.error(col, "division by zero"));
                    }
                    acc = acc.div_ref(&d);
                }
                Some(Tok::Num(_) | Tok::T | Tok::LParen) => {
                    acc = acc.mul_ref(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg_ref())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.column();
        let e = self.exponent()?;
        base.pow(e)
            .ok_or_else(|| self.error(col, "negative power of zero"))
    }

    fn exponent(&mut self) -> Result<i32, ExprError> {
        let col = self.column();
        let (neg, paren) = match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let neg = self.peek() == Some(&Tok::Minus);
                if neg {
                    self.pos += 1;
                }
                (neg, true)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                (true, false)
            }
            _ => (false, false),
        };
        let n = match self.toks.get(self.pos) {
            Some((Tok::Num(n), _)) => n.clone(),
            _ => return Err(self.error(col, "expected integer exponent")),
        };
        self.pos += 1;
        if paren {
            if self.peek() != Some(&Tok::RParen) {
                return Err(self.error(self.column(), "expected ')'"));
            }
            self.pos += 1;
        }
        let v: i32 = n
            .try_into()
            .ok()
            .filter(|v: &i32| *v <= 10_000)
            .ok_or_else(|| self.error(col, "exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFunc, ExprError> {
        let col = self.column();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some((Tok::T, _)) => {
                self.pos += 1;
                Ok(RatFunc::t())
            }
            Some((Tok::LParen, _)) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error(self.column(), "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => Err(self.error(col, "expected a number, 't' or '('")),
            None => Err(self.error(col, "unexpected end of expression")),
        }
    }
}

/// True when the string parses to the zero function.
pub fn is_zero_expr(input: &str) -> bool {
    parse_ratfunc(input).is_ok_and(|f| f.numer().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::exact::Limit;

    #[test]
    fn parses_polynomials_and_fractions() {
        let f = parse_ratfunc("2*(t-1)").unwrap();
        assert_eq!(f.to_string(), "2*t - 2");
        let g = parse_ratfunc("-t^2 + 3t").unwrap();
        assert_eq!(g.eval(&int(1)), Some(int(2)));
        let h = parse_ratfunc("(t^2+3*t)/t").unwrap();
        assert!(h.is_polynomial());
        assert_eq!(h.limit_at_zero(), Limit::Finite(int(3)));
        assert_eq!(parse_ratfunc("-1/2").unwrap(), RatFunc::constant(rat(-1, 2)));
        assert_eq!(parse_ratfunc("t^-1").unwrap().limit_at_zero(), Limit::Pole);
        assert_eq!(parse_ratfunc("t^(-2)*t^2").unwrap(), RatFunc::constant(int(1)));
    }

    #[test]
    fn reports_positions() {
        let e = parse_ratfunc("1 + x").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_ratfunc("(t+1").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("").is_err());
        assert!(parse_ratfunc("t^").is_err());
    }
}
