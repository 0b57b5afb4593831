//! Generator-name syntax used on the command line.
//!
//! A word is a whitespace-separated list of factors `name` or `name^e`,
//! where `name` is one of `s<i>`, `h<i>`, `t<i>,<j>`, `r`, `r1`, `F`, `C`
//! and the exponent `e` is an integer or a parenthesized arithmetic
//! expression in `n` and `k`, e.g. `r1^(2n+2)`.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::generators::{expand, Factor, Generator};
use crate::word::Word;

pub fn parse_factors(text: &str, ctx: &Context) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let (name, exp) = match token.split_once('^') {
            Some((name, exp)) => (
                name,
                eval_exponent(exp, ctx).map_err(|_| Error::MalformedToken(token.to_string()))?,
            ),
            None => (token, 1),
        };
        let g = Generator::parse(name)?;
        g.validate_indices(ctx)?;
        out.push((g, exp));
    }
    Ok(out)
}

/// Parses and expands to a half-twist word.
pub fn parse_expression(text: &str, ctx: &Context) -> Result<Word> {
    expand(&parse_factors(text, ctx)?, ctx)
}

fn eval_exponent(text: &str, ctx: &Context) -> Result<i64> {
    let bad = || Error::MalformedToken(text.to_string());
    if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let mut p = Parser {
            chars: inner.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            ctx,
        };
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(bad());
        }
        Ok(v)
    } else {
        text.parse().map_err(|_| bad())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self) -> Error {
        Error::MalformedToken(self.chars.iter().collect())
    }

    fn expr(&mut self) -> Result<i64> {
        let mut v = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if c == '+' {
                v.checked_add(rhs)
            } else {
                v.checked_sub(rhs)
            }
            .ok_or(Error::Overflow("exponent"))?;
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<i64> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    v = v.checked_mul(rhs).ok_or(Error::Overflow("exponent"))?;
                }
                // Implicit product: `2n`, `2(n+1)`.
                Some('n' | 'k' | '(') => {
                    let rhs = self.factor()?;
                    v = v.checked_mul(rhs).ok_or(Error::Overflow("exponent"))?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn factor(&mut self) -> Result<i64> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('n') => {
                self.pos += 1;
                Ok(self.ctx.n() as i64)
            }
            Some('k') => {
                self.pos += 1;
                Ok(self.ctx.k() as i64)
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                s.parse().map_err(|_| self.err())
            }
            _ => Err(self.err()),
        }
    }
}
