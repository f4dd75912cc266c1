//! Shared term grammar for point-ring and projective-ring expressions.
//!
//! ```text
//! sum    := term ("+" term)*
//! term   := factor ([*] factor)*
//! factor := "0" | "1" | "theta" ["/" denom] | name ["^" int]
//! denom  := "(" power+ ")" | power
//! power  := ("rho" | "tau") ["^" int]
//! ```
//!
//! `name` is `rho`, `tau`, or one of the caller's generator names.

use crate::error::{Error, Result};
use crate::point_ring::ConeBasisElement;

/// A parsed product term. `coeff` is `None` when the product of the point-ring
/// factors vanishes (or the term is the literal `0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: Option<ConeBasisElement>,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u32),
    Caret,
    Slash,
    LParen,
    RParen,
    Plus,
    Star,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '^' => {
                out.push((col, Tok::Caret));
                i += 1
            }
            '/' => {
                out.push((col, Tok::Slash));
                i += 1
            }
            '(' => {
                out.push((col, Tok::LParen));
                i += 1
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1
            }
            '+' => {
                out.push((col, Tok::Plus));
                i += 1
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse().map_err(|_| Error::Parse {
                    column: col,
                    message: format!("integer `{text}` out of range"),
                })?;
                out.push((col, Tok::Int(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            }
            other => {
                return Err(Error::Parse {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    gens: &'a [&'a str],
}

#[derive(Default)]
struct Acc {
    rho: u32,
    tau: u32,
    thetas: Vec<(u32, u32)>,
    zero: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(v)) => {
                    let v = *v;
                    self.pos += 1;
                    Ok(v)
                }
                _ => self.err("expected an integer exponent after `^`"),
            }
        } else {
            Ok(1)
        }
    }

    fn power(&mut self) -> Result<(u32, u32)> {
        match self.peek() {
            Some(Tok::Ident(name)) if name == "rho" => {
                self.pos += 1;
                Ok((self.exponent()?, 0))
            }
            Some(Tok::Ident(name)) if name == "tau" => {
                self.pos += 1;
                Ok((0, self.exponent()?))
            }
            _ => self.err("expected `rho` or `tau` in a theta denominator"),
        }
    }

    fn denominator(&mut self) -> Result<(u32, u32)> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let (mut n, mut m) = (0, 0);
            loop {
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        return Ok((n, m));
                    }
                    Some(Tok::Star) => self.pos += 1,
                    None => return self.err("unclosed `(`"),
                    _ => {
                        let (a, b) = self.power()?;
                        n += a;
                        m += b;
                    }
                }
            }
        } else if let Some(Tok::Int(1)) = self.peek() {
            self.pos += 1;
            Ok((0, 0))
        } else {
            self.power()
        }
    }

    fn is_factor_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Int(_)))
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut acc = Acc::default();
        let mut exps = vec![0u32; self.gens.len()];
        if !self.is_factor_start() {
            return self.err("expected a term");
        }
        loop {
            match self.peek().cloned() {
                Some(Tok::Int(0)) => {
                    self.pos += 1;
                    acc.zero = true;
                }
                Some(Tok::Int(1)) => self.pos += 1,
                Some(Tok::Int(v)) => return self.err(format!("unexpected integer `{v}`")),
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    if name == "rho" {
                        acc.rho += self.exponent()?;
                    } else if name == "tau" {
                        acc.tau += self.exponent()?;
                    } else if name == "theta" {
                        let d = if self.peek() == Some(&Tok::Slash) {
                            self.pos += 1;
                            self.denominator()?
                        } else {
                            (0, 0)
                        };
                        acc.thetas.push(d);
                    } else if let Some(i) = self.gens.iter().position(|g| *g == name) {
                        exps[i] += self.exponent()?;
                    } else {
                        self.pos -= 1;
                        return self.err(format!("unknown symbol `{name}`"));
                    }
                }
                _ => unreachable!(),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if !self.is_factor_start() {
                    return self.err("expected a factor after `*`");
                }
            } else if !self.is_factor_start() {
                break;
            }
        }
        let coeff = if acc.zero {
            None
        } else {
            let top = ConeBasisElement::Top {
                rho: acc.rho,
                tau: acc.tau,
            };
            acc.thetas.iter().try_fold(top, |c, &(n, m)| {
                c.mul(ConeBasisElement::Bot { rho: n, tau: m })
            })
        };
        Ok(RawTerm {
            coeff,
            exponents: exps,
        })
    }

    fn sum(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(terms)
    }
}

/// Parses a sum of product terms. Columns in errors are 1-based character
/// offsets into `src`.
pub fn parse_terms(src: &str, gens: &[&str]) -> Result<Vec<RawTerm>> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
        gens,
    };
    parser.sum()
}
