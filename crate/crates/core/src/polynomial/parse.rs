//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := ('+' | '-') factor | atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' index | '(' expr ')'
//! ```
//!
//! `*` may be omitted before a variable, a literal or a parenthesis.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Polynomial, DEFAULT_DEGREE_LIMIT};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected `{found}` at position {pos}, expected {expected}")]
    UnexpectedToken {
        found: String,
        expected: &'static str,
        pos: usize,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("variable x{index} at position {pos} out of range 1..={nvars}")]
    VariableOutOfRange {
        index: u64,
        nvars: usize,
        pos: usize,
    },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("total degree exceeds limit {limit} at position {pos}")]
    DegreeLimit { limit: u64, pos: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub degree_limit: u64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            degree_limit: DEFAULT_DEGREE_LIMIT,
        }
    }
}

pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    parse_polynomial_with(text, nvars, ParseOptions::default())
}

pub fn parse_polynomial_with(
    text: &str,
    nvars: usize,
    options: ParseOptions,
) -> Result<Polynomial, ParseError> {
    let tokens = lex(text, nvars)?;
    let mut parser = Parser {
        tokens,
        at: 0,
        nvars,
        options,
    };
    let poly = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError::UnexpectedToken {
            found: tok.kind.describe(),
            expected: "operator or end of input",
            pos: tok.pos,
        });
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Int(v) => v.to_string(),
            Kind::Var(i) => format!("x{}", i + 1),
            Kind::Plus => "+".into(),
            Kind::Minus => "-".into(),
            Kind::Star => "*".into(),
            Kind::Slash => "/".into(),
            Kind::Caret => "^".into(),
            Kind::LParen => "(".into(),
            Kind::RParen => ")".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Kind::Int(_) | Kind::Var(_) | Kind::LParen)
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn lex(text: &str, nvars: usize) -> Result<Vec<Token>, ParseError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, ch) = bytes[i];
        let simple = match ch {
            '+' => Some(Kind::Plus),
            '-' => Some(Kind::Minus),
            '*' => Some(Kind::Star),
            '/' => Some(Kind::Slash),
            '^' => Some(Kind::Caret),
            '(' => Some(Kind::LParen),
            ')' => Some(Kind::RParen),
            _ => None,
        };
        if let Some(kind) = simple {
            out.push(Token { kind, pos });
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().map(|&(_, c)| c).collect();
            out.push(Token {
                kind: Kind::Int(digits.parse().expect("ascii digits")),
                pos,
            });
            continue;
        }
        if ch == 'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].1.is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(ParseError::UnexpectedChar { ch, pos });
            }
            let digits: String = bytes[start..end].iter().map(|&(_, c)| c).collect();
            let index: u64 = digits.parse().unwrap_or(u64::MAX);
            if index == 0 || index > nvars as u64 {
                return Err(ParseError::VariableOutOfRange { index, nvars, pos });
            }
            out.push(Token {
                kind: Kind::Var(index as usize - 1),
                pos,
            });
            i = end;
            continue;
        }
        return Err(ParseError::UnexpectedChar { ch, pos });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    nvars: usize,
    options: ParseOptions,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn next(&mut self, expected: &'static str) -> Result<Token, ParseError> {
        let tok = self
            .tokens
            .get(self.at)
            .cloned()
            .ok_or(ParseError::UnexpectedEnd { expected })?;
        self.at += 1;
        Ok(tok)
    }

    fn guard(&self, p: Polynomial, pos: usize) -> Result<Polynomial, ParseError> {
        match p.total_degree() {
            Some(d) if d > self.options.degree_limit => Err(ParseError::DegreeLimit {
                limit: self.options.degree_limit,
                pos,
            }),
            _ => Ok(p),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            let negate = match tok.kind {
                Kind::Plus => false,
                Kind::Minus => true,
                _ => break,
            };
            self.at += 1;
            let rhs = self.term()?;
            acc = if negate { &acc - &rhs } else { &acc + &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            let pos = tok.pos;
            if tok.kind == Kind::Star {
                self.at += 1;
            } else if !tok.kind.starts_atom() {
                break;
            }
            let rhs = self.factor()?;
            acc = self.guard(&acc * &rhs, pos)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().map(|t| &t.kind) {
            Some(Kind::Minus) => {
                self.at += 1;
                Ok(-&self.factor()?)
            }
            Some(Kind::Plus) => {
                self.at += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if let Some(Token {
                    kind: Kind::Caret,
                    pos,
                }) = self.peek().cloned()
                {
                    self.at += 1;
                    let tok = self.next("integer exponent")?;
                    let Kind::Int(k) = tok.kind else {
                        return Err(ParseError::UnexpectedToken {
                            found: tok.kind.describe(),
                            expected: "integer exponent",
                            pos: tok.pos,
                        });
                    };
                    let limit = self.options.degree_limit;
                    let k = k
                        .to_u64()
                        .filter(|&k| k <= limit)
                        .ok_or(ParseError::DegreeLimit { limit, pos })?;
                    let base_degree = base.total_degree().unwrap_or(0);
                    if base_degree.saturating_mul(k) > limit {
                        return Err(ParseError::DegreeLimit { limit, pos });
                    }
                    return Ok(base.pow(k as u32));
                }
                Ok(base)
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let tok = self.next("literal, variable or `(`")?;
        match tok.kind {
            Kind::Int(num) => {
                if matches!(self.peek().map(|t| &t.kind), Some(Kind::Slash)) {
                    self.at += 1;
                    let den_tok = self.next("denominator")?;
                    let Kind::Int(den) = den_tok.kind else {
                        return Err(ParseError::UnexpectedToken {
                            found: den_tok.kind.describe(),
                            expected: "denominator",
                            pos: den_tok.pos,
                        });
                    };
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos: den_tok.pos });
                    }
                    return Ok(Polynomial::constant(self.nvars, Rational::new(num, den)));
                }
                Ok(Polynomial::constant(
                    self.nvars,
                    Rational::from_integer(num),
                ))
            }
            Kind::Var(i) => Ok(Polynomial::var(self.nvars, i)),
            Kind::LParen => {
                let inner = self.expr()?;
                let close = self.next("`)`")?;
                if close.kind != Kind::RParen {
                    return Err(ParseError::UnexpectedToken {
                        found: close.kind.describe(),
                        expected: "`)`",
                        pos: close.pos,
                    });
                }
                Ok(inner)
            }
            other => Err(ParseError::UnexpectedToken {
                found: other.describe(),
                expected: "literal, variable or `(`",
                pos: tok.pos,
            }),
        }
    }
}
