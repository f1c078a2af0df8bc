//! Text format for polynomials.
//!
//! Two forms are accepted:
//!
//! * a comma-separated coefficient list, low to high: `"1,0,0,0,1"`;
//! * an expression in `T` with integer coefficients, `+`, `-`, `*`, `^`,
//!   parentheses and implicit multiplication: `"T^4+1"`,
//!   `"(T^2+1)^2*(T^2-2)^2"`, `"3T^2 - 7T"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::IntPoly;
use crate::{Error, Result};

const MAX_EXPONENT: u64 = 4096;

pub fn parse_poly(input: &str) -> Result<IntPoly> {
    if input.trim().is_empty() {
        return Err(Error::Parse { position: 0, message: "empty polynomial".into() });
    }
    if input.contains(',') {
        return parse_coeff_list(input);
    }
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, pos: 0, len: input.len() };
    let poly = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(Error::Parse { position: tok.at, message: format!("unexpected {}", tok.kind.describe()) });
    }
    Ok(poly)
}

fn parse_coeff_list(input: &str) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for field in input.split(',') {
        let trimmed = field.trim();
        let lead = field.len() - field.trim_start().len();
        let value: BigInt = trimmed.parse().map_err(|_| Error::Parse {
            position: offset + lead,
            message: format!("expected an integer coefficient, found {trimmed:?}"),
        })?;
        coeffs.push(value);
        offset += field.len() + 1;
    }
    Ok(IntPoly::new(coeffs))
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Int(v) => format!("integer {v}"),
            Kind::Var => "variable".into(),
            Kind::Plus => "'+'".into(),
            Kind::Minus => "'-'".into(),
            Kind::Star => "'*'".into(),
            Kind::Caret => "'^'".into(),
            Kind::LParen => "'('".into(),
            Kind::RParen => "')'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    at: usize,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let kind = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = input[start..i].parse().expect("digits");
                out.push(Token { kind: Kind::Int(v), at: start });
                continue;
            }
            b'T' | b't' | b'X' | b'x' => Kind::Var,
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse { position: i, message: format!("unexpected character {ch:?}") });
            }
        };
        out.push(Token { kind, at: i });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.len, |t| t.at)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = if self.eat(&Kind::Minus) {
            -&self.term()?
        } else {
            self.eat(&Kind::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Kind::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Kind::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power ('*'? power)*
    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Kind::Star) {
                acc = &acc * &self.power()?;
            } else if matches!(self.peek().map(|t| &t.kind), Some(Kind::Var | Kind::LParen | Kind::Int(_))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // power := atom ('^' int)?
    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if !self.eat(&Kind::Caret) {
            return Ok(base);
        }
        let at = self.here();
        match self.bump() {
            Some(Token { kind: Kind::Int(k), .. }) => {
                let k = k.to_u64().filter(|&k| k <= MAX_EXPONENT).ok_or_else(|| Error::Parse {
                    position: at,
                    message: format!("exponent must be at most {MAX_EXPONENT}"),
                })?;
                Ok(base.pow(k as u32))
            }
            Some(tok) => Err(Error::Parse {
                position: at,
                message: format!("expected a nonnegative integer exponent, found {}", tok.kind.describe()),
            }),
            None => Err(Error::Parse { position: at, message: "expected an exponent after '^'".into() }),
        }
    }

    // atom := int | var | '(' expr ')' | '-' atom
    fn atom(&mut self) -> Result<IntPoly> {
        let at = self.here();
        match self.bump() {
            Some(Token { kind: Kind::Int(v), .. }) => Ok(IntPoly::constant(v)),
            Some(Token { kind: Kind::Var, .. }) => Ok(IntPoly::x()),
            Some(Token { kind: Kind::LParen, .. }) => {
                let inner = self.expr()?;
                if !self.eat(&Kind::RParen) {
                    return Err(Error::Parse { position: self.here(), message: "expected ')'".into() });
                }
                Ok(inner)
            }
            Some(Token { kind: Kind::Minus, .. }) => Ok(-&self.power()?),
            Some(tok) => Err(Error::Parse { position: at, message: format!("unexpected {}", tok.kind.describe()) }),
            None => Err(Error::Parse { position: at, message: "unexpected end of input".into() }),
        }
    }
}
