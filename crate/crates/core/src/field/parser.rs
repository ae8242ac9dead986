//! Recursive-descent parser for polynomial/rational expressions in `x1..xN`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ('^' digits)*
//! atom   := number | 'x' digits | '(' expr ')'
//! ```
//!
//! Chained exponents associate to the right: `x1^2^3` is `x1^8`.

use thiserror::Error;

use super::Expr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    InvalidNumber,
    UnknownIdentifier(String),
    VariableOutOfRange { index: usize, arity: usize },
    NegativeExponent,
    NonLiteralExponent,
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at byte offset {offset}", describe(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::UnexpectedEnd => "syntax error: unexpected end of input".into(),
        ParseErrorKind::UnexpectedChar(c) => format!("syntax error: unexpected '{c}'"),
        ParseErrorKind::InvalidNumber => "syntax error: malformed number".into(),
        ParseErrorKind::UnknownIdentifier(name) => format!("unknown identifier '{name}'"),
        ParseErrorKind::VariableOutOfRange { index, arity } => {
            format!("variable x{index} is outside x1..x{arity}")
        }
        ParseErrorKind::NegativeExponent => "exponent must be non-negative".into(),
        ParseErrorKind::NonLiteralExponent => "exponent must be an integer literal".into(),
        ParseErrorKind::ExponentTooLarge => "exponent is too large".into(),
    }
}

/// Parses `text` into an expression over `arity` variables.
pub fn parse_expression(text: &str, arity: usize) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        arity,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind, offset: usize) -> ParseError {
        ParseError { kind, offset }
    }

    fn unexpected(&self) -> ParseError {
        match self.src[self.pos..].chars().next() {
            Some(c) => self.err(ParseErrorKind::UnexpectedChar(c), self.pos),
            None => self.err(ParseErrorKind::UnexpectedEnd, self.pos),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        let mut exponents = Vec::new();
        let mut first_offset = None;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let at = match self.peek() {
                Some(b'-') => return Err(self.err(ParseErrorKind::NegativeExponent, self.pos)),
                Some(c) if c.is_ascii_digit() => self.pos,
                Some(_) => return Err(self.err(ParseErrorKind::NonLiteralExponent, self.pos)),
                None => return Err(self.err(ParseErrorKind::UnexpectedEnd, self.pos)),
            };
            first_offset.get_or_insert(at);
            let digits = self.digits();
            if matches!(
                self.bytes.get(self.pos),
                Some(b'.') | Some(b'e') | Some(b'E')
            ) {
                return Err(self.err(ParseErrorKind::NonLiteralExponent, at));
            }
            let k: u32 = digits
                .parse()
                .map_err(|_| self.err(ParseErrorKind::ExponentTooLarge, at))?;
            exponents.push(k);
        }
        let Some(last) = exponents.pop() else {
            return Ok(base);
        };
        let mut k = last;
        while let Some(b) = exponents.pop() {
            k = b.checked_pow(k).ok_or_else(|| {
                self.err(ParseErrorKind::ExponentTooLarge, first_offset.unwrap_or(0))
            })?;
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.err(ParseErrorKind::UnexpectedEnd, self.pos)),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(_) => Err(self.unexpected()),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        self.digits();
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            self.digits();
        }
        if matches!(self.bytes.get(self.pos), Some(b'e') | Some(b'E')) {
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if self.digits().is_empty() {
                return Err(self.err(ParseErrorKind::InvalidNumber, start));
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map(Expr::Const)
            .map_err(|_| self.err(ParseErrorKind::InvalidNumber, start))
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        let index = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .map(|d| d.parse::<usize>().unwrap_or(usize::MAX));
        match index {
            None => Err(self.err(ParseErrorKind::UnknownIdentifier(name.to_string()), start)),
            Some(i) if i == 0 || i > self.arity => Err(self.err(
                ParseErrorKind::VariableOutOfRange {
                    index: i,
                    arity: self.arity,
                },
                start,
            )),
            Some(i) => Ok(Expr::Var(i - 1)),
        }
    }
}
