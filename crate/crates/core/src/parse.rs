//! Text grammar for polynomials and order specifications.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := unary ('*' unary | '/' INT)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?          exponent is a positive integer literal
//! atom   := INT | IDENT | '(' poly ')'
//!
//! order  := lex | deglex | degrevlex | neglex | negdegrevlex
//!         | block(order: vars; order: vars; ...)
//!         | matrix([[i, ...], [i, ...], ...])
//! ```
//!
//! Division is only allowed by a nonzero integer literal, so printed rational
//! coefficients such as `3/2*x` read back unchanged. `#` starts a comment.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::order::OrderSpec;
use crate::poly::{Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Int(BigInt),
    Ident(String),
    Str(String),
    Sym(char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let kind = if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[s..i].iter().collect();
            col += i - s;
            TokenKind::Int(text.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - s;
            TokenKind::Ident(chars[s..i].iter().collect())
        } else if c == '"' {
            let s = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(parse_error(start_line, start_col, "unterminated string"));
            }
            let text: String = chars[s..i].iter().collect();
            i += 1;
            col += text.chars().count() + 2;
            TokenKind::Str(text)
        } else if "+-*^()/,;:[]=".contains(c) {
            i += 1;
            col += 1;
            TokenKind::Sym(c)
        } else {
            return Err(parse_error(line, col, &format!("unexpected character `{c}`")));
        };
        tokens.push(Token {
            kind,
            line: start_line,
            column: start_col,
        });
    }
    Ok(tokens)
}

fn parse_error(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

/// Recursive-descent parser over a token stream.
pub struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    pub fn new(src: &str) -> Result<Parser> {
        let tokens = tokenize(src)?;
        let lines: Vec<&str> = src.split('\n').collect();
        let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
        Ok(Parser { tokens, pos: 0, end })
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    pub fn peek_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(TokenKind::Sym(s)) if *s == c)
    }

    pub fn peek_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Some(TokenKind::Ident(s)) if s == word)
    }

    /// Position of the next token (or end of input).
    pub fn position(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    pub fn error(&self, message: impl AsRef<str>) -> Error {
        let (line, column) = self.position();
        parse_error(line, column, message.as_ref())
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(TokenKind::Int(n)) => format!("`{n}`"),
            Some(TokenKind::Ident(s)) => format!("`{s}`"),
            Some(TokenKind::Str(s)) => format!("\"{s}\""),
            Some(TokenKind::Sym(c)) => format!("`{c}`"),
        }
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(TokenKind::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected identifier, found {}", self.describe_next()))),
        }
    }

    pub fn expect_keyword(&mut self, word: &str) -> Result<()> {
        if self.peek_ident(word) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{word}`, found {}", self.describe_next())))
        }
    }

    pub fn expect_string(&mut self) -> Result<String> {
        match self.peek() {
            Some(TokenKind::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected string, found {}", self.describe_next()))),
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(TokenKind::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error(format!("expected integer, found {}", self.describe_next()))),
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.describe_next())))
        }
    }

    /// Comma-separated identifiers (at least one).
    pub fn ident_list(&mut self) -> Result<Vec<String>> {
        let mut out = vec![self.expect_ident()?];
        while self.eat_sym(',') {
            out.push(self.expect_ident()?);
        }
        Ok(out)
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat_sym('-');
        let n = self.expect_int()?;
        Ok(if neg { -n } else { n })
    }

    /// `[-]INT[/INT]`
    pub fn rational(&mut self) -> Result<Rational> {
        let num = self.signed_int()?;
        if self.eat_sym('/') {
            let (line, col) = self.position();
            let den = self.expect_int()?;
            if den.is_zero() {
                return Err(parse_error(line, col, "division by zero"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    pub fn polynomial(&mut self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = self.term(ring)?;
        loop {
            if self.eat_sym('+') {
                acc = &acc + &self.term(ring)?;
            } else if self.eat_sym('-') {
                acc = &acc - &self.term(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = self.unary(ring)?;
        loop {
            if self.eat_sym('*') {
                acc = &acc * &self.unary(ring)?;
            } else if self.eat_sym('/') {
                let (line, col) = self.position();
                let den = match self.peek() {
                    Some(TokenKind::Int(n)) => n.clone(),
                    _ => {
                        return Err(self.error(format!(
                            "division is only allowed by an integer literal, found {}",
                            self.describe_next()
                        )))
                    }
                };
                self.pos += 1;
                if den.is_zero() {
                    return Err(parse_error(line, col, "division by zero"));
                }
                acc = acc.scale(&Rational::new(BigInt::one(), den));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, ring: &Ring) -> Result<Polynomial> {
        if self.eat_sym('-') {
            Ok(-self.unary(ring)?)
        } else if self.eat_sym('+') {
            self.unary(ring)
        } else {
            self.power(ring)
        }
    }

    fn power(&mut self, ring: &Ring) -> Result<Polynomial> {
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            let (line, col) = self.position();
            let e = match self.peek() {
                Some(TokenKind::Int(n)) => n.clone(),
                _ => {
                    return Err(self.error(format!(
                        "exponent must be a positive integer literal, found {}",
                        self.describe_next()
                    )))
                }
            };
            self.pos += 1;
            let e = e
                .to_u32()
                .filter(|&e| e > 0)
                .ok_or_else(|| parse_error(line, col, "exponent must be a positive integer"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ring: &Ring) -> Result<Polynomial> {
        let (line, col) = self.position();
        match self.peek().cloned() {
            Some(TokenKind::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(ring, Rational::from_integer(n)))
            }
            Some(TokenKind::Ident(name)) => {
                self.pos += 1;
                match ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::variable(ring, i)),
                    None => Err(parse_error(line, col, &format!("undeclared variable `{name}`"))),
                }
            }
            Some(TokenKind::Sym('(')) => {
                self.pos += 1;
                let p = self.polynomial(ring)?;
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => Err(self.error(format!("expected a polynomial, found {}", self.describe_next()))),
        }
    }

    /// An order specification over all variables of `ring`.
    pub fn order(&mut self, ring: &Ring) -> Result<OrderSpec> {
        let (line, col) = self.position();
        let expr = self.order_expr()?;
        expr.resolve(ring)
            .map_err(|e| parse_error(line, col, &format!("malformed order: {e}")))
    }

    fn order_expr(&mut self) -> Result<OrderExpr> {
        let (line, col) = self.position();
        let word = self.expect_ident()?;
        match word.as_str() {
            "lex" => Ok(OrderExpr::Lex),
            "deglex" => Ok(OrderExpr::Deglex),
            "degrevlex" => Ok(OrderExpr::Degrevlex),
            "neglex" => Ok(OrderExpr::Neglex),
            "negdegrevlex" => Ok(OrderExpr::Negdegrevlex),
            "block" => {
                self.expect_sym('(')?;
                let mut blocks = Vec::new();
                loop {
                    let inner = self.order_expr()?;
                    self.expect_sym(':')?;
                    let vars = self.ident_list()?;
                    blocks.push((inner, vars));
                    if !self.eat_sym(';') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                Ok(OrderExpr::Block(blocks))
            }
            "matrix" => {
                self.expect_sym('(')?;
                self.expect_sym('[')?;
                let mut rows = Vec::new();
                loop {
                    self.expect_sym('[')?;
                    let mut row = Vec::new();
                    loop {
                        let (l, c) = self.position();
                        let v = self.signed_int()?;
                        row.push(
                            v.to_i64()
                                .ok_or_else(|| parse_error(l, c, "matrix entry out of range"))?,
                        );
                        if !self.eat_sym(',') {
                            break;
                        }
                    }
                    self.expect_sym(']')?;
                    rows.push(row);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(']')?;
                self.expect_sym(')')?;
                Ok(OrderExpr::Matrix(rows))
            }
            other => Err(parse_error(line, col, &format!("unknown order `{other}`"))),
        }
    }
}

enum OrderExpr {
    Lex,
    Deglex,
    Degrevlex,
    Neglex,
    Negdegrevlex,
    Block(Vec<(OrderExpr, Vec<String>)>),
    Matrix(Vec<Vec<i64>>),
}

impl OrderExpr {
    fn resolve(&self, ring: &Ring) -> Result<OrderSpec> {
        match self {
            OrderExpr::Lex => Ok(OrderSpec::lex(ring)),
            OrderExpr::Deglex => Ok(OrderSpec::deglex(ring)),
            OrderExpr::Degrevlex => Ok(OrderSpec::degrevlex(ring)),
            OrderExpr::Neglex => Ok(OrderSpec::neglex(ring)),
            OrderExpr::Negdegrevlex => Ok(OrderSpec::negdegrevlex(ring)),
            OrderExpr::Matrix(rows) => OrderSpec::from_matrix(ring, rows.clone()),
            OrderExpr::Block(blocks) => {
                let specs = blocks
                    .iter()
                    .map(|(inner, vars)| {
                        for v in vars {
                            ring.require_index(v)?;
                        }
                        inner.resolve(&Ring::new(vars.iter().cloned())?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                OrderSpec::block(ring, &specs)
            }
        }
    }
}

pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    let mut p = Parser::new(src)?;
    let f = p.polynomial(ring)?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_order(ring: &Ring, src: &str) -> Result<OrderSpec> {
    let mut p = Parser::new(src)?;
    let o = p.order(ring)?;
    p.expect_end()?;
    Ok(o)
}

/// Comma-separated polynomial list; an empty string yields no polynomials.
pub fn parse_polynomial_list(ring: &Ring, src: &str) -> Result<Vec<Polynomial>> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        out.push(p.polynomial(ring)?);
        if !p.eat_sym(',') {
            break;
        }
    }
    p.expect_end()?;
    Ok(out)
}
