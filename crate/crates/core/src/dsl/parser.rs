//! Recursive-descent parser.
//!
//! ```text
//! surface := expr ";" expr ";" expr ";" expr ";" expr
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | factor
//! factor  := base ("^" "-"? integer)?
//! base    := number | "u" | "v" | ident | ident "(" expr ")" | "(" expr ")"
//! ```
//! Unary minus binds looser than `^`, so `-u^2` is `-(u^2)`.

use std::collections::BTreeMap;

use super::ast::{BinOp, Expr, Func};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    text: String,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let start_col = col;
        let tok = if ch.is_ascii_digit() || ch == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let mut is_int = !chars[start..i].contains(&'.');
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                    is_int = false;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| Error::SyntaxError {
                line,
                column: start_col,
                message: format!("malformed number `{text}`"),
            })?;
            match (is_int, text.parse::<i64>()) {
                (true, Ok(n)) => Tok::Int(n),
                _ => Tok::Num(value),
            }
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^();,".contains(ch) {
            i += 1;
            Tok::Sym(ch)
        } else {
            return Err(Error::SyntaxError {
                line,
                column: col,
                message: format!("unexpected character `{ch}`"),
            });
        };
        col += i - start;
        out.push(Token {
            tok,
            line,
            column: start_col,
            text: chars[start..i].iter().collect(),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
        text: String::new(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    params: &'a BTreeMap<String, f64>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        let found = if t.tok == Tok::End {
            "end of input".to_string()
        } else {
            format!("`{}`", t.text)
        };
        Err(Error::SyntaxError {
            line: t.line,
            column: t.column,
            message: format!("{}, found {found}", message.into()),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::neg(self.unary()?))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                let n = if negative { -n } else { n };
                let n = i32::try_from(n).or_else(|_| self.error("exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            _ => self.error("expected an integer exponent"),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr::Num(x))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(n as f64))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek().tok == Tok::Sym('(') {
                    let func = Func::from_name(&name).ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                    self.bump();
                    let mut args = Vec::new();
                    if self.peek().tok != Tok::Sym(')') {
                        args.push(self.expr()?);
                        while self.eat(',') {
                            args.push(self.expr()?);
                        }
                    }
                    self.expect(')')?;
                    if args.len() != 1 {
                        return Err(Error::ArityError(format!(
                            "`{name}` takes 1 argument, got {}",
                            args.len()
                        )));
                    }
                    return Ok(Expr::Unary(func, Box::new(args.pop().unwrap())));
                }
                match name.as_str() {
                    "u" => Ok(Expr::U),
                    "v" => Ok(Expr::V),
                    _ if self.params.contains_key(&name) => Ok(Expr::Param(name)),
                    _ if Func::from_name(&name).is_some() => {
                        Err(Error::ArityError(format!("`{name}` must be applied to 1 argument")))
                    }
                    _ => Err(Error::UnknownIdentifier(name)),
                }
            }
            _ => self.error("expected an expression"),
        }
    }
}

/// Parses one expression.
pub fn parse_expr(src: &str, params: &BTreeMap<String, f64>) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        params,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.error("expected an operator or end of input");
    }
    Ok(e)
}

/// Parses the five `;`-separated components of a surface.
pub fn parse_components(src: &str, params: &BTreeMap<String, f64>) -> Result<Vec<Expr>> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        params,
    };
    let mut comps = vec![p.expr()?];
    while p.eat(';') {
        comps.push(p.expr()?);
    }
    if p.peek().tok != Tok::End {
        return p.error("expected `;`, an operator or end of input");
    }
    if comps.len() != 5 {
        return Err(Error::ArityError(format!(
            "a surface has 5 components, got {}",
            comps.len()
        )));
    }
    Ok(comps)
}
