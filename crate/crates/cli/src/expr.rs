//! Element expressions: lexer, recursive-descent parser and a printer that
//! inserts only the parentheses the grammar needs.
//!
//! ```text
//! expr    = tensor { ("+" | "-") tensor } ;
//! tensor  = product { ("⊗" | "#") product } ;
//! product = factor { "*" factor } ;
//! factor  = "-" factor | power ;
//! power   = atom [ "^" integer ] ;
//! atom    = rational | ident | "(" expr ")" ;
//! rational = integer [ "/" integer ] ;
//! ```

use std::fmt;

use lierine_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Box<Expr>, Box<Expr>),
    Cross(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((col, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()/,⊗#".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(SyntaxError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.tensor()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('⊗') {
                lhs = Expr::Tensor(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('#') {
                lhs = Expr::Cross(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            return match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let Ok(k) = u32::try_from(&n) else {
                        return self.err("exponent too large");
                    };
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => self.err("expected an integer exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Expr::Num(Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("division by zero"),
                        _ => self.err("expected a denominator"),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Splits at commas outside parentheses.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Tensor(..) | Expr::Cross(..) => 2,
        Expr::Mul(..) => 3,
        Expr::Neg(_) => 4,
        Expr::Num(q) if q.is_negative() => 4,
        Expr::Pow(..) => 5,
        Expr::Num(q) if !q.denom().is_one() => 5,
        Expr::Num(_) | Expr::Ident(_) => 6,
    }
}

fn write_at(e: &Expr, min: u8, out: &mut String) {
    if prec(e) < min {
        out.push('(');
        write_at(e, 0, out);
        out.push(')');
        return;
    }
    let bin = |a: &Expr, op: &str, b: &Expr, la: u8, lb: u8, out: &mut String| {
        write_at(a, la, out);
        out.push_str(op);
        write_at(b, lb, out);
    };
    match e {
        Expr::Num(q) => out.push_str(&q.to_string()),
        Expr::Ident(s) => out.push_str(s),
        Expr::Neg(a) => {
            out.push('-');
            write_at(a, 4, out);
        }
        Expr::Add(a, b) => bin(a, " + ", b, 1, 2, out),
        Expr::Sub(a, b) => bin(a, " - ", b, 1, 2, out),
        Expr::Tensor(a, b) => bin(a, " ⊗ ", b, 2, 3, out),
        Expr::Cross(a, b) => bin(a, " # ", b, 2, 3, out),
        Expr::Mul(a, b) => bin(a, "*", b, 3, 4, out),
        Expr::Pow(a, k) => {
            write_at(a, 6, out);
            out.push_str(&format!("^{k}"));
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_at(self, 0, &mut s);
        f.write_str(&s)
    }
}
