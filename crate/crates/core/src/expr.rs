//! A small arithmetic expression language for matrix entries, vectors and
//! expected values. The same text evaluates in a finite field (numeric checks)
//! and in the symbolic ring (polynomial identities).
//!
//! Grammar: integers, identifiers, `+ - * / ^`, unary minus and parentheses.
//! Exponents are integer literals, possibly negative (`w^-1`, `a^(-2)`).
//! Identifiers are resolved by the caller; vector expressions use the basis
//! names `e1..e4` and `em1..em4` (for `e_{-1}..e_{-4}`).

use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error in `{src}`: {msg}")]
    Parse { src: String, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("division by a non-invertible value in `{0}`")]
    NotInvertible(String),
    #[error("row {0} has {1} entries, expected {2}")]
    Shape(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/({b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ExprError> {
    let err = |msg: String| ExprError::Parse { src: src.to_string(), msg };
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| err(format!("integer `{s}` too large")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError::Parse { src: self.src.to_string(), msg: msg.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Num(k)) => *k,
            _ => return Err(self.err("exponent must be an integer literal")),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(self.err("missing `)` after exponent"));
        }
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src, toks: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Evaluates a parsed expression; `env` resolves identifiers.
pub fn eval_expr<R: Ring>(
    ring: &R,
    e: &Expr,
    env: &dyn Fn(&str) -> Option<R::Elem>,
) -> Result<R::Elem, ExprError> {
    let inv = |v: R::Elem, e: &Expr| ring.inv(&v).ok_or_else(|| ExprError::NotInvertible(e.to_string()));
    Ok(match e {
        Expr::Int(n) => ring.from_int(*n),
        Expr::Var(v) => env(v).ok_or_else(|| ExprError::UnknownSymbol(v.clone()))?,
        Expr::Neg(x) => ring.neg(&eval_expr(ring, x, env)?),
        Expr::Add(x, y) => ring.add(&eval_expr(ring, x, env)?, &eval_expr(ring, y, env)?),
        Expr::Sub(x, y) => ring.sub(&eval_expr(ring, x, env)?, &eval_expr(ring, y, env)?),
        Expr::Mul(x, y) => ring.mul(&eval_expr(ring, x, env)?, &eval_expr(ring, y, env)?),
        Expr::Div(x, y) => ring.mul(&eval_expr(ring, x, env)?, &inv(eval_expr(ring, y, env)?, y)?),
        Expr::Pow(x, k) => {
            let b = eval_expr(ring, x, env)?;
            let b = if *k < 0 { inv(b, x)? } else { b };
            ring.pow(&b, k.unsigned_abs())
        }
    })
}

pub fn eval<R: Ring>(ring: &R, src: &str, env: &dyn Fn(&str) -> Option<R::Elem>) -> Result<R::Elem, ExprError> {
    eval_expr(ring, &parse(src)?, env)
}

/// Names of the standard basis vectors, in coordinate order.
pub const BASIS_NAMES: [&str; 8] = ["e1", "e2", "e3", "e4", "em1", "em2", "em3", "em4"];

/// Evaluates an expression linear in the basis symbols to a coordinate vector.
pub fn eval_vector<R: Ring>(
    ring: &R,
    src: &str,
    env: &dyn Fn(&str) -> Option<R::Elem>,
) -> Result<Vec<R::Elem>, ExprError> {
    let e = parse(src)?;
    let with_basis = |k: Option<usize>| {
        let env2 = move |s: &str| match BASIS_NAMES.iter().position(|&b| b == s) {
            Some(i) if Some(i) == k => Some(ring.one()),
            Some(_) => Some(ring.zero()),
            None => env(s),
        };
        eval_expr(ring, &e, &env2)
    };
    let offset = with_basis(None)?;
    (0..BASIS_NAMES.len()).map(|k| Ok(ring.sub(&with_basis(Some(k))?, &offset))).collect()
}

/// Evaluates a matrix given as rows of comma-separated entry expressions.
pub fn eval_matrix<R: Ring>(
    ring: &R,
    rows: &[&str],
    env: &dyn Fn(&str) -> Option<R::Elem>,
) -> Result<Matrix<R>, ExprError> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<R::Elem> = row.split(',').map(|s| eval(ring, s, env)).collect::<Result<_, _>>()?;
        if entries.len() != rows[0].split(',').count() {
            return Err(ExprError::Shape(i, entries.len(), rows[0].split(',').count()));
        }
        out.push(entries);
    }
    Ok(Matrix::from_rows(ring, out).expect("rows checked above"))
}
