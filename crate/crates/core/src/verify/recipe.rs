//! Recipe expressions for registry checks.
//!
//! A recipe is text such as `detrows(cols(v, x*v, y*x*v), 1, 2, 5)` evaluated
//! over any [`CheckRing`]. Values are integers, scalars, vectors, 8x8
//! matrices, polynomials in `t`, booleans and sets of primes. Integers stay
//! integers until they meet a ring value.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::arith;
use crate::gf::{Fe, Field};
use crate::linalg::{Matrix, MPoly, Sym, SymRing, DEFAULT_ORDER_CAP};
use crate::ring::{Ring, UPolyRing};

/// Large enough for any element order of an 8x8 matrix over the fields the
/// sweeps use; the order routine works from a factored bound and does not
/// iterate up to the cap.
pub const ORDER_CAP: u64 = u64::MAX / 2;

/// Ring hooks needed by the recipe language beyond [`Ring`].
pub trait CheckRing: Ring {
    /// The field, when elements are plain field elements.
    fn as_field(&self) -> Option<&Field> {
        None
    }

    fn to_fe(&self, _e: &Self::Elem) -> Option<Fe> {
        None
    }

    /// Pointwise: the two values do not vanish together. Symbolically: the
    /// univariate polynomials have gcd 1.
    fn coprime(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool, String>;

    /// Pointwise: `d = 0` forces `n = 0`. Symbolically: exact division.
    fn divides(&self, d: &Self::Elem, n: &Self::Elem) -> Result<bool, String>;

    /// Whether the value is a polynomial (no denominators).
    fn is_poly(&self, _e: &Self::Elem) -> bool {
        true
    }
}

impl CheckRing for Field {
    fn as_field(&self) -> Option<&Field> {
        Some(self)
    }

    fn to_fe(&self, e: &Fe) -> Option<Fe> {
        Some(*e)
    }

    fn coprime(&self, a: &Fe, b: &Fe) -> Result<bool, String> {
        Ok(a.0 != 0 || b.0 != 0)
    }

    fn divides(&self, d: &Fe, n: &Fe) -> Result<bool, String> {
        Ok(d.0 != 0 || n.0 == 0)
    }
}

impl SymRing {
    fn univariate_pair(&self, a: &Sym, b: &Sym) -> Result<(UPolyRing<Field>, Vec<Fe>, Vec<Fe>), String> {
        let pa = self.as_poly(a).ok_or("value has denominators")?;
        let pb = self.as_poly(b).ok_or("value has denominators")?;
        let mut vars: BTreeSet<usize> = pa.support().into_iter().collect();
        vars.extend(pb.support());
        if vars.len() > 1 {
            return Err(format!("values involve {} variables", vars.len()));
        }
        let v = vars.into_iter().next().unwrap_or(0);
        let ua = self.poly.to_univariate(&pa, v).ok_or("not univariate")?;
        let ub = self.poly.to_univariate(&pb, v).ok_or("not univariate")?;
        Ok((UPolyRing::new(self.coef().clone()), ua, ub))
    }
}

impl CheckRing for SymRing {
    fn coprime(&self, a: &Sym, b: &Sym) -> Result<bool, String> {
        let (r, ua, ub) = self.univariate_pair(a, b)?;
        let g = r.gcd(&ua, &ub);
        Ok(r.degree(&g) == Some(0))
    }

    fn divides(&self, d: &Sym, n: &Sym) -> Result<bool, String> {
        let pd: MPoly = self.as_poly(d).ok_or("divisor has denominators")?;
        let pn: MPoly = self.as_poly(n).ok_or("dividend has denominators")?;
        if pd.is_zero() {
            return Ok(pn.is_zero());
        }
        Ok(self.poly.div_exact(&pn, &pd).is_some())
    }

    fn is_poly(&self, e: &Sym) -> bool {
        self.as_poly(e).is_some()
    }
}

#[derive(Clone, Debug)]
pub enum Value<R: Ring> {
    Int(i128),
    Scalar(R::Elem),
    Vector(Vec<R::Elem>),
    Matrix(Matrix<R>),
    /// Coefficients in `t`, lowest degree first.
    Poly(Vec<R::Elem>),
    Bool(bool),
    Set(BTreeSet<u128>),
}

impl<R: Ring> Value<R> {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Scalar(_) => "scalar",
            Value::Vector(_) => "vector",
            Value::Matrix(_) => "matrix",
            Value::Poly(_) => "polynomial",
            Value::Bool(_) => "boolean",
            Value::Set(_) => "set",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeError(pub String);

impl fmt::Display for RecipeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RecipeError {}

type Res<T> = Result<T, RecipeError>;

fn err<T>(m: impl Into<String>) -> Res<T> {
    Err(RecipeError(m.into()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Int(i128),
    Var(String),
    Call(String, Vec<Node>),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
}

impl Node {
    /// Every identifier or function name used.
    pub fn names(&self, out: &mut BTreeSet<String>) {
        match self {
            Node::Int(_) => {}
            Node::Var(v) => {
                out.insert(v.clone());
            }
            Node::Call(f, args) => {
                out.insert(f.clone());
                args.iter().for_each(|a| a.names(out));
            }
            Node::Neg(e) | Node::Pow(e, _) => e.names(out),
            Node::Bin(_, a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Res<Vec<Tok>> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[s..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| RecipeError(format!("number too large in `{src}`")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[s..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return err(format!("unexpected `{c}` in `{src}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, m: &str) -> Res<T> {
        err(format!("{m} in `{}`", self.src))
    }

    fn sum(&mut self) -> Res<Node> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Res<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym(c @ ('*' | '/'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Res<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn exponent(&mut self) -> Res<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Num(n)) => *n as i64,
            _ => return self.fail("expected an integer exponent"),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return self.fail("expected `)`");
        }
        Ok(if neg { -k } else { k })
    }

    fn power(&mut self) -> Res<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.exponent()?;
            return Ok(Node::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Res<Node> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Node::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if !self.eat('(') {
                    return Ok(Node::Var(name));
                }
                let mut args = Vec::new();
                if !self.eat(')') {
                    loop {
                        args.push(self.sum()?);
                        if self.eat(')') {
                            break;
                        }
                        if !self.eat(',') {
                            return self.fail("expected `,` or `)`");
                        }
                    }
                }
                Ok(Node::Call(name, args))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.fail("expected `)`");
                }
                Ok(e)
            }
            _ => self.fail("unexpected end or symbol"),
        }
    }
}

pub fn parse(src: &str) -> Res<Node> {
    let mut p = Parser { toks: lex(src)?, pos: 0, src };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

/// Field-level facts a recipe may ask for, independent of the ring.
#[derive(Clone, Debug, Default)]
pub struct Facts {
    /// Prime divisors of the order of the group the pair should generate.
    pub omega_primes: Option<BTreeSet<u128>>,
    /// GF(q) itself, for field-wide counts.
    pub base_field: Option<Field>,
    pub form: Option<crate::forms::QuadraticForm>,
}

/// Lazily computed names (such as the generator matrices) that depend on
/// the current values of other names.
pub type Builder<R> = dyn Fn(&str, &Env<R>) -> Option<Res<Value<R>>>;

pub struct Env<'a, R: CheckRing> {
    pub ring: R,
    vars: HashMap<String, Value<R>>,
    cache: std::cell::RefCell<HashMap<String, Value<R>>>,
    builder: &'a Builder<R>,
    pub facts: Facts,
}

impl<R: CheckRing> Clone for Env<'_, R> {
    fn clone(&self) -> Self {
        Env {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            cache: std::cell::RefCell::new(self.cache.borrow().clone()),
            builder: self.builder,
            facts: self.facts.clone(),
        }
    }
}

impl<'a, R: CheckRing> Env<'a, R> {
    pub fn new(ring: R, builder: &'a Builder<R>, facts: Facts) -> Self {
        let mut vars = HashMap::new();
        let n = 8;
        for (i, name) in crate::expr::BASIS_NAMES.iter().enumerate() {
            let mut v = vec![ring.zero(); n];
            v[i] = ring.one();
            vars.insert(name.to_string(), Value::Vector(v));
        }
        vars.insert("I".into(), Value::Matrix(Matrix::identity(&ring, n)));
        vars.insert("t".into(), Value::Poly(vec![ring.zero(), ring.one()]));
        vars.insert("true".into(), Value::Bool(true));
        vars.insert("false".into(), Value::Bool(false));
        Env { ring, vars, cache: Default::default(), builder, facts }
    }

    pub fn set(&mut self, name: &str, v: Value<R>) {
        self.vars.insert(name.to_string(), v);
        self.cache.borrow_mut().clear();
    }

    pub fn get(&self, name: &str) -> Option<Value<R>> {
        self.lookup(name).and_then(|r| r.ok())
    }

    pub fn scalar(&self, name: &str) -> Option<R::Elem> {
        match self.get(name) {
            Some(Value::Scalar(s)) => Some(s),
            Some(Value::Int(n)) => Some(self.ring.from_int(n as i64)),
            _ => None,
        }
    }

    fn lookup(&self, name: &str) -> Option<Res<Value<R>>> {
        if let Some(v) = self.vars.get(name) {
            return Some(Ok(v.clone()));
        }
        if let Some(v) = self.cache.borrow().get(name) {
            return Some(Ok(v.clone()));
        }
        let built = (self.builder)(name, self)?;
        if let Ok(v) = &built {
            self.cache.borrow_mut().insert(name.to_string(), v.clone());
        }
        Some(built)
    }

    /// Evaluates `name = expr` and binds the result.
    pub fn bind(&mut self, stmt: &str) -> Res<()> {
        let (name, rhs) = stmt.split_once('=').ok_or_else(|| RecipeError(format!("not a binding: `{stmt}`")))?;
        let v = self.eval_str(rhs.trim())?;
        self.set(name.trim(), v);
        Ok(())
    }

    pub fn eval_str(&self, src: &str) -> Res<Value<R>> {
        self.eval(&parse(src)?)
    }

    pub fn eval(&self, n: &Node) -> Res<Value<R>> {
        let r = &self.ring;
        match n {
            Node::Int(k) => Ok(Value::Int(*k)),
            Node::Var(v) => self.lookup(v).unwrap_or_else(|| err(format!("unknown name `{v}`"))),
            Node::Neg(e) => self.neg(self.eval(e)?),
            Node::Bin(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match op {
                    '+' => self.add(a, b),
                    '-' => {
                        let nb = self.neg(b)?;
                        self.add(a, nb)
                    }
                    '*' => self.mul(a, b),
                    '/' => {
                        let s = self.to_scalar(b)?;
                        let inv = r.inv(&s).ok_or_else(|| RecipeError(format!("{} is not invertible", r.render(&s))))?;
                        self.mul(a, Value::Scalar(inv))
                    }
                    _ => unreachable!(),
                }
            }
            Node::Pow(e, k) => self.pow(self.eval(e)?, *k),
            Node::Call(f, args) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Res<Vec<_>>>()?;
                self.call(f, vals)
            }
        }
    }

    fn to_scalar(&self, v: Value<R>) -> Res<R::Elem> {
        match v {
            Value::Scalar(s) => Ok(s),
            Value::Int(n) => Ok(self.int(n)),
            other => err(format!("expected a scalar, got a {}", other.kind())),
        }
    }

    fn int(&self, n: i128) -> R::Elem {
        let r = &self.ring;
        let m = i64::MAX as i128;
        if n.abs() <= m {
            return r.from_int(n as i64);
        }
        let (hi, lo) = (n / m, n % m);
        r.add(&r.mul(&r.from_int(hi as i64), &r.from_int(m as i64)), &r.from_int(lo as i64))
    }

    fn to_int(&self, v: &Value<R>) -> Res<i128> {
        match v {
            Value::Int(n) => Ok(*n),
            other => err(format!("expected an integer, got a {}", other.kind())),
        }
    }

    fn to_matrix(&self, v: Value<R>) -> Res<Matrix<R>> {
        match v {
            Value::Matrix(m) => Ok(m),
            other => err(format!("expected a matrix, got a {}", other.kind())),
        }
    }

    fn to_vector(&self, v: Value<R>) -> Res<Vec<R::Elem>> {
        match v {
            Value::Vector(m) => Ok(m),
            other => err(format!("expected a vector, got a {}", other.kind())),
        }
    }

    fn to_poly(&self, v: Value<R>) -> Res<Vec<R::Elem>> {
        match v {
            Value::Poly(p) => Ok(p),
            Value::Scalar(s) => Ok(vec![s]),
            Value::Int(n) => Ok(vec![self.int(n)]),
            other => err(format!("expected a polynomial, got a {}", other.kind())),
        }
    }

    fn to_bool(&self, v: &Value<R>) -> Res<bool> {
        match v {
            Value::Bool(b) => Ok(*b),
            other => err(format!("expected a boolean, got a {}", other.kind())),
        }
    }

    fn to_field_matrix(&self, m: &Matrix<R>) -> Res<Matrix<Field>> {
        let k = self.ring.as_field().ok_or_else(|| RecipeError("needs a concrete field".into()))?;
        Ok(m.map(k, |e| self.ring.to_fe(e).expect("field element")))
    }

    fn to_field_vector(&self, v: &[R::Elem]) -> Res<Vec<Fe>> {
        v.iter().map(|e| self.ring.to_fe(e).ok_or_else(|| RecipeError("needs a concrete field".into()))).collect()
    }

    /// Gauss-Jordan over a field; over other rings Cayley-Hamilton, which
    /// needs only the determinant to be invertible.
    fn inverse(&self, m: &Matrix<R>) -> Res<Matrix<R>> {
        let r = &self.ring;
        if r.as_field().is_some() {
            return m.inverse().map_err(|e| RecipeError(e.to_string()));
        }
        let chi = m.char_poly().map_err(|e| RecipeError(e.to_string()))?;
        let n = m.n_rows();
        let c0 = chi.first().cloned().unwrap_or_else(|| r.zero());
        let c0_inv = r.inv(&c0).ok_or_else(|| RecipeError(format!("determinant {} is not invertible", r.render(&c0))))?;
        // m^-1 = -(m^(n-1) + c_(n-1) m^(n-2) + ... + c_1 I) / c_0, by Horner.
        let mut acc = Matrix::identity(r, n);
        for k in (1..n).rev() {
            acc = acc.mul(m).add(&Matrix::identity(r, n).scale(&chi[k]));
        }
        Ok(acc.scale(&r.neg(&c0_inv)))
    }

    fn neg(&self, v: Value<R>) -> Res<Value<R>> {
        let r = &self.ring;
        Ok(match v {
            Value::Int(n) => Value::Int(-n),
            Value::Scalar(s) => Value::Scalar(r.neg(&s)),
            Value::Vector(v) => Value::Vector(v.iter().map(|e| r.neg(e)).collect()),
            Value::Matrix(m) => Value::Matrix(m.neg()),
            Value::Poly(p) => Value::Poly(p.iter().map(|e| r.neg(e)).collect()),
            other => return err(format!("cannot negate a {}", other.kind())),
        })
    }

    fn add(&self, a: Value<R>, b: Value<R>) -> Res<Value<R>> {
        let r = &self.ring;
        Ok(match (a, b) {
            (Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (Value::Vector(x), Value::Vector(y)) if x.len() == y.len() => {
                Value::Vector(x.iter().zip(&y).map(|(u, v)| r.add(u, v)).collect())
            }
            (Value::Matrix(x), Value::Matrix(y)) => Value::Matrix(x.add(&y)),
            (Value::Set(x), Value::Set(y)) => Value::Set(x.union(&y).cloned().collect()),
            (a @ Value::Poly(_), b) | (b, a @ Value::Poly(_)) => {
                let (x, y) = (self.to_poly(a)?, self.to_poly(b)?);
                let n = x.len().max(y.len());
                let get = |p: &Vec<R::Elem>, i: usize| p.get(i).cloned().unwrap_or_else(|| r.zero());
                Value::Poly((0..n).map(|i| r.add(&get(&x, i), &get(&y, i))).collect())
            }
            (a, b) => {
                let (ka, kb) = (a.kind(), b.kind());
                match (self.to_scalar(a), self.to_scalar(b)) {
                    (Ok(x), Ok(y)) => Value::Scalar(r.add(&x, &y)),
                    _ => return err(format!("cannot add a {ka} and a {kb}")),
                }
            }
        })
    }

    fn mul(&self, a: Value<R>, b: Value<R>) -> Res<Value<R>> {
        let r = &self.ring;
        Ok(match (a, b) {
            (Value::Int(x), Value::Int(y)) => Value::Int(x.checked_mul(y).ok_or_else(|| RecipeError("integer overflow".into()))?),
            (Value::Matrix(x), Value::Matrix(y)) => Value::Matrix(x.mul(&y)),
            (Value::Matrix(x), Value::Vector(v)) => Value::Vector(x.apply(&v)),
            (Value::Poly(x), Value::Poly(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Ok(Value::Poly(Vec::new()));
                }
                let mut out = vec![r.zero(); x.len() + y.len() - 1];
                for (i, u) in x.iter().enumerate() {
                    for (j, v) in y.iter().enumerate() {
                        out[i + j] = r.add(&out[i + j], &r.mul(u, v));
                    }
                }
                Value::Poly(out)
            }
            (s, other) | (other, s) if matches!(s, Value::Int(_) | Value::Scalar(_)) => {
                let c = self.to_scalar(s)?;
                match other {
                    Value::Int(n) => Value::Scalar(r.mul(&c, &self.int(n))),
                    Value::Scalar(y) => Value::Scalar(r.mul(&c, &y)),
                    Value::Vector(v) => Value::Vector(v.iter().map(|e| r.mul(&c, e)).collect()),
                    Value::Matrix(m) => Value::Matrix(m.scale(&c)),
                    Value::Poly(p) => Value::Poly(p.iter().map(|e| r.mul(&c, e)).collect()),
                    other => return err(format!("cannot scale a {}", other.kind())),
                }
            }
            (a, b) => return err(format!("cannot multiply a {} by a {}", a.kind(), b.kind())),
        })
    }

    fn pow(&self, v: Value<R>, k: i64) -> Res<Value<R>> {
        let r = &self.ring;
        Ok(match v {
            Value::Int(n) if k >= 0 => Value::Int(n.checked_pow(k as u32).ok_or_else(|| RecipeError("integer overflow".into()))?),
            Value::Matrix(m) => {
                let base = if k < 0 { self.inverse(&m)? } else { m };
                Value::Matrix(base.pow(k.unsigned_abs() as u128))
            }
            Value::Poly(p) if k >= 0 => {
                let mut acc = Value::Poly(vec![r.one()]);
                for _ in 0..k {
                    acc = self.mul(acc, Value::Poly(p.clone()))?;
                }
                acc
            }
            other => {
                let s = self.to_scalar(other)?;
                let base = if k < 0 { r.inv(&s).ok_or_else(|| RecipeError(format!("{} is not invertible", r.render(&s))))? } else { s };
                Value::Scalar(r.pow(&base, k.unsigned_abs()))
            }
        })
    }

    /// Exact equality, promoting integers to scalars and trimming polynomials.
    pub fn equal(&self, a: &Value<R>, b: &Value<R>) -> bool {
        let r = &self.ring;
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => x == y,
            (Value::Bool(x), Value::Bool(y)) => x == y,
            (Value::Set(x), Value::Set(y)) => x == y,
            (Value::Vector(x), Value::Vector(y)) => x.len() == y.len() && x.iter().zip(y).all(|(u, v)| r.equal(u, v)),
            (Value::Matrix(x), Value::Matrix(y)) => x.equals(y),
            (Value::Poly(_), _) | (_, Value::Poly(_)) => match (self.to_poly(a.clone()), self.to_poly(b.clone())) {
                (Ok(x), Ok(y)) => {
                    let n = x.len().max(y.len());
                    let get = |p: &Vec<R::Elem>, i: usize| p.get(i).cloned().unwrap_or_else(|| r.zero());
                    (0..n).all(|i| r.equal(&get(&x, i), &get(&y, i)))
                }
                _ => false,
            },
            _ => match (self.to_scalar(a.clone()), self.to_scalar(b.clone())) {
                (Ok(x), Ok(y)) => r.equal(&x, &y),
                _ => false,
            },
        }
    }

    pub fn render(&self, v: &Value<R>) -> String {
        let r = &self.ring;
        match v {
            Value::Int(n) => n.to_string(),
            Value::Scalar(s) => r.render(s),
            Value::Vector(v) => format!("[{}]", v.iter().map(|e| r.render(e)).collect::<Vec<_>>().join(", ")),
            Value::Matrix(m) => m.to_text(),
            Value::Poly(p) => {
                let terms: Vec<String> = p
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !r.is_zero(c))
                    .map(|(i, c)| match i {
                        0 => format!("({})", r.render(c)),
                        1 => format!("({})*t", r.render(c)),
                        _ => format!("({})*t^{i}", r.render(c)),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
            Value::Bool(b) => b.to_string(),
            Value::Set(s) => format!("{{{}}}", s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")),
        }
    }

    fn call(&self, f: &str, args: Vec<Value<R>>) -> Res<Value<R>> {
        let r = &self.ring;
        let arity = |n: usize| -> Res<()> {
            if args.len() == n {
                Ok(())
            } else {
                err(format!("`{f}` takes {n} argument(s), got {}", args.len()))
            }
        };
        match f {
            "T" => {
                arity(1)?;
                Ok(Value::Matrix(self.to_matrix(args[0].clone())?.transpose()))
            }
            "det" => {
                arity(1)?;
                let m = self.to_matrix(args[0].clone())?;
                Ok(Value::Scalar(m.det().map_err(|e| RecipeError(e.to_string()))?))
            }
            "tr" => {
                arity(1)?;
                Ok(Value::Scalar(self.to_matrix(args[0].clone())?.trace()))
            }
            "comm" => {
                arity(2)?;
                let g = self.to_matrix(args[0].clone())?;
                let h = self.to_matrix(args[1].clone())?;
                Ok(Value::Matrix(self.inverse(&g)?.mul(&self.inverse(&h)?).mul(&g).mul(&h)))
            }
            "cols" => {
                let cols = args.into_iter().map(|a| self.to_vector(a)).collect::<Res<Vec<_>>>()?;
                Ok(Value::Matrix(Matrix::from_columns(r, &cols).map_err(|e| RecipeError(e.to_string()))?))
            }
            "detrows" => {
                let mut it = args.into_iter();
                let m = self.to_matrix(it.next().ok_or_else(|| RecipeError("detrows needs a matrix".into()))?)?;
                let rows = it
                    .map(|v| {
                        let i = self.to_int(&v)?;
                        if i < 1 || i as usize > m.n_rows() {
                            return err(format!("row {i} out of range"));
                        }
                        Ok(i as usize - 1)
                    })
                    .collect::<Res<Vec<_>>>()?;
                Ok(Value::Scalar(m.det_rows(&rows).map_err(|e| RecipeError(e.to_string()))?))
            }
            "charpoly" => {
                arity(1)?;
                let m = self.to_matrix(args[0].clone())?;
                Ok(Value::Poly(m.char_poly().map_err(|e| RecipeError(e.to_string()))?))
            }
            "at" => {
                arity(2)?;
                let p = self.to_poly(args[0].clone())?;
                let s = self.to_scalar(args[1].clone())?;
                Ok(Value::Scalar(p.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, &s), c))))
            }
            "coeff" => {
                arity(2)?;
                let p = self.to_poly(args[0].clone())?;
                let k = self.to_int(&args[1])? as usize;
                Ok(Value::Scalar(p.get(k).cloned().unwrap_or_else(|| r.zero())))
            }
            "iszero" | "nonzero" => {
                arity(1)?;
                let z = match &args[0] {
                    Value::Vector(v) => v.iter().all(|e| r.is_zero(e)),
                    Value::Matrix(m) => m.entries().iter().all(|e| r.is_zero(e)),
                    other => r.is_zero(&self.to_scalar(other.clone())?),
                };
                Ok(Value::Bool(if f == "iszero" { z } else { !z }))
            }
            "iff" => {
                arity(2)?;
                Ok(Value::Bool(self.to_bool(&args[0])? == self.to_bool(&args[1])?))
            }
            "not" => {
                arity(1)?;
                Ok(Value::Bool(!self.to_bool(&args[0])?))
            }
            "or" => Ok(Value::Bool(args.iter().map(|a| self.to_bool(a)).collect::<Res<Vec<_>>>()?.into_iter().any(|b| b))),
            "and" => Ok(Value::Bool(args.iter().map(|a| self.to_bool(a)).collect::<Res<Vec<_>>>()?.into_iter().all(|b| b))),
            "coprime" => {
                arity(2)?;
                let (a, b) = (self.to_scalar(args[0].clone())?, self.to_scalar(args[1].clone())?);
                Ok(Value::Bool(r.coprime(&a, &b).map_err(RecipeError)?))
            }
            "divides" => {
                arity(2)?;
                let (a, b) = (self.to_scalar(args[0].clone())?, self.to_scalar(args[1].clone())?);
                Ok(Value::Bool(r.divides(&a, &b).map_err(RecipeError)?))
            }
            "ispoly" => {
                arity(1)?;
                Ok(Value::Bool(r.is_poly(&self.to_scalar(args[0].clone())?)))
            }
            "rank" => {
                arity(1)?;
                let m = self.to_field_matrix(&self.to_matrix(args[0].clone())?)?;
                Ok(Value::Int(m.rank() as i128))
            }
            "order" => {
                arity(1)?;
                let m = self.to_field_matrix(&self.to_matrix(args[0].clone())?)?;
                Ok(Value::Int(m.element_order(ORDER_CAP).map_err(|e| RecipeError(e.to_string()))? as i128))
            }
            "divisible" => {
                arity(2)?;
                let (n, m) = (self.to_int(&args[0])?, self.to_int(&args[1])?);
                Ok(Value::Bool(m != 0 && n % m == 0))
            }
            "ebasis" | "vbasis" => {
                // ebasis(g, lambda, v1, ...): the vectors form a basis of E_lambda(g);
                // vbasis does the same for the eigenspace V_lambda(g).
                if args.len() < 2 {
                    return err("ebasis needs a matrix and an eigenvalue");
                }
                let mut it = args.into_iter();
                let m = self.to_field_matrix(&self.to_matrix(it.next().unwrap())?)?;
                let lambda = r.to_fe(&self.to_scalar(it.next().unwrap())?).ok_or_else(|| RecipeError("needs a concrete field".into()))?;
                let vs = it.map(|v| self.to_field_vector(&self.to_vector(v)?)).collect::<Res<Vec<_>>>()?;
                let e = if f == "ebasis" { m.e_lambda(lambda) } else { m.eigenspace(lambda) };
                let span = crate::linalg::Subspace::span(r.as_field().expect("concrete"), 8, vs.clone());
                Ok(Value::Bool(span.dim() == vs.len() && span == e))
            }
            "upsilon" => {
                let mut out = BTreeSet::new();
                for a in args {
                    let m = self.to_field_matrix(&self.to_matrix(a)?)?;
                    let n = m.element_order(ORDER_CAP).map_err(|e| RecipeError(e.to_string()))?;
                    out.extend(arith::prime_divisors(n as u128));
                }
                Ok(Value::Set(out))
            }
            "omega_primes" => {
                arity(0)?;
                Ok(Value::Set(self.facts.omega_primes.clone().ok_or_else(|| RecipeError("no group order available".into()))?))
            }
            "tsing" | "extends" => {
                let form = self.facts.form.as_ref().ok_or_else(|| RecipeError("no quadratic form available".into()))?;
                let vs = args.into_iter().map(|v| self.to_field_vector(&self.to_vector(v)?)).collect::<Res<Vec<_>>>()?;
                if f == "tsing" {
                    let singular = vs.iter().all(|v| form.q(v).0 == 0);
                    let orth = vs.iter().all(|u| vs.iter().all(|v| form.b(u, v).0 == 0));
                    let span = crate::linalg::Subspace::span(&form.field, 8, vs.clone());
                    Ok(Value::Bool(singular && orth && span.dim() == vs.len()))
                } else {
                    Ok(Value::Bool(form.singular_extension(&vs).is_some()))
                }
            }
            "generates" => {
                arity(1)?;
                let base = self.facts.base_field.as_ref().ok_or_else(|| RecipeError("no base field".into()))?;
                let s = r.to_fe(&self.to_scalar(args[0].clone())?).ok_or_else(|| RecipeError("needs a concrete field".into()))?;
                let k = r.as_field().expect("concrete");
                Ok(Value::Bool(k.subfield_degree(s) == base.f()))
            }
            "carlitz" => {
                arity(0)?;
                let k = self.facts.base_field.as_ref().ok_or_else(|| RecipeError("no base field".into()))?;
                Ok(Value::Int(carlitz_count(k) as i128))
            }
            "carlitz_gen" => {
                arity(0)?;
                let k = self.facts.base_field.as_ref().ok_or_else(|| RecipeError("no base field".into()))?;
                Ok(Value::Bool(carlitz_generator(k).is_some()))
            }
            "cap" => Ok(Value::Int(DEFAULT_ORDER_CAP as i128)),
            "exp2" => {
                arity(1)?;
                let k = self.to_int(&args[0])?;
                if !(0..127).contains(&k) {
                    return err(format!("exp2 needs an exponent in 0..127, got {k}"));
                }
                Ok(Value::Int(1i128 << k))
            }
            _ => err(format!("unknown function `{f}`")),
        }
    }
}

/// Number of `alpha` in GF(2^f) with `t^2 + t + alpha` irreducible, counted
/// by searching for roots.
pub fn carlitz_count(k: &Field) -> usize {
    let roots: BTreeSet<u64> = k.elements().map(|m| k.add(&k.mul(&m, &m), &m).0).collect();
    k.elements().filter(|alpha| !roots.contains(&alpha.0)).count()
}

/// The smallest `a` with `F_2[a] = F_q` and `t^2 + t + (a+1)^4` irreducible.
pub fn carlitz_generator(k: &Field) -> Option<Fe> {
    let roots: BTreeSet<u64> = k.elements().map(|m| k.add(&k.mul(&m, &m), &m).0).collect();
    k.smallest(|a| {
        let alpha = k.pow(&k.add(&a, &k.one()), 4);
        k.is_field_generator(a) && !roots.contains(&alpha.0)
    })
}
