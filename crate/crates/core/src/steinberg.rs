//! Steinberg root elements of the split eight-dimensional orthogonal group,
//! words over them, the derived elements built from them, and triality as a
//! relabelling of words.
//!
//! Words are always stored fully expanded into the eight basic labels. A
//! symbol's parameter is an integer linear form `c + k*a` in the pair
//! parameter `a`, which is all the published words need; it lets one word be
//! evaluated over a finite field or over a symbolic ring alike.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteinbergError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is not a commutator generator")]
    NotDerived(String),
    #[error("cannot parse `{0}`: {1}")]
    Parse(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    X12,
    X21,
    X23,
    X32,
    X34,
    X43,
    X1m2,
    Xm21,
}

impl Label {
    pub const ALL: [Label; 8] = [Label::X12, Label::X21, Label::X23, Label::X32, Label::X34, Label::X43, Label::X1m2, Label::Xm21];

    pub fn name(self) -> &'static str {
        match self {
            Label::X12 => "x12",
            Label::X21 => "x21",
            Label::X23 => "x23",
            Label::X32 => "x32",
            Label::X34 => "x34",
            Label::X43 => "x43",
            Label::X1m2 => "x1m2",
            Label::Xm21 => "xm21",
        }
    }

    /// The two matrix positions `(r, c)` receiving `+alpha` and `-alpha`.
    /// Indices follow the basis `e1..e4, e-1..e-4`.
    fn positions(self) -> ((usize, usize), (usize, usize)) {
        // i -> i-1 and -i -> 3+i
        let up = |i: usize, j: usize| ((i - 1, j - 1), (3 + j, 3 + i));
        match self {
            Label::X12 => up(1, 2),
            Label::X23 => up(2, 3),
            Label::X34 => up(3, 4),
            Label::X1m2 => ((0, 5), (1, 4)),
            Label::X21 | Label::X32 | Label::X43 | Label::Xm21 => {
                let ((a, b), (c, d)) = self.transposed().positions();
                ((b, a), (d, c))
            }
        }
    }

    fn transposed(self) -> Label {
        match self {
            Label::X12 => Label::X21,
            Label::X21 => Label::X12,
            Label::X23 => Label::X32,
            Label::X32 => Label::X23,
            Label::X34 => Label::X43,
            Label::X43 => Label::X34,
            Label::X1m2 => Label::Xm21,
            Label::Xm21 => Label::X1m2,
        }
    }

    /// Triality: `(x12 x34 xm21)(x21 x43 x1m2)`, fixing `x23` and `x32`.
    pub fn tau(self) -> Label {
        match self {
            Label::X12 => Label::X34,
            Label::X34 => Label::Xm21,
            Label::Xm21 => Label::X12,
            Label::X21 => Label::X43,
            Label::X43 => Label::X1m2,
            Label::X1m2 => Label::X21,
            other => other,
        }
    }
}

impl FromStr for Label {
    type Err = SteinbergError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| SteinbergError::UnknownSymbol(s.to_string()))
    }
}

/// `c + k*a` with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    pub c: i64,
    pub k: i64,
}

impl Param {
    pub const ONE: Param = Param { c: 1, k: 0 };
    pub const A: Param = Param { c: 0, k: 1 };

    pub fn int(c: i64) -> Param {
        Param { c, k: 0 }
    }

    pub fn a_times(k: i64) -> Param {
        Param { c: 0, k }
    }

    pub fn neg(self) -> Param {
        Param { c: -self.c, k: -self.k }
    }

    pub fn eval<R: Ring>(&self, ring: &R, a: &R::Elem) -> R::Elem {
        ring.add(&ring.from_int(self.c), &ring.mul(&ring.from_int(self.k), a))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let aterm = |k: i64| match k {
            1 => "a".to_string(),
            -1 => "-a".to_string(),
            k => format!("{k}*a"),
        };
        match (self.c, self.k) {
            (c, 0) => write!(f, "{c}"),
            (0, k) => f.write_str(&aterm(k)),
            (c, k) if k > 0 => write!(f, "{c}+{}", aterm(k)),
            (c, k) => write!(f, "{c}{}", aterm(k)),
        }
    }
}

impl FromStr for Param {
    type Err = SteinbergError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| SteinbergError::Parse(s.to_string(), m.to_string());
        if s.is_empty() {
            return Err(err("empty parameter"));
        }
        let mut p = Param { c: 0, k: 0 };
        let mut rest = s;
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' if rest.len() < s.len() => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term == "a" {
                p.k += sign;
            } else if let Some(n) = term.strip_suffix("*a") {
                p.k += sign * n.parse::<i64>().map_err(|_| err("bad coefficient"))?;
            } else {
                p.c += sign * term.parse::<i64>().map_err(|_| err("bad term"))?;
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSymbol {
    pub label: Label,
    pub param: Param,
    pub inverse: bool,
}

impl RootSymbol {
    pub fn new(label: Label, param: Param) -> Self {
        RootSymbol { label, param, inverse: false }
    }

    pub fn inverted(self) -> Self {
        RootSymbol { inverse: !self.inverse, ..self }
    }

    /// The parameter actually applied: root groups give `x(t)^-1 = x(-t)`.
    pub fn effective_param(&self) -> Param {
        if self.inverse {
            self.param.neg()
        } else {
            self.param
        }
    }
}

impl fmt::Display for RootSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label.name(), self.param)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub symbols: Vec<RootSymbol>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn basic(label: Label, param: Param) -> Self {
        Word { symbols: vec![RootSymbol::new(label, param)] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { symbols }
    }

    pub fn inverse(&self) -> Word {
        Word { symbols: self.symbols.iter().rev().map(|s| s.inverted()).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(g: &Word, h: &Word) -> Word {
        g.inverse().concat(&h.inverse()).concat(g).concat(h)
    }

    /// `g^p = p^-1 g p`.
    pub fn conjugate(g: &Word, p: &Word) -> Word {
        p.inverse().concat(g).concat(p)
    }

    pub fn tau(&self) -> Word {
        Word {
            symbols: self.symbols.iter().map(|s| RootSymbol { label: s.label.tau(), ..*s }).collect(),
        }
    }

    pub fn tau_pow(&self, i: usize) -> Word {
        (0..i % 3).fold(self.clone(), |w, _| w.tau())
    }

    /// Parses whitespace-separated tokens. Besides basic symbols, tokens may
    /// name a derived element, which is expanded on the spot; derived tokens
    /// accept an integer exponent suffix `^k`.
    pub fn parse(text: &str, reading: MacroReading) -> Result<Word, SteinbergError> {
        let mut out = Word::empty();
        for tok in text.split_whitespace() {
            out = out.concat(&parse_token(tok, reading)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

fn parse_token(tok: &str, reading: MacroReading) -> Result<Word, SteinbergError> {
    let err = |m: &str| SteinbergError::Parse(tok.to_string(), m.to_string());
    let (head, exp) = match tok.rfind('^') {
        Some(i) if !tok[i..].contains(')') => (&tok[..i], tok[i + 1..].parse::<i64>().map_err(|_| err("bad exponent"))?),
        _ => (tok, 1),
    };
    let (name, param) = match head.find('(') {
        Some(i) => {
            let inner = head[i + 1..].strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
            (&head[..i], Some(inner.parse::<Param>()?))
        }
        None => (head, None),
    };
    if let Ok(label) = name.parse::<Label>() {
        let param = param.ok_or_else(|| err("basic symbols need a parameter"))?;
        return match exp {
            1 => Ok(Word::basic(label, param)),
            -1 => Ok(Word { symbols: vec![RootSymbol::new(label, param).inverted()] }),
            _ => Err(err("basic symbols take only the exponent -1")),
        };
    }
    let m: Macro = name.parse()?;
    if m.takes_param() != param.is_some() {
        return Err(err(if m.takes_param() { "parameter required" } else { "unexpected parameter" }));
    }
    Ok(m.expand(param.unwrap_or(Param::ONE), reading).pow(exp))
}

/// How to read the definition of `x-14(alpha)`, whose printed right-hand
/// side is `(x-13(1))^pi34` and so does not depend on `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MacroReading {
    /// Exactly as printed.
    #[default]
    Literal,
    /// `(x-13(alpha))^pi34`.
    Alpha,
}

/// Derived elements, each defined by a word in earlier ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Macro {
    X24,
    X13,
    X14,
    Xm13,
    Xm14,
    Xm24,
    Xm34,
    Pi12,
    Pi23,
    Pi34,
    Pi1m2,
    Pi13,
    Pi24,
    Rho12,
    Rho34,
    J,
}

impl Macro {
    pub const ALL: [Macro; 16] = [
        Macro::X24,
        Macro::X13,
        Macro::X14,
        Macro::Xm13,
        Macro::Xm14,
        Macro::Xm24,
        Macro::Xm34,
        Macro::Pi12,
        Macro::Pi23,
        Macro::Pi34,
        Macro::Pi1m2,
        Macro::Pi13,
        Macro::Pi24,
        Macro::Rho12,
        Macro::Rho34,
        Macro::J,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Macro::X24 => "x24",
            Macro::X13 => "x13",
            Macro::X14 => "x14",
            Macro::Xm13 => "xm13",
            Macro::Xm14 => "xm14",
            Macro::Xm24 => "xm24",
            Macro::Xm34 => "xm34",
            Macro::Pi12 => "pi12",
            Macro::Pi23 => "pi23",
            Macro::Pi34 => "pi34",
            Macro::Pi1m2 => "pi1m2",
            Macro::Pi13 => "pi13",
            Macro::Pi24 => "pi24",
            Macro::Rho12 => "rho12",
            Macro::Rho34 => "rho34",
            Macro::J => "J",
        }
    }

    pub fn takes_param(self) -> bool {
        matches!(self, Macro::X24 | Macro::X13 | Macro::X14 | Macro::Xm13 | Macro::Xm14 | Macro::Xm24 | Macro::Xm34)
    }

    /// The closed form `I + alpha (E_{i,k} - E_{-k,-i})` of a parametrized
    /// macro, as `(i, k)` with negative indices for `e-i`.
    pub fn root(self) -> Option<(i8, i8)> {
        Some(match self {
            Macro::X24 => (2, 4),
            Macro::X13 => (1, 3),
            Macro::X14 => (1, 4),
            Macro::Xm13 => (-1, 3),
            Macro::Xm14 => (-1, 4),
            Macro::Xm24 => (-2, 4),
            Macro::Xm34 => (-3, 4),
            _ => return None,
        })
    }

    /// Expansion into basic symbols; `alpha` is ignored by unparametrized macros.
    pub fn expand(self, alpha: Param, reading: MacroReading) -> Word {
        let x = |l: Label, p: Param| Word::basic(l, p);
        let one = Param::ONE;
        let m = |mm: Macro, p: Param| mm.expand(p, reading);
        let pi = |mm: Macro| mm.expand(one, reading);
        let n1 = Param::int(-1);
        match self {
            Macro::X24 => Word::commutator(&x(Label::X23, alpha), &x(Label::X34, one)),
            Macro::X13 => Word::commutator(&x(Label::X12, alpha), &x(Label::X23, one)),
            Macro::X14 => Word::commutator(&m(Macro::X13, alpha), &x(Label::X34, one)),
            Macro::Pi12 => x(Label::X21, n1).concat(&x(Label::X12, one)).concat(&x(Label::X21, n1)),
            Macro::Pi23 => x(Label::X32, n1).concat(&x(Label::X23, one)).concat(&x(Label::X32, n1)),
            Macro::Pi34 => x(Label::X43, n1).concat(&x(Label::X34, one)).concat(&x(Label::X43, n1)),
            Macro::Pi1m2 => x(Label::Xm21, n1).concat(&x(Label::X1m2, one)).concat(&x(Label::Xm21, n1)),
            Macro::Pi13 => Word::conjugate(&pi(Macro::Pi23), &pi(Macro::Pi12)),
            Macro::Pi24 => Word::conjugate(&pi(Macro::Pi34), &pi(Macro::Pi23)),
            Macro::Rho12 => pi(Macro::Pi12).concat(&pi(Macro::Pi1m2)),
            Macro::Rho34 => {
                let p = pi(Macro::Pi13).concat(&pi(Macro::Pi24));
                p.concat(&pi(Macro::Rho12)).concat(&p)
            }
            Macro::J => pi(Macro::Rho12).concat(&pi(Macro::Rho34)),
            Macro::Xm13 => Word::conjugate(&x(Label::Xm21, alpha), &pi(Macro::Pi23)),
            Macro::Xm14 => {
                let inner = match reading {
                    MacroReading::Literal => one,
                    MacroReading::Alpha => alpha,
                };
                Word::conjugate(&m(Macro::Xm13, inner), &pi(Macro::Pi34))
            }
            Macro::Xm24 => Word::conjugate(&m(Macro::Xm14, alpha), &pi(Macro::Pi12)),
            Macro::Xm34 => Word::conjugate(&m(Macro::Xm24, alpha), &pi(Macro::Pi23)),
        }
    }
}

impl FromStr for Macro {
    type Err = SteinbergError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Macro::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| SteinbergError::UnknownSymbol(s.to_string()))
    }
}

/// The defining word of a commutator generator `x24`, `x13` or `x14`.
pub fn commutator_expand(label: &str, alpha: Param) -> Result<Word, SteinbergError> {
    match label.parse::<Macro>() {
        Ok(m @ (Macro::X24 | Macro::X13 | Macro::X14)) => Ok(m.expand(alpha, MacroReading::Literal)),
        Ok(_) => Err(SteinbergError::NotDerived(label.to_string())),
        Err(_) if label.parse::<Label>().is_ok() => Err(SteinbergError::NotDerived(label.to_string())),
        Err(e) => Err(e),
    }
}

/// Basis index of `e_i` (negative `i` for `e-|i|`).
pub fn basis_index(i: i8) -> usize {
    if i > 0 {
        (i - 1) as usize
    } else {
        (3 - i) as usize
    }
}

/// `I + alpha (E_{i,k} - E_{-k,-i})`.
pub fn root_matrix<R: Ring>(ring: &R, (i, k): (i8, i8), alpha: &R::Elem) -> Matrix<R> {
    let mut m = Matrix::identity(ring, 8);
    m.set(basis_index(i), basis_index(k), alpha.clone());
    m.set(basis_index(-k), basis_index(-i), ring.neg(alpha));
    m
}

pub fn basic_matrix<R: Ring>(ring: &R, label: Label, alpha: &R::Elem) -> Matrix<R> {
    let ((r1, c1), (r2, c2)) = label.positions();
    let mut m = Matrix::identity(ring, 8);
    m.set(r1, c1, alpha.clone());
    m.set(r2, c2, ring.neg(alpha));
    m
}

/// Left-to-right product of the symbols' matrices.
pub fn eval_word<R: Ring>(ring: &R, w: &Word, a: &R::Elem) -> Matrix<R> {
    let mut acc = Matrix::identity(ring, 8);
    for s in &w.symbols {
        let alpha = s.effective_param().eval(ring, a);
        acc = acc.mul(&basic_matrix(ring, s.label, &alpha));
    }
    acc
}

pub const WORD_Y: &str = "rho12 pi23 rho12 pi34^3";
pub const WORD_X_EVEN: &str = "x23(1) x34(a) pi12 x43(a) x32(1) J";
pub const WORD_X_ODD: &str =
    "xm14(-1) xm24(1) xm34(2) x12(1) x23(-1) x24(-a) x13(1) x14(a) pi23^2 pi13^-1 x12(-1) x23(1) x14(-a)";

pub fn word_y() -> Word {
    Word::parse(WORD_Y, MacroReading::Literal).expect("fixed word")
}

/// The published word for `x` in characteristic `p`.
pub fn word_x(p: u64, reading: MacroReading) -> Word {
    Word::parse(if p == 2 { WORD_X_EVEN } else { WORD_X_ODD }, reading).expect("fixed word")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fe, Field};

    #[test]
    fn params_round_trip() {
        for s in ["0", "1", "-1", "2", "a", "-a", "2*a", "-3*a", "1+a", "1-a", "-2+5*a"] {
            let p: Param = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("b".parse::<Param>().is_err());
        assert!("".parse::<Param>().is_err());
    }

    #[test]
    fn words_round_trip_and_expand() {
        let text = "x12(a) x1m2(-1)^-1 xm21(2*a)";
        let w = Word::parse(text, MacroReading::Literal).unwrap();
        assert_eq!(w.to_string(), text);
        assert_eq!(Word::parse("pi12", MacroReading::Literal).unwrap().to_string(), "x21(-1) x12(1) x21(-1)");
        assert!(matches!(Word::parse("x99(1)", MacroReading::Literal), Err(SteinbergError::UnknownSymbol(_))));
        assert!(Word::parse("x12(1)^2", MacroReading::Literal).is_err());
        assert!(Word::parse("pi12(a)", MacroReading::Literal).is_err());
    }

    #[test]
    fn empty_word_is_identity() {
        let k = Field::new(5, 1).unwrap();
        assert!(eval_word(&k, &Word::empty(), &Fe(2)).is_identity());
    }

    #[test]
    fn commutator_generators_have_closed_form() {
        let k = Field::new(7, 1).unwrap();
        for m in [Macro::X24, Macro::X13, Macro::X14] {
            for a in 0..7 {
                let w = commutator_expand(m.name(), Param::A).unwrap();
                let got = eval_word(&k, &w, &Fe(a));
                assert!(got.equals(&root_matrix(&k, m.root().unwrap(), &Fe(a))), "{}", m.name());
            }
        }
        assert!(matches!(commutator_expand("pi12", Param::ONE), Err(SteinbergError::NotDerived(_))));
        assert!(matches!(commutator_expand("x12", Param::ONE), Err(SteinbergError::NotDerived(_))));
    }

    #[test]
    fn tau_has_order_three() {
        let w = word_x(5, MacroReading::Literal);
        assert_eq!(w.tau().tau().tau(), w);
        assert_ne!(w.tau(), w);
    }
}
