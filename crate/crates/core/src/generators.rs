//! The explicit generator pairs, their quadratic forms and the printed
//! triality images.
//!
//! Every matrix is written once, as rows of entry expressions in `a`, `xi`
//! (see [`crate::expr`]), and evaluated in whatever ring a caller needs. The
//! basis order is `e1, e2, e3, e4, e-1, e-2, e-3, e-4`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::forms::{hyperbolic_gram, FormError, QuadraticForm};
use crate::gf::{find_nonsquare, Fe, Field, GfError};
use crate::linalg::Matrix;
use crate::ring::{Ring, UPolyRing};

pub type Table = [&'static str; 8];

pub const X_PLUS_EVEN: Table = [
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 0, 1, (a+1)^2, (a+1)^2, a",
    "0, 0, 0, 0, 0, (a+1)^2, (a+1)^2, a",
    "0, 0, 0, 0, 0, a, a, 1",
    "0, 1, 1, 0, 0, 0, 0, 0",
    "1, 0, 0, 0, 0, 0, 0, 0",
    "1, 0, 1, a, 0, 0, 0, 0",
    "0, 0, a, (a+1)^2, 0, 0, 0, 0",
];

pub const X_PLUS_ODD: Table = [
    "0, -1, 0, 0, 0, 0, 0, 0",
    "-1, 0, 0, 0, 0, 0, 0, 0",
    "1, -1, -1, -a, 0, 0, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 0, 0, 1, 0, -1, 1, 0",
    "0, 0, 0, -1, -1, 0, -1, 0",
    "0, 0, 0, -2, 0, 0, -1, 0",
    "1, -1, -2, -2*a, 0, 0, -a, 1",
];

pub const Y_PLUS: Table = [
    "1, 0, 0, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, 0, 1",
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 1, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 1, 0, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, 1, 0",
];

pub const TAU_Y: Table = [
    "0, 0, 0, -1, 0, 0, 0, 0",
    "0, 0, 0, 0, 1, 0, 0, 0",
    "0, 0, -1, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 0, 0, 0, 0, -1",
    "1, 0, 0, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, -1, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
];

pub const TAU2_Y: Table = [
    "0, 0, 0, 0, 0, 0, 0, 1",
    "-1, 0, 0, 0, 0, 0, 0, 0",
    "0, 0, -1, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 0, 0, 0, -1, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, -1, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
];

pub const TAU_X_EVEN: Table = [
    "0, a, a, 0, 1, 0, 0, 0",
    "a, 0, 0, 0, 0, 1, 0, 1",
    "0, 0, 0, 0, 0, 0, 0, 1",
    "0, 0, 0, 0, 0, 1, 1, 0",
    "a^2+1, 0, 0, 0, 0, a, 0, 0",
    "0, a^2+1, a^2+1, 0, a, 0, 0, 0",
    "0, a^2+1, a^2+1, 1, a, 0, 0, 0",
    "0, 0, 1, 0, 0, 0, 0, 0",
];

pub const TAU2_X_EVEN: Table = [
    "a, a^2+1, a^2+1, 0, 0, 0, 0, 0",
    "1, a, a, 0, 0, 1, 1, 0",
    "0, 0, 0, 0, 0, 1, 1, 0",
    "0, 0, 0, 0, 0, 0, 0, 1",
    "0, 0, 0, 0, a, 1, 0, 0",
    "0, 0, 0, 0, a^2+1, a, 0, 0",
    "0, 0, 1, 0, a^2+1, a, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
];

pub const TAU_X_ODD: Table = [
    "1, 0, 0, 0, 0, 0, 0, 0",
    "0, -1, 0, 0, 0, 0, 0, 0",
    "0, 1, 0, 1, 0, 0, 0, 0",
    "0, 1, 1, 0, 0, 0, 0, 0",
    "0, -a, 0, 0, 1, 0, 0, 0",
    "-a, 0, -1, 1, 0, -1, 1, 1",
    "0, -1, -2, 0, 0, 0, 0, 1",
    "0, 1, 0, 2, 0, 0, 1, 0",
];

pub const TAU2_X_ODD: Table = [
    "0, 0, 0, -1, -a, 1, -1, 0",
    "0, 0, 0, 0, 1, 0, 0, 0",
    "0, -1, -1, 0, -1, 0, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
    "1, a, 0, -1, 0, 0, -1, 0",
    "0, 0, 0, -2, 0, 0, -1, 0",
    "0, -1, -2, 0, -1, 0, 0, 1",
];

pub const X_MINUS_2: Table = [
    "0, 1, 0, 0, 1, 0, 0, 0",
    "1, 1, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 0, 1, 0, 0, 0, 0, 0",
    "0, 1, 0, 0, 0, 1, 0, 0",
    "1, 1, 0, 0, 1, 1, 0, 0",
    "0, 0, 0, 0, 0, 0, 0, 1",
    "0, 0, 0, 0, 0, 0, 1, 0",
];

/// Shared by the `q = 2` pair and the even-`q` minus family.
pub const Y_MINUS_EVEN: Table = [
    "0, 0, 0, 0, 1, 0, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
    "0, 0, 1, 0, 0, 0, 0, 0",
    "1, 0, 0, 0, 1, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, 0, 1",
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 0, 0, 0, 1, 0",
];

pub const X_MINUS_EVEN: Table = [
    "0, a^-1, 0, 0, 0, 0, 0, 0",
    "a, 0, 0, 0, 0, 0, 0, 0",
    "0, 0, a^2/(a+1)^2, 1/(a+1)^2, 0, 0, 0, 0",
    "0, 0, 1/(a+1)^2, a^2/(a+1)^2, 0, 0, 0, 0",
    "(a+1)^2, a^-1, 0, 0, 0, a, 0, 0",
    "a^-1, (a+1)^2/a^2, 0, 0, a^-1, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, a^2/(a+1)^2, 1/(a+1)^2",
    "0, 0, 0, 0, 0, 0, 1/(a+1)^2, a^2/(a+1)^2",
];

pub const X_MINUS_ODD: Table = [
    "0, 0, 0, 0, 2, 0, 0, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
    "0, 0, -1, 0, 0, 0, -a^2*xi/2, -a*xi",
    "0, 1, 0, -1, 0, 0, 0, 0",
    "1/2, 0, 0, 0, 0, 0, 0, 0",
    "0, -1/2, 0, 1, 0, 1, 0, 0",
    "0, 0, 0, 0, 0, 0, -1, 0",
    "0, 0, 0, 0, 0, 0, a, 1",
];

pub const Y_MINUS_ODD: Table = [
    "0, 0, 1, 0, 0, 0, 0, 0",
    "1, 0, 0, 0, 0, 0, 0, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, 1, 0",
    "0, 0, 0, 0, 1, 0, 0, 0",
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 0, 0, 0, 0, 1",
];

/// Gram matrix of the odd-characteristic minus form; determinant `xi`.
pub const J_MINUS_ODD: Table = [
    "0, 0, 0, 0, 1, 0, 0, 0",
    "0, 0, 0, 0, 0, 1, 0, 0",
    "0, 0, 0, 0, 0, 0, 1, 0",
    "0, 0, 0, 1, 0, 0, 0, 0",
    "1, 0, 0, 0, 0, 0, 0, 0",
    "0, 1, 0, 0, 0, 0, 0, 0",
    "0, 0, 1, 0, 0, 0, 0, 0",
    "0, 0, 0, 0, 0, 0, 0, -xi",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    #[serde(rename = "plus-even")]
    PlusEven,
    #[serde(rename = "plus-odd")]
    PlusOdd,
    #[serde(rename = "minus-2")]
    Minus2,
    #[serde(rename = "minus-even")]
    MinusEven,
    #[serde(rename = "minus-odd")]
    MinusOdd,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::PlusEven, Family::PlusOdd, Family::Minus2, Family::MinusEven, Family::MinusOdd];

    pub fn name(self) -> &'static str {
        match self {
            Family::PlusEven => "plus-even",
            Family::PlusOdd => "plus-odd",
            Family::Minus2 => "minus-2",
            Family::MinusEven => "minus-even",
            Family::MinusOdd => "minus-odd",
        }
    }

    pub fn is_plus(self) -> bool {
        matches!(self, Family::PlusEven | Family::PlusOdd)
    }

    /// Whether this family applies to fields of order `q` (ignoring `a`).
    pub fn applies_to(self, q: u64) -> bool {
        let even = q % 2 == 0;
        match self {
            Family::PlusEven => even && q >= 4,
            Family::PlusOdd => !even && q >= 5,
            Family::Minus2 => q == 2,
            Family::MinusEven => even && q >= 4,
            Family::MinusOdd => !even,
        }
    }

    /// Resolves a family name; `plus` and `minus` pick the branch from `q`.
    pub fn resolve(name: &str, q: u64) -> Result<Family, GenError> {
        match name {
            "plus" => Ok(if q % 2 == 0 { Family::PlusEven } else { Family::PlusOdd }),
            "minus" => Ok(match q {
                2 => Family::Minus2,
                _ if q % 2 == 0 => Family::MinusEven,
                _ => Family::MinusOdd,
            }),
            other => other.parse(),
        }
    }

    pub fn x_table(self) -> &'static Table {
        match self {
            Family::PlusEven => &X_PLUS_EVEN,
            Family::PlusOdd => &X_PLUS_ODD,
            Family::Minus2 => &X_MINUS_2,
            Family::MinusEven => &X_MINUS_EVEN,
            Family::MinusOdd => &X_MINUS_ODD,
        }
    }

    pub fn y_table(self) -> &'static Table {
        match self {
            Family::PlusEven | Family::PlusOdd => &Y_PLUS,
            Family::Minus2 | Family::MinusEven => &Y_MINUS_EVEN,
            Family::MinusOdd => &Y_MINUS_ODD,
        }
    }

    /// Whether the family takes the parameter `a` (the `q = 2` pair does not).
    pub fn uses_a(self) -> bool {
        self != Family::Minus2
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

/// Printed triality images `tau(x), tau^2(x), tau(y), tau^2(y)` for the branch
/// of characteristic `p`.
pub fn triality_tables(p: u64) -> [&'static Table; 4] {
    if p == 2 {
        [&TAU_X_EVEN, &TAU2_X_EVEN, &TAU_Y, &TAU2_Y]
    } else {
        [&TAU_X_ODD, &TAU2_X_ODD, &TAU_Y, &TAU2_Y]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("transcription gate failed: {0}")]
    Gate(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Canonical parameters of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct PairParams {
    pub q: u64,
    pub a: Option<u64>,
    pub xi: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct GeneratorPair {
    pub family: Family,
    pub params: PairParams,
    pub field: Field,
    pub a: Fe,
    pub xi: Option<Fe>,
    pub x: Matrix<Field>,
    pub y: Matrix<Field>,
    pub form: QuadraticForm,
}

#[derive(Clone, Debug)]
pub struct TrialityImages {
    pub tau_x: Matrix<Field>,
    pub tau2_x: Matrix<Field>,
    pub tau_y: Matrix<Field>,
    pub tau2_y: Matrix<Field>,
}

/// GF(q) for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Field, GenError> {
    let (p, f) = crate::arith::prime_power(q).ok_or(GenError::NotPrimePower(q))?;
    Ok(Field::new(p, f)?)
}

/// Evaluates a table with `a` and `xi` bound.
pub fn eval_table<R: Ring>(ring: &R, table: &Table, a: &R::Elem, xi: Option<&R::Elem>) -> Result<Matrix<R>, ExprError> {
    let env = |s: &str| match s {
        "a" => Some(a.clone()),
        "xi" => xi.cloned(),
        _ => None,
    };
    expr::eval_matrix(ring, table, &env)
}

/// `t^2 + t + (a+1)^4` irreducible over GF(q).
pub fn minus_even_poly_irreducible(field: &Field, a: Fe) -> bool {
    let r = UPolyRing::new(field.clone());
    let c = field.pow(&field.add(&a, &Fe(1)), 4);
    r.is_irreducible(&[c, Fe(1), Fe(1)])
}

/// Checks the family's parameter hypotheses; the error names the one that fails.
pub fn validate(family: Family, field: &Field, a: Fe, xi: Option<Fe>) -> Result<(), GenError> {
    let q = field.q();
    let bad = |m: String| Err(GenError::Invalid(m));
    let p = field.p();
    match family {
        Family::PlusEven | Family::PlusOdd => {
            if q == 2 || q == 3 {
                return bad(format!("the plus family needs q >= 4 (q = {q})"));
            }
            if (family == Family::PlusEven) != (p == 2) {
                return bad(format!("{family} does not apply to characteristic {p}"));
            }
            if a.0 == 0 {
                return bad("a must be nonzero".into());
            }
            if !field.is_field_generator(a) {
                return bad(format!("F_p[a] != F_q for a = {a}"));
            }
            if p != 2 && (a == field.from_int(2) || a == field.from_int(-2)) {
                return bad("a must differ from 2 and -2".into());
            }
        }
        Family::Minus2 => {
            if q != 2 {
                return bad(format!("minus-2 is the q = 2 pair (q = {q})"));
            }
        }
        Family::MinusEven => {
            if p != 2 || q < 4 {
                return bad(format!("minus-even needs even q >= 4 (q = {q})"));
            }
            if !field.is_field_generator(a) {
                return bad(format!("F_2[a] != F_q for a = {a}"));
            }
            if !minus_even_poly_irreducible(field, a) {
                return bad(format!("t^2 + t + (a+1)^4 is reducible over GF({q}) for a = {a}"));
            }
        }
        Family::MinusOdd => {
            if p == 2 {
                return bad("minus-odd needs odd q".into());
            }
            let xi = xi.ok_or_else(|| GenError::Invalid("xi is required".into()))?;
            if field.is_square(xi) {
                return bad(format!("xi = {xi} is a square"));
            }
            if a.0 == 0 {
                return bad("a must be nonzero".into());
            }
            let t = field.mul(&field.mul(&a, &a), &xi);
            if !field.is_field_generator(t) {
                return bad(format!("F_p[a^2 xi] != F_q for a = {a}, xi = {xi}"));
            }
        }
    }
    Ok(())
}

/// The quadratic form preserved by the family's pair.
pub fn family_form(family: Family, field: &Field, a: Fe, xi: Option<Fe>) -> Result<QuadraticForm, GenError> {
    let f = field;
    Ok(match family {
        Family::PlusEven | Family::PlusOdd => QuadraticForm::new(hyperbolic_gram(f, 4), vec![Fe(0); 8])?,
        Family::Minus2 => {
            let mut d = vec![Fe(0); 8];
            d[0] = Fe(1);
            d[4] = Fe(1);
            QuadraticForm::new(hyperbolic_gram(f, 4), d)?
        }
        Family::MinusEven => {
            let a2 = f.mul(&a, &a);
            let d = (0..8).map(|i| if i % 4 == 0 { Fe(1) } else { a2 }).collect();
            QuadraticForm::new(hyperbolic_gram(f, 4), d)?
        }
        Family::MinusOdd => {
            let xi = xi.ok_or_else(|| GenError::Invalid("xi is required".into()))?;
            QuadraticForm::from_gram(eval_table(f, &J_MINUS_ODD, &a, Some(&xi))?)?
        }
    })
}

/// Builds and gates a pair. `a` and `xi` are canonical integer encodings;
/// `xi` defaults to the smallest nonsquare for the odd minus family.
pub fn build_pair(family: Family, q: u64, a: Option<u64>, xi: Option<u64>) -> Result<GeneratorPair, GenError> {
    let field = field_of_order(q)?;
    if !family.applies_to(q) && !(family.is_plus() && (q == 2 || q == 3)) {
        return Err(GenError::Invalid(format!("{family} does not apply to q = {q}")));
    }
    let a = match (family.uses_a(), a) {
        (false, _) => None,
        (true, Some(v)) if v < q => Some(v),
        (true, Some(v)) => return Err(GenError::Invalid(format!("a = {v} is not an element of GF({q})"))),
        (true, None) => return Err(GenError::Invalid("a is required".into())),
    };
    let xi = match family {
        Family::MinusOdd => Some(match xi {
            Some(v) if v < q => v,
            Some(v) => return Err(GenError::Invalid(format!("xi = {v} is not an element of GF({q})"))),
            None => find_nonsquare(&field)?.value.0,
        }),
        _ => None,
    };
    let a_fe = Fe(a.unwrap_or(1));
    let xi_fe = xi.map(Fe);
    validate(family, &field, a_fe, xi_fe)?;
    let x = eval_table(&field, family.x_table(), &a_fe, xi_fe.as_ref())?;
    let y = eval_table(&field, family.y_table(), &a_fe, xi_fe.as_ref())?;
    let form = family_form(family, &field, a_fe, xi_fe)?;
    let pair = GeneratorPair { family, params: PairParams { q, a, xi }, field, a: a_fe, xi: xi_fe, x, y, form };
    pair.gate()?;
    Ok(pair)
}

impl GeneratorPair {
    /// Orders 2 and 3, determinant 1, form preservation and Omega membership.
    pub fn gate(&self) -> Result<(), GenError> {
        let fail = |m: &str| Err(GenError::Gate(format!("{} {:?}: {m}", self.family, self.params)));
        if !self.x.mul(&self.x).is_identity() || self.x.is_identity() {
            return fail("x is not an involution");
        }
        if !self.y.pow(3).is_identity() || self.y.is_identity() {
            return fail("y does not have order 3");
        }
        let det_x = self.x.det_gauss().map_err(FormError::from)?;
        let det_y = self.y.det_gauss().map_err(FormError::from)?;
        if det_x.0 != 1 || det_y.0 != 1 {
            return fail("determinant is not 1");
        }
        if !self.form.preserves(&self.x)? || !self.form.preserves(&self.y)? {
            return fail("the form is not preserved");
        }
        if !self.form.in_omega(&self.x)? || !self.form.in_omega(&self.y)? {
            return fail("a generator lies outside Omega");
        }
        Ok(())
    }

    pub fn xy(&self) -> Matrix<Field> {
        self.x.mul(&self.y)
    }
}

/// The printed `tau(x), tau^2(x), tau(y), tau^2(y)` for a plus-family pair.
pub fn printed_triality_images(q: u64, a: u64) -> Result<TrialityImages, GenError> {
    let field = field_of_order(q)?;
    let family = if field.p() == 2 { Family::PlusEven } else { Family::PlusOdd };
    if a >= q {
        return Err(GenError::Invalid(format!("a = {a} is not an element of GF({q})")));
    }
    validate(family, &field, Fe(a), None)?;
    let [tx, t2x, ty, t2y] = triality_tables(field.p());
    let ev = |t: &Table| eval_table(&field, t, &Fe(a), None);
    Ok(TrialityImages { tau_x: ev(tx)?, tau2_x: ev(t2x)?, tau_y: ev(ty)?, tau2_y: ev(t2y)? })
}

/// Valid `a` values (canonical encodings) for a family over GF(q).
pub fn valid_a_values(family: Family, q: u64, xi: Option<u64>) -> Result<Vec<u64>, GenError> {
    let field = field_of_order(q)?;
    if !family.uses_a() {
        return Ok(if family.applies_to(q) { vec![1] } else { Vec::new() });
    }
    let xi = match family {
        Family::MinusOdd => Some(Fe(match xi {
            Some(v) => v,
            None => find_nonsquare(&field)?.value.0,
        })),
        _ => None,
    };
    Ok(field.elements().filter(|&a| validate(family, &field, a, xi).is_ok()).map(|a| a.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pairs_pass_the_gate() {
        build_pair(Family::Minus2, 2, None, None).unwrap();
        build_pair(Family::PlusEven, 4, Some(2), None).unwrap();
        build_pair(Family::PlusOdd, 5, Some(1), None).unwrap();
        build_pair(Family::MinusOdd, 5, Some(1), Some(2)).unwrap();
        build_pair(Family::MinusOdd, 3, Some(1), None).unwrap();
        let a = valid_a_values(Family::MinusEven, 4, None).unwrap();
        assert!(!a.is_empty());
        build_pair(Family::MinusEven, 4, Some(a[0]), None).unwrap();
    }

    #[test]
    fn rejections_name_the_hypothesis() {
        let e = build_pair(Family::PlusOdd, 3, Some(1), None).unwrap_err();
        assert!(e.to_string().contains("q >= 4"), "{e}");
        let e = build_pair(Family::PlusEven, 2, Some(1), None).unwrap_err();
        assert!(e.to_string().contains("q >= 4"), "{e}");
        let e = build_pair(Family::PlusOdd, 7, Some(2), None).unwrap_err();
        assert!(e.to_string().contains("2 and -2"), "{e}");
        let e = build_pair(Family::PlusEven, 4, Some(1), None).unwrap_err();
        assert!(e.to_string().contains("F_p[a]"), "{e}");
        let e = build_pair(Family::MinusOdd, 5, Some(1), Some(4)).unwrap_err();
        assert!(e.to_string().contains("square"), "{e}");
        assert!(matches!(Family::resolve("nope", 4), Err(GenError::UnknownFamily(_))));
    }

    #[test]
    fn form_signs() {
        let p = build_pair(Family::PlusEven, 8, Some(2), None).unwrap();
        assert_eq!(p.form.sign().unwrap(), crate::forms::Sign::Plus);
        let m = build_pair(Family::MinusOdd, 7, Some(1), None).unwrap();
        assert_eq!(m.form.sign().unwrap(), crate::forms::Sign::Minus);
        let m2 = build_pair(Family::Minus2, 2, None, None).unwrap();
        assert_eq!(m2.form.sign().unwrap(), crate::forms::Sign::Minus);
        assert_eq!(m2.form.sign_by_witt().unwrap(), crate::forms::Sign::Minus);
    }
}
