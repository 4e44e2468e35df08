//! Symbolic scalars: polynomials in `a, xi, l, b` over GF(p)(omega), localized
//! at the denominators that occur in the generator matrices and the lemmas:
//! `a`, `a + 1`, `l` and `xi`. Elements are kept as `num / prod d_i^k_i` with
//! no `d_i` dividing `num`, which makes the representation canonical.

use crate::gf::{Fe, Field};
use crate::ring::Ring;

use super::mpoly::{MPoly, MPolyRing, NVARS, VAR_A, VAR_L, VAR_XI};

pub const NDENS: usize = 4;
const DEN_NAMES: [&str; NDENS] = ["a", "(a+1)", "l", "xi"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym {
    pub num: MPoly,
    pub den: [u16; NDENS],
}

#[derive(Clone, Debug)]
pub struct SymRing {
    pub poly: MPolyRing,
    /// A primitive cube root of unity in the coefficient field, when present.
    pub omega: Option<Fe>,
    dens: [MPoly; NDENS],
}

impl SymRing {
    pub fn new(coef: Field, omega: Option<Fe>) -> Self {
        let poly = MPolyRing::new(coef);
        let a = poly.var(VAR_A);
        let dens = [a.clone(), poly.add(&a, &poly.one()), poly.var(VAR_L), poly.var(VAR_XI)];
        SymRing { poly, omega, dens }
    }

    pub fn coef(&self) -> &Field {
        &self.poly.coef
    }

    pub fn var(&self, v: usize) -> Sym {
        self.from_poly(self.poly.var(v))
    }

    pub fn constant(&self, c: Fe) -> Sym {
        self.from_poly(self.poly.constant(c))
    }

    pub fn from_poly(&self, num: MPoly) -> Sym {
        Sym { num, den: [0; NDENS] }
    }

    fn den_poly(&self, den: &[u16; NDENS]) -> MPoly {
        (0..NDENS).fold(self.poly.one(), |acc, i| self.poly.mul(&acc, &self.poly.pow(&self.dens[i], den[i] as u64)))
    }

    fn normalize(&self, mut s: Sym) -> Sym {
        if s.num.is_zero() {
            return Sym { num: s.num, den: [0; NDENS] };
        }
        for i in 0..NDENS {
            while s.den[i] > 0 {
                match self.poly.div_exact(&s.num, &self.dens[i]) {
                    Some(q) => {
                        s.num = q;
                        s.den[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        s
    }

    /// Numerator over the common denominator, when the value is a polynomial.
    pub fn as_poly(&self, s: &Sym) -> Option<MPoly> {
        (s.den == [0; NDENS]).then(|| s.num.clone())
    }

    /// Multiplies by the smallest monomial in the allowed denominators that
    /// clears them, returning the resulting polynomial and that monomial.
    pub fn clear_denominators(&self, s: &Sym) -> (MPoly, [u16; NDENS]) {
        (s.num.clone(), s.den)
    }

    /// Value at a point of the coefficient field; `None` if a denominator vanishes.
    pub fn eval(&self, s: &Sym, at: &[Fe; NVARS]) -> Option<Fe> {
        let k = &self.poly.coef;
        let d = self.poly.eval(&self.den_poly(&s.den), at);
        let n = self.poly.eval(&s.num, at);
        k.inv(&d).map(|di| k.mul(&n, &di))
    }

    /// Univariate coefficients of a polynomial value in `var`.
    pub fn to_univariate(&self, s: &Sym, var: usize) -> Option<Vec<Fe>> {
        self.poly.to_univariate(&self.as_poly(s)?, var)
    }

    pub fn substitute(&self, s: &Sym, var: usize, value: &Sym) -> Option<Sym> {
        // Only polynomial substitutions into the numerator of a polynomial.
        let p = self.as_poly(s)?;
        let mut acc = self.zero();
        for (e, &c) in p.terms() {
            let mut rest = *e;
            rest[var] = 0;
            let term = self.mul(&self.from_poly(self.poly.monomial(rest, c)), &self.pow(value, e[var] as u64));
            acc = self.add(&acc, &term);
        }
        Some(acc)
    }
}

impl Ring for SymRing {
    type Elem = Sym;

    fn zero(&self) -> Sym {
        self.from_poly(self.poly.zero())
    }

    fn one(&self) -> Sym {
        self.from_poly(self.poly.one())
    }

    fn from_int(&self, n: i64) -> Sym {
        self.from_poly(self.poly.from_int(n))
    }

    fn add(&self, a: &Sym, b: &Sym) -> Sym {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        let mut den = [0; NDENS];
        let mut ea = [0; NDENS];
        let mut eb = [0; NDENS];
        for i in 0..NDENS {
            den[i] = a.den[i].max(b.den[i]);
            ea[i] = den[i] - a.den[i];
            eb[i] = den[i] - b.den[i];
        }
        let na = self.poly.mul(&a.num, &self.den_poly(&ea));
        let nb = self.poly.mul(&b.num, &self.den_poly(&eb));
        self.normalize(Sym { num: self.poly.add(&na, &nb), den })
    }

    fn sub(&self, a: &Sym, b: &Sym) -> Sym {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Sym) -> Sym {
        Sym { num: self.poly.neg(&a.num), den: a.den }
    }

    fn mul(&self, a: &Sym, b: &Sym) -> Sym {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let mut den = [0; NDENS];
        for i in 0..NDENS {
            den[i] = a.den[i] + b.den[i];
        }
        let s = Sym { num: self.poly.mul(&a.num, &b.num), den };
        if den == [0; NDENS] {
            s
        } else {
            self.normalize(s)
        }
    }

    fn is_zero(&self, a: &Sym) -> bool {
        a.num.is_zero()
    }

    fn equal(&self, a: &Sym, b: &Sym) -> bool {
        a == b
    }

    /// Invertible elements are the nonzero constants times products of the
    /// allowed denominators.
    fn inv(&self, a: &Sym) -> Option<Sym> {
        let mut rest = a.num.clone();
        let mut k = [0u16; NDENS];
        for i in 0..NDENS {
            while let Some(q) = self.poly.div_exact(&rest, &self.dens[i]) {
                rest = q;
                k[i] += 1;
            }
        }
        let c = rest.as_constant()?;
        let ci = self.poly.coef.inv(&c)?;
        let num = self.poly.mul(&self.poly.constant(ci), &self.den_poly(&a.den));
        Some(self.normalize(Sym { num, den: k }))
    }

    fn render(&self, a: &Sym) -> String {
        let num = self.poly.render(&a.num);
        if a.den == [0; NDENS] {
            return num;
        }
        let den: Vec<String> = (0..NDENS)
            .filter(|&i| a.den[i] > 0)
            .map(|i| if a.den[i] == 1 { DEN_NAMES[i].to_string() } else { format!("{}^{}", DEN_NAMES[i], a.den[i]) })
            .collect();
        format!("({num})/({})", den.join("*"))
    }
}
