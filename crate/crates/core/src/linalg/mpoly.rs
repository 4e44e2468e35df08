//! Sparse multivariate polynomials over a finite field in the fixed variables
//! `a`, `xi`, `l` (lambda) and `b`, lexicographic order with `a` first.

use std::collections::BTreeMap;

use crate::gf::{Fe, Field};
use crate::ring::Ring;

pub const NVARS: usize = 4;
pub const VAR_A: usize = 0;
pub const VAR_XI: usize = 1;
pub const VAR_L: usize = 2;
pub const VAR_B: usize = 3;
pub const VAR_NAMES: [&str; NVARS] = ["a", "xi", "l", "b"];

pub type Exps = [u16; NVARS];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exps, Fe>,
}

impl MPoly {
    pub fn terms(&self) -> &BTreeMap<Exps, Fe> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in lex order.
    pub fn lead(&self) -> Option<(&Exps, &Fe)> {
        self.terms.iter().next_back()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Fe> {
        match self.terms.len() {
            0 => Some(Fe(0)),
            1 => self.terms.get(&[0; NVARS]).copied(),
            _ => None,
        }
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..NVARS).filter(|&v| self.degree_in(v) > 0).collect()
    }
}

/// Ring context for [`MPoly`].
#[derive(Clone, Debug)]
pub struct MPolyRing {
    pub coef: Field,
}

impl MPolyRing {
    pub fn new(coef: Field) -> Self {
        MPolyRing { coef }
    }

    pub fn constant(&self, c: Fe) -> MPoly {
        let mut terms = BTreeMap::new();
        if c.0 != 0 {
            terms.insert([0; NVARS], c);
        }
        MPoly { terms }
    }

    pub fn var(&self, v: usize) -> MPoly {
        let mut e = [0; NVARS];
        e[v] = 1;
        self.monomial(e, Fe(1))
    }

    pub fn monomial(&self, e: Exps, c: Fe) -> MPoly {
        let mut terms = BTreeMap::new();
        if c.0 != 0 {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// Univariate polynomial in `var` from field coefficients, low degree first.
    pub fn from_univariate(&self, var: usize, coeffs: &[Fe]) -> MPoly {
        let mut terms = BTreeMap::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c.0 != 0 {
                let mut e = [0; NVARS];
                e[var] = k as u16;
                terms.insert(e, c);
            }
        }
        MPoly { terms }
    }

    /// Coefficients in `var` when no other variable occurs.
    pub fn to_univariate(&self, f: &MPoly, var: usize) -> Option<Vec<Fe>> {
        let mut out = vec![Fe(0); f.degree_in(var) + 1];
        for (e, &c) in &f.terms {
            if (0..NVARS).any(|v| v != var && e[v] != 0) {
                return None;
            }
            out[e[var] as usize] = c;
        }
        while out.last() == Some(&Fe(0)) {
            out.pop();
        }
        Some(out)
    }

    fn add_term(&self, terms: &mut BTreeMap<Exps, Fe>, e: Exps, c: Fe) {
        if c.0 == 0 {
            return;
        }
        let slot = terms.entry(e).or_insert(Fe(0));
        *slot = self.coef.add(slot, &c);
        if slot.0 == 0 {
            terms.remove(&e);
        }
    }

    /// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
    pub fn div_exact(&self, f: &MPoly, g: &MPoly) -> Option<MPoly> {
        let (ge, gc) = g.lead().map(|(e, c)| (*e, *c))?;
        let gc_inv = self.coef.inv(&gc)?;
        let mut r = f.clone();
        let mut q = BTreeMap::new();
        while let Some((re, rc)) = r.lead().map(|(e, c)| (*e, *c)) {
            if (0..NVARS).any(|v| re[v] < ge[v]) {
                return None;
            }
            let mut e = [0; NVARS];
            for v in 0..NVARS {
                e[v] = re[v] - ge[v];
            }
            let c = self.coef.mul(&rc, &gc_inv);
            self.add_term(&mut q, e, c);
            r = self.sub(&r, &self.mul(&self.monomial(e, c), g));
        }
        Some(MPoly { terms: q })
    }

    /// Evaluates at a point with coordinates in the coefficient field.
    pub fn eval(&self, f: &MPoly, at: &[Fe; NVARS]) -> Fe {
        let k = &self.coef;
        f.terms.iter().fold(Fe(0), |acc, (e, c)| {
            let m = (0..NVARS).fold(*c, |m, v| k.mul(&m, &k.pow(&at[v], e[v] as u64)));
            k.add(&acc, &m)
        })
    }

    /// Substitutes `var := value` where `value` is itself a polynomial.
    pub fn substitute(&self, f: &MPoly, var: usize, value: &MPoly) -> MPoly {
        let mut out = self.zero();
        for (e, &c) in &f.terms {
            let mut rest = *e;
            rest[var] = 0;
            let term = self.mul(&self.monomial(rest, c), &self.pow(value, e[var] as u64));
            out = self.add(&out, &term);
        }
        out
    }
}

impl Ring for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::default()
    }

    fn one(&self) -> MPoly {
        self.constant(Fe(1))
    }

    fn from_int(&self, n: i64) -> MPoly {
        self.constant(self.coef.from_int(n))
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut terms = a.terms.clone();
        for (&e, &c) in &b.terms {
            self.add_term(&mut terms, e, c);
        }
        MPoly { terms }
    }

    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut terms = a.terms.clone();
        for (&e, c) in &b.terms {
            self.add_term(&mut terms, e, self.coef.neg(c));
        }
        MPoly { terms }
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        MPoly { terms: a.terms.iter().map(|(e, c)| (*e, self.coef.neg(c))).collect() }
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut e = [0; NVARS];
                for v in 0..NVARS {
                    e[v] = ea[v] + eb[v];
                }
                self.add_term(&mut terms, e, self.coef.mul(ca, cb));
            }
        }
        MPoly { terms }
    }

    fn is_zero(&self, a: &MPoly) -> bool {
        a.terms.is_empty()
    }

    fn equal(&self, a: &MPoly, b: &MPoly) -> bool {
        a == b
    }

    fn inv(&self, a: &MPoly) -> Option<MPoly> {
        let c = a.as_constant()?;
        self.coef.inv(&c).map(|i| self.constant(i))
    }

    fn render(&self, a: &MPoly) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = a
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut parts = Vec::new();
                let vars: Vec<String> = (0..NVARS)
                    .filter(|&v| e[v] > 0)
                    .map(|v| if e[v] == 1 { VAR_NAMES[v].to_string() } else { format!("{}^{}", VAR_NAMES[v], e[v]) })
                    .collect();
                if c.0 != 1 || vars.is_empty() {
                    parts.push(c.0.to_string());
                }
                parts.extend(vars);
                parts.join("*")
            })
            .collect();
        terms.join(" + ")
    }
}
