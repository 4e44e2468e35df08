//! Commutative-ring contexts.
//!
//! Elements do not carry their ring; a context value (`Field`, `SymRing`,
//! `UPolyRing<R>`, ...) performs the arithmetic. This keeps field elements
//! `Copy` and lets matrices, Berkowitz and the expression evaluator run
//! unchanged over finite fields and over polynomial rings.

use std::fmt::Debug;

pub trait Ring: Clone {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map from Z.
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse when it exists in this ring.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Human-readable rendering used in reports.
    fn render(&self, a: &Self::Elem) -> String;

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Univariate polynomials `R[t]`, coefficients stored low degree first with
/// no trailing zeros (the zero polynomial is the empty vector).
#[derive(Clone, Debug)]
pub struct UPolyRing<R: Ring> {
    pub base: R,
}

impl<R: Ring> UPolyRing<R> {
    pub fn new(base: R) -> Self {
        UPolyRing { base }
    }

    pub fn trim(&self, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
        while v.last().is_some_and(|c| self.base.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.trim(vec![c])
    }

    pub fn var(&self) -> Vec<R::Elem> {
        self.trim(vec![self.base.zero(), self.base.one()])
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self, f: &[R::Elem]) -> Option<usize> {
        let n = self.trim(f.to_vec()).len();
        n.checked_sub(1)
    }

    pub fn coeff(&self, f: &[R::Elem], k: usize) -> R::Elem {
        f.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn eval(&self, f: &[R::Elem], at: &R::Elem) -> R::Elem {
        f.iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, at), c))
    }
}

impl<R: Ring> Ring for UPolyRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let v = (0..n).map(|k| self.base.add(&self.coeff(a, k), &self.coeff(b, k))).collect();
        self.trim(v)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let v = (0..n).map(|k| self.base.sub(&self.coeff(a, k), &self.coeff(b, k))).collect();
        self.trim(v)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base.neg(c)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.trim(v)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        match self.trim(a.clone()).as_slice() {
            [c] => self.base.inv(c).map(|i| vec![i]),
            _ => None,
        }
    }

    fn render(&self, a: &Self::Elem) -> String {
        let a = self.trim(a.clone());
        if a.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in a.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let cs = self.base.render(c);
            let cs = if cs.contains([' ', '+']) { format!("({cs})") } else { cs };
            terms.push(match k {
                0 => cs,
                1 if self.base.is_one(c) => "t".to_string(),
                1 => format!("{cs}*t"),
                _ if self.base.is_one(c) => format!("t^{k}"),
                _ => format!("{cs}*t^{k}"),
            });
        }
        terms.join(" + ")
    }
}
