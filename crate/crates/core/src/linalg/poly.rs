//! Univariate polynomials over a finite field: division, gcd, roots and
//! irreducibility. Polynomials are `Vec<Fe>`, low degree first, handled
//! through the [`UPolyRing<Field>`] context.

use crate::gf::{Fe, Field};
use crate::ring::{Ring, UPolyRing};

pub type Poly = Vec<Fe>;

impl UPolyRing<Field> {
    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        self.trim(coeffs.iter().map(|&c| self.base.from_int(c)).collect())
    }

    pub fn lead(&self, f: &[Fe]) -> Option<Fe> {
        self.trim(f.to_vec()).last().copied()
    }

    pub fn monic(&self, f: &[Fe]) -> Poly {
        let f = self.trim(f.to_vec());
        match f.last() {
            None => f,
            Some(l) => {
                let inv = self.base.inv(l).expect("nonzero leading coefficient");
                f.iter().map(|c| self.base.mul(c, &inv)).collect()
            }
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &[Fe], g: &[Fe]) -> (Poly, Poly) {
        let g = self.trim(g.to_vec());
        let dg = g.len().checked_sub(1).expect("division by the zero polynomial");
        let mut r = self.trim(f.to_vec());
        if r.len() <= dg {
            return (Vec::new(), r);
        }
        let lead_inv = self.base.inv(&g[dg]).expect("nonzero leading coefficient");
        let mut q = vec![Fe(0); r.len() - dg];
        while r.len() > dg {
            let k = r.len() - 1 - dg;
            let c = self.base.mul(&r[r.len() - 1], &lead_inv);
            q[k] = c;
            for (i, gi) in g.iter().enumerate() {
                r[k + i] = self.base.sub(&r[k + i], &self.base.mul(&c, gi));
            }
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn rem(&self, f: &[Fe], g: &[Fe]) -> Poly {
        self.divrem(f, g).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &[Fe], g: &[Fe]) -> Poly {
        let (mut a, mut b) = (self.trim(f.to_vec()), self.trim(g.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, f: &[Fe]) -> Poly {
        let v = f.iter().enumerate().skip(1).map(|(k, c)| self.base.mul(&self.base.from_int(k as i64), c)).collect();
        self.trim(v)
    }

    pub fn mulmod(&self, a: &[Fe], b: &[Fe], m: &[Fe]) -> Poly {
        self.rem(&self.mul(&a.to_vec(), &b.to_vec()), m)
    }

    pub fn powmod(&self, a: &[Fe], mut e: u64, m: &[Fe]) -> Poly {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// Distinct roots in the base field, in canonical order.
    pub fn roots(&self, f: &[Fe]) -> Vec<Fe> {
        self.base.elements().filter(|x| self.eval(f, x).0 == 0).collect()
    }

    /// Irreducibility over the base field. Degrees up to 3 are decided by root
    /// search; higher degrees by the Ben-Or distinct-degree test.
    pub fn is_irreducible(&self, f: &[Fe]) -> bool {
        let f = self.monic(f);
        let Some(d) = f.len().checked_sub(1) else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d <= 3 {
            return self.base.elements().all(|x| self.eval(&f, &x).0 != 0);
        }
        let t = self.var();
        let mut h = t.clone();
        for _ in 0..d / 2 {
            h = self.powmod(&h, self.base.q(), &f);
            let g = self.gcd(&f, &self.sub(&h, &t));
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
