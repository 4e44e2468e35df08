//! Finite fields GF(p^f) in a polynomial basis.
//!
//! An element is stored as its canonical integer encoding: the digit vector
//! `(c0, .., c_{f-1})` of `c0 + c1 t + .. + c_{f-1} t^{f-1}` read as the base-p
//! number `c0 + c1 p + ..`. Prime-field elements therefore encode as `0..p` in
//! every field of characteristic `p`. The defining polynomial is the
//! lexicographically smallest monic irreducible of degree `f`, comparing
//! coefficient vectors from the constant term upwards.
//!
//! Fields up to `2^20` elements carry exp/log/Zech tables; larger fields (only
//! built internally, as quadratic extensions) use schoolbook arithmetic.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;
use crate::ring::Ring;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 20;
/// Largest order for internally constructed extension fields.
pub const MAX_EXT_ORDER: u64 = 1 << 40;
const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {p}^{f} exceeds the limit of {limit}")]
    TooLarge { p: u64, f: u32, limit: u64 },
    #[error("defining polynomial is not monic irreducible of the stated degree")]
    BadPolynomial,
    #[error("characteristic 3 has no primitive cube root of unity")]
    CharacteristicThree,
    #[error("every element of GF({0}) is a square")]
    EvenOrder(u64),
    #[error("fields of characteristic {0} and {1} are unrelated")]
    CharacteristicMismatch(u64, u64),
    #[error("GF({base}) is not a subfield of GF({ext})")]
    NotSubfield { base: u64, ext: u64 },
    #[error("malformed field descriptor `{0}`")]
    Parse(String),
}

/// A field element in canonical integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(pub u64);

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    /// `exp[i] = g^i`, doubled in length so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, only for odd characteristic with `f > 1`.
    zech: Vec<u32>,
}

struct FieldData {
    p: u64,
    f: u32,
    q: u64,
    poly: Vec<u64>,
    place: Vec<u64>,
    tables: Option<Tables>,
    primitive: Fe,
}

/// The finite field GF(p^f). Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.poly == other.0.poly)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

/// Serialized as `p^f:poly=c0,c1,..,cf`.
impl fmt::Display for Field {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.0.poly.iter().map(u64::to_string).collect();
        write!(out, "{}^{}:poly={}", self.0.p, self.0.f, cs.join(","))
    }
}

impl FromStr for Field {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GfError::Parse(s.to_string());
        let (pf, poly) = s.split_once(":poly=").ok_or_else(bad)?;
        let (p, f) = pf.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let f: u32 = f.trim().parse().map_err(|_| bad())?;
        let coeffs: Vec<u64> = poly
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if coeffs.len() != f as usize + 1 {
            return Err(bad());
        }
        Field::with_poly(p, coeffs)
    }
}

/// An element tagged with its ambient field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in GF({})", self.value, self.field.q())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// ---------------------------------------------------------------------------
// Polynomials over GF(p) as plain coefficient vectors, used only while
// searching for defining polynomials.

mod fp {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = r[r.len() - 1] * lead_inv % p;
            for (i, &mi) in m.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * mi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % p;
            }
        }
        rem(&v, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: `g` of degree `f` is irreducible iff `gcd(g, t^(p^i) - t) = 1`
    /// for every `i <= f/2`.
    pub fn is_irreducible(g: &[u64], p: u64) -> bool {
        let f = g.len() - 1;
        let t = trim(vec![0, 1]);
        let mut h = t.clone();
        for _ in 0..f / 2 {
            // h <- h^p mod g
            let mut acc = vec![1u64];
            let (mut base, mut e) = (h.clone(), p);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, g, p);
                }
                base = mulmod(&base, &base, g, p);
                e >>= 1;
            }
            h = acc;
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            if gcd(g, &trim(diff), p).len() > 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// GF(p^f) with the lexicographically smallest monic irreducible defining
    /// polynomial; rejects orders above `2^20`.
    pub fn new(p: u64, f: u32) -> Result<Field, GfError> {
        Self::with_limit(p, f, MAX_ORDER)
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field, GfError> {
        Self::new(p, 1)
    }

    pub(crate) fn with_limit(p: u64, f: u32, limit: u64) -> Result<Field, GfError> {
        check_order(p, f, limit)?;
        let poly = smallest_irreducible(p, f);
        Ok(Self::build(p, poly))
    }

    /// GF(p^f) with an explicit monic irreducible polynomial (low degree first).
    pub fn with_poly(p: u64, poly: Vec<u64>) -> Result<Field, GfError> {
        let f = poly.len().checked_sub(1).ok_or(GfError::BadPolynomial)? as u32;
        check_order(p, f, MAX_ORDER)?;
        if poly.last() != Some(&1) || poly.iter().any(|&c| c >= p) || !fp::is_irreducible(&poly, p) {
            return Err(GfError::BadPolynomial);
        }
        Ok(Self::build(p, poly))
    }

    fn build(p: u64, poly: Vec<u64>) -> Field {
        let f = (poly.len() - 1) as u32;
        let place: Vec<u64> = (0..=f).map(|i| p.pow(i)).collect();
        let q = place[f as usize];
        let mut data = FieldData { p, f, q, poly, place, tables: None, primitive: Fe(1) };
        let primitive = find_primitive(&data);
        data.primitive = primitive;
        if q <= MAX_ORDER {
            data.tables = Some(build_tables(&data));
        }
        Field(Arc::new(data))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Defining polynomial, low degree first, monic.
    pub fn defining_poly(&self) -> &[u64] {
        &self.0.poly
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        self.0.primitive
    }

    /// Element with the given canonical encoding.
    pub fn elem(&self, n: u64) -> Fe {
        assert!(n < self.0.q, "{n} is not an element of GF({})", self.0.q);
        Fe(n)
    }

    pub fn element(&self, n: u64) -> FieldElement {
        FieldElement { field: self.clone(), value: self.elem(n) }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    /// The element `t` (residue of the polynomial variable).
    pub fn generator_t(&self) -> Fe {
        if self.0.f == 1 {
            Fe((self.0.p - self.0.poly[0]) % self.0.p)
        } else {
            Fe(self.0.p)
        }
    }

    pub fn digits(&self, x: Fe) -> Vec<u64> {
        digits(&self.0, x)
    }

    pub fn from_digits(&self, d: &[u64]) -> Fe {
        from_digits(&self.0, d)
    }

    pub fn frobenius(&self, x: Fe) -> Fe {
        self.pow(&x, self.0.p)
    }

    /// Degree over GF(p) of the subfield generated by `x`.
    pub fn subfield_degree(&self, x: Fe) -> u32 {
        let f = self.0.f;
        arith::divisors(f as u64)
            .into_iter()
            .map(|d| d as u32)
            .find(|&d| {
                let mut y = x;
                for _ in 0..d {
                    y = self.frobenius(y);
                }
                y == x
            })
            .unwrap_or(f)
    }

    /// True iff GF(p)[x] is the whole field.
    pub fn is_field_generator(&self, x: Fe) -> bool {
        self.subfield_degree(x) == self.0.f
    }

    pub fn is_square(&self, x: Fe) -> bool {
        x.0 == 0 || self.0.p == 2 || self.pow(&x, (self.0.q - 1) / 2).0 == 1
    }

    /// Absolute trace to the prime field, as an integer in `0..p`.
    pub fn trace(&self, x: Fe) -> u64 {
        let mut acc = Fe(0);
        let mut y = x;
        for _ in 0..self.0.f {
            acc = self.add(&acc, &y);
            y = self.frobenius(y);
        }
        debug_assert!(acc.0 < self.0.p);
        acc.0
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Fe) -> u64 {
        assert!(x.0 != 0, "zero has no multiplicative order");
        let n = self.0.q - 1;
        let mut ord = n;
        for (r, _) in arith::factor(n as u128) {
            let r = r as u64;
            while ord % r == 0 && self.pow(&x, ord / r).0 == 1 {
                ord /= r;
            }
        }
        ord
    }

    /// Smallest element (canonical order) satisfying a predicate.
    pub fn smallest(&self, mut pred: impl FnMut(Fe) -> bool) -> Option<Fe> {
        self.elements().find(|&x| pred(x))
    }

    /// Roots of `x^2 = c` if any, smaller encoding first.
    pub fn sqrt(&self, c: Fe) -> Option<Fe> {
        if self.0.p == 2 {
            // Frobenius is bijective: sqrt(c) = c^(q/2).
            return Some(self.pow(&c, self.0.q / 2));
        }
        if !self.is_square(c) {
            return None;
        }
        self.smallest(|x| self.mul(&x, &x) == c)
    }

    fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }
}

fn check_order(p: u64, f: u32, limit: u64) -> Result<(), GfError> {
    if !arith::is_prime(p as u128) {
        return Err(GfError::NotPrime(p));
    }
    if f == 0 {
        return Err(GfError::ZeroExponent);
    }
    match p.checked_pow(f) {
        Some(q) if q <= limit => Ok(()),
        _ => Err(GfError::TooLarge { p, f, limit }),
    }
}

fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    let count = p.pow(f);
    for k in 0..count {
        // c0 is the most significant digit of k, so k walks the coefficient
        // vectors in lexicographic order starting from the constant term.
        let mut poly = vec![0u64; f as usize + 1];
        let mut rest = k;
        for i in (0..f as usize).rev() {
            poly[i] = rest % p;
            rest /= p;
        }
        poly[f as usize] = 1;
        if fp::is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(d: &FieldData, x: Fe) -> Vec<u64> {
    let mut v = Vec::with_capacity(d.f as usize);
    let mut r = x.0;
    for _ in 0..d.f {
        v.push(r % d.p);
        r /= d.p;
    }
    v
}

fn from_digits(d: &FieldData, ds: &[u64]) -> Fe {
    Fe(ds.iter().zip(&d.place).map(|(c, w)| (c % d.p) * w).sum())
}

fn slow_add(d: &FieldData, a: Fe, b: Fe) -> Fe {
    if d.p == 2 {
        return Fe(a.0 ^ b.0);
    }
    if d.f == 1 {
        return Fe((a.0 + b.0) % d.p);
    }
    let (mut x, mut y, mut out) = (a.0, b.0, 0u64);
    for w in &d.place[..d.f as usize] {
        out += ((x % d.p + y % d.p) % d.p) * w;
        x /= d.p;
        y /= d.p;
    }
    Fe(out)
}

fn slow_neg(d: &FieldData, a: Fe) -> Fe {
    if d.p == 2 {
        return a;
    }
    let mut x = a.0;
    let mut out = 0u64;
    for w in &d.place[..d.f as usize] {
        out += ((d.p - x % d.p) % d.p) * w;
        x /= d.p;
    }
    Fe(out)
}

fn slow_mul(d: &FieldData, a: Fe, b: Fe) -> Fe {
    let f = d.f as usize;
    if f == 1 {
        return Fe(((a.0 as u128 * b.0 as u128) % d.p as u128) as u64);
    }
    if d.p == 2 {
        let mut prod: u128 = 0;
        for i in 0..f {
            if (b.0 >> i) & 1 == 1 {
                prod ^= (a.0 as u128) << i;
            }
        }
        let modulus: u128 = d.poly.iter().enumerate().map(|(i, &c)| (c as u128) << i).sum();
        for i in (f..2 * f).rev() {
            if (prod >> i) & 1 == 1 {
                prod ^= modulus << (i - f);
            }
        }
        return Fe(prod as u64);
    }
    let (x, y) = (digits(d, a), digits(d, b));
    let mut v = vec![0u64; 2 * f - 1];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            v[i + j] = (v[i + j] + xi * yj) % d.p;
        }
    }
    for k in (f..v.len()).rev() {
        let c = v[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in d.poly.iter().enumerate().take(f) {
            v[k - f + i] = (v[k - f + i] + c * (d.p - m)) % d.p;
        }
        v[k] = 0;
    }
    from_digits(d, &v[..f])
}

fn slow_pow(d: &FieldData, a: Fe, mut e: u64) -> Fe {
    let (mut base, mut acc) = (a, Fe(1));
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(d, acc, base);
        }
        base = slow_mul(d, base, base);
        e >>= 1;
    }
    acc
}

fn find_primitive(d: &FieldData) -> Fe {
    let n = d.q - 1;
    let primes = arith::prime_divisors(n as u128);
    (1..d.q)
        .map(Fe)
        .find(|&g| primes.iter().all(|&r| slow_pow(d, g, n / r as u64).0 != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

fn build_tables(d: &FieldData) -> Tables {
    let n = (d.q - 1) as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![NO_LOG; d.q as usize];
    let mut x = Fe(1);
    for i in 0..n {
        exp[i] = x.0 as u32;
        exp[i + n] = x.0 as u32;
        log[x.0 as usize] = i as u32;
        x = slow_mul(d, x, d.primitive);
    }
    let zech = if d.p != 2 && d.f > 1 {
        (0..n)
            .map(|k| {
                let s = slow_add(d, Fe(1), Fe(exp[k] as u64));
                if s.0 == 0 {
                    NO_LOG
                } else {
                    log[s.0 as usize]
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Tables { exp, log, zech }
}

impl Ring for Field {
    type Elem = Fe;

    #[inline]
    fn zero(&self) -> Fe {
        Fe(0)
    }

    #[inline]
    fn one(&self) -> Fe {
        Fe(1)
    }

    fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u64)
    }

    #[inline]
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let d = &*self.0;
        if d.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if d.f == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= d.p { s - d.p } else { s });
        }
        match &d.tables {
            Some(t) => {
                if a.0 == 0 {
                    return *b;
                }
                if b.0 == 0 {
                    return *a;
                }
                let n = d.q as u32 - 1;
                let (la, lb) = (t.log[a.0 as usize], t.log[b.0 as usize]);
                let diff = if lb >= la { lb - la } else { lb + n - la };
                match t.zech[diff as usize] {
                    NO_LOG => Fe(0),
                    z => Fe(t.exp[(la + z) as usize] as u64),
                }
            }
            None => slow_add(d, *a, *b),
        }
    }

    #[inline]
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let d = &*self.0;
        if d.f == 1 && d.p != 2 {
            return Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + d.p - b.0 });
        }
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn neg(&self, a: &Fe) -> Fe {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            return *a;
        }
        if d.f == 1 {
            return Fe(d.p - a.0);
        }
        match &d.tables {
            Some(t) => {
                let half = (d.q as u32 - 1) / 2;
                Fe(t.exp[(t.log[a.0 as usize] + half) as usize] as u64)
            }
            None => slow_neg(d, *a),
        }
    }

    #[inline]
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let d = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if d.f == 1 {
            return Fe(a.0 * b.0 % d.p);
        }
        match &d.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            None => slow_mul(d, *a, *b),
        }
    }

    #[inline]
    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }

    fn equal(&self, a: &Fe, b: &Fe) -> bool {
        a == b
    }

    fn inv(&self, a: &Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let d = &*self.0;
        Some(match &d.tables {
            Some(t) => {
                let n = d.q as u32 - 1;
                let l = t.log[a.0 as usize];
                Fe(t.exp[((n - l) % n) as usize] as u64)
            }
            None => slow_pow(d, *a, d.q - 2),
        })
    }

    fn pow(&self, a: &Fe, e: u64) -> Fe {
        let d = &*self.0;
        match &d.tables {
            Some(t) if a.0 != 0 => {
                let n = d.q - 1;
                let l = t.log[a.0 as usize] as u128;
                Fe(t.exp[((l * e as u128) % n as u128) as usize] as u64)
            }
            _ if a.0 == 0 => {
                if e == 0 {
                    Fe(1)
                } else {
                    Fe(0)
                }
            }
            _ => slow_pow(d, *a, e),
        }
    }

    fn render(&self, a: &Fe) -> String {
        a.0.to_string()
    }
}

impl Field {
    /// Whether the field arithmetic is table driven.
    pub fn is_tabulated(&self) -> bool {
        self.has_tables()
    }
}

/// A field embedding `base -> ext` determined by the image of `t`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub base: Field,
    pub ext: Field,
    powers: Vec<Fe>,
}

impl Extension {
    /// The identity embedding.
    pub fn trivial(base: &Field) -> Extension {
        let powers = (0..base.f()).map(|i| base.pow(&base.generator_t(), i as u64)).collect();
        Extension { base: base.clone(), ext: base.clone(), powers }
    }

    /// Embeds `base` into `ext`, mapping `t` to the smallest root of the
    /// defining polynomial of `base` inside `ext`.
    pub fn new(base: &Field, ext: &Field) -> Result<Extension, GfError> {
        if base.p() != ext.p() {
            return Err(GfError::CharacteristicMismatch(base.p(), ext.p()));
        }
        if ext.f() % base.f() != 0 {
            return Err(GfError::NotSubfield { base: base.q(), ext: ext.q() });
        }
        if base == ext {
            return Ok(Self::trivial(base));
        }
        let poly: Vec<Fe> = base.defining_poly().iter().map(|&c| Fe(c)).collect();
        let is_root = |x: Fe| {
            let v = poly.iter().rev().fold(Fe(0), |acc, c| ext.add(&ext.mul(&acc, &x), c));
            v.0 == 0
        };
        let step = (ext.q() - 1) / (base.q() - 1);
        let h = ext.pow(&ext.primitive_element(), step);
        let mut roots: Vec<Fe> = Vec::new();
        let mut x = Fe(1);
        for _ in 0..base.q() - 1 {
            if is_root(x) {
                roots.push(x);
            }
            x = ext.mul(&x, &h);
        }
        if is_root(Fe(0)) {
            roots.push(Fe(0));
        }
        let root = roots.into_iter().min().expect("subfield contains every root");
        let powers = (0..base.f()).map(|i| ext.pow(&root, i as u64)).collect();
        Ok(Extension { base: base.clone(), ext: ext.clone(), powers })
    }

    /// GF(q) inside GF(q^2).
    pub fn quadratic(base: &Field) -> Result<Extension, GfError> {
        let ext = Field::with_limit(base.p(), 2 * base.f(), MAX_EXT_ORDER)?;
        Self::new(base, &ext)
    }

    pub fn is_trivial(&self) -> bool {
        self.base == self.ext
    }

    pub fn embed(&self, x: Fe) -> Fe {
        if self.is_trivial() {
            return x;
        }
        let ds = self.base.digits(x);
        ds.iter()
            .zip(&self.powers)
            .fold(Fe(0), |acc, (&c, w)| self.ext.add(&acc, &self.ext.mul(&Fe(c), w)))
    }
}

/// The smallest element of multiplicative order 3, together with the field it
/// lives in: `F` itself when 3 divides `q - 1`, otherwise GF(q^2).
pub fn cube_root_unity(field: &Field) -> Result<FieldElement, GfError> {
    let (ext, omega) = adjoin_cube_root(field)?;
    Ok(FieldElement { field: ext.ext, value: omega })
}

/// Like [`cube_root_unity`] but also returns the embedding of `field`.
pub fn adjoin_cube_root(field: &Field) -> Result<(Extension, Fe), GfError> {
    if field.p() == 3 {
        return Err(GfError::CharacteristicThree);
    }
    let ext = if (field.q() - 1) % 3 == 0 { Extension::trivial(field) } else { Extension::quadratic(field)? };
    let e = &ext.ext;
    let omega = e
        .smallest(|x| x.0 > 1 && e.pow(&x, 3).0 == 1)
        .expect("3 divides the order of the extension's unit group");
    Ok((ext, omega))
}

/// The smallest nonsquare of an odd-order field, certified by Euler's criterion.
pub fn find_nonsquare(field: &Field) -> Result<FieldElement, GfError> {
    if field.p() == 2 {
        return Err(GfError::EvenOrder(field.q()));
    }
    let minus_one = field.neg(&field.one());
    let e = (field.q() - 1) / 2;
    let xi = field.smallest(|x| field.pow(&x, e) == minus_one).expect("half the units are nonsquares");
    Ok(FieldElement { field: field.clone(), value: xi })
}

/// True iff the subfield generated by `a` over the prime field is the whole field.
pub fn is_field_generator(a: &FieldElement) -> bool {
    a.field.is_field_generator(a.value)
}
