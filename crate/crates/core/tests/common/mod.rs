//! Brute-force oracles shared by the integration tests. Each one recomputes
//! a quantity from its definition without going through the library
//! routine it is used to check.

#![allow(dead_code)]

use ortho8::forms::QuadraticForm;
use ortho8::gf::{Fe, Field};
use ortho8::linalg::Matrix;
use ortho8::ring::Ring;

pub const EVEN_Q: [u64; 6] = [2, 4, 8, 16, 32, 64];
pub const ODD_Q: [u64; 9] = [3, 5, 7, 9, 11, 13, 25, 27, 49];

/// Order by repeated multiplication.
pub fn naive_order(m: &Matrix<Field>, cap: u64) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

/// Prime divisors by trial division.
pub fn trial_primes(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `x` is a square, by search.
pub fn brute_square(k: &Field, x: Fe) -> bool {
    k.elements().any(|b| k.mul(&b, &b) == x)
}

/// `Q(v)` straight from the diagonal and upper-triangular Gram entries.
pub fn q_value(form: &QuadraticForm, v: &[Fe]) -> Fe {
    let k = &form.field;
    let n = v.len();
    let mut acc = k.zero();
    for i in 0..n {
        acc = k.add(&acc, &k.mul(&form.diag[i], &k.mul(&v[i], &v[i])));
        for j in i + 1..n {
            acc = k.add(&acc, &k.mul(form.gram.get(i, j), &k.mul(&v[i], &v[j])));
        }
    }
    acc
}

/// `Q(gv) - Q(v)` is quadratic in `v`, so it vanishes identically iff it
/// vanishes on every `e_i` and `e_i + e_j`.
pub fn brute_preserves(form: &QuadraticForm, g: &Matrix<Field>) -> bool {
    let n = g.n_rows();
    let unit = |i: usize| (0..n).map(|k| if k == i { Fe(1) } else { Fe(0) }).collect::<Vec<_>>();
    let mut vs: Vec<Vec<Fe>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(i);
            v[j] = Fe(1);
            vs.push(v);
        }
    }
    vs.iter().all(|v| q_value(form, &g.apply(v)) == q_value(form, v))
}

/// Rank by plain row reduction on a copy of the entries.
pub fn brute_rank(m: &Matrix<Field>) -> usize {
    let k = &m.ring;
    let (r, c) = (m.n_rows(), m.n_cols());
    let mut a: Vec<Vec<Fe>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !k.is_zero(&a[i][col])) else { continue };
        a.swap(rank, p);
        let inv = k.inv(&a[rank][col]).unwrap();
        for i in 0..r {
            if i != rank && !k.is_zero(&a[i][col]) {
                let f = k.mul(&a[i][col], &inv);
                for j in 0..c {
                    let t = k.mul(&f, &a[rank][j]);
                    a[i][j] = k.sub(&a[i][j], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by cofactor expansion along the first row (small n only).
pub fn laplace_det(m: &Matrix<Field>) -> Fe {
    let k = &m.ring;
    fn go(k: &Field, rows: &[Vec<Fe>], cols: &[usize]) -> Fe {
        if cols.is_empty() {
            return k.one();
        }
        let mut acc = k.zero();
        for (idx, &c) in cols.iter().enumerate() {
            let e = rows[0][c];
            if k.is_zero(&e) {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = k.mul(&e, &go(k, &rows[1..], &rest));
            acc = if idx % 2 == 0 { k.add(&acc, &t) } else { k.sub(&acc, &t) };
        }
        acc
    }
    let rows: Vec<Vec<Fe>> = (0..m.n_rows()).map(|i| m.row(i).to_vec()).collect();
    let cols: Vec<usize> = (0..m.n_cols()).collect();
    go(k, &rows, &cols)
}

/// Membership in Omega for an involution in odd characteristic: the
/// spinor norm is the square class of the Gram determinant on the
/// `-1`-eigenspace (with an even-dimensional eigenspace for determinant 1).
pub fn involution_in_omega_odd(form: &QuadraticForm, x: &Matrix<Field>) -> bool {
    let k = &form.field;
    let w = x.add(&Matrix::identity(k, x.n_rows())).kernel();
    let basis = w.basis();
    if basis.len() % 2 == 1 {
        return false;
    }
    let g = Matrix::from_fn(k, basis.len(), basis.len(), |i, j| form.b(&basis[i], &basis[j]));
    brute_square(k, laplace_det(&g))
}

/// `(-1)^rank(I - g)` for characteristic 2, via [`brute_rank`].
pub fn quasideterminant_even(g: &Matrix<Field>) -> i8 {
    let r = brute_rank(&Matrix::identity(&g.ring, g.n_rows()).sub(g));
    if r % 2 == 0 {
        1
    } else {
        -1
    }
}
