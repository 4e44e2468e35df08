//! Multiplicative order of invertible matrices over finite fields.
//!
//! The order of `M` in `GL_n(q)` divides `N = p^e * prod_{k<=n} Phi_k(q)` with
//! `p^e >= n` (semisimple part times unipotent part). Starting from the
//! factored `N`, each prime is stripped as far as `M` allows.

use std::collections::BTreeMap;

use crate::arith;
use crate::gf::Field;

use super::matrix::{Matrix, MatrixError};

/// Default cap on reported orders.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// Integer coefficients of the `k`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic(k: u64) -> Vec<i128> {
    let mut num = vec![0i128; k as usize + 1];
    num[0] = -1;
    num[k as usize] = 1;
    for d in arith::divisors(k) {
        if d < k {
            num = div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

fn div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i128; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd] / den[dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            r[i + j] -= c * dj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// `Phi_k(q)`, or `None` when it does not fit in 127 bits.
pub fn cyclotomic_value(k: u64, q: u64) -> Option<u128> {
    let mut acc: i128 = 0;
    for &c in cyclotomic(k).iter().rev() {
        acc = acc.checked_mul(q as i128)?.checked_add(c)?;
    }
    u128::try_from(acc).ok()
}

/// Factored multiple of the order of every element of `GL_n(q)`.
pub fn order_bound(p: u64, q: u64, n: usize) -> Option<BTreeMap<u128, u32>> {
    let mut out: BTreeMap<u128, u32> = BTreeMap::new();
    let mut e = 0u32;
    while (p as u128).pow(e) < n as u128 {
        e += 1;
    }
    if e > 0 {
        *out.entry(p as u128).or_insert(0) += e;
    }
    for k in 1..=n as u64 {
        for (r, m) in arith::factor(cyclotomic_value(k, q)?) {
            *out.entry(r).or_insert(0) += m;
        }
    }
    Some(out)
}

impl Matrix<Field> {
    /// Least `k >= 1` with `M^k = I`; `Overflow` when that exceeds `cap`.
    pub fn element_order(&self, cap: u64) -> Result<u64, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.n_rows(), self.n_cols()));
        }
        if self.det_gauss()?.0 == 0 {
            return Err(MatrixError::Singular);
        }
        let field = &self.ring;
        let bound = order_bound(field.p(), field.q(), self.n_rows()).ok_or(MatrixError::Overflow(cap))?;
        let mut order: u128 = 1;
        for (&r, &k) in &bound {
            let mut h = self.clone();
            for (&s, &m) in &bound {
                if s != r {
                    for _ in 0..m {
                        h = h.pow(s);
                    }
                }
            }
            let mut j = 0;
            while !h.is_identity() {
                h = h.pow(r);
                j += 1;
                assert!(j <= k, "order bound is not a multiple of the order");
            }
            order = order.checked_mul(r.pow(j)).ok_or(MatrixError::Overflow(cap))?;
        }
        if order > cap as u128 {
            return Err(MatrixError::Overflow(cap));
        }
        Ok(order as u64)
    }
}
