//! Quadratic forms on `F_q^n` and the isometry-group predicates built on them.
//!
//! A form is stored as the Gram matrix `G` of its polar form together with the
//! diagonal coefficients: `Q(v) = sum_i diag_i v_i^2 + sum_{i<j} G_ij v_i v_j`,
//! so `B(u, v) = Q(u + v) - Q(u) - Q(v) = u^T G v`. In odd characteristic the
//! diagonal is `G_ii / 2`; in characteristic 2 it carries independent data.

use std::fmt;

use thiserror::Error;

use crate::gf::{Fe, Field};
use crate::linalg::{Matrix, MatrixError};
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("Gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("in characteristic 2 the Gram matrix must be alternating")]
    NotAlternating,
    #[error("diagonal does not match the Gram matrix")]
    DiagonalMismatch,
    #[error("form is degenerate")]
    Degenerate,
    #[error("form dimension {0} does not match the {1}x{2} matrix")]
    Dimension(usize, usize, usize),
    #[error("operation needs {0} characteristic")]
    Characteristic(&'static str),
    #[error("matrix does not preserve the form")]
    NotIsometry,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticForm {
    pub field: Field,
    pub gram: Matrix<Field>,
    pub diag: Vec<Fe>,
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.diag.iter().map(|x| x.0.to_string()).collect();
        write!(f, "gram={} diag={} char={}", self.gram.to_text(), d.join(","), self.field.p())
    }
}

impl QuadraticForm {
    /// General constructor; validates symmetry, the diagonal and non-degeneracy.
    pub fn new(gram: Matrix<Field>, diag: Vec<Fe>) -> Result<Self, FormError> {
        let f = gram.ring.clone();
        let n = gram.n_rows();
        if !gram.is_square() || !gram.equals(&gram.transpose()) {
            return Err(FormError::NotSymmetric);
        }
        if diag.len() != n {
            return Err(FormError::Dimension(diag.len(), n, n));
        }
        if f.p() == 2 {
            if (0..n).any(|i| gram.get(i, i).0 != 0) {
                return Err(FormError::NotAlternating);
            }
        } else {
            let two = f.from_int(2);
            if (0..n).any(|i| f.mul(&two, &diag[i]) != *gram.get(i, i)) {
                return Err(FormError::DiagonalMismatch);
            }
        }
        if gram.det_gauss()?.0 == 0 {
            return Err(FormError::Degenerate);
        }
        Ok(QuadraticForm { field: f, gram, diag })
    }

    /// Odd characteristic: `Q(v) = v^T G v / 2`.
    pub fn from_gram(gram: Matrix<Field>) -> Result<Self, FormError> {
        let f = gram.ring.clone();
        if f.p() == 2 {
            return Err(FormError::Characteristic("odd"));
        }
        let half = f.inv(&f.from_int(2)).expect("2 is invertible");
        let diag = (0..gram.n_rows()).map(|i| f.mul(gram.get(i, i), &half)).collect();
        Self::new(gram, diag)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn q(&self, v: &[Fe]) -> Fe {
        let f = &self.field;
        let mut acc = Fe(0);
        for i in 0..v.len() {
            if v[i].0 == 0 {
                continue;
            }
            acc = f.add(&acc, &f.mul(&self.diag[i], &f.mul(&v[i], &v[i])));
            for j in i + 1..v.len() {
                let g = self.gram.get(i, j);
                if g.0 != 0 && v[j].0 != 0 {
                    acc = f.add(&acc, &f.mul(g, &f.mul(&v[i], &v[j])));
                }
            }
        }
        acc
    }

    pub fn b(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let f = &self.field;
        let gv = self.gram.apply(v);
        u.iter().zip(&gv).fold(Fe(0), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
    }

    fn check_dims(&self, g: &Matrix<Field>) -> Result<(), FormError> {
        if g.n_rows() != self.dim() || g.n_cols() != self.dim() {
            return Err(FormError::Dimension(self.dim(), g.n_rows(), g.n_cols()));
        }
        Ok(())
    }

    /// True iff `Q(gv) = Q(v)` for all `v`, decided on basis vectors and the
    /// polar form.
    pub fn preserves(&self, g: &Matrix<Field>) -> Result<bool, FormError> {
        self.check_dims(g)?;
        let cols: Vec<Vec<Fe>> = (0..self.dim()).map(|j| g.column(j)).collect();
        let diag_ok = (0..self.dim()).all(|i| self.q(&cols[i]) == self.diag[i]);
        let polar_ok = g.transpose().mul(&self.gram).mul(g).equals(&self.gram);
        Ok(diag_ok && polar_ok)
    }

    /// Sign of a non-degenerate even-dimensional form: Arf invariant in
    /// characteristic 2, discriminant otherwise.
    pub fn sign(&self) -> Result<Sign, FormError> {
        let f = &self.field;
        let n = self.dim();
        if f.p() == 2 {
            let arf = self.arf()?;
            Ok(if f.trace(arf) == 1 { Sign::Minus } else { Sign::Plus })
        } else {
            let det = self.gram.det_gauss()?;
            let disc = if (n / 2) % 2 == 1 { f.neg(&det) } else { det };
            Ok(if f.is_square(disc) { Sign::Plus } else { Sign::Minus })
        }
    }

    /// Arf invariant from a symplectic basis of the polar form.
    pub fn arf(&self) -> Result<Fe, FormError> {
        let f = &self.field;
        if f.p() != 2 {
            return Err(FormError::Characteristic("even"));
        }
        let n = self.dim();
        let mut rest: Vec<Vec<Fe>> = (0..n).map(|i| unit(n, i)).collect();
        let mut arf = Fe(0);
        while let Some(e) = rest.first().cloned() {
            let j = (1..rest.len()).find(|&j| self.b(&e, &rest[j]).0 != 0).ok_or(FormError::Degenerate)?;
            let inv = f.inv(&self.b(&e, &rest[j])).expect("nonzero");
            let fv: Vec<Fe> = rest[j].iter().map(|x| f.mul(x, &inv)).collect();
            arf = f.add(&arf, &f.mul(&self.q(&e), &self.q(&fv)));
            rest = rest
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != 0 && k != j)
                .map(|(_, u)| {
                    let (bf, be) = (self.b(u, &fv), self.b(u, &e));
                    (0..n).map(|t| f.sub(&f.sub(&u[t], &f.mul(&bf, &e[t])), &f.mul(&be, &fv[t]))).collect()
                })
                .collect();
        }
        Ok(arf)
    }

    /// Witt index by explicit hyperbolic-pair peeling.
    pub fn witt_index(&self) -> Result<usize, FormError> {
        let f = &self.field;
        let n = self.dim();
        let mut space: Vec<Vec<Fe>> = (0..n).map(|i| unit(n, i)).collect();
        let mut planes = 0;
        while let Some(v) = self.find_singular(&space) {
            let j = (0..space.len()).find(|&j| self.b(&v, &space[j]).0 != 0).ok_or(FormError::Degenerate)?;
            let inv = f.inv(&self.b(&v, &space[j])).expect("nonzero");
            let w: Vec<Fe> = space[j].iter().map(|x| f.mul(x, &inv)).collect();
            // w - Q(w) v is singular and still pairs to 1 with v.
            let qw = self.q(&w);
            let w: Vec<Fe> = (0..n).map(|t| f.sub(&w[t], &f.mul(&qw, &v[t]))).collect();
            let projected: Vec<Vec<Fe>> = space
                .iter()
                .map(|u| {
                    let (bw, bv) = (self.b(u, &w), self.b(u, &v));
                    (0..n).map(|t| f.sub(&f.sub(&u[t], &f.mul(&bw, &v[t])), &f.mul(&bv, &w[t]))).collect()
                })
                .collect();
            space = crate::linalg::Subspace::span(f, n, projected).basis().to_vec();
            planes += 1;
        }
        Ok(planes)
    }

    /// Sign read off the Witt index.
    pub fn sign_by_witt(&self) -> Result<Sign, FormError> {
        let w = self.witt_index()?;
        Ok(if 2 * w == self.dim() { Sign::Plus } else { Sign::Minus })
    }

    /// A nonzero singular vector in the span of `space`, searching the span of
    /// its first three vectors (forms of dimension at least 3 over a finite
    /// field are isotropic).
    fn find_singular(&self, space: &[Vec<Fe>]) -> Option<Vec<Fe>> {
        let f = &self.field;
        let n = self.dim();
        let comb = |c: &[Fe]| -> Vec<Fe> {
            (0..n).map(|t| c.iter().zip(space).fold(Fe(0), |acc, (ci, u)| f.add(&acc, &f.mul(ci, &u[t])))).collect()
        };
        let k = space.len().min(3);
        if k == 0 {
            return None;
        }
        // Projective points of the first k basis vectors, normalized so the
        // last nonzero coordinate is 1.
        for last in 0..k {
            let free = last;
            let total = f.q().pow(free as u32);
            for idx in 0..total {
                let mut c = vec![Fe(0); space.len()];
                let mut r = idx;
                for slot in c.iter_mut().take(free) {
                    *slot = Fe(r % f.q());
                    r /= f.q();
                }
                c[last] = Fe(1);
                let v = comb(&c);
                if self.q(&v).0 == 0 {
                    return Some(v);
                }
            }
        }
        None
    }

    /// Extends a totally singular subspace by one vector keeping it totally
    /// singular, by exhaustive search over a complement of `w` in `w^perp`.
    pub fn singular_extension(&self, w: &[Vec<Fe>]) -> Option<Vec<Fe>> {
        let f = &self.field;
        let n = self.dim();
        let rows: Vec<Vec<Fe>> = w.iter().map(|u| self.gram.apply(u)).collect();
        let perp = Matrix::from_rows(f, rows).ok()?.kernel();
        let ws = crate::linalg::Subspace::span(f, n, w.to_vec());
        let mut complement = Vec::new();
        let mut acc = ws.clone();
        for v in perp.basis() {
            if !acc.contains(v) {
                acc = acc.sum(&crate::linalg::Subspace::span(f, n, vec![v.clone()]));
                complement.push(v.clone());
            }
        }
        // Q is constant on cosets of w inside w^perp.
        let k = complement.len() as u32;
        let total = f.q().checked_pow(k)?;
        (1..total).find_map(|idx| {
            let mut r = idx;
            let mut v = vec![Fe(0); n];
            for u in &complement {
                let c = Fe(r % f.q());
                r /= f.q();
                for t in 0..n {
                    v[t] = f.add(&v[t], &f.mul(&c, &u[t]));
                }
            }
            (self.q(&v).0 == 0).then_some(v)
        })
    }

    /// Reflection `u -> u - B(u, w)/Q(w) w` in an anisotropic vector.
    pub fn reflection(&self, w: &[Fe]) -> Option<Matrix<Field>> {
        let f = &self.field;
        let inv = f.inv(&self.q(w))?;
        let gw = self.gram.apply(w);
        let n = self.dim();
        Some(Matrix::from_fn(f, n, n, |i, j| {
            let delta = if i == j { Fe(1) } else { Fe(0) };
            f.sub(&delta, &f.mul(&f.mul(&w[i], &gw[j]), &inv))
        }))
    }

    /// `+1` iff `rank(I - g)` is even (characteristic 2).
    pub fn quasideterminant(&self, g: &Matrix<Field>) -> Result<i8, FormError> {
        if self.field.p() != 2 {
            return Err(FormError::Characteristic("even"));
        }
        if !self.preserves(g)? {
            return Err(FormError::NotIsometry);
        }
        let r = Matrix::identity(&self.field, self.dim()).sub(g).rank();
        Ok(if r % 2 == 0 { 1 } else { -1 })
    }

    /// Spinor norm (odd characteristic) as `+1` / `-1`: the square class of
    /// the discriminant of the Wall form `(u, v) -> B(u, w)` on
    /// `W = Im(I - g)`, where `v = (I - g)w`. For the reflection in `w` this
    /// is the class of `Q(w)`.
    pub fn spinor_norm(&self, g: &Matrix<Field>) -> Result<i8, FormError> {
        let f = &self.field;
        if f.p() == 2 {
            return Err(FormError::Characteristic("odd"));
        }
        if !self.preserves(g)? {
            return Err(FormError::NotIsometry);
        }
        let n = self.dim();
        let d = Matrix::identity(f, n).sub(g);
        let (_, pivots) = d.rref();
        // (I - g) e_k for the pivot columns k is a basis of W.
        let us: Vec<Vec<Fe>> = pivots.iter().map(|&k| d.column(k)).collect();
        let m = pivots.len();
        let wall = Matrix::from_fn(f, m, m, |i, j| self.b(&us[i], &unit(n, pivots[j])));
        let disc = if m == 0 { f.one() } else { wall.det_gauss()? };
        if disc.0 == 0 {
            return Err(FormError::Degenerate);
        }
        Ok(if f.is_square(disc) { 1 } else { -1 })
    }

    /// Membership in Omega: isometry, determinant 1, and trivial
    /// quasideterminant / spinor norm.
    pub fn in_omega(&self, g: &Matrix<Field>) -> Result<bool, FormError> {
        if !self.preserves(g)? || g.det_gauss()?.0 != 1 {
            return Ok(false);
        }
        let v = if self.field.p() == 2 { self.quasideterminant(g)? } else { self.spinor_norm(g)? };
        Ok(v == 1)
    }
}

fn unit(n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe(0); n];
    v[i] = Fe(1);
    v
}


/// The split form `sum_i x_i x_{-i}` with Gram matrix `[[0, I], [I, 0]]`.
pub fn hyperbolic_gram(field: &Field, half: usize) -> Matrix<Field> {
    Matrix::from_fn(field, 2 * half, 2 * half, |i, j| if i.abs_diff(j) == half { Fe(1) } else { Fe(0) })
}
