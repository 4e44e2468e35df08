//! Dense matrices over a commutative ring context.

use std::fmt;

use thiserror::Error;

use crate::gf::{Fe, Field};
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("row selection {0:?} is invalid for a {1}x{2} matrix")]
    BadRows(Vec<usize>, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("element order exceeds the cap {0}")]
    Overflow(u64),
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

/// Row-major dense matrix; the ring context travels with the entries.
#[derive(Clone)]
pub struct Matrix<R: Ring> {
    pub ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.ring.render(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn from_fn(ring: &R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        Ok(Matrix { ring: ring.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(ring: &R, cols: &[Vec<R::Elem>]) -> Result<Self, MatrixError> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(MatrixError::Shape("columns of different lengths".into()));
        }
        Ok(Self::from_fn(ring, n, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_fn(ring, rows, cols, |_, _| ring.zero())
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    /// `I + c E_{i,j}`-style matrices and the like start from here.
    pub fn unit(ring: &R, n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(ring, n, n, |r, c| if (r, c) == (i, j) { ring.one() } else { ring.zero() })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn map<S: Ring>(&self, ring: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn require_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare(self.rows, self.cols))
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(c, a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let r = &self.ring;
        let mut data = vec![r.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    data[idx] = r.add(&data[idx], &r.mul(a, other.get(k, j)));
                }
            }
        }
        Matrix { ring: r.clone(), rows: self.rows, cols: other.cols, data }
    }

    pub fn apply(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u128) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ring, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.rows.min(self.cols)).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| self.ring.equal(a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.equals(&Self::identity(&self.ring, self.rows))
    }

    /// `det(tI - M)`, low degree first, by Berkowitz's division-free algorithm.
    pub fn char_poly(&self) -> Result<Vec<R::Elem>, MatrixError> {
        self.require_square()?;
        let r = &self.ring;
        let n = self.rows;
        // v holds coefficients from the leading one downwards.
        let mut v: Vec<R::Elem> = vec![r.one()];
        for k in 0..n {
            // Leading principal block of size k, new row/column index k.
            let akk = self.get(k, k).clone();
            let mut col: Vec<R::Elem> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let row: Vec<R::Elem> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut toeplitz = Vec::with_capacity(k + 2);
            toeplitz.push(r.one());
            toeplitz.push(r.neg(&akk));
            for _ in 0..k {
                let rc = row.iter().zip(&col).fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)));
                toeplitz.push(r.neg(&rc));
                // col <- A_k col
                col = (0..k)
                    .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(i, j), &col[j]))))
                    .collect();
            }
            // new v = T v, T lower-triangular Toeplitz of shape (k+2)x(k+1).
            let next: Vec<R::Elem> = (0..k + 2)
                .map(|i| {
                    (0..=i.min(k)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&toeplitz[i - j], &v[j])))
                })
                .collect();
            v = next;
        }
        v.reverse();
        Ok(v)
    }

    pub fn det(&self) -> Result<R::Elem, MatrixError> {
        let chi = self.char_poly()?;
        let c0 = chi[0].clone();
        Ok(if self.rows % 2 == 0 { c0 } else { self.ring.neg(&c0) })
    }

    /// Determinant of the square submatrix formed by the given rows (0-based).
    pub fn det_rows(&self, rows: &[usize]) -> Result<R::Elem, MatrixError> {
        let mut seen = vec![false; self.rows];
        let ok = rows.len() == self.cols
            && rows.iter().all(|&i| i < self.rows && !std::mem::replace(&mut seen[i], true));
        if !ok {
            return Err(MatrixError::BadRows(rows.to_vec(), self.rows, self.cols));
        }
        Self::from_fn(&self.ring, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone()).det()
    }

    /// Inverse by Gauss-Jordan; fails when no invertible pivot can be found.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let r = &self.ring;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(r, n);
        for c in 0..n {
            let (p, pinv) = (c..n)
                .find_map(|i| r.inv(a.get(i, c)).map(|v| (i, v)))
                .ok_or(MatrixError::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            a.scale_row(c, &pinv);
            inv.scale_row(c, &pinv);
            for i in 0..n {
                if i != c && !r.is_zero(a.get(i, c)) {
                    let f = a.get(i, c).clone();
                    a.add_row_multiple(i, c, &r.neg(&f));
                    inv.add_row_multiple(i, c, &r.neg(&f));
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, f: &R::Elem) {
        for c in 0..self.cols {
            let v = self.ring.mul(self.get(i, c), f);
            self.set(i, c, v);
        }
    }

    /// row_i += f * row_j
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, f: &R::Elem) {
        for c in 0..self.cols {
            let v = self.ring.add(self.get(i, c), &self.ring.mul(f, self.get(j, c)));
            self.set(i, c, v);
        }
    }

    /// Commutator `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, other: &Self) -> Result<Self, MatrixError> {
        Ok(self.inverse()?.mul(&other.inverse()?).mul(self).mul(other))
    }

    /// Conjugate `g^h = h^-1 g h`.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self, MatrixError> {
        Ok(h.inverse()?.mul(self).mul(h))
    }

    /// Text form: rows separated by `;`, entries by `,`.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.ring.render(e)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl Matrix<Field> {
    /// Parses the text form with entries in canonical integer encoding.
    pub fn from_text(field: &Field, s: &str) -> Result<Self, MatrixError> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        let n: u64 = e.trim().parse().map_err(|_| MatrixError::Parse(e.to_string()))?;
                        if n >= field.q() {
                            return Err(MatrixError::Parse(format!("{n} is not in GF({})", field.q())));
                        }
                        Ok(Fe(n))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(field, rows)
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::UPolyRing;

    fn f7() -> Field {
        Field::new(7, 1).unwrap()
    }

    #[test]
    fn char_poly_two_by_two() {
        let f = f7();
        let m = Matrix::from_ints(&f, &[&[1, 2], &[3, 4]]);
        // t^2 - 5t - 2
        assert_eq!(m.char_poly().unwrap(), vec![f.from_int(-2), f.from_int(-5), Fe(1)]);
        assert_eq!(m.det().unwrap(), f.from_int(-2));
    }

    #[test]
    fn char_poly_of_identity() {
        let f = Field::new(5, 1).unwrap();
        let chi = Matrix::identity(&f, 8).char_poly().unwrap();
        // (t-1)^8 has binomial coefficients with alternating signs.
        let expect: Vec<Fe> = (0..=8).map(|k| f.from_int(binom(8, k) * if (8 - k) % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(chi, expect);
    }

    fn binom(n: i64, k: i64) -> i64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn char_poly_over_polynomial_ring() {
        // [[t, 1], [1, t]] over GF(7)[t]: det = t^2 - 1.
        let f = f7();
        let pr = UPolyRing::new(f.clone());
        let t = pr.var();
        let m = Matrix::from_rows(&pr, vec![vec![t.clone(), pr.one()], vec![pr.one(), t]]).unwrap();
        assert!(pr.equal(&m.det().unwrap(), &vec![f.from_int(-1), Fe(0), Fe(1)]));
    }

    #[test]
    fn det_rows_selects_rows() {
        let f = f7();
        let m = Matrix::from_ints(&f, &[&[1, 0], &[0, 2], &[5, 5]]);
        assert_eq!(m.det_rows(&[0, 1]).unwrap(), Fe(2));
        assert_eq!(m.det_rows(&[1, 2]).unwrap(), f.from_int(-10));
        assert!(m.det_rows(&[0, 0]).is_err());
        assert!(m.det_rows(&[0, 3]).is_err());
        assert!(m.det_rows(&[0]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = f7();
        let m = Matrix::from_ints(&f, &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse().unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn text_round_trip() {
        let f = f7();
        let m = Matrix::from_ints(&f, &[&[1, 2], &[3, 6]]);
        assert_eq!(m.to_text(), "1,2;3,6");
        assert!(Matrix::from_text(&f, "1,2;3,6").unwrap().equals(&m));
        assert!(Matrix::from_text(&f, "1,9").is_err());
        assert!(Matrix::from_text(&f, "1,2;3").is_err());
    }
}
