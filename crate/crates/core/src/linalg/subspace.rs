//! Row reduction over a field, subspaces in canonical form, eigenspaces.

use crate::gf::{Fe, Field};
use crate::ring::Ring;

use super::matrix::{Matrix, MatrixError};

impl Matrix<Field> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<Field>, Vec<usize>) {
        let f = self.ring.clone();
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.n_cols() {
            if r == a.n_rows() {
                break;
            }
            let Some(p) = (r..a.n_rows()).find(|&i| a.get(i, c).0 != 0) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
            a.scale_row(r, &inv);
            for i in 0..a.n_rows() {
                if i != r && a.get(i, c).0 != 0 {
                    let factor = f.neg(a.get(i, c));
                    a.add_row_multiple(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by elimination.
    pub fn det_gauss(&self) -> Result<Fe, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.n_rows(), self.n_cols()));
        }
        let f = self.ring.clone();
        let n = self.n_rows();
        let mut a = self.clone();
        let mut det = Fe(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a.get(i, c).0 != 0) else {
                return Ok(Fe(0));
            };
            if p != c {
                a.swap_rows(p, c);
                det = f.neg(&det);
            }
            let piv = *a.get(c, c);
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for i in c + 1..n {
                if a.get(i, c).0 != 0 {
                    let factor = f.neg(&f.mul(a.get(i, c), &inv));
                    a.add_row_multiple(i, c, &factor);
                }
            }
        }
        Ok(det)
    }

    /// Basis of the null space `{v : M v = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let f = self.ring.clone();
        let (r, pivots) = self.rref();
        let n = self.n_cols();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Fe(0); n];
                v[fc] = Fe(1);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect();
        Subspace::span(&f, n, vecs)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        let cols = (0..self.n_cols()).map(|j| self.column(j)).collect();
        Subspace::span(&self.ring, self.n_rows(), cols)
    }

    /// `V_lambda(M) = ker(M - lambda I)`.
    pub fn eigenspace(&self, lambda: Fe) -> Subspace {
        let shifted = self.sub(&Matrix::identity(&self.ring, self.n_rows()).scale(&lambda));
        shifted.kernel()
    }

    /// `E_lambda(M) = V_lambda(M) ∩ Im(M - I)`.
    pub fn e_lambda(&self, lambda: Fe) -> Subspace {
        let m1 = self.sub(&Matrix::identity(&self.ring, self.n_rows()));
        self.eigenspace(lambda).intersect(&m1.image())
    }
}

/// A subspace of `F^n`, stored as the nonzero rows of its reduced row echelon
/// basis, so equal subspaces have identical representations.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub field: Field,
    pub ambient_dim: usize,
    basis: Vec<Vec<Fe>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn span(field: &Field, ambient_dim: usize, vectors: Vec<Vec<Fe>>) -> Subspace {
        if vectors.is_empty() {
            return Subspace { field: field.clone(), ambient_dim, basis: Vec::new() };
        }
        let m = Matrix::from_rows(field, vectors).expect("vectors of equal length");
        assert_eq!(m.n_cols(), ambient_dim, "vector length differs from ambient dimension");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field: field.clone(), ambient_dim, basis }
    }

    pub fn zero(field: &Field, ambient_dim: usize) -> Subspace {
        Self::span(field, ambient_dim, Vec::new())
    }

    pub fn whole(field: &Field, ambient_dim: usize) -> Subspace {
        Matrix::identity(field, ambient_dim).image()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Self::span(&self.field, self.ambient_dim, vs).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(&self.field, self.ambient_dim, vs)
    }

    /// Vectors orthogonal to every basis vector under the dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::whole(&self.field, self.ambient_dim);
        }
        Matrix::from_rows(&self.field, self.basis.clone()).expect("basis rows").kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.basis.is_empty() || other.basis.is_empty() {
            return Self::zero(&self.field, self.ambient_dim);
        }
        // u = sum c_i u_i lies in W iff it is killed by every vector of W^perp.
        let f = &self.field;
        let ann = other.annihilator();
        if ann.basis.is_empty() {
            return self.clone();
        }
        let dot = |a: &[Fe], b: &[Fe]| a.iter().zip(b).fold(Fe(0), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
        let k = Matrix::from_fn(f, ann.dim(), self.dim(), |i, j| dot(&ann.basis[i], &self.basis[j]));
        let coeffs = k.kernel();
        let vecs = coeffs
            .basis
            .iter()
            .map(|c| {
                (0..self.ambient_dim)
                    .map(|t| c.iter().zip(&self.basis).fold(Fe(0), |acc, (ci, u)| f.add(&acc, &f.mul(ci, &u[t]))))
                    .collect()
            })
            .collect();
        Self::span(f, self.ambient_dim, vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_image_dimensions() {
        let f = Field::new(5, 1).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        for v in k.basis() {
            assert!(m.apply(v).iter().all(|x| x.0 == 0));
        }
        assert_eq!(m.image().dim(), 2);
    }

    #[test]
    fn canonical_basis_makes_equal_spans_equal() {
        let f = Field::new(7, 1).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let u = Subspace::span(&f, 3, vec![e(&[1, 1, 0]), e(&[0, 1, 1])]);
        let w = Subspace::span(&f, 3, vec![e(&[1, 2, 1]), e(&[1, 0, -1])]);
        assert_eq!(u, w);
    }

    #[test]
    fn intersections() {
        let f = Field::new(3, 1).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let u = Subspace::span(&f, 4, vec![e(&[1, 0, 0, 0]), e(&[0, 1, 0, 0])]);
        let w = Subspace::span(&f, 4, vec![e(&[1, 1, 0, 0]), e(&[0, 0, 1, 0])]);
        let i = u.intersect(&w);
        assert_eq!(i, Subspace::span(&f, 4, vec![e(&[1, 1, 0, 0])]));
        assert_eq!(u.intersect(&Subspace::whole(&f, 4)), u);
        assert_eq!(u.intersect(&Subspace::zero(&f, 4)).dim(), 0);
    }

    #[test]
    fn eigenspaces_of_identity() {
        let f = Field::new(5, 1).unwrap();
        let id = Matrix::identity(&f, 8);
        assert_eq!(id.eigenspace(Fe(1)).dim(), 8);
        assert_eq!(id.e_lambda(Fe(1)).dim(), 0);
        assert_eq!(id.eigenspace(Fe(2)).dim(), 0);
    }

    #[test]
    fn gauss_det_matches_berkowitz() {
        let f = Field::new(2, 4).unwrap();
        let m = Matrix::from_fn(&f, 6, 6, |i, j| Fe(((i * 7 + j * 3 + i * j) % 16) as u64));
        assert_eq!(m.det_gauss().unwrap(), m.det().unwrap());
    }
}
