//! Dense matrices over a finite field and Gauss–Jordan elimination.

use super::field::{Field, Gf};
use super::subspace::Subspace;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Gf::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Gf::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Gf>]) -> Result<Matrix, AlgebraError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Gf] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Gf] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Gf>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Gf]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Gf]) -> Vec<Gf> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    /// `vᵀ · self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Gf]) -> Vec<Gf> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Gf::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![Gf::ZERO; other.cols];
            for k in 0..self.cols {
                self.field.axpy(&mut acc, self[(i, k)], other.row(k));
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// In-place reduced row-echelon form; returns the pivot columns.
    /// Zero rows are left at the bottom (not removed).
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let field = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self[(r, c)]);
            field.scale(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            let pivot_row: Vec<Gf> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if !f.is_zero() {
                    let nf = field.neg(f);
                    field.axpy(&mut self.data[i * cols + c..(i + 1) * cols], nf, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{v : self · v = 0}` as a subspace of `F_q^cols`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let field = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Gf::ZERO; self.cols];
            v[free] = Gf::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(matrix[(r, free)]);
            }
            basis.push(v);
        }
        Subspace::from_vectors(field, self.cols, basis).expect("kernel vectors have ambient length")
    }

    /// One solution of `self · x = b` with all free variables set to zero, if consistent.
    pub fn solve(&self, b: &[Gf]) -> Option<Vec<Gf>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Gf::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)];
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Gf;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Gf {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gf {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = Gf(rng.gen_range(0..f.order()));
            }
        }
        m
    }

    #[test]
    fn identity_and_zero() {
        let f = Field::new(5, 1).unwrap();
        let id = Matrix::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(id.kernel().dim(), 0);
        let z = Matrix::zeros(&f, 2, 3);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.kernel().dim(), 3);
    }

    #[test]
    fn rank_nullity_and_kernel_soundness() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = random_matrix(&f, 5, 8, &mut rng);
            let rank = m.rank();
            let ker = m.kernel();
            assert_eq!(rank + ker.dim(), 8);
            for v in ker.basis_vectors() {
                assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
            // rref is idempotent
            let once = m.rref().matrix;
            assert_eq!(once.rref().matrix, once);
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Field::new(7, 1).unwrap();
        let id = Matrix::identity(&f, 3);
        let b = vec![Gf(1), Gf(2), Gf(6)];
        assert_eq!(id.solve(&b).unwrap(), b);

        let m = Matrix::from_rows(&f, 2, &[vec![Gf(1), Gf(1)], vec![Gf(2), Gf(2)]]).unwrap();
        assert!(m.solve(&[Gf(1), Gf(3)]).is_none());

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let m = random_matrix(&f, 4, 6, &mut rng);
            let x: Vec<Gf> = (0..6).map(|_| Gf(rng.gen_range(0..7))).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).unwrap();
            assert_eq!(m.mul_vec(&sol), b);
        }
    }

    #[test]
    fn free_variables_are_zero() {
        let f = Field::new(5, 1).unwrap();
        let m = Matrix::from_rows(&f, 3, &[vec![Gf(1), Gf(0), Gf(2)]]).unwrap();
        assert_eq!(m.solve(&[Gf(4)]).unwrap(), vec![Gf(4), Gf(0), Gf(0)]);
    }
}
