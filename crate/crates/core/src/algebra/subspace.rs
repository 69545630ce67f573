//! Subspaces of `F_q^m` held in canonical reduced row-echelon form.

use super::field::{Field, Gf};
use super::matrix::Matrix;
use super::AlgebraError;

/// A subspace of `F_q^m`. The basis is the nonzero part of an rref matrix,
/// so two subspaces are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<Vec<Gf>>) -> Result<Subspace, AlgebraError> {
        let m = Matrix::from_rows(field, ambient, &vectors)?;
        Ok(Self::row_space(&m))
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Subspace {
        let mut m = m.clone();
        let pivots = m.rref_in_place();
        let rows: Vec<Vec<Gf>> = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_rows(m.field(), m.cols(), &rows).expect("rows come from the matrix"),
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// The rref basis as a `dim × ambient` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Gf>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, len: usize) -> Result<(), AlgebraError> {
        if len == self.ambient {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.ambient,
                found: len,
            })
        }
    }

    /// Residue of `v` after eliminating the pivot coordinates; zero iff `v` is in the subspace.
    pub fn reduce(&self, v: &[Gf]) -> Vec<Gf> {
        let field = self.field();
        let mut r = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc];
            if !c.is_zero() {
                field.axpy(&mut r, field.neg(c), self.basis.row(i));
            }
        }
        r
    }

    pub fn contains(&self, v: &[Gf]) -> Result<bool, AlgebraError> {
        self.check_len(v.len())?;
        Ok(self.reduce(v).iter().all(|x| x.is_zero()))
    }

    /// Coordinates of `v` in the rref basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Gf]) -> Option<Vec<Gf>> {
        if v.len() != self.ambient || !self.reduce(v).iter().all(|x| x.is_zero()) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, coeffs: &[Gf]) -> Vec<Gf> {
        self.basis.vec_mul(coeffs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, AlgebraError> {
        other.check_len(self.ambient)?;
        Ok((0..self.dim()).all(|i| other.reduce(self.basis.row(i)).iter().all(|x| x.is_zero())))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_len(other.ambient)?;
        let mut m = self.basis.clone();
        for i in 0..other.dim() {
            m.push_row(other.basis.row(i));
        }
        Ok(Subspace::row_space(&m))
    }

    /// Intersection by the Zassenhaus construction: reduce `[[U, U], [V, 0]]`;
    /// rows whose left half vanishes carry a basis of `U ∩ V` on the right.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_len(other.ambient)?;
        let m = self.ambient;
        let field = self.field();
        let mut z = Matrix::zeros(field, self.dim() + other.dim(), 2 * m);
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            z.row_mut(i)[..m].copy_from_slice(row);
            z.row_mut(i)[m..].copy_from_slice(row);
        }
        for i in 0..other.dim() {
            z.row_mut(self.dim() + i)[..m].copy_from_slice(other.basis.row(i));
        }
        let pivots = z.rref_in_place();
        let rows: Vec<Vec<Gf>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= m)
            .map(|(r, _)| z.row(r)[m..].to_vec())
            .collect();
        Subspace::from_vectors(field, m, rows)
    }

    /// `{h : ⟨u, h⟩ = 0 for all u in self}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        self.basis.kernel()
    }

    /// A complement spanned by the unit vectors at the non-pivot coordinates.
    pub fn complement(&self) -> Subspace {
        let field = self.field();
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows: Vec<Vec<Gf>> = (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![Gf::ZERO; self.ambient];
                v[c] = Gf::ONE;
                v
            })
            .collect();
        Subspace::from_vectors(field, self.ambient, rows).expect("unit vectors have ambient length")
    }

    /// Zero-pads every basis vector to a larger ambient dimension. The rref form is preserved.
    pub fn embed(&self, ambient: usize) -> Subspace {
        assert!(ambient >= self.ambient, "cannot embed into a smaller space");
        let field = self.field();
        let rows: Vec<Vec<Gf>> = (0..self.dim())
            .map(|i| {
                let mut v = self.basis.row(i).to_vec();
                v.resize(ambient, Gf::ZERO);
                v
            })
            .collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(field, ambient, &rows).expect("padded rows"),
            pivots: self.pivots.clone(),
        }
    }

    /// Image of the subspace under the linear map `v ↦ v · m` (rows of `m` index the ambient coordinates).
    pub fn map_rows(&self, m: &Matrix) -> Result<Subspace, AlgebraError> {
        self.check_len(m.rows())?;
        let img = self.basis.mul(m)?;
        Ok(Subspace::row_space(&img))
    }
}

/// Splits `v` into components from subspaces that form a direct sum.
///
/// Fails with [`AlgebraError::NotDirectSum`] if the parts overlap and with
/// [`AlgebraError::OutsideSpan`] if `v` is not in their sum.
pub fn decompose(v: &[Gf], parts: &[&Subspace]) -> Result<Vec<Vec<Gf>>, AlgebraError> {
    let first = parts.first().ok_or(AlgebraError::NotDirectSum)?;
    let field = first.field().clone();
    let ambient = first.ambient_dim();
    if v.len() != ambient {
        return Err(AlgebraError::DimensionMismatch {
            expected: ambient,
            found: v.len(),
        });
    }
    let mut stacked = Matrix::zeros(&field, 0, ambient);
    for part in parts {
        part.check_len(ambient)?;
        for i in 0..part.dim() {
            stacked.push_row(part.basis().row(i));
        }
    }
    if stacked.rank() != stacked.rows() {
        return Err(AlgebraError::NotDirectSum);
    }
    let coeffs = stacked.transpose().solve(v).ok_or(AlgebraError::OutsideSpan)?;
    let mut out = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for part in parts {
        out.push(part.combine(&coeffs[offset..offset + part.dim()]));
        offset += part.dim();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_subspace(f: &Field, m: usize, k: usize, rng: &mut ChaCha8Rng) -> Subspace {
        let rows = (0..k)
            .map(|_| (0..m).map(|_| Gf(rng.gen_range(0..f.order()))).collect())
            .collect();
        Subspace::from_vectors(f, m, rows).unwrap()
    }

    /// Independent intersection: vectors of U killed by every parity check of V.
    fn intersection_by_checks(u: &Subspace, v: &Subspace) -> Subspace {
        let f = u.field();
        let checks = v.orthogonal_complement();
        if checks.dim() == 0 {
            return u.clone();
        }
        let cond = u.basis().mul(&checks.basis().transpose()).unwrap();
        let coeffs = cond.transpose().kernel();
        let rows = coeffs.basis_vectors().iter().map(|c| u.combine(c)).collect();
        Subspace::from_vectors(f, u.ambient_dim(), rows).unwrap()
    }

    #[test]
    fn trivial_intersections() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_subspace(&f, 6, 3, &mut rng);
        assert_eq!(u.intersection(&u).unwrap(), u);
        let z = Subspace::zero(&f, 6);
        assert_eq!(u.intersection(&z).unwrap(), z);
        assert!(u.intersection(&Subspace::zero(&f, 5)).is_err());
    }

    #[test]
    fn dimension_formula_on_random_pairs() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let du = rng.gen_range(0..8);
            let dv = rng.gen_range(0..8);
            let u = random_subspace(&f, 10, du, &mut rng);
            let v = random_subspace(&f, 10, dv, &mut rng);
            let s = u.sum(&v).unwrap();
            let i = u.intersection(&v).unwrap();
            assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            assert_eq!(i, intersection_by_checks(&u, &v));
            assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&v).unwrap());
        }
    }

    #[test]
    fn canonical_form_is_presentation_independent() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_subspace(&f, 7, 4, &mut rng);
        // Re-span from random combinations of the basis.
        let combos: Vec<Vec<Gf>> = (0..6)
            .map(|_| {
                let c: Vec<Gf> = (0..u.dim()).map(|_| Gf(rng.gen_range(0..5))).collect();
                u.combine(&c)
            })
            .chain(u.basis_vectors())
            .collect();
        assert_eq!(Subspace::from_vectors(&f, 7, combos).unwrap(), u);
    }

    #[test]
    fn decompose_direct_sum() {
        let f = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let full = random_subspace(&f, 8, 8, &mut rng);
        assert_eq!(full.dim(), 8);
        let vecs = full.basis_vectors();
        // Scramble a basis so parts are not aligned with coordinates.
        let mixed: Vec<Vec<Gf>> = (0..8)
            .map(|i| {
                let mut v = vecs[i].clone();
                f.axpy(&mut v, Gf(3), &vecs[(i + 1) % 8]);
                v
            })
            .collect();
        let u1 = Subspace::from_vectors(&f, 8, mixed[0..3].to_vec()).unwrap();
        let u2 = Subspace::from_vectors(&f, 8, mixed[3..5].to_vec()).unwrap();
        let z = u1.sum(&u2).unwrap().complement();
        assert_eq!(u1.dim() + u2.dim() + z.dim(), 8);

        let a = u1.combine(&[Gf(1), Gf(2), Gf(3)]);
        let parts = decompose(&a, &[&u1, &u2, &z]).unwrap();
        assert_eq!(parts[0], a);
        assert!(parts[1].iter().chain(&parts[2]).all(|x| x.is_zero()));

        let b = u2.combine(&[Gf(5), Gf(1)]);
        let mut ab = a.clone();
        f.axpy(&mut ab, Gf::ONE, &b);
        let parts = decompose(&ab, &[&u1, &u2, &z]).unwrap();
        assert_eq!(parts[0], a);
        assert_eq!(parts[1], b);

        for _ in 0..10 {
            let v: Vec<Gf> = (0..8).map(|_| Gf(rng.gen_range(0..7))).collect();
            let parts = decompose(&v, &[&u1, &u2, &z]).unwrap();
            let mut total = vec![Gf::ZERO; 8];
            for p in &parts {
                f.axpy(&mut total, Gf::ONE, p);
            }
            assert_eq!(total, v);
        }
    }

    #[test]
    fn decompose_errors() {
        let f = Field::new(5, 1).unwrap();
        let e1 = Subspace::from_vectors(&f, 3, vec![vec![Gf(1), Gf(0), Gf(0)]]).unwrap();
        let e12 = Subspace::from_vectors(&f, 3, vec![vec![Gf(1), Gf(0), Gf(0)], vec![Gf(0), Gf(1), Gf(0)]]).unwrap();
        assert_eq!(
            decompose(&[Gf(1), Gf(0), Gf(0)], &[&e1, &e12]).unwrap_err(),
            AlgebraError::NotDirectSum
        );
        assert_eq!(
            decompose(&[Gf(0), Gf(0), Gf(1)], &[&e1]).unwrap_err(),
            AlgebraError::OutsideSpan
        );
    }
}
