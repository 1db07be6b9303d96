use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `F^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Two subspaces are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn spanned_by(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        let m = Matrix::from_rows_with_width(vectors, ambient)?;
        let ech = m.rref();
        let rank = ech.pivots.len();
        let rows = ech.matrix.row_vecs().into_iter().take(rank).collect();
        Ok(Subspace {
            ambient,
            basis: Matrix::from_rows_with_width(rows, ambient)?,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the given standard basis vectors (0-based indices).
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors = indices
            .into_iter()
            .map(|k| {
                let mut v = vec![F::zero(); ambient];
                v[k] = F::one();
                v
            })
            .collect();
        Self::spanned_by(ambient, vectors).expect("standard vectors fit the ambient space")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::AmbientMismatch(self.ambient, o.ambient));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        if v.iter().all(Field::is_zero) {
            return true;
        }
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Matrix::from_rows_with_width(rows, self.ambient)
            .map(|m| m.rank() == self.dim())
            .unwrap_or(false)
    }

    pub fn sum(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut rows = self.basis_vectors();
        rows.extend(o.basis_vectors());
        Self::spanned_by(self.ambient, rows)
    }

    /// Vectors orthogonal to `self` under the standard (non-Hermitian) pairing.
    pub fn orthogonal_complement(&self) -> Self {
        self.basis.nullspace()
    }

    /// `a ∩ b = (a^⊥ + b^⊥)^⊥`, valid over any field.
    pub fn intersect(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self
            .orthogonal_complement()
            .sum(&o.orthogonal_complement())?
            .orthogonal_complement())
    }

    pub fn contains(&self, o: &Self) -> Result<bool> {
        self.check(o)?;
        Ok(self.sum(o)?.dim() == self.dim())
    }

    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        let vectors = self
            .basis_vectors()
            .iter()
            .map(|v| m.left_apply(v))
            .collect();
        Self::spanned_by(m.cols(), vectors)
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        self.basis.transpose().solve(v).ok().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GaussianRational as G;

    fn v(xs: &[i64]) -> Vec<G> {
        xs.iter().map(|&x| G::from_int(x)).collect()
    }

    #[test]
    fn lattice_examples() {
        let e1 = Subspace::spanned_by(2, vec![v(&[1, 0])]).unwrap();
        let e2 = Subspace::spanned_by(2, vec![v(&[0, 1])]).unwrap();
        let diag = Subspace::spanned_by(2, vec![v(&[1, 1])]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.sum(&diag).unwrap(), Subspace::full(2));
        let plane = Subspace::spanned_by(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let anti = Subspace::spanned_by(2, vec![v(&[1, -1])]).unwrap();
        assert!(plane.contains(&anti).unwrap());
        assert!(!e1.contains(&anti).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::<G>::full(2);
        let b = Subspace::<G>::full(3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let a = Subspace::spanned_by(3, vec![v(&[1, 2, 3]), v(&[2, 4, 7])]).unwrap();
        let b = Subspace::spanned_by(3, vec![v(&[0, 0, 5]), v(&[3, 6, 0])]).unwrap();
        assert_eq!(a, b);
    }
}
