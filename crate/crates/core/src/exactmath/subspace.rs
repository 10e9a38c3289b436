use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{HomkitError, Result};

/// A linear subspace of `Q^n` given by a basis of independent coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    /// Span of arbitrary vectors; dependent vectors are dropped, keeping the
    /// first independent ones in order.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(HomkitError::DimensionMismatch {
                    context: "subspace vector",
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            let mut candidate = basis.clone();
            candidate.push(v.clone());
            if rank_of(ambient_dim, &candidate) == candidate.len() {
                basis = candidate;
            }
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Wraps vectors the caller guarantees are independent (checked in debug builds).
    pub(crate) fn from_independent(ambient_dim: usize, basis: Vec<Vec<Rational>>) -> Self {
        debug_assert_eq!(rank_of(ambient_dim, &basis), basis.len());
        Subspace { ambient_dim, basis }
    }

    /// Errors with `InvariantViolation` if the vectors are dependent.
    pub fn with_basis(ambient_dim: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient_dim) {
            return Err(HomkitError::DimensionMismatch {
                context: "subspace vector",
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if rank_of(ambient_dim, &basis) != basis.len() {
            return Err(HomkitError::InvariantViolation(
                "subspace basis vectors are linearly dependent".into(),
            ));
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn whole(n: usize) -> Self {
        Subspace::from_independent(n, (0..n).map(|i| super::vector::unit(n, i)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// `true` iff adding `v` does not raise the rank.
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "subspace membership",
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if super::vector::is_zero(v) {
            return Ok(true);
        }
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        Ok(rank_of(self.ambient_dim, &all) == self.basis.len())
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.ambient_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "subspace coordinates",
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let k = self.basis.len();
        // Solve [b_1 .. b_k | v] by elimination on the augmented column matrix.
        let aug = Matrix::from_fn(self.ambient_dim, k + 1, |i, j| {
            if j < k {
                self.basis[j][i].clone()
            } else {
                v[i].clone()
            }
        });
        let rref = aug.rref();
        if rref.pivots.last() == Some(&k) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); k];
        for (row, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.matrix[(row, k)].clone();
        }
        Ok(Some(x))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.is_subspace_of(other)?)
    }
}

fn rank_of(ambient_dim: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec())
        .map(|m| m.rank())
        .unwrap_or_else(|_| panic!("vectors of length {ambient_dim} expected"))
}

#[cfg(test)]
mod tests {
    use super::super::vector::from_i64;
    use super::*;

    #[test]
    fn membership_examples() {
        let line = Subspace::span(2, &[from_i64(&[1, 0])]).unwrap();
        assert!(line.contains(&from_i64(&[2, 0])).unwrap());
        assert!(!line.contains(&from_i64(&[0, 1])).unwrap());
        let plane = Subspace::span(2, &[from_i64(&[1, 1]), from_i64(&[1, -1])]).unwrap();
        assert!(plane.contains(&from_i64(&[3, 5])).unwrap());
        assert!(matches!(
            line.contains(&from_i64(&[1, 0, 0])),
            Err(HomkitError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coordinates_solve_the_span() {
        let plane = Subspace::span(3, &[from_i64(&[1, 1, 0]), from_i64(&[0, 1, 1])]).unwrap();
        let c = plane.coordinates(&from_i64(&[2, 5, 3])).unwrap().unwrap();
        assert_eq!(c, from_i64(&[2, 3]));
        assert_eq!(plane.coordinates(&from_i64(&[0, 0, 1])).unwrap(), None);
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let s = Subspace::span(2, &[from_i64(&[1, 2]), from_i64(&[2, 4]), from_i64(&[0, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(Subspace::with_basis(2, vec![from_i64(&[1, 2]), from_i64(&[2, 4])]).is_err());
    }
}
