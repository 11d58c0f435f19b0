use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LatticePoint, LatticePolytope};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `x -> matrix * x + translation` with `|det(matrix)| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularAffineMap {
    matrix: IntMatrix,
    translation: Vec<BigInt>,
}

impl UnimodularAffineMap {
    pub fn new(matrix: IntMatrix, translation: Vec<BigInt>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if translation.len() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: translation.len(),
            });
        }
        let det = matrix.determinant()?;
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular { det });
        }
        Ok(UnimodularAffineMap {
            matrix,
            translation,
        })
    }

    pub fn linear(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, vec![BigInt::zero(); n])
    }

    pub fn identity(dim: usize) -> Self {
        UnimodularAffineMap {
            matrix: IntMatrix::identity(dim),
            translation: vec![BigInt::zero(); dim],
        }
    }

    pub fn translation(t: Vec<BigInt>) -> Self {
        UnimodularAffineMap {
            matrix: IntMatrix::identity(t.len()),
            translation: t,
        }
    }

    /// `x_i <- x_i + c * x_j`.
    pub fn shear(dim: usize, i: usize, j: usize, c: BigInt) -> Result<Self> {
        if i >= dim || j >= dim || i == j {
            return Err(Error::InvalidArgument(format!(
                "shear indices ({i}, {j}) invalid in dimension {dim}"
            )));
        }
        let mut m = IntMatrix::identity(dim);
        m.set(i, j, c);
        Ok(UnimodularAffineMap {
            matrix: m,
            translation: vec![BigInt::zero(); dim],
        })
    }

    /// Exchanges coordinates `i` and `j`.
    pub fn swap(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim {
            return Err(Error::InvalidArgument(format!(
                "swap indices ({i}, {j}) invalid in dimension {dim}"
            )));
        }
        let mut m = IntMatrix::identity(dim);
        if i != j {
            m.set(i, i, BigInt::zero());
            m.set(j, j, BigInt::zero());
            m.set(i, j, BigInt::one());
            m.set(j, i, BigInt::one());
        }
        Ok(UnimodularAffineMap {
            matrix: m,
            translation: vec![BigInt::zero(); dim],
        })
    }

    /// `x_i <- -x_i`.
    pub fn negate(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::InvalidArgument(format!(
                "negate index {i} invalid in dimension {dim}"
            )));
        }
        let mut m = IntMatrix::identity(dim);
        m.set(i, i, -BigInt::one());
        Ok(UnimodularAffineMap {
            matrix: m,
            translation: vec![BigInt::zero(); dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation_vector(&self) -> &[BigInt] {
        &self.translation
    }

    pub fn apply_point(&self, p: &LatticePoint) -> LatticePoint {
        let mut v = self.matrix.mul_vec(p.coords());
        for (x, t) in v.iter_mut().zip(&self.translation) {
            *x += t;
        }
        LatticePoint::new(v)
    }

    /// Image polytope; generators are mapped, so `L(T(P)) = T(L(P))` holds
    /// because `T` and its inverse are integral.
    pub fn apply(&self, p: &LatticePolytope) -> Result<LatticePolytope> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        LatticePolytope::new(p.generators().iter().map(|g| self.apply_point(g)).collect())
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &UnimodularAffineMap) -> Result<UnimodularAffineMap> {
        let matrix = self.matrix.mul(&inner.matrix)?;
        let mut translation = self.matrix.mul_vec(&inner.translation);
        for (x, t) in translation.iter_mut().zip(&self.translation) {
            *x += t;
        }
        Ok(UnimodularAffineMap {
            matrix,
            translation,
        })
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let inv = self
            .matrix
            .inverse_integer()
            .expect("checked unimodular at construction");
        let translation = inv.mul_vec(&self.translation).into_iter().map(|x| -x).collect();
        UnimodularAffineMap {
            matrix: inv,
            translation,
        }
    }
}
