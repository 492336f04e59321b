use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzynorm::Vector;

/// Gram determinants of the normalized vectors below this are treated as
/// dependent.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-9;

/// `n` vectors of ℝ^d, `n ≤ d`, with the outcome of an independence test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSet {
    vectors: Vec<Vector>,
    gram_determinant: f64,
    certified_independent: bool,
}

impl BasisSet {
    /// Builds the set and runs the Gram-determinant test on the normalized
    /// vectors. A dependent set is returned uncertified rather than rejected.
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidSpec("basis must contain at least one vector".into()));
        };
        let dim = first.dim();
        if vectors.iter().any(|v| v.dim() != dim) {
            return Err(Error::InvalidSpec("basis vectors must share a dimension".into()));
        }
        if vectors.len() > dim {
            return Err(Error::InvalidSpec(format!(
                "{} vectors in dimension {dim} cannot be independent",
                vectors.len()
            )));
        }
        let unit: Vec<Vec<f64>> = vectors
            .iter()
            .map(|v| {
                let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if len == 0.0 {
                    vec![0.0; dim]
                } else {
                    v.iter().map(|c| c / len).collect()
                }
            })
            .collect();
        let n = vectors.len();
        let gram = DMatrix::from_fn(n, n, |i, j| {
            unit[i].iter().zip(&unit[j]).map(|(a, b)| a * b).sum::<f64>()
        });
        let gram_determinant = gram.determinant();
        Ok(BasisSet {
            vectors,
            gram_determinant,
            certified_independent: gram_determinant >= INDEPENDENCE_TOLERANCE,
        })
    }

    /// `e₁ … e_dim`.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        Self::new((0..dim).map(|i| Vector::unit(dim, i)).collect())
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn gram_determinant(&self) -> f64 {
        self.gram_determinant
    }

    pub fn certified_independent(&self) -> bool {
        self.certified_independent
    }

    pub(crate) fn require_certified(&self) -> Result<()> {
        if self.certified_independent {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "basis is not certified independent (normalized Gram determinant {:e} < {INDEPENDENCE_TOLERANCE:e})",
                self.gram_determinant
            )))
        }
    }

    /// `Σ βᵢ xᵢ`
    pub fn combine(&self, beta: &[f64]) -> Vector {
        Vector::combination(beta, &self.vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_is_certified() {
        let b = BasisSet::standard(3).unwrap();
        assert!(b.certified_independent());
        assert!((b.gram_determinant() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn near_dependence_is_not_certified() {
        let b = BasisSet::new(vec![vec![1.0, 0.0].into(), vec![1.0, 1e-12].into()]).unwrap();
        assert!(!b.certified_independent());
        assert!(b.require_certified().is_err());
    }

    #[test]
    fn malformed_sets_are_rejected() {
        assert!(BasisSet::new(vec![]).is_err());
        assert!(BasisSet::new(vec![vec![1.0].into(), vec![1.0, 0.0].into()]).is_err());
        assert!(BasisSet::new(vec![vec![1.0].into(), vec![2.0].into()]).is_err());
        let zero = BasisSet::new(vec![vec![0.0, 0.0].into()]).unwrap();
        assert!(!zero.certified_independent());
    }
}
