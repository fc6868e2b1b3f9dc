//! Lie algebras given by exact structure constants.
//!
//! A [`LieAlgebraSpec`] stores the full table `c[i][j][k]` with
//! `[E_i, E_j] = sum_k c[i][j][k] E_k`; antisymmetry is enforced at load
//! time and the Jacobi identity is checked as a polynomial identity.

use crate::error::{Error, Result};
use crate::exact::{ParamSpace, Scalar};
use crate::structure::StructurePack;
use std::sync::Arc;

/// Coefficient tuple of a vector over the basis `{E_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    pub comps: Vec<Scalar>,
}

impl Vector {
    pub fn zero(space: &Arc<ParamSpace>, dim: usize) -> Self {
        Vector {
            comps: vec![Scalar::zero(space); dim],
        }
    }

    pub fn basis(space: &Arc<ParamSpace>, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(space, dim);
        v.comps[i] = Scalar::one(space);
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            comps: self.comps.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector {
            comps: self.comps.iter().map(|a| a * s).collect(),
        }
    }
}

/// A Lie algebra with exact structure constants.
#[derive(Debug, Clone)]
pub struct LieAlgebraSpec {
    dim: usize,
    params: Arc<ParamSpace>,
    /// c[i][j][k] = coefficient of E_k in [E_i, E_j], flattened.
    c: Vec<Scalar>,
}

impl LieAlgebraSpec {
    /// Build from the full table; `c` is indexed `[i][j][k]` flattened in
    /// row-major order and must be antisymmetric in `(i, j)`.
    pub fn new(dim: usize, params: Arc<ParamSpace>, c: Vec<Scalar>) -> Result<Self> {
        if dim == 0 || c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch);
        }
        let alg = LieAlgebraSpec { dim, params, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if alg.c(i, j, k) != &(-alg.c(j, i, k)) {
                        return Err(Error::InvalidStructure(format!(
                            "structure constants not antisymmetric at ({},{},{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The abelian algebra: all brackets zero.
    pub fn abelian(dim: usize, params: Arc<ParamSpace>) -> Self {
        LieAlgebraSpec {
            dim,
            c: vec![Scalar::zero(&params); dim * dim * dim],
            params,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &Arc<ParamSpace> {
        &self.params
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(&self.params, self.dim, i)
    }

    /// `[E_i, E_j]` as a vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        Vector {
            comps: (0..self.dim).map(|k| self.c(i, j, k).clone()).collect(),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.dim() != self.dim || y.dim() != self.dim {
            return Err(Error::DimensionMismatch);
        }
        let mut out = Vector::zero(&self.params, self.dim);
        for i in 0..self.dim {
            if x.comps[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y.comps[j].is_zero() {
                    continue;
                }
                let coeff = &x.comps[i] * &y.comps[j];
                for k in 0..self.dim {
                    if !self.c(i, j, k).is_zero() {
                        out.comps[k] = &out.comps[k] + &(&coeff * self.c(i, j, k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Jacobi identity as a polynomial identity; `None` means pass, a
    /// failure carries the first violating index quadruple and the nonzero
    /// sum there.
    pub fn jacobi_check(&self) -> Option<([usize; 4], Scalar)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut sum = Scalar::zero(&self.params);
                        for m in 0..n {
                            sum = &sum
                                + &(&(self.c(i, j, m) * self.c(m, k, l))
                                    + &(&(self.c(j, k, m) * self.c(m, i, l))
                                        + &(self.c(k, i, m) * self.c(m, j, l))));
                        }
                        if !sum.is_zero() {
                            return Some(([i, j, k, l], sum));
                        }
                    }
                }
            }
        }
        None
    }

    /// Non-Abelian structure condition `[phi X, phi Y] = -[X, Y]` checked
    /// over all basis pairs.
    pub fn non_abelian_structure_check(&self, s: &StructurePack) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let phi_i = s.apply_phi(&self.basis(i));
                let phi_j = s.apply_phi(&self.basis(j));
                let lhs = self.bracket(&phi_i, &phi_j).unwrap();
                let rhs = self.bracket_basis(i, j).neg();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
