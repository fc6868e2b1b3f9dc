//! Connections on left-invariant data: the Levi-Civita connection from the
//! Koszul formula, covariant derivatives of invariant tensors, the
//! fundamental tensor `F(x,y,z) = g((nabla_x phi) y, z)`, the square norm
//! of `nabla phi`, the Killing test for `xi`, and the Chevalley-Eilenberg
//! exterior derivative of invariant forms.

use crate::error::{Error, Result};
use crate::exact::{rat, Scalar};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::structure::StructurePack;
use crate::tensor::{Role, Tensor};

/// Which connection a coefficient table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    PhiKt,
}

/// Coefficient table `Gamma[i][j][k]` with
/// `nabla_{E_i} E_j = sum_k Gamma[i][j][k] E_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    pub kind: ConnectionKind,
    gamma: Vec<Scalar>,
}

impl Connection {
    pub(crate) fn from_table(dim: usize, kind: ConnectionKind, gamma: Vec<Scalar>) -> Self {
        debug_assert_eq!(gamma.len(), dim * dim * dim);
        Connection { dim, kind, gamma }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    #[cfg(test)]
    pub(crate) fn gamma_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        &mut self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// `nabla_{E_i} E_j` as a vector.
    pub fn derive_basis(&self, i: usize, j: usize) -> Vector {
        Vector {
            comps: (0..self.dim).map(|k| self.gamma(i, j, k).clone()).collect(),
        }
    }

    /// Bilinear extension of the coefficient table; in the left-invariant
    /// setting there is no directional-derivative term.
    pub fn derive_vector(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.dim() != self.dim || y.dim() != self.dim {
            return Err(Error::DimensionMismatch);
        }
        let space = self.gamma[0].space().clone();
        let mut out = Vector::zero(&space, self.dim);
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
                    if !self.gamma(i, j, k).is_zero() {
                        out.comps[k] = &out.comps[k] + &(&coeff * self.gamma(i, j, k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(nabla_x phi) y = nabla_x (phi y) - phi (nabla_x y)` on basis
    /// directions.
    pub fn derive_phi(&self, s: &StructurePack, i: usize, j: usize) -> Vector {
        let phi_j = s.apply_phi(&Vector::basis(s.space(), self.dim, j));
        let a = self
            .derive_vector(&Vector::basis(s.space(), self.dim, i), &phi_j)
            .unwrap();
        let b = s.apply_phi(&self.derive_basis(i, j));
        a.sub(&b)
    }

    /// `nabla_{E_i} xi`.
    pub fn derive_xi(&self, s: &StructurePack, i: usize) -> Vector {
        self.derive_vector(&Vector::basis(s.space(), self.dim, i), &s.xi)
            .unwrap()
    }

    /// `(nabla_{E_i} eta) E_j = -eta(nabla_{E_i} E_j)`.
    pub fn derive_eta(&self, s: &StructurePack, i: usize, j: usize) -> Scalar {
        -&s.eta_of(&self.derive_basis(i, j))
    }

    /// Leibniz covariant derivative of an invariant covariant tensor; the
    /// result has valence `p + 1` with the direction as the first index.
    pub fn covariant_derivative(&self, t: &Tensor) -> Tensor {
        let space = self.gamma[0].space();
        let p = t.valence();
        let mut out = Tensor::zeros(space, self.dim, p + 1, Role::Generic);
        for idx in out.indices() {
            let dir = idx[0];
            let rest = &idx[1..];
            let mut acc = Scalar::zero(space);
            for slot in 0..p {
                for m in 0..self.dim {
                    let gamma = self.gamma(dir, rest[slot], m);
                    if gamma.is_zero() {
                        continue;
                    }
                    let mut inner = rest.to_vec();
                    inner[slot] = m;
                    acc = &acc - &(gamma * t.get(&inner));
                }
            }
            out.set(&idx, acc);
        }
        out
    }

    /// Torsion `T(x,y) = nabla_x y - nabla_y x - [x,y]`, lowered to a
    /// (0,3)-tensor with `g`.
    pub fn torsion(&self, alg: &LieAlgebraSpec, s: &StructurePack) -> Tensor {
        let space = self.gamma[0].space();
        let n = self.dim;
        let mut out = Tensor::zeros(space, n, 3, Role::Generic);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = Scalar::zero(space);
                    for m in 0..n {
                        let up = &(self.gamma(i, j, m) - self.gamma(j, i, m)) - alg.c(i, j, m);
                        if !up.is_zero() {
                            acc = &acc + &(&up * s.g.get(m, k));
                        }
                    }
                    out.set(&[i, j, k], acc);
                }
            }
        }
        out
    }
}

/// Levi-Civita connection from the Koszul formula for left-invariant
/// metrics: `2 g(nabla_X Y, Z) = g([X,Y],Z) + g([Z,X],Y) + g([Z,Y],X)`.
pub fn levi_civita(alg: &LieAlgebraSpec, s: &StructurePack) -> Result<Connection> {
    let n = alg.dim();
    let space = alg.params().clone();
    let half = rat(1, 2);
    let mut gamma = vec![Scalar::zero(&space); n * n * n];
    for i in 0..n {
        for j in 0..n {
            // rhs_k = g([E_i,E_j],E_k) + g([E_k,E_i],E_j) + g([E_k,E_j],E_i)
            let mut rhs = Vec::with_capacity(n);
            for k in 0..n {
                let e_i = alg.basis(i);
                let e_j = alg.basis(j);
                let e_k = alg.basis(k);
                let v = &(&s.g_of(&alg.bracket_basis(i, j), &e_k)
                    + &s.g_of(&alg.bracket_basis(k, i), &e_j))
                    + &s.g_of(&alg.bracket_basis(k, j), &e_i);
                rhs.push(v);
            }
            let raised = s.raise(&rhs);
            for m in 0..n {
                gamma[(i * n + j) * n + m] = raised.comps[m].scale(&half);
            }
        }
    }
    Ok(Connection::from_table(n, ConnectionKind::LeviCivita, gamma))
}

/// `F(x,y,z) = g((nabla_x phi) y, z)` over all basis triples.
pub fn fundamental_f(s: &StructurePack, nabla: &Connection) -> Tensor {
    let n = s.dim();
    let space = s.space();
    let mut out = Tensor::zeros(space, n, 3, Role::F);
    for i in 0..n {
        for j in 0..n {
            let dphi = nabla.derive_phi(s, i, j);
            for k in 0..n {
                let v = s.g_of(&dphi, &Vector::basis(space, n, k));
                out.set(&[i, j, k], v);
            }
        }
    }
    out
}

/// `g^{ij} g^{ks} g((nabla_{e_i} phi) e_k, (nabla_{e_j} phi) e_s)`.
pub fn square_norm_nabla_phi(s: &StructurePack, nabla: &Connection) -> Scalar {
    let n = s.dim();
    let space = s.space();
    let mut acc = Scalar::zero(space);
    for i in 0..n {
        for j in 0..n {
            if s.g_inv.get(i, j).is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if s.g_inv.get(k, l).is_zero() {
                        continue;
                    }
                    let inner = s.g_of(&nabla.derive_phi(s, i, k), &nabla.derive_phi(s, j, l));
                    if !inner.is_zero() {
                        acc = &acc + &(&(s.g_inv.get(i, j) * s.g_inv.get(k, l)) * &inner);
                    }
                }
            }
        }
    }
    acc
}

/// `-2 g^{ij} g(nabla_{e_i} xi, nabla_{e_j} xi)`; equals the square norm of
/// `nabla phi` on vertical-class inputs.
pub fn square_norm_nabla_phi_vertical(s: &StructurePack, nabla: &Connection) -> Scalar {
    let n = s.dim();
    let space = s.space();
    let mut acc = Scalar::zero(space);
    for i in 0..n {
        for j in 0..n {
            if s.g_inv.get(i, j).is_zero() {
                continue;
            }
            let inner = s.g_of(&nabla.derive_xi(s, i), &nabla.derive_xi(s, j));
            if !inner.is_zero() {
                acc = &acc + &(s.g_inv.get(i, j) * &inner);
            }
        }
    }
    acc.scale(&rat(-2, 1))
}

/// `xi` is Killing iff `(nabla_x eta) y + (nabla_y eta) x = 0`.
pub fn killing_check(s: &StructurePack, nabla: &Connection) -> bool {
    let n = s.dim();
    for i in 0..n {
        for j in 0..n {
            if !(&nabla.derive_eta(s, i, j) + &nabla.derive_eta(s, j, i)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Chevalley-Eilenberg exterior derivative of an invariant alternating
/// `p`-form:
/// `d w(x_0,..,x_p) = sum_{a<b} (-1)^{a+b} w([x_a,x_b], x_0,..,^x_a,..,^x_b,..,x_p)`.
/// With this convention `d eta (x,y) = -eta([x,y])` and `d o d = 0` is the
/// Jacobi identity.
pub fn exterior_derivative(alg: &LieAlgebraSpec, t: &Tensor) -> Result<Tensor> {
    if !t.is_alternating() {
        return Err(Error::NotAlternating);
    }
    let space = alg.params().clone();
    let n = alg.dim();
    let p = t.valence();
    let mut out = Tensor::zeros(&space, n, p + 1, Role::Generic);
    for idx in out.indices() {
        let mut acc = Scalar::zero(&space);
        for a in 0..=p {
            for b in (a + 1)..=p {
                let bracket = alg.bracket_basis(idx[a], idx[b]);
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| *pos != a && *pos != b)
                    .map(|(_, &v)| v)
                    .collect();
                // linear extension in the first slot
                let mut term = Scalar::zero(&space);
                for m in 0..n {
                    if bracket.comps[m].is_zero() {
                        continue;
                    }
                    let mut inner = Vec::with_capacity(p);
                    inner.push(m);
                    inner.extend_from_slice(&rest);
                    term = &term + &(&bracket.comps[m] * t.get(&inner));
                }
                if (a + b) % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
        }
        out.set(&idx, acc);
    }
    Ok(out)
}

/// `eta` as a valence-1 tensor, for exterior differentiation.
pub fn eta_tensor(s: &StructurePack) -> Tensor {
    let mut out = Tensor::zeros(s.space(), s.dim(), 1, Role::Generic);
    for i in 0..s.dim() {
        out.set(&[i], s.eta[i].clone());
    }
    out
}

/// The metric as a valence-2 tensor.
pub fn metric_tensor(s: &StructurePack) -> Tensor {
    let n = s.dim();
    let mut out = Tensor::zeros(s.space(), n, 2, Role::Generic);
    for i in 0..n {
        for j in 0..n {
            out.set(&[i, j], s.g.get(i, j).clone());
        }
    }
    out
}

/// `phi` lowered to a valence-2 tensor `g(phi x, y)`.
pub fn phi_tensor(s: &StructurePack) -> Tensor {
    let n = s.dim();
    let space = s.space();
    let mut out = Tensor::zeros(space, n, 2, Role::Generic);
    for i in 0..n {
        for j in 0..n {
            let v = s.g_of(
                &s.apply_phi(&Vector::basis(space, n, i)),
                &Vector::basis(space, n, j),
            );
            out.set(&[i, j], v);
        }
    }
    out
}
