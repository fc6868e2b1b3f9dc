//! Almost contact B-metric structure packs: the endomorphism `phi`, the
//! Reeb vector `xi`, its dual 1-form `eta`, the B-metric `g` and its exact
//! inverse, together with validation of the defining relations and the
//! horizontal/vertical projectors.

use crate::error::{Error, Result};
use crate::exact::{ParamSpace, Rat, Scalar};
use crate::liealg::Vector;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Square matrix of exact scalars, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(space: &Arc<ParamSpace>, n: usize) -> Self {
        Matrix {
            n,
            data: vec![Scalar::zero(space); n * n],
        }
    }

    pub fn identity(space: &Arc<ParamSpace>, n: usize) -> Self {
        let mut m = Self::zeros(space, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(space));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let space = self.data[0].space().clone();
        let mut out = Matrix::zeros(&space, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Scalar::zero(&space);
                for k in 0..self.n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `phi(v)` as column action: `(M v)_i = sum_j M[i][j] v_j`.
    pub fn mul_vec(&self, v: &Vector) -> Vector {
        let space = self.data[0].space().clone();
        let mut out = Vector::zero(&space, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_zero() && !v.comps[j].is_zero() {
                    out.comps[i] = &out.comps[i] + &(self.get(i, j) * &v.comps[j]);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by cofactor expansion; exact, intended for small `n`.
    pub fn determinant(&self) -> Scalar {
        let space = self.data[0].space().clone();
        if self.n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = Scalar::zero(&space);
        for j in 0..self.n {
            if self.get(0, j).is_zero() {
                continue;
            }
            let minor = self.minor(0, j).determinant();
            let term = self.get(0, j) * &minor;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> Matrix {
        let mut rows = Vec::with_capacity(self.n - 1);
        for i in 0..self.n {
            if i == row {
                continue;
            }
            let mut r = Vec::with_capacity(self.n - 1);
            for j in 0..self.n {
                if j == col {
                    continue;
                }
                r.push(self.get(i, j).clone());
            }
            rows.push(r);
        }
        Matrix::from_rows(rows).unwrap()
    }

    /// Exact inverse. Polynomial matrices are invertible here only when the
    /// determinant is a nonzero rational constant; a symbolic determinant
    /// would need rational-function entries.
    pub fn inverse(&self) -> Result<Matrix> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::DegenerateMetric);
        }
        let det_rat = det.as_rat().ok_or(Error::NonConstantDeterminant)?;
        let inv_det = Rat::one() / det_rat;
        let space = self.data[0].space().clone();
        let mut out = Matrix::zeros(&space, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                // adjugate: transpose of the cofactor matrix
                let cof = self.minor(j, i).determinant();
                let signed = if (i + j) % 2 == 0 { cof } else { -&cof };
                out.set(i, j, signed.scale(&inv_det));
            }
        }
        Ok(out)
    }
}

/// Result of the metric signature check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureReport {
    /// `(negative, positive)` inertia counted exactly.
    Checked { neg: usize, pos: usize },
    /// Skipped: the metric has symbolic entries and signature is not a
    /// polynomial identity.
    SkippedSymbolic,
}

/// The almost contact B-metric structure data over a fixed basis.
#[derive(Debug, Clone)]
pub struct StructurePack {
    space: Arc<ParamSpace>,
    dim: usize,
    pub phi: Matrix,
    pub xi: Vector,
    pub eta: Vec<Scalar>,
    pub g: Matrix,
    pub g_inv: Matrix,
}

impl StructurePack {
    /// Assemble a pack and compute the exact inverse metric. The defining
    /// relations are checked separately by [`StructurePack::validate`].
    pub fn new(
        space: Arc<ParamSpace>,
        phi: Matrix,
        xi: Vector,
        eta: Vec<Scalar>,
        g: Matrix,
    ) -> Result<Self> {
        let dim = g.n();
        if phi.n() != dim || xi.dim() != dim || eta.len() != dim {
            return Err(Error::DimensionMismatch);
        }
        let g_inv = g.inverse()?;
        Ok(StructurePack {
            space,
            dim,
            phi,
            xi,
            eta,
            g,
            g_inv,
        })
    }

    pub fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply_phi(&self, v: &Vector) -> Vector {
        self.phi.mul_vec(v)
    }

    pub fn eta_of(&self, v: &Vector) -> Scalar {
        let mut acc = Scalar::zero(&self.space);
        for i in 0..self.dim {
            if !self.eta[i].is_zero() && !v.comps[i].is_zero() {
                acc = &acc + &(&self.eta[i] * &v.comps[i]);
            }
        }
        acc
    }

    pub fn g_of(&self, u: &Vector, v: &Vector) -> Scalar {
        let mut acc = Scalar::zero(&self.space);
        for i in 0..self.dim {
            if u.comps[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !self.g.get(i, j).is_zero() && !v.comps[j].is_zero() {
                    acc = &acc + &(&(&u.comps[i] * &v.comps[j]) * self.g.get(i, j));
                }
            }
        }
        acc
    }

    /// Raise one index: the vector `v` with `g(v, .) = omega`.
    pub fn raise(&self, omega: &[Scalar]) -> Vector {
        let mut out = Vector::zero(&self.space, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.g_inv.get(i, j).is_zero() && !omega[j].is_zero() {
                    out.comps[i] = &out.comps[i] + &(self.g_inv.get(i, j) * &omega[j]);
                }
            }
        }
        out
    }

    /// Check every defining relation identically; returns the list of
    /// violated relations (empty means pass).
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let n = self.dim;
        let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(&self.space, n, i)).collect();

        // phi xi = 0
        if !self.apply_phi(&self.xi).is_zero() {
            violations.push("phi(xi) = 0".to_string());
        }
        // phi^2 = -Id + eta (x) xi
        let phi2 = self.phi.mul(&self.phi);
        for i in 0..n {
            for j in 0..n {
                let mut expected = &self.eta[j] * &self.xi.comps[i];
                if i == j {
                    expected = &expected - &Scalar::one(&self.space);
                }
                if phi2.get(i, j) != &expected {
                    violations.push("phi^2 = -Id + eta(x)xi".to_string());
                    break;
                }
            }
            if violations.last().map(String::as_str) == Some("phi^2 = -Id + eta(x)xi") {
                break;
            }
        }
        // eta o phi = 0
        for b in &basis {
            if !self.eta_of(&self.apply_phi(b)).is_zero() {
                violations.push("eta(phi(x)) = 0".to_string());
                break;
            }
        }
        // eta(xi) = 1
        if self.eta_of(&self.xi) != Scalar::one(&self.space) {
            violations.push("eta(xi) = 1".to_string());
        }
        // g symmetric
        if !self.g.is_symmetric() {
            violations.push("g symmetric".to_string());
        }
        // g(phi x, phi y) = -g(x,y) + eta(x)eta(y)
        'outer: for x in &basis {
            for y in &basis {
                let lhs = self.g_of(&self.apply_phi(x), &self.apply_phi(y));
                let rhs = &(-&self.g_of(x, y)) + &(&self.eta_of(x) * &self.eta_of(y));
                if lhs != rhs {
                    violations.push("g(phi x, phi y) = -g(x,y) + eta(x)eta(y)".to_string());
                    break 'outer;
                }
            }
        }
        // eta(.) = g(., xi) cross-check
        for b in &basis {
            if self.eta_of(b) != self.g_of(b, &self.xi) {
                violations.push("eta(.) = g(., xi)".to_string());
                break;
            }
        }
        // g * g_inv = Id
        if self.g.mul(&self.g_inv) != Matrix::identity(&self.space, n) {
            violations.push("g * g_inv = Id".to_string());
        }
        violations
    }

    /// Exact inertia count of `g` via symmetric congruence elimination, for
    /// fully rational metrics; skipped for symbolic entries.
    pub fn signature(&self) -> SignatureReport {
        let n = self.dim;
        let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                match self.g.get(i, j).as_rat() {
                    Some(r) => row.push(r),
                    None => return SignatureReport::SkippedSymbolic,
                }
            }
            a.push(row);
        }
        let (mut neg, mut pos) = (0usize, 0usize);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = ((k + 1)..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = ((k + 1)..n).find(|&j| !a[k][j].is_zero()) {
                    // congruence: add row/col j into row/col k
                    for col in 0..n {
                        let v = a[j][col].clone();
                        a[k][col] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                } else {
                    continue; // zero row in the remaining block
                }
            }
            let pivot = a[k][k].clone();
            if pivot.is_zero() {
                continue;
            }
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in (k + 1)..n {
                let f = &a[i][k] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &a[k][j] * &f;
                    a[i][j] -= v;
                }
            }
            for i in (k + 1)..n {
                let f = &a[k][i] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &a[j][k] * &f;
                    a[j][i] -= v;
                }
            }
        }
        SignatureReport::Checked { neg, pos }
    }

    /// The associated metric `g~(x,y) = g(x, phi y) + eta(x) eta(y)`.
    pub fn associated_metric(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(&self.space, n);
        let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(&self.space, n, i)).collect();
        for i in 0..n {
            for j in 0..n {
                let v = &self.g_of(&basis[i], &self.apply_phi(&basis[j]))
                    + &(&self.eta[i] * &self.eta[j]);
                out.set(i, j, v);
            }
        }
        out
    }

    /// Horizontal projector `h(x) = -phi^2 x`.
    pub fn project_h(&self, x: &Vector) -> Vector {
        self.apply_phi(&self.apply_phi(x)).neg()
    }

    /// Vertical projector `v(x) = eta(x) xi`.
    pub fn project_v(&self, x: &Vector) -> Vector {
        self.xi.scale(&self.eta_of(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// The phi / xi / eta / g data used throughout: phi E1 = E3, phi E2 =
    /// E4, phi E3 = -E1, phi E4 = -E2, phi E5 = 0, xi = E5, g =
    /// diag(1,1,-1,-1,1).
    fn five_dim_pack() -> StructurePack {
        let sp = ParamSpace::empty();
        let n = 5;
        let mut phi = Matrix::zeros(&sp, n);
        phi.set(2, 0, Scalar::one(&sp));
        phi.set(3, 1, Scalar::one(&sp));
        phi.set(0, 2, Scalar::from_int(&sp, -1));
        phi.set(1, 3, Scalar::from_int(&sp, -1));
        let xi = Vector::basis(&sp, n, 4);
        let mut eta = vec![Scalar::zero(&sp); n];
        eta[4] = Scalar::one(&sp);
        let mut g = Matrix::zeros(&sp, n);
        for (i, v) in [1i64, 1, -1, -1, 1].into_iter().enumerate() {
            g.set(i, i, Scalar::from_int(&sp, v));
        }
        StructurePack::new(sp, phi, xi, eta, g).unwrap()
    }

    #[test]
    fn reference_pack_validates() {
        let s = five_dim_pack();
        assert!(s.validate().is_empty());
        assert_eq!(s.signature(), SignatureReport::Checked { neg: 2, pos: 3 });
    }

    #[test]
    fn zero_phi_fails() {
        let mut s = five_dim_pack();
        s.phi = Matrix::zeros(s.space(), 5);
        let v = s.validate();
        assert!(v.iter().any(|m| m.contains("phi^2")));
    }

    #[test]
    fn flipped_metric_entry_fails() {
        let sp = ParamSpace::empty();
        let base = five_dim_pack();
        let mut g = base.g.clone();
        g.set(4, 4, Scalar::from_int(&sp, -1));
        let s = StructurePack::new(sp, base.phi, base.xi, base.eta, g).unwrap();
        let v = s.validate();
        assert!(v.iter().any(|m| m.contains("g(phi x, phi y)")));
    }

    #[test]
    fn degenerate_metric_is_an_error() {
        let sp = ParamSpace::empty();
        let base = five_dim_pack();
        let mut g = base.g.clone();
        g.set(0, 0, Scalar::zero(&sp));
        g.set(0, 1, Scalar::zero(&sp));
        assert_eq!(
            StructurePack::new(sp, base.phi, base.xi, base.eta, g).unwrap_err(),
            Error::DegenerateMetric
        );
    }

    #[test]
    fn associated_metric_is_again_a_b_metric() {
        let s = five_dim_pack();
        let gt = s.associated_metric();
        assert!(gt.is_symmetric());
        // g~(E1,E3) = g(E1, phi E3) = -g(E1,E1) = -1; g~(E5,E5) = 1
        assert_eq!(gt.get(0, 2), &Scalar::from_int(s.space(), -1));
        assert_eq!(gt.get(4, 4), &Scalar::one(s.space()));
        assert_eq!(gt.get(0, 0), &Scalar::zero(s.space()));
        // the associated pack satisfies the defining relations too
        let assoc = StructurePack::new(
            s.space().clone(),
            s.phi.clone(),
            s.xi.clone(),
            s.eta.clone(),
            gt,
        )
        .unwrap();
        assert!(assoc.validate().is_empty());
    }

    #[test]
    fn projectors_decompose_orthogonally() {
        let s = five_dim_pack();
        let sp = s.space().clone();
        let e1 = Vector::basis(&sp, 5, 0);
        let e5 = Vector::basis(&sp, 5, 4);
        assert_eq!(s.project_v(&e5), e5);
        assert_eq!(s.project_h(&e1), e1);
        let x = e1.add(&e5.scale(&Scalar::from_int(&sp, 2)));
        assert_eq!(s.project_h(&x), e1);
        assert_eq!(s.project_v(&x), e5.scale(&Scalar::from_int(&sp, 2)));
        // h + v = id, h and v idempotent, g(h(x), v(y)) = 0 over the basis
        for i in 0..5 {
            let b = Vector::basis(&sp, 5, i);
            let h = s.project_h(&b);
            let v = s.project_v(&b);
            assert_eq!(h.add(&v), b);
            assert_eq!(s.project_h(&h), h);
            assert_eq!(s.project_v(&v), v);
            for j in 0..5 {
                let c = Vector::basis(&sp, 5, j);
                assert!(s.g_of(&s.project_h(&b), &s.project_v(&c)).is_zero());
            }
        }
    }

    #[test]
    fn inverse_is_exact() {
        let sp = ParamSpace::empty();
        let m = Matrix::from_rows(vec![
            vec![Scalar::from_int(&sp, 2), Scalar::from_int(&sp, 1)],
            vec![Scalar::from_int(&sp, 1), Scalar::from_int(&sp, 1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&sp, 2));
        assert_eq!(inv.get(0, 0), &Scalar::from_rat(&sp, rat(1, 1)));
    }
}
