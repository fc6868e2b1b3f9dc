//! Dense fully covariant tensors with a valence and a role tag.
//!
//! All tensors are stored with every index down; raising is always an
//! explicit contraction with the inverse metric at the point of use.

use crate::error::{Error, Result};
use crate::exact::{ParamSpace, Scalar};
use std::sync::Arc;

/// What a tensor is used as; roles with algebraic symmetries are validated
/// on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    F,
    N,
    T,
    R,
    K,
    Rho,
    RhoD,
    DEta,
    DT,
    Generic,
}

/// Dense covariant tensor of valence `p` over a `dim`-dimensional basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    valence: usize,
    role: Role,
    comps: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(space: &Arc<ParamSpace>, dim: usize, valence: usize, role: Role) -> Self {
        let len = dim.pow(valence as u32);
        Tensor {
            dim,
            valence,
            role,
            comps: vec![Scalar::zero(space); len],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.valence);
        let mut o = 0;
        for &i in idx {
            debug_assert!(i < self.dim);
            o = o * self.dim + i;
        }
        o
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        let o = self.offset(idx);
        self.comps[o] = value;
    }

    /// All multi-indices of this tensor in lexicographic order.
    pub fn indices(&self) -> MultiIndexIter {
        MultiIndexIter::new(self.dim, self.valence)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    pub fn checked_add(&self, other: &Tensor) -> Result<Tensor> {
        if self.dim != other.dim || self.valence != other.valence {
            return Err(Error::DimensionMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tensor {
            dim: self.dim,
            valence: self.valence,
            role: self.role,
            comps,
        })
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.checked_add(&other.neg()).expect("shape mismatch")
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            dim: self.dim,
            valence: self.valence,
            role: self.role,
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &crate::exact::Rat) -> Tensor {
        Tensor {
            dim: self.dim,
            valence: self.valence,
            role: self.role,
            comps: self.comps.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// True when the value changes sign under every transposition of
    /// adjacent index slots.
    pub fn is_alternating(&self) -> bool {
        for idx in self.indices() {
            for slot in 0..self.valence.saturating_sub(1) {
                let mut swapped = idx.clone();
                swapped.swap(slot, slot + 1);
                if self.get(&idx) != &(-self.get(&swapped)) {
                    return false;
                }
            }
        }
        true
    }

    /// Validate the symmetries implied by the role tag.
    pub fn validate_role(&self) -> Result<()> {
        match self.role {
            Role::T | Role::DEta | Role::DT => {
                if !self.is_alternating() {
                    return Err(Error::RoleViolation("totally skew-symmetric"));
                }
            }
            Role::R | Role::K => {
                // L(x,y,z,w) = -L(y,x,z,w) = -L(x,y,w,z)
                for idx in self.indices() {
                    let [i, j, k, l] = [idx[0], idx[1], idx[2], idx[3]];
                    let v = self.get(&idx);
                    if v != &(-self.get(&[j, i, k, l])) || v != &(-self.get(&[i, j, l, k])) {
                        return Err(Error::RoleViolation("curvature pair antisymmetries"));
                    }
                }
            }
            Role::Rho | Role::RhoD => {
                for idx in self.indices() {
                    if self.get(&idx) != self.get(&[idx[1], idx[0]]) {
                        return Err(Error::RoleViolation("symmetric"));
                    }
                }
            }
            Role::F | Role::N | Role::Generic => {}
        }
        Ok(())
    }
}

/// Iterator over all multi-indices `[0,dim)^p` in lexicographic order.
pub struct MultiIndexIter {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndexIter {
    pub fn new(dim: usize, valence: usize) -> Self {
        let current = if dim == 0 && valence > 0 {
            None
        } else {
            Some(vec![0; valence])
        };
        MultiIndexIter { dim, current }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut slot = cur.len();
        loop {
            if slot == 0 {
                self.current = None;
                break;
            }
            slot -= 1;
            cur[slot] += 1;
            if cur[slot] < self.dim {
                break;
            }
            cur[slot] = 0;
        }
        Some(out)
    }
}

/// Sign of the permutation sorting `idx`; `None` when two entries repeat.
pub fn perm_sign(idx: &[usize]) -> Option<i32> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            match v[j].cmp(&v[i]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {
                    v.swap(i, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Some(sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn multi_index_counts() {
        assert_eq!(MultiIndexIter::new(3, 2).count(), 9);
        assert_eq!(MultiIndexIter::new(5, 4).count(), 625);
        assert_eq!(MultiIndexIter::new(4, 0).count(), 1);
    }

    #[test]
    fn perm_signs() {
        assert_eq!(perm_sign(&[0, 1, 2]), Some(1));
        assert_eq!(perm_sign(&[1, 0, 2]), Some(-1));
        assert_eq!(perm_sign(&[2, 0, 1]), Some(1));
        assert_eq!(perm_sign(&[0, 0, 1]), None);
    }

    #[test]
    fn alternating_detection() {
        let sp = ParamSpace::empty();
        let mut t = Tensor::zeros(&sp, 3, 2, Role::Generic);
        t.set(&[0, 1], Scalar::from_rat(&sp, rat(2, 1)));
        assert!(!t.is_alternating());
        t.set(&[1, 0], Scalar::from_rat(&sp, rat(-2, 1)));
        assert!(t.is_alternating());
        assert!(t.with_role(Role::T).validate_role().is_ok());
    }
}
