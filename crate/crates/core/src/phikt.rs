//! The torsion connection D = nabla + (1/2)T with totally skew-symmetric
//! torsion that parallelizes the whole structure (phi, xi, eta, g). It
//! exists exactly when the structure lies in F3+F7; the torsion 3-form is
//! computed in four equivalent shapes and cross-checked.

use crate::classify::{class_membership, contract_slot};
use crate::error::{Error, Result};
use crate::exact::{rat, Scalar};
use crate::levicivita::{
    exterior_derivative, eta_tensor, fundamental_f, metric_tensor, Connection, ConnectionKind,
};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::structure::StructurePack;
use crate::tensor::{Role, Tensor};

fn phi_columns(s: &StructurePack) -> Vec<Vector> {
    let n = s.dim();
    (0..n)
        .map(|j| s.apply_phi(&Vector::basis(s.space(), n, j)))
        .collect()
}

fn existence_gate(alg: &LieAlgebraSpec, s: &StructurePack, nabla: &Connection) -> Result<()> {
    if alg.dim() != s.dim() {
        return Err(Error::DimensionMismatch);
    }
    let f = fundamental_f(s, nabla);
    if class_membership(&f, s, nabla).f3_plus_f7 {
        Ok(())
    } else {
        Err(Error::NoPhiKtConnection)
    }
}

/// Torsion from the fundamental tensor:
/// `T(x,y,z) = -(1/2) Cyc{F(x,y,phi z) - 3 eta(x) F(y,phi z,xi)}`.
pub fn torsion_from_fundamental(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
    f: &Tensor,
) -> Result<Tensor> {
    existence_gate(alg, s, nabla)?;
    let n = s.dim();
    let space = s.space();
    let phi = phi_columns(s);
    // one cyclic leg: F(x, y, phi z) - 3 eta(x) F(y, phi z, xi)
    let leg = |i: usize, j: usize, k: usize| -> Scalar {
        let mut v = Scalar::zero(space);
        for a in 0..n {
            if phi[k].comps[a].is_zero() {
                continue;
            }
            v = &v + &(&phi[k].comps[a] * f.get(&[i, j, a]));
            let f_last_xi = contract_slot(f, 2, &s.xi, [j, a]);
            v = &v - &(&(&s.eta[i] * &phi[k].comps[a]) * &f_last_xi).scale(&rat(3, 1));
        }
        v
    };
    let mut out = Tensor::zeros(space, n, 3, Role::T);
    for idx in out.indices() {
        let [i, j, k] = [idx[0], idx[1], idx[2]];
        let cyc = &(&leg(i, j, k) + &leg(j, k, i)) + &leg(k, i, j);
        out.set(&idx, cyc.scale(&rat(-1, 2)));
    }
    Ok(out)
}

/// Equivalent wedge form:
/// `T(x,y,z) = (1/2)(eta /\ d eta)(x,y,z) + (1/4) Cyc N(x,y,z)`,
/// with `(eta /\ d eta)(x,y,z) = Cyc eta(x) d eta(y,z)` and d eta taken
/// without a 1/2 prefactor. The vertical half of the Nijenhuis cyclic sum
/// supplies the other half of `eta /\ d eta`, so this equals the full
/// `eta /\ d eta` plus the cyclic sum of the horizontal part of N.
pub fn torsion_wedge_form(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
    n_tensor: &Tensor,
) -> Result<Tensor> {
    existence_gate(alg, s, nabla)?;
    let n = s.dim();
    let space = s.space();
    let d_eta = exterior_derivative(alg, &eta_tensor(s))?;
    let mut out = Tensor::zeros(space, n, 3, Role::T);
    for idx in out.indices() {
        let [i, j, k] = [idx[0], idx[1], idx[2]];
        let wedge = &(&(&s.eta[i] * d_eta.get(&[j, k])) + &(&s.eta[j] * d_eta.get(&[k, i])))
            + &(&s.eta[k] * d_eta.get(&[i, j]));
        let cyc_n = &(n_tensor.get(&[i, j, k]) + n_tensor.get(&[j, k, i]))
            + n_tensor.get(&[k, i, j]);
        out.set(&idx, &wedge.scale(&rat(1, 2)) + &cyc_n.scale(&rat(1, 4)));
    }
    Ok(out)
}

/// The full (1,2)-form of the torsion, lowered with `g`:
/// `T(x,y) = (1/2){2(nabla_x phi)phi y - (nabla_y phi)phi x
///  + (nabla_{phi y} phi)x + 3 eta(x) nabla_y xi - 4 eta(y) nabla_x xi
///  + 2(nabla_x eta)y . xi}`.
pub fn torsion_covariant_form(s: &StructurePack, nabla: &Connection) -> Tensor {
    let n = s.dim();
    let space = s.space();
    let phi = phi_columns(s);
    let mut out = Tensor::zeros(space, n, 3, Role::T);
    for i in 0..n {
        for j in 0..n {
            let mut v = Vector::zero(space, n);
            for b in 0..n {
                if !phi[j].comps[b].is_zero() {
                    v = v.add(
                        &nabla
                            .derive_phi(s, i, b)
                            .scale(&(&phi[j].comps[b] * &Scalar::from_int(space, 2))),
                    );
                    v = v.add(&nabla.derive_phi(s, b, i).scale(&phi[j].comps[b]));
                }
                if !phi[i].comps[b].is_zero() {
                    v = v.sub(&nabla.derive_phi(s, j, b).scale(&phi[i].comps[b]));
                }
            }
            v = v.add(
                &nabla
                    .derive_xi(s, j)
                    .scale(&(&s.eta[i] * &Scalar::from_int(space, 3))),
            );
            v = v.sub(
                &nabla
                    .derive_xi(s, i)
                    .scale(&(&s.eta[j] * &Scalar::from_int(space, 4))),
            );
            v = v.add(&s.xi.scale(&nabla.derive_eta(s, i, j).scale(&rat(2, 1))));
            let v = v.scale(&Scalar::from_rat(space, rat(1, 2)));
            for k in 0..n {
                out.set(&[i, j, k], s.g_of(&v, &Vector::basis(space, n, k)));
            }
        }
    }
    out
}

/// F3 shape of the torsion, lowered:
/// `T(x,y) = (1/2){2(nabla_x phi)phi y - (nabla_y phi)phi x
///  + (nabla_{phi y} phi)x}`. Requires the structure to be in F3.
pub fn torsion_horizontal_form(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
) -> Result<Tensor> {
    if alg.dim() != s.dim() {
        return Err(Error::DimensionMismatch);
    }
    let f = fundamental_f(s, nabla);
    if !class_membership(&f, s, nabla).f3 {
        return Err(Error::ClassGate("F3"));
    }
    let n = s.dim();
    let space = s.space();
    let phi = phi_columns(s);
    let mut out = Tensor::zeros(space, n, 3, Role::T);
    for i in 0..n {
        for j in 0..n {
            let mut v = Vector::zero(space, n);
            for b in 0..n {
                if !phi[j].comps[b].is_zero() {
                    v = v.add(
                        &nabla
                            .derive_phi(s, i, b)
                            .scale(&(&phi[j].comps[b] * &Scalar::from_int(space, 2))),
                    );
                    v = v.add(&nabla.derive_phi(s, b, i).scale(&phi[j].comps[b]));
                }
                if !phi[i].comps[b].is_zero() {
                    v = v.sub(&nabla.derive_phi(s, j, b).scale(&phi[i].comps[b]));
                }
            }
            let v = v.scale(&Scalar::from_rat(space, rat(1, 2)));
            for k in 0..n {
                out.set(&[i, j, k], s.g_of(&v, &Vector::basis(space, n, k)));
            }
        }
    }
    Ok(out)
}

/// F7 shape of the torsion, lowered:
/// `T(x,y) = 2{eta(x) nabla_y xi - eta(y) nabla_x xi + (nabla_x eta)y . xi}`.
/// Requires the structure to be in F7.
pub fn torsion_vertical_form(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
) -> Result<Tensor> {
    if alg.dim() != s.dim() {
        return Err(Error::DimensionMismatch);
    }
    let f = fundamental_f(s, nabla);
    if !class_membership(&f, s, nabla).f7 {
        return Err(Error::ClassGate("F7"));
    }
    let n = s.dim();
    let space = s.space();
    let mut out = Tensor::zeros(space, n, 3, Role::T);
    for i in 0..n {
        for j in 0..n {
            let mut v = nabla.derive_xi(s, j).scale(&s.eta[i]);
            v = v.sub(&nabla.derive_xi(s, i).scale(&s.eta[j]));
            v = v.add(&s.xi.scale(&nabla.derive_eta(s, i, j)));
            let v = v.scale(&Scalar::from_int(space, 2));
            for k in 0..n {
                out.set(&[i, j, k], s.g_of(&v, &Vector::basis(space, n, k)));
            }
        }
    }
    Ok(out)
}

/// Build the torsion connection `g(D_x y, z) = g(nabla_x y, z) + (1/2)T(x,y,z)`
/// and verify that D parallelizes phi, xi, eta, g and reproduces T as its
/// torsion.
pub fn build_d(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
    t: &Tensor,
) -> Result<Connection> {
    if !t.is_alternating() {
        return Err(Error::NotAlternating);
    }
    let n = s.dim();
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let omega: Vec<Scalar> = (0..n)
                .map(|k| t.get(&[i, j, k]).scale(&rat(1, 2)))
                .collect();
            let half_t = s.raise(&omega);
            for k in 0..n {
                gamma.push(nabla.gamma(i, j, k) + &half_t.comps[k]);
            }
        }
    }
    let d = Connection::from_table(n, ConnectionKind::PhiKt, gamma);
    for i in 0..n {
        for j in 0..n {
            if !d.derive_phi(s, i, j).is_zero() || !d.derive_eta(s, i, j).is_zero() {
                return Err(Error::NaturalityViolation("phi or eta"));
            }
        }
        if !d.derive_xi(s, i).is_zero() {
            return Err(Error::NaturalityViolation("xi"));
        }
    }
    if !d.covariant_derivative(&metric_tensor(s)).is_zero() {
        return Err(Error::NaturalityViolation("g"));
    }
    if d.torsion(alg, s).with_role(Role::T) != *t {
        return Err(Error::NaturalityViolation("torsion"));
    }
    Ok(d)
}

/// Deformation conditions with `Q = (1/2)T`:
/// `Q(x,y,phi z) - Q(x,phi y,z) = F(x,y,z)` and `Q(x,y,z) = -Q(x,z,y)`.
pub fn deformation_conditions_check(t: &Tensor, f: &Tensor, s: &StructurePack) -> bool {
    let n = s.dim();
    let phi = phi_columns(s);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = &contract_slot(t, 2, &phi[k], [i, j])
                    - &contract_slot(t, 1, &phi[j], [i, k]);
                if &lhs.scale(&rat(1, 2)) != f.get(&[i, j, k]) {
                    return false;
                }
                if t.get(&[i, j, k]) != &(-t.get(&[i, k, j])) {
                    return false;
                }
            }
        }
    }
    true
}

/// `T(x,phi y) = phi T(x,y) - 2(nabla_x phi)y` and
/// `T(phi x,y) = phi T(x,y) + 2(nabla_y phi)x`, as vector identities.
pub fn torsion_phi_shift_check(t: &Tensor, nabla: &Connection, s: &StructurePack) -> bool {
    let n = s.dim();
    let space = s.space();
    let phi = phi_columns(s);
    let t_vec = |i: usize, j: usize| -> Vector {
        let omega: Vec<Scalar> = (0..n).map(|k| t.get(&[i, j, k]).clone()).collect();
        s.raise(&omega)
    };
    for i in 0..n {
        for j in 0..n {
            let mut t_i_phij = Vector::zero(space, n);
            let mut t_phii_j = Vector::zero(space, n);
            for b in 0..n {
                if !phi[j].comps[b].is_zero() {
                    t_i_phij = t_i_phij.add(&t_vec(i, b).scale(&phi[j].comps[b]));
                }
                if !phi[i].comps[b].is_zero() {
                    t_phii_j = t_phii_j.add(&t_vec(b, j).scale(&phi[i].comps[b]));
                }
            }
            let phi_t = s.apply_phi(&t_vec(i, j));
            let two = Scalar::from_int(space, 2);
            if t_i_phij != phi_t.sub(&nabla.derive_phi(s, i, j).scale(&two)) {
                return false;
            }
            if t_phii_j != phi_t.add(&nabla.derive_phi(s, j, i).scale(&two)) {
                return false;
            }
        }
    }
    true
}

/// `N(x,y,z) = T(x,y,z) + T(x,phi y,phi z) + T(phi x,y,phi z)
///  - T(phi x,phi y,z)`.
pub fn nijenhuis_torsion_check(t: &Tensor, n_tensor: &Tensor, s: &StructurePack) -> bool {
    let n = s.dim();
    let space = s.space();
    let phi = phi_columns(s);
    let contract2 = |a_slot: &Vector, b_slot: &Vector, fixed: usize, which: u8| -> Scalar {
        // which encodes the slot layout of the two phi contractions
        let mut acc = Scalar::zero(space);
        for a in 0..n {
            if a_slot.comps[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if b_slot.comps[b].is_zero() {
                    continue;
                }
                let idx = match which {
                    0 => [fixed, a, b], // T(x, phi y, phi z)
                    1 => [a, fixed, b], // T(phi x, y, phi z)
                    _ => [a, b, fixed], // T(phi x, phi y, z)
                };
                acc = &acc + &(&(&a_slot.comps[a] * &b_slot.comps[b]) * t.get(&idx));
            }
        }
        acc
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut rhs = t.get(&[i, j, k]).clone();
                rhs = &rhs + &contract2(&phi[j], &phi[k], i, 0);
                rhs = &rhs + &contract2(&phi[i], &phi[k], j, 1);
                rhs = &rhs - &contract2(&phi[i], &phi[j], k, 2);
                if n_tensor.get(&[i, j, k]) != &rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// `|T|^2 = g^{ij} g^{ks} g(T(e_i,e_k), T(e_j,e_s))`.
pub fn norm_t(t: &Tensor, s: &StructurePack) -> Scalar {
    let n = s.dim();
    let space = s.space();
    let mut acc = Scalar::zero(space);
    for i in 0..n {
        for j in 0..n {
            let gij = s.g_inv.get(i, j);
            if gij.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let gks = s.g_inv.get(k, l);
                    if gks.is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        for q in 0..n {
                            let gpq = s.g_inv.get(p, q);
                            if gpq.is_zero() {
                                continue;
                            }
                            let term = &(t.get(&[i, k, p]) * t.get(&[j, l, q]))
                                * &(&(gij * gks) * gpq);
                            acc = &acc + &term;
                        }
                    }
                }
            }
        }
    }
    acc
}
