//! Class membership for the basic classes with explicit defining
//! conditions (F0, F3, F7 and the direct sum F3+F7), the Nijenhuis tensor
//! with its horizontal/vertical split, and the Lie-bracket class
//! characterizations for non-Abelian structures.

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::levicivita::{exterior_derivative, eta_tensor, killing_check, Connection};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::structure::StructurePack;
use crate::tensor::{Role, Tensor};

/// Membership record for the implemented basic classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassMembership {
    pub f0: bool,
    pub f3: bool,
    pub f7: bool,
    pub f3_plus_f7: bool,
}

fn cyclic_sum_zero(f: &Tensor) -> bool {
    let n = f.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let sum = &(f.get(&[i, j, k]) + f.get(&[j, k, i])) + f.get(&[k, i, j]);
                if !sum.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Contract a slot of a valence-3 tensor with a vector.
pub(crate) fn contract_slot(f: &Tensor, slot: usize, v: &Vector, rest: [usize; 2]) -> Scalar {
    let space = v.comps[0].space();
    let mut acc = Scalar::zero(space);
    for m in 0..f.dim() {
        if v.comps[m].is_zero() {
            continue;
        }
        let idx = match slot {
            0 => [m, rest[0], rest[1]],
            1 => [rest[0], m, rest[1]],
            _ => [rest[0], rest[1], m],
        };
        acc = &acc + &(&v.comps[m] * f.get(&idx));
    }
    acc
}

/// F3 condition: zero cyclic sum and `F(xi,y,z) = F(x,y,xi) = 0`.
fn is_f3(f: &Tensor, s: &StructurePack) -> bool {
    if !cyclic_sum_zero(f) {
        return false;
    }
    let n = f.dim();
    for a in 0..n {
        for b in 0..n {
            if !contract_slot(f, 0, &s.xi, [a, b]).is_zero() {
                return false;
            }
            if !contract_slot(f, 2, &s.xi, [a, b]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// F7 condition: zero cyclic sum and
/// `F(x,y,z) = -F(phi x, phi y, z) - F(phi x, y, phi z)`.
fn is_f7(f: &Tensor, s: &StructurePack) -> bool {
    if !cyclic_sum_zero(f) {
        return false;
    }
    let n = f.dim();
    let space = s.space();
    let phi_col: Vec<Vector> = (0..n)
        .map(|j| s.apply_phi(&Vector::basis(space, n, j)))
        .collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut rhs = Scalar::zero(space);
                for a in 0..n {
                    if phi_col[i].comps[a].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if !phi_col[j].comps[b].is_zero() {
                            rhs = &rhs
                                - &(&(&phi_col[i].comps[a] * &phi_col[j].comps[b])
                                    * f.get(&[a, b, k]));
                        }
                        if !phi_col[k].comps[b].is_zero() {
                            rhs = &rhs
                                - &(&(&phi_col[i].comps[a] * &phi_col[k].comps[b])
                                    * f.get(&[a, j, b]));
                        }
                    }
                }
                if f.get(&[i, j, k]) != &rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Class membership of the structure from its fundamental tensor.
pub fn class_membership(
    f: &Tensor,
    s: &StructurePack,
    nabla: &Connection,
) -> ClassMembership {
    let f0 = f.is_zero();
    let f3 = is_f3(f, s);
    let f7 = is_f7(f, s);
    let f3_plus_f7 = cyclic_sum_zero(f) && killing_check(s, nabla);
    ClassMembership {
        f0,
        f3,
        f7,
        f3_plus_f7,
    }
}

/// Nijenhuis (0,3)-tensor from the fundamental tensor:
/// `N(x,y,z) = F(phi x,y,z) - F(phi y,x,z) - F(x,y,phi z) + F(y,x,phi z)
///  + F(x,phi y,xi) eta(z) - F(y,phi x,xi) eta(z)`.
pub fn nijenhuis(f: &Tensor, s: &StructurePack) -> Tensor {
    let n = f.dim();
    let space = s.space();
    let phi_col: Vec<Vector> = (0..n)
        .map(|j| s.apply_phi(&Vector::basis(space, n, j)))
        .collect();
    let f_at = |x: &Vector, yj: usize, zk: usize| -> Scalar {
        contract_slot(f, 0, x, [yj, zk])
    };
    let f_mid = |xi: usize, y: &Vector, zk: usize| -> Scalar {
        contract_slot(f, 1, y, [xi, zk])
    };
    let f_last = |xi: usize, yj: usize, z: &Vector| -> Scalar {
        contract_slot(f, 2, z, [xi, yj])
    };
    let mut out = Tensor::zeros(space, n, 3, Role::N);
    for idx in out.indices() {
        let [i, j, k] = [idx[0], idx[1], idx[2]];
        let mut v = &f_at(&phi_col[i], j, k) - &f_at(&phi_col[j], i, k);
        v = &v - &f_last(i, j, &phi_col[k]);
        v = &v + &f_last(j, i, &phi_col[k]);
        // F(x, phi y, xi): contract middle with phi column and last with xi
        let mut fx = Scalar::zero(space);
        let mut fy = Scalar::zero(space);
        for m in 0..n {
            if !s.xi.comps[m].is_zero() {
                fx = &fx + &(&s.xi.comps[m] * &f_mid(i, &phi_col[j], m));
                fy = &fy + &(&s.xi.comps[m] * &f_mid(j, &phi_col[i], m));
            }
        }
        let eta_part = &(&fx - &fy) * &s.eta[k];
        out.set(&idx, &v + &eta_part);
    }
    out
}

/// Independent bracket route: `N = [phi, phi] + d eta (x) xi` with
/// `[phi,phi](x,y) = [phi x, phi y] + phi^2 [x,y] - phi[phi x, y]
///  - phi[x, phi y]`, lowered with `g`.
pub fn nijenhuis_via_brackets(alg: &LieAlgebraSpec, s: &StructurePack) -> Result<Tensor> {
    let n = alg.dim();
    let space = s.space();
    let d_eta = exterior_derivative(alg, &eta_tensor(s))?;
    let mut out = Tensor::zeros(space, n, 3, Role::N);
    for i in 0..n {
        for j in 0..n {
            let ei = alg.basis(i);
            let ej = alg.basis(j);
            let phi_i = s.apply_phi(&ei);
            let phi_j = s.apply_phi(&ej);
            let mut nv = alg.bracket(&phi_i, &phi_j)?;
            nv = nv.add(&s.apply_phi(&s.apply_phi(&alg.bracket_basis(i, j))));
            nv = nv.sub(&s.apply_phi(&alg.bracket(&phi_i, &ej)?));
            nv = nv.sub(&s.apply_phi(&alg.bracket(&ei, &phi_j)?));
            nv = nv.add(&s.xi.scale(d_eta.get(&[i, j])));
            for k in 0..n {
                let v = s.g_of(&nv, &Vector::basis(space, n, k));
                out.set(&[i, j, k], v);
            }
        }
    }
    Ok(out)
}

/// Split into horizontal and vertical parts:
/// `v(N)(x,y,z) = N(x,y,xi) eta(z)`, `h(N) = N - v(N)`.
pub fn nijenhuis_hv_split(n_tensor: &Tensor, s: &StructurePack) -> (Tensor, Tensor) {
    let n = n_tensor.dim();
    let space = s.space();
    let mut v_part = Tensor::zeros(space, n, 3, Role::Generic);
    for i in 0..n {
        for j in 0..n {
            let n_xi = contract_slot(n_tensor, 2, &s.xi, [i, j]);
            for k in 0..n {
                v_part.set(&[i, j, k], &n_xi * &s.eta[k]);
            }
        }
    }
    let h_part = n_tensor.sub(&v_part);
    (h_part, v_part)
}

/// Lie-bracket class conditions for non-Abelian structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LieClassConditions {
    pub f3: bool,
    pub f7: bool,
    pub f0: bool,
}

/// Bracket characterization: `F3: eta([X,Y]) = 0`,
/// `F7: phi[phi X, Y] = phi^2 [X,Y]`, `F0: [X,Y] = -phi[phi X, Y]`.
pub fn lie_class_conditions(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
) -> Result<LieClassConditions> {
    if !alg.non_abelian_structure_check(s) {
        return Err(Error::NotNonAbelian);
    }
    let n = alg.dim();
    let mut f3 = true;
    let mut f7 = true;
    let mut f0 = true;
    for i in 0..n {
        for j in 0..n {
            let br = alg.bracket_basis(i, j);
            if !s.eta_of(&br).is_zero() {
                f3 = false;
            }
            let phi_i = s.apply_phi(&alg.basis(i));
            let br_phi = alg.bracket(&phi_i, &alg.basis(j))?;
            if s.apply_phi(&br_phi) != s.apply_phi(&s.apply_phi(&br)) {
                f7 = false;
            }
            if br != s.apply_phi(&br_phi).neg() {
                f0 = false;
            }
        }
    }
    Ok(LieClassConditions { f3, f7, f0 })
}

/// True iff the square norm of `nabla phi` vanishes identically.
pub fn isotropic_f0_check(norm: &Scalar) -> bool {
    norm.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ParamSpace};
    use crate::fixtures::{abelian_fixture, fix_c, six_param_family, Mode};
    use crate::levicivita::{fundamental_f, levi_civita, square_norm_nabla_phi};

    fn pipeline(f: &crate::fixtures::Fixture) -> (Connection, Tensor) {
        let nabla = levi_civita(&f.alg, &f.pack).unwrap();
        let ft = fundamental_f(&f.pack, &nabla);
        (nabla, ft)
    }

    #[test]
    fn family_is_f7_not_f0() {
        let f = six_param_family(Mode::Symbolic).unwrap();
        let (nabla, ft) = pipeline(&f);
        let m = class_membership(&ft, &f.pack, &nabla);
        assert_eq!(
            m,
            ClassMembership {
                f0: false,
                f3: false,
                f7: true,
                f3_plus_f7: true
            }
        );
    }

    #[test]
    fn abelian_is_f0() {
        let f = abelian_fixture();
        let (nabla, ft) = pipeline(&f);
        let m = class_membership(&ft, &f.pack, &nabla);
        assert!(m.f0 && m.f3 && m.f7 && m.f3_plus_f7);
    }

    #[test]
    fn f0_iff_mu_zero() {
        // mu1 = mu2 = 0, l1 = 1 -> F0
        let f = six_param_family(Mode::At([
            rat(1, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ]))
        .unwrap();
        let (nabla, ft) = pipeline(&f);
        let m = class_membership(&ft, &f.pack, &nabla);
        assert!(m.f0);
        // F0 <=> F3 and F7, on several fixtures
        for fx in [abelian_fixture(), fix_c(), f] {
            let (nabla, ft) = pipeline(&fx);
            let m = class_membership(&ft, &fx.pack, &nabla);
            assert_eq!(m.f0, m.f3 && m.f7, "{}", fx.name);
        }
    }

    #[test]
    fn nijenhuis_routes_agree() {
        for fx in [
            six_param_family(Mode::Symbolic).unwrap(),
            fix_c(),
            abelian_fixture(),
        ] {
            let (_, ft) = pipeline(&fx);
            let via_f = nijenhuis(&ft, &fx.pack);
            let via_brackets = nijenhuis_via_brackets(&fx.alg, &fx.pack).unwrap();
            assert_eq!(via_f, via_brackets, "{}", fx.name);
        }
    }

    #[test]
    fn nijenhuis_vertical_on_family() {
        // at (1,0,0,0,1,0): N(E1,E2) = -4 E5, so N_{125} = g(-4E5, E5) = -4
        let f = fix_c();
        let (_, ft) = pipeline(&f);
        let n = nijenhuis(&ft, &f.pack);
        assert_eq!(n.get(&[0, 1, 4]), &Scalar::from_int(f.alg.params(), -4));
        // symbolic family: horizontal part vanishes identically
        let fs = six_param_family(Mode::Symbolic).unwrap();
        let (_, fts) = pipeline(&fs);
        let ns = nijenhuis(&fts, &fs.pack);
        let (h, v) = nijenhuis_hv_split(&ns, &fs.pack);
        assert!(h.is_zero());
        assert_eq!(h.checked_add(&v).unwrap(), ns);
    }

    #[test]
    fn nijenhuis_split_form_on_f37() {
        // N(x,y) = 2(nabla_{phi x} phi)y - 2 phi(nabla_x phi)y
        //          + 2(nabla_x eta)y . xi, componentwise on basis pairs
        let f = six_param_family(Mode::Symbolic).unwrap();
        let nabla = levi_civita(&f.alg, &f.pack).unwrap();
        let ft = fundamental_f(&f.pack, &nabla);
        let n = nijenhuis(&ft, &f.pack);
        let sp = f.alg.params().clone();
        for i in 0..5 {
            for j in 0..5 {
                let phi_i = f.pack.apply_phi(&f.alg.basis(i));
                let mut dphi_phii_j = crate::liealg::Vector::zero(&sp, 5);
                for m in 0..5 {
                    if !phi_i.comps[m].is_zero() {
                        dphi_phii_j = dphi_phii_j
                            .add(&nabla.derive_phi(&f.pack, m, j).scale(&phi_i.comps[m]));
                    }
                }
                let expected = dphi_phii_j
                    .scale(&Scalar::from_int(&sp, 2))
                    .sub(
                        &f.pack
                            .apply_phi(&nabla.derive_phi(&f.pack, i, j))
                            .scale(&Scalar::from_int(&sp, 2)),
                    )
                    .add(
                        &f.pack
                            .xi
                            .scale(&nabla.derive_eta(&f.pack, i, j).scale(&rat(2, 1))),
                    );
                for k in 0..5 {
                    let lowered = f
                        .pack
                        .g_of(&expected, &crate::liealg::Vector::basis(&sp, 5, k));
                    assert_eq!(n.get(&[i, j, k]), &lowered, "({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn lie_class_conditions_match_membership() {
        let f = six_param_family(Mode::Symbolic).unwrap();
        let lc = lie_class_conditions(&f.alg, &f.pack).unwrap();
        assert!(lc.f7 && !lc.f3 && !lc.f0);
        let (nabla, ft) = pipeline(&f);
        let m = class_membership(&ft, &f.pack, &nabla);
        assert_eq!((lc.f3, lc.f7, lc.f0), (m.f3, m.f7, m.f0));

        let ab = abelian_fixture();
        let lc = lie_class_conditions(&ab.alg, &ab.pack).unwrap();
        assert!(lc.f3 && lc.f7 && lc.f0);
    }

    #[test]
    fn lie_class_conditions_require_non_abelian() {
        let sp = ParamSpace::empty();
        let dim = 5;
        let mut c = vec![Scalar::zero(&sp); dim * dim * dim];
        c[(0 * dim + 1) * dim + 4] = Scalar::one(&sp);
        c[(1 * dim + 0) * dim + 4] = Scalar::from_int(&sp, -1);
        let alg = LieAlgebraSpec::new(dim, sp.clone(), c).unwrap();
        let pack = crate::fixtures::five_dim_pack(&sp);
        assert_eq!(
            lie_class_conditions(&alg, &pack).unwrap_err(),
            Error::NotNonAbelian
        );
    }

    #[test]
    fn isotropic_check() {
        // mu1 = mu2 = 1 makes the square norm vanish
        let f = six_param_family(Mode::At([
            rat(1, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(1, 1),
            rat(1, 1),
        ]))
        .unwrap();
        let nabla = levi_civita(&f.alg, &f.pack).unwrap();
        assert!(isotropic_f0_check(&square_norm_nabla_phi(&f.pack, &nabla)));
        let fc = fix_c();
        let nc = levi_civita(&fc.alg, &fc.pack).unwrap();
        assert!(!isotropic_f0_check(&square_norm_nabla_phi(&fc.pack, &nc)));
        let ab = abelian_fixture();
        let na = levi_civita(&ab.alg, &ab.pack).unwrap();
        assert!(isotropic_f0_check(&square_norm_nabla_phi(&ab.pack, &na)));
    }
}
