//! Curvature tensors of the Levi-Civita and torsion connections, Ricci and
//! scalar curvatures, the comparison identities between them, the class
//! restricted formula suites and the Einstein test.

use crate::classify::class_membership;
use crate::error::{Error, Result};
use crate::exact::{rat, Scalar};
use crate::levicivita::{
    exterior_derivative, fundamental_f, square_norm_nabla_phi, Connection, ConnectionKind,
};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::structure::StructurePack;
use crate::tensor::{Role, Tensor};

/// Lowered curvature `L(x,y,z,w) = g([nabla_x, nabla_y]z - nabla_[x,y]z, w)`.
/// The role tag follows the connection kind.
pub fn curvature_tensor(
    alg: &LieAlgebraSpec,
    conn: &Connection,
    s: &StructurePack,
) -> Tensor {
    let n = s.dim();
    let space = s.space();
    let role = match conn.kind {
        ConnectionKind::LeviCivita => Role::R,
        ConnectionKind::PhiKt => Role::K,
    };
    let mut out = Tensor::zeros(space, n, 4, Role::Generic);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // upstairs components of L(E_i, E_j) E_k
                let mut up = vec![Scalar::zero(space); n];
                for m in 0..n {
                    let mut acc = Scalar::zero(space);
                    for p in 0..n {
                        acc = &acc + &(conn.gamma(j, k, p) * conn.gamma(i, p, m));
                        acc = &acc - &(conn.gamma(i, k, p) * conn.gamma(j, p, m));
                        acc = &acc - &(alg.c(i, j, p) * conn.gamma(p, k, m));
                    }
                    up[m] = acc;
                }
                for l in 0..n {
                    let mut low = Scalar::zero(space);
                    for m in 0..n {
                        if !up[m].is_zero() {
                            low = &low + &(&up[m] * s.g.get(m, l));
                        }
                    }
                    out.set(&[i, j, k, l], low);
                }
            }
        }
    }
    out.with_role(role)
}

/// `rho(y,z) = g^{ij} L(e_i, y, z, e_j)`; role follows the input.
pub fn ricci(t4: &Tensor, s: &StructurePack) -> Tensor {
    let n = s.dim();
    let space = s.space();
    let role = if t4.role() == Role::K { Role::RhoD } else { Role::Rho };
    let mut out = Tensor::zeros(space, n, 2, Role::Generic);
    for j in 0..n {
        for k in 0..n {
            let mut acc = Scalar::zero(space);
            for i in 0..n {
                for l in 0..n {
                    let gil = s.g_inv.get(i, l);
                    if !gil.is_zero() {
                        acc = &acc + &(gil * t4.get(&[i, j, k, l]));
                    }
                }
            }
            out.set(&[j, k], acc);
        }
    }
    out.with_role(role)
}

/// `tau = g^{jk} rho(e_j, e_k)`.
pub fn scalar_curv(rho2: &Tensor, s: &StructurePack) -> Scalar {
    let n = s.dim();
    let space = s.space();
    let mut acc = Scalar::zero(space);
    for j in 0..n {
        for k in 0..n {
            let gjk = s.g_inv.get(j, k);
            if !gjk.is_zero() {
                acc = &acc + &(gjk * rho2.get(&[j, k]));
            }
        }
    }
    acc
}

/// Pair antisymmetries `L(x,y,z,w) = -L(y,x,z,w) = -L(x,y,w,z)`.
pub fn pair_symmetries_check(t4: &Tensor) -> bool {
    for idx in t4.indices() {
        let [i, j, k, l] = [idx[0], idx[1], idx[2], idx[3]];
        if t4.get(&idx) != &(-t4.get(&[j, i, k, l])) {
            return false;
        }
        if t4.get(&idx) != &(-t4.get(&[i, j, l, k])) {
            return false;
        }
    }
    true
}

/// First Bianchi identity `Cyc_{x,y,z} L(x,y,z,w) = 0`.
pub fn first_bianchi_check(t4: &Tensor) -> bool {
    for idx in t4.indices() {
        let [i, j, k, l] = [idx[0], idx[1], idx[2], idx[3]];
        let cyc = &(t4.get(&[i, j, k, l]) + t4.get(&[j, k, i, l])) + t4.get(&[k, i, j, l]);
        if !cyc.is_zero() {
            return false;
        }
    }
    true
}

fn phi_images(t4: &Tensor, s: &StructurePack, i: usize, j: usize, k: usize, l: usize) -> Scalar {
    // L(x, y, phi z, phi w)
    let n = t4.dim();
    let space = s.space();
    let phi_col: Vec<Vector> = (0..n)
        .map(|c| s.apply_phi(&Vector::basis(space, n, c)))
        .collect();
    let mut acc = Scalar::zero(space);
    for a in 0..n {
        if phi_col[k].comps[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if phi_col[l].comps[b].is_zero() {
                continue;
            }
            acc = &acc
                + &(&(&phi_col[k].comps[a] * &phi_col[l].comps[b]) * t4.get(&[i, j, a, b]));
        }
    }
    acc
}

/// Curvature-like with the anti-invariance `L(x,y,phi z,phi w) = -L(x,y,z,w)`.
pub fn phi_kaehler_check(t4: &Tensor, s: &StructurePack) -> bool {
    if !pair_symmetries_check(t4) || !first_bianchi_check(t4) {
        return false;
    }
    for idx in t4.indices() {
        let [i, j, k, l] = [idx[0], idx[1], idx[2], idx[3]];
        if phi_images(t4, s, i, j, k, l) != -t4.get(&idx) {
            return false;
        }
    }
    true
}

/// Raised torsion vectors `T(e_i, e_j)` for pairings `g(T(x,y), T(z,w))`.
fn torsion_vectors(t: &Tensor, s: &StructurePack) -> Vec<Vec<Vector>> {
    let n = s.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let omega: Vec<Scalar> =
                        (0..n).map(|k| t.get(&[i, j, k]).clone()).collect();
                    s.raise(&omega)
                })
                .collect()
        })
        .collect()
}

/// `K(x,y,z,w) = R(x,y,z,w) + (1/2)(D_x T)(y,z,w) - (1/2)(D_y T)(x,z,w)
///  + (1/4) g(T(x,y),T(z,w)) + (1/4) Cyc_{x,y,z} g(T(x,y),T(z,w))`.
pub fn krt_identity_check(
    r: &Tensor,
    k: &Tensor,
    d: &Connection,
    t: &Tensor,
    s: &StructurePack,
) -> bool {
    let dt = d.covariant_derivative(t);
    let tv = torsion_vectors(t, s);
    let gtt = |a: usize, b: usize, c: usize, e: usize| s.g_of(&tv[a][b], &tv[c][e]);
    for idx in k.indices() {
        let [i, j, p, q] = [idx[0], idx[1], idx[2], idx[3]];
        let mut rhs = r.get(&idx).clone();
        rhs = &rhs + &(dt.get(&[i, j, p, q]).scale(&rat(1, 2)));
        rhs = &rhs - &(dt.get(&[j, i, p, q]).scale(&rat(1, 2)));
        rhs = &rhs + &gtt(i, j, p, q).scale(&rat(1, 4));
        let cyc = &(&gtt(i, j, p, q) + &gtt(j, p, i, q)) + &gtt(p, i, j, q);
        rhs = &rhs + &cyc.scale(&rat(1, 4));
        if k.get(&idx) != &rhs {
            return false;
        }
    }
    true
}

/// `tau_D = tau - (1/4)|T|^2`.
pub fn tdt_check(tau: &Scalar, tau_d: &Scalar, norm_t: &Scalar) -> bool {
    tau_d == &(tau - &norm_t.scale(&rat(1, 4)))
}

/// `K = R + (1/4) g(T(x,y),T(z,w)) - (1/12) Cyc g(T(x,y),T(z,w))`; holds
/// exactly when K is of the anti-invariant Kaehler type.
pub fn kr_st_form_check(r: &Tensor, k: &Tensor, t: &Tensor, s: &StructurePack) -> bool {
    let tv = torsion_vectors(t, s);
    let gtt = |a: usize, b: usize, c: usize, e: usize| s.g_of(&tv[a][b], &tv[c][e]);
    for idx in k.indices() {
        let [i, j, p, q] = [idx[0], idx[1], idx[2], idx[3]];
        let mut rhs = r.get(&idx).clone();
        rhs = &rhs + &gtt(i, j, p, q).scale(&rat(1, 4));
        let cyc = &(&gtt(i, j, p, q) + &gtt(j, p, i, q)) + &gtt(p, i, j, q);
        rhs = &rhs - &cyc.scale(&rat(1, 12));
        if k.get(&idx) != &rhs {
            return false;
        }
    }
    true
}

/// Exterior derivative of the torsion 3-form expressed through the torsion
/// connection: `dT(x,y,z,w) = Cyc_{x,y,z}(D_x T)(y,z,w) - (D_w T)(x,y,z)
///  + 2 Cyc_{x,y,z} g(T(x,y),T(z,w))`.
pub fn torsion_differential(d: &Connection, t: &Tensor, s: &StructurePack) -> Tensor {
    let n = s.dim();
    let space = s.space();
    let dt = d.covariant_derivative(t);
    let tv = torsion_vectors(t, s);
    let gtt = |a: usize, b: usize, c: usize, e: usize| s.g_of(&tv[a][b], &tv[c][e]);
    let mut out = Tensor::zeros(space, n, 4, Role::Generic);
    for idx in dt.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        let mut acc = &(dt.get(&[x, y, z, w]) + dt.get(&[y, z, x, w])) + dt.get(&[z, x, y, w]);
        acc = &acc - dt.get(&[w, x, y, z]);
        let cyc = &(&gtt(x, y, z, w) + &gtt(y, z, x, w)) + &gtt(z, x, y, w);
        acc = &acc + &cyc.scale(&rat(2, 1));
        out.set(&idx, acc);
    }
    out
}

/// Equivalent conditions for a parallel torsion 3-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DParallelReport {
    /// `DT = 0` holds; the equivalences below are only meaningful then.
    pub applicable: bool,
    /// dT = 0 with the Chevalley-Eilenberg exterior derivative.
    pub closed_t: bool,
    /// `Cyc g(T(x,y),T(z,w)) = 0`.
    pub sigma_tt_zero: bool,
    /// `K = R + (1/4) g(T(x,y),T(z,w))`.
    pub k_form3: bool,
}

pub fn dparallel_equivalences(
    alg: &LieAlgebraSpec,
    d: &Connection,
    t: &Tensor,
    r: &Tensor,
    k: &Tensor,
    s: &StructurePack,
) -> Result<DParallelReport> {
    let applicable = d.covariant_derivative(t).is_zero();
    let closed_t = exterior_derivative(alg, t)?.is_zero();
    let tv = torsion_vectors(t, s);
    let gtt = |a: usize, b: usize, c: usize, e: usize| s.g_of(&tv[a][b], &tv[c][e]);
    let mut sigma_tt_zero = true;
    let mut k_form3 = true;
    for idx in k.indices() {
        let [i, j, p, q] = [idx[0], idx[1], idx[2], idx[3]];
        let cyc = &(&gtt(i, j, p, q) + &gtt(j, p, i, q)) + &gtt(p, i, j, q);
        if !cyc.is_zero() {
            sigma_tt_zero = false;
        }
        let rhs = r.get(&idx) + &gtt(i, j, p, q).scale(&rat(1, 4));
        if k.get(&idx) != &rhs {
            k_form3 = false;
        }
    }
    Ok(DParallelReport {
        applicable,
        closed_t,
        sigma_tt_zero,
        k_form3,
    })
}

/// Outcome of a single identity in a formula suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    HypothesisNotMet,
}

pub type SuiteReport = Vec<(&'static str, Status)>;

fn gated(hypothesis: bool, holds: bool) -> Status {
    if !hypothesis {
        Status::HypothesisNotMet
    } else if holds {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn plain(holds: bool) -> Status {
    if holds {
        Status::Pass
    } else {
        Status::Fail
    }
}

struct SuiteCtx<'a> {
    s: &'a StructurePack,
    n: usize,
    nabla_xi: Vec<Vector>,
    nabla_eta: Vec<Vec<Scalar>>,
    tv: Vec<Vec<Vector>>,
}

impl<'a> SuiteCtx<'a> {
    fn new(s: &'a StructurePack, nabla: &Connection, t: &Tensor) -> Self {
        let n = s.dim();
        let nabla_xi: Vec<Vector> = (0..n).map(|i| nabla.derive_xi(s, i)).collect();
        let nabla_eta: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| nabla.derive_eta(s, i, j)).collect())
            .collect();
        let tv = torsion_vectors(t, s);
        SuiteCtx {
            s,
            n,
            nabla_xi,
            nabla_eta,
            tv,
        }
    }

    fn gtt(&self, a: usize, b: usize, c: usize, e: usize) -> Scalar {
        self.s.g_of(&self.tv[a][b], &self.tv[c][e])
    }

    /// `g(nabla_a xi, nabla_b xi)`.
    fn gxx(&self, a: usize, b: usize) -> Scalar {
        self.s.g_of(&self.nabla_xi[a], &self.nabla_xi[b])
    }

    /// The four eta-weighted `g(nabla xi, nabla xi)` terms common to the
    /// vertical K-forms: `-e(y)e(z)g(n_x,n_w) + e(x)e(z)g(n_y,n_w)
    ///  - e(x)e(w)g(n_y,n_z) + e(y)e(w)g(n_x,n_z)`.
    fn eta_xi_block(&self, x: usize, y: usize, z: usize, w: usize) -> Scalar {
        let e = &self.s.eta;
        let mut acc = -&(&(&e[y] * &e[z]) * &self.gxx(x, w));
        acc = &acc + &(&(&e[x] * &e[z]) * &self.gxx(y, w));
        acc = &acc - &(&(&e[x] * &e[w]) * &self.gxx(y, z));
        acc = &acc + &(&(&e[y] * &e[w]) * &self.gxx(x, z));
        acc
    }
}

/// Identity suite for the vertical class: scalar-curvature relation, the
/// square-norm expression through `nabla xi`, the wedge expression of the
/// cyclic torsion pairing, and the hypothesis-gated K- and R-forms.
#[allow(clippy::too_many_arguments)]
pub fn f7_formula_suite(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
    d: &Connection,
    r: &Tensor,
    k: &Tensor,
    t: &Tensor,
) -> Result<SuiteReport> {
    let f = fundamental_f(s, nabla);
    if !class_membership(&f, s, nabla).f7 {
        return Err(Error::ClassGate("F7"));
    }
    let ctx = SuiteCtx::new(s, nabla, t);
    let n = ctx.n;
    let space = s.space();
    let mut report = SuiteReport::new();

    let tau = scalar_curv(&ricci(r, s), s);
    let tau_d = scalar_curv(&ricci(k, s), s);
    let snp = square_norm_nabla_phi(s, nabla);
    report.push((
        "scalar-curvature-relation",
        plain(tau_d == &tau + &snp.scale(&rat(3, 2))),
    ));

    // |nabla phi|^2 = -2 g^{ij} g(nabla_i xi, nabla_j xi)
    let mut vertical = Scalar::zero(space);
    for i in 0..n {
        for j in 0..n {
            let gij = s.g_inv.get(i, j);
            if !gij.is_zero() {
                vertical = &vertical + &(gij * &ctx.gxx(i, j));
            }
        }
    }
    report.push((
        "square-norm-vertical",
        plain(snp == vertical.scale(&rat(-2, 1))),
    ));

    // Cyc g(T(x,y),T(z,w)) = 4 Cyc (nabla_x eta)y (nabla_z eta)w
    //                      = (1/2)(d eta wedge d eta)
    let d_eta = exterior_derivative(alg, &crate::levicivita::eta_tensor(s))?;
    let mut wedge_ok = true;
    for idx in k.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        let cyc_tt = &(&ctx.gtt(x, y, z, w) + &ctx.gtt(y, z, x, w)) + &ctx.gtt(z, x, y, w);
        let ne = &ctx.nabla_eta;
        let cyc_ee = &(&(&ne[x][y] * &ne[z][w]) + &(&ne[y][z] * &ne[x][w]))
            + &(&ne[z][x] * &ne[y][w]);
        let de = |a: usize, b: usize| d_eta.get(&[a, b]);
        let dede = &(&(de(x, y) * de(z, w)) - &(de(x, z) * de(y, w))) + &(de(x, w) * de(y, z));
        if cyc_tt != cyc_ee.scale(&rat(4, 1)) || cyc_tt != dede.scale(&rat(1, 1)) {
            wedge_ok = false;
            break;
        }
    }
    report.push(("cyclic-torsion-pairing-wedge", plain(wedge_ok)));

    let dt_parallel = d.covariant_derivative(t).is_zero();
    let k_phi_kaehler = phi_kaehler_check(k, s);

    // DT = 0: K = R + eta-block + 2(n_x e)y (n_z e)w + (n_y e)z (n_x e)w
    //                           + (n_z e)x (n_y e)w
    let mut k_dt_form = true;
    for idx in k.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        let ne = &ctx.nabla_eta;
        let mut rhs = r.get(&idx) + &ctx.eta_xi_block(x, y, z, w);
        rhs = &rhs + &(&ne[x][y] * &ne[z][w]).scale(&rat(2, 1));
        rhs = &rhs + &(&ne[y][z] * &ne[x][w]);
        rhs = &rhs + &(&ne[z][x] * &ne[y][w]);
        if k.get(&idx) != &rhs {
            k_dt_form = false;
            break;
        }
    }
    report.push(("K-form-parallel-torsion", gated(dt_parallel, k_dt_form)));

    // phi-Kaehler: K = R + eta-block
    //  + (1/3){2(n_x e)y (n_z e)w - (n_y e)z (n_x e)w - (n_z e)x (n_y e)w}
    let mut k_pk_form = true;
    for idx in k.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        let ne = &ctx.nabla_eta;
        let mut bracket = (&ne[x][y] * &ne[z][w]).scale(&rat(2, 1));
        bracket = &bracket - &(&ne[y][z] * &ne[x][w]);
        bracket = &bracket - &(&ne[z][x] * &ne[y][w]);
        let rhs = &(r.get(&idx) + &ctx.eta_xi_block(x, y, z, w)) + &bracket.scale(&rat(1, 3));
        if k.get(&idx) != &rhs {
            k_pk_form = false;
            break;
        }
    }
    report.push(("K-form-phi-kaehler", gated(k_phi_kaehler, k_pk_form)));

    // ricci relation: rho_D(y,z) = rho(y,z) - 2 g(n_y xi, n_z xi)
    //                 + (1/2) e(y) e(z) |nabla phi|^2
    let rho = ricci(r, s);
    let rho_d = ricci(k, s);
    let mut ricci_ok = true;
    for y in 0..n {
        for z in 0..n {
            let mut rhs = rho.get(&[y, z]) - &ctx.gxx(y, z).scale(&rat(2, 1));
            rhs = &rhs + &(&(&s.eta[y] * &s.eta[z]) * &snp).scale(&rat(1, 2));
            if rho_d.get(&[y, z]) != &rhs {
                ricci_ok = false;
                break;
            }
        }
    }
    report.push(("ricci-relation", gated(k_phi_kaehler, ricci_ok)));

    // R(x,y,phi z,phi w) defect and R(x,y,z,xi) forms
    let mut r_defect = true;
    let mut r_xi = true;
    for idx in r.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        let ne = &ctx.nabla_eta;
        let ne_phi = |a: usize, b: usize| -> Scalar {
            // (nabla_a eta) phi e_b
            let col = s.apply_phi(&Vector::basis(space, n, b));
            let mut acc = Scalar::zero(space);
            for m in 0..n {
                if !col.comps[m].is_zero() {
                    acc = &acc + &(&col.comps[m] * &ne[a][m]);
                }
            }
            acc
        };
        let mut rhs = &(-r.get(&idx)) - &ctx.eta_xi_block(x, y, z, w);
        let mut bracket = &(&ne[x][z] * &ne[y][w]) - &(&ne[x][w] * &ne[y][z]);
        bracket = &bracket + &(&ne_phi(x, z) * &ne_phi(y, w));
        bracket = &bracket - &(&ne_phi(x, w) * &ne_phi(y, z));
        rhs = &rhs + &bracket.scale(&rat(1, 3));
        if phi_images(r, s, x, y, z, w) != rhs {
            r_defect = false;
        }
        if w == 0 {
            // R(x,y,z,xi) = e(x) g(n_y xi, n_z xi) - e(y) g(n_x xi, n_z xi)
            let mut r_with_xi = Scalar::zero(space);
            for m in 0..n {
                if !s.xi.comps[m].is_zero() {
                    r_with_xi = &r_with_xi + &(&s.xi.comps[m] * r.get(&[x, y, z, m]));
                }
            }
            let expect =
                &(&s.eta[x] * &ctx.gxx(y, z)) - &(&s.eta[y] * &ctx.gxx(x, z));
            if r_with_xi != expect {
                r_xi = false;
            }
        }
    }
    report.push(("R-phi-defect", gated(k_phi_kaehler, r_defect)));
    report.push(("R-xi-form", gated(k_phi_kaehler, r_xi)));

    // DT = 0 and phi-Kaehler: K = R + eta-block + (n_x e)y (n_z e)w,
    // and R(x,y,z,xi) = (1/2) g(T(x,y), nabla_z xi)
    let both = dt_parallel && k_phi_kaehler;
    let mut k_both = true;
    let mut r_t_xi = true;
    for idx in k.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        let ne = &ctx.nabla_eta;
        let rhs =
            &(r.get(&idx) + &ctx.eta_xi_block(x, y, z, w)) + &(&ne[x][y] * &ne[z][w]);
        if k.get(&idx) != &rhs {
            k_both = false;
        }
        if w == 0 {
            let mut r_with_xi = Scalar::zero(space);
            for m in 0..n {
                if !s.xi.comps[m].is_zero() {
                    r_with_xi = &r_with_xi + &(&s.xi.comps[m] * r.get(&[x, y, z, m]));
                }
            }
            let expect = s.g_of(&ctx.tv[x][y], &ctx.nabla_xi[z]).scale(&rat(1, 2));
            if r_with_xi != expect {
                r_t_xi = false;
            }
        }
    }
    report.push(("K-form-parallel-phi-kaehler", gated(both, k_both)));
    report.push(("R-torsion-xi", gated(both, r_t_xi)));

    Ok(report)
}

/// Identity suite for the horizontal class.
#[allow(clippy::too_many_arguments)]
pub fn f3_formula_suite(
    alg: &LieAlgebraSpec,
    s: &StructurePack,
    nabla: &Connection,
    d: &Connection,
    r: &Tensor,
    k: &Tensor,
    t: &Tensor,
) -> Result<SuiteReport> {
    let f = fundamental_f(s, nabla);
    if !class_membership(&f, s, nabla).f3 {
        return Err(Error::ClassGate("F3"));
    }
    let _ = alg;
    let ctx = SuiteCtx::new(s, nabla, t);
    let n = ctx.n;
    let space = s.space();
    let mut report = SuiteReport::new();

    let tau = scalar_curv(&ricci(r, s), s);
    let tau_d = scalar_curv(&ricci(k, s), s);
    let snp = square_norm_nabla_phi(s, nabla);
    report.push((
        "scalar-curvature-relation",
        plain(tau_d == &tau + &snp.scale(&rat(3, 8))),
    ));

    let dt_parallel = d.covariant_derivative(t).is_zero();
    let k_phi_kaehler = phi_kaehler_check(k, s);
    let both = dt_parallel && k_phi_kaehler;

    let mut r_xi_zero = true;
    let mut r_defect = true;
    for idx in r.indices() {
        let [x, y, z, w] = [idx[0], idx[1], idx[2], idx[3]];
        if w == 0 {
            let mut r_with_xi = Scalar::zero(space);
            for m in 0..n {
                if !s.xi.comps[m].is_zero() {
                    r_with_xi = &r_with_xi + &(&s.xi.comps[m] * r.get(&[x, y, z, m]));
                }
            }
            if !r_with_xi.is_zero() {
                r_xi_zero = false;
            }
        }
        // R(x,y,phi z,phi w) = -R(x,y,z,w)
        //  + (1/2) g(T(x,y), (nabla_{phi z} phi)w + (nabla_w phi) phi z)
        let phi_z = s.apply_phi(&Vector::basis(space, n, z));
        let mut corr = Vector::zero(space, n);
        for m in 0..n {
            if !phi_z.comps[m].is_zero() {
                corr = corr.add(&nabla.derive_phi(s, m, w).scale(&phi_z.comps[m]));
                corr = corr.add(&nabla.derive_phi(s, w, m).scale(&phi_z.comps[m]));
            }
        }
        let rhs = &(-r.get(&idx)) + &s.g_of(&ctx.tv[x][y], &corr).scale(&rat(1, 2));
        if phi_images(r, s, x, y, z, w) != rhs {
            r_defect = false;
        }
    }
    report.push(("R-xi-zero", gated(both, r_xi_zero)));
    report.push(("R-phi-defect", gated(both, r_defect)));

    Ok(report)
}

/// Einstein test: `rho = c g` for a single scalar `c`; returns the constant
/// when it holds.
pub fn einstein_check(rho2: &Tensor, s: &StructurePack) -> Option<Scalar> {
    let n = s.dim();
    let space = s.space();
    // pick a metric entry with a nonzero rational value to solve for c
    let mut c = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if let Some(v) = s.g.get(i, j).as_rat() {
                if !num_traits::Zero::is_zero(&v) {
                    c = Some(rho2.get(&[i, j]).scale(&(Scalar::one(space).as_rat().unwrap() / v)));
                    break 'outer;
                }
            }
        }
    }
    let c = c?;
    for i in 0..n {
        for j in 0..n {
            if rho2.get(&[i, j]) != &(&c * s.g.get(i, j)) {
                return None;
            }
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        abelian_fixture, einstein_instance, fix_c, six_param_family, Fixture, Mode,
    };
    use crate::levicivita::levi_civita;
    use crate::phikt::{build_d, norm_t, torsion_from_fundamental};

    struct Full {
        fx: Fixture,
        nabla: Connection,
        d: Connection,
        t: Tensor,
        r: Tensor,
        k: Tensor,
    }

    fn full(fx: Fixture) -> Full {
        let nabla = levi_civita(&fx.alg, &fx.pack).unwrap();
        let f = fundamental_f(&fx.pack, &nabla);
        let t = torsion_from_fundamental(&fx.alg, &fx.pack, &nabla, &f).unwrap();
        let d = build_d(&fx.alg, &fx.pack, &nabla, &t).unwrap();
        let r = curvature_tensor(&fx.alg, &nabla, &fx.pack);
        let k = curvature_tensor(&fx.alg, &d, &fx.pack);
        Full { fx, nabla, d, t, r, k }
    }

    fn lam(sp: &std::sync::Arc<crate::exact::ParamSpace>) -> [Scalar; 6] {
        [
            Scalar::param(sp, "l1").unwrap(),
            Scalar::param(sp, "l2").unwrap(),
            Scalar::param(sp, "l3").unwrap(),
            Scalar::param(sp, "l4").unwrap(),
            Scalar::param(sp, "m1").unwrap(),
            Scalar::param(sp, "m2").unwrap(),
        ]
    }

    /// l1^2 + l2^2 - l3^2 - l4^2
    fn big_lambda(sp: &std::sync::Arc<crate::exact::ParamSpace>) -> Scalar {
        let [l1, l2, l3, l4, _, _] = lam(sp);
        &(&l1.pow(2) + &l2.pow(2)) - &(&l3.pow(2) + &l4.pow(2))
    }

    #[test]
    fn r_table_symbolic() {
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        let sp = c.fx.alg.params().clone();
        let [l1, l2, l3, l4, m1, m2] = lam(&sp);
        let ll = big_lambda(&sp);
        let mix = &(&(&l1 * &l3) + &(&l2 * &l4)).scale(&rat(2, 1)) + &(&m1 * &m2).scale(&rat(3, 1));
        let g = |i: usize, j: usize, k: usize, l: usize| c.r.get(&[i, j, k, l]).clone();
        // indices below are zero-based
        assert_eq!(g(0, 1, 0, 1), &ll + &m1.pow(2).scale(&rat(3, 1)));
        assert_eq!(g(2, 3, 2, 3), g(0, 1, 0, 1));
        assert_eq!(
            g(0, 1, 2, 3),
            &(&(-&ll) - &m1.pow(2).scale(&rat(2, 1))) + &m2.pow(2)
        );
        assert_eq!(g(2, 3, 0, 1), g(0, 1, 2, 3));
        assert_eq!(
            g(0, 3, 0, 3),
            &(-&ll) + &m2.pow(2).scale(&rat(3, 1))
        );
        assert_eq!(g(1, 2, 1, 2), g(0, 3, 0, 3));
        assert_eq!(
            g(0, 3, 1, 2),
            &(&ll + &m1.pow(2)) - &m2.pow(2).scale(&rat(2, 1))
        );
        assert_eq!(g(1, 2, 0, 3), g(0, 3, 1, 2));
        assert_eq!(g(0, 1, 0, 3), mix);
        assert_eq!(g(0, 1, 1, 2), -&mix);
        assert_eq!(g(1, 2, 0, 1), -&mix);
        assert_eq!(g(1, 2, 2, 3), mix.clone());
        assert_eq!(g(0, 3, 0, 1), mix.clone());
        assert_eq!(g(0, 3, 2, 3), -&mix);
        assert_eq!(g(2, 3, 0, 3), -&mix);
        assert_eq!(g(2, 3, 1, 2), mix.clone());
        let m12sum = -&(&m1.pow(2) + &m2.pow(2));
        assert_eq!(g(0, 2, 1, 3), m12sum);
        assert_eq!(g(1, 3, 0, 2), g(0, 2, 1, 3));
        let m1m2 = (&m1 * &m2).scale(&rat(-2, 1));
        assert_eq!(g(0, 4, 2, 4), m1m2);
        assert_eq!(g(1, 4, 3, 4), g(0, 4, 2, 4));
        let vert = &(-&m1.pow(2)) + &m2.pow(2);
        assert_eq!(g(0, 4, 0, 4), vert);
        assert_eq!(g(1, 4, 1, 4), vert.clone());
        assert_eq!(g(2, 4, 2, 4), -&vert);
        assert_eq!(g(3, 4, 3, 4), -&vert);
        // symmetries
        assert!(pair_symmetries_check(&c.r));
        assert!(first_bianchi_check(&c.r));
    }

    #[test]
    fn r_values_specialized() {
        let c = full(fix_c());
        let sp = c.fx.alg.params().clone();
        let v = |x: i64| Scalar::from_int(&sp, x);
        assert_eq!(c.r.get(&[0, 1, 0, 1]), &v(4));
        assert_eq!(c.r.get(&[0, 1, 2, 3]), &v(-3));
        assert_eq!(c.r.get(&[0, 3, 0, 3]), &v(-1));
        let ab = full(abelian_fixture());
        assert!(ab.r.is_zero());
        assert!(ab.k.is_zero());
    }

    #[test]
    fn k_table() {
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        let sp = c.fx.alg.params().clone();
        let [l1, l2, l3, l4, m1, m2] = lam(&sp);
        let ll = big_lambda(&sp);
        let g = |i: usize, j: usize, k: usize, l: usize| c.k.get(&[i, j, k, l]).clone();
        let k1212 = &ll + &m1.pow(2).scale(&rat(4, 1));
        assert_eq!(g(0, 1, 0, 1), k1212);
        assert_eq!(g(0, 1, 2, 3), -&k1212);
        assert_eq!(g(2, 3, 0, 1), -&k1212);
        assert_eq!(g(2, 3, 2, 3), k1212.clone());
        let k1414 = &(-&ll) + &m2.pow(2).scale(&rat(4, 1));
        assert_eq!(g(0, 3, 0, 3), k1414);
        assert_eq!(g(0, 3, 1, 2), -&k1414);
        assert_eq!(g(1, 2, 0, 3), -&k1414);
        assert_eq!(g(1, 2, 1, 2), k1414.clone());
        let k1214 =
            &(&(&l1 * &l3) + &(&l2 * &l4)).scale(&rat(2, 1)) + &(&m1 * &m2).scale(&rat(4, 1));
        assert_eq!(g(0, 1, 0, 3), k1214);
        assert_eq!(g(0, 1, 1, 2), -&k1214);
        assert_eq!(g(0, 3, 0, 1), k1214.clone());
        assert_eq!(g(2, 3, 1, 2), k1214.clone());
        assert!(pair_symmetries_check(&c.k));
        // K of the natural connection is anti-invariant under phi in the
        // last pair even when the Bianchi identity fails
        for idx in c.k.indices() {
            let [i, j, k, l] = [idx[0], idx[1], idx[2], idx[3]];
            assert_eq!(phi_images(&c.k, &c.fx.pack, i, j, k, l), -c.k.get(&idx));
        }
        // K(x,y,z,xi) = 0 because D xi = 0
        for i in 0..5 {
            for j in 0..5 {
                for z in 0..5 {
                    assert!(c.k.get(&[i, j, z, 4]).is_zero());
                }
            }
        }
        let cc = full(fix_c());
        assert_eq!(
            cc.k.get(&[0, 1, 0, 1]),
            &Scalar::from_int(cc.fx.alg.params(), 5)
        );
    }

    #[test]
    fn ricci_and_scalar() {
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        let sp = c.fx.alg.params().clone();
        let [l1, l2, l3, l4, m1, m2] = lam(&sp);
        let ll = big_lambda(&sp);
        let mm = &m1.pow(2) - &m2.pow(2);
        let rho = ricci(&c.r, &c.fx.pack);
        let diag = &ll.scale(&rat(-2, 1)) - &mm.scale(&rat(2, 1));
        assert_eq!(rho.get(&[0, 0]), &diag);
        assert_eq!(rho.get(&[1, 1]), &diag);
        assert_eq!(rho.get(&[2, 2]), &(-&diag));
        assert_eq!(rho.get(&[3, 3]), &(-&diag));
        assert_eq!(rho.get(&[4, 4]), &mm.scale(&rat(4, 1)));
        let cross =
            &(&(&l1 * &l3) + &(&l2 * &l4)).scale(&rat(-4, 1)) - &(&m1 * &m2).scale(&rat(4, 1));
        assert_eq!(rho.get(&[0, 2]), &cross);
        assert_eq!(rho.get(&[1, 3]), &cross);
        let tau = scalar_curv(&rho, &c.fx.pack);
        assert_eq!(tau, &ll.scale(&rat(-8, 1)) - &mm.scale(&rat(4, 1)));
        let rho_d = ricci(&c.k, &c.fx.pack);
        let diag_d = &ll.scale(&rat(-2, 1)) - &mm.scale(&rat(4, 1));
        assert_eq!(rho_d.get(&[0, 0]), &diag_d);
        let cross_d =
            &(&(&l1 * &l3) + &(&l2 * &l4)).scale(&rat(-4, 1)) - &(&m1 * &m2).scale(&rat(8, 1));
        assert_eq!(rho_d.get(&[0, 2]), &cross_d);
        let tau_d = scalar_curv(&rho_d, &c.fx.pack);
        assert_eq!(tau_d, &ll.scale(&rat(-8, 1)) - &mm.scale(&rat(16, 1)));
        // specialized values
        let cc = full(fix_c());
        let spc = cc.fx.alg.params().clone();
        assert_eq!(
            scalar_curv(&ricci(&cc.r, &cc.fx.pack), &cc.fx.pack),
            Scalar::from_int(&spc, -12)
        );
        assert_eq!(
            scalar_curv(&ricci(&cc.k, &cc.fx.pack), &cc.fx.pack),
            Scalar::from_int(&spc, -24)
        );
    }

    #[test]
    fn comparison_identities() {
        for c in [
            full(six_param_family(Mode::Symbolic).unwrap()),
            full(fix_c()),
            full(einstein_instance()),
            full(abelian_fixture()),
        ] {
            assert!(
                krt_identity_check(&c.r, &c.k, &c.d, &c.t, &c.fx.pack),
                "{}",
                c.fx.name
            );
            let tau = scalar_curv(&ricci(&c.r, &c.fx.pack), &c.fx.pack);
            let tau_d = scalar_curv(&ricci(&c.k, &c.fx.pack), &c.fx.pack);
            let nt = norm_t(&c.t, &c.fx.pack);
            assert!(tdt_check(&tau, &tau_d, &nt), "{}", c.fx.name);
        }
        // negative control: perturbed K fails
        let c = full(fix_c());
        let mut bad = c.k.clone();
        let sp = c.fx.alg.params().clone();
        bad.set(&[0, 1, 0, 1], bad.get(&[0, 1, 0, 1]) + &Scalar::one(&sp));
        assert!(!krt_identity_check(&c.r, &bad, &c.d, &c.t, &c.fx.pack));
    }

    #[test]
    fn phi_kaehler_classification() {
        let ab = full(abelian_fixture());
        assert!(phi_kaehler_check(&ab.k, &ab.fx.pack));
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        assert!(!phi_kaehler_check(&c.k, &c.fx.pack));
        let f0 = full(
            six_param_family(Mode::At([
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
            ]))
            .unwrap(),
        );
        assert!(phi_kaehler_check(&f0.k, &f0.fx.pack));
        // R at the specialization fails the anti-invariance
        let cc = full(fix_c());
        assert!(!phi_kaehler_check(&cc.r, &cc.fx.pack));
    }

    #[test]
    fn kr_st_matches_phi_kaehler() {
        let ab = full(abelian_fixture());
        assert!(kr_st_form_check(&ab.r, &ab.k, &ab.t, &ab.fx.pack));
        let f0 = full(
            six_param_family(Mode::At([
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
            ]))
            .unwrap(),
        );
        assert!(kr_st_form_check(&f0.r, &f0.k, &f0.t, &f0.fx.pack));
        let cc = full(fix_c());
        assert_eq!(
            kr_st_form_check(&cc.r, &cc.k, &cc.t, &cc.fx.pack),
            phi_kaehler_check(&cc.k, &cc.fx.pack)
        );
        assert!(!kr_st_form_check(&cc.r, &cc.k, &cc.t, &cc.fx.pack));
    }

    #[test]
    fn parallel_torsion_equivalences() {
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        let rep =
            dparallel_equivalences(&c.fx.alg, &c.d, &c.t, &c.r, &c.k, &c.fx.pack).unwrap();
        assert!(rep.applicable);
        assert!(!rep.sigma_tt_zero);
        assert!(!rep.k_form3);
        assert!(!rep.closed_t);
        let ab = full(abelian_fixture());
        let rep =
            dparallel_equivalences(&ab.fx.alg, &ab.d, &ab.t, &ab.r, &ab.k, &ab.fx.pack)
                .unwrap();
        assert_eq!(
            rep,
            DParallelReport {
                applicable: true,
                closed_t: true,
                sigma_tt_zero: true,
                k_form3: true
            }
        );
        // exterior derivative of T: nonzero on the horizontal 4-tuple,
        // zero on the tuples containing the Reeb direction
        let cc = full(fix_c());
        let dt = exterior_derivative(&cc.fx.alg, &cc.t).unwrap();
        assert_eq!(
            dt.get(&[0, 1, 2, 3]),
            &Scalar::from_int(cc.fx.alg.params(), -8)
        );
        assert!(dt.get(&[1, 2, 3, 4]).is_zero());
        let sp = c.fx.alg.params().clone();
        let [_, _, _, _, m1, m2] = lam(&sp);
        let dt_sym = exterior_derivative(&c.fx.alg, &c.t).unwrap();
        assert_eq!(
            dt_sym.get(&[0, 1, 2, 3]),
            &(&m1.pow(2) + &m2.pow(2)).scale(&rat(-8, 1))
        );
        // the connection-based expression reproduces the same 4-form
        for f in [&c, &cc, &ab] {
            let via_d = torsion_differential(&f.d, &f.t, &f.fx.pack);
            let via_ce = exterior_derivative(&f.fx.alg, &f.t).unwrap();
            assert_eq!(via_d, via_ce, "{}", f.fx.name);
        }
    }

    #[test]
    fn f7_suite_on_family() {
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        let rep = f7_formula_suite(
            &c.fx.alg, &c.fx.pack, &c.nabla, &c.d, &c.r, &c.k, &c.t,
        )
        .unwrap();
        let get = |name: &str| rep.iter().find(|(n, _)| *n == name).unwrap().1;
        assert_eq!(get("scalar-curvature-relation"), Status::Pass);
        assert_eq!(get("square-norm-vertical"), Status::Pass);
        assert_eq!(get("cyclic-torsion-pairing-wedge"), Status::Pass);
        assert_eq!(get("K-form-parallel-torsion"), Status::Pass);
        // phi-Kaehler hypothesis fails for generic parameters
        assert_eq!(get("K-form-phi-kaehler"), Status::HypothesisNotMet);
        assert_eq!(get("ricci-relation"), Status::HypothesisNotMet);
        assert_eq!(get("R-phi-defect"), Status::HypothesisNotMet);
        assert_eq!(get("R-xi-form"), Status::HypothesisNotMet);
        assert_eq!(get("K-form-parallel-phi-kaehler"), Status::HypothesisNotMet);
        assert_eq!(get("R-torsion-xi"), Status::HypothesisNotMet);
        // F0 specialization: every hypothesis holds, everything passes
        let f0 = full(
            six_param_family(Mode::At([
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
            ]))
            .unwrap(),
        );
        let rep = f7_formula_suite(
            &f0.fx.alg, &f0.fx.pack, &f0.nabla, &f0.d, &f0.r, &f0.k, &f0.t,
        )
        .unwrap();
        assert!(rep.iter().all(|(_, s)| *s == Status::Pass), "{rep:?}");
    }

    #[test]
    fn f3_suite_gating() {
        let c = full(six_param_family(Mode::Symbolic).unwrap());
        assert_eq!(
            f3_formula_suite(&c.fx.alg, &c.fx.pack, &c.nabla, &c.d, &c.r, &c.k, &c.t)
                .unwrap_err(),
            Error::ClassGate("F3")
        );
        let ab = full(abelian_fixture());
        let rep = f3_formula_suite(
            &ab.fx.alg, &ab.fx.pack, &ab.nabla, &ab.d, &ab.r, &ab.k, &ab.t,
        )
        .unwrap();
        assert!(rep.iter().all(|(_, s)| *s == Status::Pass), "{rep:?}");
    }

    #[test]
    fn einstein_classification() {
        let e = full(einstein_instance());
        let rho = ricci(&e.r, &e.fx.pack);
        let c = einstein_check(&rho, &e.fx.pack).unwrap();
        assert!(c.is_zero());
        let cc = full(fix_c());
        assert!(einstein_check(&ricci(&cc.r, &cc.fx.pack), &cc.fx.pack).is_none());
        let ab = full(abelian_fixture());
        assert!(einstein_check(&ricci(&ab.r, &ab.fx.pack), &ab.fx.pack)
            .unwrap()
            .is_zero());
        // symbolic family: the two parameter conditions characterize rho = c g
        let sym = full(six_param_family(Mode::Symbolic).unwrap());
        assert!(einstein_check(&ricci(&sym.r, &sym.fx.pack), &sym.fx.pack).is_none());
    }
}
