//! Check registry: every identity the library knows about, run against a
//! given algebra and structure, producing a deterministic ordered report.
//! Checks that depend on a class or on an extra hypothesis are gated and
//! report `hypothesis_not_met` or `not_applicable` instead of failing.

use crate::classify::{
    class_membership, lie_class_conditions, nijenhuis, nijenhuis_hv_split,
    nijenhuis_via_brackets,
};
use crate::curvature::{
    curvature_tensor, dparallel_equivalences, einstein_check, first_bianchi_check,
    kr_st_form_check, krt_identity_check, pair_symmetries_check, phi_kaehler_check, ricci,
    scalar_curv, tdt_check, torsion_differential, Status,
};
use crate::error::{Error, Result};
use crate::exact::{rat, Scalar};
use crate::levicivita::{
    eta_tensor, exterior_derivative, fundamental_f, killing_check, levi_civita,
    square_norm_nabla_phi,
};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::phikt::{
    build_d, torsion_phi_shift_check, nijenhuis_torsion_check, norm_t, deformation_conditions_check, torsion_horizontal_form,
    torsion_from_fundamental, torsion_wedge_form, torsion_covariant_form, torsion_vertical_form,
};
use crate::structure::StructurePack;
use crate::tensor::{Role, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    HypothesisNotMet,
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::HypothesisNotMet => "hypothesis_not_met",
            CheckStatus::NotApplicable => "not_applicable",
        }
    }
}

/// First mismatching component of a failed comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub witness: Option<Witness>,
    pub anchor: &'static str,
    pub note: Option<String>,
}

impl CheckResult {
    fn plain(name: &'static str, anchor: &'static str, ok: bool) -> Self {
        CheckResult {
            name,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness: None,
            anchor,
            note: None,
        }
    }

    fn gated(name: &'static str, anchor: &'static str, hypothesis: bool, ok: bool) -> Self {
        let status = if !hypothesis {
            CheckStatus::HypothesisNotMet
        } else if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            name,
            status,
            witness: None,
            anchor,
            note: None,
        }
    }

    fn na(name: &'static str, anchor: &'static str) -> Self {
        CheckResult {
            name,
            status: CheckStatus::NotApplicable,
            witness: None,
            anchor,
            note: None,
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

pub fn any_fail(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.status == CheckStatus::Fail)
}

/// Componentwise comparison producing a witness on the first mismatch
/// (lexicographic index order); roles are ignored.
fn tensor_eq(
    name: &'static str,
    anchor: &'static str,
    lhs: &Tensor,
    rhs: &Tensor,
) -> CheckResult {
    for idx in lhs.indices() {
        if lhs.get(&idx) != rhs.get(&idx) {
            return CheckResult {
                name,
                status: CheckStatus::Fail,
                witness: Some(Witness {
                    indices: idx.clone(),
                    lhs: lhs.get(&idx).to_string(),
                    rhs: rhs.get(&idx).to_string(),
                }),
                anchor,
                note: None,
            };
        }
    }
    CheckResult::plain(name, anchor, true)
}

fn scalar_eq(
    name: &'static str,
    anchor: &'static str,
    lhs: &Scalar,
    rhs: &Scalar,
) -> CheckResult {
    if lhs == rhs {
        CheckResult::plain(name, anchor, true)
    } else {
        CheckResult {
            name,
            status: CheckStatus::Fail,
            witness: Some(Witness {
                indices: Vec::new(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
            anchor,
            note: None,
        }
    }
}

const F7_SUITE: [(&str, &'static str); 10] = [
    ("f7-scalar-curvature-relation", "scalar-curvature-relation"),
    ("f7-square-norm-vertical", "square-norm-vertical"),
    ("f7-cyclic-torsion-pairing-wedge", "cyclic-torsion-pairing-wedge"),
    ("f7-K-form-parallel-torsion", "K-form-parallel-torsion"),
    ("f7-K-form-phi-kaehler", "K-form-phi-kaehler"),
    ("f7-ricci-relation", "ricci-relation"),
    ("f7-R-phi-defect", "R-phi-defect"),
    ("f7-R-xi-form", "R-xi-form"),
    ("f7-K-form-parallel-phi-kaehler", "K-form-parallel-phi-kaehler"),
    ("f7-R-torsion-xi", "R-torsion-xi"),
];

const F3_SUITE: [(&str, &'static str); 3] = [
    ("f3-scalar-curvature-relation", "scalar-curvature-relation"),
    ("f3-R-xi-zero", "R-xi-zero"),
    ("f3-R-phi-defect", "R-phi-defect"),
];

const SUITE_ANCHOR_F7: &str = "identity suite of the vertical class";
const SUITE_ANCHOR_F3: &str = "identity suite of the horizontal class";

/// Names of the checks that need the torsion connection, in report order;
/// used to emit `not_applicable` rows when the connection does not exist.
const TORSION_CHECKS: [(&str, &str); 19] = [
    ("torsion-skew", "torsion of the natural connection is a 3-form"),
    ("torsion-route-wedge", "torsion via the eta wedge and Nijenhuis cyclic sum"),
    ("torsion-route-covariant", "torsion via the covariant (1,2) expression"),
    ("torsion-route-vertical", "vertical-class torsion shortcut"),
    ("torsion-route-horizontal", "horizontal-class torsion shortcut"),
    ("torsion-connection-difference", "torsion as twice the connection difference"),
    ("half-torsion-recovers-f", "half torsion reproduces the fundamental tensor"),
    ("half-torsion-skew", "half torsion skew in its last two slots"),
    ("torsion-reeb-pairing", "torsion against the Reeb field equals d(eta)"),
    ("torsion-phi-shift", "torsion phi-shift identities"),
    ("nijenhuis-torsion-relation", "Nijenhuis tensor from torsion phi-combinations"),
    ("curvature-comparison", "curvature of the natural connection from the metric one"),
    ("scalar-curvature-torsion-norm", "scalar curvature defect is a quarter torsion norm"),
    ("r-curvature-like", "metric curvature pair antisymmetries and first Bianchi"),
    ("k-pair-antisymmetries", "natural curvature pair antisymmetries"),
    ("k-kaehler-form-equivalence", "closed curvature form matches the Kaehler-type test"),
    ("dt-route-agreement", "exterior derivative of torsion via brackets and via the connection"),
    ("parallel-torsion-equivalences", "equivalences under parallel torsion"),
    ("isotropic-f0-equivalences", "isotropic square norm equivalences"),
];

/// Run every registered check. Structure-relation or Jacobi violations
/// abort before any check runs.
pub fn run_suite(alg: &LieAlgebraSpec, s: &StructurePack) -> Result<Vec<CheckResult>> {
    if alg.dim() != s.dim() {
        return Err(Error::DimensionMismatch);
    }
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidStructure(violations.join("; ")));
    }
    if let Some((idx, val)) = alg.jacobi_check() {
        return Err(Error::InvalidStructure(format!(
            "jacobi identity fails at ({},{},{}) component {}: {}",
            idx[0] + 1,
            idx[1] + 1,
            idx[2] + 1,
            idx[3] + 1,
            val
        )));
    }
    let n = s.dim();
    let space = s.space();
    let nabla = levi_civita(alg, s)?;
    let f = fundamental_f(s, &nabla);
    let membership = class_membership(&f, s, &nabla);
    let mut out = Vec::new();

    out.push(CheckResult::plain(
        "structure-relations",
        "defining relations of the endomorphism, Reeb field, dual form and metric",
        true,
    ));
    out.push(CheckResult::plain(
        "jacobi-identity",
        "Jacobi identity of the bracket",
        true,
    ));

    let phi_col: Vec<Vector> = (0..n)
        .map(|c| s.apply_phi(&Vector::basis(space, n, c)))
        .collect();
    let f_at = |x: usize, y: usize, z: usize| f.get(&[x, y, z]).clone();
    let f_phi2 = |x: usize, y: usize, z: usize| -> Scalar {
        // F(x, phi y, phi z)
        let mut acc = Scalar::zero(space);
        for a in 0..n {
            if phi_col[y].comps[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if !phi_col[z].comps[b].is_zero() {
                    acc = &acc
                        + &(&(&phi_col[y].comps[a] * &phi_col[z].comps[b]) * &f_at(x, a, b));
                }
            }
        }
        acc
    };
    let f_xi = |x: usize, slot_y: Option<usize>, slot_z: Option<usize>| -> Scalar {
        // F with xi substituted in the slot left as None
        let mut acc = Scalar::zero(space);
        for m in 0..n {
            if s.xi.comps[m].is_zero() {
                continue;
            }
            let (y, z) = match (slot_y, slot_z) {
                (None, Some(z)) => (m, z),
                (Some(y), None) => (y, m),
                _ => unreachable!(),
            };
            acc = &acc + &(&s.xi.comps[m] * &f_at(x, y, z));
        }
        acc
    };

    let mut sym_ok = true;
    let mut shift_ok = true;
    let mut cyc_ok = true;
    for idx in f.indices() {
        let [x, y, z] = [idx[0], idx[1], idx[2]];
        if f.get(&idx) != &f_at(x, z, y) {
            sym_ok = false;
        }
        let mut rhs = f_phi2(x, y, z);
        rhs = &rhs + &(&s.eta[y] * &f_xi(x, None, Some(z)));
        rhs = &rhs + &(&s.eta[z] * &f_xi(x, Some(y), None));
        if f.get(&idx) != &rhs {
            shift_ok = false;
        }
        let cyc = &(&f_at(x, y, z) + &f_at(y, z, x)) + &f_at(z, x, y);
        if !cyc.is_zero() {
            cyc_ok = false;
        }
    }
    out.push(CheckResult::plain(
        "f-last-two-symmetry",
        "fundamental tensor symmetric in its last two slots",
        sym_ok,
    ));
    out.push(CheckResult::plain(
        "f-phi-shift-symmetry",
        "fundamental tensor phi-shift property with boundary terms",
        shift_ok,
    ));
    out.push(CheckResult::plain(
        "reeb-killing",
        "Reeb field Killing condition",
        killing_check(s, &nabla),
    ));
    out.push(CheckResult::plain(
        "f-cyclic-sum",
        "vanishing cyclic sum of the fundamental tensor",
        cyc_ok,
    ));

    match lie_class_conditions(alg, s) {
        Ok(cond) => {
            let agree = cond.f3 == membership.f3
                && cond.f7 == membership.f7
                && cond.f0 == membership.f0;
            out.push(CheckResult::plain(
                "class-bracket-conditions",
                "bracket-level class conditions match the tensor-level ones",
                agree,
            ));
        }
        Err(Error::NotNonAbelian) => out.push(CheckResult::na(
            "class-bracket-conditions",
            "bracket-level class conditions match the tensor-level ones",
        )),
        Err(e) => return Err(e),
    }

    if alg.non_abelian_structure_check(s) {
        // 2F(X,Y,Z) = g([X,phiY] - phi[X,Y], Z) + g([X,phiZ] - phi[X,Z], Y)
        let mut ok = true;
        'two_f: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let ey = Vector::basis(space, n, y);
                    let ez = Vector::basis(space, n, z);
                    let ex = Vector::basis(space, n, x);
                    let term = |arg: &Vector, pair: &Vector| -> Result<Scalar> {
                        let br = alg.bracket(&ex, &s.apply_phi(arg))?;
                        let phibr = s.apply_phi(&alg.bracket(&ex, arg)?);
                        Ok(s.g_of(&br.sub(&phibr), pair))
                    };
                    let rhs = &term(&ey, &ez)? + &term(&ez, &ey)?;
                    if f.get(&[x, y, z]).scale(&rat(2, 1)) != rhs {
                        ok = false;
                        break 'two_f;
                    }
                }
            }
        }
        out.push(CheckResult::plain(
            "two-f-bracket-identity",
            "fundamental tensor doubled from bracket defects",
            ok,
        ));
    } else {
        out.push(CheckResult::na(
            "two-f-bracket-identity",
            "fundamental tensor doubled from bracket defects",
        ));
    }

    let n_tensor = nijenhuis(&f, s);
    out.push(tensor_eq(
        "nijenhuis-route-agreement",
        "Nijenhuis tensor via brackets and via the fundamental tensor",
        &nijenhuis_via_brackets(alg, s)?,
        &n_tensor,
    ));

    // split form: N = 2(nabla_{phi x} phi)y - 2 phi(nabla_x phi)y
    //  + 2(nabla_x eta)y . xi, plus h + v reassembles N
    let (h_part, v_part) = nijenhuis_hv_split(&n_tensor, s);
    let mut split_ok = h_part
        .checked_add(&v_part)
        .map(|sum| {
            sum.indices()
                .all(|idx| sum.get(&idx) == n_tensor.get(&idx))
        })
        .unwrap_or(false);
    if membership.f3_plus_f7 && split_ok {
        'split: for x in 0..n {
            for y in 0..n {
                let mut vec = Vector::zero(space, n);
                for m in 0..n {
                    if !phi_col[x].comps[m].is_zero() {
                        vec = vec.add(
                            &nabla.derive_phi(s, m, y).scale(&phi_col[x].comps[m]),
                        );
                    }
                }
                vec = vec.sub(&s.apply_phi(&nabla.derive_phi(s, x, y)));
                vec = vec.add(&s.xi.scale(&nabla.derive_eta(s, x, y)));
                for z in 0..n {
                    let lhs = n_tensor.get(&[x, y, z]);
                    let rhs = s
                        .g_of(&vec, &Vector::basis(space, n, z))
                        .scale(&rat(2, 1));
                    if lhs != &rhs {
                        split_ok = false;
                        break 'split;
                    }
                }
            }
        }
    }
    out.push(CheckResult::gated(
        "nijenhuis-split",
        "Nijenhuis horizontal and vertical split form",
        membership.f3_plus_f7,
        split_ok,
    ));

    if !membership.f3_plus_f7 {
        for (name, anchor) in TORSION_CHECKS {
            out.push(CheckResult::na(name, anchor));
        }
        for (name, _) in F7_SUITE {
            out.push(CheckResult::na(name, SUITE_ANCHOR_F7));
        }
        for (name, _) in F3_SUITE {
            out.push(CheckResult::na(name, SUITE_ANCHOR_F3));
        }
        out.push(CheckResult::na(
            "einstein-metric",
            "Ricci tensor proportional to the metric",
        ));
        return Ok(out);
    }

    let t = torsion_from_fundamental(alg, s, &nabla, &f)?;
    let d = build_d(alg, s, &nabla, &t)?;
    let r = curvature_tensor(alg, &nabla, s);
    let k = curvature_tensor(alg, &d, s);

    out.push(CheckResult::plain(
        TORSION_CHECKS[0].0,
        "torsion of the natural connection is a 3-form",
        t.is_alternating(),
    ));
    out.push(tensor_eq(
        TORSION_CHECKS[1].0,
        "torsion via the eta wedge and Nijenhuis cyclic sum",
        &torsion_wedge_form(alg, s, &nabla, &n_tensor)?,
        &t,
    ));
    out.push(tensor_eq(
        TORSION_CHECKS[2].0,
        "torsion via the covariant (1,2) expression",
        &torsion_covariant_form(s, &nabla),
        &t,
    ));
    match torsion_vertical_form(alg, s, &nabla) {
        Ok(t7) => out.push(tensor_eq(
            TORSION_CHECKS[3].0,
            "vertical-class torsion shortcut",
            &t7,
            &t,
        )),
        Err(Error::ClassGate(_)) => {
            out.push(CheckResult::na(TORSION_CHECKS[3].0, TORSION_CHECKS[3].1))
        }
        Err(e) => return Err(e),
    }
    match torsion_horizontal_form(alg, s, &nabla) {
        Ok(t3) => out.push(tensor_eq(
            TORSION_CHECKS[4].0,
            "horizontal-class torsion shortcut",
            &t3,
            &t,
        )),
        Err(Error::ClassGate(_)) => {
            out.push(CheckResult::na(TORSION_CHECKS[4].0, TORSION_CHECKS[4].1))
        }
        Err(e) => return Err(e),
    }

    // T = 2(D - nabla) lowered
    let mut t_diff = Tensor::zeros(space, n, 3, Role::Generic);
    for i in 0..n {
        for j in 0..n {
            for kk in 0..n {
                let mut acc = Scalar::zero(space);
                for m in 0..n {
                    let delta = d.gamma(i, j, m) - nabla.gamma(i, j, m);
                    if !delta.is_zero() {
                        acc = &acc + &(&delta * s.g.get(m, kk));
                    }
                }
                t_diff.set(&[i, j, kk], acc.scale(&rat(2, 1)));
            }
        }
    }
    out.push(
        tensor_eq(
            TORSION_CHECKS[5].0,
            "torsion as twice the connection difference",
            &t_diff,
            &t,
        )
        .with_note("component signs are pinned by the connection difference; all formula routes agree"),
    );

    out.push(CheckResult::plain(
        TORSION_CHECKS[6].0,
        "half torsion reproduces the fundamental tensor",
        deformation_conditions_check(&t, &f, s),
    ));
    let mut half_skew = true;
    for idx in t.indices() {
        let [x, y, z] = [idx[0], idx[1], idx[2]];
        if t.get(&idx) != &(-t.get(&[x, z, y])) {
            half_skew = false;
            break;
        }
    }
    out.push(CheckResult::plain(
        TORSION_CHECKS[7].0,
        "half torsion skew in its last two slots",
        half_skew,
    ));

    let d_eta = exterior_derivative(alg, &eta_tensor(s))?;
    let mut reeb_ok = true;
    'reeb: for x in 0..n {
        for y in 0..n {
            let mut t_xi = Scalar::zero(space);
            for m in 0..n {
                if !s.xi.comps[m].is_zero() {
                    t_xi = &t_xi + &(&s.xi.comps[m] * t.get(&[x, y, m]));
                }
            }
            let twice_ne = nabla.derive_eta(s, x, y).scale(&rat(2, 1));
            if t_xi != *d_eta.get(&[x, y]) || t_xi != twice_ne {
                reeb_ok = false;
                break 'reeb;
            }
        }
    }
    out.push(CheckResult::plain(
        TORSION_CHECKS[8].0,
        "torsion against the Reeb field equals d(eta)",
        reeb_ok,
    ));

    out.push(CheckResult::plain(
        TORSION_CHECKS[9].0,
        "torsion phi-shift identities",
        torsion_phi_shift_check(&t, &nabla, s),
    ));
    out.push(CheckResult::plain(
        TORSION_CHECKS[10].0,
        "Nijenhuis tensor from torsion phi-combinations",
        nijenhuis_torsion_check(&t, &n_tensor, s),
    ));
    out.push(CheckResult::plain(
        TORSION_CHECKS[11].0,
        "curvature of the natural connection from the metric one",
        krt_identity_check(&r, &k, &d, &t, s),
    ));

    let rho = ricci(&r, s);
    let rho_d = ricci(&k, s);
    let tau = scalar_curv(&rho, s);
    let tau_d = scalar_curv(&rho_d, s);
    let nt = norm_t(&t, s);
    out.push(scalar_eq(
        TORSION_CHECKS[12].0,
        "scalar curvature defect is a quarter torsion norm",
        &tau_d,
        &(&tau - &nt.scale(&rat(1, 4))),
    ));
    debug_assert!(tdt_check(&tau, &tau_d, &nt) == (tau_d == &tau - &nt.scale(&rat(1, 4))));

    out.push(CheckResult::plain(
        TORSION_CHECKS[13].0,
        "metric curvature pair antisymmetries and first Bianchi",
        pair_symmetries_check(&r) && first_bianchi_check(&r),
    ));
    out.push(CheckResult::plain(
        TORSION_CHECKS[14].0,
        "natural curvature pair antisymmetries",
        pair_symmetries_check(&k),
    ));
    out.push(CheckResult::plain(
        TORSION_CHECKS[15].0,
        "closed curvature form matches the Kaehler-type test",
        kr_st_form_check(&r, &k, &t, s) == phi_kaehler_check(&k, s),
    ));
    out.push(tensor_eq(
        TORSION_CHECKS[16].0,
        "exterior derivative of torsion via brackets and via the connection",
        &torsion_differential(&d, &t, s),
        &exterior_derivative(alg, &t)?,
    ));

    let rep = dparallel_equivalences(alg, &d, &t, &r, &k, s)?;
    out.push(CheckResult::gated(
        TORSION_CHECKS[17].0,
        "equivalences under parallel torsion",
        rep.applicable,
        rep.closed_t == rep.sigma_tt_zero && rep.sigma_tt_zero == rep.k_form3,
    ));

    // isotropic equivalences: zero square norm, equal scalar curvatures,
    // isotropic nabla(xi) on the non-Reeb basis
    let snp = square_norm_nabla_phi(s, &nabla);
    let iso_norm = snp.is_zero();
    let iso_tau = tau == tau_d;
    let iso_xi = (0..n)
        .filter(|&i| s.eta[i].is_zero())
        .all(|i| {
            let v = nabla.derive_xi(s, i);
            s.g_of(&v, &v).is_zero()
        });
    out.push(CheckResult::gated(
        TORSION_CHECKS[18].0,
        "isotropic square norm equivalences",
        membership.f7,
        iso_norm == iso_tau && iso_tau == iso_xi,
    ));

    match crate::curvature::f7_formula_suite(alg, s, &nabla, &d, &r, &k, &t) {
        Ok(suite) => {
            for (name, inner) in F7_SUITE {
                let status = suite
                    .iter()
                    .find(|(sn, _)| *sn == inner)
                    .map(|(_, st)| *st)
                    .unwrap_or(Status::Fail);
                out.push(CheckResult {
                    name,
                    status: map_status(status),
                    witness: None,
                    anchor: SUITE_ANCHOR_F7,
                    note: None,
                });
            }
        }
        Err(Error::ClassGate(_)) => {
            for (name, _) in F7_SUITE {
                out.push(CheckResult::na(name, SUITE_ANCHOR_F7));
            }
        }
        Err(e) => return Err(e),
    }
    match crate::curvature::f3_formula_suite(alg, s, &nabla, &d, &r, &k, &t) {
        Ok(suite) => {
            for (name, inner) in F3_SUITE {
                let status = suite
                    .iter()
                    .find(|(sn, _)| *sn == inner)
                    .map(|(_, st)| *st)
                    .unwrap_or(Status::Fail);
                out.push(CheckResult {
                    name,
                    status: map_status(status),
                    witness: None,
                    anchor: SUITE_ANCHOR_F3,
                    note: None,
                });
            }
        }
        Err(Error::ClassGate(_)) => {
            for (name, _) in F3_SUITE {
                out.push(CheckResult::na(name, SUITE_ANCHOR_F3));
            }
        }
        Err(e) => return Err(e),
    }

    let einstein = einstein_check(&rho, s);
    let mut res = CheckResult::plain(
        "einstein-metric",
        "Ricci tensor proportional to the metric",
        true,
    );
    res.note = Some(match &einstein {
        Some(c) => format!("einstein with constant {c}"),
        None => "not einstein".to_string(),
    });
    out.push(res);

    Ok(out)
}

fn map_status(s: Status) -> CheckStatus {
    match s {
        Status::Pass => CheckStatus::Pass,
        Status::Fail => CheckStatus::Fail,
        Status::HypothesisNotMet => CheckStatus::HypothesisNotMet,
    }
}

/// Text rendering: one aligned line per check plus witness details.
pub fn render_text(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{:width$}  {}\n",
            r.name,
            r.status.as_str().to_uppercase(),
            width = width
        ));
        if let Some(w) = &r.witness {
            let idx: Vec<String> = w.indices.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!(
                "{:width$}  at ({}): {} != {}\n",
                "",
                idx.join(","),
                w.lhs,
                w.rhs,
                width = width
            ));
        }
        if let Some(note) = &r.note {
            out.push_str(&format!("{:width$}  note: {}\n", "", note, width = width));
        }
    }
    out
}

/// Machine rendering: `CHECK <name> <status> [witness=... lhs=... rhs=...]
/// anchor="..." [note="..."]`.
pub fn render_machine(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!("CHECK {} {}", r.name, r.status.as_str()));
        if let Some(w) = &r.witness {
            let idx: Vec<String> = w.indices.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!(
                " witness={} lhs={} rhs={}",
                idx.join(","),
                w.lhs,
                w.rhs
            ));
        }
        out.push_str(&format!(" anchor=\"{}\"", r.anchor));
        if let Some(note) = &r.note {
            out.push_str(&format!(" note=\"{}\"", note));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{abelian_fixture, einstein_instance, fix_c, six_param_family, Mode};
    use crate::structure::StructurePack;

    fn statuses(results: &[CheckResult]) -> Vec<(&'static str, CheckStatus)> {
        results.iter().map(|r| (r.name, r.status)).collect()
    }

    #[test]
    fn family_symbolic_all_green() {
        let fx = six_param_family(Mode::Symbolic).unwrap();
        let results = run_suite(&fx.alg, &fx.pack).unwrap();
        assert!(!any_fail(&results), "{}", render_text(&results));
        let by_name = |n: &str| results.iter().find(|r| r.name == n).unwrap();
        assert_eq!(by_name("torsion-route-horizontal").status, CheckStatus::NotApplicable);
        assert_eq!(by_name("torsion-route-vertical").status, CheckStatus::Pass);
        assert_eq!(by_name("f7-K-form-phi-kaehler").status, CheckStatus::HypothesisNotMet);
        assert_eq!(by_name("parallel-torsion-equivalences").status, CheckStatus::Pass);
        assert!(by_name("torsion-connection-difference").note.is_some());
        assert_eq!(
            by_name("einstein-metric").note.as_deref(),
            Some("not einstein")
        );
        for (name, _) in F3_SUITE {
            assert_eq!(by_name(name).status, CheckStatus::NotApplicable);
        }
    }

    #[test]
    fn abelian_all_pass_or_gated() {
        let fx = abelian_fixture();
        let results = run_suite(&fx.alg, &fx.pack).unwrap();
        assert!(!any_fail(&results), "{}", render_text(&results));
        let by_name = |n: &str| results.iter().find(|r| r.name == n).unwrap();
        // abelian brackets satisfy every bracket-level condition trivially
        assert_eq!(by_name("class-bracket-conditions").status, CheckStatus::Pass);
        assert_eq!(by_name("f7-K-form-phi-kaehler").status, CheckStatus::Pass);
        assert_eq!(
            by_name("einstein-metric").note.as_deref(),
            Some("einstein with constant 0")
        );
    }

    #[test]
    fn instances_all_green_and_deterministic() {
        for fx in [fix_c(), einstein_instance()] {
            let a = run_suite(&fx.alg, &fx.pack).unwrap();
            let b = run_suite(&fx.alg, &fx.pack).unwrap();
            assert!(!any_fail(&a), "{}: {}", fx.name, render_text(&a));
            assert_eq!(statuses(&a), statuses(&b));
            assert_eq!(render_machine(&a), render_machine(&b));
        }
    }

    #[test]
    fn einstein_instance_reports_constant() {
        let fx = einstein_instance();
        let results = run_suite(&fx.alg, &fx.pack).unwrap();
        let e = results.iter().find(|r| r.name == "einstein-metric").unwrap();
        assert_eq!(e.note.as_deref(), Some("einstein with constant 0"));
    }

    #[test]
    fn broken_metric_rejected_before_checks() {
        let fx = fix_c();
        let mut g = fx.pack.g.clone();
        let flipped = -g.get(4, 4);
        g.set(4, 4, flipped);
        // rebuild with the flipped entry; construction may itself reject
        let res = StructurePack::new(
            fx.pack.space().clone(),
            fx.pack.phi.clone(),
            fx.pack.xi.clone(),
            fx.pack.eta.clone(),
            g,
        );
        match res {
            Ok(pack) => {
                let err = run_suite(&fx.alg, &pack).unwrap_err();
                assert!(matches!(err, Error::InvalidStructure(_)));
            }
            Err(e) => assert!(matches!(e, Error::InvalidStructure(_))),
        }
    }

    #[test]
    fn machine_format_lines() {
        let fx = fix_c();
        let results = run_suite(&fx.alg, &fx.pack).unwrap();
        let text = render_machine(&results);
        for line in text.lines() {
            assert!(line.starts_with("CHECK "), "{line}");
            assert!(line.contains(" anchor=\""), "{line}");
        }
        assert_eq!(text.lines().count(), results.len());
    }
}
