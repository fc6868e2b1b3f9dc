//! Built-in fixtures: the 5-dimensional Lie-group family (symbolic and
//! specialized), the abelian control with the same pointwise structure, and
//! the derived Ricci-flat Einstein instance.
//!
//! Fixtures are generated programmatically so they always track the
//! builders; the `export` subcommand writes them in the spec-file format.

use crate::error::Result;
use crate::exact::{rat, ParamSpace, Rat, Scalar};
use crate::liealg::{LieAlgebraSpec, Vector};
use crate::structure::{Matrix, StructurePack};
use std::sync::Arc;

/// A Lie algebra together with its almost contact B-metric structure.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub alg: LieAlgebraSpec,
    pub pack: StructurePack,
}

/// How to instantiate the family parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    /// Keep `l1..l4, m1, m2` symbolic.
    Symbolic,
    /// Substitute the rationals `(l1, l2, l3, l4, m1, m2)`.
    At([Rat; 6]),
}

pub const PARAM_NAMES: [&str; 6] = ["l1", "l2", "l3", "l4", "m1", "m2"];

/// The pointwise structure shared by every fixture: `phi E1 = E3`,
/// `phi E2 = E4`, `phi E3 = -E1`, `phi E4 = -E2`, `phi E5 = 0`, `xi = E5`,
/// `eta` dual to `E5`, `g = diag(1, 1, -1, -1, 1)`.
pub fn five_dim_pack(space: &Arc<ParamSpace>) -> StructurePack {
    let n = 5;
    let mut phi = Matrix::zeros(space, n);
    phi.set(2, 0, Scalar::one(space));
    phi.set(3, 1, Scalar::one(space));
    phi.set(0, 2, Scalar::from_int(space, -1));
    phi.set(1, 3, Scalar::from_int(space, -1));
    let xi = Vector::basis(space, n, 4);
    let mut eta = vec![Scalar::zero(space); n];
    eta[4] = Scalar::one(space);
    let mut g = Matrix::zeros(space, n);
    for (i, v) in [1i64, 1, -1, -1, 1].into_iter().enumerate() {
        g.set(i, i, Scalar::from_int(space, v));
    }
    StructurePack::new(space.clone(), phi, xi, eta, g).unwrap()
}

/// The 5-dimensional family: nonzero commutators
/// `[E1,E2] = -[E3,E4] = -l1 E1 - l2 E2 + l3 E3 + l4 E4 + 2 m1 E5` and
/// `[E1,E4] = -[E2,E3] = -l3 E1 - l4 E2 - l1 E3 - l2 E4 + 2 m2 E5`.
pub fn six_param_family(mode: Mode) -> Result<Fixture> {
    let (space, coeff): (Arc<ParamSpace>, Box<dyn Fn(usize) -> Scalar>) = match &mode {
        Mode::Symbolic => {
            let sp = ParamSpace::new(PARAM_NAMES)?;
            let sp2 = sp.clone();
            (sp, Box::new(move |i| Scalar::var(&sp2, i)))
        }
        Mode::At(vals) => {
            let sp = ParamSpace::empty();
            let sp2 = sp.clone();
            let vals = vals.clone();
            (sp, Box::new(move |i| Scalar::from_rat(&sp2, vals[i].clone())))
        }
    };
    let dim = 5;
    let mut c = vec![Scalar::zero(&space); dim * dim * dim];
    let l = |i: usize| coeff(i);
    let com12: Vec<Scalar> = vec![
        -&l(0),
        -&l(1),
        l(2),
        l(3),
        l(4).scale(&rat(2, 1)),
    ];
    let com14: Vec<Scalar> = vec![
        -&l(2),
        -&l(3),
        -&l(0),
        -&l(1),
        l(5).scale(&rat(2, 1)),
    ];
    let mut set = |i: usize, j: usize, vec: &[Scalar], sign: i64| {
        for (k, v) in vec.iter().enumerate() {
            let v = if sign < 0 { -v } else { v.clone() };
            c[(i * dim + j) * dim + k] = v.clone();
            c[(j * dim + i) * dim + k] = -&v;
        }
    };
    set(0, 1, &com12, 1); // [E1,E2]
    set(2, 3, &com12, -1); // [E3,E4] = -[E1,E2]
    set(0, 3, &com14, 1); // [E1,E4]
    set(1, 2, &com14, -1); // [E2,E3] = -[E1,E4]
    let alg = LieAlgebraSpec::new(dim, space.clone(), c)?;
    let pack = five_dim_pack(&space);
    let name = match &mode {
        Mode::Symbolic => "six-param-family(symbolic)".to_string(),
        Mode::At(v) => format!(
            "six-param-family({})",
            v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        ),
    };
    Ok(Fixture { name, alg, pack })
}

/// All brackets zero; same pointwise structure. Flat control in class F0.
pub fn abelian_fixture() -> Fixture {
    let space = ParamSpace::empty();
    Fixture {
        name: "abelian".to_string(),
        alg: LieAlgebraSpec::abelian(5, space.clone()),
        pack: five_dim_pack(&space),
    }
}

/// Rational specialization `(1, 0, 0, 0, 1, 0)` used throughout the tests.
pub fn fix_c() -> Fixture {
    six_param_family(Mode::At([
        rat(1, 1),
        rat(0, 1),
        rat(0, 1),
        rat(0, 1),
        rat(1, 1),
        rat(0, 1),
    ]))
    .unwrap()
}

/// Ricci-flat Einstein instance `(1, 0, 1, 0, 1, -1)`; also isotropic
/// (zero square norm of nabla phi).
pub fn einstein_instance() -> Fixture {
    six_param_family(Mode::At([
        rat(1, 1),
        rat(0, 1),
        rat(1, 1),
        rat(0, 1),
        rat(1, 1),
        rat(-1, 1),
    ]))
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_passes_all_validity_gates() {
        for fixture in [
            six_param_family(Mode::Symbolic).unwrap(),
            fix_c(),
            einstein_instance(),
            abelian_fixture(),
        ] {
            assert!(fixture.alg.jacobi_check().is_none(), "{}", fixture.name);
            assert!(fixture.pack.validate().is_empty(), "{}", fixture.name);
            assert!(
                fixture.alg.non_abelian_structure_check(&fixture.pack),
                "{}",
                fixture.name
            );
        }
    }

    #[test]
    fn bracket_e1_e2_matches_commutator_table() {
        let f = six_param_family(Mode::Symbolic).unwrap();
        let sp = f.alg.params().clone();
        let b = f.alg.bracket_basis(0, 1);
        let l = |n: &str| Scalar::param(&sp, n).unwrap();
        assert_eq!(b.comps[0], -&l("l1"));
        assert_eq!(b.comps[1], -&l("l2"));
        assert_eq!(b.comps[2], l("l3"));
        assert_eq!(b.comps[3], l("l4"));
        assert_eq!(b.comps[4], l("m1").scale(&rat(2, 1)));
        assert_eq!(f.alg.bracket_basis(2, 3), b.neg());
    }

    #[test]
    fn bracket_e1_e4_at_unit_specialization() {
        // (l1,..,m2) = (1,0,0,0,1,0): [E1,E4] = -E3
        let f = fix_c();
        let b = f.alg.bracket_basis(0, 3);
        let sp = f.alg.params().clone();
        let mut expected = Vector::zero(&sp, 5);
        expected.comps[2] = Scalar::from_int(&sp, -1);
        assert_eq!(b, expected);
    }

    #[test]
    fn non_abelian_check_fails_on_partial_bracket() {
        // only [E1,E2] = E5: [phi E1, phi E2] = [E3,E4] = 0 != -E5
        let sp = ParamSpace::empty();
        let dim = 5;
        let mut c = vec![Scalar::zero(&sp); dim * dim * dim];
        c[(0 * dim + 1) * dim + 4] = Scalar::one(&sp);
        c[(1 * dim + 0) * dim + 4] = Scalar::from_int(&sp, -1);
        let alg = LieAlgebraSpec::new(dim, sp.clone(), c).unwrap();
        let pack = five_dim_pack(&sp);
        assert!(!alg.non_abelian_structure_check(&pack));
    }

    #[test]
    fn non_abelian_implies_xi_brackets_vanish() {
        let f = six_param_family(Mode::Symbolic).unwrap();
        for j in 0..5 {
            assert!(f
                .alg
                .bracket(&f.pack.xi, &f.alg.basis(j))
                .unwrap()
                .is_zero());
        }
    }
}
