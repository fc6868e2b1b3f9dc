//! Browser bindings: thin wasm-bindgen wrappers over the core pipeline.
//! Each function takes the structure-file text (and optionally a parameter
//! assignment `name=value,...`) and returns a plain-text report; errors are
//! returned as readable strings so the page can display them directly.

use std::collections::BTreeMap;
use std::str::FromStr;

use wasm_bindgen::prelude::*;

use acbm_core::classify::class_membership;
use acbm_core::curvature::{curvature_tensor, ricci, scalar_curv};
use acbm_core::fixtures::{six_param_family, Mode};
use acbm_core::levicivita::{fundamental_f, levi_civita, square_norm_nabla_phi};
use acbm_core::liealg::LieAlgebraSpec;
use acbm_core::phikt::{build_d, norm_t, torsion_from_fundamental};
use acbm_core::specfile::{export_spec, parse_spec, specialize};
use acbm_core::structure::StructurePack;
use acbm_core::verify::{any_fail, render_text, run_suite};
use acbm_core::Rat;

fn load(
    text: &str,
    params: &str,
) -> Result<(LieAlgebraSpec, StructurePack), String> {
    let (alg, pack) = parse_spec(text).map_err(|e| e.to_string())?;
    let params = params.trim();
    if params.is_empty() {
        return Ok((alg, pack));
    }
    let mut map = BTreeMap::new();
    for piece in params.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (name, value) = piece
            .split_once('=')
            .ok_or_else(|| format!("expected `name=value`, got `{piece}`"))?;
        let r = Rat::from_str(value.trim())
            .map_err(|e| format!("bad rational `{}`: {e}", value.trim()))?;
        map.insert(name.trim().to_string(), r);
    }
    specialize(&alg, &pack, &map).map_err(|e| e.to_string())
}

fn gates(alg: &LieAlgebraSpec, pack: &StructurePack) -> Result<(), String> {
    let violations = pack.validate();
    if !violations.is_empty() {
        return Err(format!("structure validation failed: {}", violations.join("; ")));
    }
    if let Some(([i, j, k, l], v)) = alg.jacobi_check() {
        return Err(format!(
            "Jacobi identity fails at (E{}, E{}, E{}) component {}: {v}",
            i + 1,
            j + 1,
            k + 1,
            l + 1
        ));
    }
    Ok(())
}

fn classify_inner(text: &str, params: &str) -> Result<String, String> {
    let (alg, pack) = load(text, params)?;
    gates(&alg, &pack)?;
    let nabla = levi_civita(&alg, &pack).map_err(|e| e.to_string())?;
    let f = fundamental_f(&pack, &nabla);
    let m = class_membership(&f, &pack, &nabla);
    let headline = if m.f0 {
        "F0"
    } else if m.f3 {
        "F3"
    } else if m.f7 {
        "F7"
    } else if m.f3_plus_f7 {
        "F3+F7"
    } else {
        "outside F3+F7"
    };
    Ok(format!(
        "class: {headline}\nf0={} f3={} f7={} f3_plus_f7={}\n",
        m.f0, m.f3, m.f7, m.f3_plus_f7
    ))
}

fn curvature_inner(text: &str, params: &str) -> Result<String, String> {
    let (alg, pack) = load(text, params)?;
    gates(&alg, &pack)?;
    let nabla = levi_civita(&alg, &pack).map_err(|e| e.to_string())?;
    let f = fundamental_f(&pack, &nabla);
    let t = torsion_from_fundamental(&alg, &pack, &nabla, &f).map_err(|e| e.to_string())?;
    let d = build_d(&alg, &pack, &nabla, &t).map_err(|e| e.to_string())?;
    let r = curvature_tensor(&alg, &nabla, &pack);
    let k4 = curvature_tensor(&alg, &d, &pack);
    let n = pack.dim();
    let mut out = String::new();
    for (label, t4) in [("R", &r), ("K", &k4)] {
        for i in 0..n {
            for j in (i + 1)..n {
                for k in i..n {
                    for l in (k + 1)..n {
                        if (k, l) < (i, j) {
                            continue;
                        }
                        let v = t4.get(&[i, j, k, l]);
                        if !v.is_zero() {
                            out.push_str(&format!(
                                "{label}({},{},{},{}) = {v}\n",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            ));
                        }
                    }
                }
            }
        }
    }
    let rho = ricci(&r, &pack);
    let rho_d = ricci(&k4, &pack);
    out.push_str(&format!("tau = {}\n", scalar_curv(&rho, &pack)));
    out.push_str(&format!("tauD = {}\n", scalar_curv(&rho_d, &pack)));
    out.push_str(&format!("normT2 = {}\n", norm_t(&t, &pack)));
    out.push_str(&format!(
        "normNablaPhi2 = {}\n",
        square_norm_nabla_phi(&pack, &nabla)
    ));
    Ok(out)
}

fn verify_inner(text: &str, params: &str) -> Result<String, String> {
    let (alg, pack) = load(text, params)?;
    let results = run_suite(&alg, &pack).map_err(|e| e.to_string())?;
    let mut out = render_text(&results);
    out.push_str(if any_fail(&results) {
        "\nRESULT: at least one check failed\n"
    } else {
        "\nRESULT: all checks passed\n"
    });
    Ok(out)
}

fn render(r: Result<String, String>) -> String {
    match r {
        Ok(s) => s,
        Err(e) => format!("error: {e}\n"),
    }
}

/// Basic-class membership of the structure described by `text`,
/// optionally specialized at `params` (`name=value,...`).
#[wasm_bindgen]
pub fn classify(text: &str, params: &str) -> String {
    render(classify_inner(text, params))
}

/// Nonzero curvature components of both connections with the scalar
/// curvatures and square norms.
#[wasm_bindgen]
pub fn curvature(text: &str, params: &str) -> String {
    render(curvature_inner(text, params))
}

/// Full identity-check registry in the text report format.
#[wasm_bindgen]
pub fn verify(text: &str, params: &str) -> String {
    render(verify_inner(text, params))
}

/// The built-in six-parameter fixture in the structure-file format,
/// used to prefill the demo page.
#[wasm_bindgen]
pub fn family_spec() -> String {
    let fx = six_param_family(Mode::Symbolic).unwrap();
    export_spec(&fx.alg, &fx.pack)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_family_is_vertical_class() {
        let spec = family_spec();
        let out = classify(&spec, "");
        assert!(out.contains("class: F7"), "{out}");
    }

    #[test]
    fn curvature_at_unit_point_matches_golden_values() {
        let spec = family_spec();
        let out = curvature(&spec, "l1=1,l2=0,l3=0,l4=0,m1=1,m2=0");
        assert!(out.contains("R(1,2,1,2) = 4"), "{out}");
        assert!(out.contains("tau = -12"), "{out}");
        assert!(out.contains("tauD = -24"), "{out}");
    }

    #[test]
    fn verify_reports_errors_as_text() {
        let out = verify("dim 4\n", "");
        assert!(out.starts_with("error:"), "{out}");
        let ok = verify(&family_spec(), "");
        assert!(ok.contains("RESULT: all checks passed"), "{ok}");
    }
}
